//! Randomized law suites. Each law counts its cases and keeps a few
//! counterexamples; a suite passes when no law has a failure.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::calculus::regions::forall_le;
use crate::calculus::{
    affine_minorant_conditions, biconjugate, conjugate, conjugate_by_regions, difference_quotient, dirderiv,
    dirderiv_down, improper_minorant, infconv_conjugate_check, is_dirderiv_minorant, is_subgradient,
    subdiff_conjugate_check, young_fenchel_check,
};
use crate::extreal::{inf_down, inf_up, sup_down, sup_up, DownReal, Ext, UpReal};
use crate::geometry::vec::{add2, dot2, P2};
use crate::geometry::{Cone2, ConvexPoly2};
use crate::random;
use crate::residuation::{
    check_condition, check_equivalence, random_lattice_groupoid, residual, three_point_groupoid, Condition, Mode,
    ThreePoint,
};
use crate::scalar_fn::{affine_split_sup, affine_split_sup_diff, AffineDual, DualElem, Interval, UpFunction};
use crate::setvalued::{
    conjugate_oracle, default_zstars, improper_conaffine_sup, properness, setdiff_support_check, sv_biconjugate,
    sv_conjugate, sv_minorant_conditions, DownSet, DualTriple, SetValuedFn, SvFunction, UpSet,
};

const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawResult {
    pub law: String,
    pub cases: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
}

impl LawResult {
    pub fn new(law: &str) -> LawResult {
        LawResult { law: law.to_string(), cases: 0, failures: 0, counterexamples: Vec::new() }
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub iters: usize,
    pub laws: Vec<LawResult>,
    pub passed: bool,
}

pub const SUITES: [&str; 5] = ["extreal", "residuation", "scalar-fn", "calculus", "setvalued"];

/// Runs a named suite, or every suite for `"all"`.
pub fn run_suite(name: &str, iters: usize, seed: u64, tol: f64) -> Option<SuiteReport> {
    let laws = match name {
        "extreal" => extreal_laws(seed, iters, tol.max(1e-12)),
        "residuation" => groupoid_laws(seed, iters),
        "scalar-fn" => scalar_fn_laws(seed, iters),
        "calculus" => {
            let mut v = calculus_laws(seed, iters, tol);
            v.extend(infconv_laws(seed ^ 1, iters, tol));
            v
        }
        "setvalued" => {
            let mut v = set_lattice_laws(seed, iters);
            v.extend(setdiff_laws(seed ^ 1, iters));
            v.extend(sv_conjugate_laws(seed ^ 2, iters, 3));
            v
        }
        "all" => {
            let mut v = Vec::new();
            for s in SUITES {
                v.extend(run_suite(s, iters, seed, tol)?.laws);
            }
            v
        }
        _ => return None,
    };
    let passed = laws.iter().all(LawResult::passed);
    Some(SuiteReport { suite: name.to_string(), seed, iters, laws, passed })
}

// ---------------------------------------------------------------- extreal

fn up(e: Ext) -> UpReal {
    UpReal::from_ext(e)
}

fn down(e: Ext) -> DownReal {
    DownReal::from_ext(e)
}

fn small_set<R: Rng>(rng: &mut R) -> Vec<Ext> {
    let n = rng.gen_range(0..=4);
    (0..n).map(|_| random::dyadic_ext(rng, 0.25)).collect()
}

/// Residuation, Eq (3.12)-type order characterizations, the inf/sup
/// interchange rules, negation duality, the difference identities, the
/// difference calculus and scaling. Order laws use dyadic values so they
/// are exact; equalities on uniform reals use `tol`.
pub fn extreal_laws(seed: u64, n: usize, tol: f64) -> Vec<LawResult> {
    let mut rng = random::rng(seed);
    let names = [
        "residuation: a <= b+t iff a-b <= t",
        "residuation: b+t <= a iff t <= a-b (sup)",
        "order: a <= b iff a-b <= 0 iff 0 <= b-a (sup)",
        "inf(M+N) = inf M + inf N (inf-addition)",
        "sup(M+N) <= sup M + sup N (inf-addition)",
        "inf M + inf N <= inf(M+N) (sup-addition)",
        "sup(M+N) = sup M + sup N (sup-addition)",
        "negation maps inf-sums to sup-sums",
        "r-s (inf) = r + (-s) (sup)",
        "r-s (sup) = r + (-s) (inf)",
        "s-r (sup) = -(r-s (inf))",
        "s-r (inf) = (-r)-(-s) (inf)",
        "s-r (sup) = (-r)-(-s) (sup)",
        "r-r",
        "difference monotonicity",
        "difference subadditivity",
        "a - inf M = sup (a - m)",
        "a - sup M = inf (a - m) (sup)",
        "t(a-b) = ta - tb",
    ];
    let mut laws: Vec<LawResult> = names.iter().map(|s| LawResult::new(s)).collect();
    for _ in 0..n {
        let (a, b, t) = (
            random::dyadic_ext(&mut rng, 0.25),
            random::dyadic_ext(&mut rng, 0.25),
            random::dyadic_ext(&mut rng, 0.25),
        );
        let (ua, ub, ut) = (up(a), up(b), up(t));
        let (da, db, dt) = (down(a), down(b), down(t));
        let w = || format!("a={a} b={b} t={t}");
        laws[0].check((ua <= ub.isum(ut)) == (ua.idif(ub) <= ut), w);
        laws[1].check((db.ssum(dt) <= da) == (dt <= da.sdif(db)), w);
        laws[2].check((a <= b) == (ua.idif(ub) <= UpReal::ZERO) && (a <= b) == (DownReal::ZERO <= db.sdif(da)), w);

        let (m, nn) = (small_set(&mut rng), small_set(&mut rng));
        let wm = || format!("M={m:?} N={nn:?}");
        let isums: Vec<UpReal> = m.iter().flat_map(|&x| nn.iter().map(move |&y| up(x).isum(up(y)))).collect();
        let ssums: Vec<DownReal> = m.iter().flat_map(|&x| nn.iter().map(move |&y| down(x).ssum(down(y)))).collect();
        let (mu, nu): (Vec<UpReal>, Vec<UpReal>) =
            (m.iter().map(|&x| up(x)).collect(), nn.iter().map(|&x| up(x)).collect());
        let (md, nd): (Vec<DownReal>, Vec<DownReal>) =
            (m.iter().map(|&x| down(x)).collect(), nn.iter().map(|&x| down(x)).collect());
        laws[3].check(inf_up(isums.clone()) == inf_up(mu.clone()).isum(inf_up(nu.clone())), wm);
        laws[4].check(sup_up(isums) <= sup_up(mu.clone()).isum(sup_up(nu)), wm);
        laws[5].check(inf_down(md.clone()).ssum(inf_down(nd.clone())) <= inf_down(ssums.clone()), wm);
        laws[6].check(sup_down(ssums) == sup_down(md.clone()).ssum(sup_down(nd)), wm);

        // uniform reals for the identities
        let (r, s) = (random::ext(&mut rng, 0.25), random::ext(&mut rng, 0.25));
        let (ur, us) = (up(r), up(s));
        let (dr, ds) = (down(r), down(s));
        let wi = || format!("r={r} s={s}");
        laws[7].check(ur.isum(us).negate().approx_eq(ur.negate().ssum(us.negate()), tol), wi);
        laws[8].check(ur.idif(us).ext().approx_eq(dr.ssum(us.negate()).ext(), tol), wi);
        laws[9].check(dr.sdif(ds).ext().approx_eq(ur.isum(ds.negate()).ext(), tol), wi);
        laws[10].check(ds.sdif(dr).approx_eq(ur.idif(us).negate(), tol), wi);
        let (nr_up, ns_up) = (ur.negate().reinterpret_as_up(), us.negate().reinterpret_as_up());
        laws[11].check(us.idif(ur).approx_eq(nr_up.idif(ns_up), tol), wi);
        let (nr_dn, ns_dn) = (dr.negate().reinterpret_as_down(), ds.negate().reinterpret_as_down());
        laws[12].check(ds.sdif(dr).approx_eq(nr_dn.sdif(ns_dn), tol), wi);
        let rr_ok = match r {
            Ext::Finite(_) => ur.idif(ur) == UpReal::ZERO && dr.sdif(dr) == DownReal::ZERO,
            _ => ur.idif(ur).is_bottom() && dr.sdif(dr).is_top(),
        };
        laws[13].check(rr_ok, wi);

        // dyadic for the inequalities
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let mono = up(lo).idif(ut) <= up(hi).idif(ut)
            && ut.idif(up(hi)) <= ut.idif(up(lo))
            && down(lo).sdif(dt) <= down(hi).sdif(dt)
            && dt.sdif(down(hi)) <= dt.sdif(down(lo));
        laws[14].check(mono, w);
        let c4 = random::dyadic_ext(&mut rng, 0.25);
        let (p, q) = (t, c4);
        let sub = ua.isum(up(p)).idif(ub.isum(up(q))) <= ua.idif(ub).isum(up(p).idif(up(q)))
            && ua.isum(up(p)).idif(up(p).isum(ub)) <= ua.idif(ub)
            && da.sdif(db).ssum(down(p).sdif(down(q))) <= da.ssum(down(p)).sdif(db.ssum(down(q)))
            && da.sdif(db) <= da.ssum(down(p)).sdif(down(p).ssum(db));
        laws[15].check(sub, || format!("a={a} b={b} r={p} s={q}"));
        laws[16].check(ua.idif(inf_up(mu.clone())) == sup_up(mu.iter().map(|&x| ua.idif(x))), wm);
        laws[17].check(da.sdif(sup_down(md.clone())) == inf_down(md.iter().map(|&x| da.sdif(x))), wm);

        let tt = match rng.gen_range(0..3) {
            0 => 0.0,
            1 => rng.gen_range(0i32..=16) as f64 / 4.0,
            _ => rng.gen_range(0.0..10.0),
        };
        let ok = ur.idif(us).scale(tt).unwrap().approx_eq(ur.scale(tt).unwrap().idif(us.scale(tt).unwrap()), tol)
            && dr.sdif(ds).scale(tt).unwrap().approx_eq(dr.scale(tt).unwrap().sdif(ds.scale(tt).unwrap()), tol);
        laws[18].check(ok, || format!("t={tt} r={r} s={s}"));
    }
    laws
}

// ------------------------------------------------------------ residuation

/// The four residuation conditions agree in both modes on `n` random
/// groupoids of size at most 6; the three-point models behave as stated.
pub fn groupoid_laws(seed: u64, n: usize) -> Vec<LawResult> {
    let mut rng = random::rng(seed);
    let mut agree = LawResult::new("conditions (a)-(d) agree (inf and sup)");
    let mut resid = LawResult::new("residual exists everywhere iff (b)");
    for _ in 0..n {
        let size = rng.gen_range(1..=6);
        let g = random_lattice_groupoid(&mut rng, size);
        for mode in [Mode::Inf, Mode::Sup] {
            let rep = check_equivalence(&g, mode);
            agree.check(rep.agree, || format!("{mode:?} {}", serde_json::to_string(&g).unwrap_or_default()));
            let all = (0..g.len()).all(|u| (0..g.len()).all(|v| residual(&g, u, v, mode).is_some()));
            let b = check_condition(&g, Condition::B, mode).holds;
            resid.check(all == b, || format!("{mode:?} {}", serde_json::to_string(&g).unwrap_or_default()));
        }
    }
    let mut three = LawResult::new("three-point models");
    let inf_model = three_point_groupoid(ThreePoint::InfAddition);
    let sup_model = three_point_groupoid(ThreePoint::SupAddition);
    let holds = |g, m| Condition::ALL.iter().map(|&c| check_condition(g, c, m).holds).collect::<Vec<_>>();
    three.check(holds(&inf_model, Mode::Inf).iter().all(|&h| h), || "inf-addition, inf mode".into());
    three.check(holds(&sup_model, Mode::Inf).iter().all(|&h| !h), || "sup-addition, inf mode".into());
    three.check(holds(&sup_model, Mode::Sup).iter().all(|&h| h), || "sup-addition, sup mode".into());
    vec![agree, resid, three]
}

// -------------------------------------------------------------- scalar-fn

/// Definitional convexity on triples: `f(t x₁ + (1−t) x₂) ≤ t f(x₁) ⊞▵ (1−t) f(x₂)`.
fn convex_on(f: &UpFunction, x1: f64, x2: f64, t: f64) -> bool {
    let lhs = f.eval(t * x1 + (1.0 - t) * x2);
    let rhs = f.eval(x1).scale(t).unwrap().isum(f.eval(x2).scale(1.0 - t).unwrap());
    match (lhs.value(), rhs.value()) {
        (Some(l), Some(r)) => l <= r + 1e-9 * (1.0 + l.abs().max(r.abs())),
        _ => lhs <= rhs,
    }
}

/// Triples around every knot plus random ones.
fn convexity_probes<R: Rng>(rng: &mut R, f: &UpFunction, k: usize) -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    if let UpFunction::Pl(p) = f {
        let ks = p.knots();
        for (i, kn) in ks.iter().enumerate() {
            let gap_l = if i > 0 { kn.x - ks[i - 1].x } else { 1.0 };
            let gap_r = if i + 1 < ks.len() { ks[i + 1].x - kn.x } else { 1.0 };
            let h = 0.25 * gap_l.min(gap_r);
            out.push((kn.x - h, kn.x + h, 0.5));
        }
    }
    for _ in 0..k {
        out.push((rng.gen_range(-15.0..15.0), rng.gen_range(-15.0..15.0), rng.gen_range(0.0..=1.0)));
    }
    out
}

pub fn scalar_fn_laws(seed: u64, n: usize) -> Vec<LawResult> {
    let mut rng = random::rng(seed);
    let mut split = LawResult::new("xi_r(x1+x2) = sup over splits (sum)");
    let mut split_diff = LawResult::new("xi_r(x1-x2) = sup over splits (difference)");
    let mut hom = LawResult::new("hat: positively homogeneous");
    let mut nonadd = LawResult::new("hat: not additive (x2 = -x1)");
    let mut convex = LawResult::new("is_convex agrees with the definition");
    let mut neg = LawResult::new("negate twice is the identity");
    let mut hull = LawResult::new("closure hull: idempotent minorant");
    for _ in 0..n {
        let xi = random::dual(&mut rng, 0.5);
        let r = rng.gen_range(-5.0..5.0);
        let (x1, x2) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let w = || format!("xi={xi} r={r} x1={x1} x2={x2}");
        let ar = AffineDual::new(xi, r);
        split.check(affine_split_sup(xi, r, x1, x2).approx_eq(ar.eval(x1 + x2), 1e-12), w);
        split_diff.check(affine_split_sup_diff(xi, r, x1, x2).approx_eq(ar.eval(x1 - x2), 1e-12), w);
        if let DualElem::Hat(a) = xi {
            let t = rng.gen_range(0.1..10.0);
            hom.check(xi.eval(t * x1) == xi.eval(x1), w);
            let x = if a * x1 != 0.0 { x1 } else { 1.0 };
            let hat = DualElem::Hat(if a == 0.0 { 1.0 } else { a });
            let sum = hat.eval(x).isum(hat.eval(-x));
            nonadd.check(hat.eval(0.0) != sum, || format!("hat={hat} x={x}"));
        }

        let f =
            if rng.gen_bool(0.5) { random::closed_convex(&mut rng) } else { UpFunction::Pl(random::pl(&mut rng, 0.3)) };
        let structural = f.is_convex();
        let probes = convexity_probes(&mut rng, &f, 50);
        let definitional = probes.iter().all(|&(a, b, t)| convex_on(&f, a, b, t));
        convex.check(structural == definitional, || format!("{f:?}"));
        neg.check(f.negate().negate() == f, || format!("{f:?}"));
        let h = f.closure_hull();
        let xs: Vec<f64> = (0..20).map(|_| rng.gen_range(-15.0..15.0)).collect();
        let ok = h.closure_hull().approx_eq(&h, 1e-9)
            && xs.iter().all(|&x| h.eval(x) <= f.eval(x) || h.eval(x).approx_eq(f.eval(x), 1e-9));
        hull.check(ok, || format!("{f:?}"));
    }
    vec![split, split_diff, hom, nonadd, convex, neg, hull]
}

// --------------------------------------------------------------- calculus

fn random_point_in<R: Rng>(rng: &mut R, f: &UpFunction) -> f64 {
    if let UpFunction::Pl(p) = f {
        let ks = p.knots();
        if rng.gen_bool(0.4) {
            return ks[rng.gen_range(0..ks.len())].x;
        }
        let d = p.domain();
        let lo = if d.lo.is_finite() { d.lo } else { ks[0].x - 3.0 };
        let hi = if d.hi.is_finite() { d.hi } else { ks[ks.len() - 1].x + 3.0 };
        if hi > lo {
            return rng.gen_range(lo..=hi);
        }
        return lo;
    }
    rng.gen_range(-8.0..8.0)
}

/// Difference-quotient monotonicity, homogeneity and sublinearity of the
/// directional derivative, the negation remark, the subgradient /
/// derivative equivalence, Young–Fenchel, both conjugate evaluations,
/// biconjugation, improper minorants, the affine-minorant chain and the
/// conjugate characterization of subgradients.
pub fn calculus_laws(seed: u64, n: usize, tol: f64) -> Vec<LawResult> {
    let mut rng = random::rng(seed);
    let names = [
        "difference quotient nondecreasing in t",
        "g'(x0, s x) = s g'(x0, x)",
        "g'(x0, .) sublinear",
        "g'(x0, x) = -((-g)'(x0, x))",
        "subgradient iff minorant of g'(x0, .)",
        "Young-Fenchel (a), (b), (c)",
        "conjugate: closed form = region sup",
        "g** = g for closed convex g",
        "g** = closure hull for non-convex PL g",
        "improper g admits a hat minorant with nonzero slope",
        "affine-minorant conditions agree",
        "subdifferential = conjugate characterization",
    ];
    let mut laws: Vec<LawResult> = names.iter().map(|s| LawResult::new(s)).collect();
    for _ in 0..n {
        let g = random::closed_convex(&mut rng);
        let x0 = random_point_in(&mut rng, &g);
        let x = rng.gen_range(-3.0..3.0);
        let w = || format!("g={} x0={x0} x={x}", serde_json::to_string(&g).unwrap_or_default());
        let (s, t) = {
            let a: f64 = rng.gen_range(1e-3..2.0);
            let b = rng.gen_range(1e-3..2.0);
            (a.min(b), a.max(b))
        };
        let (qs, qt) = (difference_quotient(&g, x0, x, s).unwrap(), difference_quotient(&g, x0, x, t).unwrap());
        laws[0].check(qs <= qt || qs.approx_eq(qt, 1e-9), w);
        let d = dirderiv(&g, x0, x).unwrap();
        let k = rng.gen_range(0.1..5.0);
        laws[1].check(dirderiv(&g, x0, k * x).unwrap().approx_eq(d.scale(k).unwrap(), 1e-9), w);
        let x2 = rng.gen_range(-3.0..3.0);
        let lhs = dirderiv(&g, x0, x + x2).unwrap();
        let rhs = d.isum(dirderiv(&g, x0, x2).unwrap());
        laws[2].check(lhs <= rhs || lhs.approx_eq(rhs, 1e-9), w);
        let h = g.negate();
        laws[3].check(d.approx_eq(dirderiv_down(&h, x0, x).unwrap().negate(), 1e-12), w);

        let xi = random::dual(&mut rng, 0.3);
        let r = *[-3.0, 0.0, 3.0, rng.gen_range(-5.0..5.0)].get(rng.gen_range(0..4)).unwrap();
        if !g.eval(x0).is_top() {
            laws[4].check(is_subgradient(&g, x0, xi) == is_dirderiv_minorant(&g, x0, xi).unwrap(), || {
                format!("{} xi={xi}", w())
            });
        }
        laws[5].check(young_fenchel_check(&g, xi, r, x).iter().all(|&b| b), || format!("{} xi={xi} r={r}", w()));
        laws[6].check(conjugate(&g, xi, r).approx_eq(conjugate_by_regions(&g, xi, r), tol.max(1e-9)), || {
            format!("{} xi={xi} r={r}", w())
        });
        laws[7].check(biconjugate(&g).approx_eq(&g.canonical(), 1e-9), w);

        let p = UpFunction::Pl(random::pl(&mut rng, 0.3));
        laws[8].check(biconjugate(&p).approx_eq(&p.closure_hull(), 1e-9), || format!("{p:?}"));

        let imp = UpFunction::improper_split(random::interval(&mut rng));
        let ok = match improper_minorant(&imp) {
            Some(m) => m.xi.slope() != 0.0 && m.xi.is_hat() && forall_le(&m, &imp),
            None => false,
        };
        laws[9].check(ok, || format!("{imp:?}"));

        let rep = affine_minorant_conditions(&g, xi, r);
        let hat_sup_ok = !(xi.is_hat() && rep.a) || rep.sup_b == Ext::NegInf;
        laws[10].check(rep.consistent() && hat_sup_ok, || format!("{} xi={xi} r={r} {rep:?}", w()));
        laws[11].check(subdiff_conjugate_check(&g, x0, 1e-9).holds, w);
    }
    laws
}

/// `(f □ g)*(ξ, r)` against the sup-convolution of the conjugates.
pub fn infconv_laws(seed: u64, pairs: usize, tol: f64) -> Vec<LawResult> {
    let mut rng = random::rng(seed);
    let mut law = LawResult::new("(f box g)* = sup-convolution of conjugates");
    let duals = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut v = vec![
            DualElem::Proper(rng.gen_range(-6.0..6.0)),
            DualElem::Proper(rng.gen_range(-1.0..1.0)),
            DualElem::Hat(1.0),
            DualElem::Hat(-1.0),
            DualElem::Hat(0.0),
        ];
        v.push(DualElem::Hat(rng.gen_range(0.5..2.0)));
        v
    };
    for _ in 0..pairs {
        let f = random::closed_convex(&mut rng);
        let g = random::closed_convex(&mut rng);
        for xi in duals(&mut rng) {
            for r in [-3.0, 0.0, 3.0] {
                let rep = infconv_conjugate_check(&f, &g, xi, r, tol.max(1e-9)).unwrap();
                law.check(rep.equal, || format!("f={f:?} g={g:?} {rep:?}"));
            }
        }
    }
    vec![law]
}

// -------------------------------------------------------------- setvalued

pub fn cones() -> [Cone2; 3] {
    [Cone2::orthant(), Cone2::ray([0.0, 1.0]), Cone2::zero()]
}

/// Whether `B + z ⊆ A`, decided from the V-representation of `B`.
pub fn translate_contained(a: &ConvexPoly2, b: &ConvexPoly2, z: P2, tol: f64) -> bool {
    if b.is_empty() {
        return true;
    }
    if a.is_empty() {
        return false;
    }
    b.points().iter().all(|&p| a.contains(add2(p, z), tol))
        && b.rays().iter().all(|&d| a.hrep().iter().all(|h| dot2(h.n, d) <= tol))
}

/// Containment oracle for `A ⊖ B`: every vertex of the candidate is a valid
/// shift, points just outside each facet are not, and a grid of probes
/// classifies the same way.
pub fn containment_oracle(a: &UpSet, b: &UpSet, d: &UpSet) -> Result<(), String> {
    let (pa, pb, pd) = (a.poly(), b.poly(), d.poly());
    if pd.is_empty() {
        // no shift may work: try the vertices of A minus those of B
        for &p in pa.points() {
            for &q in pb.points() {
                let z = [p[0] - q[0], p[1] - q[1]];
                if translate_contained(pa, pb, z, 1e-9) {
                    return Err(format!("empty difference but shift {z:?} fits"));
                }
            }
        }
        return Ok(());
    }
    for &v in pd.points() {
        if !translate_contained(pa, pb, v, 1e-7) {
            return Err(format!("vertex {v:?} of the difference is not a valid shift"));
        }
    }
    for h in pd.hrep() {
        let base = pd.points().iter().copied().find(|&p| (dot2(h.n, p) - h.c).abs() <= 1e-7).unwrap_or(pd.points()[0]);
        let out = [base[0] + 1e-4 * h.n[0], base[1] + 1e-4 * h.n[1]];
        if translate_contained(pa, pb, out, 1e-9) {
            return Err(format!("point {out:?} outside facet {h:?} is still a valid shift"));
        }
    }
    for i in -6..=6 {
        for j in -6..=6 {
            let z = [i as f64 * 1.5, j as f64 * 1.5];
            let margin = pd.hrep().iter().map(|h| dot2(h.n, z) - h.c).fold(f64::NEG_INFINITY, f64::max);
            if margin.abs() < 1e-6 {
                continue;
            }
            let inside = margin < 0.0;
            if inside != translate_contained(pa, pb, z, 1e-9) {
                return Err(format!("grid point {z:?} classified differently"));
            }
        }
    }
    Ok(())
}

/// Shift formula, support formula and containment oracle for `A ⊖ B`.
pub fn setdiff_laws(seed: u64, n: usize) -> Vec<LawResult> {
    let mut rng = random::rng(seed);
    let mut support = LawResult::new("A-B: shift formula = support formula");
    let mut oracle = LawResult::new("A-B: containment oracle");
    let mut inv = LawResult::new("A-B: output stable under +C");
    for i in 0..n {
        let cone = cones()[i % 3].clone();
        let a = random::upset(&mut rng, &cone);
        let b = random::upset(&mut rng, &cone);
        let w = || format!("A={} B={}", serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let rep = setdiff_support_check(&a, &b, &default_zstars(&a), 1e-7).unwrap();
        support.check(rep.holds, || format!("{} hausdorff={}", w(), rep.hausdorff));
        let res = containment_oracle(&a, &b, &rep.by_shift);
        oracle.check(res.is_ok(), || format!("{} {}", w(), res.clone().unwrap_err()));
        inv.check(rep.by_shift.satisfies_invariant(), w);
    }
    vec![support, oracle, inv]
}

/// Lattice rules: `inf 𝒜 ⊕ B = inf(𝒜 ⊕ B)` in `Q▵`, the same for `sup` in
/// `Q▿`, and `(sup 𝒜) ⊕ B ⊆ sup(𝒜 ⊕ B)` in `Q▵`; every output is checked
/// against the invariant.
pub fn set_lattice_laws(seed: u64, n: usize) -> Vec<LawResult> {
    let mut rng = random::rng(seed);
    let mut inf_dist = LawResult::new("Q-up: inf distributes over the closed sum");
    let mut sup_dist = LawResult::new("Q-down: sup distributes over the closed sum");
    let mut sup_incl = LawResult::new("Q-up: (sup F) + B contained in sup(F + B)");
    let mut inv = LawResult::new("outputs stable under +C / -C");
    for i in 0..n {
        let cone = cones()[i % 3].clone();
        let k = rng.gen_range(1..=3);
        let fam: Vec<UpSet> = (0..k).map(|_| random::upset(&mut rng, &cone)).collect();
        let b = random::upset(&mut rng, &cone);
        let w = || format!("F={} B={}", serde_json::to_string(&fam).unwrap(), serde_json::to_string(&b).unwrap());
        let shifted: Vec<UpSet> = fam.iter().map(|a| a.oplus(&b).unwrap()).collect();
        let lhs = UpSet::inf_family(&cone, &fam).unwrap().oplus(&b).unwrap();
        let rhs = UpSet::inf_family(&cone, &shifted).unwrap();
        inf_dist.check(lhs.approx_eq(&rhs, 1e-7), w);
        let s = UpSet::sup_family(&cone, &fam).unwrap().oplus(&b).unwrap();
        let t = UpSet::sup_family(&cone, &shifted).unwrap();
        sup_incl.check(s.poly().is_subset_of(t.poly(), 1e-7), w);

        let dfam: Vec<DownSet> = fam.iter().map(|a| a.neg()).collect();
        let db = b.neg();
        let dshift: Vec<DownSet> = dfam.iter().map(|a| a.oplus(&db).unwrap()).collect();
        let dl = DownSet::sup_family(&cone, &dfam).unwrap().oplus(&db).unwrap();
        let dr = DownSet::sup_family(&cone, &dshift).unwrap();
        sup_dist.check(dl.approx_eq(&dr, 1e-7), w);

        let ups = [lhs, rhs, s, t, b.scale(0.0), b.scale(2.5), b.idif(&fam[0]).unwrap()];
        let downs = [dl, dr, db.sdif(&dfam[0]).unwrap()];
        let ok = ups.iter().all(UpSet::satisfies_invariant) && downs.iter().all(DownSet::satisfies_invariant);
        inv.check(ok, w);
    }
    vec![inf_dist, sup_dist, sup_incl, inv]
}

/// Scalarization path of the conjugate against the definitional oracle,
/// the hat / `z* = 0` identity, `g** = g` at `xs_per_fn` abscissae, the
/// minorant chain, improper minorants and properness.
pub fn sv_conjugate_laws(seed: u64, n: usize, xs_per_fn: usize) -> Vec<LawResult> {
    let mut rng = random::rng(seed);
    let mut conj = LawResult::new("g*: scalarization = definitional intersection");
    let mut hat = LawResult::new("g*(hat x*, r, z*) = g*(x*, r, 0)");
    let mut bic = LawResult::new("g** = g on slices");
    let mut chain = LawResult::new("conaffine minorant conditions agree");
    let mut imp = LawResult::new("improper g = sup of improper conaffine minorants");
    let mut prop = LawResult::new("proper iff some scalarization is proper");
    for i in 0..n {
        let cone = cones()[i % 3].clone();
        let g = random::set_valued(&mut rng, &cone);
        let gj = serde_json::to_string(&g).unwrap();
        let d = random::dual_triple(&mut rng, &cone);
        let a = sv_conjugate(&g, &d).unwrap();
        let b = conjugate_oracle(&g, &d);
        conj.check(a.approx_eq(&b, 1e-7), || format!("g={gj} d={d:?}"));

        let s = rng.gen_range(-3.0..3.0);
        let r = rng.gen_range(-3.0..3.0);
        let z = random::dual_cone_point(&mut rng, &cone, 0.0);
        let h1 = sv_conjugate(&g, &DualTriple { xi: DualElem::Hat(s), r, zstar: z }).unwrap();
        let h2 = sv_conjugate(&g, &DualTriple { xi: DualElem::Proper(s), r, zstar: [0.0, 0.0] }).unwrap();
        hat.check(h1 == h2, || format!("g={gj} a={s} r={r} z*={z:?}"));

        for _ in 0..xs_per_fn {
            let x = sample_x(&mut rng, &g);
            let got = sv_biconjugate(&g, x).unwrap();
            bic.check(got.approx_eq(&g.slice(x), 1e-7), || format!("g={gj} x={x}"));
        }

        let rep = sv_minorant_conditions(&g, &d).unwrap();
        chain.check(rep.consistent(), || format!("g={gj} d={d:?} {rep:?}"));

        let improper = improper_graph(&mut rng, &cone);
        let x = rng.gen_range(-6.0..6.0);
        imp.check(improper_conaffine_sup(&improper, x).approx_eq(&improper.slice(x), 1e-9), || {
            format!("g={} x={x}", serde_json::to_string(&improper).unwrap())
        });

        let p = properness(&g).unwrap();
        let any_proper = g.zstar_family().iter().any(|&z| matches!(g.scalarize(z), Ok(UpFunction::Pl(_))));
        prop.check(p.proper == any_proper, || format!("g={gj} {p:?}"));
    }
    vec![conj, hat, bic, chain, imp, prop]
}

/// An abscissa near the interesting part of `dom g`.
pub fn sample_x<R: Rng>(rng: &mut R, g: &SetValuedFn) -> f64 {
    let d = g.dom();
    let lo = if d.lo.is_finite() { d.lo - 1.0 } else { -6.0 };
    let hi = if d.hi.is_finite() { d.hi + 1.0 } else { 6.0 };
    if hi > lo {
        rng.gen_range(lo..hi)
    } else {
        lo
    }
}

/// `g(x) = Z` on a random interval, `∅` off it.
fn improper_graph<R: Rng>(rng: &mut R, cone: &Cone2) -> SetValuedFn {
    let d: Interval = random::interval(rng);
    let mut rows = Vec::new();
    if d.hi.is_finite() {
        rows.push(crate::geometry::Halfspace3::new([1.0, 0.0, 0.0], d.hi));
    }
    if d.lo.is_finite() {
        rows.push(crate::geometry::Halfspace3::new([-1.0, 0.0, 0.0], -d.lo));
    }
    SetValuedFn::new(rows, cone).expect("domain rows have n_z = 0")
}
