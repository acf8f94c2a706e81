//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Oracles here are written independently of the library
//! paths they check (grid sups, sampled hulls, finite differences).

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use extconvex::calculus::{
    biconjugate, conjugate, dirderiv, is_dirderiv_minorant, is_subgradient, subdiff_conjugate_check, subdiff_extended,
};
use extconvex::extreal::{DownReal, Ext, UpReal};
use extconvex::geometry::Cone2;
use extconvex::random;
use extconvex::residuation::{check_condition, three_point_groupoid, Condition, Mode, ThreePoint};
use extconvex::scalar_fn::{DualElem, Interval, Knot, PlFunction, Tail, UpFunction};
use extconvex::setvalued::{
    conjugate_oracle, default_zstars, h_of, level_halfplane, setdiff_support_check, sv_biconjugate, sv_conjugate,
    DownSet, DualTriple, SetValuedFn, UpSet,
};
use extconvex::suites::{cones, containment_oracle, extreal_laws, groupoid_laws, infconv_laws, sample_x, LawResult};

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "infinity tables exact", budget: Duration::from_secs(1), run: infinity_tables },
        Criterion { name: "extended-real law suite", budget: Duration::from_secs(10), run: extreal_suite },
        Criterion { name: "residuation conditions agree", budget: Duration::from_secs(30), run: residuation },
        Criterion { name: "conjugate vs grid brute force", budget: Duration::from_secs(30), run: conjugate_grid },
        Criterion { name: "biconjugation", budget: Duration::from_secs(30), run: biconjugation },
        Criterion { name: "infimal-convolution conjugate", budget: Duration::from_secs(20), run: infconv_identity },
        Criterion {
            name: "directional derivative and subdifferential",
            budget: Duration::from_secs(20),
            run: dirderiv_fd,
        },
        Criterion { name: "set difference", budget: Duration::from_secs(30), run: set_difference },
        Criterion { name: "set-valued conjugation", budget: Duration::from_secs(60), run: sv_conjugation },
        Criterion { name: "fixtures", budget: Duration::from_secs(5), run: fixtures },
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = (c.run)();
        let dt = t.elapsed();
        let res = match res {
            Ok(msg) if dt > c.budget => Err(format!("{msg}; took {dt:.2?}, budget {:?}", c.budget)),
            r => r,
        };
        match res {
            Ok(msg) => println!("PASS {:>2} {} ({msg}; {dt:.2?})", i + 1, c.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {} ({msg}; {dt:.2?})", i + 1, c.name);
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), total.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn summarize(laws: &[LawResult]) -> Outcome {
    let cases: usize = laws.iter().map(|l| l.cases).sum();
    let bad: Vec<String> = laws
        .iter()
        .filter(|l| !l.passed())
        .map(|l| {
            format!(
                "{}: {} failures, e.g. {}",
                l.law,
                l.failures,
                l.counterexamples.first().cloned().unwrap_or_default()
            )
        })
        .collect();
    if bad.is_empty() {
        Ok(format!("{} laws, {cases} cases", laws.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn tally(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok && failures.len() < 5 {
        failures.push(what());
    } else if !ok {
        failures.push(String::new());
    }
}

fn verdict(failures: Vec<String>, checked: usize, detail: String) -> Outcome {
    if failures.is_empty() {
        Ok(format!("{checked} checks, {detail}"))
    } else {
        let shown: Vec<&String> = failures.iter().filter(|s| !s.is_empty()).collect();
        Err(format!("{} of {checked} checks failed: {shown:?}", failures.len()))
    }
}

// 1 ----------------------------------------------------------------------

fn infinity_tables() -> Outcome {
    let (p, m) = (Ext::PosInf, Ext::NegInf);
    let ui = |a: Ext, b: Ext| UpReal::from_ext(a).idif(UpReal::from_ext(b)).ext();
    let sd = |a: Ext, b: Ext| DownReal::from_ext(a).sdif(DownReal::from_ext(b)).ext();
    let table = [
        ("+inf (-) -inf", ui(p, m), p),
        ("+inf (-) +inf", ui(p, p), m),
        ("-inf (-) +inf", ui(m, p), m),
        ("-inf (-) -inf", ui(m, m), m),
        ("+inf (/) +inf", sd(p, p), p),
        ("+inf (/) -inf", sd(p, m), p),
        ("-inf (/) -inf", sd(m, m), p),
        ("-inf (/) +inf", sd(m, p), m),
    ];
    let mut bad: Vec<String> = table
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, want)| format!("{name} = {got}, expected {want}"))
        .collect();
    let rs = [m, Ext::of(-7.5), Ext::ZERO, Ext::of(2.0), Ext::of(1e300), p];
    for &r in &rs {
        for (name, got, want) in [
            ("r (-) +inf", ui(r, p), m),
            ("-inf (-) r", ui(m, r), m),
            ("r (/) -inf", sd(r, m), p),
            ("+inf (/) r", sd(p, r), p),
        ] {
            if got != want {
                bad.push(format!("{name} at r = {r}: {got}, expected {want}"));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("8 table entries, {} boundary identities", 4 * rs.len()))
    } else {
        Err(bad.join("; "))
    }
}

// 2 ----------------------------------------------------------------------

fn extreal_suite() -> Outcome {
    let laws = extreal_laws(SEED, 100_000, 1e-12);
    if let Some(l) = laws.iter().find(|l| l.cases != 100_000) {
        return Err(format!("{} ran {} cases", l.law, l.cases));
    }
    summarize(&laws)
}

// 3 ----------------------------------------------------------------------

fn residuation() -> Outcome {
    let mut laws = groupoid_laws(SEED, 200);
    let sup_model = three_point_groupoid(ThreePoint::SupAddition);
    let mut m = LawResult::new("sup-addition model: fails all inf-conditions, passes all sup-conditions");
    for c in Condition::ALL {
        m.check(!check_condition(&sup_model, c, Mode::Inf).holds, || format!("{c:?} holds in inf mode"));
        m.check(check_condition(&sup_model, c, Mode::Sup).holds, || format!("{c:?} fails in sup mode"));
    }
    laws.push(m);
    summarize(&laws)
}

// 4 ----------------------------------------------------------------------

const GRID_HALF: i64 = 1_000_000; // [-1e3, 1e3] at step 1e-3
const N_SLOPES: usize = 50;

fn grid_x(i: i64) -> f64 {
    i as f64 / 1000.0
}

/// A convex PL function whose knots lie on the brute-force grid, so the
/// grid contains every candidate maximizer.
fn grid_convex_pl<R: Rng>(rng: &mut R) -> PlFunction {
    let n = rng.gen_range(1..=6);
    let mut ks: Vec<i64> = Vec::new();
    while ks.len() < n {
        let k = rng.gen_range(-10_000..=10_000);
        if !ks.contains(&k) {
            ks.push(k);
        }
    }
    ks.sort();
    let mut slopes: Vec<f64> = (0..=n).map(|_| rng.gen_range(-5.0..5.0)).collect();
    slopes.sort_by(f64::total_cmp);
    let mut knots = vec![Knot::new(grid_x(ks[0]), rng.gen_range(-10.0..10.0))];
    for i in 1..n {
        let v = knots[i - 1].v + slopes[i] * (grid_x(ks[i]) - grid_x(ks[i - 1]));
        knots.push(Knot::new(grid_x(ks[i]), v));
    }
    let left = if rng.gen_bool(0.3) { Tail::Wall } else { Tail::Slope(slopes[0]) };
    let right = if rng.gen_bool(0.3) { Tail::Wall } else { Tail::Slope(slopes[n]) };
    PlFunction::new(knots, left, right).unwrap()
}

/// Grid values of `p`, `-inf` where `p` is `+inf`, walked segment by segment.
fn grid_values(p: &PlFunction) -> Vec<f64> {
    let ks = p.knots();
    let (first, last) = (ks[0], ks[ks.len() - 1]);
    (-GRID_HALF..=GRID_HALF)
        .map(|i| {
            let x = grid_x(i);
            if x < first.x {
                match p.left() {
                    Tail::Wall => f64::NAN,
                    Tail::Slope(s) => first.v + s * (x - first.x),
                }
            } else if x > last.x {
                match p.right() {
                    Tail::Wall => f64::NAN,
                    Tail::Slope(s) => last.v + s * (x - last.x),
                }
            } else {
                let j = ks.partition_point(|k| k.x <= x).max(1).min(ks.len() - 1);
                if ks.len() == 1 {
                    first.v
                } else {
                    let (a, b) = (ks[j - 1], ks[j]);
                    a.v + (b.v - a.v) * (x - a.x) / (b.x - a.x)
                }
            }
        })
        .collect()
}

/// `max a x - g(x)` over the whole grid and over its middle half.
fn grid_sups(gx: &[f64], slopes: &[f64; N_SLOPES]) -> ([f64; N_SLOPES], [f64; N_SLOPES]) {
    let mut full = [f64::NEG_INFINITY; N_SLOPES];
    let mut half = [f64::NEG_INFINITY; N_SLOPES];
    let q = GRID_HALF / 2;
    for (idx, &g) in gx.iter().enumerate() {
        if g.is_nan() {
            continue;
        }
        let i = idx as i64 - GRID_HALF;
        let x = grid_x(i);
        let mid = (-q..=q).contains(&i);
        for s in 0..N_SLOPES {
            let v = slopes[s] * x - g;
            full[s] = full[s].max(v);
            if mid {
                half[s] = half[s].max(v);
            }
        }
    }
    (full, half)
}

fn conjugate_grid() -> Outcome {
    let mut rng = random::rng(SEED ^ 4);
    let mut failures = Vec::new();
    let (mut finite, mut infinite) = (0, 0);
    for _ in 0..100 {
        let p = grid_convex_pl(&mut rng);
        let g = UpFunction::Pl(p.clone());
        let mut slopes = [0.0; N_SLOPES];
        for s in slopes.iter_mut() {
            *s = rng.gen_range(-6.0..6.0);
        }
        // tail slopes exactly: finite, attained along a whole ray
        if let Tail::Slope(s) = p.left() {
            slopes[0] = s;
        }
        if let Tail::Slope(s) = p.right() {
            slopes[1] = s;
        }
        let (full, half) = grid_sups(&grid_values(&p), &slopes);
        for (s, &a) in slopes.iter().enumerate() {
            // a window twice as wide only gains when the sup is +inf
            let oracle = if full[s] - half[s] > 1e-6 { Ext::PosInf } else { Ext::of(full[s]) };
            let got = conjugate(&g, DualElem::Proper(a), 0.0).ext();
            let ok = match (got, oracle) {
                (Ext::Finite(u), Ext::Finite(v)) => (u - v).abs() <= 1e-6,
                (u, v) => u == v,
            };
            if oracle == Ext::PosInf {
                infinite += 1;
            } else {
                finite += 1;
            }
            tally(&mut failures, ok, || {
                format!("g={} a={a}: {got} vs grid {oracle}", serde_json::to_string(&g).unwrap())
            });
        }
    }
    verdict(failures, 100 * N_SLOPES, format!("{finite} finite, {infinite} infinite"))
}

// 5 ----------------------------------------------------------------------

/// Lower convex hull of points sorted by abscissa.
fn lower_hull(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut h: Vec<(f64, f64)> = Vec::new();
    for &p in pts {
        while h.len() >= 2 {
            let (a, b) = (h[h.len() - 2], h[h.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0.0 {
                h.pop();
            } else {
                break;
            }
        }
        h.push(p);
    }
    h
}

fn hull_at(h: &[(f64, f64)], x: f64) -> f64 {
    if x < h[0].0 || x > h[h.len() - 1].0 {
        return f64::INFINITY;
    }
    if h.len() == 1 {
        return h[0].1;
    }
    let j = h.partition_point(|p| p.0 <= x).clamp(1, h.len() - 1);
    let (a, b) = (h[j - 1], h[j]);
    a.1 + (b.1 - a.1) * (x - a.0) / (b.0 - a.0)
}

/// Dense samples of `p` on `dom p ∩ [lo, hi]`, knots and domain ends included.
fn samples(p: &PlFunction, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let d = p.domain();
    let (lo, hi) = (d.lo.max(lo), d.hi.min(hi));
    let mut xs: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    xs.extend(p.knots().iter().map(|k| k.x));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs.into_iter().filter_map(|x| p.eval(x).map(|v| (x, v))).collect()
}

/// Closed convex hull of `p`: the sampled lower hull around the knots plus
/// the recession rays of the two tails.
fn sampled_hull_oracle(p: &PlFunction, x: f64) -> Ext {
    let ks = p.knots();
    let (a, b) = (ks[0].x - 1.0, ks[ks.len() - 1].x + 1.0);
    let h = lower_hull(&samples(p, a, b, 200_000));
    let sl = match p.left() {
        Tail::Slope(s) => Some(s),
        Tail::Wall => None,
    };
    let sr = match p.right() {
        Tail::Slope(s) => Some(s),
        Tail::Wall => None,
    };
    if let (Some(l), Some(r)) = (sl, sr) {
        if l > r {
            return Ext::NegInf;
        }
    }
    // inf over hull vertices y of H(y) + (slope of the ray towards x)(x - y)
    let mut best = hull_at(&h, x);
    for &(vx, vy) in &h {
        let ray = if x < vx { sl } else { sr };
        if let Some(s) = ray {
            best = best.min(vy + s * (x - vx));
        }
    }
    if best == f64::INFINITY {
        Ext::PosInf
    } else {
        Ext::of(best)
    }
}

fn biconjugation() -> Outcome {
    let mut rng = random::rng(SEED ^ 5);
    let mut failures = Vec::new();
    let mut kinds = [0usize; 4];
    for i in 0..100 {
        let g = match i % 4 {
            0 => UpFunction::Pl(random::convex_pl(&mut rng, 0.3)),
            1 => UpFunction::improper_split(random::interval(&mut rng)),
            2 => UpFunction::ConstTop,
            _ => UpFunction::ConstBottom,
        };
        kinds[i % 4] += 1;
        let b = biconjugate(&g);
        tally(&mut failures, b.approx_eq(&g.canonical(), 1e-9), || format!("g={g:?} g**={b:?}"));
    }
    let mut bottoms = 0;
    for _ in 0..50 {
        let p = loop {
            let p = random::pl(&mut rng, 0.3);
            if !p.is_convex() {
                break p;
            }
        };
        let b = biconjugate(&UpFunction::Pl(p.clone()));
        let mut xs: Vec<f64> = p.knots().iter().map(|k| k.x).collect();
        xs.extend((0..20).map(|_| rng.gen_range(-20.0..20.0)));
        for x in xs {
            let oracle = sampled_hull_oracle(&p, x);
            bottoms += (oracle == Ext::NegInf) as usize;
            let got = b.eval(x).ext();
            let ok = match (got, oracle) {
                (Ext::Finite(u), Ext::Finite(v)) => (u - v).abs() <= 1e-6 * (1.0 + v.abs()),
                (u, v) => u == v,
            };
            tally(&mut failures, ok, || format!("p={p:?} x={x}: g**={got} hull={oracle}"));
        }
    }
    verdict(failures, 100 + 50, format!("convex kinds {kinds:?}, 50 non-convex ({bottoms} samples with a -inf hull)"))
}

// 6 ----------------------------------------------------------------------

fn infconv_identity() -> Outcome {
    summarize(&infconv_laws(SEED ^ 6, 200, 1e-9))
}

// 7 ----------------------------------------------------------------------

/// `(g(x0 + t x) - g(x0)) / t` for `t = 2^-k`, `k = 0..=30`, read off where
/// two successive quotients agree; the smallest `t` otherwise.
fn fd_dirderiv(g: &UpFunction, x0: f64, x: f64) -> Ext {
    let q: Vec<Ext> = (0..=30)
        .map(|k| {
            let t = (-(k as f64)).exp2();
            g.eval(x0 + t * x).idif(g.eval(x0)).scale(1.0 / t).unwrap().ext()
        })
        .collect();
    for w in q.windows(2) {
        match (w[0], w[1]) {
            (Ext::Finite(a), Ext::Finite(b)) if (a - b).abs() <= 1e-9 * (1.0 + a.abs()) => return w[1],
            _ => {}
        }
    }
    q[30]
}

fn dirderiv_fd() -> Outcome {
    let mut rng = random::rng(SEED ^ 7);
    let mut failures = Vec::new();
    let mut checked = 0;
    for _ in 0..100 {
        let p = random::convex_pl(&mut rng, 0.3);
        let g = UpFunction::Pl(p.clone());
        let gj = serde_json::to_string(&g).unwrap();
        let d = p.domain();
        let mut pts: Vec<f64> = p.knots().iter().map(|k| k.x).collect();
        let (lo, hi) = (d.lo.max(-15.0), d.hi.min(15.0));
        while pts.len() < 10 {
            pts.push(rng.gen_range(lo..=hi));
        }
        pts.truncate(10);
        for &x0 in &pts {
            for x in [1.0, -1.0, rng.gen_range(-3.0..3.0), 0.0] {
                checked += 1;
                let got = dirderiv(&g, x0, x).unwrap().ext();
                let oracle = fd_dirderiv(&g, x0, x);
                let ok = match (got, oracle) {
                    (Ext::Finite(u), Ext::Finite(v)) => (u - v).abs() <= 1e-6,
                    (u, v) => u == v,
                };
                tally(&mut failures, ok, || format!("g={gj} x0={x0} x={x}: {got} vs {oracle}"));
            }

            // proper subgradients are the slopes between -g'(x0,-1) and g'(x0,1)
            checked += 1;
            let sd = subdiff_extended(&g, x0);
            let lo = fd_dirderiv(&g, x0, -1.0).negate().to_f64();
            let hi = fd_dirderiv(&g, x0, 1.0).to_f64();
            let ends_ok = |a: f64, b: f64| a == b || (a - b).abs() <= 1e-6;
            tally(&mut failures, ends_ok(sd.proper_part.lo, lo) && ends_ok(sd.proper_part.hi, hi), || {
                format!("g={gj} x0={x0}: subdiff {:?} vs [{lo}, {hi}]", sd.proper_part)
            });

            let mut cands = vec![DualElem::Hat(0.0), DualElem::Hat(1.0), DualElem::Hat(-1.0)];
            cands.extend((0..4).map(|_| DualElem::Proper(rng.gen_range(-6.0..6.0))));
            cands.extend(
                [sd.proper_part.lo, sd.proper_part.hi].into_iter().filter(|a| a.is_finite()).map(DualElem::Proper),
            );
            for xi in cands {
                checked += 1;
                let a = is_subgradient(&g, x0, xi);
                let b = is_dirderiv_minorant(&g, x0, xi).unwrap();
                tally(&mut failures, a == b, || format!("g={gj} x0={x0} xi={xi}: subgradient {a}, minorant {b}"));
            }
            checked += 1;
            let rep = subdiff_conjugate_check(&g, x0, 1e-9);
            tally(&mut failures, rep.holds, || format!("g={gj} x0={x0}: {rep:?}"));
        }
    }
    verdict(failures, checked, "100 functions x 10 points".into())
}

// 8 ----------------------------------------------------------------------

fn set_difference() -> Outcome {
    let mut rng = random::rng(SEED ^ 8);
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let cone = cones()[i % 3].clone();
        let a = random::upset(&mut rng, &cone);
        let b = random::upset(&mut rng, &cone);
        let w = || format!("A={} B={}", serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let rep = setdiff_support_check(&a, &b, &default_zstars(&a), 1e-7).unwrap();
        if rep.hausdorff.is_finite() {
            worst = worst.max(rep.hausdorff);
        }
        tally(&mut failures, rep.holds && rep.hausdorff <= 1e-7, || format!("{} hausdorff={}", w(), rep.hausdorff));
        let oracle = containment_oracle(&a, &b, &rep.by_shift);
        tally(&mut failures, oracle.is_ok(), || format!("{} {:?}", w(), oracle.clone().err()));
    }
    verdict(failures, 200, format!("max Hausdorff {worst:.1e}"))
}

// 9 ----------------------------------------------------------------------

fn sv_conjugation() -> Outcome {
    let mut rng = random::rng(SEED ^ 9);
    let mut failures = Vec::new();
    let mut checked = 0;
    for i in 0..50 {
        let cone = cones()[i % 3].clone();
        let g = random::set_valued(&mut rng, &cone);
        let gj = serde_json::to_string(&g).unwrap();
        let mut triples: Vec<DualTriple> = (0..4).map(|_| random::dual_triple(&mut rng, &cone)).collect();
        triples.push(DualTriple {
            xi: DualElem::Hat(1.0),
            r: 0.5,
            zstar: random::dual_cone_point(&mut rng, &cone, 0.0),
        });
        triples.push(DualTriple { xi: DualElem::Proper(0.5), r: -1.0, zstar: [0.0, 0.0] });
        for d in &triples {
            checked += 1;
            let got = sv_conjugate(&g, d).unwrap();
            let oracle = conjugate_oracle(&g, d);
            tally(&mut failures, got.approx_eq(&oracle, 1e-7), || format!("g={gj} d={d:?}"));

            if let DualElem::Hat(s) = d.xi {
                checked += 1;
                let proper =
                    sv_conjugate(&g, &DualTriple { xi: DualElem::Proper(s), r: d.r, zstar: [0.0, 0.0] }).unwrap();
                tally(&mut failures, got == proper, || format!("g={gj} hat identity at {d:?}"));
            }
        }
        for _ in 0..10 {
            checked += 1;
            let x = sample_x(&mut rng, &g);
            let b = sv_biconjugate(&g, x).unwrap();
            tally(&mut failures, b.approx_eq(&g.slice(x), 1e-7), || format!("g={gj} x={x}"));
        }
    }
    verdict(failures, checked, "50 functions".into())
}

// 10 ---------------------------------------------------------------------

fn epi_convex(h: &dyn Fn(f64) -> Ext) -> bool {
    probe_convex(&|x, r| h(x) <= Ext::of(r))
}

fn hypo_convex(h: &dyn Fn(f64) -> Ext) -> bool {
    probe_convex(&|x, r| Ext::of(r) <= h(x))
}

/// Sampled convexity of `{(x, r) : inside(x, r)}` on a grid.
fn probe_convex(inside: &dyn Fn(f64, f64) -> bool) -> bool {
    let pts: Vec<(f64, f64)> =
        (-16..=16).flat_map(|i| [-1.0, 0.0, 1.0].map(|r| (i as f64 / 4.0, r))).filter(|&(x, r)| inside(x, r)).collect();
    pts.iter().all(|&(x1, r1)| {
        pts.iter().all(|&(x2, r2)| {
            [0.25, 0.5, 0.75].iter().all(|&t| inside(t * x1 + (1.0 - t) * x2, t * r1 + (1.0 - t) * r2))
        })
    })
}

fn fixtures() -> Outcome {
    let mut bad = Vec::new();

    // mixed-addition pathology
    let f = UpFunction::improper_split(Interval::at_least(2.0));
    let g = UpFunction::improper_split(Interval::new(-1.0, 1.0));
    let isum = |x: f64| f.eval(x).isum(g.eval(x)).ext();
    let ssum = |x: f64| f.eval(x).reinterpret_as_down().ssum(g.eval(x).reinterpret_as_down()).ext();
    if !(epi_convex(&|x| f.eval(x).ext()) && epi_convex(&|x| g.eval(x).ext())) {
        bad.push("f, g should have convex epigraphs".to_string());
    }
    if !epi_convex(&isum) {
        bad.push("inf-sum should have a convex epigraph".to_string());
    }
    if epi_convex(&ssum) || hypo_convex(&ssum) {
        bad.push("sup-sum should have neither a convex epigraph nor a convex hypograph".to_string());
    }

    // positively homogeneous, yet 0 g(x) != g(0 x) everywhere
    let ph = UpFunction::improper_split(Interval::at_most(0.0));
    for x in [-3.0, -0.5, 0.0, 0.5, 3.0] {
        for t in [0.1, 1.0, 7.0] {
            if ph.eval(t * x) != ph.eval(x).scale(t).unwrap() {
                bad.push(format!("g(tx) != t g(x) at t={t} x={x}"));
            }
        }
        if ph.eval(x).scale(0.0).unwrap() == ph.eval(0.0 * x) {
            bad.push(format!("0 g(x) = g(0 x) at x={x}"));
        }
    }

    // an improper affine function is not additive
    let hat = DualElem::Hat(1.0);
    let (lhs, rhs) = (hat.eval(1.0 + -1.0), hat.eval(1.0).isum(hat.eval(-1.0)));
    if lhs == rhs || lhs != UpReal::BOTTOM || rhs != UpReal::TOP {
        bad.push(format!("hat(1): value at 0 is {lhs:?}, sum of values at 1 and -1 is {rhs:?}"));
    }

    // every set operation lands back in the lattice
    let mut rng = random::rng(SEED ^ 10);
    let mut outputs = 0;
    for i in 0..60 {
        let cone: Cone2 = cones()[i % 3].clone();
        let (a, b) = (random::upset(&mut rng, &cone), random::upset(&mut rng, &cone));
        let z = random::dual_cone_point(&mut rng, &cone, 0.1);
        let sv: SetValuedFn = random::set_valued(&mut rng, &cone);
        let x = sample_x(&mut rng, &sv);
        let d = random::dual_triple(&mut rng, &cone);
        let ups = [
            a.oplus(&b).unwrap(),
            a.scale(0.0),
            a.scale(rng.gen_range(0.1..4.0)),
            UpSet::inf_family(&cone, &[a.clone(), b.clone()]).unwrap(),
            UpSet::sup_family(&cone, &[a.clone(), b.clone()]).unwrap(),
            a.idif(&b).unwrap(),
            h_of(&cone, z),
            level_halfplane(&cone, z, random::ext(&mut rng, 0.3)),
            UpSet::translate_cone(&cone, [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)]),
            sv.slice(x),
            sv_conjugate(&sv, &d).unwrap(),
            sv_biconjugate(&sv, x).unwrap(),
        ];
        let (da, db) = (a.neg(), b.neg());
        let downs = [
            da.oplus(&db).unwrap(),
            DownSet::inf_family(&cone, &[da.clone(), db.clone()]).unwrap(),
            DownSet::sup_family(&cone, &[da.clone(), db.clone()]).unwrap(),
            da.sdif(&db).unwrap(),
        ];
        outputs += ups.len() + downs.len();
        for (k, u) in ups.iter().enumerate() {
            if !u.satisfies_invariant() {
                bad.push(format!("up output {k} on A={}", serde_json::to_string(&a).unwrap()));
            }
        }
        for (k, u) in downs.iter().enumerate() {
            if !u.satisfies_invariant() {
                bad.push(format!("down output {k} on A={}", serde_json::to_string(&a).unwrap()));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("4 fixtures, {outputs} set outputs stable"))
    } else {
        bad.truncate(5);
        Err(bad.join("; "))
    }
}
