//! Functions `ℝ → Q▵` with closed polyhedral graphs, their support
//! scalarizations, conaffine minorants and set-valued conjugates.

use serde::{Deserialize, Serialize};

use super::sets::{h_of, level_halfplane, UpSet};
use super::SetError;
use crate::calculus::conjugate;
use crate::calculus::regions::forall_le;
use crate::extreal::Ext;
use crate::geometry::vec::{cross2, dot2, norm2, perp2, unit2, P2, P3};
use crate::geometry::{fm_eliminate, Cone2, ConvexPoly2, Halfplane, Halfspace3, Ineq, Poly3};
use crate::scalar_fn::{hat_domain, upper_envelope, AffineDual, DualElem, Interval, PlFunction, UpFunction};

const COEF_TOL: f64 = 1e-12;

/// Dual data `(ξ, r, z*)` indexing conaffine functions and conjugates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualTriple {
    pub xi: DualElem,
    pub r: f64,
    pub zstar: P2,
}

impl DualTriple {
    /// Rejects `z* ∉ C⁻`.
    pub fn new(xi: DualElem, r: f64, zstar: P2, cone: &Cone2) -> Result<DualTriple, SetError> {
        if !cone.in_dual(zstar) {
            return Err(SetError::NotInDualCone(zstar[0], zstar[1]));
        }
        Ok(DualTriple { xi, r, zstar })
    }

    pub fn affine(&self) -> AffineDual {
        AffineDual::new(self.xi, self.r)
    }
}

/// What the conjugation machinery needs from a set-valued function.
pub trait SvFunction {
    fn cone(&self) -> &Cone2;

    /// `dom g = {x : g(x) ≠ ∅}`, or its interval hull.
    fn dom(&self) -> Interval;

    /// `φ▵_{g,z*}(x) = inf_{z ∈ g(x)} −z*·z`.
    fn scalarize(&self, zstar: P2) -> Result<UpFunction, SetError>;

    /// The finite family of nonzero dual directions standing in for
    /// `C⁻∖{0}`.
    fn zstar_family(&self) -> Vec<P2>;
}

/// `x ↦ {z : (x, z) ∈ gr g}` for a polyhedral graph in `ℝ³`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SvRepr", into = "SvRepr")]
pub struct SetValuedFn {
    graph: Poly3,
    cone: Cone2,
}

#[derive(Serialize, Deserialize)]
struct SvRepr {
    h: Vec<Halfspace3>,
    cone: Cone2,
}

impl TryFrom<SvRepr> for SetValuedFn {
    type Error = SetError;

    fn try_from(r: SvRepr) -> Result<SetValuedFn, SetError> {
        SetValuedFn::new(r.h, &r.cone)
    }
}

impl From<SetValuedFn> for SvRepr {
    fn from(g: SetValuedFn) -> SvRepr {
        SvRepr { h: g.graph.h, cone: g.cone }
    }
}

fn interval_of(rows: &[Ineq]) -> Interval {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for q in rows {
        let a = q.a[0];
        if a > COEF_TOL {
            hi = hi.min(q.c / a);
        } else if a < -COEF_TOL {
            lo = lo.max(q.c / a);
        } else if q.c < -1e-9 {
            return Interval::EMPTY;
        }
    }
    if lo > hi + 1e-9 {
        return Interval::EMPTY;
    }
    Interval::new(lo, hi.max(lo))
}

fn push_unique(out: &mut Vec<P2>, z: P2) {
    if !out.iter().any(|u| (u[0] - z[0]).abs() < 1e-9 && (u[1] - z[1]).abs() < 1e-9) {
        out.push(z);
    }
}

fn meet(a: &UpSet, b: &UpSet) -> UpSet {
    UpSet::from_parts(a.poly().intersect(b.poly()), a.cone())
}

impl SetValuedFn {
    /// Every row must satisfy `n_z ∈ C⁻`, so that `{0} × C` recedes.
    pub fn new(h: Vec<Halfspace3>, cone: &Cone2) -> Result<SetValuedFn, SetError> {
        let graph = Poly3::new(h);
        if !graph.is_empty() {
            if let Some(i) = graph.h.iter().position(|s| !cone.in_dual([s.n[1], s.n[2]])) {
                return Err(SetError::BadGraph(i));
            }
        }
        Ok(SetValuedFn { graph, cone: cone.clone() })
    }

    /// `g(x) = Z` for all `x`.
    pub fn const_whole(cone: &Cone2) -> SetValuedFn {
        SetValuedFn { graph: Poly3::new(vec![]), cone: cone.clone() }
    }

    pub fn graph(&self) -> &Poly3 {
        &self.graph
    }

    pub fn rows(&self) -> &[Halfspace3] {
        &self.graph.h
    }

    pub fn slice(&self, x: f64) -> UpSet {
        let hs: Vec<Halfplane> =
            self.graph.h.iter().map(|s| Halfplane::new([s.n[1], s.n[2]], s.c - s.n[0] * x)).collect();
        UpSet::from_parts(ConvexPoly2::from_hrep(&hs), &self.cone)
    }

    fn ineqs(&self) -> Vec<Ineq> {
        self.graph.h.iter().map(|s| Ineq { a: s.n.to_vec(), c: s.c }).collect()
    }

    /// Sample abscissae for the definitional oracles: vertex coordinates,
    /// domain ends, two far points, padded to 20 with an even grid.
    pub fn sample_xs(&self) -> Vec<f64> {
        let mut xs: Vec<f64> = self.graph.vertices().iter().map(|v| v[0]).collect();
        let d = self.dom();
        xs.extend([d.lo, d.hi].into_iter().filter(|v| v.is_finite()));
        let (lo, hi) = xs.iter().fold((-1.0f64, 1.0f64), |(l, h), &x| (l.min(x), h.max(x)));
        xs.extend([-1e6, 1e6]);
        let need = 20usize.saturating_sub(xs.len());
        for k in 0..need {
            xs.push(lo - 1.0 + (hi - lo + 2.0) * (k as f64 + 0.5) / need as f64);
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        xs
    }

    /// Whether some slice is a proper subset of `Z` on the domain.
    fn has_z_rows(&self) -> bool {
        self.graph.h.iter().any(|s| norm2([s.n[1], s.n[2]]) > COEF_TOL)
    }
}

impl SvFunction for SetValuedFn {
    fn cone(&self) -> &Cone2 {
        &self.cone
    }

    fn dom(&self) -> Interval {
        let sys = fm_eliminate(&self.ineqs(), 2);
        interval_of(&fm_eliminate(&sys, 1))
    }

    /// Writes `z = w·e + s·p` with `−z*·e = 1` and `z*·p = 0`, eliminates
    /// `s`, and reads `φ` off as the upper envelope of the lower bounds on
    /// `w`.
    fn scalarize(&self, zstar: P2) -> Result<UpFunction, SetError> {
        if !self.cone.in_dual(zstar) {
            return Err(SetError::NotInDualCone(zstar[0], zstar[1]));
        }
        let dom = self.dom();
        if dom.is_empty() {
            return Ok(UpFunction::ConstTop);
        }
        let Some(u) = unit2(zstar) else {
            return Ok(UpFunction::Pl(PlFunction::constant_on(dom, 0.0).expect("non-empty domain")));
        };
        let n = norm2(zstar);
        let e = [-zstar[0] / (n * n), -zstar[1] / (n * n)];
        let p = perp2(u);
        let sys: Vec<Ineq> = self
            .graph
            .h
            .iter()
            .map(|s| {
                let nz = [s.n[1], s.n[2]];
                Ineq { a: vec![s.n[0], dot2(nz, e), dot2(nz, p)], c: s.c }
            })
            .collect();
        let lines: Vec<(f64, f64)> = fm_eliminate(&sys, 2)
            .iter()
            .filter(|q| q.a[1] < -COEF_TOL)
            .map(|q| (-q.a[0] / q.a[1], q.c / q.a[1]))
            .collect();
        Ok(match upper_envelope(&lines, dom) {
            Some(f) => UpFunction::Pl(f.canonical()),
            None => UpFunction::improper_split(dom),
        })
    }

    fn zstar_family(&self) -> Vec<P2> {
        let mut out = Vec::new();
        for s in &self.graph.h {
            if let Some(u) = unit2([s.n[1], s.n[2]]) {
                push_unique(&mut out, u);
            }
        }
        for &g in self.cone.dual().gens() {
            if let Some(u) = unit2(g) {
                push_unique(&mut out, u);
            }
        }
        out
    }
}

/// Pointwise union of polyhedral-graph functions; not convex in general.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetValuedUnion {
    pub parts: Vec<SetValuedFn>,
}

impl SetValuedUnion {
    pub fn new(parts: Vec<SetValuedFn>) -> Result<SetValuedUnion, SetError> {
        if let Some(first) = parts.first() {
            let c = first.cone.poly();
            if parts.iter().any(|g| !g.cone.poly().approx_eq(&c, 1e-9)) {
                return Err(SetError::ConeMismatch);
            }
        }
        Ok(SetValuedUnion { parts })
    }

    /// The function whose graph is `cl co ⋃ gr gᵢ`.
    pub fn hull(&self) -> Result<SetValuedFn, SetError> {
        let mut pts: Vec<P3> = Vec::new();
        let mut rays: Vec<P3> = Vec::new();
        for g in &self.parts {
            pts.extend(g.graph.vertices());
            rays.extend(g.graph.recession_rays());
        }
        let poly = Poly3::from_vrep(&pts, &rays).ok_or(SetError::UnionHull)?;
        SetValuedFn::new(poly.h, self.cone())
    }
}

impl SvFunction for SetValuedUnion {
    fn cone(&self) -> &Cone2 {
        &self.parts.first().expect("union has at least one part").cone
    }

    fn dom(&self) -> Interval {
        self.parts.iter().fold(Interval::EMPTY, |acc, g| acc.hull(&g.dom()))
    }

    fn scalarize(&self, zstar: P2) -> Result<UpFunction, SetError> {
        let mut acc = UpFunction::ConstTop;
        for g in &self.parts {
            acc = acc.pointwise_min(&g.scalarize(zstar)?)?;
        }
        Ok(acc)
    }

    fn zstar_family(&self) -> Vec<P2> {
        let mut out = Vec::new();
        for z in self.hull().map(|h| h.zstar_family()).unwrap_or_default() {
            push_unique(&mut out, z);
        }
        for g in &self.parts {
            for z in g.zstar_family() {
                push_unique(&mut out, z);
            }
        }
        out
    }
}

pub fn scalarize(g: &SetValuedFn, zstar: P2) -> Result<UpFunction, SetError> {
    g.scalarize(zstar)
}

/// `S▵_{(ξ,r,z*)}(x) = {z : ξ_r(x) ≤ −z*·z}`.
pub fn conaffine_eval(cone: &Cone2, d: &DualTriple, x: f64) -> UpSet {
    level_halfplane(cone, d.zstar, d.affine().eval(x).ext())
}

/// The graph of `S▵_{(ξ,r,z*)}` as a set-valued function. A hat is
/// stored through `S▵_{(x̂*,r,z*)} = S▵_{(x*,r,0)}`.
pub fn conaffine_graph(cone: &Cone2, d: &DualTriple) -> Result<SetValuedFn, SetError> {
    let row = match d.xi {
        DualElem::Proper(a) => Halfspace3::new([a, d.zstar[0], d.zstar[1]], d.r),
        DualElem::Hat(a) => Halfspace3::new([a, 0.0, 0.0], d.r),
    };
    SetValuedFn::new(vec![row], cone)
}

/// Closed form of `φ▵_{S,z*}` for `S = S▵_{(ξ,r,z₀*)}`: `t·(a·x − r)` when
/// `z* = t·z₀*` with `t ≥ 0`, `−∞` for any other direction. The hat and
/// `z₀* = 0` cases give `−∞` on `{a·x ≤ r}` (`0` there when `z* = 0`).
pub fn scalarized_conaffine(d: &DualTriple, zstar: P2) -> UpFunction {
    let z0 = d.zstar;
    let (a, r) = (d.xi.slope(), d.r);
    let improper = d.xi.is_hat() || norm2(z0) <= COEF_TOL;
    if improper {
        let dom = hat_domain(a, r);
        if norm2(zstar) <= COEF_TOL {
            return PlFunction::constant_on(dom, 0.0).map_or(UpFunction::ConstTop, UpFunction::Pl);
        }
        return UpFunction::improper_split(dom);
    }
    let collinear = cross2(zstar, z0).abs() <= 1e-9 * norm2(zstar).max(1.0) && dot2(zstar, z0) >= 0.0;
    if !collinear {
        return UpFunction::ConstBottom;
    }
    let t = dot2(zstar, z0) / dot2(z0, z0);
    UpFunction::Pl(PlFunction::affine(t * a, -t * r))
}

/// `g*(ξ, r, z*) = {z : (φ▵_{g,z*})*(ξ, r) ≤ −z*·z}`.
pub fn sv_conjugate(g: &dyn SvFunction, d: &DualTriple) -> Result<UpSet, SetError> {
    let phi = g.scalarize(d.zstar)?;
    Ok(level_halfplane(g.cone(), d.zstar, conjugate(&phi, d.xi, d.r).ext()))
}

/// `⋂_x (S▵_{(ξ,r,z*)}(x) ⊖ g(x))` over the sample abscissae. A proper `ξ`
/// with `sup_{gr g} (a·x + z*·z) = +∞` makes some term empty, which no
/// finite sample can see, so that case is settled by the graph LP.
pub fn conjugate_oracle(g: &SetValuedFn, d: &DualTriple) -> UpSet {
    let cone = &g.cone;
    if let DualElem::Proper(a) = d.xi {
        if g.graph.sup_linear([a, d.zstar[0], d.zstar[1]]) == Ext::PosInf {
            return UpSet::empty(cone);
        }
    }
    let mut acc = UpSet::whole(cone);
    for x in g.sample_xs() {
        let s = conaffine_eval(cone, d, x);
        acc = meet(&acc, &UpSet::from_parts(s.poly().residual(g.slice(x).poly()), cone));
    }
    acc
}

/// The dual data used for `g**`: proper slopes of the closed hull of each
/// scalarization, and hats cut at the finite ends of `dom g`.
fn biconjugate_duals(g: &dyn SvFunction, phi: &UpFunction) -> Vec<(DualElem, f64)> {
    let mut out: Vec<(DualElem, f64)> = vec![(DualElem::Proper(0.0), 0.0)];
    if let UpFunction::Pl(p) = phi.closure_hull() {
        let mut slopes = p.segment_slopes();
        slopes.extend([p.left_slope(), p.right_slope()].into_iter().filter(|s| s.is_finite()));
        out.extend(slopes.into_iter().map(|a| (DualElem::Proper(a), 0.0)));
    }
    let dom = g.dom();
    if dom.hi.is_finite() {
        out.push((DualElem::Hat(1.0), dom.hi));
    }
    if dom.lo.is_finite() {
        out.push((DualElem::Hat(-1.0), -dom.lo));
    }
    out.push((DualElem::Hat(0.0), -1.0));
    out
}

/// `g**(x) = ⋂ (S▵_{(ξ,r,z*)}(x) ⊖ g*(ξ,r,z*))` over the finite dual family.
pub fn sv_biconjugate(g: &dyn SvFunction, x: f64) -> Result<UpSet, SetError> {
    let cone = g.cone();
    let mut fam = g.zstar_family();
    if fam.is_empty() {
        fam.push([0.0, 0.0]);
    }
    let mut acc = UpSet::whole(cone);
    for z in fam {
        let phi = g.scalarize(z)?;
        for (xi, r) in biconjugate_duals(g, &phi) {
            let d = DualTriple { xi, r, zstar: z };
            let piece = conaffine_eval(cone, &d, x).residual(&sv_conjugate(g, &d)?)?;
            acc = meet(&acc, &piece);
        }
    }
    Ok(acc)
}

/// `⋂_{z*} {z : (cl φ▵_{g,z*})(x) ≤ −z*·z}`, the representation by closed
/// scalarizations.
pub fn sv_biconjugate_scalar(g: &dyn SvFunction, x: f64) -> Result<UpSet, SetError> {
    let cone = g.cone();
    let mut fam = g.zstar_family();
    if fam.is_empty() {
        fam.push([0.0, 0.0]);
    }
    let mut acc = UpSet::whole(cone);
    for z in fam {
        let v = g.scalarize(z)?.closure_hull().eval(x);
        acc = meet(&acc, &level_halfplane(cone, z, v.ext()));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Properness {
    pub dom_empty: bool,
    /// `g(x) = Z` for every `x ∈ dom g`.
    pub whole_on_dom: bool,
    pub proper: bool,
    pub c_proper: bool,
}

pub fn properness(g: &SetValuedFn) -> Result<Properness, SetError> {
    let dom_empty = g.dom().is_empty();
    let whole_on_dom = !g.has_z_rows();
    let proper = !dom_empty && !whole_on_dom;
    let mut c_proper = false;
    if proper {
        for z in g.zstar_family() {
            if g.cone.in_dual([-z[0], -z[1]]) {
                continue;
            }
            if matches!(g.scalarize(z)?, UpFunction::Pl(_)) {
                c_proper = true;
                break;
            }
        }
    }
    Ok(Properness { dom_empty, whole_on_dom, proper, c_proper })
}

/// The four equivalent forms of "`S▵_{(ξ,r,z*)}` is a minorant of `g`",
/// plus the domain form for hats.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetMinorantReport {
    /// `S▵(x) ⊇ g(x)` for all `x`, via a linear program over the graph.
    pub a: bool,
    /// `ξ_r ≤ φ▵_{g,z*}`.
    pub b: bool,
    /// `(φ▵_{g,z*})*(ξ, r) ≤ 0`.
    pub c: bool,
    /// `g*(ξ, r, z*) ⊇ H(z*)`.
    pub d: bool,
    /// `dom g ⊆ dom ξ_r`, hats only.
    pub e: Option<bool>,
    /// `g*(ξ, r, z*) = Z`.
    pub conjugate_is_whole: bool,
}

impl SetMinorantReport {
    pub fn consistent(&self) -> bool {
        let agree = self.a == self.b && self.b == self.c && self.c == self.d && self.e.is_none_or(|e| e == self.a);
        // for a hat minorant the conjugate collapses to Z
        let hat_ok = self.e.is_none() || !self.a || self.conjugate_is_whole;
        agree && hat_ok
    }
}

pub fn sv_minorant_conditions(g: &SetValuedFn, d: &DualTriple) -> Result<SetMinorantReport, SetError> {
    let cone = &g.cone;
    let a = match d.xi {
        DualElem::Proper(s) => g.graph.sup_linear([s, d.zstar[0], d.zstar[1]]) <= Ext::Finite(d.r),
        DualElem::Hat(s) => g.graph.sup_linear([s, 0.0, 0.0]) <= Ext::Finite(d.r),
    };
    let phi = g.scalarize(d.zstar)?;
    let b = forall_le(&d.affine(), &phi);
    let c = conjugate(&phi, d.xi, d.r).ext() <= Ext::ZERO;
    let conj = sv_conjugate(g, d)?;
    let h = h_of(cone, d.zstar);
    let dd = h.poly().is_subset_of(conj.poly(), 1e-9);
    let e = d.xi.is_hat().then(|| g.dom().is_subset_of(&d.affine().hat_domain()));
    Ok(SetMinorantReport { a, b, c, d: dd, e, conjugate_is_whole: conj.is_whole() })
}

/// `⋂ S▵_{(x*,r,0)}(x)` over the improper conaffine minorants of `g` with
/// slopes in `{−1, 0, 1}` cut at the ends of `dom g`.
pub fn improper_conaffine_sup(g: &SetValuedFn, x: f64) -> UpSet {
    let dom = g.dom();
    let mut fam = vec![(0.0, -1.0)];
    if dom.hi.is_finite() {
        fam.push((1.0, dom.hi));
    }
    if dom.lo.is_finite() {
        fam.push((-1.0, -dom.lo));
    }
    let mut acc = UpSet::whole(&g.cone);
    for (a, r) in fam {
        if g.graph.sup_linear([a, 0.0, 0.0]) <= Ext::Finite(r) {
            let d = DualTriple { xi: DualElem::Proper(a), r, zstar: [0.0, 0.0] };
            acc = meet(&acc, &conaffine_eval(&g.cone, &d, x));
        }
    }
    acc
}

/// For improper `g ≢ Z`: a hat minorant `(x̂*, r, z*)` with `x* ≠ 0` and,
/// unless `C⁻ = {0}`, `z* ≠ 0`.
pub fn improper_set_minorant(g: &SetValuedFn) -> Option<DualTriple> {
    if g.has_z_rows() && !g.dom().is_empty() {
        return None;
    }
    let dom = g.dom();
    let zstar = g.cone.dual().gens().first().copied().unwrap_or([0.0, 0.0]);
    let (a, r) = if dom.is_empty() {
        (1.0, 0.0)
    } else if dom.hi.is_finite() {
        (1.0, dom.hi)
    } else if dom.lo.is_finite() {
        (-1.0, -dom.lo)
    } else {
        return None;
    };
    Some(DualTriple { xi: DualElem::Hat(a), r, zstar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::UpReal;

    fn c() -> Cone2 {
        Cone2::orthant()
    }

    fn hs(n: P3, c: f64) -> Halfspace3 {
        Halfspace3::new(n, c)
    }

    /// `g(x) = Z` for `x ≥ 0`, `∅` otherwise.
    fn halfspace_graph() -> SetValuedFn {
        SetValuedFn::new(vec![hs([-1.0, 0.0, 0.0], 0.0)], &c()).unwrap()
    }

    /// `z ≥ (x, |x|)` componentwise.
    fn abs_graph() -> SetValuedFn {
        SetValuedFn::new(vec![hs([1.0, -1.0, 0.0], 0.0), hs([1.0, 0.0, -1.0], 0.0), hs([-1.0, 0.0, -1.0], 0.0)], &c())
            .unwrap()
    }

    #[test]
    fn scalarization_examples() {
        let g = halfspace_graph();
        let f = g.scalarize([-1.0, -1.0]).unwrap();
        assert_eq!(f, UpFunction::ImproperSplit(Interval::at_least(0.0)));
        let f = g.scalarize([0.0, 0.0]).unwrap();
        assert_eq!(f.eval(3.0), UpReal::ZERO);
        assert_eq!(f.eval(-1.0), UpReal::TOP);
        let g = SetValuedFn::new(vec![hs([1.0, -1.0, 0.0], 0.0), hs([-1.0, 0.0, -1.0], 0.0)], &c()).unwrap();
        let f = g.scalarize([-1.0, 0.0]).unwrap();
        assert!(f.approx_eq(&UpFunction::Pl(PlFunction::affine(1.0, 0.0)), 1e-12), "{f:?}");
        assert!(g.scalarize([1.0, 0.0]).is_err());
    }

    #[test]
    fn scalarization_matches_slice_support() {
        let g = abs_graph();
        for z in [[-1.0, 0.0], [0.0, -1.0], [-1.0, -2.0]] {
            let f = g.scalarize(z).unwrap();
            for x in [-2.0, -0.5, 0.0, 1.5] {
                assert!(f.eval(x).approx_eq(g.slice(x).support(z), 1e-9));
            }
        }
    }

    #[test]
    fn conaffine_examples() {
        let d = DualTriple { xi: DualElem::Proper(1.0), r: 0.0, zstar: [0.0, -1.0] };
        let s = conaffine_eval(&c(), &d, 2.0);
        assert!(s.contains([-5.0, 2.0]) && !s.contains([0.0, 1.9]));
        let d = DualTriple { xi: DualElem::Hat(1.0), r: 1.0, zstar: [0.0, -1.0] };
        assert!(conaffine_eval(&c(), &d, 0.5).is_whole());
        assert!(conaffine_eval(&c(), &d, 2.0).is_empty());
    }

    #[test]
    fn conjugate_examples() {
        let g = halfspace_graph();
        for z in [[0.0, 0.0], [-1.0, -1.0]] {
            let d = DualTriple { xi: DualElem::Hat(1.0), r: 0.0, zstar: z };
            assert!(sv_conjugate(&g, &d).unwrap().is_empty());
            let d = DualTriple { xi: DualElem::Hat(-1.0), r: 0.0, zstar: z };
            assert!(sv_conjugate(&g, &d).unwrap().is_whole());
        }
    }

    #[test]
    fn conjugate_matches_oracle() {
        let g = abs_graph();
        for (xi, r) in [(DualElem::Proper(0.5), 0.0), (DualElem::Proper(-1.5), 1.0), (DualElem::Hat(1.0), 2.0)] {
            for z in [[-1.0, -1.0], [0.0, -1.0], [-2.0, 0.0], [0.0, 0.0]] {
                let d = DualTriple { xi, r, zstar: z };
                let a = sv_conjugate(&g, &d).unwrap();
                let b = conjugate_oracle(&g, &d);
                assert!(a.approx_eq(&b, 1e-7), "{d:?}: {a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn hat_and_zero_direction_agree() {
        let g = abs_graph();
        for (a, r) in [(1.0, 0.0), (-1.0, 3.0), (0.0, -1.0)] {
            let hat = sv_conjugate(&g, &DualTriple { xi: DualElem::Hat(a), r, zstar: [-1.0, -1.0] }).unwrap();
            let zero = sv_conjugate(&g, &DualTriple { xi: DualElem::Proper(a), r, zstar: [0.0, 0.0] }).unwrap();
            assert!(hat.approx_eq(&zero, 0.0));
        }
    }

    #[test]
    fn biconjugate_recovers_graph() {
        for g in [abs_graph(), halfspace_graph(), SetValuedFn::const_whole(&c())] {
            for x in [-3.0, -1.0, 0.0, 0.25, 2.0] {
                let b = sv_biconjugate(&g, x).unwrap();
                assert!(b.approx_eq(&g.slice(x), 1e-7), "x = {x}: {b:?} vs {:?}", g.slice(x));
                assert!(sv_biconjugate_scalar(&g, x).unwrap().approx_eq(&g.slice(x), 1e-7));
            }
        }
    }

    #[test]
    fn properness_examples() {
        let p = properness(&halfspace_graph()).unwrap();
        assert!(!p.proper && p.whole_on_dom);
        let p = properness(&abs_graph()).unwrap();
        assert!(p.proper && p.c_proper);
        let empty = SetValuedFn::new(vec![hs([1.0, 0.0, 0.0], -1.0), hs([-1.0, 0.0, 0.0], -1.0)], &c()).unwrap();
        let p = properness(&empty).unwrap();
        assert!(p.dom_empty && !p.proper);
    }

    #[test]
    fn minorant_conditions_agree() {
        let g = abs_graph();
        for (xi, r) in [
            (DualElem::Proper(0.0), 0.0),
            (DualElem::Proper(0.5), -1.0),
            (DualElem::Proper(2.0), 0.0),
            (DualElem::Hat(1.0), 0.0),
            (DualElem::Hat(0.0), 1.0),
        ] {
            let d = DualTriple { xi, r, zstar: [-1.0, -1.0] };
            let rep = sv_minorant_conditions(&g, &d).unwrap();
            assert!(rep.consistent(), "{d:?}: {rep:?}");
        }
    }

    #[test]
    fn improper_functions_are_sups_of_improper_minorants() {
        let g = SetValuedFn::new(vec![hs([-1.0, 0.0, 0.0], 1.0), hs([1.0, 0.0, 0.0], 2.0)], &c()).unwrap();
        for x in [-3.0, -1.0, 0.0, 2.0, 2.5] {
            assert!(improper_conaffine_sup(&g, x).approx_eq(&g.slice(x), 1e-9));
        }
        let m = improper_set_minorant(&g).unwrap();
        assert!(m.xi.slope() != 0.0 && norm2(m.zstar) > 0.0);
        assert!(sv_minorant_conditions(&g, &m).unwrap().a);
        assert!(improper_set_minorant(&SetValuedFn::const_whole(&c())).is_none());
    }

    #[test]
    fn scalarized_conaffine_closed_form() {
        let cases = [
            DualTriple { xi: DualElem::Proper(2.0), r: 1.0, zstar: [-1.0, -2.0] },
            DualTriple { xi: DualElem::Hat(1.0), r: 1.0, zstar: [-1.0, 0.0] },
            DualTriple { xi: DualElem::Proper(-1.0), r: 0.5, zstar: [0.0, 0.0] },
        ];
        for d in cases {
            let g = conaffine_graph(&c(), &d).unwrap();
            for z in [[-1.0, -2.0], [-2.0, -4.0], [0.0, -1.0], [-1.0, 0.0], [0.0, 0.0]] {
                let f = g.scalarize(z).unwrap();
                let want = scalarized_conaffine(&d, z);
                assert!(f.approx_eq(&want, 1e-9), "{d:?} z*={z:?}: {f:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn union_biconjugate_is_hull() {
        let strip = [hs([1.0, 0.0, 0.0], 1.0), hs([-1.0, 0.0, 0.0], 1.0)];
        let mut ra = vec![hs([1.0, -1.0, 0.0], 0.0), hs([1.0, 0.0, -1.0], 0.0)];
        let mut rb = vec![hs([-1.0, -1.0, 0.0], 0.0), hs([-1.0, 0.0, -1.0], 0.0)];
        ra.extend(strip);
        rb.extend(strip);
        let a = SetValuedFn::new(ra, &c()).unwrap();
        let b = SetValuedFn::new(rb, &c()).unwrap();
        let u = SetValuedUnion::new(vec![a, b]).unwrap();
        let h = u.hull().unwrap();
        for x in [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5] {
            let got = sv_biconjugate(&u, x).unwrap();
            assert!(got.approx_eq(&h.slice(x), 1e-7), "x = {x}: {got:?} vs {:?}", h.slice(x));
        }
        assert!(h.slice(0.0).approx_eq(&UpSet::translate_cone(&c(), [-1.0, -1.0]), 1e-9));
    }

    #[test]
    fn json_round_trip() {
        let g = abs_graph();
        let s = serde_json::to_string(&g).unwrap();
        let back: SetValuedFn = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"h":[{"n":[0,1,0],"c":0}],"cone":{"gen":[[1,0],[0,1]]}}"#;
        assert!(serde_json::from_str::<SetValuedFn>(bad).is_err());
    }
}
