//! Directional derivatives, extended subdifferentials, `(ξ, r)`-conjugates,
//! biconjugates and infimal convolution for [`UpFunction`]s.
//!
//! All suprema over `x` are evaluated in closed form from the
//! piecewise-linear structure; nothing here samples a grid.

pub mod regions;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extreal::{DownReal, Ext, UpReal};
use crate::scalar_fn::{
    hat_domain, infconv_convex, AffineDual, DownFunction, DualElem, Interval, PlFunction, UpFunction,
};
use regions::{forall_le, inf_expr, sup_expr, Piecewise};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalculusError {
    #[error("function is not convex")]
    NotConvex,
    #[error("function is not concave")]
    NotConcave,
    #[error("difference quotient needs t > 0, got {0}")]
    NonPositiveStep(f64),
}

/// `(1/t)·(g(x₀ + t·x) ⊖ g(x₀))`.
pub fn difference_quotient(g: &UpFunction, x0: f64, x: f64, t: f64) -> Result<UpReal, CalculusError> {
    if !(t > 0.0) {
        return Err(CalculusError::NonPositiveStep(t));
    }
    let d = g.eval(x0 + t * x).idif(g.eval(x0));
    Ok(d.scale(1.0 / t).expect("positive"))
}

/// `g'(x₀, x)` for convex `g`.
pub fn dirderiv(g: &UpFunction, x0: f64, x: f64) -> Result<UpReal, CalculusError> {
    if !g.is_convex() {
        return Err(CalculusError::NotConvex);
    }
    let gx0 = g.eval(x0);
    if gx0.is_top() {
        return Ok(UpReal::BOTTOM);
    }
    Ok(match g {
        UpFunction::Pl(p) => pl_dirderiv(p, x0, x, f64::INFINITY),
        // g(x₀) = −∞: −∞ iff the ray enters the set where g = −∞
        other => {
            let d = other.dom();
            let stays = x == 0.0 || (x > 0.0 && x0 < d.hi) || (x < 0.0 && x0 > d.lo);
            if stays {
                UpReal::BOTTOM
            } else {
                UpReal::TOP
            }
        }
    })
}

/// One-sided slope times `|x|`; a wall in the direction of travel gives
/// `wall` (`+∞` for convex, `−∞` for concave readings).
fn pl_dirderiv<T: From<ExtWrap>>(p: &PlFunction, x0: f64, x: f64, wall: f64) -> T {
    let v = if x > 0.0 {
        let s = p.right_slope_at(x0);
        if s == f64::INFINITY {
            wall
        } else {
            s * x
        }
    } else if x < 0.0 {
        let s = p.left_slope_at(x0);
        if s == f64::NEG_INFINITY {
            wall
        } else {
            s * x
        }
    } else {
        0.0
    };
    T::from(ExtWrap(Ext::of(v)))
}

struct ExtWrap(Ext);

impl From<ExtWrap> for UpReal {
    fn from(e: ExtWrap) -> UpReal {
        UpReal::from_ext(e.0)
    }
}

impl From<ExtWrap> for DownReal {
    fn from(e: ExtWrap) -> DownReal {
        DownReal::from_ext(e.0)
    }
}

/// `h'(x₀, x) = lim (1/t)(h(x₀+tx) ⊘ h(x₀))` for concave `h`.
pub fn dirderiv_down(h: &DownFunction, x0: f64, x: f64) -> Result<DownReal, CalculusError> {
    if !h.is_concave() {
        return Err(CalculusError::NotConcave);
    }
    let hx0 = h.eval(x0);
    if hx0.is_bottom() {
        return Ok(DownReal::TOP);
    }
    Ok(match h {
        DownFunction::Pl(p) => pl_dirderiv(p, x0, x, f64::NEG_INFINITY),
        other => {
            let d = other.dom();
            let stays = x == 0.0 || (x > 0.0 && x0 < d.hi) || (x < 0.0 && x0 > d.lo);
            if stays {
                DownReal::TOP
            } else {
                DownReal::BOTTOM
            }
        }
    })
}

/// `(1/t)·(h(x₀ + t·x) ⊘ h(x₀))`.
pub fn difference_quotient_down(h: &DownFunction, x0: f64, x: f64, t: f64) -> Result<DownReal, CalculusError> {
    if !(t > 0.0) {
        return Err(CalculusError::NonPositiveStep(t));
    }
    let d = h.eval(x0 + t * x).sdif(h.eval(x0));
    Ok(d.scale(1.0 / t).expect("positive"))
}

/// The extended subdifferential at a point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubdiffDescription {
    /// Slopes of proper subgradients (possibly empty or unbounded).
    pub proper_part: Interval,
    /// Canonical hat slopes in `{−1, 0, 1}`; always contains 0.
    pub improper_part: Vec<f64>,
    /// The constant `−∞` (= `hat(0)`) is always an extended subgradient.
    pub contains_bottom: bool,
}

impl SubdiffDescription {
    pub fn contains(&self, xi: DualElem) -> bool {
        match xi.canonical() {
            DualElem::Proper(a) => self.proper_part.contains(a),
            DualElem::Hat(a) => self.improper_part.contains(&a),
        }
    }
}

/// `∂^ex g(x₀) = {ξ : ∀x, ξ(x − x₀) ≤ g(x) ⊖ g(x₀)}`.
pub fn subdiff_extended(g: &UpFunction, x0: f64) -> SubdiffDescription {
    let gx0 = g.eval(x0);
    let only_bottom =
        SubdiffDescription { proper_part: Interval::EMPTY, improper_part: vec![0.0], contains_bottom: true };
    if gx0.is_top() {
        return only_bottom;
    }
    let dom = g.dom();
    // hat(a) with offset a·x₀ is −∞ exactly on {a(x − x₀) ≤ 0}; it must
    // cover dom g, where the right-hand side is below +∞
    let mut improper_part = vec![0.0];
    if dom.hi == x0 {
        improper_part.push(1.0);
    }
    if dom.lo == x0 {
        improper_part.push(-1.0);
    }
    improper_part.sort_by(f64::total_cmp);
    let proper_part = match g {
        UpFunction::Pl(p) => pl_subgradient_interval(p, x0),
        // −∞ somewhere on dom g: no finite minorant
        _ => Interval::EMPTY,
    };
    SubdiffDescription { proper_part, improper_part, contains_bottom: true }
}

/// `{a : a(x − x₀) ≤ p(x) − p(x₀) on dom p}` by scanning difference
/// quotients at knots, one-sided limits at `x₀` and the tails.
fn pl_subgradient_interval(p: &PlFunction, x0: f64) -> Interval {
    let dom = p.domain();
    if p.is_convex() {
        // one-sided slopes; a wall on either side leaves that end open
        let lo = if dom.lo < x0 { p.left_slope_at(x0) } else { f64::NEG_INFINITY };
        let hi = if dom.hi > x0 { p.right_slope_at(x0) } else { f64::INFINITY };
        return Interval::new(lo, hi);
    }
    let v0 = p.eval(x0).expect("x0 in domain");
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for k in p.knots() {
        let q = (k.v - v0) / (k.x - x0);
        if k.x < x0 {
            lo = lo.max(q);
        } else if k.x > x0 {
            hi = hi.min(q);
        }
    }
    if dom.lo < x0 {
        lo = lo.max(p.left_slope_at(x0));
        if dom.lo == f64::NEG_INFINITY {
            lo = lo.max(p.left_slope());
        }
    }
    if dom.hi > x0 {
        hi = hi.min(p.right_slope_at(x0));
        if dom.hi == f64::INFINITY {
            hi = hi.min(p.right_slope());
        }
    }
    Interval::new(lo, hi)
}

/// `x ↦ ξ(x − x₀)` as an affine dual element with offset `a·x₀`.
fn shifted(xi: DualElem, x0: f64) -> AffineDual {
    AffineDual::new(xi, xi.slope() * x0)
}

/// Definitional test `∀x: ξ(x − x₀) ≤ g(x) ⊖ g(x₀)`, decided exactly.
pub fn is_subgradient(g: &UpFunction, x0: f64, xi: DualElem) -> bool {
    let lhs = shifted(xi, x0);
    let c = g.eval(x0).ext();
    let rhs = Diff { g, c };
    forall_le(&lhs, &rhs)
}

struct Diff<'a> {
    g: &'a UpFunction,
    c: Ext,
}

impl Piecewise for Diff<'_> {
    fn breakpoints(&self) -> Vec<f64> {
        self.g.breakpoints()
    }

    fn piece(&self, cell: regions::Cell) -> regions::Piece {
        self.g.piece(cell).idif(regions::Piece::constant(self.c))
    }
}

/// `∀x: ξ(x) ≤ g'(x₀, x)`. Both sides are positively homogeneous in `x`,
/// so it suffices to test `x ∈ {−1, 0, 1}`.
pub fn is_dirderiv_minorant(g: &UpFunction, x0: f64, xi: DualElem) -> Result<bool, CalculusError> {
    for x in [-1.0, 0.0, 1.0] {
        if xi.eval(x) > dirderiv(g, x0, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `g*(ξ, r) = sup_x {ξ_r(x) ⊖ g(x)}`.
pub fn conjugate(g: &UpFunction, xi: DualElem, r: f64) -> DownReal {
    match xi {
        DualElem::Proper(a) => match g {
            UpFunction::Pl(p) => {
                if p.left_slope() <= a && a <= p.right_slope() {
                    let m = p.knots().iter().map(|k| a * k.x - k.v).fold(f64::NEG_INFINITY, f64::max);
                    DownReal::finite(m - r)
                } else {
                    DownReal::TOP
                }
            }
            UpFunction::ConstTop => DownReal::BOTTOM,
            // some x has g(x) = −∞ and (a·x − r) ⊖ (−∞) = +∞
            _ => DownReal::TOP,
        },
        DualElem::Hat(a) => {
            if g.dom().is_subset_of(&hat_domain(a, r)) {
                DownReal::BOTTOM
            } else {
                DownReal::TOP
            }
        }
    }
}

/// Conjugate evaluated through the exact region engine instead of the
/// closed-form rules. Used as a cross-check.
pub fn conjugate_by_regions(g: &UpFunction, xi: DualElem, r: f64) -> DownReal {
    let xr = AffineDual::new(xi, r);
    DownReal::from_ext(sup_expr(&[&xr, g], |p| p[0].idif(p[1])))
}

/// Proper-slope part of the conjugate, `a ↦ g*(a, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub enum ConjugateBase {
    /// Convex PL in `a`; `+∞` outside its domain.
    Pl(PlFunction),
    Top,
    Bottom,
}

/// The whole conjugate: proper part plus the domain rule for hats.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateCurve {
    pub base: ConjugateBase,
    /// `dom g`; `g*(hat(a), r) = −∞` iff this lies in `{a·x ≤ r}`.
    pub dom: Interval,
}

impl ConjugateCurve {
    pub fn eval(&self, xi: DualElem, r: f64) -> DownReal {
        match xi {
            DualElem::Proper(a) => {
                let base = match &self.base {
                    ConjugateBase::Pl(p) => p.eval(a).map_or(DownReal::TOP, DownReal::finite),
                    ConjugateBase::Top => DownReal::TOP,
                    ConjugateBase::Bottom => DownReal::BOTTOM,
                };
                base.ssum(DownReal::finite(-r))
            }
            DualElem::Hat(a) => {
                if self.dom.is_subset_of(&hat_domain(a, r)) {
                    DownReal::BOTTOM
                } else {
                    DownReal::TOP
                }
            }
        }
    }
}

pub fn conjugate_curve(g: &UpFunction) -> ConjugateCurve {
    let base = match g {
        UpFunction::Pl(p) => p.legendre().map_or(ConjugateBase::Top, ConjugateBase::Pl),
        UpFunction::ConstTop => ConjugateBase::Bottom,
        _ => ConjugateBase::Top,
    };
    ConjugateCurve { base, dom: g.dom() }
}

/// Truth values of the three Young–Fenchel forms at one point.
pub fn young_fenchel_check(g: &UpFunction, xi: DualElem, r: f64, x: f64) -> [bool; 3] {
    let xr = AffineDual::new(xi, r).eval(x);
    let gx = g.eval(x);
    let gs = conjugate(g, xi, r);
    // the conjugate lives in ℝ▿; forms (b) and (c) read it in ℝ▵
    let gs_up = gs.reinterpret_as_up();
    [xr.idif(gx).ext() <= gs.ext(), xr <= gx.isum(gs_up), xr.idif(gs_up) <= gx]
}

/// `(f □ g)(x) = inf {f(x₁) ⊞▵ g(x₂) : x₁ + x₂ = x}` for convex inputs.
pub fn infconv(f: &UpFunction, g: &UpFunction) -> Result<UpFunction, CalculusError> {
    use UpFunction::*;
    if !f.is_convex() || !g.is_convex() {
        return Err(CalculusError::NotConvex);
    }
    Ok(match (f, g) {
        (ConstTop, _) | (_, ConstTop) => ConstTop,
        (ConstBottom, _) | (_, ConstBottom) => ConstBottom,
        (ImproperSplit(d), h) | (h, ImproperSplit(d)) => UpFunction::improper_split(d.minkowski_sum(&h.dom())),
        (Pl(p), Pl(q)) => infconv_convex(p, q).map_or(ConstBottom, Pl),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfconvConjugateReport {
    pub xi: DualElem,
    pub r: f64,
    /// `(f □ g)*(ξ, r)`.
    pub lhs: DownReal,
    /// Supremal convolution of the conjugates in the offset.
    pub rhs: DownReal,
    /// The proper-slope shortcut `f*(x*,0) ⊞▿ g*(x*,0) ⊞▿ (−r)`.
    pub rhs_proper: Option<DownReal>,
    pub equal: bool,
}

/// Both sides of the infimal-convolution conjugate identity.
pub fn infconv_conjugate_check(
    f: &UpFunction,
    g: &UpFunction,
    xi: DualElem,
    r: f64,
    tol: f64,
) -> Result<InfconvConjugateReport, CalculusError> {
    let lhs = conjugate(&infconv(f, g)?, xi, r);
    let (rhs, rhs_proper) = match xi {
        DualElem::Proper(_) => {
            // every split r₁ + r₂ = r gives the same value
            let split = conjugate(f, xi, 0.5 * r).ssum(conjugate(g, xi, r - 0.5 * r));
            let short = conjugate(f, xi, 0.0).ssum(conjugate(g, xi, 0.0)).ssum(DownReal::finite(-r));
            (split, Some(short))
        }
        DualElem::Hat(a) => {
            // f*(hat a, r₁) = +∞ iff r₁ < σ_f(a) := sup_{dom f} a·x; the
            // sup-sum is +∞ iff both are, i.e. some r₁ ∈ (r − σ_g, σ_f)
            let (sf, sg) = (f.dom().support(a), g.dom().support(a));
            let top = match (sf, sg) {
                (Ext::NegInf, _) | (_, Ext::NegInf) => false,
                (s, t) => UpReal::finite(r) < UpReal::from_ext(s).isum(UpReal::from_ext(t)),
            };
            (if top { DownReal::TOP } else { DownReal::BOTTOM }, None)
        }
    };
    let equal = lhs.approx_eq(rhs, tol) && rhs_proper.is_none_or(|p| p.approx_eq(lhs, tol));
    Ok(InfconvConjugateReport { xi, r, lhs, rhs, rhs_proper, equal })
}

/// `g** = sup_{(ξ, r)} {ξ_r ⊖ g*(ξ, r)}`.
pub fn biconjugate(g: &UpFunction) -> UpFunction {
    let curve = conjugate_curve(g);
    // proper slopes: x*_r(x) ⊖ g*(x*, r) = a·x ⊖ g*(a, 0)
    enum Branch {
        Top,
        Bottom,
        Pl(PlFunction),
    }
    let proper = match &curve.base {
        ConjugateBase::Top => Branch::Bottom,
        ConjugateBase::Bottom => Branch::Top,
        ConjugateBase::Pl(c) => c.legendre().map_or(Branch::Top, Branch::Pl),
    };
    // hats: contributes +∞ off dom hat(a)_r whenever g*(hat a, r) = −∞
    let cut = improper_envelope(g);
    match proper {
        Branch::Top => UpFunction::ConstTop,
        Branch::Bottom => UpFunction::improper_split(cut),
        Branch::Pl(p) => p.clip(&cut).map_or(UpFunction::ConstTop, |q| UpFunction::Pl(q.canonical())),
    }
}

/// The hat family used by the biconjugate: canonical slopes with offsets at
/// the finite ends of `dom g`, plus `hat(0)` with offset `−1`.
pub fn improper_family(g: &UpFunction) -> Vec<AffineDual> {
    let d = g.dom();
    let mut fam = vec![AffineDual::new(DualElem::Hat(0.0), -1.0)];
    if !d.is_empty() {
        if d.hi.is_finite() {
            fam.push(AffineDual::new(DualElem::Hat(1.0), d.hi));
        }
        if d.lo.is_finite() {
            fam.push(AffineDual::new(DualElem::Hat(-1.0), -d.lo));
        }
    }
    fam
}

/// Intersection of `dom ξ_r` over family members with `g*(ξ, r) = −∞`.
fn improper_envelope(g: &UpFunction) -> Interval {
    improper_family(g)
        .into_iter()
        .filter(|m| conjugate(g, m.xi, m.r).is_bottom())
        .fold(Interval::REAL, |acc, m| acc.intersect(&m.hat_domain()))
}

/// A hat minorant with nonzero slope for an improper closed convex `g ≢ −∞`.
pub fn improper_minorant(g: &UpFunction) -> Option<AffineDual> {
    match g {
        UpFunction::ImproperSplit(d) if d.hi.is_finite() => Some(AffineDual::new(DualElem::Hat(1.0), d.hi)),
        UpFunction::ImproperSplit(d) => Some(AffineDual::new(DualElem::Hat(-1.0), -d.lo)),
        UpFunction::ConstTop => Some(AffineDual::new(DualElem::Hat(1.0), 0.0)),
        _ => None,
    }
}

/// Pointwise supremum of the improper closed minorants in the canonical
/// family. Reproduces `g` when `g` is improper closed convex.
pub fn improper_minorant_sup(g: &UpFunction) -> UpFunction {
    let d = improper_family(g)
        .into_iter()
        .filter(|m| forall_le(m, g))
        .fold(Interval::REAL, |acc, m| acc.intersect(&m.hat_domain()));
    UpFunction::improper_split(d)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinorantReport {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub e: bool,
    /// Only for hats.
    pub f: Option<bool>,
    pub sup_b: Ext,
    pub sup_c: Ext,
    pub inf_d: Ext,
    pub inf_e: Ext,
}

impl MinorantReport {
    pub fn consistent(&self) -> bool {
        let v = [self.a, self.b, self.c, self.d, self.e];
        v.iter().all(|&x| x == self.a) && self.f.is_none_or(|f| f == self.a)
    }
}

/// The equivalent affine-minorant conditions (a)–(f), each evaluated exactly
/// through its own expression.
pub fn affine_minorant_conditions(g: &UpFunction, xi: DualElem, r: f64) -> MinorantReport {
    let xr = AffineDual::new(xi, r);
    let ops: [&dyn Piecewise; 2] = [&xr, g];
    let sup_b = sup_expr(&ops, |p| p[0].idif(p[1]));
    let sup_c = sup_expr(&ops, |p| p[0].ssum(p[1].neg()));
    // the dual residual: ξ_r ≤ g iff 0 ≤ g ⊘ ξ_r pointwise
    let inf_d = inf_expr(&ops, |p| p[1].sdif(p[0]));
    let inf_e = inf_expr(&ops, |p| p[1].isum(p[0].neg()));
    MinorantReport {
        a: forall_le(&xr, g),
        b: sup_b <= Ext::ZERO,
        c: sup_c <= Ext::ZERO,
        d: inf_d >= Ext::ZERO,
        e: inf_e >= Ext::ZERO,
        f: xi.is_hat().then(|| g.dom().is_subset_of(&xr.hat_domain())),
        sup_b,
        sup_c,
        inf_d,
        inf_e,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubdiffConjugateReport {
    pub x0: f64,
    pub in_domain: bool,
    /// Candidates where the subdifferential and the conjugate inequality
    /// disagree.
    pub mismatches: Vec<DualElem>,
    pub checked: usize,
    pub holds: bool,
}

/// Candidate dual elements probing the subdifferential at `x0`.
pub fn subdiff_candidates(g: &UpFunction, x0: f64) -> Vec<DualElem> {
    let mut slopes: Vec<f64> = (-8..=8).map(|k| k as f64 * 0.5).collect();
    if let UpFunction::Pl(p) = g {
        for s in p.slope_sequence().into_iter().filter(|s| s.is_finite()) {
            slopes.extend([s, s - 1e-3, s + 1e-3]);
        }
        let sd = subdiff_extended(g, x0).proper_part;
        for e in [sd.lo, sd.hi] {
            if e.is_finite() {
                slopes.extend([e, e - 1e-3, e + 1e-3]);
            }
        }
    }
    let mut out: Vec<DualElem> = slopes.into_iter().map(DualElem::Proper).collect();
    out.extend([-1.0, 0.0, 1.0].map(DualElem::Hat));
    out
}

/// Compares `∂^ex g(x₀)` against `{ξ : g*(ξ, ξ-slope·x₀) ⊞▵ g(x₀) ≤ ξ(0)}`
/// (for `x₀ ∈ dom g`) or against `{hat(0)}` (for `x₀ ∉ dom g`).
pub fn subdiff_conjugate_check(g: &UpFunction, x0: f64, tol: f64) -> SubdiffConjugateReport {
    let sd = subdiff_extended(g, x0);
    let in_domain = !g.eval(x0).is_top();
    let cands = subdiff_candidates(g, x0);
    let mut mismatches = Vec::new();
    for &xi in &cands {
        let by_conj = if in_domain {
            let lhs = conjugate(g, xi, xi.slope() * x0).reinterpret_as_up().isum(g.eval(x0));
            // ξ(0) is 0 for proper ξ and −∞ for hats
            match xi {
                DualElem::Proper(a) => {
                    let scale = 1.0 + g.eval(x0).value().map_or(0.0, f64::abs) + (a * x0).abs();
                    lhs <= UpReal::finite(tol * scale)
                }
                DualElem::Hat(_) => lhs.is_bottom(),
            }
        } else {
            xi.canonical() == DualElem::Hat(0.0)
        };
        if by_conj != sd.contains(xi) {
            mismatches.push(xi);
        }
    }
    SubdiffConjugateReport { x0, in_domain, checked: cands.len(), holds: mismatches.is_empty(), mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_fn::{Knot, Tail};

    fn half_line() -> UpFunction {
        UpFunction::improper_split(Interval::at_least(0.0))
    }

    #[test]
    fn dirderiv_examples() {
        assert_eq!(dirderiv(&UpFunction::abs(), 0.0, 1.0).unwrap(), UpReal::finite(1.0));
        assert_eq!(dirderiv(&half_line(), -1.0, 3.0).unwrap(), UpReal::BOTTOM);
        assert_eq!(dirderiv(&half_line(), 0.0, -1.0).unwrap(), UpReal::TOP);
        assert_eq!(dirderiv(&half_line(), 0.0, 1.0).unwrap(), UpReal::BOTTOM);
        let nc = UpFunction::pl(vec![Knot::new(0.0, 0.0)], Tail::Slope(1.0), Tail::Slope(-1.0)).unwrap();
        assert_eq!(dirderiv(&nc, 0.0, 1.0), Err(CalculusError::NotConvex));
    }

    #[test]
    fn subdiff_examples() {
        let s = subdiff_extended(&UpFunction::abs(), 0.0);
        assert_eq!(s.proper_part, Interval::new(-1.0, 1.0));
        assert_eq!(s.improper_part, vec![0.0]);
        let s = subdiff_extended(&half_line(), 0.0);
        assert!(s.improper_part.contains(&-1.0));
        assert!(s.proper_part.is_empty());
        let s = subdiff_extended(&UpFunction::ConstTop, 2.0);
        assert!(s.proper_part.is_empty() && s.improper_part == vec![0.0]);
    }

    #[test]
    fn subgradient_examples() {
        let g = UpFunction::abs();
        assert!(is_subgradient(&g, 0.0, DualElem::Proper(0.5)));
        assert!(!is_subgradient(&g, 0.0, DualElem::Proper(2.0)));
        assert!(!is_subgradient(&g, 0.0, DualElem::Hat(1.0)));
        assert!(is_subgradient(&g, 0.0, DualElem::Hat(0.0)));
    }

    #[test]
    fn conjugate_examples() {
        let g = UpFunction::abs();
        assert_eq!(conjugate(&g, DualElem::Proper(0.5), 0.0), DownReal::finite(0.0));
        assert_eq!(conjugate(&g, DualElem::Proper(2.0), 0.0), DownReal::TOP);
        assert_eq!(conjugate(&half_line(), DualElem::Hat(-1.0), 0.0), DownReal::BOTTOM);
        assert_eq!(conjugate(&UpFunction::ConstTop, DualElem::Proper(1.0), 3.0), DownReal::BOTTOM);
        assert_eq!(conjugate(&UpFunction::ConstTop, DualElem::Hat(1.0), 3.0), DownReal::BOTTOM);
    }

    #[test]
    fn young_fenchel_examples() {
        let g = UpFunction::abs();
        assert_eq!(young_fenchel_check(&g, DualElem::Proper(2.0), 0.0, 1.0), [true; 3]);
        assert_eq!(young_fenchel_check(&g, DualElem::Proper(0.5), 0.0, 1.0), [true; 3]);
        assert_eq!(young_fenchel_check(&half_line(), DualElem::Hat(1.0), 0.0, 1.0), [true; 3]);
    }

    #[test]
    fn infconv_examples() {
        let g = UpFunction::abs();
        assert!(infconv(&g, &g).unwrap().approx_eq(&g, 1e-12));
        assert_eq!(infconv(&g, &UpFunction::ConstBottom).unwrap(), UpFunction::ConstBottom);
        assert_eq!(infconv(&g, &UpFunction::ConstTop).unwrap(), UpFunction::ConstTop);
    }

    #[test]
    fn infconv_conjugate_examples() {
        let g = UpFunction::abs();
        let r = infconv_conjugate_check(&g, &g, DualElem::Proper(0.5), 0.0, 1e-9).unwrap();
        assert!(r.equal && r.lhs == DownReal::finite(0.0));
        let r = infconv_conjugate_check(&g, &g, DualElem::Proper(0.5), 3.0, 1e-9).unwrap();
        assert!(r.equal && r.lhs == DownReal::finite(-3.0));
        let r = infconv_conjugate_check(&half_line(), &g, DualElem::Hat(-1.0), 0.0, 1e-9).unwrap();
        assert!(r.equal);
    }

    #[test]
    fn biconjugate_examples() {
        let g = UpFunction::abs();
        assert!(biconjugate(&g).approx_eq(&g, 1e-12));
        assert_eq!(biconjugate(&half_line()), half_line());
        let w: UpFunction = serde_json::from_str(
            r#"{"kind":"pl","breaks":[{"x":-1,"v":0},{"x":0,"v":1},{"x":1,"v":0}],"slopeL":-1,"slopeR":1}"#,
        )
        .unwrap();
        assert!(biconjugate(&w).approx_eq(&w.closure_hull(), 1e-12));
        for c in [UpFunction::ConstTop, UpFunction::ConstBottom] {
            assert_eq!(biconjugate(&c), c);
        }
    }

    #[test]
    fn subdiff_conjugate_examples() {
        assert!(subdiff_conjugate_check(&UpFunction::abs(), 0.0, 1e-9).holds);
        let r = subdiff_conjugate_check(&half_line(), 0.0, 1e-9);
        assert!(r.holds, "{:?}", r.mismatches);
        let r = subdiff_conjugate_check(&half_line(), -1.0, 1e-9);
        assert!(r.holds && !r.in_domain);
    }

    #[test]
    fn minorant_conditions_hat() {
        let r = affine_minorant_conditions(&half_line(), DualElem::Hat(-1.0), 0.0);
        assert!(r.consistent() && r.a, "{r:?}");
        assert_eq!(r.sup_b, Ext::NegInf);
        assert_eq!(r.inf_d, Ext::PosInf);
        let r = affine_minorant_conditions(&UpFunction::abs(), DualElem::Proper(0.5), 1.0);
        assert!(r.consistent() && r.a, "{r:?}");
    }

    #[test]
    fn improper_minorants() {
        let g = half_line();
        let m = improper_minorant(&g).unwrap();
        assert_ne!(m.xi.slope(), 0.0);
        assert!(forall_le(&m, &g));
        assert_eq!(improper_minorant_sup(&g), g);
    }
}
