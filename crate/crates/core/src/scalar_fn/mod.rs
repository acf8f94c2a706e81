//! Functions ℝ → ℝ̄ with exact piecewise-linear or improper representations.
//!
//! [`UpFunction`] takes values in ℝ▵ and has `dom f = {x : f(x) < +∞}`.
//! [`DownFunction`] takes values in ℝ▿ and has `dom h = {x : h(x) > −∞}`:
//! the word "domain" is read differently depending on the image space.

mod dual;
mod interval;
mod pl;

pub use dual::{
    affine_eval, affine_split_sup, affine_split_sup_diff, dual_add, hat_domain, AffineDual, DualElem, DualParseError,
};
pub use interval::Interval;
pub use pl::{infconv_convex, upper_envelope, Knot, PlError, PlFunction, Tail, SLOPE_TOL};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extreal::{DownReal, Ext, UpReal};

/// Function into ℝ▵.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FunctionSpec", into = "FunctionSpec")]
pub enum UpFunction {
    /// Finite on its domain, `+∞` off it.
    Pl(PlFunction),
    /// `−∞` on the interval, `+∞` off it. Never empty and never all of ℝ.
    ImproperSplit(Interval),
    ConstTop,
    ConstBottom,
}

/// Function into ℝ▿; mirror image of [`UpFunction`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FunctionSpec", into = "FunctionSpec")]
pub enum DownFunction {
    /// Finite on its domain, `−∞` off it.
    Pl(PlFunction),
    /// `+∞` on the interval, `−∞` off it.
    ImproperSplit(Interval),
    ConstTop,
    ConstBottom,
}

impl UpFunction {
    /// `−∞` on `d`, `+∞` off it, canonicalized.
    pub fn improper_split(d: Interval) -> UpFunction {
        if d.is_empty() {
            UpFunction::ConstTop
        } else if d.is_real_line() {
            UpFunction::ConstBottom
        } else {
            UpFunction::ImproperSplit(d)
        }
    }

    pub fn pl(knots: Vec<Knot>, left: Tail, right: Tail) -> Result<UpFunction, PlError> {
        Ok(UpFunction::Pl(PlFunction::new(knots, left, right)?))
    }

    /// `|x|`, handy in examples and tests.
    pub fn abs() -> UpFunction {
        UpFunction::Pl(PlFunction::new(vec![Knot::new(0.0, 0.0)], Tail::Slope(-1.0), Tail::Slope(1.0)).expect("valid"))
    }

    pub fn eval(&self, x: f64) -> UpReal {
        match self {
            UpFunction::Pl(p) => p.eval(x).map_or(UpReal::TOP, UpReal::finite),
            UpFunction::ImproperSplit(d) => {
                if d.contains(x) {
                    UpReal::BOTTOM
                } else {
                    UpReal::TOP
                }
            }
            UpFunction::ConstTop => UpReal::TOP,
            UpFunction::ConstBottom => UpReal::BOTTOM,
        }
    }

    /// `{x : f(x) < +∞}`.
    pub fn dom(&self) -> Interval {
        match self {
            UpFunction::Pl(p) => p.domain(),
            UpFunction::ImproperSplit(d) => *d,
            UpFunction::ConstTop => Interval::EMPTY,
            UpFunction::ConstBottom => Interval::REAL,
        }
    }

    /// `(x, r) ∈ epi f`, i.e. `f(x) ≤ r`.
    pub fn epi_contains(&self, x: f64, r: f64) -> bool {
        self.eval(x) <= UpReal::finite(r)
    }

    pub fn is_convex(&self) -> bool {
        match self {
            UpFunction::Pl(p) => p.is_convex(),
            _ => true,
        }
    }

    /// Never `−∞` and finite somewhere.
    pub fn is_proper(&self) -> bool {
        matches!(self, UpFunction::Pl(_))
    }

    /// Closed convex hull.
    pub fn closure_hull(&self) -> UpFunction {
        match self {
            UpFunction::Pl(p) => match p.lower_hull() {
                Some(h) => UpFunction::Pl(h.canonical()),
                None => UpFunction::ConstBottom,
            },
            other => other.clone(),
        }
    }

    pub fn negate(&self) -> DownFunction {
        match self {
            UpFunction::Pl(p) => DownFunction::Pl(p.negate()),
            UpFunction::ImproperSplit(d) => DownFunction::ImproperSplit(*d),
            UpFunction::ConstTop => DownFunction::ConstBottom,
            UpFunction::ConstBottom => DownFunction::ConstTop,
        }
    }

    /// Variant-wise equality; PL parts compared at breakpoint level.
    pub fn approx_eq(&self, o: &UpFunction, tol: f64) -> bool {
        match (self, o) {
            (UpFunction::Pl(a), UpFunction::Pl(b)) => a.approx_eq(b, tol),
            (UpFunction::ImproperSplit(a), UpFunction::ImproperSplit(b)) => a.approx_eq(b, tol),
            (UpFunction::ConstTop, UpFunction::ConstTop) | (UpFunction::ConstBottom, UpFunction::ConstBottom) => true,
            _ => false,
        }
    }

    /// Pointwise minimum. Only representable combinations are supported.
    pub fn pointwise_min(&self, o: &UpFunction) -> Result<UpFunction, PlError> {
        use UpFunction::*;
        Ok(match (self, o) {
            (ConstTop, f) | (f, ConstTop) => f.clone(),
            (ConstBottom, _) | (_, ConstBottom) => ConstBottom,
            (ImproperSplit(a), ImproperSplit(b)) => {
                if a.lo > b.hi || b.lo > a.hi {
                    return Err(PlError::DisconnectedDomain);
                }
                UpFunction::improper_split(a.hull(b))
            }
            (ImproperSplit(d), Pl(p)) | (Pl(p), ImproperSplit(d)) => {
                if p.domain().is_subset_of(d) {
                    ImproperSplit(*d)
                } else {
                    return Err(PlError::Discontinuous(d.lo));
                }
            }
            (Pl(a), Pl(b)) => Pl(a.pointwise_min(b)?),
        })
    }

    /// Canonical form (redundant knots dropped).
    pub fn canonical(&self) -> UpFunction {
        match self {
            UpFunction::Pl(p) => UpFunction::Pl(p.canonical()),
            UpFunction::ImproperSplit(d) => UpFunction::improper_split(*d),
            other => other.clone(),
        }
    }
}

impl DownFunction {
    pub fn improper_split(d: Interval) -> DownFunction {
        if d.is_empty() {
            DownFunction::ConstBottom
        } else if d.is_real_line() {
            DownFunction::ConstTop
        } else {
            DownFunction::ImproperSplit(d)
        }
    }

    pub fn eval(&self, x: f64) -> DownReal {
        match self {
            DownFunction::Pl(p) => p.eval(x).map_or(DownReal::BOTTOM, DownReal::finite),
            DownFunction::ImproperSplit(d) => {
                if d.contains(x) {
                    DownReal::TOP
                } else {
                    DownReal::BOTTOM
                }
            }
            DownFunction::ConstTop => DownReal::TOP,
            DownFunction::ConstBottom => DownReal::BOTTOM,
        }
    }

    /// `{x : h(x) > −∞}`.
    pub fn dom(&self) -> Interval {
        match self {
            DownFunction::Pl(p) => p.domain(),
            DownFunction::ImproperSplit(d) => *d,
            DownFunction::ConstTop => Interval::REAL,
            DownFunction::ConstBottom => Interval::EMPTY,
        }
    }

    /// `h(x) ≥ r`.
    pub fn hypo_contains(&self, x: f64, r: f64) -> bool {
        self.eval(x) >= DownReal::finite(r)
    }

    pub fn is_concave(&self) -> bool {
        match self {
            DownFunction::Pl(p) => p.is_concave(),
            _ => true,
        }
    }

    pub fn negate(&self) -> UpFunction {
        match self {
            DownFunction::Pl(p) => UpFunction::Pl(p.negate()),
            DownFunction::ImproperSplit(d) => UpFunction::ImproperSplit(*d),
            DownFunction::ConstTop => UpFunction::ConstBottom,
            DownFunction::ConstBottom => UpFunction::ConstTop,
        }
    }
}

pub fn negate_fn(f: &UpFunction) -> DownFunction {
    f.negate()
}

pub fn eval(f: &UpFunction, x: f64) -> UpReal {
    f.eval(x)
}

pub fn closure_hull(f: &UpFunction) -> UpFunction {
    f.closure_hull()
}

/// JSON shape shared by both function types.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "FlatSpec")]
pub enum FunctionSpec {
    Pl {
        breaks: Vec<Knot>,
        #[serde(rename = "slopeL", skip_serializing_if = "Option::is_none")]
        slope_l: Option<Ext>,
        #[serde(rename = "slopeR", skip_serializing_if = "Option::is_none")]
        slope_r: Option<Ext>,
        #[serde(rename = "domLo")]
        dom_lo: Ext,
        #[serde(rename = "domHi")]
        dom_hi: Ext,
    },
    Improper {
        #[serde(rename = "domLo")]
        dom_lo: Ext,
        #[serde(rename = "domHi")]
        dom_hi: Ext,
    },
    Top,
    Bottom,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum SpecKind {
    Pl,
    Improper,
    Top,
    Bottom,
}

/// Untagged reading of [`FunctionSpec`]. A plain struct keeps the JSON path
/// of a bad field visible to error reporting.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatSpec {
    kind: SpecKind,
    breaks: Option<Vec<Knot>>,
    #[serde(rename = "slopeL")]
    slope_l: Option<Ext>,
    #[serde(rename = "slopeR")]
    slope_r: Option<Ext>,
    #[serde(rename = "domLo")]
    dom_lo: Option<Ext>,
    #[serde(rename = "domHi")]
    dom_hi: Option<Ext>,
}

impl TryFrom<FlatSpec> for FunctionSpec {
    type Error = String;

    fn try_from(f: FlatSpec) -> Result<FunctionSpec, String> {
        let only = |ok: bool, kind: &str| if ok { Ok(()) } else { Err(format!("unexpected fields for kind `{kind}`")) };
        match f.kind {
            SpecKind::Pl => Ok(FunctionSpec::Pl {
                breaks: f.breaks.ok_or("missing field `breaks`")?,
                slope_l: f.slope_l,
                slope_r: f.slope_r,
                dom_lo: f.dom_lo.unwrap_or(Ext::NegInf),
                dom_hi: f.dom_hi.unwrap_or(Ext::PosInf),
            }),
            SpecKind::Improper => {
                only(f.breaks.is_none() && f.slope_l.is_none() && f.slope_r.is_none(), "improper")?;
                Ok(FunctionSpec::Improper {
                    dom_lo: f.dom_lo.ok_or("missing field `domLo`")?,
                    dom_hi: f.dom_hi.ok_or("missing field `domHi`")?,
                })
            }
            SpecKind::Top | SpecKind::Bottom => {
                let empty = f.breaks.is_none()
                    && f.slope_l.is_none()
                    && f.slope_r.is_none()
                    && f.dom_lo.is_none()
                    && f.dom_hi.is_none();
                only(empty, "top/bottom")?;
                Ok(if matches!(f.kind, SpecKind::Top) { FunctionSpec::Top } else { FunctionSpec::Bottom })
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FunctionSpecError {
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error("breakpoints lie outside [domLo, domHi]")]
    BreaksOutsideDomain,
    #[error("missing {0} for an unbounded side of the domain")]
    MissingSlope(&'static str),
    #[error("domain bounds must satisfy domLo <= domHi with domLo < +inf and domHi > -inf")]
    BadDomain,
}

impl std::fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| std::fmt::Error)?)
    }
}

fn pl_from_spec(
    breaks: Vec<Knot>,
    slope_l: Option<Ext>,
    slope_r: Option<Ext>,
    dom_lo: Ext,
    dom_hi: Ext,
) -> Result<PlFunction, FunctionSpecError> {
    if breaks.is_empty() {
        return Err(PlError::NoKnots.into());
    }
    let (lo, hi) = (dom_lo.to_f64(), dom_hi.to_f64());
    if lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
        return Err(FunctionSpecError::BadDomain);
    }
    let (x1, xn) = (breaks[0].x, breaks[breaks.len() - 1].x);
    if x1 < lo || xn > hi {
        return Err(FunctionSpecError::BreaksOutsideDomain);
    }
    let mut knots = breaks;
    let slope_of = |s: Option<Ext>, name: &'static str| -> Result<Option<f64>, FunctionSpecError> {
        match s {
            Some(Ext::Finite(v)) => Ok(Some(v)),
            Some(_) => Ok(None),
            None => Err(FunctionSpecError::MissingSlope(name)),
        }
    };
    let left = if lo == x1 {
        Tail::Wall
    } else {
        match slope_of(slope_l, "slopeL")? {
            None => Tail::Wall,
            Some(s) if lo.is_finite() => {
                let v = knots[0].v + s * (lo - x1);
                knots.insert(0, Knot::new(lo, v));
                Tail::Wall
            }
            Some(s) => Tail::Slope(s),
        }
    };
    let right = if hi == xn {
        Tail::Wall
    } else {
        match slope_of(slope_r, "slopeR")? {
            None => Tail::Wall,
            Some(s) if hi.is_finite() => {
                let k = knots[knots.len() - 1];
                knots.push(Knot::new(hi, k.v + s * (hi - xn)));
                Tail::Wall
            }
            Some(s) => Tail::Slope(s),
        }
    };
    Ok(PlFunction::new(knots, left, right)?)
}

fn pl_to_spec(p: &PlFunction, wall_l: Ext, wall_r: Ext) -> FunctionSpec {
    let d = p.domain();
    let tail = |t: Tail, wall: Ext| match t {
        Tail::Slope(s) => Some(Ext::Finite(s)),
        Tail::Wall => Some(wall),
    };
    FunctionSpec::Pl {
        breaks: p.knots().to_vec(),
        slope_l: tail(p.left(), wall_l),
        slope_r: tail(p.right(), wall_r),
        dom_lo: Ext::of(d.lo),
        dom_hi: Ext::of(d.hi),
    }
}

impl TryFrom<FunctionSpec> for UpFunction {
    type Error = FunctionSpecError;
    fn try_from(s: FunctionSpec) -> Result<UpFunction, FunctionSpecError> {
        Ok(match s {
            FunctionSpec::Pl { breaks, slope_l, slope_r, dom_lo, dom_hi } => {
                UpFunction::Pl(pl_from_spec(breaks, slope_l, slope_r, dom_lo, dom_hi)?)
            }
            FunctionSpec::Improper { dom_lo, dom_hi } => {
                UpFunction::improper_split(Interval::new(dom_lo.to_f64(), dom_hi.to_f64()))
            }
            FunctionSpec::Top => UpFunction::ConstTop,
            FunctionSpec::Bottom => UpFunction::ConstBottom,
        })
    }
}

impl From<UpFunction> for FunctionSpec {
    fn from(f: UpFunction) -> FunctionSpec {
        match f {
            UpFunction::Pl(p) => pl_to_spec(&p, Ext::NegInf, Ext::PosInf),
            UpFunction::ImproperSplit(d) => FunctionSpec::Improper { dom_lo: Ext::of(d.lo), dom_hi: Ext::of(d.hi) },
            UpFunction::ConstTop => FunctionSpec::Top,
            UpFunction::ConstBottom => FunctionSpec::Bottom,
        }
    }
}

impl TryFrom<FunctionSpec> for DownFunction {
    type Error = FunctionSpecError;
    fn try_from(s: FunctionSpec) -> Result<DownFunction, FunctionSpecError> {
        Ok(match s {
            FunctionSpec::Pl { breaks, slope_l, slope_r, dom_lo, dom_hi } => {
                DownFunction::Pl(pl_from_spec(breaks, slope_l, slope_r, dom_lo, dom_hi)?)
            }
            FunctionSpec::Improper { dom_lo, dom_hi } => {
                DownFunction::improper_split(Interval::new(dom_lo.to_f64(), dom_hi.to_f64()))
            }
            FunctionSpec::Top => DownFunction::ConstTop,
            FunctionSpec::Bottom => DownFunction::ConstBottom,
        })
    }
}

impl From<DownFunction> for FunctionSpec {
    fn from(f: DownFunction) -> FunctionSpec {
        match f {
            DownFunction::Pl(p) => pl_to_spec(&p, Ext::PosInf, Ext::NegInf),
            DownFunction::ImproperSplit(d) => FunctionSpec::Improper { dom_lo: Ext::of(d.lo), dom_hi: Ext::of(d.hi) },
            DownFunction::ConstTop => FunctionSpec::Top,
            DownFunction::ConstBottom => FunctionSpec::Bottom,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        assert_eq!(UpFunction::abs().eval(-2.0), UpReal::finite(2.0));
        let h = UpFunction::improper_split(Interval::at_least(0.0));
        assert_eq!(h.eval(-1.0), UpReal::TOP);
        assert_eq!(h.dom(), Interval::at_least(0.0));
        assert_eq!(UpFunction::ConstBottom.eval(3.0), UpReal::BOTTOM);
        assert!(UpFunction::ConstTop.dom().is_empty());
        assert!(UpFunction::abs().epi_contains(1.0, 2.0));
    }

    #[test]
    fn canonical_improper() {
        assert_eq!(UpFunction::improper_split(Interval::EMPTY), UpFunction::ConstTop);
        assert_eq!(UpFunction::improper_split(Interval::REAL), UpFunction::ConstBottom);
    }

    #[test]
    fn negation_roundtrip() {
        let f = UpFunction::abs();
        let h = f.negate();
        assert!(h.is_concave());
        assert_eq!(h.eval(2.0), DownReal::finite(-2.0));
        assert_eq!(h.negate(), f);
        let d = UpFunction::improper_split(Interval::at_least(0.0));
        assert_eq!(d.negate().negate(), d);
    }

    #[test]
    fn hull_of_double_well() {
        let f: UpFunction = serde_json::from_str(
            r#"{"kind":"pl","breaks":[{"x":-1,"v":0},{"x":0,"v":1},{"x":1,"v":0}],"slopeL":-1,"slopeR":1}"#,
        )
        .unwrap();
        assert!(!f.is_convex());
        let h = f.closure_hull();
        assert!(h.is_convex());
        assert_eq!(h.eval(0.0), UpReal::finite(0.0));
        assert_eq!(h.eval(-0.5), UpReal::finite(0.0));
        assert_eq!(h.closure_hull(), h);
    }

    #[test]
    fn json_schema() {
        let f: UpFunction = serde_json::from_str(
            r#"{"kind":"pl","breaks":[{"x":0,"v":0}],"slopeL":-1,"slopeR":1,"domLo":"-inf","domHi":"inf"}"#,
        )
        .unwrap();
        assert_eq!(f, UpFunction::abs());
        let g: UpFunction = serde_json::from_str(r#"{"kind":"improper","domLo":0,"domHi":"inf"}"#).unwrap();
        assert_eq!(g, UpFunction::ImproperSplit(Interval::at_least(0.0)));
        let clipped: UpFunction =
            serde_json::from_str(r#"{"kind":"pl","breaks":[{"x":0,"v":0}],"slopeL":-1,"slopeR":1,"domLo":-2}"#)
                .unwrap();
        assert_eq!(clipped.dom(), Interval::at_least(-2.0));
        assert_eq!(clipped.eval(-2.0), UpReal::finite(2.0));
        for h in [f, g, clipped, UpFunction::ConstTop] {
            let s = serde_json::to_string(&h).unwrap();
            assert_eq!(serde_json::from_str::<UpFunction>(&s).unwrap(), h);
        }
    }

    #[test]
    fn json_rejects_bad_breaks() {
        let e = serde_json::from_str::<UpFunction>(
            r#"{"kind":"pl","breaks":[{"x":1,"v":0},{"x":0,"v":0}],"slopeL":0,"slopeR":0}"#,
        );
        assert!(e.is_err());
    }
}
