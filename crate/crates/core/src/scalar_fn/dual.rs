use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Interval;
use crate::extreal::UpReal;

/// Element of the inf-dual: a proper linear functional `x ↦ a·x` or the
/// inf-extension of one (a "hat").
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum DualElem {
    Proper(f64),
    Hat(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("expected `proper:<a>` or `hat:<a>`, got `{0}`")]
pub struct DualParseError(pub String);

impl DualElem {
    /// Hats with slopes `a` and `t·a`, `t > 0`, coincide as functions of `x`
    /// for offset 0; the canonical slope is the sign of `a`.
    pub fn canonical(self) -> DualElem {
        match self {
            DualElem::Hat(a) => DualElem::Hat(sign(a)),
            p => p,
        }
    }

    pub fn slope(self) -> f64 {
        match self {
            DualElem::Proper(a) | DualElem::Hat(a) => a,
        }
    }

    pub fn is_hat(self) -> bool {
        matches!(self, DualElem::Hat(_))
    }

    /// Value at `x` with offset 0.
    pub fn eval(self, x: f64) -> UpReal {
        AffineDual { xi: self, r: 0.0 }.eval(x)
    }
}

fn sign(a: f64) -> f64 {
    if a > 0.0 {
        1.0
    } else if a < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl PartialEq for DualElem {
    fn eq(&self, other: &Self) -> bool {
        match (self.canonical(), other.canonical()) {
            (DualElem::Proper(a), DualElem::Proper(b)) | (DualElem::Hat(a), DualElem::Hat(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for DualElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualElem::Proper(a) => write!(f, "proper:{a}"),
            DualElem::Hat(a) => write!(f, "hat:{a}"),
        }
    }
}

impl From<DualElem> for String {
    fn from(d: DualElem) -> String {
        d.to_string()
    }
}

impl FromStr for DualElem {
    type Err = DualParseError;
    fn from_str(s: &str) -> Result<DualElem, DualParseError> {
        let err = || DualParseError(s.to_string());
        let (kind, a) = s.trim().split_once(':').ok_or_else(err)?;
        let a: f64 = a.trim().parse().map_err(|_| err())?;
        if !a.is_finite() {
            return Err(err());
        }
        match kind.trim() {
            "proper" => Ok(DualElem::Proper(a)),
            "hat" => Ok(DualElem::Hat(a)),
            _ => Err(err()),
        }
    }
}

impl TryFrom<String> for DualElem {
    type Error = DualParseError;
    fn try_from(s: String) -> Result<DualElem, DualParseError> {
        s.parse()
    }
}

/// Addition on the inf-dual: a hat absorbs a proper summand.
pub fn dual_add(xi: DualElem, eta: DualElem) -> DualElem {
    use DualElem::*;
    match (xi, eta) {
        (Hat(a), Hat(b)) => Hat(a + b),
        (Hat(a), Proper(_)) | (Proper(_), Hat(a)) => Hat(a),
        (Proper(a), Proper(b)) => Proper(a + b),
    }
}

/// `ξ_r`: `x ↦ a·x − r`, or its inf-extension for a hat.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineDual {
    pub xi: DualElem,
    pub r: f64,
}

impl AffineDual {
    pub fn new(xi: DualElem, r: f64) -> AffineDual {
        AffineDual { xi, r }
    }

    pub fn eval(&self, x: f64) -> UpReal {
        match self.xi {
            DualElem::Proper(a) => UpReal::finite(a * x - self.r),
            DualElem::Hat(a) => {
                if a * x - self.r <= 0.0 {
                    UpReal::BOTTOM
                } else {
                    UpReal::TOP
                }
            }
        }
    }

    /// `{x : a·x − r ≤ 0}`; the domain of the hat.
    pub fn hat_domain(&self) -> Interval {
        hat_domain(self.xi.slope(), self.r)
    }
}

pub fn affine_eval(xi_r: &AffineDual, x: f64) -> UpReal {
    xi_r.eval(x)
}

pub fn hat_domain(a: f64, r: f64) -> Interval {
    if a > 0.0 {
        Interval::at_most(r / a)
    } else if a < 0.0 {
        Interval::at_least(r / a)
    } else if r >= 0.0 {
        Interval::REAL
    } else {
        Interval::EMPTY
    }
}

/// `sup_{r₁+r₂=r} ξ_{r₁}(x₁) ⊞▿ ξ_{r₂}(x₂)` in closed form.
pub fn affine_split_sup(xi: DualElem, r: f64, x1: f64, x2: f64) -> UpReal {
    match xi {
        // every split gives the same value
        DualElem::Proper(a) => UpReal::finite(a * x1 + a * x2 - r),
        // Top iff some r₁ has a·x₁ > r₁ and a·x₂ > r − r₁, i.e. r − a·x₂ < r₁ < a·x₁
        DualElem::Hat(a) => {
            if r - a * x2 < a * x1 {
                UpReal::TOP
            } else {
                UpReal::BOTTOM
            }
        }
    }
}

/// `sup_{r₁+r₂=r} ξ_{r₁}(x₁) ⊖ ξ_{−r₂}(x₂)` in closed form.
pub fn affine_split_sup_diff(xi: DualElem, r: f64, x1: f64, x2: f64) -> UpReal {
    match xi {
        DualElem::Proper(a) => UpReal::finite(a * x1 - a * x2 - r),
        // only Top ⊖ Bottom gives Top: r₁ < a·x₁ and a·x₂ ≤ −r₂ = r₁ − r
        DualElem::Hat(a) => {
            if r + a * x2 < a * x1 {
                UpReal::TOP
            } else {
                UpReal::BOTTOM
            }
        }
    }
}
