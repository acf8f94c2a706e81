//! The extended reals with their two monoid structures.
//!
//! [`UpReal`] is ℝ̄ with the inf-addition (`+∞` dominates); convex functions
//! take values there. [`DownReal`] is ℝ̄ with the sup-addition
//! (`−∞` dominates). The two share the order but not the arithmetic, so they
//! are separate types; the only bridges are negation and the explicitly named
//! `reinterpret_*` methods.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtRealError {
    #[error("NaN is not an extended real")]
    NaN,
    #[error("scaling factor must be non-negative, got {0}")]
    NegativeScale(f64),
}

/// Raw tagged value shared by both image spaces. Never holds NaN, and a
/// `Finite` never holds an infinite float.
#[derive(Clone, Copy, Debug)]
pub enum Ext {
    NegInf,
    Finite(f64),
    PosInf,
}

impl Ext {
    pub const ZERO: Ext = Ext::Finite(0.0);

    /// Maps `±inf` floats onto the infinite tags.
    pub fn from_f64(x: f64) -> Result<Ext, ExtRealError> {
        if x.is_nan() {
            Err(ExtRealError::NaN)
        } else if x == f64::INFINITY {
            Ok(Ext::PosInf)
        } else if x == f64::NEG_INFINITY {
            Ok(Ext::NegInf)
        } else {
            Ok(Ext::Finite(x))
        }
    }

    /// Like `from_f64` but panics on NaN. For values produced by arithmetic
    /// on finite inputs, where NaN indicates a bug.
    pub fn of(x: f64) -> Ext {
        Ext::from_f64(x).expect("NaN in extended-real arithmetic")
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Ext::NegInf => f64::NEG_INFINITY,
            Ext::Finite(x) => x,
            Ext::PosInf => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Ext::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Ext::Finite(_))
    }

    fn rank(self) -> u8 {
        match self {
            Ext::NegInf => 0,
            Ext::Finite(_) => 1,
            Ext::PosInf => 2,
        }
    }

    pub fn negate(self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::Finite(x) => Ext::Finite(-x),
            Ext::PosInf => Ext::NegInf,
        }
    }

    /// Equality with tolerance on finite values; infinities must match exactly.
    pub fn approx_eq(self, other: Ext, tol: f64) -> bool {
        match (self, other) {
            (Ext::Finite(a), Ext::Finite(b)) => (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs())),
            (a, b) => a.rank() == b.rank(),
        }
    }
}

impl PartialEq for Ext {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ext {}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            // no NaN can be stored, and -0.0 == 0.0 here
            (Ext::Finite(a), Ext::Finite(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::Finite(x) => write!(f, "{x}"),
            Ext::PosInf => write!(f, "inf"),
        }
    }
}

impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Ext::NegInf => s.serialize_str("-inf"),
            Ext::Finite(x) => s.serialize_f64(*x),
            Ext::PosInf => s.serialize_str("inf"),
        }
    }
}

struct ExtVisitor;

impl<'de> Visitor<'de> for ExtVisitor {
    type Value = Ext;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number or one of \"inf\", \"+inf\", \"-inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Ext, E> {
        Ext::from_f64(v).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Ext, E> {
        Ok(Ext::Finite(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Ext, E> {
        Ok(Ext::Finite(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Ext, E> {
        match v.trim() {
            "inf" | "+inf" | "Infinity" | "+Infinity" => Ok(Ext::PosInf),
            "-inf" | "-Infinity" => Ok(Ext::NegInf),
            other => other
                .parse::<f64>()
                .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
                .and_then(|x| Ext::from_f64(x).map_err(E::custom)),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Ext, D::Error> {
        d.deserialize_any(ExtVisitor)
    }
}

macro_rules! image_space {
    ($name:ident) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(Ext);

        impl $name {
            pub const TOP: $name = $name(Ext::PosInf);
            pub const BOTTOM: $name = $name(Ext::NegInf);
            pub const ZERO: $name = $name(Ext::ZERO);

            pub fn new(x: f64) -> Result<$name, ExtRealError> {
                Ext::from_f64(x).map($name)
            }

            /// Panics on NaN.
            pub fn finite(x: f64) -> $name {
                $name(Ext::of(x))
            }

            pub fn from_ext(e: Ext) -> $name {
                $name(e)
            }

            pub fn ext(self) -> Ext {
                self.0
            }

            pub fn to_f64(self) -> f64 {
                self.0.to_f64()
            }

            pub fn value(self) -> Option<f64> {
                self.0.finite()
            }

            pub fn is_top(self) -> bool {
                matches!(self.0, Ext::PosInf)
            }

            pub fn is_bottom(self) -> bool {
                matches!(self.0, Ext::NegInf)
            }

            pub fn is_finite(self) -> bool {
                self.0.is_finite()
            }

            /// `t·a` with `0·(±∞) = 0`.
            pub fn scale(self, t: f64) -> Result<$name, ExtRealError> {
                if t.is_nan() {
                    return Err(ExtRealError::NaN);
                }
                if t < 0.0 {
                    return Err(ExtRealError::NegativeScale(t));
                }
                Ok(match self.0 {
                    _ if t == 0.0 => $name::ZERO,
                    Ext::Finite(x) => $name(Ext::of(t * x)),
                    inf => $name(inf),
                })
            }

            pub fn approx_eq(self, other: $name, tol: f64) -> bool {
                self.0.approx_eq(other.0, tol)
            }
        }

        impl From<$name> for Ext {
            fn from(v: $name) -> Ext {
                v.0
            }
        }

        impl TryFrom<f64> for $name {
            type Error = ExtRealError;
            fn try_from(x: f64) -> Result<$name, ExtRealError> {
                $name::new(x)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }
    };
}

image_space!(UpReal);
image_space!(DownReal);

fn finite_sum(a: f64, b: f64) -> Ext {
    Ext::of(a + b)
}

impl UpReal {
    /// Inf-addition: `+∞` dominates.
    pub fn isum(self, b: UpReal) -> UpReal {
        UpReal(match (self.0, b.0) {
            (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            (Ext::Finite(x), Ext::Finite(y)) => finite_sum(x, y),
        })
    }

    /// Inf-difference `a ⊖ b = min{t : a ≤ b ⊞▵ t}`.
    pub fn idif(self, b: UpReal) -> UpReal {
        UpReal(match (self.0, b.0) {
            (_, Ext::PosInf) | (Ext::NegInf, _) => Ext::NegInf,
            (Ext::PosInf, _) | (_, Ext::NegInf) => Ext::PosInf,
            (Ext::Finite(x), Ext::Finite(y)) => Ext::of(x - y),
        })
    }

    pub fn negate(self) -> DownReal {
        DownReal(self.0.negate())
    }

    /// Same value read in ℝ▿. Only for places where the paper mixes spaces.
    pub fn reinterpret_as_down(self) -> DownReal {
        DownReal(self.0)
    }
}

impl DownReal {
    /// Sup-addition: `−∞` dominates.
    pub fn ssum(self, b: DownReal) -> DownReal {
        DownReal(match (self.0, b.0) {
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
            (Ext::Finite(x), Ext::Finite(y)) => finite_sum(x, y),
        })
    }

    /// Sup-difference `a ⊘ b = max{t : b ⊞▿ t ≤ a}`.
    pub fn sdif(self, b: DownReal) -> DownReal {
        DownReal(match (self.0, b.0) {
            (_, Ext::NegInf) | (Ext::PosInf, _) => Ext::PosInf,
            (Ext::NegInf, _) | (_, Ext::PosInf) => Ext::NegInf,
            (Ext::Finite(x), Ext::Finite(y)) => Ext::of(x - y),
        })
    }

    pub fn negate(self) -> UpReal {
        UpReal(self.0.negate())
    }

    /// Same value read in ℝ▵. Only for places where the paper mixes spaces.
    pub fn reinterpret_as_up(self) -> UpReal {
        UpReal(self.0)
    }
}

pub fn isum(a: UpReal, b: UpReal) -> UpReal {
    a.isum(b)
}

pub fn ssum(a: DownReal, b: DownReal) -> DownReal {
    a.ssum(b)
}

pub fn idif(a: UpReal, b: UpReal) -> UpReal {
    a.idif(b)
}

pub fn sdif(a: DownReal, b: DownReal) -> DownReal {
    a.sdif(b)
}

pub fn negate_up(a: UpReal) -> DownReal {
    a.negate()
}

pub fn negate_down(a: DownReal) -> UpReal {
    a.negate()
}

impl Add for UpReal {
    type Output = UpReal;
    fn add(self, rhs: UpReal) -> UpReal {
        self.isum(rhs)
    }
}

impl Add for DownReal {
    type Output = DownReal;
    fn add(self, rhs: DownReal) -> DownReal {
        self.ssum(rhs)
    }
}

impl Neg for UpReal {
    type Output = DownReal;
    fn neg(self) -> DownReal {
        self.negate()
    }
}

impl Neg for DownReal {
    type Output = UpReal;
    fn neg(self) -> UpReal {
        self.negate()
    }
}

/// `inf ∅ = +∞`.
pub fn inf_up<I: IntoIterator<Item = UpReal>>(m: I) -> UpReal {
    m.into_iter().min().unwrap_or(UpReal::TOP)
}

/// `sup ∅ = −∞`.
pub fn sup_up<I: IntoIterator<Item = UpReal>>(m: I) -> UpReal {
    m.into_iter().max().unwrap_or(UpReal::BOTTOM)
}

pub fn inf_down<I: IntoIterator<Item = DownReal>>(m: I) -> DownReal {
    m.into_iter().min().unwrap_or(DownReal::TOP)
}

pub fn sup_down<I: IntoIterator<Item = DownReal>>(m: I) -> DownReal {
    m.into_iter().max().unwrap_or(DownReal::BOTTOM)
}
