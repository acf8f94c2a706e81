use serde::{Deserialize, Serialize};

use crate::extreal::Ext;

/// Closed interval `[lo, hi]` of ℝ. Infinite endpoints mean the side is
/// unbounded; `lo > hi` is the empty set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "IntervalRepr", from = "IntervalRepr")]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    lo: Ext,
    hi: Ext,
}

impl From<Interval> for IntervalRepr {
    fn from(i: Interval) -> Self {
        if i.is_empty() {
            return IntervalRepr { lo: Ext::PosInf, hi: Ext::NegInf };
        }
        IntervalRepr { lo: Ext::of(i.lo), hi: Ext::of(i.hi) }
    }
}

impl From<IntervalRepr> for Interval {
    fn from(r: IntervalRepr) -> Self {
        Interval::new(r.lo.to_f64(), r.hi.to_f64())
    }
}

impl Interval {
    pub const EMPTY: Interval = Interval { lo: f64::INFINITY, hi: f64::NEG_INFINITY };
    pub const REAL: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn new(lo: f64, hi: f64) -> Interval {
        if lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            Interval::EMPTY
        } else {
            Interval { lo, hi }
        }
    }

    pub fn point(x: f64) -> Interval {
        Interval { lo: x, hi: x }
    }

    pub fn at_least(lo: f64) -> Interval {
        Interval::new(lo, f64::INFINITY)
    }

    pub fn at_most(hi: f64) -> Interval {
        Interval::new(f64::NEG_INFINITY, hi)
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo <= self.hi)
    }

    pub fn is_real_line(&self) -> bool {
        self.lo == f64::NEG_INFINITY && self.hi == f64::INFINITY
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_tol(&self, x: f64, tol: f64) -> bool {
        self.lo - tol <= x && x <= self.hi + tol
    }

    pub fn intersect(&self, o: &Interval) -> Interval {
        Interval::new(self.lo.max(o.lo), self.hi.min(o.hi))
    }

    /// Smallest interval containing both.
    pub fn hull(&self, o: &Interval) -> Interval {
        if self.is_empty() {
            return *o;
        }
        if o.is_empty() {
            return *self;
        }
        Interval::new(self.lo.min(o.lo), self.hi.max(o.hi))
    }

    pub fn minkowski_sum(&self, o: &Interval) -> Interval {
        if self.is_empty() || o.is_empty() {
            return Interval::EMPTY;
        }
        Interval::new(self.lo + o.lo, self.hi + o.hi)
    }

    pub fn is_subset_of(&self, o: &Interval) -> bool {
        self.is_empty() || (o.lo <= self.lo && self.hi <= o.hi)
    }

    /// `sup {a·x : x ∈ I}`, with `sup ∅ = −∞` and `0·(unbounded) = 0`.
    pub fn support(&self, a: f64) -> Ext {
        if self.is_empty() {
            return Ext::NegInf;
        }
        if a == 0.0 {
            return Ext::ZERO;
        }
        let end = if a > 0.0 { self.hi } else { self.lo };
        Ext::of(a * end)
    }

    pub fn approx_eq(&self, o: &Interval, tol: f64) -> bool {
        if self.is_empty() || o.is_empty() {
            return self.is_empty() == o.is_empty();
        }
        let close = |a: f64, b: f64| {
            if a.is_finite() && b.is_finite() {
                (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
            } else {
                a == b
            }
        };
        close(self.lo, o.lo) && close(self.hi, o.hi)
    }
}
