//! Continuous piecewise-linear functions on a closed interval of ℝ.
//!
//! Outside the domain the function is "walled off": the caller decides
//! whether that means `+∞` (convex reading) or `−∞` (concave reading).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Interval;

/// Relative tolerance used when comparing slopes structurally.
pub const SLOPE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Knot {
    pub x: f64,
    pub v: f64,
}

impl Knot {
    pub fn new(x: f64, v: f64) -> Knot {
        Knot { x, v }
    }
}

/// Behaviour beyond the outermost knot.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tail {
    Slope(f64),
    Wall,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlError {
    #[error("a piecewise-linear function needs at least one knot")]
    NoKnots,
    #[error("knot x-coordinates must be strictly increasing (index {0})")]
    NotIncreasing(usize),
    #[error("knots and slopes must be finite")]
    NonFinite,
    #[error("pointwise minimum has a disconnected domain")]
    DisconnectedDomain,
    #[error("pointwise minimum jumps at x = {0}")]
    Discontinuous(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlFunction {
    knots: Vec<Knot>,
    left: Tail,
    right: Tail,
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

impl PlFunction {
    pub fn new(knots: Vec<Knot>, left: Tail, right: Tail) -> Result<PlFunction, PlError> {
        if knots.is_empty() {
            return Err(PlError::NoKnots);
        }
        if knots.iter().any(|k| !k.x.is_finite() || !k.v.is_finite()) {
            return Err(PlError::NonFinite);
        }
        for t in [left, right] {
            if let Tail::Slope(s) = t {
                if !s.is_finite() {
                    return Err(PlError::NonFinite);
                }
            }
        }
        for i in 1..knots.len() {
            if knots[i].x <= knots[i - 1].x {
                return Err(PlError::NotIncreasing(i));
            }
        }
        Ok(PlFunction { knots, left, right })
    }

    /// `x ↦ a·x + b` on all of ℝ.
    pub fn affine(a: f64, b: f64) -> PlFunction {
        PlFunction { knots: vec![Knot::new(0.0, b)], left: Tail::Slope(a), right: Tail::Slope(a) }
    }

    /// Constant `c` on a non-empty interval.
    pub fn constant_on(dom: Interval, c: f64) -> Option<PlFunction> {
        if dom.is_empty() {
            return None;
        }
        let mut knots = Vec::new();
        let mut left = Tail::Slope(0.0);
        let mut right = Tail::Slope(0.0);
        if dom.lo.is_finite() {
            knots.push(Knot::new(dom.lo, c));
            left = Tail::Wall;
        }
        if dom.hi.is_finite() {
            if dom.hi > dom.lo {
                knots.push(Knot::new(dom.hi, c));
            }
            right = Tail::Wall;
        }
        if knots.is_empty() {
            knots.push(Knot::new(0.0, c));
        }
        Some(PlFunction { knots, left, right })
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn left(&self) -> Tail {
        self.left
    }

    pub fn right(&self) -> Tail {
        self.right
    }

    fn first(&self) -> Knot {
        self.knots[0]
    }

    fn last(&self) -> Knot {
        *self.knots.last().expect("non-empty")
    }

    pub fn domain(&self) -> Interval {
        let lo = match self.left {
            Tail::Wall => self.first().x,
            Tail::Slope(_) => f64::NEG_INFINITY,
        };
        let hi = match self.right {
            Tail::Wall => self.last().x,
            Tail::Slope(_) => f64::INFINITY,
        };
        Interval::new(lo, hi)
    }

    /// Value at `x`, or `None` outside the domain.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let (f, l) = (self.first(), self.last());
        if x < f.x {
            return match self.left {
                Tail::Slope(s) => Some(f.v + s * (x - f.x)),
                Tail::Wall => None,
            };
        }
        if x > l.x {
            return match self.right {
                Tail::Slope(s) => Some(l.v + s * (x - l.x)),
                Tail::Wall => None,
            };
        }
        let i = self.knots.partition_point(|k| k.x <= x);
        if i == self.knots.len() {
            return Some(l.v);
        }
        let (a, b) = (self.knots[i - 1], self.knots[i]);
        Some(a.v + (b.v - a.v) * ((x - a.x) / (b.x - a.x)))
    }

    pub fn segment_slopes(&self) -> Vec<f64> {
        self.knots.windows(2).map(|w| (w[1].v - w[0].v) / (w[1].x - w[0].x)).collect()
    }

    fn segment_slope(&self, i: usize) -> f64 {
        let (a, b) = (self.knots[i], self.knots[i + 1]);
        (b.v - a.v) / (b.x - a.x)
    }

    /// Left tail, segments, right tail; walls read as `∓∞`.
    pub fn slope_sequence(&self) -> Vec<f64> {
        let mut s = vec![self.left_slope()];
        s.extend(self.segment_slopes());
        s.push(self.right_slope());
        s
    }

    /// Left tail slope, `−∞` for a wall.
    pub fn left_slope(&self) -> f64 {
        match self.left {
            Tail::Slope(s) => s,
            Tail::Wall => f64::NEG_INFINITY,
        }
    }

    /// Right tail slope, `+∞` for a wall.
    pub fn right_slope(&self) -> f64 {
        match self.right {
            Tail::Slope(s) => s,
            Tail::Wall => f64::INFINITY,
        }
    }

    pub fn is_convex(&self) -> bool {
        self.slope_sequence().windows(2).all(|w| w[1] >= w[0] - SLOPE_TOL * (1.0 + w[0].abs() + w[1].abs()))
    }

    /// Concavity with walls read as `−∞`, so the tails flip roles.
    pub fn is_concave(&self) -> bool {
        let mut s = vec![match self.left {
            Tail::Slope(s) => s,
            Tail::Wall => f64::INFINITY,
        }];
        s.extend(self.segment_slopes());
        s.push(match self.right {
            Tail::Slope(s) => s,
            Tail::Wall => f64::NEG_INFINITY,
        });
        s.windows(2).all(|w| w[1] <= w[0] + SLOPE_TOL * (1.0 + w[0].abs() + w[1].abs()))
    }

    /// Slope of the piece immediately right of `x` (`+∞` at a right wall).
    /// `x` must lie in the domain.
    pub fn right_slope_at(&self, x: f64) -> f64 {
        if x < self.first().x {
            return self.left_slope();
        }
        let i = self.knots.partition_point(|k| k.x <= x);
        if i == self.knots.len() {
            self.right_slope()
        } else {
            self.segment_slope(i - 1)
        }
    }

    /// Slope of the piece immediately left of `x` (`−∞` at a left wall).
    pub fn left_slope_at(&self, x: f64) -> f64 {
        if x > self.last().x {
            return self.right_slope();
        }
        let j = self.knots.partition_point(|k| k.x < x);
        if j == 0 {
            self.left_slope()
        } else {
            self.segment_slope(j - 1)
        }
    }

    pub fn negate(&self) -> PlFunction {
        let flip = |t: Tail| match t {
            Tail::Slope(s) => Tail::Slope(-s),
            Tail::Wall => Tail::Wall,
        };
        PlFunction {
            knots: self.knots.iter().map(|k| Knot::new(k.x, -k.v)).collect(),
            left: flip(self.left),
            right: flip(self.right),
        }
    }

    /// `x ↦ f(x) + a·x + c`.
    pub fn add_affine(&self, a: f64, c: f64) -> PlFunction {
        let shift = |t: Tail| match t {
            Tail::Slope(s) => Tail::Slope(s + a),
            Tail::Wall => Tail::Wall,
        };
        PlFunction {
            knots: self.knots.iter().map(|k| Knot::new(k.x, k.v + a * k.x + c)).collect(),
            left: shift(self.left),
            right: shift(self.right),
        }
    }

    /// Drops knots whose neighbouring slopes agree.
    pub fn canonical(&self) -> PlFunction {
        let n = self.knots.len();
        let seq = self.slope_sequence();
        // seq[i] is the slope left of knot i, seq[i+1] the slope right of it
        let mut keep: Vec<Knot> = Vec::with_capacity(n);
        for i in 0..n {
            let (l, r) = (seq[i], seq[i + 1]);
            let redundant = l.is_finite() && r.is_finite() && close(l, r, SLOPE_TOL);
            if !redundant {
                keep.push(self.knots[i]);
            }
        }
        if keep.is_empty() {
            // affine on ℝ: anchor at x = 0
            let s = self.left_slope();
            let v = self.eval(0.0).expect("affine on the whole line");
            return PlFunction { knots: vec![Knot::new(0.0, v)], left: Tail::Slope(s), right: Tail::Slope(s) };
        }
        PlFunction { knots: keep, left: self.left, right: self.right }
    }

    /// Largest convex closed function below `self`; `None` when it is
    /// identically `−∞` (the tails point into each other).
    pub fn lower_hull(&self) -> Option<PlFunction> {
        let (sl, sr) = (self.left_slope(), self.right_slope());
        if sl > sr {
            return None;
        }
        let k = &self.knots;
        let n = k.len();
        let argmin = |s: f64, rightmost: bool| -> usize {
            let mut best = 0;
            let mut bv = f64::INFINITY;
            for (i, kn) in k.iter().enumerate() {
                let val = kn.v - s * kn.x;
                if val < bv || (rightmost && val <= bv) {
                    bv = val;
                    best = i;
                }
            }
            best
        };
        let il = if sl.is_finite() { argmin(sl, true) } else { 0 };
        let ir = if sr.is_finite() { argmin(sr, false) } else { n - 1 };
        if ir <= il {
            // tails share the same slope: a line through one minimiser
            return Some(PlFunction { knots: vec![k[il]], left: self.left, right: self.right });
        }
        let mut chain: Vec<Knot> = Vec::new();
        for &p in &k[il..=ir] {
            while chain.len() >= 2 {
                let (a, b) = (chain[chain.len() - 2], chain[chain.len() - 1]);
                // drop b when it lies on or above the segment a–p
                let cross = (b.x - a.x) * (p.v - a.v) - (b.v - a.v) * (p.x - a.x);
                if cross <= 0.0 {
                    chain.pop();
                } else {
                    break;
                }
            }
            chain.push(p);
        }
        Some(PlFunction { knots: chain, left: self.left, right: self.right })
    }

    /// Legendre transform `a ↦ sup_x (a·x − f(x))` as a convex PL function of
    /// `a` (walls mean `+∞`). `None` when it is `+∞` everywhere.
    pub fn legendre(&self) -> Option<PlFunction> {
        let lines: Vec<(f64, f64)> = self.knots.iter().map(|k| (k.x, -k.v)).collect();
        let dom = Interval::new(self.left_slope(), self.right_slope());
        upper_envelope(&lines, dom)
    }

    /// Restriction to `dom ∩ domain()`.
    pub fn clip(&self, dom: &Interval) -> Option<PlFunction> {
        let d = self.domain().intersect(dom);
        if d.is_empty() {
            return None;
        }
        let mut knots = Vec::new();
        if d.lo.is_finite() {
            knots.push(Knot::new(d.lo, self.eval(d.lo).expect("inside")));
        }
        knots.extend(self.knots.iter().filter(|k| d.lo < k.x && k.x < d.hi).copied());
        if d.hi.is_finite() && d.hi > d.lo {
            knots.push(Knot::new(d.hi, self.eval(d.hi).expect("inside")));
        }
        let left = if d.lo.is_finite() { Tail::Wall } else { self.left };
        let right = if d.hi.is_finite() { Tail::Wall } else { self.right };
        Some(PlFunction { knots, left, right })
    }

    /// Infimum over the domain, for convex functions (`−∞` if unbounded below).
    pub fn infimum(&self) -> f64 {
        if self.left_slope() > 0.0 || self.right_slope() < 0.0 {
            return f64::NEG_INFINITY;
        }
        self.knots.iter().map(|k| k.v).fold(f64::INFINITY, f64::min)
    }

    /// Breakpoint-level equality: same domain, same tails, and values within
    /// `tol` at every knot of either function.
    pub fn approx_eq(&self, o: &PlFunction, tol: f64) -> bool {
        if !self.domain().approx_eq(&o.domain(), tol) {
            return false;
        }
        for (a, b) in [(self.left, o.left), (self.right, o.right)] {
            match (a, b) {
                (Tail::Wall, Tail::Wall) => {}
                (Tail::Slope(x), Tail::Slope(y)) if close(x, y, tol) => {}
                _ => return false,
            }
        }
        let d = self.domain().intersect(&o.domain());
        let clamp = |x: f64| x.max(d.lo).min(d.hi);
        self.knots.iter().chain(o.knots.iter()).all(|k| {
            let x = clamp(k.x);
            match (self.eval(x), o.eval(x)) {
                (Some(p), Some(q)) => close(p, q, tol),
                _ => false,
            }
        })
    }

    /// Pointwise minimum of two functions whose domains overlap or touch.
    /// Fails when the minimum is not continuous on the union of domains.
    pub fn pointwise_min(&self, o: &PlFunction) -> Result<PlFunction, PlError> {
        let (da, db) = (self.domain(), o.domain());
        if da.lo > db.hi || db.lo > da.hi {
            return Err(PlError::DisconnectedDomain);
        }
        let dom = da.hull(&db);
        let mut pts: Vec<f64> = self.knots.iter().chain(o.knots.iter()).map(|k| k.x).collect();
        for e in [da.lo, da.hi, db.lo, db.hi] {
            if e.is_finite() {
                pts.push(e);
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let diff = |x: f64| match (self.eval(x), o.eval(x)) {
            (Some(p), Some(q)) => Some(p - q),
            _ => None,
        };
        let mut extra = Vec::new();
        for w in pts.windows(2) {
            if let (Some(d0), Some(d1)) = (diff(w[0]), diff(w[1])) {
                if (d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0) {
                    extra.push(w[0] + (w[1] - w[0]) * d0 / (d0 - d1));
                }
            }
        }
        let (p0, pn) = (pts[0], *pts.last().expect("non-empty"));
        if let (Tail::Slope(sa), Tail::Slope(sb)) = (self.left, o.left) {
            if sa != sb {
                let x = p0 - diff(p0).expect("both defined") / (sa - sb);
                if x < p0 {
                    extra.push(x);
                }
            }
        }
        if let (Tail::Slope(sa), Tail::Slope(sb)) = (self.right, o.right) {
            if sa != sb {
                let x = pn - diff(pn).expect("both defined") / (sa - sb);
                if x > pn {
                    extra.push(x);
                }
            }
        }
        pts.extend(extra);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let min_at = |x: f64| match (self.eval(x), o.eval(x)) {
            (Some(p), Some(q)) => p.min(q),
            (Some(p), None) | (None, Some(p)) => p,
            (None, None) => unreachable!("point lies in one of the domains"),
        };
        // a domain endpoint inside the union must not create a jump
        for e in [da.lo, da.hi, db.lo, db.hi] {
            if e.is_finite() && dom.lo < e && e < dom.hi {
                let h = 1e-7 * (1.0 + e.abs());
                let (l, r) = (min_at(e - h), min_at(e + h));
                let m = min_at(e);
                if !close(l, m, 1e-5) || !close(r, m, 1e-5) {
                    return Err(PlError::Discontinuous(e));
                }
            }
        }
        let knots: Vec<Knot> = pts.iter().map(|&x| Knot::new(x, min_at(x))).collect();
        let left = match (self.left, o.left) {
            (Tail::Slope(a), Tail::Slope(b)) => Tail::Slope(a.max(b)),
            (Tail::Slope(a), Tail::Wall) | (Tail::Wall, Tail::Slope(a)) => Tail::Slope(a),
            (Tail::Wall, Tail::Wall) => Tail::Wall,
        };
        let right = match (self.right, o.right) {
            (Tail::Slope(a), Tail::Slope(b)) => Tail::Slope(a.min(b)),
            (Tail::Slope(a), Tail::Wall) | (Tail::Wall, Tail::Slope(a)) => Tail::Slope(a),
            (Tail::Wall, Tail::Wall) => Tail::Wall,
        };
        Ok(PlFunction::new(knots, left, right)?.canonical())
    }
}

/// Maximum of the lines `x ↦ s·x + c` restricted to `dom` (walls outside).
/// `None` if `dom` is empty or there are no lines.
pub fn upper_envelope(lines: &[(f64, f64)], dom: Interval) -> Option<PlFunction> {
    if dom.is_empty() || lines.is_empty() {
        return None;
    }
    let mut ls: Vec<(f64, f64)> = lines.to_vec();
    ls.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    ls.dedup_by(|b, a| a.0 == b.0);
    let meet = |a: (f64, f64), b: (f64, f64)| (a.1 - b.1) / (b.0 - a.0);
    let mut st: Vec<(f64, f64)> = Vec::new();
    for l in ls {
        while st.len() >= 2 {
            let (a, b) = (st[st.len() - 2], st[st.len() - 1]);
            if meet(a, b) >= meet(b, l) {
                st.pop();
            } else {
                break;
            }
        }
        st.push(l);
    }
    let m = st.len();
    let bp: Vec<f64> = (0..m - 1).map(|i| meet(st[i], st[i + 1])).collect();
    let at = |i: usize, x: f64| st[i].0 * x + st[i].1;
    let first = if dom.lo == f64::NEG_INFINITY { 0 } else { (0..m).find(|&i| i == m - 1 || bp[i] > dom.lo).unwrap() };
    let last = if dom.hi == f64::INFINITY { m - 1 } else { (0..m).find(|&j| j == m - 1 || bp[j] >= dom.hi).unwrap() };
    let mut knots = Vec::new();
    if dom.lo.is_finite() {
        knots.push(Knot::new(dom.lo, at(first, dom.lo)));
    }
    for (i, &b) in bp.iter().enumerate().take(last).skip(first) {
        if dom.lo < b && b < dom.hi {
            knots.push(Knot::new(b, at(i, b)));
        }
    }
    if dom.hi.is_finite() && dom.hi > dom.lo {
        knots.push(Knot::new(dom.hi, at(last, dom.hi)));
    }
    if knots.is_empty() {
        knots.push(Knot::new(0.0, st[first].1));
    }
    let left = if dom.lo.is_finite() { Tail::Wall } else { Tail::Slope(st[first].0) };
    let right = if dom.hi.is_finite() { Tail::Wall } else { Tail::Slope(st[last].0) };
    Some(PlFunction { knots, left, right })
}

/// Exact infimal convolution of two convex PL functions (walls meaning
/// `+∞`). `None` when the result is identically `−∞`.
pub fn infconv_convex(f: &PlFunction, g: &PlFunction) -> Option<PlFunction> {
    let a = f.left_slope().max(g.left_slope());
    let b = f.right_slope().min(g.right_slope());
    if a > b {
        return None;
    }
    // last knot whose right-hand slope is still > a
    let contact = |h: &PlFunction| -> usize {
        let mut c = 0;
        if a > f64::NEG_INFINITY {
            while c + 1 < h.knots.len() && h.segment_slope(c) <= a {
                c += 1;
            }
        }
        c
    };
    let (cf, cg) = (contact(f), contact(g));
    let mut x = f.knots[cf].x + g.knots[cg].x;
    let mut v = f.knots[cf].v + g.knots[cg].v;
    let mut edges: Vec<(f64, f64)> = Vec::new();
    for (h, c) in [(f, cf), (g, cg)] {
        for i in c..h.knots.len() - 1 {
            let s = h.segment_slope(i);
            if s > b {
                break;
            }
            edges.push((h.knots[i + 1].x - h.knots[i].x, s));
        }
    }
    edges.sort_by(|p, q| p.1.total_cmp(&q.1));
    let mut knots = vec![Knot::new(x, v)];
    for (dx, s) in edges {
        x += dx;
        v += s * dx;
        knots.push(Knot::new(x, v));
    }
    let left = if a.is_finite() { Tail::Slope(a) } else { Tail::Wall };
    let right = if b.is_finite() { Tail::Slope(b) } else { Tail::Wall };
    Some(PlFunction { knots, left, right }.canonical())
}
