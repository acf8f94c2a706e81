//! Seeded generators for the property suites.
//!
//! Every generator takes an explicit RNG so a run is reproducible from its
//! seed. Finite values are drawn from small dyadic grids where exactness
//! matters and from uniform reals elsewhere.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::extreal::Ext;
use crate::geometry::vec::P2;
use crate::geometry::{Cone2, ConvexPoly2, Halfspace3};
use crate::scalar_fn::{DualElem, Interval, Knot, PlFunction, Tail, UpFunction};
use crate::setvalued::{DualTriple, SetValuedFn, UpSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `±∞` with probability `p_inf` (split evenly), otherwise a uniform real
/// in `[-100, 100]`.
pub fn ext<R: Rng>(rng: &mut R, p_inf: f64) -> Ext {
    if rng.gen_bool(p_inf) {
        if rng.gen_bool(0.5) {
            Ext::PosInf
        } else {
            Ext::NegInf
        }
    } else {
        Ext::of(rng.gen_range(-100.0..100.0))
    }
}

/// Like [`ext`] but finite values are multiples of `1/8` in `[-16, 16]`,
/// so sums and differences are exact.
pub fn dyadic_ext<R: Rng>(rng: &mut R, p_inf: f64) -> Ext {
    match ext(rng, p_inf) {
        Ext::Finite(_) => Ext::of(rng.gen_range(-128i32..=128) as f64 / 8.0),
        e => e,
    }
}

fn sorted_xs<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    loop {
        let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
        xs.sort_by(f64::total_cmp);
        if xs.windows(2).all(|w| w[1] - w[0] > 1e-3) {
            return xs;
        }
    }
}

/// A convex PL function with 1 to 6 knots in `[-10, 10]`; each tail is a
/// wall with probability `p_wall`.
pub fn convex_pl<R: Rng>(rng: &mut R, p_wall: f64) -> PlFunction {
    let n = rng.gen_range(1..=6);
    let xs = sorted_xs(rng, n, -10.0, 10.0);
    let mut slopes: Vec<f64> = (0..n + 1).map(|_| rng.gen_range(-5.0..5.0)).collect();
    slopes.sort_by(f64::total_cmp);
    let mut knots = vec![Knot::new(xs[0], rng.gen_range(-10.0..10.0))];
    for i in 1..n {
        let v = knots[i - 1].v + slopes[i] * (xs[i] - xs[i - 1]);
        knots.push(Knot::new(xs[i], v));
    }
    let left = if rng.gen_bool(p_wall) { Tail::Wall } else { Tail::Slope(slopes[0]) };
    let right = if rng.gen_bool(p_wall) { Tail::Wall } else { Tail::Slope(slopes[n]) };
    PlFunction::new(knots, left, right).expect("generated knots are increasing")
}

/// A continuous PL function with arbitrary slopes (usually non-convex).
pub fn pl<R: Rng>(rng: &mut R, p_wall: f64) -> PlFunction {
    let n = rng.gen_range(2..=6);
    let xs = sorted_xs(rng, n, -10.0, 10.0);
    let knots = xs.iter().map(|&x| Knot::new(x, rng.gen_range(-10.0..10.0))).collect();
    let left = if rng.gen_bool(p_wall) { Tail::Wall } else { Tail::Slope(rng.gen_range(-5.0..5.0)) };
    let right = if rng.gen_bool(p_wall) { Tail::Wall } else { Tail::Slope(rng.gen_range(-5.0..5.0)) };
    PlFunction::new(knots, left, right).expect("generated knots are increasing")
}

/// A closed interval that is neither empty nor all of ℝ.
pub fn interval<R: Rng>(rng: &mut R) -> Interval {
    let a = rng.gen_range(-5i32..=5) as f64;
    match rng.gen_range(0..3) {
        0 => Interval::at_least(a),
        1 => Interval::at_most(a),
        _ => Interval::new(a, a + rng.gen_range(0i32..=6) as f64),
    }
}

/// A closed convex function of any representable kind.
pub fn closed_convex<R: Rng>(rng: &mut R) -> UpFunction {
    match rng.gen_range(0..10) {
        0 => UpFunction::ConstTop,
        1 => UpFunction::ConstBottom,
        2 | 3 => UpFunction::improper_split(interval(rng)),
        _ => UpFunction::Pl(convex_pl(rng, 0.3)),
    }
}

/// A dual element: proper with a slope in `[-6, 6]`, or a hat with slope
/// in `{-1, 0, 1}` scaled by a random positive factor.
pub fn dual<R: Rng>(rng: &mut R, p_hat: f64) -> DualElem {
    if rng.gen_bool(p_hat) {
        let s = *[-1.0, 0.0, 1.0].choose(rng).unwrap();
        DualElem::Hat(s * rng.gen_range(0.5..3.0))
    } else {
        DualElem::Proper(rng.gen_range(-6.0..6.0))
    }
}

/// One of the three cones used throughout: `ℝ²₊`, a ray, or `{0}`.
pub fn cone<R: Rng>(rng: &mut R) -> Cone2 {
    match rng.gen_range(0..3) {
        0 => Cone2::orthant(),
        1 => {
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            Cone2::ray([t.cos(), t.sin()])
        }
        _ => Cone2::zero(),
    }
}

fn point<R: Rng>(rng: &mut R, r: f64) -> P2 {
    [rng.gen_range(-r..r), rng.gen_range(-r..r)]
}

/// A random element of `C⁻`; zero with probability `p_zero`.
pub fn dual_cone_point<R: Rng>(rng: &mut R, cone: &Cone2, p_zero: f64) -> P2 {
    if rng.gen_bool(p_zero) {
        return [0.0, 0.0];
    }
    let dual = cone.dual();
    if dual.is_plane() {
        return point(rng, 2.0);
    }
    let gens = dual.gens();
    if gens.is_empty() {
        return [0.0, 0.0];
    }
    loop {
        let mut z = [0.0, 0.0];
        for g in gens {
            let t = rng.gen_range(0.0..2.0);
            z[0] += t * g[0];
            z[1] += t * g[1];
        }
        if z[0].hypot(z[1]) > 1e-3 {
            return z;
        }
    }
}

/// `cl co(P + C)` for a random polygon `P` (1–4 points, sometimes a ray),
/// or occasionally `∅`, `Z` or a halfplane.
pub fn upset<R: Rng>(rng: &mut R, cone: &Cone2) -> UpSet {
    match rng.gen_range(0..20) {
        0 => UpSet::empty(cone),
        1 => UpSet::whole(cone),
        2 => {
            let z = dual_cone_point(rng, cone, 0.0);
            UpSet::halfplane(cone, z, rng.gen_range(-3.0..3.0))
        }
        _ => {
            let n = rng.gen_range(1..=4);
            let pts: Vec<P2> = (0..n).map(|_| point(rng, 5.0)).collect();
            let rays: Vec<P2> = if rng.gen_bool(0.2) { vec![point(rng, 1.0)] } else { vec![] };
            UpSet::generated(&ConvexPoly2::from_vrep(&pts, &rays), cone)
        }
    }
}

/// A set-valued function whose graph is cut out by 2–5 rows with
/// `n_z ∈ C⁻` and up to two domain rows, all passing near a common point so
/// the graph is non-empty.
pub fn set_valued<R: Rng>(rng: &mut R, cone: &Cone2) -> SetValuedFn {
    loop {
        let y0 = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
        let mut rows = Vec::new();
        let k = rng.gen_range(2..=5);
        for _ in 0..k {
            let z = dual_cone_point(rng, cone, 0.0);
            let n = [rng.gen_range(-2.0..2.0), z[0], z[1]];
            let c = n[0] * y0[0] + n[1] * y0[1] + n[2] * y0[2] + rng.gen_range(0.0..2.0);
            rows.push(Halfspace3::new(n, c));
        }
        for s in [1.0, -1.0] {
            if rng.gen_bool(0.4) {
                rows.push(Halfspace3::new([s, 0.0, 0.0], s * y0[0] + rng.gen_range(0.5..4.0)));
            }
        }
        if let Ok(g) = SetValuedFn::new(rows, cone) {
            if !g.graph().is_empty() {
                return g;
            }
        }
    }
}

pub fn dual_triple<R: Rng>(rng: &mut R, cone: &Cone2) -> DualTriple {
    DualTriple { xi: dual(rng, 0.3), r: rng.gen_range(-3.0..3.0), zstar: dual_cone_point(rng, cone, 0.15) }
}
