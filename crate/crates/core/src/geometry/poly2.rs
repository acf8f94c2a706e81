//! Closed convex polyhedra in the plane, kept in both representations.
//!
//! The V-representation is `conv(points) + cone(rays)`. When the set has a
//! lineality direction there are no vertices and `points` holds one
//! point on each boundary line (or the origin for the plane). The
//! H-representation is irredundant with unit normals.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cone::Cone2;
use super::vec::*;
use crate::extreal::Ext;

/// `{z : n·z ≤ c}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Halfplane {
    pub n: P2,
    pub c: f64,
}

impl Halfplane {
    /// Normalizes `n` to unit length. A zero normal is kept as is.
    pub fn new(n: P2, c: f64) -> Halfplane {
        match unit2(n) {
            Some(u) => Halfplane { n: u, c: c / norm2(n) },
            None => Halfplane { n: [0.0, 0.0], c },
        }
    }

    pub fn contains(&self, z: P2, tol: f64) -> bool {
        dot2(self.n, z) <= self.c + tol * (1.0 + self.c.abs())
    }

    pub fn violation(&self, z: P2) -> f64 {
        (dot2(self.n, z) - self.c).max(0.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPoly2 {
    hrep: Vec<Halfplane>,
    points: Vec<P2>,
    rays: Vec<P2>,
}

fn tol_for(c: f64) -> f64 {
    GEOM_TOL * (1.0 + c.abs())
}

/// Planar convex hull of a point set (monotone chain), counterclockwise.
fn hull_points(pts: &[P2]) -> Vec<P2> {
    let mut p: Vec<P2> = pts.to_vec();
    p.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    p.dedup_by(|b, a| (a[0] - b[0]).abs() <= GEOM_TOL && (a[1] - b[1]).abs() <= GEOM_TOL);
    if p.len() <= 2 {
        return p;
    }
    let turn = |o: P2, a: P2, b: P2| cross2(sub2(a, o), sub2(b, o));
    let mut lower: Vec<P2> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 1e-12 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<P2> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 1e-12 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl ConvexPoly2 {
    pub fn empty() -> ConvexPoly2 {
        ConvexPoly2 { hrep: vec![], points: vec![], rays: vec![] }
    }

    pub fn plane() -> ConvexPoly2 {
        ConvexPoly2::from_hrep(&[])
    }

    pub fn point(p: P2) -> ConvexPoly2 {
        ConvexPoly2::from_vrep(&[p], &[])
    }

    pub fn halfplane(n: P2, c: f64) -> ConvexPoly2 {
        ConvexPoly2::from_hrep(&[Halfplane::new(n, c)])
    }

    /// Intersection of halfplanes.
    pub fn from_hrep(hs: &[Halfplane]) -> ConvexPoly2 {
        let mut hs_n: Vec<Halfplane> = Vec::with_capacity(hs.len());
        for h in hs {
            let h = Halfplane::new(h.n, h.c);
            if h.n == [0.0, 0.0] {
                if h.c < -tol_for(h.c) {
                    return ConvexPoly2::empty();
                }
            } else {
                hs_n.push(h);
            }
        }
        let feasible = |z: P2| hs_n.iter().all(|h| h.contains(z, GEOM_TOL));
        // recession cone generators: its extreme rays lie on some n_i^⊥,
        // and a halfplane cone also needs an inward normal
        let mut cands: Vec<P2> = vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        for h in &hs_n {
            let p = perp2(h.n);
            cands.extend([p, [-p[0], -p[1]], [-h.n[0], -h.n[1]]]);
        }
        let rays: Vec<P2> = cands.into_iter().filter(|&d| hs_n.iter().all(|h| dot2(h.n, d) <= GEOM_TOL)).collect();
        let mut pts = Vec::new();
        for i in 0..hs_n.len() {
            for j in i + 1..hs_n.len() {
                let (a, b) = (hs_n[i], hs_n[j]);
                if cross2(a.n, b.n).abs() <= 1e-12 {
                    continue;
                }
                if let Some(z) = solve([a.n, b.n], [a.c, b.c]) {
                    if feasible(z) {
                        pts.push(z);
                    }
                }
            }
        }
        if pts.is_empty() {
            let parallel = hs_n.windows(2).all(|w| cross2(w[0].n, w[1].n).abs() <= 1e-12);
            if !parallel {
                return ConvexPoly2::empty();
            }
            // a strip, halfplane or the plane: coordinates along u
            let u = hs_n.first().map_or([1.0, 0.0], |h| h.n);
            let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
            for h in &hs_n {
                if dot2(h.n, u) > 0.0 {
                    hi = hi.min(h.c);
                } else {
                    lo = lo.max(-h.c);
                }
            }
            if lo > hi + tol_for(hi) {
                return ConvexPoly2::empty();
            }
            for t in [lo, hi] {
                if t.is_finite() {
                    pts.push(scale2(t, u));
                }
            }
            if pts.is_empty() {
                pts.push([0.0, 0.0]);
            }
        }
        ConvexPoly2::from_vrep(&pts, &rays)
    }

    /// `conv(points) + cone(rays)`; empty when there are no points.
    pub fn from_vrep(points: &[P2], rays: &[P2]) -> ConvexPoly2 {
        if points.is_empty() {
            return ConvexPoly2::empty();
        }
        let cone = Cone2::from_gens(rays);
        let rays: Vec<P2> = cone.gens().to_vec();
        let hull = hull_points(points);
        let valid = |n: P2| rays.iter().all(|&r| dot2(n, r) <= GEOM_TOL);
        let mut cands: Vec<P2> = vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        let mut dirs: Vec<P2> = rays.clone();
        for i in 0..hull.len() {
            let d = sub2(hull[(i + 1) % hull.len()], hull[i]);
            if let Some(u) = unit2(d) {
                dirs.push(u);
            }
        }
        for d in dirs {
            let p = perp2(d);
            cands.extend([p, [-p[0], -p[1]], d, [-d[0], -d[1]]]);
        }
        let mut hs: Vec<Halfplane> = Vec::new();
        for n in cands {
            if !valid(n) {
                continue;
            }
            let c = hull.iter().map(|&p| dot2(n, p)).fold(f64::NEG_INFINITY, f64::max);
            if !hs.iter().any(|h| (h.n[0] - n[0]).abs() < 1e-9 && (h.n[1] - n[1]).abs() < 1e-9) {
                hs.push(Halfplane { n, c });
            }
        }
        // affine dimension of the set
        let mut span: Vec<P2> = hull.iter().map(|&p| sub2(p, hull[0])).collect();
        span.extend(rays.iter().copied());
        let basis = span_basis(&span, 1e-9);
        let on = |h: &Halfplane, p: P2| (dot2(h.n, p) - h.c).abs() <= tol_for(h.c);
        let facets: Vec<Halfplane> = match basis.len() {
            2 => hs
                .into_iter()
                .filter(|h| {
                    let k = hull.iter().filter(|&&p| on(h, p)).count();
                    k >= 2 || (k >= 1 && rays.iter().any(|&r| dot2(h.n, r).abs() <= GEOM_TOL))
                })
                .collect(),
            1 => {
                let d = basis[0];
                hs.into_iter().filter(|h| cross2(h.n, d).abs() <= 1e-9 || dot2(h.n, d).abs() <= 1e-9).collect()
            }
            _ => hs.into_iter().filter(|h| h.n[0] == 0.0 || h.n[1] == 0.0).collect(),
        };
        let incident = |p: P2| -> Vec<P2> { facets.iter().filter(|h| on(h, p)).map(|h| h.n).collect() };
        let mut verts: Vec<P2> = hull
            .iter()
            .copied()
            .filter(|&p| {
                let ns = incident(p);
                ns.iter().enumerate().any(|(i, a)| ns[i + 1..].iter().any(|b| cross2(*a, *b).abs() > 1e-9))
            })
            .collect();
        if verts.is_empty() {
            // no corners (halfplane, strip, line): one point per facet
            for h in &facets {
                if verts.iter().any(|&q| on(h, q)) {
                    continue;
                }
                if let Some(&p) = hull.iter().find(|&&p| on(h, p)) {
                    verts.push(p);
                }
            }
        }
        if verts.is_empty() {
            verts.push(hull[0]);
        }
        let cx = verts.iter().map(|p| p[0]).sum::<f64>() / verts.len() as f64;
        let cy = verts.iter().map(|p| p[1]).sum::<f64>() / verts.len() as f64;
        verts.sort_by(|a, b| (a[1] - cy).atan2(a[0] - cx).total_cmp(&(b[1] - cy).atan2(b[0] - cx)));
        ConvexPoly2 { hrep: facets, points: verts, rays }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_plane(&self) -> bool {
        !self.is_empty() && self.hrep.is_empty()
    }

    pub fn hrep(&self) -> &[Halfplane] {
        &self.hrep
    }

    /// Vertices (or one representative point when there are none).
    pub fn points(&self) -> &[P2] {
        &self.points
    }

    pub fn rays(&self) -> &[P2] {
        &self.rays
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn recession_cone(&self) -> Cone2 {
        Cone2::from_gens(&self.rays)
    }

    pub fn contains(&self, z: P2, tol: f64) -> bool {
        !self.is_empty() && self.hrep.iter().all(|h| h.contains(z, tol))
    }

    /// `sup_{z ∈ P} n·z`.
    pub fn support(&self, n: P2) -> Ext {
        if self.is_empty() {
            return Ext::NegInf;
        }
        let scale = norm2(n).max(1e-300);
        if self.rays.iter().any(|&r| dot2(n, r) > GEOM_TOL * scale) {
            return Ext::PosInf;
        }
        Ext::Finite(self.points.iter().map(|&p| dot2(n, p)).fold(f64::NEG_INFINITY, f64::max))
    }

    /// `cl(A + B)`; empty if either operand is.
    pub fn minkowski_sum(&self, o: &ConvexPoly2) -> ConvexPoly2 {
        if self.is_empty() || o.is_empty() {
            return ConvexPoly2::empty();
        }
        let pts: Vec<P2> = self.points.iter().flat_map(|&p| o.points.iter().map(move |&q| add2(p, q))).collect();
        let rays: Vec<P2> = self.rays.iter().chain(o.rays.iter()).copied().collect();
        ConvexPoly2::from_vrep(&pts, &rays)
    }

    pub fn intersect(&self, o: &ConvexPoly2) -> ConvexPoly2 {
        if self.is_empty() || o.is_empty() {
            return ConvexPoly2::empty();
        }
        let hs: Vec<Halfplane> = self.hrep.iter().chain(o.hrep.iter()).copied().collect();
        ConvexPoly2::from_hrep(&hs)
    }

    /// `cl co (A ∪ B)`.
    pub fn hull_union(&self, o: &ConvexPoly2) -> ConvexPoly2 {
        if self.is_empty() {
            return o.clone();
        }
        if o.is_empty() {
            return self.clone();
        }
        let pts: Vec<P2> = self.points.iter().chain(o.points.iter()).copied().collect();
        let rays: Vec<P2> = self.rays.iter().chain(o.rays.iter()).copied().collect();
        ConvexPoly2::from_vrep(&pts, &rays)
    }

    /// `{z : B + z ⊆ A}` by shifting every facet of `A` by the support of `B`.
    pub fn residual(&self, b: &ConvexPoly2) -> ConvexPoly2 {
        if b.is_empty() {
            return ConvexPoly2::plane();
        }
        if self.is_empty() {
            return ConvexPoly2::empty();
        }
        let mut hs = Vec::with_capacity(self.hrep.len());
        for h in &self.hrep {
            match b.support(h.n) {
                Ext::Finite(s) => hs.push(Halfplane { n: h.n, c: h.c - s }),
                _ => return ConvexPoly2::empty(),
            }
        }
        ConvexPoly2::from_hrep(&hs)
    }

    pub fn translate(&self, v: P2) -> ConvexPoly2 {
        if self.is_empty() {
            return self.clone();
        }
        ConvexPoly2 {
            hrep: self.hrep.iter().map(|h| Halfplane { n: h.n, c: h.c + dot2(h.n, v) }).collect(),
            points: self.points.iter().map(|&p| add2(p, v)).collect(),
            rays: self.rays.clone(),
        }
    }

    /// `t·A` for `t > 0`.
    pub fn scale(&self, t: f64) -> ConvexPoly2 {
        assert!(t > 0.0, "scale factor must be positive");
        let pts: Vec<P2> = self.points.iter().map(|&p| scale2(t, p)).collect();
        ConvexPoly2::from_vrep(&pts, &self.rays)
    }

    pub fn neg(&self) -> ConvexPoly2 {
        let pts: Vec<P2> = self.points.iter().map(|&p| scale2(-1.0, p)).collect();
        let rays: Vec<P2> = self.rays.iter().map(|&r| scale2(-1.0, r)).collect();
        ConvexPoly2::from_vrep(&pts, &rays)
    }

    /// Largest amount by which `self`'s V-representation violates `o`'s
    /// H-representation; `+∞` if a ray leaves `o` or `o` is empty.
    fn violation_in(&self, o: &ConvexPoly2) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        if o.is_empty() {
            return f64::INFINITY;
        }
        let mut v: f64 = 0.0;
        for h in &o.hrep {
            if self.rays.iter().any(|&r| dot2(h.n, r) > 1e-7) {
                return f64::INFINITY;
            }
            for &p in &self.points {
                v = v.max(h.violation(p));
            }
        }
        v
    }

    /// `self ⊆ o` up to `tol`.
    pub fn is_subset_of(&self, o: &ConvexPoly2, tol: f64) -> bool {
        self.violation_in(o) <= tol
    }

    /// Symmetric vertex-to-constraint distance; 0 iff the sets coincide.
    pub fn hausdorff_vertex(&self, o: &ConvexPoly2) -> f64 {
        self.violation_in(o).max(o.violation_in(self))
    }

    pub fn approx_eq(&self, o: &ConvexPoly2, tol: f64) -> bool {
        self.hausdorff_vertex(o) <= tol
    }

    /// Vertices of `P ∩ box`, counterclockwise. Used for drawing.
    pub fn clip_to_box(&self, lo: P2, hi: P2) -> Vec<P2> {
        let mut hs = self.hrep.clone();
        hs.extend([
            Halfplane::new([1.0, 0.0], hi[0]),
            Halfplane::new([-1.0, 0.0], -lo[0]),
            Halfplane::new([0.0, 1.0], hi[1]),
            Halfplane::new([0.0, -1.0], -lo[1]),
        ]);
        if self.is_empty() {
            return vec![];
        }
        ConvexPoly2::from_hrep(&hs).points.clone()
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<Vec<Halfplane>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<Vec<P2>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rays: Option<Vec<P2>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    empty: Option<bool>,
}

impl Serialize for ConvexPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = if self.is_empty() {
            PolyRepr { h: None, v: Some(vec![]), rays: None, empty: Some(true) }
        } else {
            PolyRepr {
                h: Some(self.hrep.clone()),
                v: Some(self.points.clone()),
                rays: Some(self.rays.clone()),
                empty: None,
            }
        };
        r.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<ConvexPoly2, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        if r.empty == Some(true) {
            return Ok(ConvexPoly2::empty());
        }
        let finite = |v: &[P2]| v.iter().flatten().all(|x| x.is_finite());
        match (r.h, r.v) {
            (Some(h), _) => {
                if !h.iter().all(|h| finite(&[h.n]) && h.c.is_finite()) {
                    return Err(D::Error::custom("non-finite halfplane data"));
                }
                Ok(ConvexPoly2::from_hrep(&h))
            }
            (None, Some(v)) => {
                let rays = r.rays.unwrap_or_default();
                if !finite(&v) || !finite(&rays) {
                    return Err(D::Error::custom("non-finite vertex data"));
                }
                Ok(ConvexPoly2::from_vrep(&v, &rays))
            }
            (None, None) => Err(D::Error::custom("polyhedron needs \"h\" or \"v\"")),
        }
    }
}
