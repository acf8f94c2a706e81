//! Closed convex cones in the plane.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::poly2::{ConvexPoly2, Halfplane};
use super::vec::{dot2, perp2, unit2, GEOM_TOL, P2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeKind {
    Zero,
    Ray,
    /// Pointed, two extreme rays.
    Sector,
    Line,
    Halfplane,
    Plane,
}

/// A closed convex cone `cone(gen) ∪ {0}` with canonical generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "ConeRepr", into = "ConeRepr")]
pub struct Cone2 {
    gens: Vec<P2>,
    kind: ConeKind,
}

#[derive(Serialize, Deserialize)]
struct ConeRepr {
    #[serde(default)]
    gen: Vec<P2>,
}

impl From<ConeRepr> for Cone2 {
    fn from(r: ConeRepr) -> Cone2 {
        Cone2::from_gens(&r.gen)
    }
}

impl From<Cone2> for ConeRepr {
    fn from(c: Cone2) -> ConeRepr {
        ConeRepr { gen: c.gens }
    }
}

impl Cone2 {
    pub fn zero() -> Cone2 {
        Cone2 { gens: vec![], kind: ConeKind::Zero }
    }

    pub fn plane() -> Cone2 {
        Cone2::from_gens(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    }

    /// `ℝ²₊`.
    pub fn orthant() -> Cone2 {
        Cone2::from_gens(&[[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn ray(d: P2) -> Cone2 {
        Cone2::from_gens(&[d])
    }

    /// Canonicalizes by angular sweep: the largest gap between consecutive
    /// generator angles decides the shape.
    pub fn from_gens(gens: &[P2]) -> Cone2 {
        let mut us: Vec<(f64, P2)> = Vec::new();
        for u in gens.iter().filter_map(|&g| unit2(g)) {
            // adding 0.0 turns −0 into +0 so atan2 stays in (−π, π]
            let u = [u[0] + 0.0, u[1] + 0.0];
            if !us.iter().any(|(_, v)| (v[0] - u[0]).abs() < GEOM_TOL && (v[1] - u[1]).abs() < GEOM_TOL) {
                us.push((u[1].atan2(u[0]), u));
            }
        }
        us.sort_by(|a, b| a.0.total_cmp(&b.0));
        let k = us.len();
        if k == 0 {
            return Cone2::zero();
        }
        if k == 1 {
            return Cone2 { gens: vec![us[0].1], kind: ConeKind::Ray };
        }
        // gap i lies between us[i] and us[i+1] (cyclic)
        let gap = |i: usize| {
            let g = us[(i + 1) % k].0 - us[i].0;
            if i + 1 == k {
                g + 2.0 * PI
            } else {
                g
            }
        };
        let (imax, gmax) = (0..k).map(|i| (i, gap(i))).max_by(|a, b| a.1.total_cmp(&b.1)).expect("k > 0");
        let first = us[(imax + 1) % k].1;
        let last = us[imax].1;
        if gmax > PI + 1e-9 {
            Cone2 { gens: vec![first, last], kind: ConeKind::Sector }
        } else if gmax >= PI - 1e-9 {
            // the arc from `first` to `last` spans exactly π
            if k == 2 {
                Cone2 { gens: vec![first, last], kind: ConeKind::Line }
            } else {
                Cone2 { gens: vec![first, perp2(first), last], kind: ConeKind::Halfplane }
            }
        } else {
            Cone2 { gens: vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]], kind: ConeKind::Plane }
        }
    }

    pub fn gens(&self) -> &[P2] {
        &self.gens
    }

    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.kind == ConeKind::Zero
    }

    pub fn is_plane(&self) -> bool {
        self.kind == ConeKind::Plane
    }

    /// The cone as a polyhedron.
    pub fn poly(&self) -> ConvexPoly2 {
        ConvexPoly2::from_vrep(&[[0.0, 0.0]], &self.gens)
    }

    pub fn contains(&self, d: P2) -> bool {
        self.poly().contains(d, GEOM_TOL)
    }

    /// `C⁻ = {z* : z*·z ≤ 0 for all z ∈ C}`.
    pub fn dual(&self) -> Cone2 {
        let hs: Vec<Halfplane> = self.gens.iter().map(|&g| Halfplane::new(g, 0.0)).collect();
        Cone2::from_gens(ConvexPoly2::from_hrep(&hs).rays())
    }

    /// `−C`.
    pub fn neg(&self) -> Cone2 {
        Cone2::from_gens(&self.gens.iter().map(|g| [-g[0], -g[1]]).collect::<Vec<_>>())
    }

    /// Whether `z*·z ≤ 0` on all of `C`.
    pub fn in_dual(&self, zstar: P2) -> bool {
        self.gens.iter().all(|&g| dot2(zstar, g) <= GEOM_TOL * (1.0 + zstar[0].abs() + zstar[1].abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(Cone2::orthant().kind(), ConeKind::Sector);
        assert_eq!(Cone2::from_gens(&[[1.0, 0.0], [-1.0, 0.0]]).kind(), ConeKind::Line);
        assert_eq!(Cone2::from_gens(&[[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]]).kind(), ConeKind::Halfplane);
        assert_eq!(Cone2::from_gens(&[[1.0, 0.0], [-1.0, 1.0], [-1.0, -1.0]]).kind(), ConeKind::Plane);
        assert_eq!(Cone2::from_gens(&[[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).gens().len(), 2);
    }

    #[test]
    fn dual_cones() {
        let d = Cone2::orthant().dual();
        assert_eq!(d.kind(), ConeKind::Sector);
        assert!(d.contains([-1.0, -2.0]) && !d.contains([1.0, -1.0]));
        let d = Cone2::ray([0.0, 1.0]).dual();
        assert_eq!(d.kind(), ConeKind::Halfplane);
        assert!(d.contains([5.0, -1.0]) && d.contains([-5.0, 0.0]) && !d.contains([0.0, 1.0]));
        assert!(Cone2::zero().dual().is_plane());
        assert!(Cone2::plane().dual().is_zero());
    }
}
