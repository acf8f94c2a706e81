//! The image spaces `Q▵` (upper sets, ordered by `⊇`) and `Q▿` (lower
//! sets, ordered by `⊆`) over a fixed ordering cone `C ⊆ ℝ²`.

use serde::{Deserialize, Serialize};

use super::SetError;
use crate::extreal::{DownReal, Ext, UpReal};
use crate::geometry::vec::{dot2, GEOM_TOL, P2};
use crate::geometry::{Cone2, ConvexPoly2};

const EQ_TOL: f64 = 1e-7;

fn recession_contains(poly: &ConvexPoly2, gens: &[P2]) -> bool {
    poly.is_empty() || gens.iter().all(|&g| poly.hrep().iter().all(|h| dot2(h.n, g) <= 1e-7))
}

macro_rules! shared_set_api {
    ($name:ident) => {
        impl $name {
            pub fn poly(&self) -> &ConvexPoly2 {
                &self.poly
            }

            pub fn cone(&self) -> &Cone2 {
                &self.cone
            }

            pub fn is_empty(&self) -> bool {
                self.poly.is_empty()
            }

            pub fn is_whole(&self) -> bool {
                self.poly.is_plane()
            }

            /// Wraps `poly` without checking the cone invariant.
            #[allow(dead_code)]
            pub(crate) fn from_parts(poly: ConvexPoly2, cone: &Cone2) -> $name {
                $name { poly, cone: cone.clone() }
            }

            pub fn empty(cone: &Cone2) -> $name {
                $name { poly: ConvexPoly2::empty(), cone: cone.clone() }
            }

            /// `Z = ℝ²`.
            pub fn whole(cone: &Cone2) -> $name {
                $name { poly: ConvexPoly2::plane(), cone: cone.clone() }
            }

            /// `{z : z*·z ≤ c}`; `Z` or `∅` when `z* = 0`.
            pub fn halfplane(cone: &Cone2, zstar: P2, c: f64) -> $name {
                $name { poly: ConvexPoly2::halfplane(zstar, c), cone: cone.clone() }
            }

            fn same_cone(&self, o: &$name) -> Result<(), SetError> {
                let (a, b) = (self.cone.poly(), o.cone.poly());
                if a.approx_eq(&b, GEOM_TOL) {
                    Ok(())
                } else {
                    Err(SetError::ConeMismatch)
                }
            }

            /// `A ⊕ B = cl(A + B)`.
            pub fn oplus(&self, o: &$name) -> Result<$name, SetError> {
                self.same_cone(o)?;
                Ok($name { poly: self.poly.minkowski_sum(&o.poly), cone: self.cone.clone() })
            }

            /// `{z : B + z ⊆ A}`; the same formula serves both lattices.
            pub fn residual(&self, b: &$name) -> Result<$name, SetError> {
                self.same_cone(b)?;
                Ok($name { poly: self.poly.residual(&b.poly), cone: self.cone.clone() })
            }

            /// Union hull `cl co ⋃`, empty for an empty family.
            fn hull_family(cone: &Cone2, fam: &[$name]) -> Result<$name, SetError> {
                let mut acc = $name::empty(cone);
                for a in fam {
                    acc.same_cone(a)?;
                    acc.poly = acc.poly.hull_union(&a.poly);
                }
                Ok(acc)
            }

            /// Intersection, `Z` for an empty family.
            fn meet_family(cone: &Cone2, fam: &[$name]) -> Result<$name, SetError> {
                let mut acc = $name::whole(cone);
                for a in fam {
                    acc.same_cone(a)?;
                    acc.poly = acc.poly.intersect(&a.poly);
                }
                Ok(acc)
            }

            pub fn approx_eq(&self, o: &$name, tol: f64) -> bool {
                self.poly.approx_eq(&o.poly, tol)
            }

            pub fn contains(&self, z: P2) -> bool {
                self.poly.contains(z, GEOM_TOL)
            }
        }
    };
}

#[derive(Serialize, Deserialize)]
struct SetRepr {
    poly: ConvexPoly2,
    cone: Cone2,
}

/// An element of `Q▵`: a closed convex set with `A = cl co(A + C)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SetRepr", into = "SetRepr")]
pub struct UpSet {
    poly: ConvexPoly2,
    cone: Cone2,
}

/// An element of `Q▿`: a closed convex set with `A = cl co(A − C)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SetRepr", into = "SetRepr")]
pub struct DownSet {
    poly: ConvexPoly2,
    cone: Cone2,
}

shared_set_api!(UpSet);
shared_set_api!(DownSet);

impl TryFrom<SetRepr> for UpSet {
    type Error = SetError;

    fn try_from(r: SetRepr) -> Result<UpSet, SetError> {
        UpSet::new(r.poly, &r.cone)
    }
}

impl From<UpSet> for SetRepr {
    fn from(a: UpSet) -> SetRepr {
        SetRepr { poly: a.poly, cone: a.cone }
    }
}

impl TryFrom<SetRepr> for DownSet {
    type Error = SetError;

    fn try_from(r: SetRepr) -> Result<DownSet, SetError> {
        DownSet::new(r.poly, &r.cone)
    }
}

impl From<DownSet> for SetRepr {
    fn from(a: DownSet) -> SetRepr {
        SetRepr { poly: a.poly, cone: a.cone }
    }
}

impl UpSet {
    /// Accepts `poly` only if its recession cone already contains `C`.
    pub fn new(poly: ConvexPoly2, cone: &Cone2) -> Result<UpSet, SetError> {
        if !recession_contains(&poly, cone.gens()) {
            return Err(SetError::NotUpperSet);
        }
        Ok(UpSet { poly, cone: cone.clone() })
    }

    /// `cl co(P + C)`.
    pub fn generated(poly: &ConvexPoly2, cone: &Cone2) -> UpSet {
        UpSet { poly: poly.minkowski_sum(&cone.poly()), cone: cone.clone() }
    }

    /// `v + C`.
    pub fn translate_cone(cone: &Cone2, v: P2) -> UpSet {
        UpSet::generated(&ConvexPoly2::point(v), cone)
    }

    /// `t·A` with `0·A = cl C`.
    pub fn scale(&self, t: f64) -> UpSet {
        assert!(t >= 0.0, "scale factor must be non-negative");
        if t == 0.0 {
            return UpSet { poly: self.cone.poly(), cone: self.cone.clone() };
        }
        UpSet { poly: self.poly.scale(t), cone: self.cone.clone() }
    }

    /// `inf 𝒜 = cl co ⋃ 𝒜` (w.r.t. `⊇`).
    pub fn inf_family(cone: &Cone2, fam: &[UpSet]) -> Result<UpSet, SetError> {
        UpSet::hull_family(cone, fam)
    }

    /// `sup 𝒜 = ⋂ 𝒜`.
    pub fn sup_family(cone: &Cone2, fam: &[UpSet]) -> Result<UpSet, SetError> {
        UpSet::meet_family(cone, fam)
    }

    /// Inf-difference `A ⊖ B = {z : B + z ⊆ A}`.
    pub fn idif(&self, b: &UpSet) -> Result<UpSet, SetError> {
        self.residual(b)
    }

    /// `σ▵_A(z*) = inf_{z ∈ A} −z*·z`.
    pub fn support(&self, zstar: P2) -> UpReal {
        UpReal::from_ext(self.poly.support(zstar).negate())
    }

    pub fn neg(&self) -> DownSet {
        DownSet { poly: self.poly.neg(), cone: self.cone.clone() }
    }

    /// `A = cl co(A + C)` up to tolerance.
    pub fn satisfies_invariant(&self) -> bool {
        UpSet::generated(&self.poly, &self.cone).approx_eq(self, EQ_TOL)
    }

    /// `A ⊇ B`, i.e. `A ≤ B` in `Q▵`.
    pub fn includes(&self, b: &UpSet) -> bool {
        b.poly.is_subset_of(&self.poly, EQ_TOL)
    }
}

impl DownSet {
    pub fn new(poly: ConvexPoly2, cone: &Cone2) -> Result<DownSet, SetError> {
        if !recession_contains(&poly, cone.neg().gens()) {
            return Err(SetError::NotLowerSet);
        }
        Ok(DownSet { poly, cone: cone.clone() })
    }

    /// `cl co(P − C)`.
    pub fn generated(poly: &ConvexPoly2, cone: &Cone2) -> DownSet {
        DownSet { poly: poly.minkowski_sum(&cone.neg().poly()), cone: cone.clone() }
    }

    /// `t·A` with `0·A = −cl C`.
    pub fn scale(&self, t: f64) -> DownSet {
        assert!(t >= 0.0, "scale factor must be non-negative");
        if t == 0.0 {
            return DownSet { poly: self.cone.neg().poly(), cone: self.cone.clone() };
        }
        DownSet { poly: self.poly.scale(t), cone: self.cone.clone() }
    }

    /// `sup 𝒜 = cl co ⋃ 𝒜` (w.r.t. `⊆`).
    pub fn sup_family(cone: &Cone2, fam: &[DownSet]) -> Result<DownSet, SetError> {
        DownSet::hull_family(cone, fam)
    }

    /// `inf 𝒜 = ⋂ 𝒜`.
    pub fn inf_family(cone: &Cone2, fam: &[DownSet]) -> Result<DownSet, SetError> {
        DownSet::meet_family(cone, fam)
    }

    /// Sup-difference `A ⊘ B = {z : B + z ⊆ A}`.
    pub fn sdif(&self, b: &DownSet) -> Result<DownSet, SetError> {
        self.residual(b)
    }

    /// `σ▿_A(z*) = sup_{z ∈ A} −z*·z`.
    pub fn support(&self, zstar: P2) -> DownReal {
        DownReal::from_ext(self.poly.support([-zstar[0], -zstar[1]]))
    }

    pub fn neg(&self) -> UpSet {
        UpSet { poly: self.poly.neg(), cone: self.cone.clone() }
    }

    pub fn satisfies_invariant(&self) -> bool {
        DownSet::generated(&self.poly, &self.cone).approx_eq(self, EQ_TOL)
    }
}

pub fn oplus(a: &UpSet, b: &UpSet) -> Result<UpSet, SetError> {
    a.oplus(b)
}

pub fn scale_set(t: f64, a: &UpSet) -> UpSet {
    a.scale(t)
}

pub fn inf_family(cone: &Cone2, fam: &[UpSet]) -> Result<UpSet, SetError> {
    UpSet::inf_family(cone, fam)
}

pub fn sup_family(cone: &Cone2, fam: &[UpSet]) -> Result<UpSet, SetError> {
    UpSet::sup_family(cone, fam)
}

pub fn set_idif(a: &UpSet, b: &UpSet) -> Result<UpSet, SetError> {
    a.idif(b)
}

pub fn set_sdif(a: &DownSet, b: &DownSet) -> Result<DownSet, SetError> {
    a.sdif(b)
}

pub fn support_up(d: &UpSet, zstar: P2) -> UpReal {
    d.support(zstar)
}

pub fn support_down(d: &DownSet, zstar: P2) -> DownReal {
    d.support(zstar)
}

/// `{z : s ≤ −z*·z}` for an extended real `s`.
pub fn level_halfplane(cone: &Cone2, zstar: P2, s: Ext) -> UpSet {
    match s {
        Ext::NegInf => UpSet::whole(cone),
        Ext::PosInf => UpSet::empty(cone),
        Ext::Finite(v) => UpSet::halfplane(cone, zstar, -v),
    }
}

/// `H(z*) = {z : z*·z ≤ 0}`.
pub fn h_of(cone: &Cone2, zstar: P2) -> UpSet {
    UpSet::halfplane(cone, zstar, 0.0)
}

/// The dual directions used to describe `A ⊖ B`: facet normals of `A` and
/// the generators of `C⁻`, without `0`.
pub fn default_zstars(a: &UpSet) -> Vec<P2> {
    let mut out: Vec<P2> = a.poly().hrep().iter().map(|h| h.n).collect();
    out.extend(a.cone().dual().gens().iter().copied());
    out.retain(|z| z[0] != 0.0 || z[1] != 0.0);
    let mut uniq: Vec<P2> = Vec::new();
    for z in out {
        if !uniq.iter().any(|u| (u[0] - z[0]).abs() < 1e-9 && (u[1] - z[1]).abs() < 1e-9) {
            uniq.push(z);
        }
    }
    uniq
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalarDiffCheck {
    pub zstar: P2,
    /// `σ▵_{A⊖B}(z*)`.
    pub lhs: UpReal,
    /// `σ▵_A(z*) ⊖ σ▵_B(z*)`.
    pub rhs: UpReal,
    /// `A ⊕ H(z*) = A`, in which case equality is expected.
    pub equality_expected: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetDiffReport {
    pub by_shift: UpSet,
    pub by_support: UpSet,
    pub hausdorff: f64,
    pub equal: bool,
    pub scalar: Vec<ScalarDiffCheck>,
    pub holds: bool,
}

/// Compares the facet-shift difference with its support-function
/// description `⋂ {z : σ▵_A(z*) ⊖ σ▵_B(z*) ≤ −z*·z}`.
pub fn setdiff_support_check(a: &UpSet, b: &UpSet, zstars: &[P2], tol: f64) -> Result<SetDiffReport, SetError> {
    let by_shift = a.idif(b)?;
    let cone = a.cone();
    let mut by_support = UpSet::whole(cone);
    let mut scalar = Vec::new();
    for &zs in zstars.iter().filter(|z| z[0] != 0.0 || z[1] != 0.0) {
        let d = a.support(zs).idif(b.support(zs));
        by_support = by_support.sup_family_pair(&level_halfplane(cone, zs, d.ext()))?;
        let lhs = by_shift.support(zs);
        let equality_expected = a.oplus(&h_of(cone, zs))?.approx_eq(a, EQ_TOL);
        let ok = if equality_expected { lhs.approx_eq(d, tol) } else { lhs >= d || lhs.approx_eq(d, tol) };
        scalar.push(ScalarDiffCheck { zstar: zs, lhs, rhs: d, equality_expected, ok });
    }
    let hausdorff = by_shift.poly().hausdorff_vertex(by_support.poly());
    let equal = hausdorff <= tol.max(EQ_TOL);
    let holds = equal && scalar.iter().all(|s| s.ok);
    Ok(SetDiffReport { by_shift, by_support, hausdorff, equal, scalar, holds })
}

impl UpSet {
    fn sup_family_pair(&self, o: &UpSet) -> Result<UpSet, SetError> {
        UpSet::sup_family(&self.cone, &[self.clone(), o.clone()])
    }
}
