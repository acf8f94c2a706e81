//! Exact low-dimensional polyhedral geometry: planar polyhedra and cones
//! for the image space, and halfspace systems in `X × Z = ℝ³` for graphs.

pub mod cone;
pub mod poly2;
pub mod space;
pub mod vec;

pub use cone::{Cone2, ConeKind};
pub use poly2::{ConvexPoly2, Halfplane};
pub use space::{fm_eliminate, Halfspace3, Ineq, Poly3};
pub use vec::{P2, P3};
