//! Extended-real convex analysis with residuated arithmetic.
//!
//! Modules follow the layering of the algebra: [`extreal`] (the two image
//! spaces), [`residuation`] (finite residuation checks), [`scalar_fn`]
//! (functions into the extended reals), [`calculus`] (derivatives,
//! conjugates, infimal convolution), [`geometry`] and [`setvalued`]
//! (polyhedral sets in the plane and set-valued conjugation).

pub mod calculus;
pub mod cli;
pub mod extreal;
pub mod geometry;
pub mod io;
pub mod plot;
pub mod random;
pub mod residuation;
pub mod scalar_fn;
pub mod setvalued;
pub mod suites;
