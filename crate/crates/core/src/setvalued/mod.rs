//! Set-valued convex analysis with values in the lattices `Q▵`/`Q▿` of
//! polyhedral subsets of `Z = ℝ²`.
//!
//! Sets are ordered by `⊇` in `Q▵`, so `∅` is the greatest element and `Z`
//! the least. A [`SetValuedFn`] maps `x ∈ ℝ` to the slice of a polyhedral
//! graph in `ℝ³`; everything else is reduced to scalar calculus through
//! the support scalarizations `φ▵_{g,z*}`.

mod function;
mod sets;

use thiserror::Error;

use crate::scalar_fn::PlError;

pub use function::{
    conaffine_eval, conaffine_graph, conjugate_oracle, improper_conaffine_sup, improper_set_minorant, properness,
    scalarize, scalarized_conaffine, sv_biconjugate, sv_biconjugate_scalar, sv_conjugate, sv_minorant_conditions,
    DualTriple, Properness, SetMinorantReport, SetValuedFn, SetValuedUnion, SvFunction,
};
pub use sets::{
    default_zstars, h_of, inf_family, level_halfplane, oplus, scale_set, set_idif, set_sdif, setdiff_support_check,
    sup_family, support_down, support_up, DownSet, ScalarDiffCheck, SetDiffReport, UpSet,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SetError {
    #[error("operands are taken over different ordering cones")]
    ConeMismatch,
    #[error("set is not stable under +C")]
    NotUpperSet,
    #[error("set is not stable under -C")]
    NotLowerSet,
    #[error("z* = ({0}, {1}) is not in the dual cone C⁻")]
    NotInDualCone(f64, f64),
    #[error("graph recession cone does not contain {{0}} x C (row {0})")]
    BadGraph(usize),
    #[error("union hull is not full-dimensional")]
    UnionHull,
    #[error(transparent)]
    Scalar(#[from] PlError),
}
