//! Characteristic functions, multipliers, kernel identities and the model
//! space of a doubly commuting pure tuple.

mod charfn;
mod kernels;
mod projections;

pub use charfn::{
    charfn_eval, charfn_taylor, inner_boundary_check, kernel_identity_check, mobius_coefficients,
    multiplier_matrix, toeplitz_matrix, CharFn, OneVarMultiplier,
};
pub use kernels::{
    defect_invariance_check, gramian_kernel_check, product_kernel_identity_check,
    sample_point_pairs, PointPair,
};
pub use projections::{
    apply_complement, commutator_bound, complement_range, gramian_identity_check, model_space,
    sum_projection, variable_projection, GramianMode, ModelSpaces, VariableProjection, DENSE_LIMIT,
};

use crate::error::Result;
use crate::hardy::TruncatedHardySpace;
use crate::matrixcore::ToleranceConfig;
use crate::tuples::ContractionTuple;

/// Characteristic function of every operator in the tuple.
pub fn characteristic_functions(
    t: &ContractionTuple,
    m_max: usize,
    cfg: &ToleranceConfig,
) -> Result<Vec<CharFn>> {
    t.matrices()
        .iter()
        .enumerate()
        .map(|(i, m)| charfn_taylor(i, m, m_max, cfg))
        .collect()
}

/// Truncated multipliers on the box of `space`.
pub fn build_multipliers(charfns: &[CharFn], space: &TruncatedHardySpace) -> Vec<OneVarMultiplier> {
    charfns
        .iter()
        .map(|cf| multiplier_matrix(cf, space))
        .collect()
}
