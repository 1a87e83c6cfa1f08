//! The dilation map `L_T h = D_{T*} ∏ (I − z_i T_i*)⁻¹ h`, truncated to a box
//! of multi-indices, and the checks that certify it is a minimal isometric
//! dilation of the tuple.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hardy::{coshift_matrix, kernel_vector, shift_matrix, TruncatedHardySpace};
use crate::matrixcore::{
    identity, operator_norm, orthonormal_range_basis, subspace_distance, CMat, CVec,
    ToleranceConfig, ONE,
};
use crate::tuples::{defect_operators, ContractionTuple, DefectData};

/// First degree tried by [`build_dilation_adaptive`].
pub const START_DEGREE: usize = 8;
/// Largest per-variable degree the adaptive builder will try.
pub const MAX_DEGREE: usize = 4096;
/// Upper bound on the number of stored matrix entries.
pub const ENTRY_BUDGET: usize = 1 << 24;

/// Truncated matrix of `L_T` from `ℋ` into `H²_{𝒟_{T*}}(𝔻ⁿ)`.
///
/// The coefficient space is expressed in the coordinates of
/// `defects.big_defect_basis`, so its dimension is the rank of `D_{T*}`.
#[derive(Clone, Debug)]
pub struct DilationMap {
    pub tuple: ContractionTuple,
    pub defects: DefectData,
    pub space: TruncatedHardySpace,
    pub matrix: CMat,
}

impl DilationMap {
    pub fn degree(&self) -> usize {
        self.space.degree()
    }

    pub fn n(&self) -> usize {
        self.tuple.n()
    }

    /// `D_{T*}` followed by the coordinate map onto `𝒟_{T*}`.
    pub fn constant_block(&self) -> CMat {
        self.matrix.rows(0, self.space.coeff_dim()).into_owned()
    }
}

fn dilation_rows(n: usize, degree: usize, rank: usize) -> Option<usize> {
    (degree + 1)
        .checked_pow(n as u32)
        .and_then(|idx| idx.checked_mul(rank))
}

/// Build `L_T` at a fixed truncation degree.
///
/// The coefficient at `k` is `Bᴴ D_{T*} T^{*k}`, filled in graded order from
/// a predecessor `k − e_i` so each block costs one matrix product.
pub fn build_dilation(
    t: &ContractionTuple,
    degree: usize,
    cfg: &ToleranceConfig,
) -> Result<DilationMap> {
    let defects = defect_operators(t, cfg)?;
    build_with_defects(t, defects, degree)
}

fn build_with_defects(
    t: &ContractionTuple,
    defects: DefectData,
    degree: usize,
) -> Result<DilationMap> {
    let n = t.n();
    let dim = t.dim();
    let rank = defects.rank();
    let rows = dilation_rows(n, degree, rank).ok_or(Error::SpaceTooLarge { dim: usize::MAX })?;
    if rows.saturating_mul(dim) > ENTRY_BUDGET {
        return Err(Error::SpaceTooLarge { dim: rows });
    }
    let space = TruncatedHardySpace::new(n, degree, rank);
    let adjoints: Vec<CMat> = t.matrices().iter().map(|m| m.adjoint()).collect();
    let base = defects.big_defect_basis.adjoint() * &defects.big_defect;
    let mut matrix = CMat::zeros(space.dim(), dim);
    if rank > 0 {
        matrix.rows_mut(0, rank).copy_from(&base);
        for p in 1..space.num_indices() {
            let k = space.index(p).0.clone();
            let i = k
                .iter()
                .position(|&ki| ki > 0)
                .expect("nonzero multi-index");
            let mut prev = k;
            prev[i] -= 1;
            let q = space
                .position_of(&prev)
                .expect("predecessor inside the box");
            let block = matrix.rows(q * rank, rank) * &adjoints[i];
            matrix.rows_mut(p * rank, rank).copy_from(&block);
        }
    }
    Ok(DilationMap {
        tuple: t.clone(),
        defects,
        space,
        matrix,
    })
}

/// Start at [`START_DEGREE`] and double until the isometry defect and the
/// intertwining residuals are at most `tail_tol`.
pub fn build_dilation_adaptive(t: &ContractionTuple, cfg: &ToleranceConfig) -> Result<DilationMap> {
    build_dilation_from(t, START_DEGREE, cfg)
}

pub fn build_dilation_from(
    t: &ContractionTuple,
    start: usize,
    cfg: &ToleranceConfig,
) -> Result<DilationMap> {
    let defects = defect_operators(t, cfg)?;
    let mut degree = start.max(1);
    let mut achieved = f64::INFINITY;
    loop {
        let map = match build_with_defects(t, defects.clone(), degree) {
            Ok(map) => map,
            Err(Error::SpaceTooLarge { .. }) => {
                return Err(Error::DegreeCapExceeded {
                    degree: degree / 2,
                    achieved,
                })
            }
            Err(e) => return Err(e),
        };
        achieved = (0..map.n())
            .map(|i| intertwining_residual(&map, i))
            .fold(isometry_defect(&map), f64::max);
        if achieved <= cfg.tail_tol {
            return Ok(map);
        }
        if degree * 2 > MAX_DEGREE {
            return Err(Error::DegreeCapExceeded { degree, achieved });
        }
        degree *= 2;
    }
}

/// `‖I_ℋ − L*L‖`; a sum of dropped nonnegative tail terms.
pub fn isometry_defect(l: &DilationMap) -> f64 {
    let gram = l.matrix.adjoint() * &l.matrix;
    operator_norm(&(identity(gram.nrows()) - gram))
}

/// `‖L T_i* − M_{z_i}* L‖`, nonzero only on the top layer `k_i = d`.
pub fn intertwining_residual(l: &DilationMap, i: usize) -> f64 {
    let lhs = &l.matrix * l.tuple.get(i).adjoint();
    let rhs = coshift_matrix(&l.space, i).apply(&l.matrix);
    operator_norm(&(lhs - rhs))
}

/// `∏ (I − w̄_i T_i)⁻¹ x`.
pub fn resolvent_product(t: &ContractionTuple, w: &[Complex64], x: &CVec) -> Result<CVec> {
    let dim = t.dim();
    let mut out = x.clone();
    for (m, wi) in t.matrices().iter().zip(w) {
        let a = identity(dim) - m * wi.conj();
        out = a.lu().solve(&out).ok_or(Error::ResolventSingular)?;
    }
    Ok(out)
}

/// Max over samples of `‖L*(𝕊(·,w)η) − ∏(I − w̄_iT_i)⁻¹ D_{T*} η‖`, with `η`
/// given in joint-defect coordinates.
pub fn adjoint_on_kernels_check(
    l: &DilationMap,
    samples: &[(Vec<Complex64>, CVec)],
) -> Result<f64> {
    let mut worst = 0.0f64;
    let embed = &l.defects.big_defect * &l.defects.big_defect_basis;
    for (w, eta) in samples {
        let kv = kernel_vector(&l.space, w, eta)?;
        let lhs = l.matrix.adjoint() * kv;
        let rhs = resolvent_product(&l.tuple, w, &(&embed * eta))?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Distance between the range of the degree-zero block `(L h)(0) = D_{T*}h`
/// and the whole coefficient space `𝒟_{T*}`.
pub fn minimality_check(l: &DilationMap, cfg: &ToleranceConfig) -> f64 {
    let block = l.constant_block();
    let range = orthonormal_range_basis(&block, cfg);
    let full = identity(l.space.coeff_dim());
    subspace_distance(&range, &full).expect("same coefficient dimension")
}

/// `‖L* M_{z_i} L − T_i‖` for each variable.
pub fn compressed_tuple_residual(l: &DilationMap) -> Vec<f64> {
    (0..l.n())
        .map(|i| {
            let shifted = shift_matrix(&l.space, i).apply(&l.matrix);
            let compressed = l.matrix.adjoint() * shifted;
            operator_norm(&(compressed - l.tuple.get(i)))
        })
        .collect()
}

/// `L h` for a single vector.
pub fn apply(l: &DilationMap, h: &CVec) -> CVec {
    &l.matrix * h
}

/// Unit vector helper for samples in joint-defect coordinates.
pub fn unit(len: usize, at: usize) -> CVec {
    let mut v = CVec::zeros(len);
    v[at] = ONE;
    v
}
