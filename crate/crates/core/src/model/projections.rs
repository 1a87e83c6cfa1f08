//! Commuting projections, the Gramian identity on truncated spaces, and the
//! model space `𝒮_T` with its complement `𝒬_T`.

use nalgebra::linalg::SymmetricEigen;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::charfn::{CharFn, OneVarMultiplier};
use super::kernels::{gramian_kernel_check, PointPair};
use crate::dilation::{compressed_tuple_residual, DilationMap};
use crate::error::{Error, Result};
use crate::hardy::{TruncatedHardySpace, VariableOperator};
use crate::matrixcore::{
    c, gram_difference_norm, hermitian_max_abs_eigenvalue, hermitian_part, identity, operator_norm,
    orthonormal_range_basis, range_basis_above, CMat, ToleranceConfig,
};

/// Largest dense matrix side built by the operator-mode and dense accessors.
pub const DENSE_LIMIT: usize = 2048;

const RANGE_SEED: u64 = 0x5eed_0f_5ace;
const OVERSAMPLE: usize = 8;

/// `I − ∏(I − P_i)` for commuting orthogonal projections.
pub fn sum_projection(projections: &[CMat], cfg: &ToleranceConfig) -> Result<CMat> {
    let dim = match projections.first() {
        Some(p) => p.nrows(),
        None => return Err(Error::InvalidInput("no projections".into())),
    };
    for p in projections {
        if p.nrows() != dim || p.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.nrows().max(p.ncols()),
            });
        }
        let residual = projection_residual(p);
        if residual > cfg.check_tol {
            return Err(Error::NotProjection { residual });
        }
    }
    for (a, p) in projections.iter().enumerate() {
        for q in &projections[a + 1..] {
            let residual = operator_norm(&(p * q - q * p));
            if residual > cfg.check_tol {
                return Err(Error::NotCommuting { residual });
            }
        }
    }
    let id = identity(dim);
    let complement = projections
        .iter()
        .fold(id.clone(), |acc, p| acc * (&id - p));
    let sum = id - complement;
    let residual = projection_residual(&sum);
    if residual > cfg.check_tol {
        return Err(Error::NotProjection { residual });
    }
    Ok(sum)
}

fn projection_residual(p: &CMat) -> f64 {
    operator_norm(&(p - p.adjoint())).max(operator_norm(&(p * p - p)))
}

/// `M_{Θ_i}M_{Θ_i}*` restricted to the joint-defect-valued space, acting on
/// variable `i` only.
#[derive(Clone, Debug)]
pub struct VariableProjection {
    pub var: usize,
    /// Symmetrized truncated `M_Θ M_Θ*`.
    pub raw: VariableOperator,
    /// Eigenvalues rounded at 1/2.
    pub clipped: VariableOperator,
    /// Orthonormal basis of the clipped range in one-variable coordinates.
    pub range: CMat,
    /// `‖B² − B‖` on the margin layers of the raw operator.
    pub idempotency_drift: f64,
    /// `‖clipped − B‖` on the margin layers.
    pub clip_drift: f64,
}

/// `(I_{d+1} ⊗ Jᴴ)` applied on the left, where `J` embeds joint-defect
/// coordinates into the coordinates of `𝒟_{T_i*}`.
fn restrict_rows(local: &CMat, embed: &CMat, side: usize) -> CMat {
    let (out, inner) = embed.shape();
    let mut res = CMat::zeros(side * inner, local.ncols());
    for m in 0..side {
        let block = embed.adjoint() * local.rows(m * out, out);
        res.rows_mut(m * inner, inner).copy_from(&block);
    }
    res
}

fn leading(m: &CMat, rows: usize) -> CMat {
    m.view((0, 0), (rows, rows)).into_owned()
}

/// Build `P_i` from a multiplier, given the joint-defect embedding and the
/// margin in layers.
pub fn variable_projection(
    mult: &OneVarMultiplier,
    embed: &CMat,
    margin: usize,
) -> VariableProjection {
    let side = mult.space.degree() + 1;
    let r = embed.ncols();
    let k = restrict_rows(mult.toeplitz(), embed, side);
    let raw = hermitian_part(&(&k * k.adjoint()));

    let eig = SymmetricEigen::new(raw.clone());
    let keep: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&j| eig.eigenvalues[j] > 0.5)
        .collect();
    let mut range = CMat::zeros(raw.nrows(), keep.len());
    for (col, &j) in keep.iter().enumerate() {
        range.set_column(col, &eig.eigenvectors.column(j));
    }
    let clipped = &range * range.adjoint();

    let rows = (side - margin.min(side)) * r;
    let raw_m = leading(&raw, rows);
    let square_m = leading(&(&raw * &raw), rows);
    let idempotency_drift = operator_norm(&(square_m - &raw_m));
    let clip_drift = operator_norm(&(leading(&clipped, rows) - raw_m));

    VariableProjection {
        var: mult.operator.var,
        raw: VariableOperator::new(mult.operator.var, r, r, raw),
        clipped: VariableOperator::new(mult.operator.var, r, r, clipped),
        range,
        idempotency_drift,
        clip_drift,
    }
}

/// Frobenius bound on `‖[P_i, P_j]‖` restricted to the margin layers.
///
/// Entries of the commutator at rows `(k_i, k_j)` and columns `(l_i, l_j)`
/// are the block commutators `[X_{k_i l_i}, Y_{k_j l_j}]`, repeated once for
/// every value of the remaining variables.
pub fn commutator_bound(x: &CMat, y: &CMat, r: usize, layers: usize, n: usize) -> f64 {
    let block = |m: &CMat, a: usize, b: usize| m.view((a * r, b * r), (r, r)).into_owned();
    let mut total = 0.0;
    for ka in 0..layers {
        for la in 0..layers {
            let xb = block(x, ka, la);
            for kb in 0..layers {
                for lb in 0..layers {
                    let yb = block(y, kb, lb);
                    total += (&xb * &yb - &yb * &xb).norm_squared();
                }
            }
        }
    }
    let others = layers.pow(n.saturating_sub(2) as u32);
    (total * others as f64).sqrt()
}

/// Which form of the Gramian identity to check.
#[derive(Clone, Debug)]
pub enum GramianMode {
    /// Closed-form reproducing kernels at sample pairs.
    Kernel(Vec<PointPair>),
    /// Truncated `L L*` against `∏(I − M_Θ M_Θ*)` on margin layers.
    Operator { margin: usize },
}

/// Residual of the Gramian identity in the requested mode.
pub fn gramian_identity_check(
    l: &DilationMap,
    multipliers: &[OneVarMultiplier],
    mode: &GramianMode,
) -> Result<f64> {
    match mode {
        GramianMode::Kernel(samples) => {
            let charfns: Vec<CharFn> = multipliers.iter().map(|m| m.char_fn.clone()).collect();
            gramian_kernel_check(&l.defects, &charfns, samples)
        }
        GramianMode::Operator { margin } => {
            let degree = l.degree();
            if *margin >= degree.max(1) {
                return Err(Error::MarginTooLarge {
                    margin: *margin,
                    degree,
                });
            }
            let rows = l.space.rows_of(&l.space.margin_positions(*margin));
            if rows.len() > DENSE_LIMIT {
                return Err(Error::SpaceTooLarge { dim: rows.len() });
            }
            let embed = embedding(l, multipliers);
            let raws: Vec<VariableOperator> = multipliers
                .iter()
                .zip(&embed)
                .map(|(m, j)| variable_projection(m, j, *margin).raw)
                .collect();
            let mut x = selector(l.space.dim(), &rows);
            for op in raws.iter().rev() {
                x -= op.apply(&l.space, &x);
            }
            let product = x.select_rows(&rows);
            let lm = l.matrix.select_rows(&rows);
            let gram = &lm * lm.adjoint();
            Ok(hermitian_max_abs_eigenvalue(&hermitian_part(
                &(gram - product),
            )))
        }
    }
}

fn selector(dim: usize, rows: &[usize]) -> CMat {
    let mut s = CMat::zeros(dim, rows.len());
    for (col, &r) in rows.iter().enumerate() {
        s[(r, col)] = c(1.0, 0.0);
    }
    s
}

/// Per-variable embeddings of joint-defect coordinates into `𝒟_{T_i*}`
/// coordinates.
fn embedding(l: &DilationMap, multipliers: &[OneVarMultiplier]) -> Vec<CMat> {
    multipliers
        .iter()
        .map(|m| m.char_fn.defects.basis_star.adjoint() * &l.defects.big_defect_basis)
        .collect()
}

/// `𝒮_T` through its per-variable projections and `𝒬_T = ran L_T`.
#[derive(Clone, Debug)]
pub struct ModelSpaces {
    pub space: TruncatedHardySpace,
    pub margin: usize,
    pub projections: Vec<VariableProjection>,
    /// Orthonormal basis of `ran L`.
    pub q_basis: CMat,
    /// Orthonormal basis of `ran ∏(I − P_i)`.
    pub complement_basis: CMat,
    /// Frobenius bound on the pairwise commutators on margin layers.
    pub commutator_bound: f64,
    /// `‖P_{ran L} − P_{complement}‖` on margin layers.
    pub complement_distance: f64,
    /// `‖L* M_{z_i} L − T_i‖` per variable.
    pub compression_residuals: Vec<f64>,
}

impl ModelSpaces {
    /// `∏(I − P_i) x`.
    pub fn apply_complement(&self, x: &CMat) -> CMat {
        apply_complement(&self.space, &self.clipped_operators(), x)
    }

    /// `(I − ∏(I − P_i)) x`.
    pub fn apply_s_projection(&self, x: &CMat) -> CMat {
        x - self.apply_complement(x)
    }

    /// Dense projection onto `𝒮_T`.
    pub fn s_projection(&self) -> Result<CMat> {
        let dim = self.space.dim();
        if dim > DENSE_LIMIT {
            return Err(Error::SpaceTooLarge { dim });
        }
        Ok(self.apply_s_projection(&identity(dim)))
    }

    pub fn max_idempotency_drift(&self) -> f64 {
        self.projections
            .iter()
            .map(|p| p.idempotency_drift)
            .fold(0.0, f64::max)
    }

    pub fn max_clip_drift(&self) -> f64 {
        self.projections
            .iter()
            .map(|p| p.clip_drift)
            .fold(0.0, f64::max)
    }

    pub fn margin_rows(&self) -> Vec<usize> {
        self.space
            .rows_of(&self.space.margin_positions(self.margin))
    }

    pub fn clipped_operators(&self) -> Vec<VariableOperator> {
        self.projections.iter().map(|p| p.clipped.clone()).collect()
    }
}

/// `∏(I − P_i) x` for per-variable operators `P_i`.
pub fn apply_complement(space: &TruncatedHardySpace, ops: &[VariableOperator], x: &CMat) -> CMat {
    let mut y = x.clone();
    for op in ops.iter().rev() {
        y -= op.apply(space, &y);
    }
    y
}

/// Orthonormal basis of the range of `∏(I − P_i)`: randomized range finder
/// with one power step, keeping directions the product maps to length above
/// 1/2. `target` is the expected rank.
pub fn complement_range(
    space: &TruncatedHardySpace,
    ops: &[VariableOperator],
    target: usize,
    cfg: &ToleranceConfig,
) -> CMat {
    let dim = space.dim();
    let apply = |x: &CMat| apply_complement(space, ops, x);
    let mut rng = ChaCha8Rng::seed_from_u64(RANGE_SEED);
    let mut width = (target + OVERSAMPLE).min(dim);
    loop {
        let omega = CMat::from_fn(dim, width, |_, _| {
            c(
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
            )
        });
        let y = apply(&orthonormal_range_basis(&apply(&omega), cfg));
        let u = orthonormal_range_basis(&y, cfg);
        let basis = range_basis_above(&apply(&u), 0.5);
        if basis.ncols() < width || width == dim {
            return basis;
        }
        width = (2 * width).min(dim);
    }
}

/// Build the model space from a dilation and its multipliers.
///
/// `margin` defaults to half the degree.
pub fn model_space(
    l: &DilationMap,
    multipliers: &[OneVarMultiplier],
    margin: Option<usize>,
    cfg: &ToleranceConfig,
) -> Result<ModelSpaces> {
    let degree = l.degree();
    let margin = margin.unwrap_or(degree / 2);
    if margin >= degree.max(1) {
        return Err(Error::MarginTooLarge { margin, degree });
    }
    if multipliers.len() != l.n() {
        return Err(Error::DimensionMismatch {
            expected: l.n(),
            found: multipliers.len(),
        });
    }
    let embed = embedding(l, multipliers);
    let projections: Vec<VariableProjection> = multipliers
        .iter()
        .zip(&embed)
        .map(|(m, j)| variable_projection(m, j, margin))
        .collect();
    let drift = projections
        .iter()
        .map(|p| p.idempotency_drift)
        .fold(0.0, f64::max);
    if drift > cfg.tail_tol {
        return Err(Error::ProjectionDriftExceedsTolerance {
            drift,
            tolerance: cfg.tail_tol,
        });
    }

    let r = l.space.coeff_dim();
    let layers = degree + 1 - margin;
    let mut commutator = 0.0f64;
    for (a, p) in projections.iter().enumerate() {
        for q in &projections[a + 1..] {
            let bound = commutator_bound(&p.clipped.local, &q.clipped.local, r, layers, l.n());
            commutator = commutator.max(bound);
        }
    }

    let q_basis = orthonormal_range_basis(&l.matrix, cfg);
    let mut model = ModelSpaces {
        space: l.space.clone(),
        margin,
        projections,
        q_basis,
        complement_basis: CMat::zeros(0, 0),
        commutator_bound: commutator,
        complement_distance: 0.0,
        compression_residuals: compressed_tuple_residual(l),
    };
    model.complement_basis = complement_range(
        &model.space,
        &model.clipped_operators(),
        model.q_basis.ncols(),
        cfg,
    );
    let rows = model.margin_rows();
    model.complement_distance = gram_difference_norm(
        &model.q_basis.select_rows(&rows),
        &model.complement_basis.select_rows(&rows),
    )?;
    Ok(model)
}
