//! One-variable fibers of the model space, their wandering subspaces and
//! inner functions, and the scalar rank-one round trip.

use nalgebra::linalg::SymmetricEigen;

use crate::dilation::build_dilation;
use crate::error::{Error, Result};
use crate::hardy::{coshift_matrix, shift_matrix, TruncatedHardySpace, VariableOperator};
use crate::matrixcore::{
    gram_difference_norm, hermitian_part, normalize_phase, operator_norm, orthonormal_range_basis,
    spectral_radius, CMat, CVec, ToleranceConfig,
};
use crate::model::{
    build_multipliers, characteristic_functions, complement_range, model_space, toeplitz_matrix,
    ModelSpaces,
};
use crate::tuples::{defect_operators, ContractionTuple};

/// A subspace of a truncated Hardy space given by an orthonormal basis.
#[derive(Clone, Debug)]
pub struct InvariantSubspace {
    pub ambient: TruncatedHardySpace,
    pub basis: CMat,
    /// `‖R(I − UUᴴ) M_{z_i} U‖` with `R` the margin-layer rows.
    pub shift_invariance_residual: Vec<f64>,
}

impl InvariantSubspace {
    pub fn new(ambient: TruncatedHardySpace, basis: CMat, margin: usize) -> Self {
        let rows = ambient.rows_of(&ambient.margin_positions(margin));
        let shift_invariance_residual = (0..ambient.n())
            .map(|i| {
                let shifted = shift_matrix(&ambient, i).apply(&basis);
                let outside = &shifted - &basis * (basis.adjoint() * &shifted);
                operator_norm(&outside.select_rows(&rows))
            })
            .collect();
        Self {
            ambient,
            basis,
            shift_invariance_residual,
        }
    }

    /// The model space `𝒮_T` through its per-variable ranges; dense, so only
    /// for small truncations.
    pub fn from_projection_range(
        model: &ModelSpaces,
        i: usize,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        let dense = model.projections[i].clipped.to_dense(&model.space);
        let basis = orthonormal_range_basis(&dense, cfg);
        Ok(Self::new(model.space.clone(), basis, model.margin))
    }
}

/// A shift-invariant subspace of the one-variable truncated `H²_E(𝔻)`.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub var: usize,
    pub degree: usize,
    pub coeff_dim: usize,
    /// Orthonormal basis, coefficient index `(m, a)` with `m` slowest.
    pub basis: CMat,
    /// Gap between the tensor lift of the fiber and the source subspace on
    /// margin layers.
    pub tensor_residual: f64,
}

impl Fiber {
    pub fn is_empty(&self) -> bool {
        self.basis.ncols() == 0
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// Fiber of `ran P_i` read off the structured projection: `P_i = X ⊗ I` on
/// the other variables, so its `k_j = 0` layer is exactly `ran X`.
pub fn fiber_from_model(model: &ModelSpaces, i: usize) -> Fiber {
    let p = &model.projections[i];
    Fiber {
        var: i,
        degree: model.space.degree(),
        coeff_dim: model.space.coeff_dim(),
        basis: p.range.clone(),
        tensor_residual: 0.0,
    }
}

/// Restrict an invariant subspace to the layer `k_j = 0` for all `j ≠ i`,
/// orthonormalize, and compare the tensor lift with the source on margin
/// layers.
pub fn fiber_extract(
    s: &InvariantSubspace,
    i: usize,
    margin: usize,
    cfg: &ToleranceConfig,
) -> Result<Fiber> {
    let space = &s.ambient;
    let n = space.n();
    if i >= n {
        return Err(Error::InvalidInput(format!(
            "variable {i} out of range for {n} variables"
        )));
    }
    let e = space.coeff_dim();
    let side = space.degree() + 1;
    let layer: Vec<usize> = (0..side)
        .map(|m| {
            let mut k = vec![0; n];
            k[i] = m;
            space.position_of(&k).expect("inside the box")
        })
        .collect();
    let restricted = s.basis.select_rows(&space.rows_of(&layer));
    let basis = orthonormal_range_basis(&restricted, cfg);

    let lifted = VariableOperator::new(i, e, e, &basis * basis.adjoint()).to_dense(space);
    let source = &s.basis * s.basis.adjoint();
    let rows = space.rows_of(&space.margin_positions(margin));
    let gap = (lifted - source).select_rows(&rows);
    let tensor_residual = operator_norm(&gap.select_columns(&rows));

    Ok(Fiber {
        var: i,
        degree: space.degree(),
        coeff_dim: e,
        basis,
        tensor_residual,
    })
}

/// One-variable shift on `(m, a)`-indexed coefficients; the top layer falls
/// off.
fn shift_one(x: &CMat, coeff_dim: usize) -> CMat {
    let mut out = CMat::zeros(x.nrows(), x.ncols());
    let keep = x.nrows().saturating_sub(coeff_dim);
    out.rows_mut(coeff_dim, keep).copy_from(&x.rows(0, keep));
    out
}

/// Orthonormal basis of `W = S̃ ⊖ zS̃`, read off `P − S P Sᴴ` with `P` the
/// projection onto `S̃` and `S` the truncated shift: eigenvectors with
/// eigenvalue above 1/2.
///
/// Subtracting spans directly fails under truncation, because the shift
/// drops the top layer and `S(S̃)` fills every nonconstant layer.
pub fn wandering_basis(fiber: &Fiber) -> CMat {
    let u = &fiber.basis;
    if u.ncols() == 0 {
        return CMat::zeros(u.nrows(), 0);
    }
    let shifted = shift_one(u, fiber.coeff_dim);
    let difference = u * u.adjoint() - &shifted * shifted.adjoint();
    let eig = SymmetricEigen::new(hermitian_part(&difference));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&j| eig.eigenvalues[j] > 0.5)
        .collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut w = CMat::zeros(u.nrows(), order.len());
    for (col, &j) in order.iter().enumerate() {
        let mut vec: CVec = eig.eigenvectors.column(j).into_owned();
        normalize_phase(&mut vec);
        w.set_column(col, &vec);
    }
    w
}

/// Columns of a one-variable inner function `Φ_i: ℰ_i → E`.
#[derive(Clone, Debug)]
pub struct InnerColumnSet {
    pub variable: usize,
    pub inner_dim: usize,
    pub coeff_dim: usize,
    /// Taylor coefficients `Φ_m`, each `coeff_dim × inner_dim`.
    pub columns: Vec<CMat>,
    /// `‖TᴴT − I‖` of the truncated Toeplitz matrix on margin layers.
    pub isometry_drift: f64,
}

impl InnerColumnSet {
    pub fn is_zero(&self) -> bool {
        self.inner_dim == 0
    }

    pub fn degree(&self) -> usize {
        self.columns.len().saturating_sub(1)
    }

    pub fn toeplitz(&self) -> CMat {
        toeplitz_matrix(&self.columns, self.coeff_dim, self.inner_dim, self.degree())
    }

    /// Scalar coefficients of column `j` at coefficient row `a`.
    pub fn scalar_series(&self, a: usize, j: usize) -> Vec<num_complex::Complex64> {
        self.columns.iter().map(|m| m[(a, j)]).collect()
    }
}

/// Read the wandering basis as Taylor coefficients of `Φ`.
pub fn inner_from_wandering(
    w: &CMat,
    var: usize,
    coeff_dim: usize,
    margin: usize,
) -> InnerColumnSet {
    let inner_dim = w.ncols();
    let side = if coeff_dim == 0 {
        0
    } else {
        w.nrows() / coeff_dim
    };
    let columns: Vec<CMat> = (0..side)
        .map(|m| w.rows(m * coeff_dim, coeff_dim).into_owned())
        .collect();
    let mut set = InnerColumnSet {
        variable: var,
        inner_dim,
        coeff_dim,
        columns,
        isometry_drift: 0.0,
    };
    if inner_dim > 0 && side > 0 {
        let t = set.toeplitz();
        let gram = t.adjoint() * &t;
        let keep = (side - margin.min(side)) * inner_dim;
        let corner = gram.view((0, 0), (keep, keep)).into_owned();
        set.isometry_drift = operator_norm(&(corner - CMat::identity(keep, keep)));
    }
    set
}

/// Fiber, wandering subspace and inner function for every variable.
pub fn decompose(model: &ModelSpaces) -> Vec<InnerColumnSet> {
    (0..model.space.n())
        .map(|i| {
            let fiber = fiber_from_model(model, i);
            let w = wandering_basis(&fiber);
            inner_from_wandering(&w, i, fiber.coeff_dim, model.margin)
        })
        .collect()
}

/// Range of `T_Φ T_Φᴴ` with eigenvalues rounded at 1/2, as a per-variable
/// projection.
fn inner_projection(inner: &InnerColumnSet, coeff_dim: usize) -> VariableOperator {
    let side = inner.columns.len();
    if inner.is_zero() {
        return VariableOperator::new(
            inner.variable,
            coeff_dim,
            coeff_dim,
            CMat::zeros(side * coeff_dim, side * coeff_dim),
        );
    }
    let t = inner.toeplitz();
    let eig = SymmetricEigen::new(hermitian_part(&(&t * t.adjoint())));
    let keep: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&j| eig.eigenvalues[j] > 0.5)
        .collect();
    let mut range = CMat::zeros(t.nrows(), keep.len());
    for (col, &j) in keep.iter().enumerate() {
        range.set_column(col, &eig.eigenvectors.column(j));
    }
    VariableOperator::new(
        inner.variable,
        coeff_dim,
        coeff_dim,
        &range * range.adjoint(),
    )
}

/// Distance on margin layers between the complement of `Σ_i Φ_i H²` and the
/// complement of the model space `𝒮_T`.
pub fn reconstruct_s_check(
    inners: &[InnerColumnSet],
    model: &ModelSpaces,
    cfg: &ToleranceConfig,
) -> Result<f64> {
    let e = model.space.coeff_dim();
    let ops: Vec<VariableOperator> = inners
        .iter()
        .map(|inner| inner_projection(inner, e))
        .collect();
    let from_inners = complement_range(&model.space, &ops, model.complement_basis.ncols(), cfg);
    let rows = model.margin_rows();
    gram_difference_norm(
        &from_inners.select_rows(&rows),
        &model.complement_basis.select_rows(&rows),
    )
}

/// Outcome of the rank-one round trip for a co-invariant `Q ⊆ H²(𝔻ⁿ)`.
#[derive(Clone, Debug)]
pub struct RankOneVerdict {
    pub coinvariance_residual: f64,
    /// `C_i = P_Q M_{z_i}|_Q` on the basis of `Q`.
    pub compressions: Vec<CMat>,
    pub commuting_residual: f64,
    /// `max_{i≠j} ‖C_iC_j* − C_j*C_i‖`.
    pub doubly_commuting_residual: f64,
    /// Pair attaining the largest double-commutation residual.
    pub violating_pair: Option<(usize, usize)>,
    pub doubly_commuting: bool,
    pub pure: bool,
    /// Rank of `D_{C*}²`.
    pub defect_rank: Option<usize>,
    /// Rank of `P_Q P_constants|_Q`.
    pub constants_rank: Option<usize>,
    pub inners: Vec<InnerColumnSet>,
    /// Gap between `Q` and the complement of `Σ Φ_i H²` on margin layers.
    pub complement_distance: Option<f64>,
}

/// Compress the shifts to `Q`, test double commutativity, and when it holds
/// run the whole pipeline on the compressed tuple.
///
/// `q` must be an orthonormal basis in the scalar space `space`.
pub fn rankone_corollary_check(
    space: &TruncatedHardySpace,
    q: &CMat,
    cfg: &ToleranceConfig,
) -> Result<RankOneVerdict> {
    if space.coeff_dim() != 1 {
        return Err(Error::InvalidInput("scalar Hardy space expected".into()));
    }
    if q.nrows() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: q.nrows(),
        });
    }
    if q.ncols() == 0 {
        return Err(Error::InvalidInput(
            "the zero subspace is not a proper co-invariant subspace".into(),
        ));
    }
    let n = space.n();
    let mut coinvariance_residual = 0.0f64;
    for i in 0..n {
        let moved = coshift_matrix(space, i).apply(q);
        let outside = &moved - q * (q.adjoint() * &moved);
        coinvariance_residual = coinvariance_residual.max(operator_norm(&outside));
    }
    if coinvariance_residual > cfg.check_tol {
        return Err(Error::NotCoinvariant {
            residual: coinvariance_residual,
        });
    }

    let compressions: Vec<CMat> = (0..n)
        .map(|i| q.adjoint() * shift_matrix(space, i).apply(q))
        .collect();
    let mut commuting_residual = 0.0f64;
    let mut doubly_commuting_residual = 0.0f64;
    let mut violating_pair = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (&compressions[i], &compressions[j]);
            commuting_residual = commuting_residual.max(operator_norm(&(a * b - b * a)));
            let res = operator_norm(&(a * b.adjoint() - b.adjoint() * a));
            if res > doubly_commuting_residual {
                doubly_commuting_residual = res;
                violating_pair = Some((i, j));
            }
        }
    }
    let doubly_commuting = commuting_residual.max(doubly_commuting_residual) <= cfg.check_tol;
    let pure = compressions
        .iter()
        .map(spectral_radius)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|rho| rho < 1.0 - cfg.rank_tol);

    let mut verdict = RankOneVerdict {
        coinvariance_residual,
        compressions,
        commuting_residual,
        doubly_commuting_residual,
        violating_pair: if doubly_commuting {
            None
        } else {
            violating_pair
        },
        doubly_commuting,
        pure,
        defect_rank: None,
        constants_rank: None,
        inners: Vec::new(),
        complement_distance: None,
    };
    if !(doubly_commuting && pure) {
        return Ok(verdict);
    }

    let tuple = ContractionTuple::new(verdict.compressions.clone())?;
    let defects = defect_operators(&tuple, cfg)?;
    verdict.defect_rank = Some(defects.rank());
    let constants = q.row(0).into_owned();
    verdict.constants_rank = Some(usize::from(constants.norm() > cfg.rank_tol));

    let degree = space.degree();
    let l = build_dilation(&tuple, degree, cfg)?;
    let charfns = characteristic_functions(&tuple, degree.max(1) * 64, cfg)?;
    let multipliers = build_multipliers(&charfns, &l.space);
    let model = model_space(&l, &multipliers, None, cfg)?;
    let inners = decompose(&model);

    // Read the inner functions back in the scalar space: the joint defect
    // space is one-dimensional, so each Φ_i is scalar up to that unit
    // coordinate.
    if defects.rank() == 1 {
        let ops: Vec<VariableOperator> = inners
            .iter()
            .map(|inner| inner_projection(inner, 1))
            .collect();
        let complement = complement_range(space, &ops, q.ncols(), cfg);
        let rows = space.rows_of(&space.margin_positions(model.margin));
        verdict.complement_distance = Some(gram_difference_norm(
            &complement.select_rows(&rows),
            &q.select_rows(&rows),
        )?);
    }
    verdict.inners = inners;
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dilation::build_dilation_adaptive;
    use crate::matrixcore::{c, from_real_rows, max_abs};
    use crate::model::mobius_coefficients;
    use crate::tuples::{make_nilpotent_jordan, make_tensor_tuple};
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn model_for(t: &ContractionTuple, degree: Option<usize>) -> ModelSpaces {
        let l = match degree {
            Some(d) => build_dilation(t, d, &cfg()).unwrap(),
            None => build_dilation_adaptive(t, &cfg()).unwrap(),
        };
        let cfs = characteristic_functions(t, 100_000, &cfg()).unwrap();
        let mults = build_multipliers(&cfs, &l.space);
        model_space(&l, &mults, None, &cfg()).unwrap()
    }

    fn one_variable(fiber_basis: CMat, degree: usize) -> Fiber {
        Fiber {
            var: 0,
            degree,
            coeff_dim: 1,
            basis: fiber_basis,
            tensor_residual: 0.0,
        }
    }

    fn unit_columns(len: usize, at: &[usize]) -> CMat {
        CMat::from_fn(len, at.len(), |r, col| {
            if r == at[col] {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        })
    }

    #[test]
    fn wandering_of_shift_range() {
        let w = wandering_basis(&one_variable(unit_columns(4, &[1, 2, 3]), 3));
        assert!(max_abs(&(&w - unit_columns(4, &[1]))) < 1e-15);
        let inner = inner_from_wandering(&w, 0, 1, 1);
        assert_eq!(inner.inner_dim, 1);
        assert!(inner.isometry_drift < 1e-15);
    }

    #[test]
    fn wandering_of_everything_is_constants() {
        let w = wandering_basis(&one_variable(unit_columns(5, &[0, 1, 2, 3, 4]), 4));
        assert!(max_abs(&(&w - unit_columns(5, &[0]))) < 1e-15);
    }

    #[test]
    fn empty_fiber_gives_zero_function() {
        let w = wandering_basis(&one_variable(CMat::zeros(6, 0), 5));
        let inner = inner_from_wandering(&w, 0, 1, 2);
        assert!(inner.is_zero());
    }

    #[test]
    fn mobius_wandering_vector() {
        // b·H² truncated at d = 20, built from the Toeplitz range.
        let d = 20;
        let a = c(0.5, 0.0);
        let coeffs: Vec<CMat> = mobius_coefficients(a, d + 1)
            .into_iter()
            .map(|x| CMat::from_element(1, 1, x))
            .collect();
        let t = toeplitz_matrix(&coeffs, 1, 1, d);
        let eig = SymmetricEigen::new(hermitian_part(&(&t * t.adjoint())));
        let keep: Vec<usize> = (0..=d).filter(|&j| eig.eigenvalues[j] > 0.5).collect();
        let basis = CMat::from_fn(d + 1, keep.len(), |r, col| eig.eigenvectors[(r, keep[col])]);
        let w = wandering_basis(&one_variable(basis, d));
        assert_eq!(w.ncols(), 1);
        let inner = inner_from_wandering(&w, 0, 1, d / 2);
        let series = inner.scalar_series(0, 0);
        let phase = series[0] / coeffs[0][(0, 0)];
        assert!((phase.norm() - 1.0).abs() < 1e-6);
        for (m, x) in series.iter().enumerate() {
            assert!(
                (x - phase * coeffs[m][(0, 0)]).norm() < 1e-6,
                "coefficient {m}"
            );
        }
        assert!(inner.isometry_drift < 1e-6);
    }

    #[test]
    fn zero_tuple_decomposition() {
        let model = model_for(&ContractionTuple::zero(2, 1), Some(4));
        let inners = decompose(&model);
        for inner in &inners {
            assert_eq!(inner.inner_dim, 1);
            let series = inner.scalar_series(0, 0);
            assert!((series[1] - c(1.0, 0.0)).norm() < 1e-14);
            assert!(series
                .iter()
                .enumerate()
                .all(|(m, x)| m == 1 || x.norm() < 1e-14));
        }
        assert!(reconstruct_s_check(&inners, &model, &cfg()).unwrap() < 1e-14);
    }

    #[test]
    fn dense_fiber_matches_structured() {
        let t =
            make_tensor_tuple(&[make_nilpotent_jordan(2, 0.6), from_real_rows(&[&[0.3]])]).unwrap();
        let model = model_for(&t, Some(6));
        for i in 0..2 {
            let s = InvariantSubspace::from_projection_range(&model, i, &cfg()).unwrap();
            // Exact in the other variable; the own-variable residual carries
            // the truncation of the scalar factor.
            assert!(s.shift_invariance_residual[1 - i] < 1e-12);
            let dense = fiber_extract(&s, i, model.margin, &cfg()).unwrap();
            let structured = fiber_from_model(&model, i);
            assert!(dense.tensor_residual < 1e-12, "{}", dense.tensor_residual);
            assert_eq!(dense.dim(), structured.dim());
            let gap = gram_difference_norm(&dense.basis, &structured.basis).unwrap();
            assert!(gap < 1e-8, "{gap}");
        }
    }

    #[test]
    fn scalar_mobius_model() {
        let t = ContractionTuple::new(vec![from_real_rows(&[&[0.6]])]).unwrap();
        let model = model_for(&t, Some(40));
        let inners = decompose(&model);
        assert_eq!(inners[0].inner_dim, 1);
        let series = inners[0].scalar_series(0, 0);
        let oracle = mobius_coefficients(c(0.6, 0.0), series.len());
        let phase = series[0] / oracle[0];
        for m in 0..=20 {
            assert!((series[m] - phase * oracle[m]).norm() < 1e-6);
        }
        assert!(reconstruct_s_check(&inners, &model, &cfg()).unwrap() < 1e-6);
    }

    fn q_from(space: &TruncatedHardySpace, vectors: &[Vec<(Vec<usize>, f64)>]) -> CMat {
        CMat::from_fn(space.dim(), vectors.len(), |r, col| {
            vectors[col]
                .iter()
                .find(|(k, _)| space.position_of(k) == Some(r))
                .map(|(_, x)| c(*x, 0.0))
                .unwrap_or(c(0.0, 0.0))
        })
    }

    #[test]
    fn rank_one_constants_only() {
        let space = TruncatedHardySpace::new(2, 4, 1);
        let q = q_from(&space, &[vec![(vec![0, 0], 1.0)]]);
        let v = rankone_corollary_check(&space, &q, &cfg()).unwrap();
        assert!(v.doubly_commuting);
        assert!(v.compressions.iter().all(|m| max_abs(m) == 0.0));
        assert_eq!(v.defect_rank, Some(1));
        for inner in &v.inners {
            let s = inner.scalar_series(0, 0);
            assert!((s[1].norm() - 1.0).abs() < 1e-14);
        }
        assert!(v.complement_distance.unwrap() < 1e-12);
    }

    #[test]
    fn rank_one_monomial_ideal() {
        let space = TruncatedHardySpace::new(2, 4, 1);
        let q = q_from(&space, &[vec![(vec![0, 0], 1.0)], vec![(vec![1, 0], 1.0)]]);
        let v = rankone_corollary_check(&space, &q, &cfg()).unwrap();
        assert!(v.doubly_commuting && v.doubly_commuting_residual <= 1e-12);
        assert_eq!(v.defect_rank, Some(1));
        assert_eq!(v.constants_rank, Some(1));
        let expected_degree = [2, 1];
        for (inner, &deg) in v.inners.iter().zip(&expected_degree) {
            let s = inner.scalar_series(0, 0);
            for (m, x) in s.iter().enumerate() {
                let target = if m == deg { 1.0 } else { 0.0 };
                assert!(
                    (x.norm() - target).abs() < 1e-12,
                    "degree {deg} coefficient {m}"
                );
            }
        }
        assert!(v.complement_distance.unwrap() < 1e-12);
    }

    #[test]
    fn rank_one_negative_case() {
        let space = TruncatedHardySpace::new(2, 3, 1);
        let s = FRAC_1_SQRT_2;
        let q = q_from(
            &space,
            &[
                vec![(vec![0, 0], 1.0)],
                vec![(vec![1, 0], s), (vec![0, 1], s)],
            ],
        );
        let v = rankone_corollary_check(&space, &q, &cfg()).unwrap();
        assert!(!v.doubly_commuting);
        assert!((v.doubly_commuting_residual - 0.5).abs() < 1e-12);
        assert!(v.violating_pair.is_some());
        assert!(v.inners.is_empty());
    }

    #[test]
    fn rank_one_rejects_bad_subspaces() {
        let space = TruncatedHardySpace::new(2, 3, 1);
        let not_coinvariant = q_from(&space, &[vec![(vec![1, 0], 1.0)]]);
        assert!(matches!(
            rankone_corollary_check(&space, &not_coinvariant, &cfg()),
            Err(Error::NotCoinvariant { .. })
        ));
        assert!(rankone_corollary_check(&space, &CMat::zeros(space.dim(), 0), &cfg()).is_err());
    }

    #[test]
    fn phase_is_deterministic() {
        let t = make_tensor_tuple(&[from_real_rows(&[&[0.5]]), from_real_rows(&[&[0.6]])]).unwrap();
        let a = decompose(&model_for(&t, Some(24)));
        let b = decompose(&model_for(&t, Some(24)));
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.columns, y.columns);
            let first: Complex64 = x.columns[0][(0, 0)];
            assert!(first.im.abs() < 1e-12 && first.re > 0.0);
        }
    }
}
