//! Doubly commuting tuples of contractions: validation, defect operators and
//! generators that satisfy the hypotheses by construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrixcore::{
    c, hermitian_psd_sqrt, identity, is_finite, kron, operator_norm, orthonormal_range_basis,
    spectral_radius, CMat, ToleranceConfig,
};

/// An `n`-tuple of square matrices acting on a common space of dimension `dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionTuple {
    matrices: Vec<CMat>,
}

impl ContractionTuple {
    pub fn new(matrices: Vec<CMat>) -> Result<Self> {
        let first = matrices
            .first()
            .ok_or_else(|| Error::InvalidInput("a tuple needs at least one operator".into()))?;
        let dim = first.nrows();
        if dim == 0 {
            return Err(Error::InvalidInput(
                "operators must act on a nonzero space".into(),
            ));
        }
        for m in &matrices {
            if m.nrows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.nrows(),
                });
            }
            if m.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.ncols(),
                });
            }
            if !is_finite(m) {
                return Err(Error::InvalidInput("matrix entries must be finite".into()));
            }
        }
        Ok(Self { matrices })
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    pub fn get(&self, i: usize) -> &CMat {
        &self.matrices[i]
    }

    /// The zero tuple on `ℂ^dim`.
    pub fn zero(n: usize, dim: usize) -> Self {
        Self {
            matrices: vec![CMat::zeros(dim, dim); n],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OperatorCheck {
    pub index: usize,
    pub value: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub residual: f64,
    pub pass: bool,
}

/// Outcome of every hypothesis check on a tuple.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    /// Operator norms.
    pub contractive: Vec<OperatorCheck>,
    /// `‖T_iT_j − T_jT_i‖` for `i < j`.
    pub commuting: Vec<PairCheck>,
    /// `‖T_iT_j* − T_j*T_i‖` for `i ≠ j`.
    pub doubly_commuting: Vec<PairCheck>,
    /// Spectral radii.
    pub pure: Vec<OperatorCheck>,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.contractive.iter().all(|c| c.pass)
            && self.commuting.iter().all(|c| c.pass)
            && self.doubly_commuting.iter().all(|c| c.pass)
            && self.pure.iter().all(|c| c.pass)
    }

    pub fn is_contractive(&self) -> bool {
        self.contractive.iter().all(|c| c.pass)
    }

    pub fn is_doubly_commuting(&self) -> bool {
        self.commuting.iter().all(|c| c.pass) && self.doubly_commuting.iter().all(|c| c.pass)
    }
}

/// Check contractivity, commutativity, double commutativity and purity.
///
/// Purity is certified by a spectral radius below `1 − rank_tol`; for a
/// matrix this is equivalent to `T*ᵐ → 0`.
pub fn validate_tuple(t: &ContractionTuple, cfg: &ToleranceConfig) -> Result<ValidationReport> {
    let mats = t.matrices();
    let mut contractive = Vec::with_capacity(t.n());
    let mut pure = Vec::with_capacity(t.n());
    for (index, m) in mats.iter().enumerate() {
        let norm = operator_norm(m);
        contractive.push(OperatorCheck {
            index,
            value: norm,
            pass: norm <= 1.0 + cfg.check_tol,
        });
        let radius = spectral_radius(m)?;
        pure.push(OperatorCheck {
            index,
            value: radius,
            pass: radius < 1.0 - cfg.rank_tol,
        });
    }
    let mut commuting = Vec::new();
    let mut doubly_commuting = Vec::new();
    for i in 0..t.n() {
        for j in 0..t.n() {
            if i == j {
                continue;
            }
            if i < j {
                let r = operator_norm(&(&mats[i] * &mats[j] - &mats[j] * &mats[i]));
                commuting.push(PairCheck {
                    i,
                    j,
                    residual: r,
                    pass: r <= cfg.check_tol,
                });
            }
            let adj = mats[j].adjoint();
            let r = operator_norm(&(&mats[i] * &adj - &adj * &mats[i]));
            doubly_commuting.push(PairCheck {
                i,
                j,
                residual: r,
                pass: r <= cfg.check_tol,
            });
        }
    }
    Ok(ValidationReport {
        contractive,
        commuting,
        doubly_commuting,
        pure,
    })
}

/// Defect operators of a single contraction together with range bases.
#[derive(Clone, Debug)]
pub struct OperatorDefects {
    /// `D_T = (I − T*T)^{1/2}`.
    pub d: CMat,
    /// `D_{T*} = (I − TT*)^{1/2}`.
    pub d_star: CMat,
    pub basis: CMat,
    pub basis_star: CMat,
}

impl OperatorDefects {
    pub fn new(t: &CMat, cfg: &ToleranceConfig) -> Result<Self> {
        let id = identity(t.nrows());
        let d = hermitian_psd_sqrt(&(&id - t.adjoint() * t), cfg)?;
        let d_star = hermitian_psd_sqrt(&(&id - t * t.adjoint()), cfg)?;
        let basis = orthonormal_range_basis(&d, cfg);
        let basis_star = orthonormal_range_basis(&d_star, cfg);
        Ok(Self {
            d,
            d_star,
            basis,
            basis_star,
        })
    }
}

/// Joint defect data of a doubly commuting tuple.
#[derive(Clone, Debug)]
pub struct DefectData {
    /// `D_{T*}`, the PSD square root of `∏(I − T_iT_i*)`.
    pub big_defect: CMat,
    /// Orthonormal basis of the joint defect space; its coordinates are the
    /// coefficient space of the dilation.
    pub big_defect_basis: CMat,
    pub per_op: Vec<OperatorDefects>,
    /// `‖∏ D_{T_i*} − D_{T*}‖`: the two routes to the joint defect.
    pub route_residual: f64,
    /// Largest `‖(I − P_i*) B‖` where `B` spans the joint defect space and
    /// `P_i*` projects onto the i-th adjoint defect space.
    pub inclusion_residual: f64,
}

impl DefectData {
    pub fn rank(&self) -> usize {
        self.big_defect_basis.ncols()
    }

    /// Orthogonal projection onto the joint defect space, in ambient coordinates.
    pub fn projection(&self) -> CMat {
        &self.big_defect_basis * self.big_defect_basis.adjoint()
    }
}

pub fn defect_operators(t: &ContractionTuple, cfg: &ToleranceConfig) -> Result<DefectData> {
    let dim = t.dim();
    let id = identity(dim);
    let per_op = t
        .matrices()
        .iter()
        .map(|m| OperatorDefects::new(m, cfg))
        .collect::<Result<Vec<_>>>()?;

    let product = t
        .matrices()
        .iter()
        .fold(id.clone(), |acc, m| acc * (&id - m * m.adjoint()));
    let big_defect = hermitian_psd_sqrt(&product, cfg)?;
    let factor_route = per_op.iter().fold(id.clone(), |acc, d| acc * &d.d_star);
    let route_residual = operator_norm(&(&factor_route - &big_defect));

    let big_defect_basis = orthonormal_range_basis(&big_defect, cfg);
    let inclusion_residual = per_op
        .iter()
        .map(|d| {
            let b = &d.basis_star;
            operator_norm(&(&big_defect_basis - b * (b.adjoint() * &big_defect_basis)))
        })
        .fold(0.0, f64::max);

    Ok(DefectData {
        big_defect,
        big_defect_basis,
        per_op,
        route_residual,
        inclusion_residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectCommutation {
    /// Largest `‖T_i D_{T_j*} − D_{T_j*} T_i‖`, `i ≠ j`.
    pub operator_defect: f64,
    /// Largest `‖D_{T_i*} D_{T_j*} − D_{T_j*} D_{T_i*}‖`, `i < j`.
    pub defect_defect: f64,
    pub pass: bool,
}

impl DefectCommutation {
    pub fn residual(&self) -> f64 {
        self.operator_defect.max(self.defect_defect)
    }
}

pub fn defect_commutation_check(
    t: &ContractionTuple,
    cfg: &ToleranceConfig,
) -> Result<DefectCommutation> {
    let defects = t
        .matrices()
        .iter()
        .map(|m| OperatorDefects::new(m, cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut operator_defect = 0.0f64;
    let mut defect_defect = 0.0f64;
    for i in 0..t.n() {
        for j in 0..t.n() {
            if i == j {
                continue;
            }
            let ti = t.get(i);
            let dj = &defects[j].d_star;
            operator_defect = operator_defect.max(operator_norm(&(ti * dj - dj * ti)));
            if i < j {
                let di = &defects[i].d_star;
                defect_defect = defect_defect.max(operator_norm(&(di * dj - dj * di)));
            }
        }
    }
    Ok(DefectCommutation {
        operator_defect,
        defect_defect,
        pass: operator_defect.max(defect_defect) <= cfg.check_tol,
    })
}

/// `T_i = I ⊗ … ⊗ A_i ⊗ … ⊗ I`, factor 1 slowest-varying.
///
/// Operators built this way act on different tensor legs, so the tuple is
/// doubly commuting by construction.
pub fn make_tensor_tuple(factors: &[CMat]) -> Result<ContractionTuple> {
    if factors.is_empty() {
        return Err(Error::InvalidInput(
            "at least one factor is required".into(),
        ));
    }
    let cfg = ToleranceConfig::default();
    for (index, f) in factors.iter().enumerate() {
        if !f.is_square() || f.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: f.nrows(),
                found: f.ncols(),
            });
        }
        let norm = operator_norm(f);
        if norm > 1.0 + cfg.check_tol {
            return Err(Error::FactorNotContractive { index, norm });
        }
        let radius = spectral_radius(f)?;
        if radius >= 1.0 - cfg.rank_tol {
            return Err(Error::FactorNotPure { index, radius });
        }
    }
    let dims: Vec<usize> = factors.iter().map(|f| f.nrows()).collect();
    let matrices = factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let left = identity(dims[..i].iter().product());
            let right = identity(dims[i + 1..].iter().product());
            kron(&kron(&left, f), &right)
        })
        .collect();
    ContractionTuple::new(matrices)
}

/// A complex Gaussian matrix rescaled to operator norm `radius`.
pub fn make_random_pure_contraction(dim: usize, radius: f64, seed: u64) -> Result<CMat> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::InvalidInput(format!(
            "radius must lie in (0, 1), got {radius}"
        )));
    }
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = CMat::from_fn(dim, dim, |_, _| {
            c(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let norm = operator_norm(&m);
        if norm > 0.0 {
            return Ok(m.scale(radius / norm));
        }
    }
}

/// Upper-triangular Jordan-type nilpotent block `radius · J_order`.
pub fn make_nilpotent_jordan(order: usize, radius: f64) -> CMat {
    CMat::from_fn(order, order, |i, j| {
        if j == i + 1 {
            c(radius, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixcore::{from_real_rows, max_abs};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn tensor_pair() -> ContractionTuple {
        ContractionTuple::new(vec![
            from_real_rows(&[&[0.5, 0.0], &[0.0, 0.5]]),
            from_real_rows(&[&[0.0, 0.6], &[0.0, 0.0]]),
        ])
        .unwrap()
    }

    #[test]
    fn tensor_pair_validates() {
        let report = validate_tuple(&tensor_pair(), &cfg()).unwrap();
        assert!(report.accepted());
        // Direct arithmetic: everything commutes exactly.
        assert!(report.commuting.iter().all(|p| p.residual == 0.0));
        assert!((report.pure[0].value - 0.5).abs() < 1e-14);
        assert!(report.pure[1].value < 1e-14);
    }

    #[test]
    fn identity_pair_is_not_pure() {
        let t = ContractionTuple::new(vec![identity(1), identity(1)]).unwrap();
        let r = validate_tuple(&t, &cfg()).unwrap();
        assert!(r.is_doubly_commuting());
        assert!(r.pure.iter().all(|p| !p.pass));
        assert!(!r.accepted());
    }

    #[test]
    fn non_commuting_pair_is_rejected() {
        let t = ContractionTuple::new(vec![
            from_real_rows(&[&[0.0, 0.5], &[0.0, 0.0]]),
            from_real_rows(&[&[0.0, 0.0], &[0.5, 0.0]]),
        ])
        .unwrap();
        let r = validate_tuple(&t, &cfg()).unwrap();
        assert!(!r.commuting[0].pass);
        // T1T2 − T2T1 = diag(0.25, −0.25).
        assert!((r.commuting[0].residual - 0.25).abs() < 1e-14);
    }

    #[test]
    fn ragged_tuple_is_rejected() {
        let err = ContractionTuple::new(vec![identity(2), identity(3)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn defects_of_nilpotent_block() {
        let t = ContractionTuple::new(vec![from_real_rows(&[&[0.0, 0.6], &[0.0, 0.0]])]).unwrap();
        let d = defect_operators(&t, &cfg()).unwrap();
        let expect_star = from_real_rows(&[&[0.8, 0.0], &[0.0, 1.0]]);
        let expect = from_real_rows(&[&[1.0, 0.0], &[0.0, 0.8]]);
        assert!(max_abs(&(&d.big_defect - &expect_star)) < 1e-14);
        assert!(max_abs(&(&d.per_op[0].d - &expect)) < 1e-14);
        assert_eq!(d.rank(), 2);
    }

    #[test]
    fn defects_of_scalars() {
        let zero = defect_operators(&ContractionTuple::zero(1, 1), &cfg()).unwrap();
        assert!((zero.big_defect[(0, 0)].re - 1.0).abs() < 1e-15);
        let t = ContractionTuple::new(vec![from_real_rows(&[&[0.6]])]).unwrap();
        let d = defect_operators(&t, &cfg()).unwrap();
        assert!((d.big_defect[(0, 0)].re - 0.8).abs() < 1e-15);
        assert!((d.per_op[0].d[(0, 0)].re - 0.8).abs() < 1e-15);
    }

    #[test]
    fn defect_routes_agree_on_tensor_pair() {
        let d = defect_operators(&tensor_pair(), &cfg()).unwrap();
        assert!(d.route_residual < 1e-12);
        assert!(d.inclusion_residual < 1e-12);
    }

    #[test]
    fn defect_commutation_examples() {
        assert!(
            defect_commutation_check(&tensor_pair(), &cfg())
                .unwrap()
                .residual()
                <= 1e-12
        );
        let single =
            ContractionTuple::new(vec![from_real_rows(&[&[0.1, 0.3], &[0.0, 0.2]])]).unwrap();
        assert_eq!(
            defect_commutation_check(&single, &cfg())
                .unwrap()
                .residual(),
            0.0
        );
        let half = from_real_rows(&[&[0.5, 0.0], &[0.0, 0.5]]);
        let t = ContractionTuple::new(vec![half.clone(), half]).unwrap();
        assert_eq!(
            defect_commutation_check(&t, &cfg()).unwrap().residual(),
            0.0
        );
    }

    #[test]
    fn tensor_tuple_layout() {
        let t = make_tensor_tuple(&[
            from_real_rows(&[&[0.5]]),
            from_real_rows(&[&[0.0, 0.6], &[0.0, 0.0]]),
        ])
        .unwrap();
        assert_eq!(t, tensor_pair());

        let z = make_tensor_tuple(&[CMat::zeros(1, 1)]).unwrap();
        assert_eq!((z.n(), z.dim()), (1, 1));

        let half = from_real_rows(&[&[0.5]]);
        let three = make_tensor_tuple(&[half.clone(), half.clone(), half]).unwrap();
        assert_eq!((three.n(), three.dim()), (3, 1));
    }

    #[test]
    fn tensor_tuple_rejects_bad_factors() {
        let big = from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        assert!(matches!(
            make_tensor_tuple(&[big]),
            Err(Error::FactorNotContractive { index: 0, .. })
        ));
        assert!(matches!(
            make_tensor_tuple(&[identity(1), identity(2)]),
            Err(Error::FactorNotPure { index: 0, .. })
        ));
    }

    #[test]
    fn random_contraction_is_deterministic_and_scaled() {
        let a = make_random_pure_contraction(2, 0.9, 7).unwrap();
        let b = make_random_pure_contraction(2, 0.9, 7).unwrap();
        assert_eq!(a, b);
        assert!(operator_norm(&a) <= 0.9 + 1e-12);
        let s = make_random_pure_contraction(1, 0.5, 3).unwrap();
        assert!((s[(0, 0)].norm() - 0.5).abs() < 1e-15);
        assert!(make_random_pure_contraction(2, 1.0, 0).is_err());
    }
}
