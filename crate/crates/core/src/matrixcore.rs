//! Dense complex matrix foundations.
//!
//! Every operator in the crate is a `DMatrix<Complex64>`. This module holds
//! the handful of spectral primitives the rest of the crate leans on: the
//! positive square root of a Hermitian PSD matrix, rank-revealing range bases,
//! norms, spectral radii and distances between subspaces.

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Shorthand constructor for a complex scalar.
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Numerical tolerances shared by every check.
///
/// `rank_tol` is a relative singular-value cutoff, `check_tol` bounds
/// identities that hold exactly in finite dimensions, and `tail_tol` bounds
/// identities that only hold in the limit of infinite truncation degree.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ToleranceConfig {
    pub rank_tol: f64,
    pub check_tol: f64,
    pub tail_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_tol: 1e-10,
            check_tol: 1e-9,
            tail_tol: 1e-6,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let all_positive = [self.rank_tol, self.check_tol, self.tail_tol]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0);
        if !all_positive {
            return Err(Error::InvalidInput(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        Ok(())
    }
}

/// Build a complex matrix from real entries given row by row.
pub fn from_real_rows(rows: &[&[f64]]) -> CMat {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    CMat::from_fn(nrows, ncols, |i, j| c(rows[i][j], 0.0))
}

pub fn is_finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest singular value. Empty matrices have norm zero.
pub fn operator_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    // Tall-skinny residuals are common; the Gram route keeps the SVD small.
    if m.nrows() > 4 * m.ncols() {
        let gram = m.adjoint() * m;
        return hermitian_max_abs_eigenvalue(&gram).max(0.0).sqrt();
    }
    if m.ncols() > 4 * m.nrows() {
        let gram = m * m.adjoint();
        return hermitian_max_abs_eigenvalue(&gram).max(0.0).sqrt();
    }
    m.singular_values().max()
}

/// Largest eigenvalue modulus of a (numerically) Hermitian matrix.
pub fn hermitian_max_abs_eigenvalue(m: &CMat) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let h = hermitian_part(m);
    SymmetricEigen::new(h)
        .eigenvalues
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max)
}

/// `(M + Mᴴ) / 2`.
pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// Positive square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-rank_tol, 0)` are clamped to zero; anything more
/// negative is rejected.
pub fn hermitian_psd_sqrt(m: &CMat, cfg: &ToleranceConfig) -> Result<CMat> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(m.clone());
    }
    let scale = 1.0 + operator_norm(m);
    let asym = operator_norm(&(m - m.adjoint()));
    if asym > cfg.check_tol * scale {
        return Err(Error::NotHermitian { residual: asym });
    }
    let eig = SymmetricEigen::new(hermitian_part(m));
    let min = eig.eigenvalues.min();
    if min < -cfg.rank_tol * scale {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let v = &eig.eigenvectors;
    let roots = eig.eigenvalues.map(|l| c(l.max(0.0).sqrt(), 0.0));
    let root = v * CMat::from_diagonal(&roots) * v.adjoint();
    Ok(hermitian_part(&root))
}

/// Orthonormal basis (as columns) of the numerical range of `m`.
///
/// Singular values below `rank_tol` times the largest one are dropped. The
/// columns come in descending singular-value order, each rotated so that its
/// first non-negligible entry is real and positive.
pub fn orthonormal_range_basis(m: &CMat, cfg: &ToleranceConfig) -> CMat {
    range_basis_with(m, |sigma, sigma_max| sigma > cfg.rank_tol * sigma_max)
}

/// Range basis keeping singular values strictly above an absolute cutoff.
pub fn range_basis_above(m: &CMat, cutoff: f64) -> CMat {
    range_basis_with(m, |sigma, _| sigma > cutoff)
}

fn range_basis_with(m: &CMat, keep: impl Fn(f64, f64) -> bool) -> CMat {
    let rows = m.nrows();
    if rows == 0 || m.ncols() == 0 {
        return CMat::zeros(rows, 0);
    }
    // Wide inputs: `mᴴ = QR` gives `m = Rᴴ Qᴴ` with the same range as the
    // small square factor `Rᴴ`.
    let reduced = if m.ncols() > 2 * rows {
        m.adjoint().qr().r().adjoint()
    } else {
        m.clone()
    };
    let svd = SVD::new(reduced, true, false);
    let vectors = svd.u.expect("left singular vectors requested");
    let sigmas: Vec<f64> = svd.singular_values.iter().copied().collect();
    let sigma_max = sigmas.iter().copied().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return CMat::zeros(rows, 0);
    }
    let mut order: Vec<usize> = (0..sigmas.len())
        .filter(|&k| keep(sigmas[k], sigma_max))
        .collect();
    order.sort_by(|&a, &b| sigmas[b].total_cmp(&sigmas[a]).then(a.cmp(&b)));
    let mut basis = CMat::zeros(rows, order.len());
    for (dst, &src) in order.iter().enumerate() {
        let mut col = vectors.column(src).into_owned();
        normalize_phase(&mut col);
        basis.set_column(dst, &col);
    }
    basis
}

/// Rotate a vector so its first entry of modulus above `1e-8` (relative to
/// the largest entry) is real and positive.
pub fn normalize_phase(v: &mut CVec) {
    let peak = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return;
    }
    if let Some(lead) = v.iter().find(|z| z.norm() > 1e-8 * peak).copied() {
        let phase = lead.conj() / lead.norm();
        v.iter_mut().for_each(|z| *z *= phase);
    }
}

/// Largest eigenvalue modulus of a square matrix, via a complex Schur form.
pub fn spectral_radius(m: &CMat) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Ok(0.0);
    }
    let schur = Schur::try_new(m.clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::NumericalFailure("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok(t.diagonal().iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// `‖P_A − P_B‖` for orthonormal column families `a` and `b`.
///
/// Uses `‖P_A − P_B‖ = max(‖(I − P_B) P_A‖, ‖(I − P_A) P_B‖)`, which avoids
/// materializing ambient-size projections.
pub fn subspace_distance(a: &CMat, b: &CMat) -> Result<f64> {
    if a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    let a_out = a - b * (b.adjoint() * a);
    let b_out = b - a * (a.adjoint() * b);
    Ok(operator_norm(&a_out).max(operator_norm(&b_out)).min(1.0))
}

/// `‖XXᴴ − YYᴴ‖` for arbitrary tall `x`, `y` with a common row count.
///
/// Both products live in the span of `[X Y]`, so after a QR factorization
/// the norm is that of a small Hermitian matrix.
pub fn gram_difference_norm(x: &CMat, y: &CMat) -> Result<f64> {
    if x.nrows() != y.nrows() {
        return Err(Error::DimensionMismatch {
            expected: x.nrows(),
            found: y.nrows(),
        });
    }
    let k = x.ncols() + y.ncols();
    if k == 0 || x.nrows() == 0 {
        return Ok(0.0);
    }
    let mut z = CMat::zeros(x.nrows(), k);
    z.columns_mut(0, x.ncols()).copy_from(x);
    z.columns_mut(x.ncols(), y.ncols()).copy_from(y);
    let r = if z.nrows() >= k {
        z.qr().r()
    } else {
        z.clone()
    };
    let mut signs = CVec::from_element(k, ONE);
    for j in x.ncols()..k {
        signs[j] = -ONE;
    }
    let middle = &r * CMat::from_diagonal(&signs) * r.adjoint();
    Ok(hermitian_max_abs_eigenvalue(&middle))
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Kronecker product with the first factor slowest-varying.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn diag(values: &[f64]) -> CMat {
        CMat::from_diagonal(&CVec::from_iterator(
            values.len(),
            values.iter().map(|&v| c(v, 0.0)),
        ))
    }

    #[test]
    fn psd_sqrt_of_diagonal() {
        let r = hermitian_psd_sqrt(&diag(&[0.64, 1.0]), &cfg()).unwrap();
        assert!(max_abs(&(r - diag(&[0.8, 1.0]))) < 1e-14);
    }

    #[test]
    fn psd_sqrt_fixes_identity_and_projection() {
        let id = identity(3);
        assert!(max_abs(&(hermitian_psd_sqrt(&id, &cfg()).unwrap() - &id)) < 1e-14);
        let p = from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!(max_abs(&(hermitian_psd_sqrt(&p, &cfg()).unwrap() - &p)) < 1e-14);
    }

    #[test]
    fn psd_sqrt_rejects_bad_input() {
        let skew = from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert!(matches!(
            hermitian_psd_sqrt(&skew, &cfg()),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            hermitian_psd_sqrt(&diag(&[1.0, -0.5]), &cfg()),
            Err(Error::NotPsd { .. })
        ));
        // Tiny negative eigenvalues are clamped.
        let r = hermitian_psd_sqrt(&diag(&[1.0, -1e-14]), &cfg()).unwrap();
        assert!(r[(1, 1)].norm() < 1e-12);
    }

    #[test]
    fn range_basis_examples() {
        let b = orthonormal_range_basis(&diag(&[1.0, 0.0]), &cfg());
        assert_eq!(b.ncols(), 1);
        assert!((b[(0, 0)] - ONE).norm() < 1e-14);
        assert!(b[(1, 0)].norm() < 1e-14);

        assert_eq!(
            orthonormal_range_basis(&CMat::zeros(2, 2), &cfg()).ncols(),
            0
        );

        let col = from_real_rows(&[&[1.0], &[1.0]]);
        let b = orthonormal_range_basis(&col, &cfg());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b[(0, 0)] - c(s, 0.0)).norm() < 1e-14);
        assert!((b[(1, 0)] - c(s, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn range_basis_is_phase_normalized() {
        let m = CMat::from_fn(3, 2, |i, j| c(i as f64 - 1.0, (i * j) as f64 + 0.3));
        let b = orthonormal_range_basis(&m, &cfg());
        for col in b.column_iter() {
            let lead = col.iter().find(|z| z.norm() > 1e-8).unwrap();
            assert!(lead.im.abs() < 1e-14 && lead.re > 0.0);
        }
    }

    #[test]
    fn spectral_radius_examples() {
        assert!((spectral_radius(&diag(&[0.5, 0.25])).unwrap() - 0.5).abs() < 1e-14);
        let nil = from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(spectral_radius(&nil).unwrap() < 1e-14);
        let (s, co) = (30f64.to_radians().sin(), 30f64.to_radians().cos());
        let rot = from_real_rows(&[&[co, -s], &[s, co]]).scale(0.9);
        assert!((spectral_radius(&rot).unwrap() - 0.9).abs() < 1e-12);
    }

    #[test]
    fn operator_norm_examples() {
        assert!((operator_norm(&diag(&[0.6, 0.3])) - 0.6).abs() < 1e-14);
        assert_eq!(operator_norm(&CMat::zeros(3, 3)), 0.0);
        let m = from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        assert!((operator_norm(&m) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn subspace_distance_examples() {
        let e1 = from_real_rows(&[&[1.0], &[0.0]]);
        let e2 = from_real_rows(&[&[0.0], &[1.0]]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let diag_line = from_real_rows(&[&[s], &[s]]);
        assert!(subspace_distance(&e1, &e1).unwrap() < 1e-15);
        assert!((subspace_distance(&e1, &e2).unwrap() - 1.0).abs() < 1e-15);
        // Oracle: ‖P_A − P_B‖ for two lines at angle φ is sin φ.
        let oracle = (std::f64::consts::FRAC_PI_4).sin();
        assert!((subspace_distance(&e1, &diag_line).unwrap() - oracle).abs() < 1e-14);
        let e3 = CMat::zeros(3, 1);
        assert!(matches!(
            subspace_distance(&e1, &e3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gram_difference_matches_dense() {
        let x = CMat::from_fn(6, 2, |i, j| c((i + j) as f64 * 0.1, 0.2 * i as f64));
        let y = CMat::from_fn(6, 3, |i, j| c(0.3 - 0.1 * j as f64, (i % 2) as f64 * 0.4));
        let dense = operator_norm(&(&x * x.adjoint() - &y * y.adjoint()));
        assert!((gram_difference_norm(&x, &y).unwrap() - dense).abs() < 1e-12);
    }

    #[test]
    fn tolerance_validation() {
        assert!(cfg().validate().is_ok());
        let bad = ToleranceConfig {
            rank_tol: 0.0,
            ..cfg()
        };
        assert!(bad.validate().is_err());
    }
}
