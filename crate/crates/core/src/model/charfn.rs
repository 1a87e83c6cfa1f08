//! Characteristic functions of single contractions and their one-variable
//! Toeplitz multipliers.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hardy::{TruncatedHardySpace, VariableOperator};
use crate::matrixcore::{identity, operator_norm, spectral_radius, CMat, ToleranceConfig, ONE};
use crate::tuples::OperatorDefects;

/// `θ_T(z) = −T + D_{T*}(I − zT*)⁻¹ z D_T` as a map `𝒟_T → 𝒟_{T*}`, stored
/// through its Taylor coefficients in defect-basis coordinates.
#[derive(Clone, Debug)]
pub struct CharFn {
    pub op_index: usize,
    pub taylor: Vec<CMat>,
    /// Geometric ratio fitted to the coefficient norms; zero for polynomials.
    pub decay_rate: f64,
    /// Norm of the first dropped `T*^{m−1} D_T` factor, which bounds every
    /// dropped coefficient.
    pub dropped_norm: f64,
    pub operator: CMat,
    pub defects: OperatorDefects,
}

impl CharFn {
    pub fn in_dim(&self) -> usize {
        self.defects.basis.ncols()
    }

    pub fn out_dim(&self) -> usize {
        self.defects.basis_star.ncols()
    }

    /// Horner summation of the stored Taylor series.
    pub fn eval_series(&self, z: Complex64) -> CMat {
        let mut acc = CMat::zeros(self.out_dim(), self.in_dim());
        for coeff in self.taylor.iter().rev() {
            acc = acc * z + coeff;
        }
        acc
    }

    /// Closed-form value through a resolvent solve.
    pub fn eval(&self, z: Complex64) -> Result<CMat> {
        charfn_eval(&self.operator, z, &self.defects)
    }
}

/// `θ_T(z)` in defect coordinates.
pub fn charfn_eval(t: &CMat, z: Complex64, defects: &OperatorDefects) -> Result<CMat> {
    let dim = t.nrows();
    let resolvent = identity(dim) - t.adjoint() * z;
    let rhs = &defects.d * &defects.basis * z;
    let solved = resolvent.lu().solve(&rhs).ok_or(Error::ResolventSingular)?;
    let ambient = -(t * &defects.basis) + &defects.d_star * solved;
    let value = defects.basis_star.adjoint() * ambient;
    if value.iter().all(|x| x.re.is_finite() && x.im.is_finite()) {
        Ok(value)
    } else {
        Err(Error::ResolventSingular)
    }
}

/// Taylor coefficients of `θ_{T_i}` until the factor `T*^{m−1} D_T` falls
/// below `rank_tol`; every later coefficient is bounded by that factor.
pub fn charfn_taylor(
    op_index: usize,
    t: &CMat,
    m_max: usize,
    cfg: &ToleranceConfig,
) -> Result<CharFn> {
    let radius = spectral_radius(t)?;
    if radius >= 1.0 {
        return Err(Error::FactorNotPure {
            index: op_index,
            radius,
        });
    }
    let defects = OperatorDefects::new(t, cfg)?;
    let left = defects.basis_star.adjoint() * &defects.d_star;
    let mut taylor = vec![-(defects.basis_star.adjoint() * t * &defects.basis)];
    let mut factor = &defects.d * &defects.basis;
    let t_adj = t.adjoint();
    let dropped_norm = loop {
        let size = operator_norm(&factor);
        if size <= cfg.rank_tol {
            break size;
        }
        if taylor.len() > m_max {
            return Err(Error::DegreeCapExceeded {
                degree: m_max,
                achieved: size,
            });
        }
        taylor.push(&left * &factor);
        factor = &t_adj * factor;
    };

    let decay_rate = if taylor.len() >= 3 {
        let first = operator_norm(&taylor[1]);
        let last = operator_norm(&taylor[taylor.len() - 1]);
        if first > 0.0 {
            (last / first).powf(1.0 / (taylor.len() - 2) as f64)
        } else {
            0.0
        }
    } else {
        0.0
    };

    Ok(CharFn {
        op_index,
        taylor,
        decay_rate,
        dropped_norm,
        operator: t.clone(),
        defects,
    })
}

/// `max_t ‖θ(e^{it})*θ(e^{it}) − I‖` over equispaced boundary points.
pub fn inner_boundary_check(cf: &CharFn, samples: usize) -> Result<f64> {
    if spectral_radius(&cf.operator)? >= 1.0 {
        return Err(Error::ResolventSingular);
    }
    let id = identity(cf.in_dim());
    let mut worst = 0.0f64;
    for s in 0..samples.max(1) {
        let angle = 2.0 * PI * s as f64 / samples.max(1) as f64;
        let theta = cf.eval(Complex64::from_polar(1.0, angle))?;
        worst = worst.max(operator_norm(&(theta.adjoint() * theta - &id)));
    }
    Ok(worst)
}

/// Max over `(z, w)` of
/// `‖(1 − z w̄)⁻¹ (I − θ(z)θ(w)*) − D_{T*}(I − zT*)⁻¹(I − w̄T)⁻¹D_{T*}‖`
/// on the adjoint defect space, both sides in closed form.
pub fn kernel_identity_check(cf: &CharFn, samples: &[(Complex64, Complex64)]) -> Result<f64> {
    let t = &cf.operator;
    let dim = t.nrows();
    let bs = &cf.defects.basis_star;
    let outer = &cf.defects.d_star * bs;
    let id = identity(cf.out_dim());
    let mut worst = 0.0f64;
    for &(z, w) in samples {
        check_disc(z)?;
        check_disc(w)?;
        let lhs = (&id - cf.eval(z)? * cf.eval(w)?.adjoint()) / (ONE - z * w.conj());
        let right = (identity(dim) - t * w.conj())
            .lu()
            .solve(&outer)
            .ok_or(Error::ResolventSingular)?;
        let middle = (identity(dim) - t.adjoint() * z)
            .lu()
            .solve(&right)
            .ok_or(Error::ResolventSingular)?;
        let rhs = outer.adjoint() * middle;
        worst = worst.max(operator_norm(&(lhs - rhs)));
    }
    Ok(worst)
}

pub(crate) fn check_disc(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::PointOutsidePolydisc { modulus: z.norm() })
    }
}

/// Truncated `M_{Θ_{T_i}}`: the Toeplitz matrix of `θ` in variable `i`,
/// identity in the others.
#[derive(Clone, Debug)]
pub struct OneVarMultiplier {
    pub char_fn: CharFn,
    /// Input space, coefficients in `𝒟_{T_i}` coordinates.
    pub space: TruncatedHardySpace,
    pub operator: VariableOperator,
}

impl OneVarMultiplier {
    pub fn output_space(&self) -> TruncatedHardySpace {
        self.space.with_coeff_dim(self.char_fn.out_dim())
    }

    pub fn apply(&self, x: &CMat) -> CMat {
        self.operator.apply(&self.space, x)
    }

    /// Dense matrix; only sensible for small spaces.
    pub fn matrix(&self) -> CMat {
        self.operator.to_dense(&self.space)
    }

    /// The one-variable block Toeplitz matrix of size `(d+1)·out × (d+1)·in`.
    pub fn toeplitz(&self) -> &CMat {
        &self.operator.local
    }
}

/// One-variable block Toeplitz matrix of a coefficient sequence.
pub fn toeplitz_matrix(coeffs: &[CMat], out_dim: usize, in_dim: usize, degree: usize) -> CMat {
    let side = degree + 1;
    let mut local = CMat::zeros(side * out_dim, side * in_dim);
    for row in 0..side {
        for col in 0..=row {
            if let Some(block) = coeffs.get(row - col) {
                local
                    .view_mut((row * out_dim, col * in_dim), (out_dim, in_dim))
                    .copy_from(block);
            }
        }
    }
    local
}

/// Multiplier on `space` (whose coefficient dimension is replaced by
/// `dim 𝒟_{T_i}`) for variable `cf.op_index`.
pub fn multiplier_matrix(cf: &CharFn, space: &TruncatedHardySpace) -> OneVarMultiplier {
    let space = space.with_coeff_dim(cf.in_dim());
    let local = toeplitz_matrix(&cf.taylor, cf.out_dim(), cf.in_dim(), space.degree());
    OneVarMultiplier {
        char_fn: cf.clone(),
        operator: VariableOperator::new(cf.op_index, cf.in_dim(), cf.out_dim(), local),
        space,
    }
}

/// Möbius coefficients of `(z − a)/(1 − āz)`, used as a scalar oracle.
pub fn mobius_coefficients(a: Complex64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|m| match m {
            0 => -a,
            _ => (1.0 - a.norm_sqr()) * a.conj().powu(m as u32 - 1),
        })
        .collect()
}
