//! Truncation-free kernel identities, evaluated in closed form at sample
//! points of the polydisc.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::charfn::{check_disc, CharFn};
use crate::error::{Error, Result};
use crate::hardy::szego_kernel;
use crate::matrixcore::{identity, operator_norm, CMat};
use crate::tuples::DefectData;

/// A pair of points `(z, w)` in the open polydisc.
pub type PointPair = (Vec<Complex64>, Vec<Complex64>);

/// Deterministic pairs of points with every coordinate of modulus
/// `≤ max_modulus`.
pub fn sample_point_pairs(n: usize, count: usize, max_modulus: f64, seed: u64) -> Vec<PointPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point = |rng: &mut ChaCha8Rng| -> Vec<Complex64> {
        (0..n)
            .map(|_| {
                let r = max_modulus * rng.random::<f64>().sqrt();
                let angle = std::f64::consts::TAU * rng.random::<f64>();
                Complex64::from_polar(r, angle)
            })
            .collect()
    };
    (0..count)
        .map(|_| {
            let z = point(&mut rng);
            let w = point(&mut rng);
            (z, w)
        })
        .collect()
}

fn check_point(z: &[Complex64], n: usize) -> Result<()> {
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: z.len(),
        });
    }
    z.iter().try_for_each(|&zi| check_disc(zi))
}

fn solve(a: CMat, b: &CMat) -> Result<CMat> {
    a.lu().solve(b).ok_or(Error::ResolventSingular)
}

/// `D_{T*}(I − zT*)⁻¹(I − w̄T)⁻¹D_{T*}` in ambient coordinates.
fn resolvent_kernel(cf: &CharFn, z: Complex64, w: Complex64) -> Result<CMat> {
    let t = &cf.operator;
    let dim = t.nrows();
    let right = solve(identity(dim) - t * w.conj(), &cf.defects.d_star)?;
    let middle = solve(identity(dim) - t.adjoint() * z, &right)?;
    Ok(&cf.defects.d_star * middle)
}

/// `I − Θ(z)Θ(w)*` on the adjoint defect space, in ambient coordinates.
fn theta_defect(cf: &CharFn, z: Complex64, w: Complex64) -> Result<CMat> {
    let bs = &cf.defects.basis_star;
    let gram = cf.eval(z)? * cf.eval(w)?.adjoint();
    Ok(bs * (identity(cf.out_dim()) - gram) * bs.adjoint())
}

/// Max over samples and variables of `‖(I − P)XP‖`, `P` the projection onto
/// the joint defect space and `X` either bracketed operator whose action
/// must leave that space invariant.
pub fn defect_invariance_check(
    defects: &DefectData,
    charfns: &[CharFn],
    samples: &[PointPair],
) -> Result<f64> {
    let p = defects.projection();
    let q = identity(p.nrows()) - &p;
    let mut worst = 0.0f64;
    for (z, w) in samples {
        check_point(z, charfns.len())?;
        check_point(w, charfns.len())?;
        for (i, cf) in charfns.iter().enumerate() {
            let kernel = resolvent_kernel(cf, z[i], w[i])?;
            let bs = &cf.defects.basis_star;
            let gram = bs * cf.eval(z[i])? * cf.eval(w[i])?.adjoint() * bs.adjoint();
            for x in [kernel, gram] {
                worst = worst.max(operator_norm(&(&q * x * &p)));
            }
        }
    }
    Ok(worst)
}

/// Max over samples of the gap between `∏ D_{T_i*}`-resolvent kernels and
/// `𝕊(z, w) ∏ (I − Θ_i(z)Θ_i(w)*)`, both restricted to the joint defect
/// space and written in its coordinates.
pub fn product_kernel_identity_check(
    defects: &DefectData,
    charfns: &[CharFn],
    samples: &[PointPair],
) -> Result<f64> {
    let b = &defects.big_defect_basis;
    let dim = b.nrows();
    let mut worst = 0.0f64;
    for (z, w) in samples {
        check_point(z, charfns.len())?;
        check_point(w, charfns.len())?;
        let mut lhs = identity(dim);
        let mut rhs = identity(dim);
        for (i, cf) in charfns.iter().enumerate() {
            lhs *= resolvent_kernel(cf, z[i], w[i])?;
            rhs *= theta_defect(cf, z[i], w[i])?;
        }
        let rhs = rhs * szego_kernel(z, w)?;
        worst = worst.max(operator_norm(&(b.adjoint() * (lhs - rhs) * b)));
    }
    Ok(worst)
}

/// Kernel form of the Gramian identity: the reproducing-kernel matrix of
/// `L L*`, `D_{T*} ∏(I − z_iT_i*)⁻¹ ∏(I − w̄_iT_i)⁻¹ D_{T*}`, against
/// `𝕊(z, w) ∏ (I − Θ_i(z)Θ_i(w)*)`, on joint-defect coordinates.
pub fn gramian_kernel_check(
    defects: &DefectData,
    charfns: &[CharFn],
    samples: &[PointPair],
) -> Result<f64> {
    let b = &defects.big_defect_basis;
    let embed = &defects.big_defect * b;
    let mut worst = 0.0f64;
    for (z, w) in samples {
        check_point(z, charfns.len())?;
        check_point(w, charfns.len())?;
        let mut right = embed.clone();
        for cf in charfns {
            let dim = cf.operator.nrows();
            let i = cf.op_index;
            right = solve(identity(dim) - &cf.operator * w[i].conj(), &right)?;
        }
        for cf in charfns {
            let dim = cf.operator.nrows();
            let i = cf.op_index;
            right = solve(identity(dim) - cf.operator.adjoint() * z[i], &right)?;
        }
        let lhs = embed.adjoint() * right;
        let mut product = identity(b.nrows());
        for cf in charfns {
            product *= theta_defect(cf, z[cf.op_index], w[cf.op_index])?;
        }
        let rhs = b.adjoint() * product * b * szego_kernel(z, w)?;
        worst = worst.max(operator_norm(&(lhs - rhs)));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixcore::{c, from_real_rows, ToleranceConfig};
    use crate::model::characteristic_functions;
    use crate::tuples::{
        defect_operators, make_random_pure_contraction, make_tensor_tuple, ContractionTuple,
    };

    fn tensor_pair() -> ContractionTuple {
        make_tensor_tuple(&[
            from_real_rows(&[&[0.5, 0.2], &[0.0, 0.3]]),
            from_real_rows(&[&[0.4]]),
        ])
        .unwrap()
    }

    fn parts(t: &ContractionTuple) -> (DefectData, Vec<CharFn>) {
        let cfg = ToleranceConfig::default();
        (
            defect_operators(t, &cfg).unwrap(),
            characteristic_functions(t, 10_000, &cfg).unwrap(),
        )
    }

    #[test]
    fn origin_reduces_to_defects() {
        let t = tensor_pair();
        let (defects, cfs) = parts(&t);
        let origin = vec![(vec![c(0.0, 0.0); 2], vec![c(0.0, 0.0); 2])];
        assert!(defect_invariance_check(&defects, &cfs, &origin).unwrap() < 1e-15);
        assert!(product_kernel_identity_check(&defects, &cfs, &origin).unwrap() < 1e-14);
        assert!(gramian_kernel_check(&defects, &cfs, &origin).unwrap() < 1e-14);
    }

    #[test]
    fn tensor_pair_random_samples() {
        let t = tensor_pair();
        let (defects, cfs) = parts(&t);
        let samples = sample_point_pairs(2, 50, 0.95, 4);
        assert!(defect_invariance_check(&defects, &cfs, &samples).unwrap() < 1e-10);
        assert!(product_kernel_identity_check(&defects, &cfs, &samples).unwrap() < 1e-9);
        assert!(gramian_kernel_check(&defects, &cfs, &samples).unwrap() < 1e-9);
    }

    #[test]
    fn single_variable_matches_factor_identity() {
        let t =
            ContractionTuple::new(vec![make_random_pure_contraction(3, 0.7, 9).unwrap()]).unwrap();
        let (defects, cfs) = parts(&t);
        let samples = sample_point_pairs(1, 30, 0.9, 1);
        let scalar: Vec<_> = samples.iter().map(|(z, w)| (z[0], w[0])).collect();
        assert!(crate::model::kernel_identity_check(&cfs[0], &scalar).unwrap() < 1e-10);
        assert!(product_kernel_identity_check(&defects, &cfs, &samples).unwrap() < 1e-10);
    }

    #[test]
    fn rejects_points_outside() {
        let t = tensor_pair();
        let (defects, cfs) = parts(&t);
        let bad = vec![(vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0); 2])];
        assert!(matches!(
            product_kernel_identity_check(&defects, &cfs, &bad),
            Err(Error::PointOutsidePolydisc { .. })
        ));
    }

    #[test]
    fn samples_are_deterministic_and_inside() {
        let a = sample_point_pairs(3, 20, 0.9, 7);
        assert_eq!(a, sample_point_pairs(3, 20, 0.9, 7));
        assert!(a
            .iter()
            .all(|(z, w)| z.iter().chain(w).all(|x| x.norm() <= 0.9)));
    }
}
