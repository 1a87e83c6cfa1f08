//! Quotient modules of the scalar Hardy space: compressions of the shifts
//! to span{1, z1} are doubly commuting, to span{1, (z1 + z2)/sqrt 2} not.

use std::f64::consts::FRAC_1_SQRT_2;

use dcmodel::blh::rankone_corollary_check;
use dcmodel::hardy::TruncatedHardySpace;
use dcmodel::matrixcore::{c, CMat, ToleranceConfig};

fn basis(space: &TruncatedHardySpace, vectors: &[&[(&[usize], f64)]]) -> CMat {
    let mut q = CMat::zeros(space.dim(), vectors.len());
    for (col, terms) in vectors.iter().enumerate() {
        for (k, x) in terms.iter() {
            q[(space.position_of(k).unwrap(), col)] = c(*x, 0.0);
        }
    }
    q
}

fn main() -> dcmodel::error::Result<()> {
    let cfg = ToleranceConfig::default();
    let space = TruncatedHardySpace::new(2, 4, 1);
    let q = basis(&space, &[&[(&[0, 0], 1.0)], &[(&[1, 0], 1.0)]]);
    let v = rankone_corollary_check(&space, &q, &cfg)?;
    println!(
        "span{{1, z1}}: doubly commuting {} (residual {:.1e}), defect rank {:?}",
        v.doubly_commuting, v.doubly_commuting_residual, v.defect_rank
    );
    for inner in &v.inners {
        let series = inner.scalar_series(0, 0);
        let degree = series.iter().position(|x| x.norm() > 0.5).unwrap();
        println!(
            "  theta_{} = z{}^{degree} up to phase",
            inner.variable + 1,
            inner.variable + 1
        );
    }

    let s = FRAC_1_SQRT_2;
    let q = basis(&space, &[&[(&[0, 0], 1.0)], &[(&[1, 0], s), (&[0, 1], s)]]);
    let v = rankone_corollary_check(&space, &q, &cfg)?;
    println!(
        "span{{1, (z1+z2)/sqrt2}}: doubly commuting {} (residual {:.6}, pair {:?})",
        v.doubly_commuting, v.doubly_commuting_residual, v.violating_pair
    );
    Ok(())
}
