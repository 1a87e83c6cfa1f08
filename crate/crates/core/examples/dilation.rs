//! Build the truncated dilation of a random doubly commuting pair and
//! measure how well it intertwines the adjoint shifts.

use dcmodel::dilation::{
    build_dilation_adaptive, compressed_tuple_residual, intertwining_residual, isometry_defect,
    minimality_check,
};
use dcmodel::matrixcore::ToleranceConfig;
use dcmodel::tuples::{make_random_pure_contraction, make_tensor_tuple};

fn main() -> dcmodel::error::Result<()> {
    let cfg = ToleranceConfig::default();
    let t = make_tensor_tuple(&[
        make_random_pure_contraction(2, 0.45, 1)?,
        make_random_pure_contraction(2, 0.35, 2)?,
    ])?;
    let l = build_dilation_adaptive(&t, &cfg)?;
    println!(
        "degree {} rows {} cols {}",
        l.degree(),
        l.matrix.nrows(),
        l.matrix.ncols()
    );
    println!("isometry defect   {:.3e}", isometry_defect(&l));
    for i in 0..t.n() {
        println!(
            "intertwining z{}   {:.3e}",
            i + 1,
            intertwining_residual(&l, i)
        );
    }
    println!("minimality        {:.3e}", minimality_check(&l, &cfg));
    for (i, r) in compressed_tuple_residual(&l).iter().enumerate() {
        println!("L* M_z{} L - T{}   {r:.3e}", i + 1, i + 1);
    }
    Ok(())
}
