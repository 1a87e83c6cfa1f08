//! Taylor coefficients of the characteristic function of a 2x2 contraction,
//! compared with the resolvent formula and checked for unitary boundary
//! values.

use dcmodel::matrixcore::{c, from_real_rows, max_abs, ToleranceConfig};
use dcmodel::model::{charfn_taylor, inner_boundary_check};

fn main() -> dcmodel::error::Result<()> {
    let t = from_real_rows(&[&[0.5, 0.3], &[0.0, -0.4]]);
    let cf = charfn_taylor(0, &t, 4096, &ToleranceConfig::default())?;
    println!(
        "{} coefficients, {} -> {} defect dims, dropped tail {:.1e}",
        cf.taylor.len(),
        cf.in_dim(),
        cf.out_dim(),
        cf.dropped_norm
    );
    for (m, coeff) in cf.taylor.iter().take(4).enumerate() {
        println!("theta_{m} = {coeff:.4}");
    }
    let z = c(0.3, -0.6);
    println!(
        "series vs resolvent at z = {z}: {:.2e}",
        max_abs(&(cf.eval_series(z) - cf.eval(z)?))
    );
    println!(
        "boundary unitarity defect: {:.2e}",
        inner_boundary_check(&cf, 64)?
    );
    Ok(())
}
