//! Recover the one-variable inner functions of a scalar pair and compare
//! them with Mobius maps.

use dcmodel::blh::{decompose, reconstruct_s_check};
use dcmodel::dilation::build_dilation;
use dcmodel::matrixcore::{c, CMat, ToleranceConfig};
use dcmodel::model::{
    build_multipliers, characteristic_functions, mobius_coefficients, model_space,
};
use dcmodel::tuples::make_tensor_tuple;

fn main() -> dcmodel::error::Result<()> {
    let cfg = ToleranceConfig::default();
    let params = [0.5, 0.6];
    let factors: Vec<CMat> = params
        .iter()
        .map(|&a| CMat::from_element(1, 1, c(a, 0.0)))
        .collect();
    let t = make_tensor_tuple(&factors)?;
    let l = build_dilation(&t, 20, &cfg)?;
    let charfns = characteristic_functions(&t, 4096, &cfg)?;
    let model = model_space(&l, &build_multipliers(&charfns, &l.space), None, &cfg)?;

    let inners = decompose(&model);
    for (inner, &a) in inners.iter().zip(&params) {
        let series = inner.scalar_series(0, 0);
        let mobius = mobius_coefficients(c(a, 0.0), series.len());
        let phase = series[0] / mobius[0];
        let err = series
            .iter()
            .zip(&mobius)
            .map(|(x, y)| (x - phase * y).norm())
            .fold(0.0, f64::max);
        println!(
            "Phi_{}: dim {}, phase {:.3}, max coefficient error {err:.2e}",
            inner.variable + 1,
            inner.inner_dim,
            phase
        );
    }
    println!(
        "reconstruction distance {:.2e}",
        reconstruct_s_check(&inners, &model, &cfg)?
    );
    Ok(())
}
