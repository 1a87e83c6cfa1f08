//! Model space of a doubly commuting pair: per-variable projections, their
//! commutation and the complement identity on margin layers.

use dcmodel::dilation::build_dilation;
use dcmodel::matrixcore::{from_real_rows, ToleranceConfig};
use dcmodel::model::{
    build_multipliers, characteristic_functions, gramian_identity_check, model_space, GramianMode,
};
use dcmodel::tuples::make_tensor_tuple;

fn main() -> dcmodel::error::Result<()> {
    let cfg = ToleranceConfig::default();
    let t = make_tensor_tuple(&[
        from_real_rows(&[&[0.3, 0.2], &[0.0, 0.1]]),
        from_real_rows(&[&[-0.4]]),
    ])?;
    let l = build_dilation(&t, 24, &cfg)?;
    let charfns = characteristic_functions(&t, 4096, &cfg)?;
    let mults = build_multipliers(&charfns, &l.space);

    let gram = gramian_identity_check(&l, &mults, &GramianMode::Operator { margin: 12 })?;
    println!("L L* vs prod(I - M M*) on margin layers: {gram:.2e}");

    let model = model_space(&l, &mults, None, &cfg)?;
    println!("space dim {}, margin {}", model.space.dim(), model.margin);
    for p in &model.projections {
        println!(
            "P_{}: idempotency drift {:.2e}, clip drift {:.2e}",
            p.var + 1,
            p.idempotency_drift,
            p.clip_drift
        );
    }
    println!("commutator bound      {:.2e}", model.commutator_bound);
    println!("complement distance   {:.2e}", model.complement_distance);
    println!("compression residuals {:?}", model.compression_residuals);
    Ok(())
}
