//! Validate a doubly commuting pair built from Kronecker factors, then break
//! double commutation with a non-tensor second operator.

use dcmodel::matrixcore::{from_real_rows, ToleranceConfig};
use dcmodel::tuples::{defect_operators, make_tensor_tuple, validate_tuple, ContractionTuple};

fn main() -> dcmodel::error::Result<()> {
    let cfg = ToleranceConfig::default();
    let a = from_real_rows(&[&[0.4, 0.2], &[0.0, -0.3]]);
    let b = from_real_rows(&[&[0.5]]);
    let t = make_tensor_tuple(&[a.clone(), b])?;

    let report = validate_tuple(&t, &cfg)?;
    println!("tensor pair accepted: {}", report.accepted());
    let defects = defect_operators(&t, &cfg)?;
    println!("joint defect rank: {}", defects.rank());

    // A commuting but not doubly commuting pair: T and T².
    let bad = ContractionTuple::new(vec![a.clone(), &a * &a])?;
    let report = validate_tuple(&bad, &cfg)?;
    println!(
        "T, T^2: contractive {} doubly commuting {} accepted {}",
        report.is_contractive(),
        report.is_doubly_commuting(),
        report.accepted()
    );
    Ok(())
}
