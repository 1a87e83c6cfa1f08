//! Deterministic demo tuples.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde_json::{json, Value};

use super::file::TupleFile;
use crate::error::{Error, Result};
use crate::matrixcore::{c, CMat};
use crate::tuples::{
    make_nilpotent_jordan, make_random_pure_contraction, make_tensor_tuple, ContractionTuple,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DemoKind {
    /// Kronecker tuple of random pure contractions.
    Tensor,
    /// A tensor tuple conjugated by a random unitary.
    Random,
    /// Kronecker tuple of scaled nilpotent Jordan blocks.
    Jordan,
}

impl DemoKind {
    pub fn name(self) -> &'static str {
        match self {
            DemoKind::Tensor => "tensor",
            DemoKind::Random => "random",
            DemoKind::Jordan => "jordan",
        }
    }
}

fn random_unitary(dim: usize, seed: u64) -> CMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = CMat::from_fn(dim, dim, |_, _| {
        c(
            StandardNormal.sample(&mut rng),
            StandardNormal.sample(&mut rng),
        )
    });
    g.qr().q()
}

/// Build the demo tuple; one factor per entry of `dims`.
pub fn demo_tuple(
    kind: DemoKind,
    dims: &[usize],
    radius: f64,
    seed: u64,
) -> Result<ContractionTuple> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidInput(
            "dims must be a nonempty list of positive sizes".into(),
        ));
    }
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::InvalidInput(format!(
            "radius must lie in (0, 1), got {radius}"
        )));
    }
    match kind {
        DemoKind::Tensor | DemoKind::Random => {
            let factors = dims
                .iter()
                .enumerate()
                .map(|(i, &d)| make_random_pure_contraction(d, radius, seed.wrapping_add(i as u64)))
                .collect::<Result<Vec<_>>>()?;
            let t = make_tensor_tuple(&factors)?;
            if kind == DemoKind::Tensor {
                return Ok(t);
            }
            let u = random_unitary(t.dim(), seed ^ 0x9e37_79b9_7f4a_7c15);
            ContractionTuple::new(t.matrices().iter().map(|m| &u * m * u.adjoint()).collect())
        }
        DemoKind::Jordan => {
            let factors: Vec<CMat> = dims
                .iter()
                .map(|&d| make_nilpotent_jordan(d, radius))
                .collect();
            make_tensor_tuple(&factors)
        }
    }
}

/// Demo tuple as a file, with its generating parameters as metadata.
pub fn generate_demo(kind: DemoKind, dims: &[usize], radius: f64, seed: u64) -> Result<TupleFile> {
    let t = demo_tuple(kind, dims, radius, seed)?;
    let metadata: BTreeMap<String, Value> = [
        ("name", json!(kind.name())),
        ("dims", json!(dims)),
        ("radius", json!(radius)),
        ("seed", json!(seed)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    Ok(TupleFile::from_tuple(&t, metadata))
}
