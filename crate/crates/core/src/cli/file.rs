//! JSON tuple files: `{"n", "dim", "matrices", "metadata"}` with complex
//! entries as `[re, im]` pairs.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrixcore::{c, CMat};
use crate::tuples::ContractionTuple;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TupleFile {
    pub n: usize,
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

impl TupleFile {
    pub fn from_tuple(t: &ContractionTuple, metadata: BTreeMap<String, Value>) -> Self {
        let matrices = t
            .matrices()
            .iter()
            .map(|m| {
                (0..m.nrows())
                    .map(|r| {
                        (0..m.ncols())
                            .map(|col| [m[(r, col)].re, m[(r, col)].im])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            n: t.n(),
            dim: t.dim(),
            matrices,
            metadata,
        }
    }

    /// Check the declared shape and build the tuple.
    pub fn to_tuple(&self) -> Result<ContractionTuple> {
        if self.matrices.len() != self.n {
            return Err(Error::Parse(format!(
                "declared n = {} but found {} matrices",
                self.n,
                self.matrices.len()
            )));
        }
        if self.n == 0 || self.dim == 0 {
            return Err(Error::Parse("n and dim must be positive".into()));
        }
        let mut out = Vec::with_capacity(self.n);
        for (index, rows) in self.matrices.iter().enumerate() {
            if rows.len() != self.dim || rows.iter().any(|row| row.len() != self.dim) {
                return Err(Error::Parse(format!(
                    "matrix {index} is not {d}×{d}",
                    d = self.dim
                )));
            }
            let m = CMat::from_fn(self.dim, self.dim, |r, col| {
                let [re, im] = rows[r][col];
                c(re, im)
            });
            out.push(m);
        }
        ContractionTuple::new(out)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("tuple files always serialize");
        text.push('\n');
        text
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }
}
