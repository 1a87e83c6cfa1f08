//! Truncated vector-valued Hardy space over the polydisc.
//!
//! A function is stored through its Taylor coefficients `f_k ∈ E` for every
//! multi-index `k` with `k_i ≤ d`. Multi-indices are laid out in graded order
//! (total degree first, then lexicographic) and the coefficient space `E` is
//! the fastest-varying axis, so position `p` of multi-index `k` owns rows
//! `p·dim E .. (p+1)·dim E`.
//!
//! Variables are numbered from zero.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrixcore::{c, operator_norm, CMat, CVec, ONE, ZERO};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut k = vec![0; n];
        k[i] = 1;
        Self(k)
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }
}

/// All `(d+1)ⁿ` multi-indices with components `≤ d`, in graded order.
pub fn enumerate_multi_indices(n: usize, d: usize) -> Vec<MultiIndex> {
    let side = d + 1;
    let count = side.pow(n as u32);
    let mut all: Vec<MultiIndex> = (0..count)
        .map(|mut code| {
            let mut k = vec![0; n];
            for slot in k.iter_mut().rev() {
                *slot = code % side;
                code /= side;
            }
            MultiIndex(k)
        })
        .collect();
    all.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| a.cmp(b))
    });
    all
}

/// Box truncation of `H²_E(𝔻ⁿ)` at degree `d` in every variable.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedHardySpace {
    n: usize,
    degree: usize,
    coeff_dim: usize,
    indices: Vec<MultiIndex>,
    // box code (mixed radix, variable 0 slowest) -> graded position
    position: Vec<usize>,
}

impl TruncatedHardySpace {
    pub fn new(n: usize, degree: usize, coeff_dim: usize) -> Self {
        assert!(n >= 1, "at least one variable");
        let indices = enumerate_multi_indices(n, degree);
        let mut position = vec![0; indices.len()];
        let side = degree + 1;
        for (p, k) in indices.iter().enumerate() {
            let code = k.0.iter().fold(0, |acc, &ki| acc * side + ki);
            position[code] = p;
        }
        Self {
            n,
            degree,
            coeff_dim,
            indices,
            position,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff_dim(&self) -> usize {
        self.coeff_dim
    }

    /// Number of multi-indices, `(d+1)ⁿ`.
    pub fn num_indices(&self) -> usize {
        self.indices.len()
    }

    /// Total dimension `(d+1)ⁿ · dim E`.
    pub fn dim(&self) -> usize {
        self.indices.len() * self.coeff_dim
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn index(&self, position: usize) -> &MultiIndex {
        &self.indices[position]
    }

    /// Graded position of a multi-index, or `None` outside the box.
    pub fn position_of(&self, k: &[usize]) -> Option<usize> {
        if k.len() != self.n || k.iter().any(|&ki| ki > self.degree) {
            return None;
        }
        let side = self.degree + 1;
        let code = k.iter().fold(0, |acc, &ki| acc * side + ki);
        Some(self.position[code])
    }

    /// The same multi-index box with a different coefficient space.
    pub fn with_coeff_dim(&self, coeff_dim: usize) -> Self {
        Self {
            coeff_dim,
            ..self.clone()
        }
    }

    /// Row offset of the coefficient block at a position.
    pub fn offset(&self, position: usize) -> usize {
        position * self.coeff_dim
    }

    /// Positions whose multi-index has every component `≤ d − margin`.
    pub fn margin_positions(&self, margin: usize) -> Vec<usize> {
        let cap = self.degree.saturating_sub(margin);
        (0..self.num_indices())
            .filter(|&p| self.indices[p].0.iter().all(|&k| k <= cap))
            .collect()
    }

    /// Row selector for the coefficient blocks at the given positions.
    pub fn rows_of(&self, positions: &[usize]) -> Vec<usize> {
        positions
            .iter()
            .flat_map(|&p| self.offset(p)..self.offset(p) + self.coeff_dim)
            .collect()
    }

    /// Coefficient of `f` at a position.
    pub fn coefficient(&self, f: &CVec, position: usize) -> CVec {
        f.rows(self.offset(position), self.coeff_dim).into_owned()
    }

    /// `f(z) = Σ_k zᵏ f_k`.
    pub fn evaluate(&self, f: &CVec, z: &[Complex64]) -> CVec {
        let mut out = CVec::zeros(self.coeff_dim);
        for (p, k) in self.indices.iter().enumerate() {
            let mono = monomial(z, &k.0);
            out += self.coefficient(f, p) * mono;
        }
        out
    }
}

fn monomial(z: &[Complex64], k: &[usize]) -> Complex64 {
    z.iter()
        .zip(k)
        .fold(ONE, |acc, (zi, &ki)| acc * zi.powu(ki as u32))
}

/// A shift-type operator on a truncated space: a partial injective map
/// between multi-index positions, tensored with the identity on `E`.
#[derive(Clone, Debug)]
pub struct IndexMap {
    targets: Vec<Option<usize>>,
    coeff_dim: usize,
}

impl IndexMap {
    pub fn dim(&self) -> usize {
        self.targets.len() * self.coeff_dim
    }

    pub fn target(&self, position: usize) -> Option<usize> {
        self.targets[position]
    }

    /// Apply to every column of `x`.
    pub fn apply(&self, x: &CMat) -> CMat {
        assert_eq!(x.nrows(), self.dim(), "operand does not live on this space");
        let e = self.coeff_dim;
        let mut out = CMat::zeros(x.nrows(), x.ncols());
        for (src, tgt) in self.targets.iter().enumerate() {
            if let Some(tgt) = tgt {
                out.rows_mut(tgt * e, e).copy_from(&x.rows(src * e, e));
            }
        }
        out
    }

    pub fn apply_vec(&self, x: &CVec) -> CVec {
        let m = CMat::from_column_slice(x.len(), 1, x.as_slice());
        self.apply(&m).column(0).into_owned()
    }

    pub fn adjoint(&self) -> IndexMap {
        let mut targets = vec![None; self.targets.len()];
        for (src, tgt) in self.targets.iter().enumerate() {
            if let Some(tgt) = tgt {
                targets[*tgt] = Some(src);
            }
        }
        IndexMap {
            targets,
            coeff_dim: self.coeff_dim,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &IndexMap) -> IndexMap {
        let targets = other
            .targets
            .iter()
            .map(|t| t.and_then(|p| self.targets[p]))
            .collect();
        IndexMap {
            targets,
            coeff_dim: self.coeff_dim,
        }
    }

    pub fn to_dense(&self) -> CMat {
        let e = self.coeff_dim;
        let mut m = CMat::zeros(self.dim(), self.dim());
        for (src, tgt) in self.targets.iter().enumerate() {
            if let Some(tgt) = tgt {
                for a in 0..e {
                    m[(tgt * e + a, src * e + a)] = ONE;
                }
            }
        }
        m
    }
}

/// An operator that acts jointly on one variable and the coefficient space,
/// and as the identity on every other variable.
///
/// `local` is indexed by `(m, a)` with the variable degree `m` slowest, so
/// block `(m, m')` maps coefficient block `m'` of a one-variable fiber to
/// block `m`.
#[derive(Clone, Debug)]
pub struct VariableOperator {
    pub var: usize,
    pub in_dim: usize,
    pub out_dim: usize,
    pub local: CMat,
}

impl VariableOperator {
    pub fn new(var: usize, in_dim: usize, out_dim: usize, local: CMat) -> Self {
        assert_eq!(local.ncols() % in_dim.max(1), 0);
        Self {
            var,
            in_dim,
            out_dim,
            local,
        }
    }

    pub fn side(&self) -> usize {
        if self.in_dim == 0 {
            self.local.nrows() / self.out_dim.max(1)
        } else {
            self.local.ncols() / self.in_dim
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            var: self.var,
            in_dim: self.out_dim,
            out_dim: self.in_dim,
            local: self.local.adjoint(),
        }
    }

    /// Apply to every column of `x`, which lives on `space` (whose
    /// coefficient dimension must be `in_dim`).
    pub fn apply(&self, space: &TruncatedHardySpace, x: &CMat) -> CMat {
        assert_eq!(
            space.coeff_dim(),
            self.in_dim,
            "input coefficient dimension"
        );
        assert_eq!(
            x.nrows(),
            space.dim(),
            "operand does not live on this space"
        );
        let side = space.degree() + 1;
        let fibers = fiber_table(space, self.var);
        let cols = x.ncols();
        let (ein, eout) = (self.in_dim, self.out_dim);
        let mut gathered = CMat::zeros(side * ein, fibers.len() * cols);
        for (f, fiber) in fibers.iter().enumerate() {
            for (m, &p) in fiber.iter().enumerate() {
                for j in 0..cols {
                    for a in 0..ein {
                        gathered[(m * ein + a, f * cols + j)] = x[(p * ein + a, j)];
                    }
                }
            }
        }
        let mapped = &self.local * gathered;
        let mut out = CMat::zeros(space.num_indices() * eout, cols);
        for (f, fiber) in fibers.iter().enumerate() {
            for (m, &p) in fiber.iter().enumerate() {
                for j in 0..cols {
                    for a in 0..eout {
                        out[(p * eout + a, j)] = mapped[(m * eout + a, f * cols + j)];
                    }
                }
            }
        }
        out
    }

    pub fn to_dense(&self, space: &TruncatedHardySpace) -> CMat {
        self.apply(space, &CMat::identity(space.dim(), space.dim()))
    }
}

/// For each one-variable fiber along `var` (all other components fixed),
/// the positions of `k_var = 0, 1, …, d`.
pub fn fiber_table(space: &TruncatedHardySpace, var: usize) -> Vec<Vec<usize>> {
    let side = space.degree() + 1;
    space
        .indices()
        .iter()
        .filter(|k| k.0[var] == 0)
        .map(|k| {
            let mut probe = k.0.clone();
            (0..side)
                .map(|m| {
                    probe[var] = m;
                    space.position_of(&probe).expect("inside the box")
                })
                .collect()
        })
        .collect()
}

/// Truncated `M_{z_i}`: `zᵏ ⊗ e ↦ z^{k+e_i} ⊗ e`, or zero when `k_i = d`.
pub fn shift_matrix(space: &TruncatedHardySpace, i: usize) -> IndexMap {
    assert!(i < space.n(), "variable index out of range");
    let targets = space
        .indices()
        .iter()
        .map(|k| {
            let mut next = k.0.clone();
            next[i] += 1;
            space.position_of(&next)
        })
        .collect();
    IndexMap {
        targets,
        coeff_dim: space.coeff_dim(),
    }
}

/// Truncated `M_{z_i}*`, the adjoint of [`shift_matrix`].
pub fn coshift_matrix(space: &TruncatedHardySpace, i: usize) -> IndexMap {
    shift_matrix(space, i).adjoint()
}

fn check_point(z: &[Complex64]) -> Result<()> {
    match z.iter().map(|zi| zi.norm()).find(|m| !(*m < 1.0)) {
        Some(modulus) => Err(Error::PointOutsidePolydisc { modulus }),
        None => Ok(()),
    }
}

/// `𝕊(z, w) = ∏ (1 − z_i w̄_i)⁻¹`.
pub fn szego_kernel(z: &[Complex64], w: &[Complex64]) -> Result<Complex64> {
    if z.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: z.len(),
            found: w.len(),
        });
    }
    check_point(z)?;
    check_point(w)?;
    Ok(z.iter()
        .zip(w)
        .fold(ONE, |acc, (zi, wi)| acc / (ONE - zi * wi.conj())))
}

/// Truncation of `𝕊(·, w) η`: the coefficient at `k` is `w̄ᵏ η`.
pub fn kernel_vector(space: &TruncatedHardySpace, w: &[Complex64], eta: &CVec) -> Result<CVec> {
    if w.len() != space.n() {
        return Err(Error::DimensionMismatch {
            expected: space.n(),
            found: w.len(),
        });
    }
    if eta.len() != space.coeff_dim() {
        return Err(Error::DimensionMismatch {
            expected: space.coeff_dim(),
            found: eta.len(),
        });
    }
    check_point(w)?;
    let w_bar: Vec<Complex64> = w.iter().map(|x| x.conj()).collect();
    let e = space.coeff_dim();
    let mut out = CVec::zeros(space.dim());
    for (p, k) in space.indices().iter().enumerate() {
        let mono = monomial(&w_bar, &k.0);
        out.rows_mut(p * e, e).copy_from(&(eta * mono));
    }
    Ok(out)
}

/// Inclusion–exclusion `Σ_S (−1)^{|S|} (∏_{i∈S} M_{z_i})(∏_{i∈S} M_{z_i}*)`
/// as a sparse scalar operator on multi-index positions.
fn constants_inclusion_exclusion(space: &TruncatedHardySpace) -> BTreeMap<(usize, usize), f64> {
    let n = space.n();
    let shifts: Vec<IndexMap> = (0..n).map(|i| shift_matrix(space, i)).collect();
    let coshifts: Vec<IndexMap> = shifts.iter().map(IndexMap::adjoint).collect();
    let mut entries = BTreeMap::new();
    for subset in 0u32..(1 << n) {
        let sign = if subset.count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        let members: Vec<usize> = (0..n).filter(|i| subset & (1 << i) != 0).collect();
        for p in 0..space.num_indices() {
            let mut cur = Some(p);
            for &i in &members {
                cur = cur.and_then(|q| coshifts[i].target(q));
            }
            for &i in &members {
                cur = cur.and_then(|q| shifts[i].target(q));
            }
            if let Some(q) = cur {
                *entries.entry((q, p)).or_insert(0.0) += sign;
            }
        }
    }
    entries
}

/// Apply the inclusion–exclusion sum of shift products to a coefficient vector.
pub fn apply_constants_inclusion_exclusion(space: &TruncatedHardySpace, f: &CVec) -> CVec {
    let n = space.n();
    let shifts: Vec<IndexMap> = (0..n).map(|i| shift_matrix(space, i)).collect();
    let mut out = CVec::zeros(f.len());
    for subset in 0u32..(1 << n) {
        let sign = if subset.count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        let mut g = f.clone();
        for i in (0..n).filter(|i| subset & (1 << i) != 0) {
            g = shifts[i].adjoint().apply_vec(&g);
        }
        for i in (0..n).filter(|i| subset & (1 << i) != 0) {
            g = shifts[i].apply_vec(&g);
        }
        out += g * c(sign, 0.0);
    }
    out
}

/// Distance between the inclusion–exclusion sum of shift products and the
/// projection onto constant functions. Zero on every box truncation.
pub fn constants_projection_check(space: &TruncatedHardySpace) -> f64 {
    let mut entries = constants_inclusion_exclusion(space);
    *entries.entry((0, 0)).or_insert(0.0) -= 1.0;
    entries.retain(|_, v| *v != 0.0);
    if entries.is_empty() {
        return 0.0;
    }
    let size = space.num_indices();
    let mut dense = CMat::zeros(size, size);
    for ((q, p), v) in entries {
        dense[(q, p)] = c(v, 0.0);
    }
    operator_norm(&dense)
}

/// Projection onto the degree-zero coefficient block.
pub fn constants_projection(space: &TruncatedHardySpace, f: &CVec) -> CVec {
    let mut out = CVec::zeros(f.len());
    let e = space.coeff_dim();
    out.rows_mut(0, e).copy_from(&f.rows(0, e));
    out
}

pub fn zero_vector(space: &TruncatedHardySpace) -> CVec {
    CVec::from_element(space.dim(), ZERO)
}
