//! Sparse order-m, dimension-n tensors.
//!
//! Indices are 0-based in the Rust API. The JSON format (see [`crate::io`])
//! uses 1-based indices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// An order-`m`, dimension-`n` real tensor in coordinate storage.
///
/// Absent tuples are structural zeros; a stored value is never exactly `0.0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, f64>,
}

impl Tensor {
    /// Builds a tensor from 0-based index tuples. Zero values are dropped.
    pub fn new<I>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        check_shape(order, dim)?;
        let mut map = BTreeMap::new();
        for (idx, v) in entries {
            if idx.len() != order {
                return Err(Error::BadArity {
                    expected: order,
                    found: idx.len(),
                });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::IndexOutOfRange { index: bad, dim });
            }
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "non-finite value at {idx:?}"
                )));
            }
            if map.contains_key(&idx) {
                return Err(Error::DuplicateIndex(idx));
            }
            map.insert(idx, v);
        }
        map.retain(|_, v| *v != 0.0);
        Ok(Tensor {
            order,
            dim,
            entries: map,
        })
    }

    /// Same as [`Tensor::new`] with 1-based index tuples.
    pub fn from_one_based<I>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        let mut shifted = Vec::new();
        for (idx, v) in entries {
            let mut out = Vec::with_capacity(idx.len());
            for i in idx {
                if i == 0 || i > dim {
                    return Err(Error::IndexOutOfRange { index: i, dim });
                }
                out.push(i - 1);
            }
            shifted.push((out, v));
        }
        Tensor::new(order, dim, shifted)
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        Tensor::new(order, dim, Vec::new())
    }

    /// The unit tensor: `1` on the super-diagonal `i1 = … = im`.
    pub fn unit(order: usize, dim: usize) -> Result<Self> {
        Tensor::new(order, dim, (0..dim).map(|i| (vec![i; order], 1.0)))
    }

    pub fn diagonal(order: usize, diag: &[f64]) -> Result<Self> {
        Tensor::new(
            order,
            diag.len(),
            diag.iter().enumerate().map(|(i, &d)| (vec![i; order], d)),
        )
    }

    /// Tensor with every one of the `n^m` entries equal to `value`.
    pub fn filled(order: usize, dim: usize, value: f64) -> Result<Self> {
        check_shape(order, dim)?;
        Tensor::new(order, dim, all_tuples(order, dim).map(|t| (t, value)))
    }

    /// The row-diagonal tensor `P·I_m`, i.e. `a_{ij…j} = p_{ij}`.
    pub fn row_diagonal_from_matrix(p: &Matrix, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::OrderTooSmall {
                min: 2,
                found: order,
            });
        }
        let n = p.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut idx = vec![j; order];
                idx[0] = i;
                entries.push((idx, p.get(i, j)));
            }
        }
        Tensor::new(order, n, entries)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.entries.get(idx).copied().unwrap_or(0.0)
    }

    /// Nonzero entries in lexicographic tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], f64)> + '_ {
        self.entries.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Nonzero entries of row `i` (first index fixed).
    pub fn row(&self, i: usize) -> impl Iterator<Item = (&[usize], f64)> + '_ {
        let lo = vec![i];
        let hi = vec![i + 1];
        self.entries.range(lo..hi).map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|k| k.iter().all(|&i| i == k[0]))
    }

    /// `a_{i…i}` for each `i`.
    pub fn diagonal_values(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.get(&vec![i; self.order]))
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|&v| v >= 0.0)
    }

    pub fn scale(&self, c: f64) -> Tensor {
        Tensor {
            order: self.order,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(k, &v)| (k.clone(), c * v))
                .filter(|(_, v)| *v != 0.0)
                .collect(),
        }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other)?;
        let mut entries = self.entries.clone();
        for (k, &v) in &other.entries {
            *entries.entry(k.clone()).or_insert(0.0) += v;
        }
        entries.retain(|_, v| *v != 0.0);
        Ok(Tensor {
            order: self.order,
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.add(&other.scale(-1.0))
    }

    pub fn abs(&self) -> Tensor {
        Tensor {
            order: self.order,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(k, &v)| (k.clone(), v.abs()))
                .collect(),
        }
    }

    /// Largest entrywise absolute difference; `None` if shapes differ.
    pub fn max_abs_diff(&self, other: &Tensor) -> Option<f64> {
        if self.order != other.order || self.dim != other.dim {
            return None;
        }
        let mut worst = 0.0f64;
        for (k, &v) in &self.entries {
            worst = worst.max((v - other.get(k)).abs());
        }
        for (k, &v) in &other.entries {
            if !self.entries.contains_key(k) {
                worst = worst.max(v.abs());
            }
        }
        Some(worst)
    }

    pub fn approx_eq(&self, other: &Tensor, tol: f64) -> bool {
        self.max_abs_diff(other).is_some_and(|d| d <= tol)
    }

    /// The principal subtensor `A[I]`, re-indexed in the order of `I`.
    pub fn principal_subtensor(&self, set: &IndexSet) -> Result<Tensor> {
        if set.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if set.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: set.dim(),
            });
        }
        let mut position = vec![usize::MAX; self.dim];
        for (p, &i) in set.members().iter().enumerate() {
            position[i] = p;
        }
        let entries = self.entries.iter().filter_map(|(k, &v)| {
            let idx: Option<Vec<usize>> = k
                .iter()
                .map(|&i| (position[i] != usize::MAX).then_some(position[i]))
                .collect();
            idx.map(|idx| (idx, v))
        });
        Tensor::new(self.order, set.len(), entries)
    }

    /// Permutation similarity `P A P^T`: `b_{σ(i1)…σ(im)} = a_{i1…im}`.
    pub fn permute_similar(&self, sigma: &Permutation) -> Result<Tensor> {
        if sigma.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: sigma.dim(),
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|(k, &v)| (k.iter().map(|&i| sigma.apply(i)).collect::<Vec<_>>(), v))
            .collect();
        Ok(Tensor {
            order: self.order,
            dim: self.dim,
            entries,
        })
    }

    /// `(Ax)_i = Σ a_{i i2…im} x_{i2}⋯x_{im}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if self.order < 2 {
            return Err(Error::OrderTooSmall {
                min: 2,
                found: self.order,
            });
        }
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let mut y = vec![0.0; self.dim];
        for (k, &v) in &self.entries {
            y[k[0]] += v * k[1..].iter().map(|&j| x[j]).product::<f64>();
        }
        Ok(y)
    }

    /// True when every nonzero has `i2 = … = im`.
    pub fn is_row_diagonal(&self) -> bool {
        self.entries
            .keys()
            .all(|k| k.len() < 2 || k[1..].iter().all(|&i| i == k[1]))
    }

    /// `M(A)_{ij} = a_{ij…j}`.
    pub fn majorization_matrix(&self) -> Result<Matrix> {
        self.require_order(2)?;
        let n = self.dim;
        let mut m = Matrix::zeros(n);
        for (k, &v) in &self.entries {
            if k[1..].iter().all(|&i| i == k[1]) {
                m.set(k[0], k[1], v);
            }
        }
        Ok(m)
    }

    /// `G(|A|)_{ij}` = sum of `|a_{i i2…im}|` over tuples whose trailing
    /// indices contain `j`.
    pub fn representation_matrix(&self) -> Result<Matrix> {
        self.require_order(2)?;
        let mut g = Matrix::zeros(self.dim);
        let mut seen = Vec::with_capacity(self.order);
        for (k, &v) in &self.entries {
            seen.clear();
            for &j in &k[1..] {
                if !seen.contains(&j) {
                    seen.push(j);
                    g.set(k[0], j, g.get(k[0], j) + v.abs());
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn require_order(&self, min: usize) -> Result<()> {
        if self.order < min {
            Err(Error::OrderTooSmall {
                min,
                found: self.order,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_same_shape(&self, other: &Tensor) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.order != other.order {
            return Err(Error::InvalidArgument(format!(
                "order mismatch: {} vs {}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    pub(crate) fn from_map(order: usize, dim: usize, entries: BTreeMap<Vec<usize>, f64>) -> Self {
        debug_assert!(entries.values().all(|&v| v != 0.0));
        Tensor {
            order,
            dim,
            entries,
        }
    }
}

fn check_shape(order: usize, dim: usize) -> Result<()> {
    if order < 1 {
        return Err(Error::OrderTooSmall {
            min: 1,
            found: order,
        });
    }
    if dim < 1 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    Ok(())
}

/// All `dim^order` index tuples in lexicographic order.
pub fn all_tuples(order: usize, dim: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.checked_pow(order as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut c| {
        let mut t = vec![0; order];
        for slot in t.iter_mut().rev() {
            *slot = c % dim;
            c /= dim;
        }
        t
    })
}

/// A bijection of `{0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{image:?} is not a bijection of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// `σ(i) = n - 1 - i`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            image: (0..n).rev().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { image: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// A sorted subset of `{0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    dim: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(dim: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim });
        }
        members.sort_unstable();
        members.dedup();
        Ok(IndexSet { dim, members })
    }

    pub fn full(dim: usize) -> Self {
        IndexSet {
            dim,
            members: (0..dim).collect(),
        }
    }

    /// The contiguous range `lo..hi`.
    pub fn range(dim: usize, lo: usize, hi: usize) -> Self {
        IndexSet {
            dim,
            members: (lo..hi.min(dim)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet {
            dim: self.dim,
            members: (0..self.dim).filter(|&i| !self.contains(i)).collect(),
        }
    }

    /// Nonempty and not all of `[n]`.
    pub fn is_proper(&self) -> bool {
        !self.members.is_empty() && self.members.len() < self.dim
    }

    /// Membership mask of length `dim`.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.dim];
        for &i in &self.members {
            m[i] = true;
        }
        m
    }
}
