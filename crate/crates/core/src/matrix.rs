//! Small dense square matrices: LU with partial pivoting, inverses and the
//! matrix-side predicates (Z-matrix, irreducibility, nonsingular M-matrix).

use crate::blocked::Partition;
use crate::error::{Error, Result};
use crate::graph;
use crate::tensor::Tensor;

/// Relative pivot threshold for declaring a matrix singular.
pub const PIVOT_TOL: f64 = 1e-12;
const CONDITION_WARN: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    values: Vec<f64>,
}

/// `PA = LU` packed in one matrix; `perm[i]` is the source row of row `i`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    swaps: usize,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            values: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "matrix has non-finite values".into(),
            ));
        }
        Ok(Matrix { dim: n, values })
    }

    /// Reads an order-2 tensor as a matrix.
    pub fn from_tensor(t: &Tensor) -> Result<Self> {
        if t.order() != 2 {
            return Err(Error::InvalidArgument(format!(
                "expected an order-2 tensor, found order {}",
                t.order()
            )));
        }
        let mut m = Matrix::zeros(t.dim());
        for (k, v) in t.entries() {
            m.set(k[0], k[1], v);
        }
        Ok(m)
    }

    pub fn to_tensor(&self) -> Tensor {
        let n = self.dim;
        Tensor::new(
            2,
            n,
            (0..n).flat_map(|i| (0..n).map(move |j| (vec![i, j], self.get(i, j)))),
        )
        .expect("matrix entries are in range")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn abs(&self) -> Matrix {
        Matrix {
            dim: self.dim,
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.values[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(Matrix {
            dim: self.dim,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix {
            dim: self.dim,
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// The principal submatrix on rows/columns `0..k`.
    pub fn leading(&self, k: usize) -> Matrix {
        let mut m = Matrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// The principal submatrix on the given rows/columns, in that order.
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        let k = idx.len();
        let mut m = Matrix::zeros(k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    /// LU with partial pivoting. Fails with `SingularMatrix` when a pivot is
    /// below `PIVOT_TOL` relative to the largest entry.
    pub fn lu(&self) -> Result<Lu> {
        let n = self.dim;
        let scale = self.max_abs();
        if scale == 0.0 {
            return Err(Error::SingularMatrix);
        }
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, a.get(i, k).abs()))
                .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
            if pivot <= PIVOT_TOL * scale {
                return Err(Error::SingularMatrix);
            }
            if p != k {
                for j in 0..n {
                    a.values.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let d = a.get(k, k);
            for i in k + 1..n {
                let f = a.get(i, k) / d;
                a.set(i, k, f);
                if f != 0.0 {
                    for j in k + 1..n {
                        let v = a.get(i, j) - f * a.get(k, j);
                        a.set(i, j, v);
                    }
                }
            }
        }
        Ok(Lu { lu: a, perm, swaps })
    }

    pub fn is_nonsingular(&self) -> bool {
        self.lu().is_ok()
    }

    /// Determinant via LU; exactly `0.0` when LU declares the matrix singular.
    pub fn determinant(&self) -> f64 {
        if self.dim == 0 {
            return 1.0;
        }
        match self.lu() {
            Ok(lu) => lu.determinant(),
            Err(_) => 0.0,
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let lu = self.lu()?;
        let n = self.dim;
        let mut inv = Matrix::zeros(n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|x| *x = 0.0);
            e[j] = 1.0;
            let col = lu.solve(&e);
            for i in 0..n {
                inv.set(i, j, col[i]);
            }
        }
        let cond = self.norm1() * inv.norm1();
        if cond > CONDITION_WARN {
            log::warn!("matrix inverse is ill-conditioned (estimate {cond:.3e})");
        }
        Ok(inv)
    }

    fn norm1(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Determinants of the leading principal submatrices of sizes `1..=n`.
    pub fn leading_principal_minors(&self) -> Vec<f64> {
        (1..=self.dim)
            .map(|k| self.leading(k).determinant())
            .collect()
    }

    /// Off-diagonal entries all `<= 0`.
    pub fn is_z_matrix(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j) <= 0.0))
    }

    /// Digraph with an edge `i -> j` (`i != j`) whenever the entry is nonzero.
    pub fn digraph(&self) -> Vec<Vec<usize>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .filter(|&j| j != i && self.get(i, j) != 0.0)
                    .collect()
            })
            .collect()
    }

    /// Irreducible in the matrix sense: strongly connected digraph.
    /// Order-1 matrices count as irreducible.
    pub fn is_irreducible(&self) -> bool {
        graph::is_strongly_connected(&self.digraph())
    }

    /// Z-matrix with all leading principal minors positive.
    pub fn is_nonsingular_m_matrix(&self) -> bool {
        self.is_z_matrix() && self.leading_principal_minors().iter().all(|&d| d > 0.0)
    }

    /// `p_{it} = 0` for every row `i` in block `j >= 1` and column `t`
    /// before that block.
    pub fn is_upper_block_triangular(&self, p: &Partition) -> bool {
        if p.n() != self.dim {
            return false;
        }
        (0..self.dim).all(|i| {
            let start = p.block_start(p.block_of(i));
            (0..start).all(|t| self.get(i, t) == 0.0)
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == 0.0))
    }

    pub fn approx_eq(&self, other: &Matrix, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

impl Lu {
    pub fn determinant(&self) -> f64 {
        let n = self.lu.dim;
        let d: f64 = (0..n).map(|i| self.lu.get(i, i)).product();
        if self.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.dim;
        let mut y: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.lu.get(i, k) * y[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= self.lu.get(i, k) * y[k];
            }
            y[i] /= self.lu.get(i, i);
        }
        y
    }
}
