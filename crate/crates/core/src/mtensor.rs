//! Z-tensors, M-tensors and positivity.

use crate::error::{Error, Result};
use crate::spectra::spectral_radius;
use crate::tensor::{all_tuples, Tensor};

pub const DEFAULT_TOL: f64 = 1e-9;

const MAX_ITER: usize = 100_000;

/// `A = s·I - b` with `b >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZSplit {
    pub s: f64,
    pub b: Tensor,
}

fn is_diagonal_index(idx: &[usize]) -> bool {
    idx.iter().all(|&i| i == idx[0])
}

/// Every off-diagonal entry is `<= 0`.
pub fn is_z_tensor(a: &Tensor) -> bool {
    a.entries()
        .all(|(idx, v)| is_diagonal_index(idx) || v <= 0.0)
}

/// The split with the smallest shift: `s = max_i a_{i…i}`.
pub fn z_split(a: &Tensor) -> Result<ZSplit> {
    a.require_order(2)?;
    if !is_z_tensor(a) {
        return Err(Error::NotZTensor);
    }
    let s = a
        .diagonal_values()
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    let b = Tensor::unit(a.order(), a.dim())?.scale(s).sub(a)?;
    Ok(ZSplit { s, b })
}

/// Outcome of the M-tensor tests, with the quantities they compare.
#[derive(Debug, Clone, PartialEq)]
pub struct MClassification {
    pub s: f64,
    pub rho: f64,
    pub m: bool,
    pub nonsingular_m: bool,
}

/// Computes `ρ(b)` for the minimal split and compares it against `s`:
/// M-tensor when `s >= ρ(b) - tol`, nonsingular when `s > ρ(b) + tol`.
pub fn classify_m_tensor(a: &Tensor, tol: f64) -> Result<MClassification> {
    let split = z_split(a)?;
    let rho = spectral_radius(&split.b, tol / 10.0, MAX_ITER)?.rho;
    Ok(MClassification {
        s: split.s,
        rho,
        m: split.s >= rho - tol,
        nonsingular_m: split.s > rho + tol,
    })
}

pub fn is_nonsingular_m_tensor(a: &Tensor, tol: f64) -> Result<bool> {
    Ok(classify_m_tensor(a, tol)?.nonsingular_m)
}

pub fn is_m_tensor(a: &Tensor, tol: f64) -> Result<bool> {
    Ok(classify_m_tensor(a, tol)?.m)
}

/// Every one of the `n^m` entries is present and positive.
pub fn is_positive_tensor(a: &Tensor) -> bool {
    a.order() >= 1 && all_tuples(a.order(), a.dim()).all(|idx| a.get(&idx) > 0.0)
}
