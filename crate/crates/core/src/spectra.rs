//! Determinants and spectra of blocked tensors, a power iteration for the
//! spectral radius of nonnegative tensors, and a numerical singularity
//! oracle.
//!
//! Closed-form determinants are kept in factored form, `Π base^exp` with
//! integer exponents, so that products of integer entries compare exactly
//! even when the expanded value would not fit in an `f64` mantissa.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blocked::{blocked_partitions, diagonal_blocks, is_blocked, BlockKind, Partition};
use crate::error::{Error, Result};
use crate::structure::normal_form_2nd;
use crate::tensor::Tensor;

/// Largest dimension accepted by [`singularity_oracle`].
pub const MAX_ORACLE_DIM: usize = 6;

pub const DEFAULT_ORACLE_RESTARTS: usize = 64;
pub const DEFAULT_ORACLE_ITERS: usize = 300;

/// `Π base^exp`.
#[derive(Debug, Clone, PartialEq)]
pub struct Determinant {
    factors: Vec<(f64, u64)>,
}

impl Determinant {
    pub fn scalar(v: f64) -> Self {
        Determinant {
            factors: vec![(v, 1)],
        }
    }

    pub fn one() -> Self {
        Determinant {
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[(f64, u64)] {
        &self.factors
    }

    pub fn mul(&self, other: &Determinant) -> Determinant {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Determinant { factors }
    }

    pub fn pow(&self, k: u64) -> Result<Determinant> {
        let factors = self
            .factors
            .iter()
            .map(|&(b, e)| {
                e.checked_mul(k)
                    .map(|e| (b, e))
                    .ok_or(Error::ExponentOverflow)
            })
            .collect::<Result<_>>()?;
        Ok(Determinant { factors })
    }

    pub fn is_zero(&self) -> bool {
        self.factors.iter().any(|&(b, e)| b == 0.0 && e > 0)
    }

    /// Equal bases merged, trivial factors dropped, sorted by base. A zero
    /// factor collapses everything to `0^1`. Two determinants are exactly
    /// equal when their canonical forms are.
    pub fn canonical(&self) -> Determinant {
        if self.is_zero() {
            return Determinant::scalar(0.0);
        }
        // Signs are pulled out into a single -1 factor.
        let mut negative = false;
        let mut magnitudes: Vec<(f64, u64)> = Vec::new();
        for &(b, e) in &self.factors {
            if e == 0 {
                continue;
            }
            if b < 0.0 {
                negative ^= e % 2 == 1;
            }
            if b.abs() != 1.0 {
                magnitudes.push((b.abs(), e));
            }
        }
        magnitudes.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged: Vec<(f64, u64)> = Vec::new();
        for (b, e) in magnitudes {
            match merged.last_mut() {
                Some((lb, le)) if *lb == b => *le = le.saturating_add(e),
                _ => merged.push((b, e)),
            }
        }
        if negative {
            merged.insert(0, (-1.0, 1));
        }
        Determinant { factors: merged }
    }

    pub fn exactly_equals(&self, other: &Determinant) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn value(&self) -> f64 {
        self.factors
            .iter()
            .map(|&(b, e)| match i32::try_from(e) {
                Ok(e) => b.powi(e),
                Err(_) => b.powf(e as f64),
            })
            .product()
    }
}

fn power(base: usize, exp: usize) -> Result<u64> {
    let exp = u32::try_from(exp).map_err(|_| Error::ExponentOverflow)?;
    (base as u64)
        .checked_pow(exp)
        .ok_or(Error::ExponentOverflow)
}

/// The single entry of a dimension-1 tensor.
pub fn det_dim1(a: &Tensor) -> Result<f64> {
    if a.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: a.dim(),
        });
    }
    Ok(a.get(&vec![0; a.order()]))
}

/// `Π d_i^{(m-1)^{n-1}}`.
pub fn det_diagonal(a: &Tensor) -> Result<Determinant> {
    a.require_order(2)?;
    if !a.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let e = power(a.order() - 1, a.dim() - 1)?;
    Ok(Determinant {
        factors: a.diagonal_values().into_iter().map(|d| (d, e)).collect(),
    })
}

/// The finest second-type partition (upper first, then lower) of a block,
/// used to push the closed forms further down.
fn refinement(b: &Tensor) -> Result<Option<Partition>> {
    if b.dim() <= 1 {
        return Ok(None);
    }
    let mut best: Option<Partition> = None;
    for kind in [BlockKind::Utb2, BlockKind::Ltb2] {
        for p in blocked_partitions(b, kind, 2)? {
            if best.as_ref().map_or(true, |q| p.len() > q.len()) {
                best = Some(p);
            }
        }
    }
    Ok(best)
}

fn block_det(b: &Tensor, top: usize) -> Result<Determinant> {
    if b.dim() == 1 {
        return Ok(Determinant::scalar(det_dim1(b)?));
    }
    if b.is_diagonal() {
        return det_diagonal(b);
    }
    match refinement(b)? {
        Some(p) => formula(b, &p, Some(top)),
        None => Err(Error::BlockDetUnavailable(top)),
    }
}

fn formula(a: &Tensor, p: &Partition, top: Option<usize>) -> Result<Determinant> {
    let (m, n) = (a.order(), a.dim());
    let mut det = Determinant::one();
    for (j, b) in diagonal_blocks(a, p)?.iter().enumerate() {
        let e = power(m - 1, n - b.dim())?;
        det = det.mul(&block_det(b, top.unwrap_or(j))?.pow(e)?);
    }
    Ok(det)
}

/// `Π_i (det A_i)^{(m-1)^{n-n_i}}` over the diagonal blocks of `p`, without
/// checking that `a` is blocked. Useful for exhibiting where the formula
/// breaks down.
pub fn blocked_det_formula(a: &Tensor, p: &Partition) -> Result<Determinant> {
    a.require_order(2)?;
    formula(a, p, None)
}

fn check_blocked(a: &Tensor, p: &Partition, kind: BlockKind) -> Result<()> {
    if kind.is_third_type() {
        return Err(Error::ThirdTypeUnsupported);
    }
    if !is_blocked(a, p, kind)? {
        return Err(Error::InvalidPartition(format!(
            "tensor is not {p}-{kind} blocked"
        )));
    }
    Ok(())
}

/// Determinant of a first- or second-type (or diagonal) blocked tensor.
pub fn det_blocked(a: &Tensor, p: &Partition, kind: BlockKind) -> Result<Determinant> {
    check_blocked(a, p, kind)?;
    formula(a, p, None)
}

/// One diagonal block's eigenvalues, each listed with the common exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumItem {
    pub eigs: Vec<f64>,
    pub exp: u64,
}

/// The spectrum as a multiset: each eigenvalue in `items` repeated `exp`
/// times. `degree` is `n(m-1)^{n-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumFactored {
    pub items: Vec<SpectrumItem>,
    pub degree: u64,
}

impl SpectrumFactored {
    /// `Σ |eigs| · exp`.
    pub fn multiplicity_total(&self) -> u64 {
        self.items
            .iter()
            .map(|it| it.eigs.len() as u64 * it.exp)
            .sum()
    }

    pub fn is_consistent(&self) -> bool {
        self.multiplicity_total() == self.degree
    }

    /// Multiplicity of `lambda`, compared exactly.
    pub fn multiplicity(&self, lambda: f64) -> u64 {
        self.items
            .iter()
            .map(|it| it.eigs.iter().filter(|&&v| v == lambda).count() as u64 * it.exp)
            .sum()
    }
}

/// Terminal dimension-1 entries of `b` with their exponents inside `b`.
fn block_spectrum(b: &Tensor, top: usize) -> Result<Vec<(f64, u64)>> {
    if b.dim() == 1 {
        return Ok(vec![(det_dim1(b)?, 1)]);
    }
    let p = refinement(b)?.ok_or(Error::BlockSpectrumUnavailable(top))?;
    let mut out = Vec::new();
    for sub in diagonal_blocks(b, &p)? {
        let e = power(b.order() - 1, b.dim() - sub.dim())?;
        for (v, k) in block_spectrum(&sub, top)? {
            out.push((v, k.checked_mul(e).ok_or(Error::ExponentOverflow)?));
        }
    }
    Ok(out)
}

/// Spectrum of a first- or second-type (or diagonal) blocked tensor whose
/// blocks refine down to dimension 1.
pub fn spectrum_blocked(a: &Tensor, p: &Partition, kind: BlockKind) -> Result<SpectrumFactored> {
    check_blocked(a, p, kind)?;
    let (m, n) = (a.order(), a.dim());
    let degree = (n as u64)
        .checked_mul(power(m - 1, n - 1)?)
        .ok_or(Error::ExponentOverflow)?;
    let mut items: Vec<SpectrumItem> = Vec::new();
    for (j, b) in diagonal_blocks(a, p)?.iter().enumerate() {
        let e = power(m - 1, n - b.dim())?;
        let mut block_items: Vec<SpectrumItem> = Vec::new();
        for (v, k) in block_spectrum(b, j)? {
            let exp = k.checked_mul(e).ok_or(Error::ExponentOverflow)?;
            match block_items.last_mut() {
                Some(it) if it.exp == exp => it.eigs.push(v),
                _ => block_items.push(SpectrumItem { eigs: vec![v], exp }),
            }
        }
        items.extend(block_items);
    }
    let spectrum = SpectrumFactored { items, degree };
    debug_assert!(spectrum.is_consistent());
    Ok(spectrum)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub rho: f64,
    /// Positive eigenvector, max-normalized. Only reported when the tensor is
    /// handled as a single block.
    pub eigvec: Option<Vec<f64>>,
    pub iterations: usize,
    /// `max_i |(Ax)_i - rho x_i^{m-1}|`, or the largest block residual.
    pub residual: f64,
}

/// Spectral radius of a nonnegative tensor.
///
/// Weakly irreducible inputs are iterated directly; others are split into
/// the diagonal blocks of a second-type normal form and the largest block
/// radius is returned. The iteration is run on `A + I`, which shares the
/// Perron vector of `A`, so periodic sign patterns still converge.
pub fn spectral_radius(a: &Tensor, tol: f64, max_iter: usize) -> Result<SpectralResult> {
    a.require_order(2)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tol must be positive, got {tol}"
        )));
    }
    if let Some((idx, _)) = a.entries().find(|(_, v)| *v < 0.0) {
        return Err(Error::NegativeEntry(idx.to_vec()));
    }
    if a.is_zero() {
        return Ok(SpectralResult {
            rho: 0.0,
            eigvec: Some(vec![1.0; a.dim()]),
            iterations: 0,
            residual: 0.0,
        });
    }
    let nf = normal_form_2nd(a);
    if nf.blocks.len() == 1 {
        return power_iteration(a, tol, max_iter);
    }
    let mut best = SpectralResult {
        rho: 0.0,
        eigvec: None,
        iterations: 0,
        residual: 0.0,
    };
    for block in &nf.blocks {
        let r = if block.dim() == 1 {
            SpectralResult {
                rho: det_dim1(block)?,
                eigvec: None,
                iterations: 0,
                residual: 0.0,
            }
        } else {
            power_iteration(block, tol, max_iter.saturating_sub(best.iterations))?
        };
        best.rho = best.rho.max(r.rho);
        best.iterations += r.iterations;
        best.residual = best.residual.max(r.residual);
    }
    Ok(best)
}

fn power_iteration(a: &Tensor, tol: f64, max_iter: usize) -> Result<SpectralResult> {
    let n = a.dim();
    let q = (a.order() - 1) as i32;
    if n == 1 {
        let rho = det_dim1(a)?;
        return Ok(SpectralResult {
            rho,
            eigvec: Some(vec![1.0]),
            iterations: 0,
            residual: 0.0,
        });
    }
    let mut x = vec![1.0; n];
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for it in 1..=max_iter {
        let ax = a.apply(&x)?;
        let ratios: Vec<f64> = ax.iter().zip(&x).map(|(y, xi)| y / xi.powi(q)).collect();
        lower = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        upper = ratios.iter().copied().fold(0.0, f64::max);
        if upper - lower <= tol {
            let residual = ax
                .iter()
                .zip(&x)
                .map(|(y, xi)| (y - upper * xi.powi(q)).abs())
                .fold(0.0, f64::max);
            return Ok(SpectralResult {
                rho: upper,
                eigvec: Some(x),
                iterations: it,
                residual,
            });
        }
        let next: Vec<f64> = ax
            .iter()
            .zip(&x)
            .map(|(y, xi)| (y + xi.powi(q)).powf(1.0 / q as f64))
            .collect();
        let scale = next.iter().copied().fold(0.0, f64::max);
        x = next.into_iter().map(|v| v / scale).collect();
    }
    Err(Error::NoConvergence {
        lower,
        upper,
        iterations: max_iter,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub min_norm: f64,
    pub witness: Vec<Complex64>,
    pub restarts_used: usize,
}

/// `(Ax)_i` and the Jacobian `∂(Ax)_i / ∂x_j` for complex `x`.
fn evaluate(a: &Tensor, x: &[Complex64]) -> (Vec<Complex64>, Vec<Vec<Complex64>>) {
    let n = a.dim();
    let mut p = vec![Complex64::new(0.0, 0.0); n];
    let mut jac = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (idx, v) in a.entries() {
        let tail = &idx[1..];
        let i = idx[0];
        p[i] += v * tail.iter().map(|&j| x[j]).product::<Complex64>();
        for (t, &j) in tail.iter().enumerate() {
            let rest: Complex64 = tail
                .iter()
                .enumerate()
                .filter(|&(s, _)| s != t)
                .map(|(_, &l)| x[l])
                .product();
            jac[i][j] += v * rest;
        }
    }
    (p, jac)
}

fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn normalized(v: Vec<Complex64>) -> Vec<Complex64> {
    let r = norm_sq(&v).sqrt();
    v.into_iter().map(|z| z / r).collect()
}

fn objective(a: &Tensor, x: &[Complex64]) -> f64 {
    norm_sq(&evaluate(a, x).0)
}

/// Smallest `‖Ax‖₂` found over complex unit vectors by projected gradient
/// descent from `restarts` random starts. Restart `r` is seeded with
/// `seed + r`.
///
/// A value near zero suggests `det A = 0`; a value bounded away from zero
/// suggests the opposite. This is numerical evidence only.
pub fn singularity_oracle(
    a: &Tensor,
    restarts: usize,
    iters: usize,
    seed: u64,
) -> Result<OracleReport> {
    a.require_order(2)?;
    let n = a.dim();
    if n > MAX_ORACLE_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: MAX_ORACLE_DIM,
        });
    }
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be positive".into()));
    }
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
        let start: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let (f, x) = descend(a, normalized(start), iters);
        if best.as_ref().map_or(true, |(bf, _)| f < *bf) {
            best = Some((f, x));
        }
    }
    let (f, witness) = best.expect("at least one restart");
    Ok(OracleReport {
        min_norm: f.sqrt(),
        witness,
        restarts_used: restarts,
    })
}

fn descend(a: &Tensor, mut x: Vec<Complex64>, iters: usize) -> (f64, Vec<Complex64>) {
    let n = x.len();
    let mut f = objective(a, &x);
    for _ in 0..iters {
        let (p, jac) = evaluate(a, &x);
        // Gradient of Σ|p_i|² with respect to conj(x).
        let mut g: Vec<Complex64> = (0..n)
            .map(|j| (0..n).map(|i| p[i] * jac[i][j].conj()).sum())
            .collect();
        // Remove the radial component to stay on the sphere.
        let radial: f64 = x.iter().zip(&g).map(|(xi, gi)| (xi.conj() * gi).re).sum();
        for (gi, xi) in g.iter_mut().zip(&x) {
            *gi -= xi * radial;
        }
        let gnorm = norm_sq(&g).sqrt();
        if gnorm < 1e-300 {
            break;
        }
        let mut step = 0.5;
        let mut accepted: Option<(f64, Vec<Complex64>)> = None;
        for _ in 0..60 {
            let cand = normalized(
                x.iter()
                    .zip(&g)
                    .map(|(xi, gi)| xi - gi * (step / gnorm))
                    .collect(),
            );
            let fc = objective(a, &cand);
            match &accepted {
                Some((fa, _)) if fc >= *fa => break,
                _ if fc < f && accepted.as_ref().map_or(true, |(fa, _)| fc < *fa) => {
                    accepted = Some((fc, cand));
                }
                _ => {}
            }
            step *= 0.5;
        }
        match accepted {
            Some((fc, cand)) => {
                f = fc;
                x = cand;
            }
            None => break,
        }
    }
    (f, x)
}
