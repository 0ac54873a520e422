//! Left and right `k`-inverses.
//!
//! A tensor has a left inverse exactly when it is `P·I_m` with `P`
//! nonsingular; the unique left `k`-inverse is then `I_k·P⁻¹`. Tensors of
//! the form `I_m·Q` with `Q` nonsingular have the right `k`-inverse
//! `Q⁻¹·I_k`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::product::shao_product;
use crate::tensor::{all_tuples, Tensor};

/// Relative tolerance for the reconstruction check in [`recover_right_form`].
pub const RECONSTRUCTION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `A = I_m·q`. `sign_profile[i][t]` is the sign (`-1`, `0`, `1`) chosen for
/// `q_{it}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RightFormRecovery {
    pub q: Matrix,
    pub sign_profile: Vec<Vec<i8>>,
}

pub fn has_left_inverse(a: &Tensor) -> bool {
    a.order() >= 2
        && a.is_row_diagonal()
        && a.majorization_matrix().is_ok_and(|p| p.is_nonsingular())
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "k must be at least 2, got {k}"
        )));
    }
    Ok(())
}

/// `I_k·P⁻¹` where `P` is the majorization matrix of `a`.
pub fn left_k_inverse(a: &Tensor, k: usize) -> Result<Tensor> {
    check_k(k)?;
    if !has_left_inverse(a) {
        return Err(Error::NoLeftInverse);
    }
    let p_inv = a.majorization_matrix()?.inverse()?;
    shao_product(&Tensor::unit(k, a.dim())?, &p_inv.to_tensor())
}

/// Real `q`-th root; negative radicands need odd `q`. Perfect integer
/// powers come back exact.
fn real_root(d: f64, q: usize) -> f64 {
    let r = match q {
        1 => d,
        2 => d.sqrt(),
        3 => d.cbrt(),
        _ => d.signum() * d.abs().powf(1.0 / q as f64),
    };
    let rounded = r.round();
    if rounded.powi(q as i32) == d {
        rounded
    } else {
        r
    }
}

/// Finds `Q` with `a_{i i2…im} = q_{i i2}⋯q_{i im}`.
///
/// `|q_{it}|` comes from `a_{it…t}`. For even `m-1` the first nonzero in each
/// row is taken positive and the other signs are read off `a_{i t0 s…s}`.
/// Every entry is then checked against the reconstruction.
pub fn recover_right_form(a: &Tensor) -> Result<RightFormRecovery> {
    a.require_order(2)?;
    let (m, n) = (a.order(), a.dim());
    let q = m - 1;
    let mut mat = Matrix::zeros(n);
    for i in 0..n {
        let pure = |t: usize| {
            let mut idx = vec![t; m];
            idx[0] = i;
            idx
        };
        let mut first: Option<usize> = None;
        for t in 0..n {
            let idx = pure(t);
            let d = a.get(&idx);
            if d == 0.0 {
                continue;
            }
            if q % 2 == 0 && d < 0.0 {
                return Err(Error::NotRightForm {
                    index: idx,
                    expected: d.abs(),
                    found: d,
                });
            }
            let mut v = real_root(d, q);
            if q % 2 == 0 {
                match first {
                    None => first = Some(t),
                    Some(t0) => {
                        let mut mixed = vec![t; m];
                        mixed[0] = i;
                        mixed[1] = t0;
                        if a.get(&mixed) < 0.0 {
                            v = -v;
                        }
                    }
                }
            }
            mat.set(i, t, v);
        }
    }

    let rebuilt = shao_product(&Tensor::unit(m, n)?, &mat.to_tensor())?;
    let scale = a.entries().map(|(_, v)| v.abs()).fold(1.0, f64::max);
    for idx in all_tuples(m, n) {
        let (found, expected) = (a.get(&idx), rebuilt.get(&idx));
        if (found - expected).abs() > RECONSTRUCTION_TOL * scale {
            return Err(Error::NotRightForm {
                index: idx,
                expected,
                found,
            });
        }
    }
    let sign_profile = (0..n)
        .map(|i| (0..n).map(|t| mat.get(i, t).signum_i8()).collect())
        .collect();
    Ok(RightFormRecovery {
        q: mat,
        sign_profile,
    })
}

trait SignumI8 {
    fn signum_i8(self) -> i8;
}

impl SignumI8 for f64 {
    fn signum_i8(self) -> i8 {
        if self > 0.0 {
            1
        } else if self < 0.0 {
            -1
        } else {
            0
        }
    }
}

/// `Q⁻¹·I_k` for `a = I_m·Q`. Right inverses are not unique; this is the
/// one built from the recovered `Q`.
pub fn right_k_inverse(a: &Tensor, k: usize) -> Result<Tensor> {
    check_k(k)?;
    let rec = recover_right_form(a).map_err(|e| Error::NotRightInvertible(e.to_string()))?;
    let q_inv = rec
        .q
        .inverse()
        .map_err(|_| Error::NotRightInvertible("recovered Q is singular".into()))?;
    Tensor::row_diagonal_from_matrix(&q_inv, k)
}

/// Whether `B·A` (left) or `A·B` (right) is the unit tensor within `tol`.
pub fn verify_inverse(b: &Tensor, a: &Tensor, side: Side, tol: f64) -> bool {
    let product = match side {
        Side::Left => shao_product(b, a),
        Side::Right => shao_product(a, b),
    };
    match product {
        Ok(c) => Tensor::unit(c.order(), c.dim()).is_ok_and(|u| c.approx_eq(&u, tol)),
        Err(_) => false,
    }
}
