//! The general tensor product `AB` of an order-`m` tensor with an order-`k`
//! tensor, giving order `(m-1)(k-1)+1`:
//!
//! `c_{i α1 … α(m-1)} = Σ a_{i i2 … im} b_{i2 α1} ⋯ b_{im α(m-1)}`
//!
//! where each `α` is a `(k-1)`-tuple.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::tensor::Tensor;

pub fn shao_product(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    a.require_order(2)?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let n = a.dim();
    let (m, k) = (a.order(), b.order());
    let out_order = (m - 1) * (k - 1) + 1;

    // Rows of B: trailing tuple and value, grouped by leading index.
    let mut rows: Vec<Vec<(&[usize], f64)>> = vec![Vec::new(); n];
    for (idx, v) in b.entries() {
        rows[idx[0]].push((&idx[1..], v));
    }

    let mut terms: BTreeMap<Vec<usize>, Vec<f64>> = BTreeMap::new();
    let mut cursor = vec![0usize; m - 1];
    for (idx, av) in a.entries() {
        let slots: Vec<&[(&[usize], f64)]> = idx[1..].iter().map(|&j| rows[j].as_slice()).collect();
        if slots.iter().any(|s| s.is_empty()) {
            continue;
        }
        cursor.iter_mut().for_each(|c| *c = 0);
        let mut exhausted = false;
        while !exhausted {
            let mut key = Vec::with_capacity(out_order);
            key.push(idx[0]);
            let mut value = av;
            for (slot, &c) in slots.iter().zip(&cursor) {
                let (tail, bv) = slot[c];
                key.extend_from_slice(tail);
                value *= bv;
            }
            terms.entry(key).or_default().push(value);

            // Odometer over the row lists.
            exhausted = true;
            for pos in (0..slots.len()).rev() {
                cursor[pos] += 1;
                if cursor[pos] < slots[pos].len() {
                    exhausted = false;
                    break;
                }
                cursor[pos] = 0;
            }
        }
    }

    let entries = terms
        .into_iter()
        .map(|(k, mut v)| (k, pairwise_sum(&mut v)))
        .filter(|(_, v)| *v != 0.0)
        .collect();
    Ok(Tensor::from_map(out_order, n, entries))
}

fn pairwise_sum(v: &mut [f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        2 => v[0] + v[1],
        len => {
            let (lo, hi) = v.split_at_mut(len / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}
