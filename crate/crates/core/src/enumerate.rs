//! Canonical enumeration of `k^n` for finite `k`.
//!
//! Vectors are visited in lexicographic order of their coordinates, where
//! coordinate 0 is the most significant digit and field elements are ordered
//! by their index.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Vector;

/// `|k|^dim`, checked against `cap`.
pub fn checked_size(k: &Field, dim: usize, cap: u64) -> Result<u64> {
    let q = k.order().ok_or(Error::InfiniteField)?;
    let size = (q as u128).checked_pow(dim as u32);
    match size {
        Some(s) if s <= cap as u128 => Ok(s as u64),
        Some(s) => Err(Error::too_large(s, cap)),
        None => Err(Error::too_large(format!("{q}^{dim}"), cap)),
    }
}

/// Iterator over all of `k^dim` in canonical order.
pub struct Odometer {
    q: u64,
    current: Option<Vec<u64>>,
}

impl Odometer {
    pub fn new(k: &Field, dim: usize) -> Odometer {
        let q = k.order().expect("finite field");
        Odometer {
            q,
            current: Some(vec![0; dim]),
        }
    }
}

impl Iterator for Odometer {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        let cur = self.current.as_mut()?;
        let out = cur.iter().map(|&i| Elem::Fin(i)).collect();
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < self.q {
                break;
            }
            cur[pos] = 0;
        }
        Some(out)
    }
}

/// Position of `v` in the canonical order.
pub fn index_of(k: &Field, v: &[Elem]) -> u128 {
    let q = k.order().expect("finite field") as u128;
    v.iter()
        .fold(0u128, |acc, x| acc * q + k.index_of(x) as u128)
}

/// The vector at position `idx` in the canonical order.
pub fn vector_at(k: &Field, dim: usize, mut idx: u128) -> Vector {
    let q = k.order().expect("finite field") as u128;
    let mut out = vec![k.zero(); dim];
    for x in out.iter_mut().rev() {
        *x = k.element((idx % q) as u64);
        idx /= q;
    }
    out
}
