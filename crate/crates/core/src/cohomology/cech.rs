//! Čech cohomology of O(d) on ℙ^n from the standard cover U_j = {x_j ≠ 0}.
//!
//! Sections of O(d) over U_I are spanned by Laurent monomials x^a of total
//! degree d whose exponents are nonnegative outside I. The Čech differential
//! preserves the monomial, so the complex splits into one finite block per
//! monomial: the block of x^a has a basis vector for every I ⊇ neg(a).
//! Ranks are computed per block by fraction-free elimination over ℤ.
//!
//! Monomials are enumerated in the box |a_j| ≤ |d| + n + 1, which contains
//! every monomial whose exponents all share a sign.

use num_bigint::BigUint;

use super::CohomologyTable;
use crate::{Error, Result};

pub const MAX_N: u32 = 3;
pub const MAX_ABS_DEGREE: i64 = 6;

/// H^i(ℙ^n, O(d)) computed from the Čech complex, for n ≤ 3 and |d| ≤ 6.
pub fn cech_oracle(n: u32, d: i64) -> Result<CohomologyTable> {
    if n > MAX_N || d.abs() > MAX_ABS_DEGREE {
        return Err(Error::UnsupportedRange(format!(
            "cech oracle needs n <= {MAX_N} and |d| <= {MAX_ABS_DEGREE}, got n={n}, d={d}"
        )));
    }
    let vars = n as usize + 1;
    let bound = d.abs() + i64::from(n) + 1;

    // cochain dims and differential ranks, indexed by Čech degree p = |I| - 1
    let mut cochains = vec![0u64; vars];
    let mut ranks = vec![0u64; vars];

    for exponents in laurent_monomials(vars, d, bound) {
        let neg_mask = exponents
            .iter()
            .enumerate()
            .filter(|(_, &a)| a < 0)
            .fold(0u32, |m, (j, _)| m | (1 << j));
        let block = BlockComplex::new(vars, neg_mask);
        for (count, basis) in cochains.iter_mut().zip(&block.basis) {
            *count += basis.len() as u64;
        }
        for (p, total) in ranks.iter_mut().enumerate().take(vars.saturating_sub(1)) {
            *total += rank(block.differential(p)) as u64;
        }
    }

    let mut table = CohomologyTable::new();
    for p in 0..vars {
        let incoming = if p == 0 { 0 } else { ranks[p - 1] };
        let h = cochains[p] - ranks[p] - incoming;
        table.add(p as i64, BigUint::from(h));
    }
    Ok(table)
}

fn laurent_monomials(vars: usize, total: i64, bound: i64) -> Vec<Vec<i64>> {
    fn go(prefix: &mut Vec<i64>, left: usize, remaining: i64, bound: i64, out: &mut Vec<Vec<i64>>) {
        if left == 1 {
            if remaining.abs() <= bound {
                prefix.push(remaining);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for a in -bound..=bound {
            prefix.push(a);
            go(prefix, left - 1, remaining - a, bound, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(vars), vars, total, bound, &mut out);
    out
}

/// The Čech subcomplex spanned by one Laurent monomial.
struct BlockComplex {
    // basis[p] lists the subsets I (as bitmasks) with |I| = p + 1 and I ⊇ neg
    basis: Vec<Vec<u32>>,
}

impl BlockComplex {
    fn new(vars: usize, neg_mask: u32) -> Self {
        let mut basis = vec![Vec::new(); vars];
        for mask in 1u32..(1 << vars) {
            if mask & neg_mask == neg_mask {
                basis[mask.count_ones() as usize - 1].push(mask);
            }
        }
        BlockComplex { basis }
    }

    /// Matrix of δ: C^p → C^{p+1}, rows indexed by the target basis.
    fn differential(&self, p: usize) -> Vec<Vec<i128>> {
        let source = &self.basis[p];
        let target = &self.basis[p + 1];
        target
            .iter()
            .map(|&big| {
                source
                    .iter()
                    .map(|&small| {
                        if small & big != small {
                            return 0;
                        }
                        // (δc)_J = Σ_k (-1)^k c_{J \ j_k}; the sign is the
                        // position of the removed index inside J.
                        let removed = big & !small;
                        let below = (big & (removed - 1)).count_ones();
                        if below % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Rank of an integer matrix via Bareiss fraction-free elimination.
fn rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev_pivot: i128 = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot_row) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pivot_row);
        let pivot = m[r][c];
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut().take(rows - r - 1) {
            let factor = row[c];
            for (x, &y) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                *x = (pivot * *x - factor * y) / prev_pivot;
            }
        }
        prev_pivot = pivot;
        r += 1;
    }
    r
}
