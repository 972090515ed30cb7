//! Test-only brute-force Cartier oracle. Shares no code path with the
//! library's assembly: it multiplies out `(Y - f)^m` one factor at a time
//! in a sparse bivariate map (`Y = y^p`), applies the monomial rule to each
//! term, and locates results in a basis it enumerates itself.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

/// Sparse `sum c * Y^a * x^b`, keyed by `(a, b)`.
type Bivariate = BTreeMap<(u64, u64), i64>;

fn add_term(map: &mut Bivariate, key: (u64, u64), c: i64, p: i64) {
    let entry = map.entry(key).or_insert(0);
    *entry = (*entry + c).rem_euclid(p);
    if *entry == 0 {
        map.remove(&key);
    }
}

/// Basis pairs `(i, j)`, `i <= p - 2`, found by scanning `j` upward while
/// `p (j + 2) < (p - i - 1) d + p`, which is `j + 2 <= ceil((p-i-1)d/p)`.
pub fn oracle_basis(p: u64, d: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for i in 0..p.saturating_sub(1) {
        let mut j = 0;
        while (j + 2) * p < (p - i - 1) * d + p {
            out.push((i, j));
            j += 1;
        }
    }
    out.sort();
    out
}

/// Row-major Cartier matrix for `y^p - y = f`, `f` given by its residues
/// (index = exponent, last entry nonzero).
pub fn oracle_matrix(p: u64, f: &[u64]) -> Vec<Vec<u64>> {
    let d = (f.len() - 1) as u64;
    let pi = p as i64;
    let basis = oracle_basis(p, d);
    let index: HashMap<(u64, u64), usize> = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let g = basis.len();
    let mut matrix = vec![vec![0u64; g]; g];
    for (col, &(m, n)) in basis.iter().enumerate() {
        // y^m x^n with every y replaced by (Y - f).
        let mut expanded: Bivariate = BTreeMap::new();
        expanded.insert((0, n), 1);
        for _ in 0..m {
            let mut next = BTreeMap::new();
            for (&(a, b), &c) in &expanded {
                add_term(&mut next, (a + 1, b), c, pi);
                for (e, &fc) in f.iter().enumerate() {
                    if fc != 0 {
                        add_term(&mut next, (a, b + e as u64), -c * fc as i64, pi);
                    }
                }
            }
            expanded = next;
        }
        // C(Y^a x^b dx) = y^a x^{(b+1)/p - 1} dx when p | b + 1.
        for (&(a, b), &c) in &expanded {
            if (b + 1) % p != 0 {
                continue;
            }
            let target = (a, (b + 1) / p - 1);
            let row = *index
                .get(&target)
                .unwrap_or_else(|| panic!("oracle image {target:?} outside basis for p={p} f={f:?}"));
            matrix[row][col] = (matrix[row][col] + c as u64) % p;
        }
    }
    matrix
}

/// Rank by plain Gaussian elimination on a copy, for oracle-side checks.
pub fn oracle_rank(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = (1..p).find(|&t| t * rows[rank][c] % p == 1).unwrap();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let factor = rows[r][c] * inv % p;
                let pivot = rows[rank].clone();
                for (x, &y) in rows[r].iter_mut().zip(&pivot) {
                    *x = (*x + (p - factor) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Every reduced coefficient vector of degree exactly `d`: constant term
/// free, positive exponents divisible by `p` zero, leading term nonzero.
pub fn all_reduced(p: u64, d: u64) -> Vec<Vec<u64>> {
    let free: Vec<usize> = (0..d).filter(|&e| e == 0 || e % p != 0).map(|e| e as usize).collect();
    let mut out = Vec::new();
    let count = (p as usize).pow(free.len() as u32);
    for lead in 1..p {
        for mut idx in 0..count {
            let mut f = vec![0u64; d as usize + 1];
            f[d as usize] = lead;
            for &e in &free {
                f[e] = (idx % p as usize) as u64;
                idx /= p as usize;
            }
            out.push(f);
        }
    }
    out
}
