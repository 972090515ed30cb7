//! Dense matrices over `F_p`: rank, kernel dimension, iterated images.
//!
//! Elimination always takes the first nonzero entry at or below the current
//! row as pivot, so every result is reproducible bit for bit. Large
//! eliminations split the rows below the pivot across the rayon pool.

use rayon::prelude::*;

use crate::arith::PrimeModulus;
use crate::error::{Error, Result};

const PAR_THRESHOLD: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: PrimeModulus,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: PrimeModulus, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: PrimeModulus, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for k in 0..n {
            m.data[k * n + k] = 1;
        }
        m
    }

    /// Row-major entries, reduced mod p on the way in.
    pub fn from_row_major(p: PrimeModulus, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { p, rows, cols, data: data.into_iter().map(|v| p.reduce(v)).collect() })
    }

    pub fn from_rows(p: PrimeModulus, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_row_major(p, rows.len(), cols, rows.concat())
    }

    /// Builds from column vectors, each of length `rows`.
    pub fn from_columns(p: PrimeModulus, rows: usize, columns: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension(format!("column {c} has length {}, expected {rows}", col.len())));
            }
            for (r, &v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = p.reduce(v);
            }
        }
        Ok(m)
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.p.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p.get();
        let n = other.cols;
        let mut data = vec![0u64; self.rows * n];
        data.par_chunks_mut(n.max(1)).enumerate().for_each(|(r, out)| {
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (o, &b) in out.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                    if *o >= 1 << 62 {
                        *o %= p;
                    }
                }
            }
            for o in out.iter_mut() {
                *o %= p;
            }
        });
        Ok(Self { p: self.p, rows: self.rows, cols: n, data })
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.cols);
        let p = self.p.get();
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(0u64, |acc, (&a, &b)| {
                    let s = acc + a * b;
                    if s >= 1 << 62 {
                        s % p
                    } else {
                        s
                    }
                }) % p
            })
            .collect()
    }

    pub fn pow(&self, mut exp: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.p, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

/// Reduces `data` (row-major, `cols` wide) to row echelon form in place and
/// returns the rank. Nonzero rows end up first.
fn row_echelon(p: PrimeModulus, data: &mut [u64], rows: usize, cols: usize) -> usize {
    let modulus = p.get();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| data[r * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for k in c..cols {
                data.swap(pivot * cols + k, rank * cols + k);
            }
        }
        let inv = p.inv(data[rank * cols + c]).expect("pivot is nonzero");
        for v in &mut data[rank * cols + c..(rank + 1) * cols] {
            *v = *v * inv % modulus;
        }

        let (head, tail) = data.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols + c..];
        let eliminate = |row: &mut [u64]| {
            let factor = row[c];
            if factor == 0 {
                return;
            }
            let neg = modulus - factor;
            for (v, &pv) in row[c..].iter_mut().zip(pivot_row) {
                *v = (*v + neg * pv) % modulus;
            }
        };
        if tail.len() * (cols - c) / cols.max(1) >= PAR_THRESHOLD {
            tail.par_chunks_mut(cols).for_each(eliminate);
        } else {
            tail.chunks_mut(cols).for_each(eliminate);
        }
        rank += 1;
    }
    rank
}

/// Rank over `F_p` by Gaussian elimination on rows. The rank is the same
/// over any extension field.
pub fn rank(m: &FpMatrix) -> usize {
    let mut data = m.data.clone();
    row_echelon(m.p, &mut data, m.rows, m.cols)
}

/// Rank by elimination on columns: each column is cleared against earlier
/// pivot columns. Independent of [`rank`]; kept as a cross-check.
pub fn rank_by_columns(m: &FpMatrix) -> usize {
    let p = m.p;
    let mut cols: Vec<Vec<u64>> = (0..m.cols).map(|c| m.column(c)).collect();
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    for col in cols.iter_mut() {
        for (pr, pc) in &pivots {
            let factor = col[*pr];
            if factor != 0 {
                for (v, &w) in col.iter_mut().zip(pc) {
                    *v = p.sub(*v, p.mul(factor, w));
                }
            }
        }
        if let Some(r) = col.iter().position(|&v| v != 0) {
            let inv = p.inv(col[r]).expect("nonzero");
            let normalized: Vec<u64> = col.iter().map(|&v| p.mul(v, inv)).collect();
            pivots.push((r, normalized));
        }
    }
    pivots.len()
}

pub fn kernel_dim(m: &FpMatrix) -> usize {
    m.cols - rank(m)
}

/// Nonzero positions of each column.
fn column_supports(m: &FpMatrix) -> Vec<Vec<(usize, u64)>> {
    let mut cols = vec![Vec::new(); m.cols];
    for r in 0..m.rows {
        for (c, &v) in m.row(r).iter().enumerate() {
            if v != 0 {
                cols[c].push((r, v));
            }
        }
    }
    cols
}

/// `M v` accumulated column by column, skipping zero entries of `v`.
fn sparse_mul_vec(p: PrimeModulus, rows: usize, cols: &[Vec<(usize, u64)>], v: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; rows];
    for (col, &x) in cols.iter().zip(v) {
        if x == 0 {
            continue;
        }
        for &(r, a) in col {
            out[r] = (out[r] + a * x) % p.get();
        }
    }
    out
}

/// Dimensions of `im(M^0) ⊇ im(M^1) ⊇ ...`, stopping once two consecutive
/// dimensions agree (the chain is then constant) or after `max_steps` steps.
pub fn image_dims(m: &FpMatrix, max_steps: usize) -> Result<Vec<usize>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("iterated image of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let cols = column_supports(m);
    let mut dims = vec![n];
    // Rows of `span` form an echelon basis of the current image.
    let mut span: Vec<u64> = FpMatrix::identity(m.p, n).data;
    let mut dim = n;
    for _ in 0..max_steps {
        if dim == 0 {
            break;
        }
        let mut next: Vec<u64> = span[..dim * n]
            .par_chunks(n.max(1))
            .flat_map_iter(|v| sparse_mul_vec(m.p, n, &cols, v))
            .collect();
        let next_dim = row_echelon(m.p, &mut next, dim, n);
        dims.push(next_dim);
        span = next;
        if next_dim == dim {
            break;
        }
        dim = next_dim;
    }
    Ok(dims)
}

/// Whether the directed graph with an edge `c -> r` for every nonzero
/// `M[r][c]` has no cycle (Kahn's algorithm). A square matrix with an
/// acyclic pattern is nilpotent: every entry of `M^k` sums over walks of
/// length `k`, and a DAG on `n` nodes has none of length `n`.
pub fn pattern_is_acyclic(m: &FpMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows;
    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (r, deg) in indegree.iter_mut().enumerate() {
        for (c, &v) in m.row(r).iter().enumerate() {
            if v != 0 {
                succ[c].push(r);
                *deg += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&k| indegree[k] == 0).collect();
    let mut seen = 0;
    while let Some(k) = ready.pop() {
        seen += 1;
        for &r in &succ[k] {
            indegree[r] -= 1;
            if indegree[r] == 0 {
                ready.push(r);
            }
        }
    }
    seen == n
}

/// `rank(M^g)`. For matrices over `F_p` the semilinear twist is trivial, so
/// this is the p-rank when `M` is a Cartier matrix of genus `g`. Follows the
/// image chain until it stabilizes rather than forming `M^g`.
pub fn p_rank_via_power(m: &FpMatrix, g: usize) -> Result<usize> {
    if !m.is_square() || m.rows != g {
        return Err(Error::Dimension(format!("expected a {g}x{g} matrix, got {}x{}", m.rows, m.cols)));
    }
    let dims = image_dims(m, g)?;
    Ok(*dims.last().expect("at least im(M^0)"))
}

/// Smallest `k` with `M^k = 0`, if any.
pub fn nilpotency_index(m: &FpMatrix) -> Result<Option<usize>> {
    let dims = image_dims(m, m.rows)?;
    Ok((dims.last() == Some(&0)).then(|| dims.len() - 1))
}
