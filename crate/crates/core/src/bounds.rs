//! Booher–Cais bounds on the a-number of a `Z/p`-cover in terms of its
//! ramification breaks.
//!
//! Every floor is taken of an exact fraction `num / den` with `den > 0`, so
//! no floating point is involved anywhere.

use serde::Serialize;

use crate::arith::PrimeModulus;
use crate::error::{Error, Result};

#[inline]
fn floor_div(num: i128, den: i128) -> i128 {
    num.div_euclid(den)
}

/// Multiset of ramification breaks, one per branch point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakMultiset(Vec<u64>);

impl BreakMultiset {
    pub fn new(p: PrimeModulus, breaks: Vec<u64>) -> Result<Self> {
        if let Some(&d) = breaks.iter().find(|&&d| d == 0 || d % p.get() == 0) {
            return Err(Error::DegreeDivisibleByP { degree: d, p: p.get() });
        }
        Ok(Self(breaks))
    }

    pub fn breaks(&self) -> &[u64] {
        &self.0
    }
}

/// Contribution of one break to the inner sum for a fixed `j`:
/// `sum_{i=j}^{p-1} floor(id/p) - floor(id/p - (1 - 1/p) jd/p)`.
fn inner_sum(p: u64, d: u64, j: u64) -> i128 {
    let (p, d, j) = (p as i128, d as i128, j as i128);
    (j..p)
        .map(|i| floor_div(i * d, p) - floor_div(p * i * d - (p - 1) * j * d, p * p))
        .sum()
}

/// `L(d)` for a cover branched at a single point, via the closed form with
/// `i` running over `(p+1)/2 ..= p-1`. Accepts any positive `d`.
pub fn lower_bound_single(p: PrimeModulus, d: u64) -> u64 {
    let (p, d) = (p.get() as i128, d as i128);
    let total: i128 = ((p + 1) / 2..p)
        .map(|i| floor_div(i * d, p) - floor_div(2 * p * i * d - (p * p - 1) * d, 2 * p * p))
        .sum();
    total as u64
}

/// `L(D) = max_j sum_{d in D} inner(d, j)` over `1 <= j <= p-1`.
pub fn lower_bound_multi(p: PrimeModulus, breaks: &BreakMultiset) -> u64 {
    (1..p.get())
        .map(|j| breaks.0.iter().map(|&d| inner_sum(p.get(), d, j)).sum::<i128>())
        .max()
        .unwrap_or(0)
        .max(0) as u64
}

/// `p a_base + sum_{i=1}^{p-1} floor(id/p) - (p-i) floor(id/p^2)` for one
/// branch point with break `d`; `a_base` is the a-number of the base curve
/// (zero for the projective line).
pub fn upper_bound(p: PrimeModulus, d: u64, a_base: u64) -> u64 {
    let (pp, dd) = (p.get() as i128, d as i128);
    let sum: i128 = (1..pp).map(|i| floor_div(i * dd, pp) - (pp - i) * floor_div(i * dd, pp * pp)).sum();
    p.get() * a_base + sum as u64
}

/// Upper bound for several branch points: the single-point sums added up.
pub fn upper_bound_multi(p: PrimeModulus, breaks: &BreakMultiset, a_base: u64) -> u64 {
    p.get() * a_base + breaks.0.iter().map(|&d| upper_bound(p, d, 0)).sum::<u64>()
}
