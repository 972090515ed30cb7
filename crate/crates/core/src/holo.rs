//! Monomial basis `{ y^i x^j dx }` of the regular differentials and the
//! genus.

use serde::Serialize;

use crate::arith::PrimeModulus;
use crate::error::{Error, Result};

/// The differential `y^i x^j dx`. The derived order compares `i` first,
/// which is lexicographic order with `y > x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisIndex {
    pub i: u64,
    pub j: u64,
}

impl BasisIndex {
    pub fn new(i: u64, j: u64) -> Self {
        Self { i, j }
    }
}

fn check_break(p: PrimeModulus, d: u64) -> Result<()> {
    if d == 0 || d.is_multiple_of(p.get()) {
        return Err(Error::DegreeDivisibleByP { degree: d, p: p.get() });
    }
    Ok(())
}

/// `(p - 1)(d - 1) / 2`.
pub fn genus(p: PrimeModulus, d: u64) -> Result<u64> {
    check_break(p, d)?;
    Ok((p.get() - 1) * (d - 1) / 2)
}

/// Number of admissible `j` for a given `i`: `ceil((p - i - 1) d / p) - 1`,
/// clamped at zero.
pub fn j_count(p: u64, d: u64, i: u64) -> u64 {
    if i + 1 >= p {
        return 0;
    }
    ((p - i - 1) * d).div_ceil(p).saturating_sub(1)
}

/// The basis in ascending order, with O(1) position lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedBasis {
    p: PrimeModulus,
    d: u64,
    elements: Vec<BasisIndex>,
    // offsets[i] = position of (i, 0); offsets[p - 1] = len.
    offsets: Vec<usize>,
}

impl OrderedBasis {
    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisIndex] {
        &self.elements
    }

    pub fn get(&self, pos: usize) -> Option<BasisIndex> {
        self.elements.get(pos).copied()
    }

    pub fn contains(&self, b: BasisIndex) -> bool {
        self.position(b).is_some()
    }

    pub fn position(&self, b: BasisIndex) -> Option<usize> {
        let i = usize::try_from(b.i).ok()?;
        if i + 1 >= self.offsets.len() {
            return None;
        }
        let (start, end) = (self.offsets[i], self.offsets[i + 1]);
        let j = usize::try_from(b.j).ok()?;
        (j < end - start).then_some(start + j)
    }

    /// Number of `j` values present for the given `i`.
    pub fn row_len(&self, i: u64) -> usize {
        match usize::try_from(i) {
            Ok(i) if i + 1 < self.offsets.len() => self.offsets[i + 1] - self.offsets[i],
            _ => 0,
        }
    }
}

pub fn basis_enumerate(p: PrimeModulus, d: u64) -> Result<OrderedBasis> {
    check_break(p, d)?;
    let mut elements = Vec::new();
    let mut offsets = Vec::with_capacity(p.get() as usize);
    for i in 0..p.get() - 1 {
        offsets.push(elements.len());
        elements.extend((0..j_count(p.get(), d, i)).map(|j| BasisIndex::new(i, j)));
    }
    offsets.push(elements.len());
    Ok(OrderedBasis { p, d, elements, offsets })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(m(3), 7).unwrap(), 6);
        assert_eq!(genus(m(11), 122).unwrap(), 605);
        assert_eq!(genus(m(11), 120).unwrap(), 595);
        assert_eq!(genus(m(3), 1).unwrap(), 0);
        assert!(genus(m(3), 6).is_err());
        assert!(basis_enumerate(m(5), 10).is_err());
    }

    #[test]
    fn basis_examples() {
        let b = basis_enumerate(m(3), 7).unwrap();
        let pairs: Vec<_> = b.elements().iter().map(|e| (e.i, e.j)).collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1)]);

        let b = basis_enumerate(m(3), 2).unwrap();
        assert_eq!(b.elements(), &[BasisIndex::new(0, 0)]);
        assert_eq!(b.row_len(1), 0);

        assert!(basis_enumerate(m(7), 1).unwrap().is_empty());
    }

    #[test]
    fn size_matches_genus() {
        for p in [3u64, 5, 7, 11, 13] {
            for d in 1..=500 {
                if d % p == 0 {
                    continue;
                }
                assert_eq!(basis_enumerate(m(p), d).unwrap().len() as u64, genus(m(p), d).unwrap(), "p={p} d={d}");
            }
        }
    }

    #[test]
    fn row_lengths_near_p_squared() {
        for p in (3u64..=23).filter(|&p| PrimeModulus::new(p).is_ok()) {
            let minus = basis_enumerate(m(p), p * p - 1).unwrap();
            let plus = basis_enumerate(m(p), p * p + 1).unwrap();
            for i in 0..p - 1 {
                // Largest admissible j is one less than the count.
                assert_eq!(minus.row_len(i) as u64, p * p - (1 + i) * p - 2 + 1);
                assert_eq!(plus.row_len(i) as u64, p * p - (1 + i) * p - 1 + 1);
            }
        }
    }

    #[test]
    fn ordering_and_positions() {
        let b = basis_enumerate(m(7), 40).unwrap();
        assert!(b.elements().windows(2).all(|w| w[0] < w[1]));
        for (pos, &e) in b.elements().iter().enumerate() {
            assert_eq!(b.position(e), Some(pos));
            assert_eq!(b.get(pos), Some(e));
        }
        assert_eq!(b.position(BasisIndex::new(6, 0)), None);
        assert_eq!(b.position(BasisIndex::new(0, b.row_len(0) as u64)), None);
    }
}
