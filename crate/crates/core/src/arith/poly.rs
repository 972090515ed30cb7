use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::PrimeModulus;
use crate::error::{Error, Result};

// Products are below 2^62; reducing once the accumulator passes this mark
// keeps every sum below 2^63.
const LAZY_LIMIT: u64 = 1 << 62;

/// Dense polynomial over `F_p`, coefficient `k` multiplies `x^k`.
///
/// Always canonical: residues reduced into `[0, p)` and no trailing zero
/// coefficients, so the zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    modulus: PrimeModulus,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn zero(p: PrimeModulus) -> Self {
        Self { modulus: p, coeffs: Vec::new() }
    }

    pub fn one(p: PrimeModulus) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: PrimeModulus, c: u64) -> Self {
        Self::from_coeffs(p, vec![c])
    }

    /// `c * x^e`.
    pub fn monomial(p: PrimeModulus, c: u64, e: usize) -> Self {
        let c = p.reduce(c);
        if c == 0 {
            return Self::zero(p);
        }
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self { modulus: p, coeffs }
    }

    pub fn x(p: PrimeModulus) -> Self {
        Self::monomial(p, 1, 1)
    }

    /// Builds from arbitrary residues, reducing and trimming.
    pub fn from_coeffs(p: PrimeModulus, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = p.reduce(*c);
        }
        let mut poly = Self { modulus: p, coeffs };
        poly.trim();
        poly
    }

    pub fn from_signed(p: PrimeModulus, coeffs: &[i64]) -> Self {
        Self::from_coeffs(p, coeffs.iter().map(|&c| p.reduce_i64(c)).collect())
    }

    /// Densifies a sparse list of `(coefficient, exponent)` terms. Repeated
    /// exponents accumulate.
    pub fn from_terms(p: PrimeModulus, terms: &[(i64, usize)]) -> Self {
        let len = terms.iter().map(|&(_, e)| e + 1).max().unwrap_or(0);
        let mut coeffs = vec![0; len];
        for &(c, e) in terms {
            coeffs[e] = p.add(coeffs[e], p.reduce_i64(c));
        }
        Self::from_coeffs(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, e: usize) -> u64 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(e, &c)| (e, c))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus.get(), other.modulus.get()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.modulus;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut coeffs = long.clone();
        for (c, &s) in coeffs.iter_mut().zip(short) {
            *c = p.add(*c, s);
        }
        let mut out = Self { modulus: p, coeffs };
        out.trim();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    /// Schoolbook product with lazy reduction.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(p));
        }
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (slot, &b) in acc[i..].iter_mut().zip(&other.coeffs) {
                *slot += a * b;
                if *slot >= LAZY_LIMIT {
                    *slot %= p.get();
                }
            }
        }
        Ok(Self::from_coeffs(p, acc))
    }

    fn neg_ref(&self) -> Self {
        let p = self.modulus;
        Self { modulus: p, coeffs: self.coeffs.iter().map(|&c| p.neg(c)).collect() }
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.modulus;
        let c = p.reduce(c);
        Self::from_coeffs(p, self.coeffs.iter().map(|&a| p.mul(a, c)).collect())
    }

    /// Multiplies by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; n];
        coeffs.extend_from_slice(&self.coeffs);
        Self { modulus: self.modulus, coeffs }
    }

    /// `f(c x)`.
    pub fn compose_scale(&self, c: u64) -> Self {
        let p = self.modulus;
        let mut power = 1;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            coeffs.push(p.mul(a, power));
            power = p.mul(power, p.reduce(c));
        }
        Self::from_coeffs(p, coeffs)
    }

    /// `g^p`, which over `F_p` is `g(x^p)`.
    pub fn frobenius(&self) -> Self {
        let p = self.modulus.get() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * p + 1];
        for (e, c) in self.terms() {
            coeffs[e * p] = c;
        }
        Self { modulus: self.modulus, coeffs }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `[f^0, f^1, ..., f^m]`, each entry obtained from the previous one by a
    /// single multiplication.
    pub fn pow_table(&self, m: usize) -> Vec<Self> {
        let mut table = Vec::with_capacity(m + 1);
        table.push(Self::one(self.modulus));
        for k in 1..=m {
            let next = &table[k - 1] * self;
            table.push(next);
        }
        table
    }

    pub fn derivative(&self) -> Self {
        let p = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(e, &c)| p.mul(c, p.reduce(e as u64)))
            .collect();
        Self::from_coeffs(p, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.modulus;
        let x = p.reduce(x);
        self.coeffs.iter().rev().fold(0, |acc, &c| p.add(p.mul(acc, x), c))
    }
}

/// Free-function form of [`FpPoly::checked_mul`].
pub fn poly_mul(a: &FpPoly, b: &FpPoly) -> Result<FpPoly> {
    a.checked_mul(b)
}

// Operator impls panic on mismatched moduli; use the `checked_*` methods when
// the operands come from different sources.
impl Add for &FpPoly {
    type Output = FpPoly;
    fn add(self, rhs: &FpPoly) -> FpPoly {
        self.checked_add(rhs).expect("polynomial moduli differ")
    }
}

impl Sub for &FpPoly {
    type Output = FpPoly;
    fn sub(self, rhs: &FpPoly) -> FpPoly {
        self.checked_sub(rhs).expect("polynomial moduli differ")
    }
}

impl Mul for &FpPoly {
    type Output = FpPoly;
    fn mul(self, rhs: &FpPoly) -> FpPoly {
        self.checked_mul(rhs).expect("polynomial moduli differ")
    }
}

impl Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        self.neg_ref()
    }
}

impl fmt::Display for FpPoly {
    /// Descending terms `c*x^e` with residues in `[0, p)`; the zero
    /// polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, e) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, e) => write!(f, "x^{e}")?,
                (c, 1) => write!(f, "{c}*x")?,
                (c, e) => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}
