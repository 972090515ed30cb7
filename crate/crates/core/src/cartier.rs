//! The Cartier operator on regular differentials of `y^p - y = f`.
//!
//! A basis differential is rewritten with `y = y^p - f`:
//!
//! ```text
//! y^m x^n dx = sum_k binom(m, k) y^{pk} (-f)^{m-k} x^n dx
//! ```
//!
//! and `C(y^{pk} h dx) = y^k C(h dx)`, where `C(x^s dx)` is `x^{(s+1)/p - 1} dx`
//! when `s ≡ -1 (mod p)` and zero otherwise. Coefficients are in `F_p`, so
//! their `p`-th roots are themselves and the operator is linear.

use rayon::prelude::*;

use crate::arith::{FpPoly, PrimeModulus};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::holo::{basis_enumerate, BasisIndex, OrderedBasis};
use crate::linalg::FpMatrix;

/// `h(x) dx`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyDifferential(pub FpPoly);

impl PolyDifferential {
    /// Keeps the monomials `c x^s` with `s ≡ p - 1 (mod p)`, sending each to
    /// `c x^{(s - p + 1)/p}`.
    pub fn cartier_classical(&self) -> PolyDifferential {
        let p = self.0.modulus();
        let step = p.get() as usize;
        let coeffs = self.0.coeffs().iter().skip(step - 1).step_by(step).copied().collect();
        PolyDifferential(FpPoly::from_coeffs(p, coeffs))
    }
}

/// Shared per-curve data: powers of `-f` and binomials mod p.
#[derive(Debug, Clone)]
pub struct CartierContext<'c> {
    curve: &'c Curve,
    basis: OrderedBasis,
    neg_f_powers: Vec<FpPoly>,
    binomials: Vec<Vec<u64>>,
}

impl<'c> CartierContext<'c> {
    pub fn new(curve: &'c Curve) -> Result<Self> {
        let p = curve.p();
        let basis = basis_enumerate(p, curve.ramification_break())?;
        let max_m = p.get() as usize - 2;
        let neg_f_powers = (-curve.f()).pow_table(max_m);
        let binomials = (0..=max_m as u64).map(|m| (0..=m).map(|k| p.binomial(m, k)).collect()).collect();
        Ok(Self { curve, basis, neg_f_powers, binomials })
    }

    pub fn basis(&self) -> &OrderedBasis {
        &self.basis
    }

    /// Coordinates of `C(y^i x^j dx)` in the ordered basis.
    pub fn column(&self, b: BasisIndex) -> Result<Vec<u64>> {
        let p: PrimeModulus = self.curve.p();
        let step = p.get() as usize;
        let d = self.curve.ramification_break();
        if !self.basis.contains(b) {
            return Err(Error::InternalRange { i: b.i, j: b.j, p: p.get(), d });
        }
        let (m, n) = (b.i as usize, b.j as usize);
        let mut out = vec![0u64; self.basis.len()];
        for k in 0..=m {
            let coeff = self.binomials[m][k];
            if coeff == 0 {
                continue;
            }
            let h = &self.neg_f_powers[m - k];
            // Exponents e of h with n + e ≡ p - 1 (mod p).
            let first = (step - 1 + step - n % step) % step;
            for e in (first..h.coeffs().len()).step_by(step) {
                let c = h.coeffs()[e];
                if c == 0 {
                    continue;
                }
                let target = BasisIndex::new(k as u64, ((n + e + 1) / step - 1) as u64);
                let pos = self.basis.position(target).ok_or(Error::InternalRange {
                    i: target.i,
                    j: target.j,
                    p: p.get(),
                    d,
                })?;
                out[pos] = p.add(out[pos], p.mul(coeff, c));
            }
        }
        Ok(out)
    }
}

/// Coordinates of the Cartier image of one basis differential.
pub fn cartier_of_basis_elem(curve: &Curve, b: BasisIndex) -> Result<Vec<u64>> {
    CartierContext::new(curve)?.column(b)
}

/// The matrix of the Cartier operator together with the basis indexing its
/// rows and columns. Entry `(r, c)` is the coefficient of `basis[r]` in
/// `C(basis[c])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierMatrix {
    basis: OrderedBasis,
    matrix: FpMatrix,
}

impl CartierMatrix {
    pub fn basis(&self) -> &OrderedBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn genus(&self) -> usize {
        self.basis.len()
    }

    pub fn p(&self) -> PrimeModulus {
        self.basis.p()
    }

    pub fn d(&self) -> u64 {
        self.basis.d()
    }
}

pub fn cartier_matrix(curve: &Curve) -> Result<CartierMatrix> {
    let ctx = CartierContext::new(curve)?;
    let columns = ctx
        .basis
        .elements()
        .par_iter()
        .map(|&b| ctx.column(b))
        .collect::<Result<Vec<_>>>()?;
    let matrix = FpMatrix::from_columns(curve.p(), ctx.basis.len(), &columns)?;
    Ok(CartierMatrix { basis: ctx.basis, matrix })
}
