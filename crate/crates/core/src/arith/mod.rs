//! Prime-field residues and dense polynomials over `F_p`.
//!
//! Coefficients always live in the prime field itself, so the Frobenius map
//! `c -> c^p` is the identity on them and so is its inverse. The Cartier
//! module relies on this: the `p`-th root of a coefficient is the
//! coefficient.

mod modulus;
mod parse;
mod poly;

pub use modulus::PrimeModulus;
pub use poly::{poly_mul, FpPoly};
