//! The cover `y^p - y = f(x)` with `f` a polynomial over `F_p`, branched
//! only over infinity with ramification break `d = deg f`.

use serde::Serialize;

use crate::arith::{FpPoly, PrimeModulus};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Curve {
    #[serde(serialize_with = "ser_modulus")]
    p: PrimeModulus,
    #[serde(serialize_with = "ser_poly")]
    f: FpPoly,
    d: u64,
}

fn ser_modulus<S: serde::Serializer>(p: &PrimeModulus, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(p.get())
}

fn ser_poly<S: serde::Serializer>(f: &FpPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(f)
}

impl Curve {
    /// With `normalize`, every monomial `c x^{pm}` (`m >= 1`) is traded for
    /// `c x^m` via `y -> y + c x^m`, repeating until no positive exponent is
    /// divisible by `p`. The resulting degree must be coprime to `p`.
    pub fn new(f: FpPoly, normalize: bool) -> Result<Self> {
        let f = if normalize { normalize_rhs(f) } else { f };
        let p = f.modulus();
        let degree = match f.degree() {
            None | Some(0) => return Err(Error::ConstantRhs),
            Some(e) => e as u64,
        };
        if degree % p.get() == 0 {
            return Err(Error::DegreeDivisibleByP { degree, p: p.get() });
        }
        Ok(Self { p, f, d: degree })
    }

    pub fn parse(p: PrimeModulus, text: &str, normalize: bool) -> Result<Self> {
        Self::new(FpPoly::parse(p, text)?, normalize)
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn f(&self) -> &FpPoly {
        &self.f
    }

    /// The ramification break at infinity, the pole order `deg f`.
    pub fn ramification_break(&self) -> u64 {
        self.d
    }

    /// The isomorphic cover obtained from `y -> y + g`, i.e. `f + g^p - g`.
    /// `g^p` must stay below the break.
    pub fn as_equivalent(&self, g: &FpPoly) -> Result<Self> {
        if g.modulus() != self.p {
            return Err(Error::ModulusMismatch(self.p.get(), g.modulus().get()));
        }
        if let Some(deg) = g.degree() {
            let gp_degree = deg as u64 * self.p.get();
            if gp_degree >= self.d {
                return Err(Error::BreakChanged { gp_degree, d: self.d });
            }
        }
        let f = &(&self.f + &g.frobenius()) - g;
        Ok(Self { p: self.p, f, d: self.d })
    }

    /// `f(c x)` for `c` a unit.
    pub fn scale_x(&self, c: u64) -> Result<Self> {
        self.unit(c)?;
        Self::new(self.f.compose_scale(c), false)
    }

    /// `u f` for `u` a unit.
    pub fn scale_rhs(&self, u: u64) -> Result<Self> {
        self.unit(u)?;
        Self::new(self.f.scale(u), false)
    }

    pub fn add_constant(&self, c: u64) -> Self {
        let f = &self.f + &FpPoly::constant(self.p, c);
        Self { p: self.p, f, d: self.d }
    }

    fn unit(&self, c: u64) -> Result<()> {
        if self.p.reduce(c) == 0 {
            Err(Error::Dimension(format!("{c} is not a unit mod {}", self.p)))
        } else {
            Ok(())
        }
    }
}

fn normalize_rhs(f: FpPoly) -> FpPoly {
    let p = f.modulus();
    let step = p.get() as usize;
    let mut coeffs = f.coeffs().to_vec();
    // Each move sends exponent pm to m < pm, so one descending pass
    // clears everything.
    for e in (step..coeffs.len()).rev() {
        if e % step == 0 && coeffs[e] != 0 {
            let c = coeffs[e];
            coeffs[e] = 0;
            coeffs[e / step] = p.add(coeffs[e / step], c);
        }
    }
    FpPoly::from_coeffs(p, coeffs)
}
