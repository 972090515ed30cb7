//! Explicit families whose a-number meets the lower bound:
//!
//! | name         | right-hand side                                   | break        |
//! |--------------|---------------------------------------------------|--------------|
//! | `bc-minus`   | `-x^d - x^{d/2}`                                  | `p^2 - 1`    |
//! | `bc-plus`    | `-x^d - x^{d/2 + p}`                              | `p^2 + 1`    |
//! | `farnell`    | any polynomial of degree `p - 1`                  | `p - 1`      |
//! | `experiment` | `-x^{np^2-1} - x^{(np^2 + (n-1)p - 1)/2}`         | `np^2 - 1`   |

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{FpPoly, PrimeModulus};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::report::{invariants, InvariantReport};
use crate::search::random_poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    BcMinus,
    BcPlus,
    Farnell,
    Experiment,
}

impl FamilyName {
    pub const ALL: [FamilyName; 4] = [Self::BcMinus, Self::BcPlus, Self::Farnell, Self::Experiment];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::BcMinus => "bc-minus",
            Self::BcPlus => "bc-plus",
            Self::Farnell => "farnell",
            Self::Experiment => "experiment",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Family(format!("unknown family {s:?}")))
    }
}

/// A member of one of the families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyId {
    BcMinus { p: PrimeModulus },
    BcPlus { p: PrimeModulus },
    /// Uses `poly` when given (it must have degree `p - 1`), otherwise a
    /// random degree `p - 1` polynomial drawn from `seed`.
    Farnell { p: PrimeModulus, poly: Option<FpPoly>, seed: u64 },
    Experiment { p: PrimeModulus, n: u64 },
}

impl FamilyId {
    pub fn name(&self) -> FamilyName {
        match self {
            Self::BcMinus { .. } => FamilyName::BcMinus,
            Self::BcPlus { .. } => FamilyName::BcPlus,
            Self::Farnell { .. } => FamilyName::Farnell,
            Self::Experiment { .. } => FamilyName::Experiment,
        }
    }

    pub fn p(&self) -> PrimeModulus {
        match self {
            Self::BcMinus { p } | Self::BcPlus { p } | Self::Farnell { p, .. } | Self::Experiment { p, .. } => *p,
        }
    }
}

/// `-x^a - x^b` with residues `p - 1`.
fn neg_binomial(p: PrimeModulus, a: u64, b: u64) -> FpPoly {
    FpPoly::from_terms(p, &[(-1, a as usize), (-1, b as usize)])
}

/// The defining polynomial of the family member, signs included.
pub fn family_poly(id: &FamilyId) -> Result<Curve> {
    let f = match id {
        FamilyId::BcMinus { p } => {
            let d = p.get() * p.get() - 1;
            neg_binomial(*p, d, d / 2)
        }
        FamilyId::BcPlus { p } => {
            let d = p.get() * p.get() + 1;
            neg_binomial(*p, d, d / 2 + p.get())
        }
        FamilyId::Farnell { p, poly: Some(f), .. } => {
            if f.modulus() != *p {
                return Err(Error::ModulusMismatch(p.get(), f.modulus().get()));
            }
            if f.degree() != Some(p.get() as usize - 1) {
                return Err(Error::Family(format!("farnell needs degree {}, got {f}", p.get() - 1)));
            }
            f.clone()
        }
        FamilyId::Farnell { p, poly: None, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            random_poly(*p, p.get() - 1, &mut rng)
        }
        FamilyId::Experiment { p, n } => {
            if *n == 0 {
                return Err(Error::Family("experiment needs n >= 1".into()));
            }
            let q = p.get();
            let numerator = n * q * q + (n - 1) * q - 1;
            assert!(numerator % 2 == 0, "odd p makes n p^2 + (n-1) p - 1 even");
            neg_binomial(*p, n * q * q - 1, numerator / 2)
        }
    };
    Curve::new(f, false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: FamilyName,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub attained: bool,
    pub report: InvariantReport,
}

/// Computes the a-number of the family member and compares it with `L(d)`.
pub fn family_verify(id: &FamilyId) -> Result<FamilyReport> {
    let curve = family_poly(id)?;
    let report = invariants(&curve)?;
    Ok(FamilyReport {
        family: id.name(),
        n: match id {
            FamilyId::Experiment { n, .. } => Some(*n),
            _ => None,
        },
        attained: report.attains_lower,
        report,
    })
}
