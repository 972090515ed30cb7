//! Genus, p-rank and a-number of Artin–Schreier covers `y^p - y = f(x)`
//! branched only over infinity, computed from the matrix of the Cartier
//! operator on the standard monomial basis of regular differentials.
//!
//! All arithmetic is exact over the prime field `F_p`. Alongside the
//! invariants the crate evaluates the Booher–Cais lower and upper bounds on
//! the a-number, builds the known families of curves attaining the lower
//! bound, and runs reproducible randomized searches for further witnesses.
//!
//! ```
//! use ascurve::{Curve, FpPoly, PrimeModulus};
//!
//! let p = PrimeModulus::new(3).unwrap();
//! let f = FpPoly::parse(p, "x^7 + x^5").unwrap();
//! let curve = Curve::new(f, true).unwrap();
//! let report = ascurve::invariants(&curve).unwrap();
//! assert_eq!((report.genus, report.a_number, report.lower_bound), (6, 3, 3));
//! ```

pub mod arith;
pub mod bounds;
pub mod cartier;
pub mod cli;
pub mod curve;
mod error;
pub mod families;
pub mod holo;
pub mod linalg;
pub mod report;
pub mod search;

pub use arith::{FpPoly, PrimeModulus};
pub use bounds::{lower_bound_multi, lower_bound_single, upper_bound, BreakMultiset};
pub use cartier::{cartier_matrix, cartier_of_basis_elem, CartierMatrix, PolyDifferential};
pub use curve::Curve;
pub use error::{Error, Result};
pub use families::{family_poly, family_verify, FamilyId, FamilyReport};
pub use holo::{basis_enumerate, genus, BasisIndex, OrderedBasis};
pub use linalg::{p_rank_via_power, rank, FpMatrix};
pub use report::{invariants, InvariantReport};
pub use search::{random_poly, search_minimal, SearchConfig, SearchOutcome, SearchWitness, Strategy};
