use serde::{Deserialize, Serialize};

use crate::bounds::{lower_bound_single, upper_bound};
use crate::cartier::cartier_matrix;
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::holo::genus;
use crate::linalg::{p_rank_via_power, rank};

/// Invariants of one curve together with its a-number bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub p: u64,
    pub d: u64,
    pub f: String,
    pub genus: u64,
    pub a_number: u64,
    pub p_rank: u64,
    pub lower_bound: u64,
    pub upper_bound: u64,
    pub attains_lower: bool,
}

pub const CSV_HEADER: &str = "p,d,f,genus,a_number,p_rank,lower_bound,upper_bound,attains_lower";

impl InvariantReport {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},\"{}\",{},{},{},{},{},{}",
            self.p,
            self.d,
            self.f,
            self.genus,
            self.a_number,
            self.p_rank,
            self.lower_bound,
            self.upper_bound,
            self.attains_lower
        )
    }

    /// Checks the relations every report must satisfy for a cover of the
    /// projective line branched at one point.
    pub fn check(&self) -> Result<()> {
        let fail = |what: String| Err(Error::InvariantViolation(format!("{what} for p={} f={}", self.p, self.f)));
        if self.genus != (self.p - 1) * (self.d - 1) / 2 {
            return fail(format!("genus {} != (p-1)(d-1)/2", self.genus));
        }
        if self.p_rank != 0 {
            return fail(format!("p-rank {} != 0", self.p_rank));
        }
        if self.a_number + self.p_rank > self.genus {
            return fail(format!("a + s = {} > g = {}", self.a_number + self.p_rank, self.genus));
        }
        if !(self.lower_bound <= self.a_number && self.a_number <= self.upper_bound) {
            return fail(format!("a = {} outside [{}, {}]", self.a_number, self.lower_bound, self.upper_bound));
        }
        if self.attains_lower != (self.a_number == self.lower_bound) {
            return fail("inconsistent attainment flag".into());
        }
        Ok(())
    }
}

/// `dim ker C`, skipping the p-rank and bound computations.
pub fn a_number(curve: &Curve) -> Result<u64> {
    let cm = cartier_matrix(curve)?;
    Ok((cm.genus() - rank(cm.matrix())) as u64)
}

/// Genus, a-number and p-rank from the Cartier matrix, plus bounds. Fails
/// with [`Error::InvariantViolation`] if the computed values break any
/// structural relation.
pub fn invariants(curve: &Curve) -> Result<InvariantReport> {
    let p = curve.p();
    let d = curve.ramification_break();
    let cm = cartier_matrix(curve)?;
    let g = cm.genus();
    let a_number = (g - rank(cm.matrix())) as u64;
    let p_rank = p_rank_via_power(cm.matrix(), g)? as u64;
    let lower_bound = lower_bound_single(p, d);
    let report = InvariantReport {
        p: p.get(),
        d,
        f: curve.f().to_string(),
        genus: genus(p, d)?,
        a_number,
        p_rank,
        lower_bound,
        upper_bound: upper_bound(p, d, 0),
        attains_lower: a_number == lower_bound,
    };
    report.check()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeModulus;

    fn report(p: u64, f: &str) -> InvariantReport {
        invariants(&Curve::parse(PrimeModulus::new(p).unwrap(), f, true).unwrap()).unwrap()
    }

    #[test]
    fn motivating_pair() {
        let r = report(3, "x^7");
        assert_eq!(
            (r.genus, r.a_number, r.p_rank, r.lower_bound, r.upper_bound, r.attains_lower),
            (6, 4, 0, 3, 5, false)
        );
        let r = report(3, "x^7 + x^5");
        assert_eq!((r.genus, r.a_number, r.p_rank, r.lower_bound, r.attains_lower), (6, 3, 0, 3, true));
    }

    #[test]
    fn eleven_example() {
        let r = report(11, "-x^120 - x^60");
        assert_eq!((r.genus, r.a_number, r.lower_bound, r.attains_lower), (595, 300, 300, true));
    }

    #[test]
    fn check_rejects_bad_reports() {
        let good = report(3, "x^7");
        assert!(good.check().is_ok());
        let mut bad = good.clone();
        bad.p_rank = 1;
        assert!(matches!(bad.check(), Err(Error::InvariantViolation(_))));
        let mut bad = good.clone();
        bad.a_number = 2;
        assert!(bad.check().is_err());
        let mut bad = good;
        bad.attains_lower = true;
        assert!(bad.check().is_err());
    }

    #[test]
    fn csv_and_json_forms() {
        let r = report(3, "x^7 + x^5");
        assert_eq!(r.to_csv_row(), "3,7,\"x^7 + x^5\",6,3,0,3,5,true");
        assert_eq!(CSV_HEADER.split(',').count(), r.to_csv_row().split(',').count());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["a_number"], 3);
        assert_eq!(serde_json::from_value::<InvariantReport>(json).unwrap(), r);
    }
}
