use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_MODULUS: u64 = (1 << 31) - 1;

/// An odd prime `p` with `3 <= p <= 2^31 - 1`.
///
/// Residues are plain `u64` values in `[0, p)`. Products of two residues fit
/// in 62 bits, which leaves headroom for lazy accumulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..=MAX_MODULUS).contains(&p) || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Self(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.0
    }

    #[inline]
    pub fn reduce_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat. Returns `None` for zero.
    pub fn inv(self, a: u64) -> Option<u64> {
        let a = a % self.0;
        (a != 0).then(|| self.pow(a, self.0 - 2))
    }

    /// `binom(n, k) mod p` for `n < p`, where no factor of `p` appears.
    pub fn binomial(self, n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let k = k.min(n - k);
        let mut num = 1;
        let mut den = 1;
        for t in 0..k {
            num = self.mul(num, self.reduce(n - t));
            den = self.mul(den, self.reduce(t + 1));
        }
        match self.inv(den) {
            Some(inv) => self.mul(num, inv),
            // Lucas: some digit of k exceeds the matching digit of n.
            None => lucas_binomial(self, n, k),
        }
    }
}

fn lucas_binomial(p: PrimeModulus, mut n: u64, mut k: u64) -> u64 {
    let mut acc = 1;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p.get(), k % p.get());
        if kd > nd {
            return 0;
        }
        acc = p.mul(acc, p.binomial(nd, kd));
        n /= p.get();
        k /= p.get();
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeModulus> for u64 {
    fn from(p: PrimeModulus) -> u64 {
        p.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
