//! Text forms accepted for polynomials:
//!
//! * sums of terms `c*x^e`, `c*x`, `x^e`, `x`, `c` joined by `+` or `-`
//!   (the Unicode minus `−` is accepted too), with optional whitespace and
//!   an optional `*` between coefficient and `x`;
//! * a raw coefficient list `[c0, c1, ...]`, possibly with negative entries.
//!
//! Coefficients are decimal and reduced mod p.

use crate::arith::{FpPoly, PrimeModulus};
use crate::error::{Error, Result};

// Guards the dense representation against typos like `x^99999999999`.
const MAX_EXPONENT: usize = 1 << 24;

impl FpPoly {
    pub fn parse(p: PrimeModulus, input: &str) -> Result<FpPoly> {
        let fail = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let s: String = input.replace('−', "-").chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(fail("empty input"));
        }
        if let Some(body) = s.strip_prefix('[') {
            let body = body.strip_suffix(']').ok_or_else(|| fail("unterminated coefficient list"))?;
            if body.is_empty() {
                return Ok(FpPoly::zero(p));
            }
            let coeffs = body
                .split(',')
                .map(|tok| parse_residue(p, tok).ok_or_else(|| fail(&format!("bad coefficient {tok:?}"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(FpPoly::from_coeffs(p, coeffs));
        }

        let mut terms: Vec<(u64, usize)> = Vec::new();
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
            } else if pos != 0 {
                return Err(fail("expected '+' or '-' between terms"));
            }
            let end = s[pos..].find(['+', '-']).map_or(s.len(), |k| pos + k);
            let term = &s[pos..end];
            let (c, e) = parse_term(p, term).ok_or_else(|| fail(&format!("bad term {term:?}")))?;
            terms.push((if negative { p.neg(c) } else { c }, e));
            pos = end;
        }
        let len = terms.iter().map(|&(_, e)| e + 1).max().unwrap_or(0);
        let mut coeffs = vec![0; len];
        for (c, e) in terms {
            coeffs[e] = p.add(coeffs[e], c);
        }
        Ok(FpPoly::from_coeffs(p, coeffs))
    }
}

fn parse_term(p: PrimeModulus, term: &str) -> Option<(u64, usize)> {
    if term.is_empty() {
        return None;
    }
    let Some(xpos) = term.find('x') else {
        return Some((parse_residue(p, term)?, 0));
    };
    let coeff_part = &term[..xpos];
    let coeff_part = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
    let c = if coeff_part.is_empty() {
        if xpos > 0 {
            return None; // a bare '*'
        }
        1
    } else {
        parse_residue(p, coeff_part)?
    };
    let rest = &term[xpos + 1..];
    let e = if rest.is_empty() {
        1
    } else {
        let digits = rest.strip_prefix('^')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse::<usize>().ok().filter(|&e| e <= MAX_EXPONENT)?
    };
    Some((c, e))
}

/// Decimal, optionally signed, reduced mod p digit by digit.
fn parse_residue(p: PrimeModulus, tok: &str) -> Option<u64> {
    let (neg, digits) = match tok.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, tok.strip_prefix('+').unwrap_or(tok)),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v = digits.bytes().fold(0u64, |acc, b| p.add(p.mul(acc, 10 % p.get()), p.reduce(u64::from(b - b'0'))));
    Some(if neg { p.neg(v) } else { v })
}
