//! Acceptance criteria, one line per criterion. Runs under `cargo test`;
//! set `ASCURVE_EXTENDED=1` to add the non-gating extended runs.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ascurve::bounds::lower_bound_single;
use ascurve::linalg::{nilpotency_index, p_rank_via_power, pattern_is_acyclic};
use ascurve::search::trial_rng;
use ascurve::{
    cartier_matrix, family_verify, invariants, random_poly, search_minimal, upper_bound, Curve,
    FamilyId, FpPoly, PrimeModulus, SearchConfig,
};
use rand::Rng;
use rayon::prelude::*;

type Check = std::result::Result<String, String>;

fn m(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn curve(p: u64, f: &str) -> Curve {
    Curve::parse(m(p), f, true).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1_motivating() -> Check {
    let a = invariants(&curve(3, "x^7")).map_err(|e| e.to_string())?;
    let b = invariants(&curve(3, "x^7 + x^5")).map_err(|e| e.to_string())?;
    ensure(a.a_number == 4, || format!("x^7: a = {}", a.a_number))?;
    ensure(b.a_number == 3, || format!("x^7 + x^5: a = {}", b.a_number))?;
    Ok("a(x^7) = 4, a(x^7 + x^5) = 3".into())
}

fn ac2_eleven() -> Check {
    for f in ["-x^122 - x^72", "-x^120 - x^60"] {
        let r = invariants(&curve(11, f)).map_err(|e| e.to_string())?;
        ensure(r.a_number == 300 && r.lower_bound == 300, || {
            format!("{f}: a = {}, L = {}", r.a_number, r.lower_bound)
        })?;
    }
    Ok("both p = 11 curves: a = L = 300".into())
}

fn ac3_farnell() -> Check {
    for p in [3u64, 5, 7, 11] {
        let expected = (p - 1) * (p - 1) / 4;
        let bad: Vec<String> = (0..25u64)
            .into_par_iter()
            .filter_map(|seed| {
                let id = FamilyId::Farnell { p: m(p), poly: None, seed: 1000 * p + seed };
                match family_verify(&id) {
                    Ok(r) if r.report.a_number == expected && r.report.d == p - 1 => None,
                    Ok(r) => Some(format!("p={p} f={} a={}", r.report.f, r.report.a_number)),
                    Err(e) => Some(e.to_string()),
                }
            })
            .collect();
        ensure(bad.is_empty(), || bad.join("; "))?;
    }
    Ok("25 random degree p-1 curves per p in {3,5,7,11}: a = (p-1)^2/4".into())
}

fn ac4_bc_families() -> Check {
    for p in [3u64, 5, 7, 11, 13] {
        let closed = (p - 1) / 2 * ((p * p - 1) / 2);
        for id in [FamilyId::BcMinus { p: m(p) }, FamilyId::BcPlus { p: m(p) }] {
            let r = family_verify(&id).map_err(|e| e.to_string())?;
            ensure(r.attained, || format!("{id:?}: a = {}, L = {}", r.report.a_number, r.report.lower_bound))?;
            ensure(r.report.lower_bound == closed, || format!("{id:?}: L = {} != {closed}", r.report.lower_bound))?;
        }
    }
    Ok("bc-minus and bc-plus attain L for p in {3,5,7,11,13}".into())
}

fn experiment_cells(primes: &[u64], n_max: u64) -> Check {
    let cells: Vec<(u64, u64)> = primes.iter().flat_map(|&p| (1..=n_max).map(move |n| (p, n))).collect();
    let bad: Vec<String> = cells
        .par_iter()
        .filter_map(|&(p, n)| {
            let d = n * p * p - 1;
            match family_verify(&FamilyId::Experiment { p: m(p), n }) {
                Ok(r) if r.attained && r.report.lower_bound == lower_bound_single(m(p), d) => None,
                Ok(r) => Some(format!("p={p} n={n}: a = {}, L = {}", r.report.a_number, r.report.lower_bound)),
                Err(e) => Some(format!("p={p} n={n}: {e}")),
            }
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("experiment family attains L(np^2 - 1) for p in {primes:?}, n <= {n_max}"))
}

fn ac5_experiment() -> Check {
    experiment_cells(&[3, 5, 7], 7)
}

fn ac6_bound_identities() -> Check {
    for p in (3..=23u64).filter(|&p| PrimeModulus::new(p).is_ok()) {
        let q = m(p);
        let closed = (p - 1) / 2 * ((p * p - 1) / 2);
        ensure(lower_bound_single(q, p * p + 1) == closed, || format!("L(p^2+1), p={p}"))?;
        ensure(lower_bound_single(q, p * p - 1) == closed, || format!("L(p^2-1), p={p}"))?;
        ensure(lower_bound_single(q, p - 1) == (p - 1) * (p - 1) / 4, || format!("L(p-1), p={p}"))?;
        let step = lower_bound_single(q, p * p + 1);
        for d in 1..=300 {
            ensure(lower_bound_single(q, d + p * p) == lower_bound_single(q, d) + step, || {
                format!("L(d+p^2) additivity, p={p} d={d}")
            })?;
        }
    }
    Ok("L(p^2±1), L(p-1), L(d+p^2) identities for odd p <= 23, d <= 300".into())
}

fn ac7_properties() -> Check {
    let mut total = 0;
    for q in [3u64, 5, 7] {
        let p = m(q);
        let results: Vec<std::result::Result<(), String>> = (0..100u64)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(7_000 + q, t);
                let d = loop {
                    let d = rng.gen_range(2..=40u64);
                    if d % q != 0 {
                        break d;
                    }
                };
                let c = Curve::new(random_poly(p, d, &mut rng), true).map_err(|e| e.to_string())?;
                let r = invariants(&c).map_err(|e| e.to_string())?;
                let tag = format!("p={q} f={}", r.f);
                // (a) sandwich
                ensure(r.lower_bound <= r.a_number && r.a_number <= upper_bound(p, d, 0), || {
                    format!("{tag}: sandwich {} <= {} <= {}", r.lower_bound, r.a_number, r.upper_bound)
                })?;
                // (b) nilpotent, p-rank zero
                let cm = cartier_matrix(&c).map_err(|e| e.to_string())?;
                let g = cm.genus();
                let nil = nilpotency_index(cm.matrix()).map_err(|e| e.to_string())?;
                ensure(nil.is_some_and(|k| k <= g.max(1)), || format!("{tag}: not nilpotent"))?;
                ensure(p_rank_via_power(cm.matrix(), g) == Ok(0), || format!("{tag}: p-rank != 0"))?;
                ensure(pattern_is_acyclic(cm.matrix()), || format!("{tag}: cyclic nonzero pattern"))?;
                // (c) invariance
                let max_deg = (d - 1) / q;
                let g_poly = if max_deg > 0 {
                    let coeffs = (0..=rng.gen_range(0..=max_deg)).map(|_| rng.gen_range(0..q)).collect();
                    FpPoly::from_coeffs(p, coeffs)
                } else {
                    FpPoly::constant(p, rng.gen_range(0..q))
                };
                let variants = [
                    c.as_equivalent(&g_poly),
                    c.scale_x(rng.gen_range(1..q)),
                    c.scale_rhs(rng.gen_range(1..q)),
                    Ok(c.add_constant(rng.gen_range(0..q))),
                ];
                for v in variants {
                    let v = v.map_err(|e| e.to_string())?;
                    let rv = invariants(&v).map_err(|e| e.to_string())?;
                    ensure((rv.genus, rv.a_number, rv.p_rank) == (r.genus, r.a_number, r.p_rank), || {
                        format!("{tag}: variant {} has a = {}", rv.f, rv.a_number)
                    })?;
                }
                Ok(())
            })
            .collect();
        for res in results {
            res?;
            total += 1;
        }
    }
    Ok(format!("{total} random curves: sandwich, nilpotency, invariance"))
}

fn ac8_oracle() -> Check {
    let lib_rows = |p: u64, f: &[u64]| -> std::result::Result<Vec<Vec<u64>>, String> {
        let c = Curve::new(FpPoly::from_coeffs(m(p), f.to_vec()), false).map_err(|e| e.to_string())?;
        Ok(cartier_matrix(&c).map_err(|e| e.to_string())?.matrix().to_rows())
    };
    let mut count = 0;
    for d in [1u64, 2, 4, 5, 7] {
        for f in common::all_reduced(3, d) {
            ensure(lib_rows(3, &f)? == common::oracle_matrix(3, &f), || format!("p=3 f={f:?}"))?;
            count += 1;
        }
    }
    let mut rng = trial_rng(8, 5);
    for _ in 0..200 {
        let d = [1u64, 2, 3, 4, 6][rng.gen_range(0..5)];
        let mut f: Vec<u64> = (0..=d).map(|_| rng.gen_range(0..5)).collect();
        f[d as usize] = rng.gen_range(1..5);
        ensure(lib_rows(5, &f)? == common::oracle_matrix(5, &f), || format!("p=5 f={f:?}"))?;
        count += 1;
    }
    Ok(format!("{count} matrices match the brute-force oracle entrywise"))
}

fn ac9_search() -> Check {
    let mut found = Vec::new();
    for (p, d) in [(3u64, 5u64), (3, 8), (5, 9), (7, 13)] {
        let cfg = SearchConfig::new(m(p), d, 50_000, 20_240_601).map_err(|e| e.to_string())?;
        let first = search_minimal(&cfg).map_err(|e| e.to_string())?;
        let again = search_minimal(&cfg).map_err(|e| e.to_string())?;
        ensure(first.stats == again.stats && first.log == again.log, || format!("({p},{d}) not reproducible"))?;
        let w = first.witness.ok_or_else(|| format!("({p},{d}): no witness in budget"))?;
        let w2 = again.witness.expect("same run");
        ensure(w.curve == w2.curve && w.trial == w2.trial, || format!("({p},{d}) witness differs"))?;
        let lower = lower_bound_single(m(p), d);
        let recheck = invariants(&Curve::parse(m(p), &w.curve.f().to_string(), false).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(w.a == lower && recheck.a_number == lower, || format!("({p},{d}): a = {}, recheck {}", w.a, recheck.a_number))?;
        found.push(format!("({p},{d}) L={lower} trial {}", w.trial));
    }
    Ok(found.join(", "))
}

fn ac_extended_experiment() -> Check {
    experiment_cells(&[11, 13], 7)
}

/// Witnesses at every degree `kp - 1 <= p^2` for the larger primes.
fn ac_extended_search() -> Check {
    let mut cells = 0;
    for p in [11u64, 13, 17, 19, 23] {
        for k in 1..=p {
            let d = k * p - 1;
            let cfg = SearchConfig::new(m(p), d, 500, 23).map_err(|e| e.to_string())?;
            let out = search_minimal(&cfg).map_err(|e| e.to_string())?;
            ensure(out.witness.is_some(), || format!("p={p} d={d}: no witness in 500 trials, min a = {:?}", out.stats.min_a))?;
            cells += 1;
        }
    }
    Ok(format!("witnesses found for all {cells} cells (p, kp-1), p in 11..=23"))
}

struct Criterion {
    id: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags such as `--nocapture`; a name filter
    // that matches nothing here skips the suite.
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !filter.is_empty() && !filter.iter().any(|f| "acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }
    let secs = Duration::from_secs;
    let mut criteria = vec![
        Criterion { id: "AC1 motivating fixtures", limit: secs(1), run: ac1_motivating },
        Criterion { id: "AC2 p=11 example", limit: secs(60), run: ac2_eleven },
        Criterion { id: "AC3 farnell family", limit: secs(30), run: ac3_farnell },
        Criterion { id: "AC4 bc families", limit: secs(600), run: ac4_bc_families },
        Criterion { id: "AC5 experiment family", limit: secs(900), run: ac5_experiment },
        Criterion { id: "AC6 bound identities", limit: secs(5), run: ac6_bound_identities },
        Criterion { id: "AC7 property suite", limit: secs(300), run: ac7_properties },
        Criterion { id: "AC8 oracle equivalence", limit: secs(300), run: ac8_oracle },
        Criterion { id: "AC9 search reproduction", limit: secs(600), run: ac9_search },
    ];
    let extended = std::env::var("ASCURVE_EXTENDED").is_ok_and(|v| v == "1");
    if extended {
        criteria.push(Criterion { id: "EXT experiment p in {11,13}", limit: secs(24 * 3600), run: ac_extended_experiment });
        criteria.push(Criterion { id: "EXT search p <= 23", limit: secs(24 * 3600), run: ac_extended_search });
    }

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d} (took {elapsed:.2?}, limit {:?})", c.limit)),
            Err(e) => (false, e),
        };
        let gating = !c.id.starts_with("EXT");
        if !ok && gating {
            failed += 1;
        }
        println!(
            "[{}] {:<28} {:>9.2?}  {detail}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            elapsed
        );
    }
    let gating = criteria.iter().filter(|c| !c.id.starts_with("EXT")).count();
    println!("acceptance: {} of {gating} gating criteria passed", gating - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
