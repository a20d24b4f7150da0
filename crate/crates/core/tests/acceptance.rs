//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use reductive_core::chevalley::{all_subsets, verify_adams_he, verify_chevalley2, verify_chevalley3, Adjoint, E6Elements};
use reductive_core::grouptool::{cabanes_sweep, SweepOutcome};
use reductive_core::harness::{run, verify_howlett, verify_table1, RunConfig, Verdict, VerificationReport};
use reductive_core::torus::two_adic_checks;

const RELATIVE_WEYL_ORDERS: [usize; 12] = [648, 6, 576, 48, 12, 12, 24, 2, 576, 48, 12, 36];

struct Outcome {
    ok: bool,
    detail: String,
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Result<Outcome, String>) -> Outcome {
    let start = Instant::now();
    let mut out = f().unwrap_or_else(|e| Outcome { ok: false, detail: format!("error: {e}") });
    let elapsed = start.elapsed();
    out.detail = format!("{} ({:.2}s)", out.detail, elapsed.as_secs_f64());
    if let Some(limit) = limit {
        if elapsed > limit {
            out.ok = false;
            out.detail = format!("{}; over the {}s limit", out.detail, limit.as_secs());
        }
    }
    out
}

fn run_ids(ids: &[&str], qs: &[u64]) -> Result<Vec<VerificationReport>, String> {
    let ids: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
    let cfg = RunConfig { q_list: qs.iter().map(|&q| BigInt::from(q)).collect(), cache_dir: None };
    run(&ids, &cfg).map(|o| o.reports).map_err(|e| e.to_string())
}

fn failures(reports: &[VerificationReport], allowed: &[Verdict]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| r.verdict != Verdict::Pass && !allowed.contains(&r.verdict))
        .map(|r| {
            let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{} {} [{}]", r.verdict, r.id, inputs.join(","))
        })
        .collect()
}

fn chevalley2() -> Result<Outcome, String> {
    let el = E6Elements::build().map_err(|e| e.to_string())?;
    let r = verify_chevalley2(&el).map_err(|e| e.to_string())?;
    let ok = r.passed()
        && r.order == 192
        && r.wreath_recognized
        && r.h_intersection_order == 8
        && r.h_intersection_elementary_abelian
        && r.fixes_alpha4_vectors;
    Ok(Outcome {
        ok,
        detail: format!(
            "|V| = {}, wreath C4 wr C3 = {}, |V∩H| = {}, e_(±a4) fixed = {}",
            r.order, r.wreath_recognized, r.h_intersection_order, r.fixes_alpha4_vectors
        ),
    })
}

fn adams_he() -> Result<Outcome, String> {
    let mut total = 0;
    let mut bad = Vec::new();
    for (label, rank) in [("E6", 6), ("A3", 3), ("D4", 4)] {
        let adj = Adjoint::of_type(label).map_err(|e| e.to_string())?;
        for s in all_subsets(rank) {
            total += 1;
            let c = verify_adams_he(&adj, &s).map_err(|e| e.to_string())?;
            if !c.passed() {
                bad.push(format!("{label}{s:?}"));
            }
        }
    }
    Ok(Outcome { ok: bad.is_empty() && total == 64 + 8 + 16, detail: format!("{total} subsets, failures {bad:?}") })
}

fn cabanes() -> Result<Outcome, String> {
    let pass: &[(&str, i8, &[u64])] = &[
        ("E6", 1, &[5, 13, 17, 29]),
        ("E6", -1, &[3, 7, 11]),
        ("A3", 1, &[5, 13]),
        ("D5", 1, &[5, 13]),
        ("E7", 1, &[17, 41]),
    ];
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    let mut sweep = |label: &str, eps: i8, q: u64| -> Result<_, String> {
        let start = Instant::now();
        let r = cabanes_sweep(label, eps, &BigInt::from(q)).map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());
        count += 1;
        Ok(r)
    };
    for &(label, eps, qs) in pass {
        for &q in qs {
            let r = sweep(label, eps, q)?;
            if r.outcome != SweepOutcome::Pass {
                bad.push(format!("{label} eps={eps} q={q}: {}", r.outcome.as_str()));
            }
        }
    }
    let r = sweep("E7", 1, 5)?;
    let w0_quadratic = r.quadratic_classes().iter().any(|c| c.subset.len() == 7);
    if r.outcome != SweepOutcome::ExpectedFail || !w0_quadratic {
        bad.push(format!("E7 q=5: {} (w0 quadratic: {w0_quadratic})", r.outcome.as_str()));
    }
    let ok = bad.is_empty() && slowest < Duration::from_secs(30);
    Ok(Outcome {
        ok,
        detail: format!("{count} sweeps, slowest {:.2}s, problems {bad:?}", slowest.as_secs_f64()),
    })
}

fn table1() -> Result<Outcome, String> {
    let mut live = 0;
    let mut bad = Vec::new();
    for q in [13u64, 7] {
        for (row, check) in verify_table1(&BigInt::from(q)).map_err(|e| e.to_string())? {
            let Some(c) = check else { continue };
            live += 1;
            let expected = RELATIVE_WEYL_ORDERS[row.number as usize - 1];
            if !c.passed() || c.computed.relative_weyl_order != expected {
                bad.push(format!("q={q} row {}: {:?}", row.number, c.mismatches));
            }
        }
    }
    Ok(Outcome { ok: bad.is_empty() && live > 0, detail: format!("{live} live rows at q = 13, 7; mismatches {bad:?}") })
}

fn torus() -> Result<Outcome, String> {
    let reports = run_ids(&["torus"], &[5, 7, 13, 17])?;
    let wanted: Vec<&VerificationReport> =
        reports.iter().filter(|r| r.id == "torus-v" || r.id == "torus-3D4" || r.id == "torus-three-way").collect();
    let count = |id: &str| wanted.iter().filter(|r| r.id == id).count();
    let fails: Vec<String> = wanted.iter().filter(|r| r.verdict != Verdict::Pass).map(|r| r.id.clone()).collect();
    let complete = count("torus-v") == 1 && count("torus-3D4") == 2 && count("torus-three-way") == 1;
    Ok(Outcome {
        ok: fails.is_empty() && complete,
        detail: format!("v, 3D4 (e = 1, 2), 100 random three-way triples; failures {fails:?}"),
    })
}

fn arithmetic() -> Result<Outcome, String> {
    let r = two_adic_checks(3..1000, 60);
    Ok(Outcome {
        ok: r.passed(),
        detail: format!(
            "{} cyclotomic and {} A2 checks; failures {:?} {:?}",
            r.cyclotomic_checks, r.a2_checks, r.cyclotomic_failures, r.a2_failures
        ),
    })
}

fn grouptool() -> Result<Outcome, String> {
    let reports = run_ids(&["grouptool"], &[])?;
    let fails = failures(&reports, &[]);
    Ok(Outcome { ok: fails.is_empty(), detail: format!("{} reports; failures {fails:?}", reports.len()) })
}

fn construction() -> Result<Outcome, String> {
    let mut reports = run_ids(&["construction"], &[])?;
    let el = E6Elements::build().map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for (d, expected) in [(1u32, 6usize), (2, 2)] {
        let r = verify_chevalley3(&el, d).map_err(|e| e.to_string())?;
        if !r.passed(expected) || (d == 2) != r.notation_flag.is_some() {
            bad.push(format!("chevalley3 d={d}"));
        }
    }
    reports.push(verify_howlett().map_err(|e| e.to_string())?);
    let primes = reports.iter().filter(|r| r.id.starts_with("construction-p")).count();
    let mut fails = failures(&reports, &[]);
    fails.extend(bad);
    Ok(Outcome {
        ok: fails.is_empty() && primes == 24,
        detail: format!("{primes} odd primes below 100, chevalley3 d = 1, 2, howlett; failures {fails:?}"),
    })
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [(&str, Option<Duration>, fn() -> Result<Outcome, String>); 8] = [
        ("1 chevalley2", secs(5), chevalley2),
        ("2 adams-he", secs(10), adams_he),
        ("3 cabanes", None, cabanes),
        ("4 table1", None, table1),
        ("5 torus", None, torus),
        ("6 arithmetic", secs(5), arithmetic),
        ("7 grouptool", None, grouptool),
        ("8 construction", None, construction),
    ];
    let mut all = true;
    for (name, limit, f) in criteria {
        let out = timed(limit, f);
        all &= out.ok;
        println!("{} criterion {name}: {}", if out.ok { "PASS" } else { "FAIL" }, out.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
