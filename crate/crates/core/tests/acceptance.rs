//! Runs every acceptance criterion through the verification suites and prints
//! one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use linsofic_core::verify::{registry, run_verify, RunReport, VerifyConfig};

const SEED: u64 = 20240917;

struct Criterion {
    number: u32,
    name: &'static str,
    suites: &'static [&'static str],
    budget: Option<Duration>,
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, name: "iota bounds", suites: &["prop-iota-bounds"], budget: Some(Duration::from_secs(60)) },
    Criterion {
        number: 2,
        name: "tensor blocks",
        suites: &["thm-tensor-blocks"],
        budget: Some(Duration::from_secs(30)),
    },
    Criterion { number: 3, name: "inseparable companion", suites: &["thm-inseparable"], budget: None },
    Criterion {
        number: 4,
        name: "iota of tensor products",
        suites: &["lem-iota-tensor", "lem-scalar-inequality"],
        budget: None,
    },
    Criterion { number: 5, name: "sum and tensor lengths", suites: &["lem-sum-tensor-lengths"], budget: None },
    Criterion {
        number: 6,
        name: "amplification",
        suites: &["thm-amplification"],
        budget: Some(Duration::from_secs(300)),
    },
    Criterion { number: 7, name: "conversions", suites: &["prop-conversions"], budget: None },
    Criterion { number: 8, name: "restriction of scalars", suites: &["prop-restrict-scalars"], budget: None },
    Criterion { number: 9, name: "specialization", suites: &["prop-specialize"], budget: None },
    Criterion { number: 10, name: "permutation rank bound", suites: &["lem-perm-rank"], budget: None },
    Criterion {
        number: 11,
        name: "free product end to end",
        suites: &["thm-free-product"],
        budget: Some(Duration::from_secs(300)),
    },
    Criterion { number: 12, name: "repair operations", suites: &["lem-repair"], budget: None },
];

fn run(suites: &[&str], count: Option<usize>) -> Result<RunReport, String> {
    let config = VerifyConfig {
        suites: suites.iter().map(|s| s.to_string()).collect(),
        seed: Some(SEED),
        count,
        ..Default::default()
    };
    run_verify(&config).map_err(|e| e.to_string())
}

fn criterion(c: &Criterion) -> (bool, String) {
    let start = Instant::now();
    let report = match run(c.suites, None) {
        Ok(r) => r,
        Err(e) => return (false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    let instances: usize = report.suites.iter().map(|s| s.instances).sum();
    let mut detail =
        format!("{instances} instances, {} violations, {:.1}s", report.violation_count(), elapsed.as_secs_f64());
    let mut pass = report.pass();
    if let Some(budget) = c.budget {
        if elapsed > budget {
            pass = false;
            detail.push_str(&format!(", over the {}s budget", budget.as_secs()));
        }
    }
    for s in &report.suites {
        for v in s.violations.iter().take(3) {
            detail.push_str(&format!("\n    {} {}: {}", s.id, v.instance, v.detail));
        }
    }
    (pass, detail)
}

/// Every suite twice with the same seed; reports must agree byte for byte
/// once timing is dropped.
fn determinism() -> (bool, String) {
    let mut differing = Vec::new();
    let mut checked = 0;
    for suite in registry() {
        let count = if suite.randomized { Some(25) } else { None };
        let id = [suite.id];
        let (a, b) = match (run(&id, count), run(&id, count)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return (false, format!("{}: {e}", suite.id)),
        };
        let (a, b) = (a.to_json(false).to_string(), b.to_json(false).to_string());
        if a != b {
            differing.push(suite.id);
        }
        checked += 1;
    }
    if differing.is_empty() {
        (true, format!("{checked} suites repeat exactly"))
    } else {
        (false, format!("reports differ for {}", differing.join(", ")))
    }
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut line = |number: u32, name: &str, (pass, detail): (bool, String)| {
        println!("{} criterion {number:>2} ({name}): {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            failed += 1;
        }
    };
    for c in CRITERIA {
        line(c.number, c.name, criterion(c));
    }
    line(13, "determinism", determinism());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
