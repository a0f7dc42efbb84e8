//! Acceptance suite: one PASS/FAIL line per criterion. Tolerances are pinned
//! here, independent of the CLI defaults and of any config file.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use invsq::cli::verify::{run_suite, Check, Targets};

const PINNED: [(&str, f64); 11] = [
    ("weighted_resolvent", 1e-8),
    ("spiral", 1e-10),
    ("bound_states", 1e-6),
    ("log_constant", 1e-5),
    ("hankel_involution", 1e-6),
    ("hankel_factorization", 1e-4),
    ("resolvent_routes", 1e-3),
    ("similarity", 1e-8),
    ("moeller_chain", 1e-8),
    ("moeller_limit", 0.1),
    ("holomorphy", 1e-4),
];

const CRITERIA: [(&str, &[&str]); 11] = [
    ("weighted resolvent vs quadrature", &["weighted-resolvent"]),
    ("eigenvalue counting", &["counting"]),
    ("toy spiral geometry", &["spiral"]),
    ("bound states vs shooting", &["bound-states"]),
    ("H_0^nu eigenvalue constant", &["log-constant"]),
    ("Hankel involution and factorization", &["hankel-involution", "hankel-factorization"]),
    ("three resolvent representations", &["resolvent-routes"]),
    ("toy / Schrodinger similarity", &["similarity"]),
    ("Moeller operators", &["moeller"]),
    ("phase diagram", &["phase"]),
    ("holomorphy probe", &["holomorphy"]),
];

fn summary(checks: &[Check]) -> String {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let shown: Vec<&Check> = if failed.is_empty() { checks.iter().collect() } else { failed };
    shown
        .iter()
        .map(|c| format!("{}: {:.3e} (target {:.1e})", c.name, c.achieved, c.target))
        .collect::<Vec<_>>()
        .join("; ")
}

fn main() -> ExitCode {
    let targets = Targets::new(PINNED.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>());
    let mut failures = 0;
    for (i, (title, suites)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let mut checks = Vec::new();
        let mut error = None;
        for suite in *suites {
            match run_suite(suite, &targets) {
                Ok(c) => checks.extend(c),
                Err(e) => error = Some(format!("{suite}: {e}")),
            }
        }
        let passed = error.is_none() && checks.iter().all(|c| c.passed);
        if !passed {
            failures += 1;
        }
        let mut detail = error.unwrap_or_else(|| summary(&checks));
        if i == 4 {
            if let Some(c) = checks.first() {
                detail = format!("{detail}; {}", c.note);
            }
        }
        println!(
            "criterion {:>2} {} {title} [{:.1}s] {detail}",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
