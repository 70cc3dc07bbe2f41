//! Runs the eleven acceptance criteria at the full profile and prints one
//! line per criterion. Exits nonzero if any criterion fails or overruns its
//! time limit.

use std::process::ExitCode;
use std::time::Duration;

use workbench::suite::{run_criterion, Profile, Status, SuiteConfig, CRITERIA};

/// Wall-clock limit per criterion, in criterion order.
const LIMITS: [Duration; 11] = [
    Duration::from_secs(1),
    Duration::from_secs(1),
    Duration::from_secs(30),
    Duration::from_secs(120),
    Duration::from_secs(600),
    Duration::from_secs(600),
    Duration::from_secs(60),
    Duration::from_secs(60),
    Duration::from_secs(5),
    Duration::from_secs(120),
    Duration::from_secs(60),
];

/// Printed under a failing criterion whose failure is understood.
fn known_analysis(name: &str) -> Option<&'static str> {
    match name {
        "family-invariants" => Some(
            "the expected length 19n+8 does not fit the construction: the suffix \
             b y0 (x1_i z_i a_i zp_i b_i zpp_i x2_i y_i)_i a has 8n+3 letters, so \
             |w| = 6n + (2n+2) + 2n + (2n+3) + (8n+3) = 20n+8; alphabet 12n+5, \
             square-freeness, unique long factors and the projection all hold",
        ),
        _ => None,
    }
}

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let cfg = SuiteConfig {
        profile: Profile::Full,
        ..Default::default()
    };
    let mut failed = 0;
    let mut ran = 0;
    for (i, name) in CRITERIA.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let r = run_criterion(i + 1, &cfg);
        let limit = LIMITS[i];
        let in_time = r.elapsed_ms <= limit.as_millis();
        let ok = r.status == Status::Pass && in_time;
        if !ok {
            failed += 1;
        }
        let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!(
            "criterion {:>2} {:<32} {:<4} {:>7} ms (limit {} ms) {}",
            i + 1,
            r.name,
            if ok { "PASS" } else { "FAIL" },
            r.elapsed_ms,
            limit.as_millis(),
            counts.join(" "),
        );
        if !in_time {
            println!("    over the time limit");
        }
        if let Some(w) = &r.witness {
            println!("    {}: {w}", r.status);
        }
        if !ok {
            if let Some(note) = known_analysis(name) {
                println!("    analysis: {note}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
