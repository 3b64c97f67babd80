//! One line per acceptance criterion. The stress budget can be lowered with
//! `SL3WEB_STRESS_SECS`. Runs without the test harness so the table is never
//! captured.

use std::time::Duration;

use sl3web::verify::{run_all, VerifyConfig};

fn main() {
    let mut cfg = VerifyConfig::default();
    if let Some(secs) = std::env::var("SL3WEB_STRESS_SECS").ok().and_then(|s| s.parse().ok()) {
        cfg.stress_budget = Duration::from_secs(secs);
    }
    let reports = run_all(&cfg).expect("corpus builds");
    for r in &reports {
        println!("{}", r.summary_line());
        for n in &r.notes {
            println!("    note: {n}");
        }
        for f in &r.failures {
            println!("    failure: {f}");
        }
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if !failed.is_empty() {
        eprintln!("criteria failed: {failed:?}");
        std::process::exit(1);
    }
}
