//! Acceptance criteria 1 to 10 under the default configuration.
//!
//! Prints one `criterion N: PASS|FAIL name` line per criterion and fails if
//! any criterion fails. The target runs without the libtest harness so the
//! verdict lines are always shown. Criterion 10 re-runs criteria 1 to 9 and
//! compares the serialized verdicts byte for byte.

use gl3_geom_cli::config::Config;
use gl3_geom_cli::suite::run_suite;

fn main() {
    let config = Config::default();
    let run = run_suite(&config, &[], &mut |_| {});
    assert_eq!(run.results.len(), 10);
    for r in &run.results {
        let secs = run.timings.iter().find(|(id, _)| *id == r.id).map_or(0.0, |t| t.1);
        println!("criterion {}: {} {} ({secs:.2} s)", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name);
    }
    let failed: Vec<String> = run
        .results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("criterion {}: measured {} against {}", r.id, r.measured, r.tolerance))
        .collect();
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}
