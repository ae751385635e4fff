//! Acceptance suite: runs every verification check at its pinned
//! tolerance and prints one pass/fail line per check.
//!
//! This is the same battery exposed by `rotowave verify --scope all`.

use rotowave_core::suite::{all_passed, run_suite, CheckStatus, Scope};

#[test]
fn acceptance_criteria() {
    let results = run_suite(Scope::All);
    for r in &results {
        println!(
            "{} {:<42} measured {:>13.6e}  tolerance {:>9.3e}",
            match r.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
            },
            r.name,
            r.measured,
            r.tolerance
        );
    }
    assert!(
        all_passed(&results),
        "acceptance failures: {:?}",
        results
            .iter()
            .filter(|r| r.status == CheckStatus::Fail)
            .map(|r| r.name)
            .collect::<Vec<_>>()
    );
}
