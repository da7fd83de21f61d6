//! Acceptance suite: runs every claim in the verification module at its
//! stated tolerance and prints one pass/fail line per claim.

use ultimatum::verify::{run_all, VerifySettings};

#[test]
fn all_claims_hold() {
    let settings = VerifySettings::default();
    let results = run_all(&settings);
    assert_eq!(results.len(), 12);

    let mut failures = Vec::new();
    for result in &results {
        println!(
            "[{:2}/12] {}  {} — {}",
            result.id,
            if result.passed { "ok  " } else { "FAIL" },
            result.name,
            result.details
        );
        if !result.passed {
            failures.push(result.id);
        }
    }
    assert!(failures.is_empty(), "claims failed: {failures:?}");
}
