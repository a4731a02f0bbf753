//! Acceptance gate: runs every criterion and prints one pass/fail line each.

use quadriq::acceptance::run_all;

#[test]
fn acceptance() {
    let results = run_all();
    let mut all_pass = true;
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {}: {} — {}", r.id, r.name, r.detail);
        all_pass &= r.pass;
    }
    assert!(all_pass, "one or more acceptance criteria failed");
}
