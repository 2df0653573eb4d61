//! Acceptance suite: runs every verification criterion at full grid size
//! and prints one pass/fail line per criterion with its residual.
//!
//! Run with `cargo test --release --test acceptance -- --nocapture`; the
//! per-criterion runtime budgets are only asserted in optimized builds.

use gl2local::verify::run_all;

// runtime budgets (seconds) per criterion, in suite order
const BUDGETS: [f64; 11] = [
    5.0,   // gauss-sum-law
    2.0,   // new-vector-zeta
    10.0,  // sigma-local-factors
    30.0,  // matrix-coefficients
    5.0,   // branching-dimension
    1.0,   // macdonald-consistency
    60.0,  // xi-translated-integral
    5.0,   // intertwining-eigenvalues
    1.0,   // exponent-optimizer
    120.0, // arch-gauss-scan
    1.0,   // tuple-combinatorics
];

#[test]
fn acceptance_criteria() {
    let results = run_all(false);
    assert_eq!(results.len(), 11);
    let mut all_pass = true;
    let mut total = 0.0;
    for (i, r) in results.iter().enumerate() {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:2}  {:<26} {}  residual {:.3e} (tol {:.1e})  {:6.2}s  {}",
            i + 1,
            r.name,
            status,
            r.max_residual,
            r.tolerance,
            r.seconds,
            r.detail
        );
        all_pass &= r.passed;
        total += r.seconds;
        if !cfg!(debug_assertions) {
            assert!(
                r.seconds < BUDGETS[i],
                "criterion {} overran its budget: {:.2}s > {:.0}s",
                r.name,
                r.seconds,
                BUDGETS[i]
            );
        }
    }
    println!("total: {total:.2}s");
    if !cfg!(debug_assertions) {
        assert!(total < 600.0, "full suite overran 10 minutes: {total:.1}s");
    }
    assert!(all_pass, "at least one acceptance criterion failed");
}
