//! Release-gating verification suite. One test per criterion; each prints a
//! single pass/fail line (visible with `--nocapture`) and asserts it.
//!
//! Run with:
//!
//! ```text
//! cargo test -p gssl-bench --test acceptance -- --nocapture
//! ```

use std::sync::OnceLock;

use gssl_bench::acceptance::{self, CriterionResult, TrendContext};

fn check(result: CriterionResult) {
    println!("{result}");
    assert!(result.passed, "{result}");
}

/// The benchmark datasets and their shared factorizations, built once for
/// the four trend criteria.
fn trend_context() -> &'static TrendContext {
    static CTX: OnceLock<TrendContext> = OnceLock::new();
    CTX.get_or_init(|| acceptance::trend_context().expect("benchmark context builds"))
}

#[test]
fn criterion_1_closed_iterative_equivalence() {
    check(acceptance::criterion_closed_iterative_equivalence());
}

#[test]
fn criterion_2_gfhf_absorption_oracle() {
    check(acceptance::criterion_gfhf_absorption_oracle());
}

#[test]
fn criterion_3_invariant_suites() {
    check(acceptance::criterion_invariant_suites());
}

#[test]
fn criterion_4_cluster_trends() {
    check(acceptance::criterion_cluster_trends(trend_context()));
}

#[test]
fn criterion_5_noise_monotonicity() {
    check(acceptance::criterion_noise_monotonicity(trend_context()));
}

#[test]
fn criterion_6_fit_importance() {
    check(acceptance::criterion_fit_importance(trend_context()));
}

#[test]
fn criterion_7_gtam_variance_signature() {
    check(acceptance::criterion_gtam_variance(trend_context()));
}

#[test]
fn criterion_8_byte_identical_reports() {
    check(acceptance::criterion_determinism());
}

#[test]
fn criterion_9_cell_count_arithmetic() {
    check(acceptance::criterion_cell_count_arithmetic());
}
