//! Acceptance gate: runs the built-in verification suite once and
//! reports each criterion as its own test, so `cargo test` shows one
//! pass/fail line per criterion.

use std::sync::OnceLock;

use thetakp_core::selftest::{run_all, CriterionResult};

static SUITE: OnceLock<Vec<CriterionResult>> = OnceLock::new();

fn suite() -> &'static [CriterionResult] {
    SUITE.get_or_init(|| {
        let threads = std::thread::available_parallelism()
            .map(|n| n.get().min(8))
            .unwrap_or(1);
        run_all(threads)
    })
}

fn check(idx: usize) {
    let r = &suite()[idx];
    let verdict = if r.passed { "PASS" } else { "FAIL" };
    println!("criterion {}: {verdict} [{}] {}", idx + 1, r.name, r.detail);
    assert!(r.passed, "criterion {} ({}): {}", idx + 1, r.name, r.detail);
}

#[test]
fn criterion_1_formula_agreement() {
    check(0);
}

#[test]
fn criterion_2_worked_example() {
    check(1);
}

#[test]
fn criterion_3_canonical_weights() {
    check(2);
}

#[test]
fn criterion_4_wronskian_cross_check() {
    check(3);
}

#[test]
fn criterion_5_twist_independence() {
    check(4);
}

#[test]
fn criterion_6_riemann_roch() {
    check(5);
}

#[test]
fn criterion_7_genus_one_reference() {
    check(6);
}

#[test]
fn criterion_8_exact_vs_numeric() {
    check(7);
}
