//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`). Criterion 14 runs the whole
//! battery twice and compares the reports byte for byte.
//!
//! Run with `cargo test -p vnlab-core --test acceptance -- --nocapture`.

use vnlab_core::harness::*;

fn check(r: CriterionResult) {
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

fn config() -> AcceptanceConfig {
    AcceptanceConfig::default()
}

#[test]
fn criterion_01_crossed_factor_iff_ergodic() {
    let r = c1_factor_law(&config());
    assert!(r.seconds < 60.0, "ran {}s, budget 60s", r.seconds);
    check(r);
}

#[test]
fn criterion_02_masa_iff_free() {
    let r = c2_masa_criterion(&config());
    assert!(r.seconds < 60.0, "ran {}s, budget 60s", r.seconds);
    check(r);
}

#[test]
fn criterion_03_trace_identities() {
    let r = c3_trace_identities(&config());
    assert!(r.seconds < 30.0, "ran {}s, budget 30s", r.seconds);
    check(r);
}

#[test]
fn criterion_04_finite_feldman_moore() {
    let r = c4_feldman_moore(&config());
    assert!(r.seconds < 60.0, "ran {}s, budget 60s", r.seconds);
    check(r);
}

#[test]
fn criterion_05_double_commutant() {
    let r = c5_double_commutant(&config());
    assert!(r.seconds < 30.0, "ran {}s, budget 30s", r.seconds);
    check(r);
}

#[test]
fn criterion_06_group_algebra_blocks() {
    let r = c6_group_algebra_blocks(&config());
    assert!(r.seconds < 30.0, "ran {}s, budget 30s", r.seconds);
    check(r);
}

#[test]
fn criterion_07_icc_certificates() {
    let r = c7_icc_certificates(&config());
    assert!(r.seconds < 60.0, "ran {}s, budget 60s", r.seconds);
    check(r);
}

#[test]
fn criterion_08_mekler_group_law() {
    let r = c8_mekler_group_law(&config());
    assert!(r.seconds < 60.0, "ran {}s, budget 60s", r.seconds);
    check(r);
}

#[test]
fn criterion_09_mekler_biconditional() {
    let r = c9_mekler_biconditional(&config());
    assert!(r.seconds < 600.0, "ran {}s, budget 600s", r.seconds);
    check(r);
}

#[test]
fn criterion_10_powers_tset_lattice() {
    let r = c10_powers_lattice(&config());
    assert!(r.seconds < 5.0, "ran {}s, budget 5s", r.seconds);
    check(r);
}

#[test]
fn criterion_11_tset_subgroup_symmetry() {
    let r = c11_tset_subgroup(&config());
    assert!(r.seconds < 5.0, "ran {}s, budget 5s", r.seconds);
    check(r);
}

#[test]
fn criterion_12_e0_fragment() {
    let r = c12_e0_fragment(&config());
    assert!(r.seconds < 5.0, "ran {}s, budget 5s", r.seconds);
    check(r);
}

#[test]
fn criterion_13_char_support_centralizer() {
    let r = c13_char_support(&config());
    assert!(r.seconds < 120.0, "ran {}s, budget 120s", r.seconds);
    check(r);
}

#[test]
fn criterion_14_determinism() {
    let results = run_acceptance(&config());
    for r in &results {
        println!("{}", r.line());
    }
    let det = results.last().expect("determinism entry");
    assert_eq!(det.id, 14);
    assert!(det.passed, "{}", det.line());
}
