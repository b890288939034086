//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line. `cargo test --test acceptance` runs everything.

use split_circle::oracle::OracleConfig;
use split_circle::selfcheck;

fn assert_criterion(r: &selfcheck::CriterionResult) {
    println!(
        "[{}] {:40} {}",
        if r.pass { "PASS" } else { "FAIL" },
        r.name,
        r.detail
    );
    assert!(r.pass, "{} failed: {}", r.name, r.detail);
}

#[test]
fn criterion_1_characterization_and_6_model_soundness() {
    let cfg = OracleConfig::default();
    let (c1, c6) = selfcheck::characterization_and_models(&cfg);
    assert_criterion(&c1);
    assert_criterion(&c6);
}

#[test]
fn criterion_2_obstruction_soundness() {
    assert_criterion(&selfcheck::obstruction_soundness(&OracleConfig::default()));
}

#[test]
fn criterion_3_minimality() {
    assert_criterion(&selfcheck::minimality(&OracleConfig::default()));
}

#[test]
fn criterion_4_two_nested_equivalence() {
    assert_criterion(&selfcheck::two_nested_equivalence(&OracleConfig::default()));
}

#[test]
fn criterion_5_nested_engine() {
    assert_criterion(&selfcheck::nested_engine(&OracleConfig::default()));
}

#[test]
fn criterion_7_local_complement_invariance() {
    assert_criterion(&selfcheck::local_complement_invariance(&OracleConfig::default()));
}

#[test]
fn criterion_8_decomposition_consistency() {
    assert_criterion(&selfcheck::decomposition_consistency(&OracleConfig::default()));
}
