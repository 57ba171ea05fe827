//! The acceptance suite: one test per verified claim, each printing its
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; the `verify` CLI subcommand prints the same checks.

use d6spin::verify;

fn run(result: verify::CheckResult) {
    println!("{result}");
    assert!(result.passed, "{result}");
}

#[test]
fn criterion_01_enumeration_cross_oracle() {
    run(verify::check_enumeration());
}

#[test]
fn criterion_02_crystal_axioms_exhaustive() {
    run(verify::check_crystal_axioms());
}

#[test]
fn criterion_03_string_length_oracle() {
    run(verify::check_string_lengths());
}

#[test]
fn criterion_04_condition_uniqueness() {
    run(verify::check_condition_uniqueness(0));
}

#[test]
fn criterion_05_minimal_elements() {
    run(verify::check_minimal_elements());
}

#[test]
fn criterion_06_coherent_family() {
    run(verify::check_coherent_family());
}

#[test]
fn criterion_07_isomorphism() {
    run(verify::check_isomorphism(0));
}

#[test]
fn criterion_08_tropical_axioms() {
    run(verify::check_tropical_axioms(0));
}

#[test]
fn criterion_09_node0_cross_oracle() {
    run(verify::check_f0_cross_oracle(0));
}

#[test]
fn criterion_10_expression_engine() {
    run(verify::check_expression_engine(0));
}
