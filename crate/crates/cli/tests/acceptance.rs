//! One test per acceptance criterion; each prints a PASS/FAIL line.

use std::process::Command;

use twoloc_cli::verify::{criterion, CRITERIA};

fn check(id: u8) {
    let c = criterion(id);
    println!("AC{:<2} {} {}", c.id, if c.passed { "PASS" } else { "FAIL" }, c.name);
    assert!(c.passed, "AC{id} failed: {:#}", c.detail);
}

#[test]
fn ac01_localization_matches_oracle() {
    check(1);
}

#[test]
fn ac02_quotient_ring_axioms() {
    check(2);
}

#[test]
fn ac03_maximal_right_quotients() {
    check(3);
}

#[test]
fn ac04_extension_isomorphisms() {
    check(4);
}

#[test]
fn ac05_functoriality() {
    check(5);
}

#[test]
fn ac06_exact_sequence() {
    check(6);
}

#[test]
fn ac07_bass_sequence() {
    check(7);
}

#[test]
fn ac08_filter_machinery() {
    check(8);
}

#[test]
fn ac09_transport_separates_twists() {
    check(9);
}

#[test]
fn ac10_verify_all_is_byte_identical() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_twoloc"))
            .args(["verify-all", "--format", "structured"])
            .output()
            .expect("twoloc runs")
    };
    let (a, b) = (run(), run());
    let passed = a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    println!("AC10 {} {}", if passed { "PASS" } else { "FAIL" }, CRITERIA[9].1);
    assert!(a.status.success(), "verify-all exited with {:?}", a.status);
    assert_eq!(a.stdout, b.stdout);
    assert!(passed);
}
