//! The invariant suites behind `klab verify`, each run in full.

use kloosterman_lab::harness::{run_suite, Suite};

fn assert_suite(suite: Suite) {
    let report = run_suite(suite, 0).unwrap();
    assert!(!report.checks.is_empty());
    assert!(report.all_passed(), "{report}");
}

#[test]
fn oracle_suite() {
    assert_suite(Suite::Oracle);
}

#[test]
fn identities_suite() {
    assert_suite(Suite::Identities);
}

#[test]
fn lattice_suite() {
    assert_suite(Suite::Lattice);
}

#[test]
fn weil_suite() {
    assert_suite(Suite::Weil);
}

#[test]
fn transfer_suite() {
    assert_suite(Suite::Transfer);
}
