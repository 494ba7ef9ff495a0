//! Acceptance suite: one test per verification check, each printing a
//! PASS/FAIL line with the worst observed deviation (as a multiple of the
//! check's tolerance) before asserting it.
//!
//! Run with `cargo test --test acceptance` (add `-- --nocapture` to see the
//! lines for passing checks too).

use std::time::Instant;

use trace_metric::verify::{run_check, CheckConfig};

const SEED: u64 = 0x7ace_5eed;

fn run(id: usize) {
    run_within(id, f64::INFINITY);
}

fn run_within(id: usize, runtime_limit: f64) {
    let config = CheckConfig::new(SEED);
    let start = Instant::now();
    let report = run_check(id, &config);
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "{} criterion-{:02} {} observed={:e} bound={:e} elapsed={elapsed:.2}s [{}]",
        if report.passed { "PASS" } else { "FAIL" },
        report.id,
        report.name,
        report.observed,
        report.bound,
        report.detail,
    );
    assert!(
        report.passed,
        "criterion {:02} {} failed: observed {:e} > bound {:e} ({})",
        report.id, report.name, report.observed, report.bound, report.detail
    );
    assert!(
        elapsed < runtime_limit,
        "criterion {:02} {} overran its runtime budget: {elapsed:.2}s ≥ {runtime_limit}s",
        report.id,
        report.name
    );
}

#[test]
fn criterion_01_scalar_curvature_contraction() {
    run_within(1, 10.0);
}

#[test]
fn criterion_02_einstein_property_slices() {
    run_within(2, 10.0);
}

#[test]
fn criterion_03_slp2_sectional_constant() {
    run(3);
}

#[test]
fn criterion_04_sectional_nonpositive_spd() {
    run(4);
}

#[test]
fn criterion_05_geodesic_ode_agreement() {
    run_within(5, 60.0);
}

#[test]
fn criterion_06_riemann_fd_agreement() {
    run(6);
}

#[test]
fn criterion_07_distance_axioms_invariance() {
    run(7);
}

#[test]
fn criterion_08_product_decomposition_isometry() {
    run(8);
}

#[test]
fn criterion_09_geodesic_symmetry_fixed_point() {
    run(9);
}

#[test]
fn criterion_10_isometry_identification() {
    run_within(10, 120.0);
}

#[test]
fn criterion_11_polar_foliation_leaves() {
    run(11);
}

#[test]
fn criterion_12_trace_inequality() {
    run(12);
}
