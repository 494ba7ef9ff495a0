//! Verification checks wiring the closed forms against the
//! finite-difference oracle and against each other.
//!
//! Twelve numbered checks cover curvature identities, distance axioms, the
//! product splitting, geodesic symmetries, polar foliation, isometry
//! identification, and the closed-form-vs-oracle comparisons. Each check
//! reports the worst observed deviation as a ratio against its stated
//! tolerance, so `observed ≤ 1` means pass; component-level numbers go in
//! the detail string. Checks are grouped into five suites for the CLI.
//!
//! Every check derives its random stream from the base seed and its own id,
//! so results do not depend on execution order or worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::curvature::{einstein_check, riemann, scalar_at, scalar_closed_form, ScalarMode};
use crate::error::Error;
use crate::geodesics::{distance, Geodesic};
use crate::isometry::{geodesic_symmetry_at, identify, CanonicalIsometry};
use crate::manifold::{
    congruence, metric_eval, product_join, product_pushforward, product_split, project_tangent_sl,
    ManifoldPoint,
};
use crate::oracle::{integrate_geodesic, riemann_fd, Chart, OdeState};
use crate::rng::Rng;
use crate::sample;
use crate::symcore::{expm, polar_decompose, SymMatrix};
use crate::tol::{ORACLE_RK4_STEPS, ORACLE_STEP};

/// Settings shared by every check.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub seed: u64,
    /// Restrict sweeps to one matrix order (intersected with each check's
    /// natural range).
    pub n_filter: Option<usize>,
    /// Restrict sweeps to one signature index.
    pub p_filter: Option<usize>,
}

impl CheckConfig {
    pub fn new(seed: u64) -> Self {
        CheckConfig {
            seed,
            n_filter: None,
            p_filter: None,
        }
    }
}

/// Outcome of one check: `observed` is the worst deviation divided by the
/// stated tolerance, so the pass condition is `observed ≤ bound = 1`.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: usize,
    pub name: &'static str,
    pub suite: Suite,
    pub passed: bool,
    pub observed: f64,
    pub bound: f64,
    pub detail: String,
}

/// Suite grouping for the CLI `verify` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Metric,
    Geodesic,
    Curvature,
    Isometry,
    Oracle,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Metric => "metric",
            Suite::Geodesic => "geodesic",
            Suite::Curvature => "curvature",
            Suite::Isometry => "isometry",
            Suite::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "metric" => Some(Suite::Metric),
            "geodesic" => Some(Suite::Geodesic),
            "curvature" => Some(Suite::Curvature),
            "isometry" => Some(Suite::Isometry),
            "oracle" => Some(Suite::Oracle),
            _ => None,
        }
    }

    pub fn all() -> [Suite; 5] {
        [
            Suite::Metric,
            Suite::Geodesic,
            Suite::Curvature,
            Suite::Isometry,
            Suite::Oracle,
        ]
    }
}

/// Identifiers, names and suite membership of the twelve checks.
pub const CHECKS: [(usize, &str, Suite); 12] = [
    (1, "scalar-curvature-contraction", Suite::Curvature),
    (2, "einstein-property-slices", Suite::Curvature),
    (3, "slp2-sectional-constant", Suite::Curvature),
    (4, "sectional-nonpositive-spd", Suite::Curvature),
    (5, "geodesic-ode-agreement", Suite::Oracle),
    (6, "riemann-fd-agreement", Suite::Oracle),
    (7, "distance-axioms-invariance", Suite::Metric),
    (8, "product-decomposition-isometry", Suite::Metric),
    (9, "geodesic-symmetry-fixed-point", Suite::Geodesic),
    (10, "isometry-identification", Suite::Isometry),
    (11, "polar-foliation-leaves", Suite::Geodesic),
    (12, "trace-inequality", Suite::Metric),
];

/// Check ids belonging to a suite, in numeric order.
pub fn suite_check_ids(suite: Suite) -> Vec<usize> {
    CHECKS
        .iter()
        .filter(|(_, _, s)| *s == suite)
        .map(|(id, _, _)| *id)
        .collect()
}

fn check_meta(id: usize) -> (&'static str, Suite) {
    let (_, name, suite) = CHECKS[id - 1];
    (name, suite)
}

/// Worst-deviation accumulator in units of each component's tolerance.
struct Worst {
    ratio: f64,
    parts: Vec<String>,
}

impl Worst {
    fn new() -> Self {
        Worst {
            ratio: 0.0,
            parts: Vec::new(),
        }
    }

    fn record(&mut self, label: &str, value: f64, tolerance: f64) {
        self.ratio = self.ratio.max(value / tolerance);
        self.parts
            .push(format!("{label} {value:e} (tol {tolerance:e})"));
    }

    fn into_report(self, id: usize) -> CheckReport {
        let (name, suite) = check_meta(id);
        CheckReport {
            id,
            name,
            suite,
            passed: self.ratio <= 1.0,
            observed: self.ratio,
            bound: 1.0,
            detail: self.parts.join("; "),
        }
    }
}

fn error_report(id: usize, err: Error) -> CheckReport {
    let (name, suite) = check_meta(id);
    CheckReport {
        id,
        name,
        suite,
        passed: false,
        observed: f64::INFINITY,
        bound: 1.0,
        detail: format!("aborted: {err}"),
    }
}

fn orders(config: &CheckConfig, range: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    range
        .filter(|n| config.n_filter.is_none_or(|f| f == *n))
        .collect()
}

fn signatures(config: &CheckConfig, n: usize) -> Vec<usize> {
    (0..=n)
        .filter(|p| config.p_filter.is_none_or(|f| f == *p))
        .collect()
}

fn spd_point(rng: &mut Rng, n: usize, spread: f64) -> ManifoldPoint {
    ManifoldPoint::spd(sample::spd(rng, n, spread)).expect("sample is SPD")
}

/// Run one check by id (1..=12).
pub fn run_check(id: usize, config: &CheckConfig) -> CheckReport {
    let rng = Rng::new(config.seed).child(id as u64);
    let result = match id {
        1 => check_scalar_contraction(config, rng),
        2 => check_einstein_property(config, rng),
        3 => check_slp2_sectional(config, rng),
        4 => check_sectional_nonpositive(config, rng),
        5 => check_geodesic_ode(config, rng),
        6 => check_riemann_fd(config, rng),
        7 => check_distance_axioms(config, rng),
        8 => check_product_decomposition(config, rng),
        9 => check_geodesic_symmetry(config, rng),
        10 => check_isometry_identification(config, rng),
        11 => check_polar_foliation(config, rng),
        12 => check_trace_inequality(config, rng),
        _ => panic!("check id out of range: {id}"),
    };
    match result {
        Ok(worst) => worst.into_report(id),
        Err(err) => error_report(id, err),
    }
}

/// Run a set of checks on a small worker pool; results come back in the
/// order the ids were given regardless of scheduling.
pub fn run_checks(ids: &[usize], config: &CheckConfig, jobs: usize) -> Vec<CheckReport> {
    let jobs = jobs.max(1).min(ids.len().max(1));
    if jobs == 1 {
        return ids.iter().map(|&id| run_check(id, config)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<CheckReport>>> = ids.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                if k >= ids.len() {
                    break;
                }
                let report = run_check(ids[k], config);
                *slots[k].lock().expect("report slot poisoned") = Some(report);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("report slot poisoned")
                .expect("worker filled slot")
        })
        .collect()
}

// ── check 1 ─────────────────────────────────────────────────────────────

/// Summed Ricci contraction equals `-(n-1)n(n+2)/8` at random points of
/// every component, 20 points each, within 1e-8.
fn check_scalar_contraction(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let mut max_dev = 0.0f64;
    for n in orders(config, 2..=5) {
        let target = scalar_closed_form(n);
        for p in signatures(config, n) {
            for _ in 0..20 {
                let q = ManifoldPoint::classify(sample::glsym(&mut rng, n, p))?;
                let summed = scalar_at(&q, ScalarMode::Summed)?;
                max_dev = max_dev.max((summed - target).abs());
            }
        }
    }
    worst.record("scalar deviation", max_dev, 1e-8);
    Ok(worst)
}

// ── check 2 ─────────────────────────────────────────────────────────────

/// `|Ric(X,Z) + (n/4) g(X,Z)| < 1e-10` over 200 trace-constrained pairs at
/// 10 random points of every unit-determinant slice.
fn check_einstein_property(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let mut max_residual = 0.0f64;
    for n in orders(config, 2..=5) {
        for p in signatures(config, n) {
            for _ in 0..10 {
                let q = ManifoldPoint::classify(sample::slsym(&mut rng, n, p))?;
                let report = einstein_check(&q, 200, rng.next_u64())?;
                max_residual = max_residual.max(report.einstein_residual);
            }
        }
    }
    worst.record("einstein residual", max_residual, 1e-10);
    Ok(worst)
}

// ── check 3 ─────────────────────────────────────────────────────────────

/// Every trace-free plane of `SLP_2` has sectional curvature `-1/2` within
/// 1e-10 (100 random planes).
fn check_slp2_sectional(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let mut max_dev = 0.0f64;
    // The constant-curvature statement is specific to order 2.
    let mut planes = if orders(config, 2..=2).is_empty() {
        100
    } else {
        0
    };
    while planes < 100 {
        let q = ManifoldPoint::classify(sample::sl_spd(&mut rng, 2))?;
        let x = project_tangent_sl(&q, &sample::sym(&mut rng, 2, 1.0));
        let y = project_tangent_sl(&q, &sample::sym(&mut rng, 2, 1.0));
        let k = match crate::curvature::sectional(&q, x.value(), y.value()) {
            Ok(k) => k,
            Err(Error::DegeneratePlane(_)) => continue,
            Err(e) => return Err(e),
        };
        max_dev = max_dev.max((k + 0.5).abs());
        planes += 1;
    }
    worst.record("sectional deviation from -1/2", max_dev, 1e-10);
    Ok(worst)
}

// ── check 4 ─────────────────────────────────────────────────────────────

/// Sectional curvature on the SPD cone never exceeds 1e-12 over 10⁴ random
/// planes.
fn check_sectional_nonpositive(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let ns = orders(config, 2..=5);
    let per_n = 10_000 / ns.len().max(1);
    let mut max_value = f64::NEG_INFINITY;
    for &n in &ns {
        let mut planes = 0;
        while planes < per_n {
            let q = spd_point(&mut rng, n, 0.6);
            let x = sample::sym(&mut rng, n, 1.0);
            let y = sample::sym(&mut rng, n, 1.0);
            let k = match crate::curvature::sectional(&q, &x, &y) {
                Ok(k) => k,
                Err(Error::DegeneratePlane(_)) => continue,
                Err(e) => return Err(e),
            };
            max_value = max_value.max(k);
            planes += 1;
        }
    }
    if ns.is_empty() {
        max_value = 0.0;
    }
    // Positive excursions beyond rounding noise are failures; negative
    // values are clamped so the ratio stays meaningful.
    worst.record("max sectional value", max_value.max(0.0), 1e-12);
    Ok(worst)
}

// ── check 5 ─────────────────────────────────────────────────────────────

/// Closed-form geodesics against the RK4 oracle: sup deviation over a
/// 20-checkpoint grid on [0, 1] below 1e-6 relative, 25 initial conditions
/// per order in {2, 3}.
fn check_geodesic_ode(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let mut sup = 0.0f64;
    for n in orders(config, 2..=3) {
        let chart = Chart::new(n)?;
        for _ in 0..25 {
            // Moderate spreads keep the metric's higher derivatives within
            // the h² truncation budget of the differenced symbols.
            let k = spd_point(&mut rng, n, 0.4);
            let v = sample::sym(&mut rng, n, 0.5);
            let geo = Geodesic::from_initial(k.clone(), &v);
            let scale = k.matrix().frobenius_norm();

            let checkpoints = 20;
            let mut state = OdeState {
                position: chart.encode(k.matrix()),
                velocity: chart.encode(&v),
                t: 0.0,
            };
            for c in 1..=checkpoints {
                let t = c as f64 / checkpoints as f64;
                state = integrate_geodesic(
                    &chart,
                    &state,
                    t,
                    ORACLE_RK4_STEPS / checkpoints,
                    ORACLE_STEP,
                )?;
                let integrated = chart.decode(&state.position)?;
                let closed = geo.point_at(t)?;
                sup = sup.max(integrated.sub(closed.matrix()).frobenius_norm() / scale);
            }
        }
    }
    worst.record("sup geodesic deviation", sup, 1e-6);
    Ok(worst)
}

// ── check 6 ─────────────────────────────────────────────────────────────

/// Closed-form Riemann tensor against the finite-difference tensor on all
/// index quadruples at 10 random SPD points per order in {2, 3}; relative
/// error below 1e-4.
fn check_riemann_fd(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let mut rel = 0.0f64;
    for n in orders(config, 2..=3) {
        let chart = Chart::new(n)?;
        let dim = chart.dim();
        let fields: Vec<SymMatrix> = (0..dim).map(|s| chart.basis_field(s)).collect();
        for _ in 0..10 {
            let q = spd_point(&mut rng, n, 0.5);
            let tensor = riemann_fd(&chart, &chart.encode(q.matrix()), ORACLE_STEP)?;
            let mut max_diff = 0.0f64;
            let mut max_closed = 0.0f64;
            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        for l in 0..dim {
                            let closed =
                                riemann(&q, &fields[i], &fields[j], &fields[k], &fields[l]);
                            let fd = tensor[((i * dim + j) * dim + k) * dim + l];
                            max_diff = max_diff.max((closed - fd).abs());
                            max_closed = max_closed.max(closed.abs());
                        }
                    }
                }
            }
            rel = rel.max(max_diff / max_closed.max(1e-30));
        }
    }
    worst.record("riemann relative error", rel, 1e-4);
    Ok(worst)
}

// ── check 7 ─────────────────────────────────────────────────────────────

/// Distance is a symmetric metric invariant under congruence and inversion:
/// symmetry within 1e-12, triangle slack at least -1e-9 over 1000 triples,
/// invariance within 1e-9 over 100 congruences.
fn check_distance_axioms(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let ns = orders(config, 2..=5);
    let triples_per_n = 1000 / ns.len().max(1);
    let congruences_per_n = 100 / ns.len().max(1);

    let mut sym_dev = 0.0f64;
    let mut triangle_violation = 0.0f64;
    let mut congr_dev = 0.0f64;
    let mut inv_dev = 0.0f64;

    for &n in &ns {
        for _ in 0..triples_per_n {
            let a = spd_point(&mut rng, n, 0.5);
            let b = spd_point(&mut rng, n, 0.5);
            let c = spd_point(&mut rng, n, 0.5);
            let dab = distance(&a, &b)?;
            let dba = distance(&b, &a)?;
            let dbc = distance(&b, &c)?;
            let dac = distance(&a, &c)?;
            sym_dev = sym_dev.max((dab - dba).abs());
            triangle_violation = triangle_violation.max(dac - dab - dbc);
            // Zero iff equal points.
            if dab < 1e-12 {
                let gap = a.matrix().sub(b.matrix()).frobenius_norm();
                sym_dev = sym_dev.max(gap);
            }
        }
        for _ in 0..congruences_per_n {
            let a = spd_point(&mut rng, n, 0.5);
            let b = spd_point(&mut rng, n, 0.5);
            let d = distance(&a, &b)?;
            let c = sample::nonsingular(&mut rng, n, 1.2);
            let ca = ManifoldPoint::spd(congruence(&c, a.matrix()))?;
            let cb = ManifoldPoint::spd(congruence(&c, b.matrix()))?;
            congr_dev = congr_dev.max((distance(&ca, &cb)? - d).abs());
            let ia = a.inverse_point();
            let ib = b.inverse_point();
            inv_dev = inv_dev.max((distance(&ia, &ib)? - d).abs());
        }
    }
    worst.record("symmetry", sym_dev, 1e-12);
    worst.record("triangle violation", triangle_violation.max(0.0), 1e-9);
    worst.record("congruence invariance", congr_dev, 1e-9);
    worst.record("inversion invariance", inv_dev, 1e-9);
    Ok(worst)
}

// ── check 8 ─────────────────────────────────────────────────────────────

/// The splitting of the SPD cone into slice × line is isometric: pulled-back
/// metric within 1e-9 on 500 tangent pairs, coordinate round trips within
/// 1e-12.
fn check_product_decomposition(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let ns = orders(config, 2..=5);
    let pairs_per_n = 500 / ns.len().max(1);

    let mut metric_dev = 0.0f64;
    let mut round_trip = 0.0f64;

    for &n in &ns {
        for _ in 0..pairs_per_n {
            let q = ManifoldPoint::classify(sample::sl_spd(&mut rng, n))?;
            let x = rng.range(-2.0, 2.0);
            let v = project_tangent_sl(&q, &sample::sym(&mut rng, n, 1.0));
            let w = project_tangent_sl(&q, &sample::sym(&mut rng, n, 1.0));
            let xi = rng.range(-1.0, 1.0);
            let eta = rng.range(-1.0, 1.0);

            let joined = product_join(&q, x)?;
            let dv = product_pushforward(&q, x, v.value(), xi);
            let dw = product_pushforward(&q, x, w.value(), eta);
            let lhs = metric_eval(&joined, &dv, &dw);
            let rhs = metric_eval(&q, v.value(), w.value()) + xi * eta;
            metric_dev = metric_dev.max((lhs - rhs).abs());

            // F⁻¹ ∘ F and F ∘ F⁻¹.
            let (q_back, x_back) = product_split(&joined)?;
            round_trip = round_trip.max((x_back - x).abs());
            round_trip = round_trip.max(
                q_back.matrix().sub(q.matrix()).frobenius_norm() / q.matrix().frobenius_norm(),
            );

            let a = spd_point(&mut rng, n, 0.8);
            let (qa, xa) = product_split(&a)?;
            let rejoined = product_join(&qa, xa)?;
            round_trip = round_trip.max(
                rejoined.matrix().sub(a.matrix()).frobenius_norm() / a.matrix().frobenius_norm(),
            );
        }
    }
    worst.record("pullback metric deviation", metric_dev, 1e-9);
    worst.record("round-trip residual", round_trip, 1e-12);
    Ok(worst)
}

// ── check 9 ─────────────────────────────────────────────────────────────

/// The symmetry at `Q` reverses geodesics through `Q` within 1e-8 and fixes
/// only `Q` (fuzzed search within 1e-6).
fn check_geodesic_symmetry(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let ns = orders(config, 2..=5);
    let per_n = 100 / ns.len().max(1);

    let mut reversal_dev = 0.0f64;
    let mut fixed_point_spread = 0.0f64;

    for &n in &ns {
        for _ in 0..per_n {
            let q = spd_point(&mut rng, n, 0.6);
            let symmetry = geodesic_symmetry_at(&q);
            let v = sample::sym(&mut rng, n, 0.7);
            let geo = Geodesic::from_initial(q.clone(), &v);
            for t in [0.4, 0.9] {
                let forward = geo.point_at(t)?;
                let backward = geo.point_at(-t)?;
                let reflected = symmetry.apply(&forward)?;
                let dev = reflected.matrix().sub(backward.matrix()).frobenius_norm()
                    / backward.matrix().frobenius_norm();
                reversal_dev = reversal_dev.max(dev);
            }

            // Fuzzed fixed-point search: anything the symmetry fixes must be
            // Q itself. Includes shrinking perturbations of Q.
            let q_scale = q.matrix().frobenius_norm();
            for delta in [0.0, 1e-2, 1e-4, 1e-7] {
                let candidate = if delta == 0.0 {
                    q.clone()
                } else {
                    let bump = sample::sym(&mut rng, n, delta);
                    match ManifoldPoint::spd(q.matrix().add(&bump)) {
                        Ok(p) => p,
                        Err(_) => continue,
                    }
                };
                let image = symmetry.apply(&candidate)?;
                let moved = image.matrix().sub(candidate.matrix()).frobenius_norm();
                if moved <= 1e-6 * q_scale {
                    let from_q = candidate.matrix().sub(q.matrix()).frobenius_norm() / q_scale;
                    fixed_point_spread = fixed_point_spread.max(from_q);
                }
            }
            for _ in 0..3 {
                let wanderer = spd_point(&mut rng, n, 0.6);
                let image = symmetry.apply(&wanderer)?;
                let moved = image.matrix().sub(wanderer.matrix()).frobenius_norm();
                if moved <= 1e-6 * q_scale {
                    let from_q = wanderer.matrix().sub(q.matrix()).frobenius_norm() / q_scale;
                    fixed_point_spread = fixed_point_spread.max(from_q);
                }
            }
        }
    }
    worst.record("reversal deviation", reversal_dev, 1e-8);
    worst.record("fixed-point spread", fixed_point_spread, 1e-6);
    Ok(worst)
}

// ── check 10 ────────────────────────────────────────────────────────────

/// Identification round trip: 100 random normal forms per order in {3, 4}
/// recover flags exactly and the matrix within 1e-6 up to sign; a corrupted
/// oracle is rejected.
fn check_isometry_identification(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let mut m_dev = 0.0f64;
    let mut flag_failures = 0usize;
    for n in orders(config, 3..=4) {
        for _ in 0..100 {
            let m = sample::nonsingular(&mut rng, n, 1.5);
            let a_flag = rng.index(2) == 1;
            let b_flag = rng.index(2) == 1;
            let generator = CanonicalIsometry::new(m, a_flag, b_flag)?;
            let oracle = |input: &SymMatrix| {
                let point = ManifoldPoint::spd(input.clone()).expect("probe is SPD");
                generator
                    .apply(&point)
                    .expect("generator applies")
                    .matrix()
                    .clone()
            };
            let recovered = identify(oracle, n, rng.next_u64())?;
            if recovered.inv_flag() != generator.inv_flag()
                || recovered.psi_flag() != generator.psi_flag()
            {
                flag_failures += 1;
                continue;
            }
            let dev =
                recovered.m().sub(generator.m()).frobenius_norm() / generator.m().frobenius_norm();
            m_dev = m_dev.max(dev);
        }

        // One output perturbed deep inside the verification probe: the
        // candidate no longer matches pointwise and must be rejected.
        let m = sample::nonsingular(&mut rng, n, 1.5);
        let generator = CanonicalIsometry::new(m, false, false)?;
        let calls = std::cell::Cell::new(0usize);
        let corrupted = |input: &SymMatrix| {
            let point = ManifoldPoint::spd(input.clone()).expect("probe is SPD");
            let mut out = generator
                .apply(&point)
                .expect("generator applies")
                .matrix()
                .clone();
            calls.set(calls.get() + 1);
            if calls.get() == 30 {
                out = out.add(
                    &SymMatrix::identity(out.order())
                        .expect("order ≥ 2")
                        .scale(1e-3),
                );
            }
            out
        };
        match identify(corrupted, n, rng.next_u64()) {
            Err(Error::NotAnIsometry(_)) => {}
            Ok(_) => flag_failures += 1,
            Err(e) => return Err(e),
        }
    }
    worst.record("matrix recovery deviation", m_dev, 1e-6);
    worst.record("flag/rejection failures", flag_failures as f64, 0.5);
    Ok(worst)
}

// ── check 11 ────────────────────────────────────────────────────────────

/// The polar foliation of the general linear group: along leaf-tangent
/// geodesics `t ↦ U·Q₀·exp(t Q₀⁻¹V)` the orthogonal polar factor stays `U`
/// within 1e-9 (100 random leaves).
fn check_polar_foliation(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let ns = orders(config, 2..=4);
    let per_n = 100 / ns.len().max(1);
    let mut factor_dev = 0.0f64;
    for &n in &ns {
        for _ in 0..per_n {
            let u = sample::orthogonal(&mut rng, n);
            let q0 = spd_point(&mut rng, n, 0.6);
            let v = sample::sym(&mut rng, n, 0.7);
            let direction = q0.inverse_matrix().mul(&v);
            for t in [0.3, 0.8, -0.6] {
                let leaf_point = u
                    .mul(&q0.matrix().to_general())
                    .mul(&expm(&direction.scale(t)));
                let (u_polar, _) = polar_decompose(&leaf_point)?;
                let dev = u_polar.sub(&u).frobenius_norm() / u.frobenius_norm();
                factor_dev = factor_dev.max(dev);
            }
        }
    }
    worst.record("polar factor drift", factor_dev, 1e-9);
    Ok(worst)
}

// ── check 12 ────────────────────────────────────────────────────────────

/// `tr(Y)² ≤ n·tr(Y²)` on 10⁴ random symmetric matrices, with equality
/// (within 1e-9) only at multiples of the identity (within 1e-6).
fn check_trace_inequality(config: &CheckConfig, mut rng: Rng) -> Result<Worst, Error> {
    let mut worst = Worst::new();
    let ns = orders(config, 2..=5);
    let per_n = 10_000 / ns.len().max(1);

    let mut violation = 0.0f64;
    let mut equality_spread = 0.0f64;

    fn inspect(y: &SymMatrix, violation: &mut f64, equality_spread: &mut f64) {
        let n = y.order() as f64;
        let lhs = y.trace() * y.trace();
        let rhs = n * y.mul(y).trace();
        let scale = rhs.abs().max(1.0);
        *violation = violation.max((lhs - rhs) / scale);
        if (lhs - rhs).abs() <= 1e-9 * scale {
            // Equality case: Y must be a multiple of the identity.
            let multiple = SymMatrix::identity(y.order())
                .expect("order ≥ 2")
                .scale(y.trace() / n);
            *equality_spread = equality_spread.max(y.sub(&multiple).frobenius_norm());
        }
    }

    for &n in &ns {
        for _ in 0..per_n {
            inspect(
                &sample::sym(&mut rng, n, 2.0),
                &mut violation,
                &mut equality_spread,
            );
        }
        // Constructed equality and near-equality cases.
        let id = SymMatrix::identity(n)?;
        inspect(&id.scale(2.5), &mut violation, &mut equality_spread);
        inspect(&id.scale(-0.75), &mut violation, &mut equality_spread);
        inspect(
            &id.scale(1.5).add(&sample::sym(&mut rng, n, 1e-8)),
            &mut violation,
            &mut equality_spread,
        );
        // A clear non-multiple must not register as equality.
        let spread = id.scale(1.5).add(&sample::sym(&mut rng, n, 0.1));
        let n_f = n as f64;
        let lhs = spread.trace() * spread.trace();
        let rhs = n_f * spread.mul(&spread).trace();
        if (lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0) {
            equality_spread = equality_spread.max(1.0);
        }
    }
    worst.record("inequality violation", violation.max(0.0), 1e-9);
    worst.record(
        "equality away from identity multiples",
        equality_spread,
        1e-6,
    );
    Ok(worst)
}
