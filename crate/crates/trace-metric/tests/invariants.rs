//! Seeded random sweeps over the structural invariants that tie the modules
//! together: solver accuracy at scale, metric invariance under the isometry
//! generators, geodesic conservation laws, curvature tensor symmetries, and
//! the group structure of the canonical isometry forms.

use trace_metric::curvature::{ricci, riemann};
use trace_metric::geodesics::{distance, speed_squared_at, Geodesic};
use trace_metric::isometry::{
    apply_psi, canonicalize_with_order, CanonicalIsometry, IsometryLetter, IsometryWord,
};
use trace_metric::manifold::{congruence, metric_eval, product_split, ManifoldPoint};
use trace_metric::oracle::Chart;
use trace_metric::rng::Rng;
use trace_metric::sample;
use trace_metric::symcore::{
    eig_sym, expm, log_principal, polar_decompose, signature_of, GeneralMatrix, SymMatrix,
};

fn classify(m: SymMatrix) -> ManifoldPoint {
    ManifoldPoint::classify(m).expect("sample classifies")
}

#[test]
fn eigensolver_accuracy_sweep() {
    // 1000 random symmetric matrices with entries in [-2, 2], orders 2..6:
    // reconstruction within 1e-10 relative, orthogonality within 1e-12.
    let mut rng = Rng::new(1001);
    for case in 0..1000 {
        let n = 2 + (case % 5);
        let a = sample::sym(&mut rng, n, 2.0);
        let e = eig_sym(&a).expect("decomposes");
        let recon = e.assemble(&e.values);
        let scale = a.frobenius_norm().max(1e-300);
        assert!(
            recon.sub(&a).frobenius_norm() < 1e-10 * scale,
            "reconstruction failed at case {case}"
        );
        let q = &e.vectors;
        let ortho = q
            .transpose()
            .mul(q)
            .sub(&GeneralMatrix::identity(n).unwrap());
        assert!(
            ortho.frobenius_norm() < 1e-12,
            "orthogonality failed at case {case}"
        );
    }
}

#[test]
fn exp_log_round_trip_on_spd() {
    let mut rng = Rng::new(1002);
    for _ in 0..200 {
        let n = 2 + rng.index(4);
        let a = sample::spd(&mut rng, n, 0.8);
        let log = log_principal(&a.to_general()).expect("SPD has a principal log");
        let back = expm(&log);
        let rel = back.sub(&a.to_general()).frobenius_norm() / a.frobenius_norm();
        assert!(rel < 1e-9, "round trip error {rel}");
    }
}

#[test]
fn polar_decomposition_is_bit_deterministic() {
    let mut rng = Rng::new(1003);
    for _ in 0..20 {
        let a = sample::nonsingular(&mut rng, 4, 1.5);
        let (u1, q1) = polar_decompose(&a).unwrap();
        let (u2, q2) = polar_decompose(&a).unwrap();
        assert_eq!(u1, u2, "orthogonal factors differ between runs");
        assert_eq!(q1, q2, "SPD factors differ between runs");
    }
}

#[test]
fn signature_is_congruence_invariant() {
    // Sylvester's law over random congruences.
    let mut rng = Rng::new(1004);
    for _ in 0..200 {
        let n = 2 + rng.index(4);
        let p = rng.index(n + 1);
        let a = sample::glsym(&mut rng, n, p);
        let c = sample::nonsingular(&mut rng, n, 1.5);
        let transformed = congruence(&c, &a);
        let sig = signature_of(&transformed).expect("non-singular by construction");
        assert_eq!(sig.positive, p, "signature moved under congruence");
    }
}

#[test]
fn metric_is_congruence_and_inversion_invariant() {
    // 1000+ random (A, V, W, C) across every order and signature:
    // g is preserved by congruences and by the pushforward of inversion.
    let mut rng = Rng::new(1005);
    for n in 2..=5usize {
        for p in 0..=n {
            for _ in 0..55 {
                let a = classify(sample::glsym(&mut rng, n, p));
                let v = sample::sym(&mut rng, n, 1.0);
                let w = sample::sym(&mut rng, n, 1.0);
                let base = metric_eval(&a, &v, &w);
                let denom = base.abs().max(1.0);

                let c = sample::nonsingular(&mut rng, n, 1.2);
                let moved = classify(congruence(&c, a.matrix()));
                let lhs = metric_eval(&moved, &congruence(&c, &v), &congruence(&c, &w));
                assert!(
                    ((lhs - base) / denom).abs() < 1e-10,
                    "congruence n={n} p={p}"
                );

                let inv = a.inverse_point();
                let push = |t: &SymMatrix| {
                    a.inverse_matrix()
                        .to_general()
                        .mul(&t.to_general())
                        .mul(&a.inverse_matrix().to_general())
                        .symmetrized()
                        .neg()
                };
                let lhs = metric_eval(&inv, &push(&v), &push(&w));
                assert!(
                    ((lhs - base) / denom).abs() < 1e-10,
                    "inversion n={n} p={p}"
                );
            }
        }
    }
}

#[test]
fn geodesics_preserve_signature_and_slice_determinant() {
    let mut rng = Rng::new(1006);
    for case in 0..500 {
        let n = 2 + (case % 4);
        let p = rng.index(n + 1);
        let k = classify(sample::glsym(&mut rng, n, p));
        let v = sample::sym(&mut rng, n, 0.25);
        let geo = Geodesic::from_initial(k.clone(), &v);
        for t in [-2.0, -1.0, 0.5, 1.0, 3.0] {
            let point = geo.point_at(t).expect("geodesic stays non-singular");
            assert_eq!(
                point.signature_p(),
                p,
                "signature moved at t={t}, case {case}"
            );
        }

        // Trace-constrained direction: determinant is conserved.
        let projected = trace_metric::manifold::project_tangent_sl(&k, &v);
        let sl_geo = Geodesic::from_initial(k.clone(), projected.value());
        assert!(sl_geo.restricted_to_sl());
        for t in [-2.0, -1.0, 0.5, 1.0, 3.0] {
            let point = sl_geo
                .point_at(t)
                .expect("slice geodesic stays non-singular");
            let rel = ((point.det() - k.det()) / k.det()).abs();
            assert!(rel < 1e-9, "determinant drifted by {rel} at t={t}");
        }
    }
}

#[test]
fn geodesic_speed_is_constant() {
    let mut rng = Rng::new(1007);
    for _ in 0..100 {
        let n = 2 + rng.index(3);
        let p = rng.index(n + 1);
        let k = classify(sample::glsym(&mut rng, n, p));
        let v = sample::sym(&mut rng, n, 0.4);
        let geo = Geodesic::from_initial(k, &v);
        let s0 = speed_squared_at(&geo, 0.0).unwrap();
        for t in [0.5, 1.0, 2.0] {
            let st = speed_squared_at(&geo, t).unwrap();
            assert!(
                (st - s0).abs() < 1e-8 * s0.abs().max(1.0),
                "speed drifted at t={t}"
            );
        }
    }
}

#[test]
fn riemann_tensor_symmetries() {
    // Antisymmetry in both pairs, pair swap, and the first Bianchi identity,
    // each within 1e-12 absolute on unit-normalized tangents.
    let mut rng = Rng::new(1008);
    for case in 0..1000 {
        let n = 2 + (case % 3);
        let p = rng.index(n + 1);
        let k = classify(sample::glsym(&mut rng, n, p));
        let unit = |m: SymMatrix| {
            let norm = m.frobenius_norm();
            m.scale(1.0 / norm.max(1e-12))
        };
        let x = unit(sample::sym(&mut rng, n, 1.0));
        let y = unit(sample::sym(&mut rng, n, 1.0));
        let z = unit(sample::sym(&mut rng, n, 1.0));
        let w = unit(sample::sym(&mut rng, n, 1.0));

        let base = riemann(&k, &x, &y, &z, &w);
        assert!((riemann(&k, &y, &x, &z, &w) + base).abs() < 1e-12);
        assert!((riemann(&k, &x, &y, &w, &z) + base).abs() < 1e-12);
        assert!((riemann(&k, &z, &w, &x, &y) - base).abs() < 1e-12);
        let bianchi = base + riemann(&k, &y, &z, &x, &w) + riemann(&k, &z, &x, &y, &w);
        assert!(bianchi.abs() < 1e-12, "Bianchi residual {bianchi}");
    }
}

#[test]
fn riemann_is_congruence_invariant() {
    let mut rng = Rng::new(1009);
    for _ in 0..200 {
        let n = 2 + rng.index(3);
        let p = rng.index(n + 1);
        let k = classify(sample::glsym(&mut rng, n, p));
        let x = sample::sym(&mut rng, n, 1.0);
        let y = sample::sym(&mut rng, n, 1.0);
        let z = sample::sym(&mut rng, n, 1.0);
        let w = sample::sym(&mut rng, n, 1.0);
        let c = sample::nonsingular(&mut rng, n, 1.2);

        let base = riemann(&k, &x, &y, &z, &w);
        let moved = classify(congruence(&c, k.matrix()));
        let lhs = riemann(
            &moved,
            &congruence(&c, &x),
            &congruence(&c, &y),
            &congruence(&c, &z),
            &congruence(&c, &w),
        );
        assert!((lhs - base).abs() < 1e-10 * base.abs().max(1.0));
    }
}

#[test]
fn ricci_is_negative_semidefinite_on_the_spd_cone() {
    let mut rng = Rng::new(1017);
    for _ in 0..500 {
        let n = 2 + rng.index(4);
        let q = classify(sample::spd(&mut rng, n, 0.7));
        let x = sample::sym(&mut rng, n, 1.5);
        assert!(ricci(&q, &x, &x) <= 1e-12, "Ric(X,X) positive at n={n}");
    }
}

#[test]
fn ricci_kernel_is_exactly_the_ray_through_the_base() {
    // Ric(X, X) vanishes on the SPD cone only for multiples of the base
    // point: fuzz with decreasing off-ray components.
    let mut rng = Rng::new(1010);
    for _ in 0..100 {
        let n = 2 + rng.index(3);
        let q = classify(sample::spd(&mut rng, n, 0.6));
        for exponent in [0i32, -2, -4, -6, -9] {
            let delta = 10f64.powi(exponent);
            let lambda = rng.range(-1.5, 1.5);
            let x = q
                .matrix()
                .scale(lambda)
                .add(&sample::sym(&mut rng, n, delta));
            let value = ricci(&q, &x, &x);
            if value.abs() < 1e-14 {
                let trace_part = q.inverse_matrix().mul(&x).trace() / n as f64;
                let off_ray = x.sub(&q.matrix().scale(trace_part)).frobenius_norm();
                assert!(
                    off_ray < 1e-6,
                    "Ricci-null tangent {off_ray} away from the ray"
                );
            }
        }
    }
}

#[test]
fn words_agree_with_canonical_forms_pointwise() {
    let mut rng = Rng::new(1011);
    let n = 3;
    for _ in 0..25 {
        let length = 1 + rng.index(5);
        let letters: Vec<IsometryLetter> = (0..length)
            .map(|_| match rng.index(3) {
                0 => IsometryLetter::Congr(sample::nonsingular(&mut rng, n, 1.3)),
                1 => IsometryLetter::Inv,
                _ => IsometryLetter::Psi,
            })
            .collect();
        let word = IsometryWord::new(letters);
        let canon = canonicalize_with_order(&word, n).expect("word canonicalizes");
        for _ in 0..4 {
            let a = ManifoldPoint::spd(sample::spd(&mut rng, n, 0.8)).unwrap();
            let via_word = word.apply(&a).unwrap();
            let via_canon = canon.apply(&a).unwrap();
            let dev = via_word.matrix().sub(via_canon.matrix()).frobenius_norm();
            assert!(
                dev < 1e-9 * via_word.matrix().frobenius_norm().max(1.0),
                "word/canonical disagreement {dev}"
            );
        }
    }
}

#[test]
fn all_four_families_preserve_distance() {
    let mut rng = Rng::new(1012);
    let n = 3;
    for (a_flag, b_flag) in [(false, false), (true, false), (false, true), (true, true)] {
        let m = sample::nonsingular(&mut rng, n, 1.3);
        let iso = CanonicalIsometry::new(m, a_flag, b_flag).unwrap();
        for _ in 0..500 {
            let a = ManifoldPoint::spd(sample::spd(&mut rng, n, 0.6)).unwrap();
            let b = ManifoldPoint::spd(sample::spd(&mut rng, n, 0.6)).unwrap();
            let d = distance(&a, &b).unwrap();
            let da = distance(&iso.apply(&a).unwrap(), &iso.apply(&b).unwrap()).unwrap();
            assert!(
                (da - d).abs() < 1e-9 * d.max(1.0),
                "family ({a_flag},{b_flag}) moved distance by {}",
                (da - d).abs()
            );
        }
    }
}

#[test]
fn scaling_fixes_the_slice_and_reflects_the_line_coordinate() {
    let mut rng = Rng::new(1013);
    for _ in 0..100 {
        let n = 2 + rng.index(4);
        // ψ fixes SLP_n pointwise and is an exact involution.
        let q = ManifoldPoint::classify(sample::sl_spd(&mut rng, n)).unwrap();
        let psi_q = apply_psi(&q).unwrap();
        let fix = psi_q.matrix().sub(q.matrix()).frobenius_norm();
        assert!(fix < 1e-12 * q.matrix().frobenius_norm());

        let a = ManifoldPoint::spd(sample::spd(&mut rng, n, 0.8)).unwrap();
        let twice = apply_psi(&apply_psi(&a).unwrap()).unwrap();
        assert!(
            twice.matrix().sub(a.matrix()).frobenius_norm() < 1e-12 * a.matrix().frobenius_norm()
        );

        // ψ reverses the line coordinate of the splitting.
        let (_, x) = product_split(&a).unwrap();
        let (_, x_psi) = product_split(&apply_psi(&a).unwrap()).unwrap();
        assert!(
            (x_psi + x).abs() < 1e-12 * x.abs().max(1.0),
            "x {x} mapped to {x_psi}"
        );
    }
}

#[test]
fn inversion_scaling_fixes_the_identity_ray() {
    // φ∘ψ fixes every t·I with t > 0.
    for n in 2..=5usize {
        let sqrt = SymMatrix::identity(n).unwrap();
        for t in [0.2, 1.0, 3.7] {
            let a = ManifoldPoint::spd(sqrt.scale(t)).unwrap();
            let image = apply_psi(&a).unwrap().inverse_point();
            let dev = image.matrix().sub(a.matrix()).frobenius_norm();
            assert!(
                dev < 1e-12 * a.matrix().frobenius_norm(),
                "ray moved at t={t}, n={n}"
            );
        }
    }
}

#[test]
fn family_representatives_are_probe_distinguishable_for_n3() {
    // With det M > 0 and det M < 0 representatives and all four flag pairs,
    // no two canonical forms agree pointwise when n ≥ 3.
    let n = 3;
    let mut reps = Vec::new();
    let plus = GeneralMatrix::identity(n).unwrap();
    let minus = {
        let mut m = GeneralMatrix::identity(n).unwrap();
        m[(0, 0)] = -1.0;
        m
    };
    for m in [plus, minus] {
        for (a, b) in [(false, false), (true, false), (false, true), (true, true)] {
            reps.push(CanonicalIsometry::new(m.clone(), a, b).unwrap());
        }
    }
    let mut rng = Rng::new(1014);
    let probes: Vec<ManifoldPoint> = (0..10)
        .map(|_| ManifoldPoint::spd(sample::spd(&mut rng, n, 0.8)).unwrap())
        .collect();
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            let mut separated = false;
            for a in &probes {
                let fi = reps[i].apply(a).unwrap();
                let fj = reps[j].apply(a).unwrap();
                if fi.matrix().sub(fj.matrix()).frobenius_norm()
                    > 1e-6 * fi.matrix().frobenius_norm().max(1.0)
                {
                    separated = true;
                    break;
                }
            }
            assert!(
                separated,
                "representatives {i} and {j} coincide on every probe"
            );
        }
    }
}

#[test]
fn order_two_scaling_collapses_into_congruence() {
    // For n = 2 the word [Psi] and the congruence-absorbed form Γ_W ∘ φ are
    // the same isometry, so the canonical ψ flag disappears.
    let word = IsometryWord::new(vec![IsometryLetter::Psi]);
    let canon = canonicalize_with_order(&word, 2).unwrap();
    assert!(!canon.psi_flag());
    assert!(canon.inv_flag());
    let mut rng = Rng::new(1015);
    for _ in 0..20 {
        let a = ManifoldPoint::spd(sample::spd(&mut rng, 2, 0.8)).unwrap();
        let via_word = word.apply(&a).unwrap();
        let via_canon = canon.apply(&a).unwrap();
        let dev = via_word.matrix().sub(via_canon.matrix()).frobenius_norm();
        assert!(dev < 1e-12 * via_word.matrix().frobenius_norm());
    }
}

#[test]
fn christoffel_symbols_transform_naturally_under_congruence() {
    // Congruences map geodesics to geodesics, so the connection value
    // Γ(V, V) at A must transport to C·Γ(V,V)·Cᵀ at CACᵀ.
    let mut rng = Rng::new(1016);
    let n = 2;
    let chart = Chart::new(n).unwrap();
    let dim = chart.dim();
    let h = trace_metric::tol::ORACLE_STEP;

    let connection_value = |point: &SymMatrix, v: &SymMatrix| -> SymMatrix {
        let gamma = trace_metric::oracle::christoffel_fd(&chart, &chart.encode(point), h).unwrap();
        let vc = chart.encode(v);
        let mut out = vec![0.0; dim];
        for (k, slot) in out.iter_mut().enumerate() {
            for i in 0..dim {
                for j in 0..dim {
                    *slot += gamma[(k * dim + i) * dim + j] * vc[i] * vc[j];
                }
            }
        }
        chart.decode(&out).unwrap()
    };

    for _ in 0..5 {
        let a = sample::spd(&mut rng, n, 0.5);
        let v = sample::sym(&mut rng, n, 0.6);
        // Keep the congruence well conditioned: the h² truncation of the
        // differenced symbols grows with the cube of ‖(CACᵀ)⁻¹‖.
        let scales: Vec<f64> = (0..n).map(|_| rng.range(0.8, 1.25)).collect();
        let c = sample::orthogonal(&mut rng, n)
            .mul(&SymMatrix::diag(&scales).unwrap().to_general())
            .mul(&sample::orthogonal(&mut rng, n).transpose());
        let at_a = connection_value(&a, &v);
        let transported = congruence(&c, &at_a);
        let direct = connection_value(&congruence(&c, &a), &congruence(&c, &v));
        let dev = transported.sub(&direct).frobenius_norm() / direct.frobenius_norm().max(1.0);
        assert!(dev < 1e-6, "connection naturality violated by {dev}");
    }
}
