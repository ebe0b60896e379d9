use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pqc_regress::circuits::{assemble_pqc, Ansatz, CircuitSpec, Encoder};
use pqc_regress::statevector::{oracle_apply, DenseUnitary, GateKind, GateOp, StateVector};

fn random_gate(rng: &mut impl Rng, n: usize) -> GateOp<f64> {
    let kind = GateKind::ALL[rng.random_range(0..GateKind::ALL.len())];
    let a = rng.random_range(0..n);
    let mut b = rng.random_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    let angle = kind.is_parametric().then(|| rng.random_range(-PI..PI));
    let qubits = if kind.arity() == 1 { vec![a] } else { vec![a, b] };
    GateOp::new(kind, &qubits, angle).unwrap()
}

#[test]
fn fast_path_matches_dense_oracle_on_random_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=5 {
        for _ in 0..20 {
            let gates: Vec<_> = (0..30).map(|_| random_gate(&mut rng, n)).collect();
            let mut fast = StateVector::zero(n).unwrap();
            fast.apply_all(&gates).unwrap();
            let dense = oracle_apply(n, &gates).unwrap();
            for (a, b) in fast.amplitudes().iter().zip(dense.amplitudes()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn every_pqc_matches_oracle_at_three_qubits() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for enc in Encoder::ALL {
        for ans in Ansatz::ALL {
            let t = assemble_pqc(&CircuitSpec::new(3, enc, ans)).unwrap();
            let theta: Vec<f64> = (0..t.total_params()).map(|_| rng.random_range(-PI..PI)).collect();
            let x: Vec<f64> = (0..t.n_features()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let gates = t.bind(&theta, &x).unwrap();
            let want = oracle_apply(3, &gates).unwrap().expectation_z0();
            assert!((t.evaluate(&theta, &x).unwrap() - want).abs() < 1e-10, "{enc}_{ans}");
        }
    }
}

#[test]
fn all_gate_kinds_are_unitary_when_embedded() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let g = random_gate(&mut rng, 4);
        assert!(DenseUnitary::embed(&g, 4).unwrap().is_unitary(1e-12), "{g}");
    }
}

#[test]
fn single_precision_tracks_double() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let gates: Vec<_> = (0..50).map(|_| random_gate(&mut rng, 4)).collect();
    let mut d = StateVector::<f64>::zero(4).unwrap();
    d.apply_all(&gates).unwrap();
    let mut s = StateVector::<f32>::zero(4).unwrap();
    for g in &gates {
        let angle = g.angle().map(|a| a as f32);
        s.apply(&GateOp::new(g.kind(), g.qubits(), angle).unwrap()).unwrap();
    }
    assert!((d.expectation_z0() - s.expectation_z0() as f64).abs() < 1e-4);
}

proptest! {
    #[test]
    fn norm_is_preserved(seed in any::<u64>(), n in 2usize..8, len in 1usize..120) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = StateVector::<f64>::zero(n).unwrap();
        for _ in 0..len {
            s.apply(&random_gate(&mut rng, n)).unwrap();
        }
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        let z = s.expectation_z0();
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&z));
    }

    #[test]
    fn zero_angles_are_identity(n in 2usize..6, q in 0usize..5, kind_ix in 0usize..10) {
        let kind = GateKind::ALL[kind_ix];
        prop_assume!(kind.is_parametric() && q < n);
        let qubits = if kind.arity() == 1 { vec![q] } else { vec![q, (q + 1) % n] };
        let g = GateOp::new(kind, &qubits, Some(0.0)).unwrap();
        let mut s = StateVector::<f64>::zero(n).unwrap();
        s.apply(&GateOp::h(0)).unwrap();
        let before = s.clone();
        s.apply(&g).unwrap();
        prop_assert_eq!(s, before);
    }
}
