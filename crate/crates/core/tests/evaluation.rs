use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pqc_regress::circuits::{Ansatz, CircuitSpec, Encoder};
use pqc_regress::data::{split, synth_dataset, SplitSpec, SynthKind};
use pqc_regress::evaluation::{
    cell_seed, fit_ridge, grid_sweep, learning_curve, mae, mse, parity_export, r2, ridge_baseline, train_and_score,
    CellOutcome, CurveSettings, GridResult, Prepared, Preprocess, DEFAULT_RATIOS,
};
use pqc_regress::{Dataset, MetricsReport, SpsaConfig};

#[test]
fn ridge_matches_independent_normal_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let rows: Vec<Vec<f64>> = (0..5).map(|_| (0..3).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
    let y: Vec<f64> = (0..5).map(|_| rng.random_range(-1.0..1.0)).collect();
    let lambda = 0.1;
    let m = fit_ridge(&rows, &y, lambda).unwrap();

    let x = DMatrix::from_fn(5, 4, |i, j| if j < 3 { rows[i][j] } else { 1.0 });
    let mut pen = DMatrix::identity(4, 4) * lambda;
    pen[(3, 3)] = 0.0;
    let lhs = x.transpose() * &x + pen;
    let rhs = x.transpose() * DVector::from_vec(y);
    let want = lhs.lu().solve(&rhs).unwrap();
    for j in 0..3 {
        assert!((m.weights[j] - want[j]).abs() < 1e-8);
    }
    assert!((m.intercept - want[3]).abs() < 1e-8);
}

#[test]
fn ridge_baseline_fits_linear_data() {
    let ds = synth_dataset(SynthKind::Linear, 100, 4, 2).unwrap();
    let (train, test) = split(&ds, &SplitSpec::new(0.8, 0)).unwrap();
    let m = ridge_baseline(&train, &test, 1e-8).unwrap();
    assert!(m.r2_train >= 0.999 && m.r2_test >= 0.999);
    let heavy = ridge_baseline(&train, &test, 1e12).unwrap();
    assert!(heavy.r2_train.abs() < 1e-6);
}

fn small_prepared(kind: SynthKind, n: usize, d: usize) -> (Dataset, Prepared) {
    let ds = synth_dataset(kind, n, d, 5).unwrap();
    let (train, test) = split(&ds, &SplitSpec::new(0.8, 1)).unwrap();
    let p = Prepared::fit(&train, &test, Preprocess::default()).unwrap();
    (ds, p)
}

#[test]
fn one_cell_grid_equals_a_single_run() {
    let (_, p) = small_prepared(SynthKind::Cosine, 40, 2);
    let base = CircuitSpec::new(2, Encoder::A1, Ansatz::HweCnot);
    let spsa = SpsaConfig::default().with_iterations(15).with_seed(3);
    let g = grid_sweep(&[Encoder::A1], &[Ansatz::HweCnot], &p, &base, &spsa, 1).unwrap();
    assert_eq!(g.len(), 1);
    let seed = cell_seed(3, Encoder::A1, Ansatz::HweCnot);
    let single = train_and_score(&p, &base, &spsa.with_seed(seed)).unwrap();
    assert_eq!(g.rows[0].metrics(), Some(&single.metrics));
}

// Everything except wall time.
type ReplayKey = (Encoder, Ansatz, u64, Option<MetricsReport>, Option<String>);

fn replay_key(g: &GridResult) -> Vec<ReplayKey> {
    g.rows
        .iter()
        .map(|r| {
            let digest = match &r.outcome {
                CellOutcome::Ok { theta_digest, .. } => Some(theta_digest.clone()),
                CellOutcome::Failed { .. } => None,
            };
            (r.encoder, r.ansatz, r.seed, r.metrics().copied(), digest)
        })
        .collect()
}

#[test]
fn grid_is_deterministic_and_keeps_going_after_failures() {
    let (_, p) = small_prepared(SynthKind::Cosine, 40, 2);
    let base = CircuitSpec::new(2, Encoder::A1, Ansatz::HweCnot);
    let spsa = SpsaConfig::default().with_iterations(5).with_seed(1);
    let encs = [Encoder::A1, Encoder::M, Encoder::Iqp];
    let anss = [Ansatz::HweCz, Ansatz::Hadamard];
    let a = grid_sweep(&encs, &anss, &p, &base, &spsa, 2).unwrap();
    let b = grid_sweep(&encs, &anss, &p, &base, &spsa, 3).unwrap();
    assert_eq!(a.len(), 6);
    assert_eq!(replay_key(&a), replay_key(&b));

    // A 3-qubit base cannot read 2 features: every cell fails, none panics.
    let bad = grid_sweep(&encs, &anss, &p, &CircuitSpec::new(3, Encoder::A1, Ansatz::HweCnot), &spsa, 2).unwrap();
    assert_eq!(bad.failures(), 6);
}

#[test]
fn learning_curve_keeps_the_test_set_fixed() {
    let ds = synth_dataset(SynthKind::Linear, 60, 2, 4).unwrap();
    let settings = CurveSettings { spsa: SpsaConfig::default().with_iterations(5), ..CurveSettings::default() };
    let spec = CircuitSpec::new(2, Encoder::A2, Ansatz::HweCnot);
    let res = learning_curve(&ds, &DEFAULT_RATIOS, &spec, &settings).unwrap();
    assert_eq!(res.points.len(), 5);
    assert_eq!(res.test_indices.len(), 12);
    let ns: Vec<usize> = res.points.iter().map(|p| p.n_train).collect();
    assert_eq!(ns, vec![6, 18, 30, 42, 48]);
    assert!(res.to_csv().lines().count() == 6);

    assert!(learning_curve(&ds, &[0.5, 0.3], &spec, &settings).is_err());
    assert!(learning_curve(&ds, &[0.9], &spec, &settings).is_err());
}

#[test]
fn parity_file_summary_recomputes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("parity.csv");
    let y = [1.0, 4.0, -2.0];
    let p = [0.5, 3.0, -1.0];
    let s = parity_export(&y, &p, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 5);
    let mean = p.iter().sum::<f64>() / 3.0;
    let std = (p.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / 3.0).sqrt();
    assert!((s.std_predicted - std).abs() < 1e-12);
    assert!(parity_export(&[], &[], dir.path().join("e.csv")).is_err());
    assert!(!dir.path().join("e.csv").exists());
}

proptest! {
    #[test]
    fn r2_is_affine_invariant(
        pairs in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 3..40),
        a in prop_oneof![-5.0f64..-0.1, 0.1f64..5.0],
        b in -100.0f64..100.0,
    ) {
        let (y, p): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let base = r2(&y, &p);
        prop_assume!(base.is_ok());
        let ys: Vec<f64> = y.iter().map(|v| a * v + b).collect();
        let ps: Vec<f64> = p.iter().map(|v| a * v + b).collect();
        let scaled = r2(&ys, &ps).unwrap();
        let base = base.unwrap();
        prop_assert!((scaled - base).abs() < 1e-12 * base.abs().max(1.0) * 1e3);
    }

    #[test]
    fn metrics_bounds(pairs in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 2..40)) {
        let (y, p): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        if let Ok(v) = r2(&y, &p) {
            prop_assert!(v <= 1.0);
        }
        let (m, s) = (mae(&y, &p).unwrap(), mse(&y, &p).unwrap());
        prop_assert!(m >= 0.0 && s >= 0.0 && m * m <= s + 1e-12);
    }
}

#[test]
fn reduced_list_has_98_cells() {
    let cells: HashSet<_> = Encoder::ALL
        .iter()
        .flat_map(|&e| pqc_regress::evaluation::REDUCED_ANSATZE.iter().map(move |&a| (e, a)))
        .collect();
    assert_eq!(cells.len(), 98);
}
