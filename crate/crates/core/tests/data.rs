use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pqc_regress::data::{
    fit_pca, fit_scaler, load_table, save_table, split_indices, synth_dataset, SplitSpec, SynthKind,
};
use pqc_regress::{Dataset, Error};

fn random_dataset(seed: u64, n: usize, d: usize) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n).map(|_| (0..d).map(|_| rng.random_range(-50.0..50.0)).collect()).collect();
    let y = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
    Dataset::from_rows(rows, y).unwrap()
}

#[test]
fn pca_rank_three_data_reconstructs() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let basis: Vec<Vec<f64>> = (0..3).map(|_| (0..6).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
    let rows: Vec<Vec<f64>> = (0..40)
        .map(|_| {
            let c: Vec<f64> = (0..3).map(|_| rng.random_range(-2.0..2.0)).collect();
            (0..6).map(|j| 1.5 + (0..3).map(|k| c[k] * basis[k][j]).sum::<f64>()).collect()
        })
        .collect();
    let ds = Dataset::from_rows(rows.clone(), vec![0.0; 40]).unwrap();
    let m = fit_pca(&ds, 3).unwrap();
    assert!((m.explained_variance_ratio().iter().sum::<f64>() - 1.0).abs() < 1e-10);
    let back = m.inverse_transform(&m.transform(&rows).unwrap());
    for (a, b) in rows.iter().zip(&back) {
        for (u, v) in a.iter().zip(b) {
            assert!((u - v).abs() < 1e-9);
        }
    }
    assert!(fit_pca(&ds, 0).is_err());
    assert!(fit_pca(&ds, 7).is_err());
}

#[test]
fn table_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ds.csv");
    let ds = synth_dataset(SynthKind::Linear, 30, 3, 1).unwrap();
    save_table(&ds, &path).unwrap();
    let back = load_table(&path, ds.target_name()).unwrap();
    assert_eq!(back, ds);
}

#[test]
fn malformed_cell_reports_row_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "a,b,y\n1,2,3\n4,oops,6\n").unwrap();
    match load_table(&path, "y") {
        Err(Error::Parse { row, column, .. }) => assert_eq!((row, column.as_str()), (3, "b")),
        other => panic!("unexpected {other:?}"),
    }
    assert!(load_table(&path, "missing").is_err());
}

#[test]
fn synthetic_targets_follow_their_formulas() {
    let cos = synth_dataset(SynthKind::Cosine, 20, 2, 3).unwrap();
    for (x, y) in cos.features().iter().zip(cos.targets()) {
        assert!(((x[0] + x[1]) / 2.0 + 0.3).cos() - y < 1e-15);
        assert!(x.iter().all(|v| (-1.0..=1.0).contains(v)));
    }
    let wide = synth_dataset(SynthKind::WideGaussian, 4000, 2, 3).unwrap();
    let m = wide.targets().iter().sum::<f64>() / 4000.0;
    assert!((m - 90.7).abs() < 2.0);
    assert_eq!(synth_dataset(SynthKind::Linear, 50, 2, 8).unwrap(), synth_dataset(SynthKind::Linear, 50, 2, 8).unwrap());
}

proptest! {
    #[test]
    fn scaler_round_trip(seed in any::<u64>(), n in 2usize..30, d in 1usize..5) {
        let ds = random_dataset(seed, n, d);
        let s = fit_scaler(&ds);
        let scaled = s.apply(&ds).unwrap();
        prop_assert_eq!(scaled.clipped, 0);
        for row in scaled.dataset.features() {
            prop_assert!(row.iter().all(|v| (-1.0..=1.0).contains(v)));
        }
        let back = s.invert(&scaled.dataset).unwrap();
        for (a, b) in ds.features().iter().zip(back.features()) {
            for (u, v) in a.iter().zip(b) {
                prop_assert!((u - v).abs() < 1e-9);
            }
        }
        for (u, v) in ds.targets().iter().zip(back.targets()) {
            prop_assert!((u - v).abs() < 1e-9);
        }
    }

    #[test]
    fn split_is_disjoint_sized_and_nested(n in 10usize..400, seed in any::<u64>(), r in 0.05f64..0.8) {
        let small = split_indices(n, &SplitSpec::new(r, seed));
        prop_assume!(small.is_ok());
        let small = small.unwrap();
        let big = split_indices(n, &SplitSpec::new(0.8, seed)).unwrap();
        prop_assert_eq!(&small.test, &big.test);
        prop_assert_eq!(small.test.len(), (n as f64 * 0.2 + 1e-9).floor() as usize);
        let test: HashSet<_> = small.test.iter().collect();
        prop_assert!(small.train.iter().all(|i| !test.contains(i) && *i < n));
        let bigset: HashSet<_> = big.train.iter().collect();
        prop_assert!(small.train.iter().all(|i| bigset.contains(i)));
    }
}
