use std::collections::BTreeMap;

use commitment_power::corpus::{Gold, Ripp, Split};
use commitment_power::features::{FeatureVector, Instance, Vocabulary};
use commitment_power::model::{self, objective, train_sparse, LinearModel, SparseRow, TrainConfig};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dataset(n: usize, dim: usize, seed: u64) -> (Vec<SparseRow>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let truth: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut rows = Vec::new();
    let mut y = Vec::new();
    for _ in 0..n {
        let mut row: SparseRow = Vec::new();
        for j in 0..dim {
            if rng.random_bool(0.4) {
                row.push((j, rng.random_range(-1.0..1.0)));
            }
        }
        let s: f64 = row.iter().map(|&(j, v)| truth[j] * v).sum::<f64>() + rng.random_range(-0.3..0.3);
        y.push(if s >= 0.0 { 1.0 } else { -1.0 });
        rows.push(row);
    }
    (rows, y)
}

/// Dual coordinate descent for the L1-loss SVM with the bias folded in as
/// a constant feature: min 1/2 |w|^2 + C sum hinge, C = 1/(lambda n).
fn dual_cd(rows: &[SparseRow], y: &[f64], dim: usize, lambda: f64) -> (Vec<f64>, f64) {
    let n = rows.len();
    let c = 1.0 / (lambda * n as f64);
    let mut alpha = vec![0.0; n];
    let mut w = vec![0.0; dim + 1];
    let q: Vec<f64> = rows.iter().map(|r| r.iter().map(|(_, v)| v * v).sum::<f64>() + 1.0).collect();
    for _ in 0..5000 {
        let mut max_pg = 0.0f64;
        for i in 0..n {
            let margin: f64 = rows[i].iter().map(|&(j, v)| w[j] * v).sum::<f64>() + w[dim];
            let g = y[i] * margin - 1.0;
            let pg = if alpha[i] == 0.0 {
                g.min(0.0)
            } else if alpha[i] == c {
                g.max(0.0)
            } else {
                g
            };
            max_pg = max_pg.max(pg.abs());
            if pg != 0.0 {
                let new = (alpha[i] - g / q[i]).clamp(0.0, c);
                let d = (new - alpha[i]) * y[i];
                alpha[i] = new;
                for &(j, v) in &rows[i] {
                    w[j] += d * v;
                }
                w[dim] += d;
            }
        }
        if max_pg < 1e-10 {
            break;
        }
    }
    let b = w.pop().unwrap();
    (w, b)
}

#[test]
fn pegasos_objective_is_within_one_percent_of_dual_optimum() {
    for (seed, lambda) in [(1, 1e-2), (2, 1e-1), (3, 3e-2)] {
        let (rows, y) = dataset(200, 20, seed);
        let (w_opt, b_opt) = dual_cd(&rows, &y, 20, lambda);
        let optimum = objective(&w_opt, b_opt, &rows, &y, lambda);
        let config = TrainConfig {
            lambda,
            epochs: 30,
            seed,
            ..TrainConfig::default()
        };
        let (w, b) = train_sparse(&rows, &y, 20, &config).unwrap();
        let got = objective(&w, b, &rows, &y, lambda);
        assert!(got >= optimum - 1e-9, "beat the optimum: {got} < {optimum}");
        assert!((got - optimum) / optimum <= 0.01, "lambda {lambda}: {got} vs {optimum}");
    }
}

#[test]
fn training_is_deterministic_under_seed() {
    let (rows, y) = dataset(100, 10, 4);
    let config = TrainConfig::default();
    assert_eq!(train_sparse(&rows, &y, 10, &config).unwrap(), train_sparse(&rows, &y, 10, &config).unwrap());
}

#[test]
fn degenerate_labels_are_rejected() {
    let (rows, _) = dataset(20, 5, 1);
    let y = vec![1.0; 20];
    assert!(train_sparse(&rows, &y, 5, &TrainConfig::default()).is_err());
}

fn small_model(weights: Vec<f64>, bias: f64) -> LinearModel {
    let names: Vec<String> = (0..weights.len()).map(|j| format!("P1|VRB:f{j}")).collect();
    let scale = vec![1.0; weights.len()];
    LinearModel {
        weights,
        bias,
        vocab: Vocabulary::from_parts(names, scale),
        config: TrainConfig::default(),
        features: "VRB".into(),
    }
}

proptest! {
    /// Raising one feature moves the score in the direction of its weight.
    #[test]
    fn score_is_monotone_in_each_feature(
        weights in prop::collection::vec(-3.0f64..3.0, 1..8),
        bias in -1.0f64..1.0,
        base in prop::collection::vec(0.0f64..1.0, 8),
        j in 0usize..8,
        delta in 0.01f64..1.0,
    ) {
        let j = j % weights.len();
        let m = small_model(weights.clone(), bias);
        let mut x: BTreeMap<String, f64> = (0..weights.len()).map(|k| (format!("P1|VRB:f{k}"), base[k])).collect();
        let before = model::predict(&m, &x).1;
        *x.get_mut(&format!("P1|VRB:f{j}")).unwrap() += delta;
        let after = model::predict(&m, &x).1;
        prop_assert!((after - before) * weights[j].signum() >= -1e-12);
        prop_assert!(((after - before) - weights[j] * delta).abs() < 1e-9);
    }

    /// Swapping the members of a pair exchanges the P1/P2 copies and
    /// complements every ratio.
    #[test]
    fn pair_swap_mirrors_the_instance(
        a in prop::collection::vec(0u32..5, 3),
        b in prop::collection::vec(0u32..5, 3),
    ) {
        let names = ["VRB:msg_count", "VRB:token_count", "LN:report"];
        let vec_of = |id: &str, vals: &[u32]| {
            let mut v = FeatureVector::new(id);
            for (n, x) in names.iter().zip(vals) {
                v.set(*n, *x as f64);
            }
            v
        };
        let (va, vb) = (vec_of("a", &a), vec_of("b", &b));
        let ripp = Ripp { thread_id: "t".into(), p1: "a".into(), p2: "b".into(), gold: Gold::P1Superior, split: Split::Train };
        let swapped = Ripp { p1: "b".into(), p2: "a".into(), gold: Gold::P1Subordinate, ..ripp.clone() };
        let fwd = Instance::from_pair(&ripp, &va, &vb);
        let rev = Instance::from_pair(&swapped, &vb, &va);
        for (k, v) in &fwd.features {
            if let Some(rest) = k.strip_prefix("P1|") {
                prop_assert_eq!(rev.features.get(&format!("P2|{rest}")), Some(v));
            } else if let Some(rest) = k.strip_prefix("P2|") {
                prop_assert_eq!(rev.features.get(&format!("P1|{rest}")), Some(v));
            } else if let Some(rest) = k.strip_prefix("R|") {
                let other = rev.features.get(&format!("R|{rest}")).copied().unwrap_or(0.0);
                prop_assert!((v + other - 1.0).abs() < 1e-12);
            }
        }
        prop_assert!(!fwd.features.keys().any(|k| k.starts_with("R|LN:")));
    }
}
