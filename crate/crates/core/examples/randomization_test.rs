//! Paired approximate randomization test between two systems' per-instance
//! correctness, next to the exact answer for the same data.
//!
//!     cargo run --example randomization_test

use commitment_power::stats::approx_randomization;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> commitment_power::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let a: Vec<bool> = (0..200).map(|_| rng.random_bool(0.72)).collect();
    let b: Vec<bool> = (0..200).map(|_| rng.random_bool(0.64)).collect();
    for seed in 0..3 {
        let r = approx_randomization(&a, &b, 10_000, seed)?;
        println!("seed {seed}: accuracy difference {:+.3}, p = {:.4}", r.observed_diff, r.p_value);
    }
    // Swapping only matters where the systems disagree.
    let k = a.iter().zip(&b).filter(|(x, y)| x != y).count() as i64;
    let wins = a.iter().zip(&b).filter(|(x, y)| **x && !**y).count() as i64;
    let observed = (2 * wins - k).abs();
    let exact: f64 = (0..=k)
        .filter(|j| (2 * j - k).abs() >= observed)
        .map(|j| (0..j).fold(1.0, |c, i| c * (k - i) as f64 / (i + 1) as f64) / 2f64.powi(k as i32))
        .sum();
    println!("exact p over {k} disagreements: {exact:.4}");
    Ok(())
}
