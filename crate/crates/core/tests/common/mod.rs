//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

pub struct OracleFit {
    pub beta: Vec<f64>,
    pub se: Vec<f64>,
    pub t: Vec<f64>,
    pub p: Vec<f64>,
}

/// Normal equations solved with nalgebra's LU, p-values from statrs' t cdf.
pub fn ols_oracle(rows: &[Vec<f64>], y: &[f64]) -> OracleFit {
    let n = rows.len();
    let k = rows[0].len();
    let x = DMatrix::from_fn(n, k, |i, j| rows[i][j]);
    let yv = DVector::from_column_slice(y);
    let xtx = x.transpose() * &x;
    let inv = xtx.clone().lu().try_inverse().unwrap();
    let beta = &inv * x.transpose() * &yv;
    let resid = &yv - &x * &beta;
    let df = (n - k) as f64;
    let sigma2 = resid.dot(&resid) / df;
    let dist = StudentsT::new(0.0, 1.0, df).unwrap();
    let mut fit = OracleFit {
        beta: beta.iter().copied().collect(),
        se: vec![],
        t: vec![],
        p: vec![],
    };
    for j in 0..k {
        let se = (sigma2 * inv[(j, j)]).sqrt();
        let t = beta[j] / se;
        fit.se.push(se);
        fit.t.push(t);
        fit.p.push(2.0 * (1.0 - dist.cdf(t.abs())));
    }
    fit
}

pub fn random_dataset(rng: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = rng.random_range(12..80);
    let k = rng.random_range(2..6);
    let truth: Vec<f64> = (0..k).map(|_| rng.random_range(-2.0..2.0)).collect();
    let mut rows = Vec::new();
    let mut y = Vec::new();
    for _ in 0..n {
        let mut row = vec![1.0];
        row.extend((1..k).map(|_| rng.random_range(-5.0..5.0)));
        let noise: f64 = rng.random_range(-3.0..3.0);
        y.push(row.iter().zip(&truth).map(|(a, b)| a * b).sum::<f64>() + noise);
        rows.push(row);
    }
    (rows, y)
}

/// Plain IRLS on `[1, x]`, iterated to machine precision.
pub fn irls_oracle(y: &[bool], x: &[f64]) -> (f64, f64, f64) {
    let n = y.len();
    let xm = DMatrix::from_fn(n, 2, |i, j| if j == 0 { 1.0 } else { x[i] });
    let yv = DVector::from_fn(n, |i, _| if y[i] { 1.0 } else { 0.0 });
    let mut beta = DVector::zeros(2);
    let mut cov = DMatrix::zeros(2, 2);
    for _ in 0..200 {
        let eta = &xm * &beta;
        let mu = eta.map(|e: f64| 1.0 / (1.0 + (-e).exp()));
        let w = mu.map(|m| m * (1.0 - m));
        let mut xtwx = DMatrix::zeros(2, 2);
        for i in 0..n {
            let r = xm.row(i);
            xtwx += w[i] * r.transpose() * r;
        }
        cov = xtwx.try_inverse().unwrap();
        let step = &cov * xm.transpose() * (&yv - &mu);
        beta += &step;
        if step.amax() < 1e-13 {
            break;
        }
    }
    let z = beta[1] / cov[(1, 1)].sqrt();
    let p = 2.0 * (1.0 - Normal::standard().cdf(z.abs()));
    (beta[1], z, p)
}

fn binomial_pmf(k: u64, n: u64) -> f64 {
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c / 2f64.powi(n as i32)
}

/// Exact two-sided p of the paired swap test: only discordant pairs move.
pub fn exact_randomization_p(a: &[bool], b: &[bool]) -> f64 {
    let k = a.iter().zip(b).filter(|(x, y)| x != y).count() as i64;
    let wins = a.iter().zip(b).filter(|(x, y)| **x && !**y).count() as i64;
    let observed = (2 * wins - k).abs();
    (0..=k)
        .filter(|&j| (2 * j - k).abs() >= observed)
        .map(|j| binomial_pmf(j as u64, k as u64))
        .sum()
}

/// Logistic data on a binary or continuous predictor.
pub fn random_logistic(rng: &mut ChaCha8Rng) -> (Vec<bool>, Vec<f64>) {
    let n = rng.random_range(40..300);
    let b0: f64 = rng.random_range(-1.5..1.5);
    let b1: f64 = rng.random_range(-1.5..1.5);
    let binary = rng.random_bool(0.5);
    let x: Vec<f64> = (0..n)
        .map(|_| if binary { rng.random_range(0..2) as f64 } else { rng.random_range(-2.0..2.0) })
        .collect();
    let y = x.iter().map(|&v| rng.random_bool(1.0 / (1.0 + (-(b0 + b1 * v)).exp()))).collect();
    (y, x)
}
