//! Regression tests, multiple-comparison correction, relative differences and
//! the approximate randomization test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;
use statrs::function::erf::erfc;

use crate::belief::{BeliefCounts, BeliefLabel};
use crate::corpus::Role;
use crate::error::{Error, Result};

/// Test result for a single coefficient.
///
/// For OLS `t_statistic` is Student's t with `df` residual degrees of
/// freedom. For logistic regression it is the Wald z; under quasi-complete
/// separation the coefficient is infinite and the statistic is the signed
/// square root of the likelihood-ratio statistic, with `p_value` taken from
/// the likelihood-ratio test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionResult {
    pub coefficient: f64,
    pub t_statistic: f64,
    pub p_value: f64,
    pub n: usize,
    pub df: Option<usize>,
    pub controls: Vec<String>,
    pub quasi_separation: bool,
}

impl RegressionResult {
    /// A result for an outcome that never varies: nothing to explain.
    pub fn null(n: usize) -> Self {
        Self {
            coefficient: 0.0,
            t_statistic: 0.0,
            p_value: 1.0,
            n,
            df: None,
            controls: Vec::new(),
            quasi_separation: false,
        }
    }
}

/// Two-sided p-value of Student's t via the regularized incomplete beta
/// function: `p = I_{df/(df+t^2)}(df/2, 1/2)`.
pub fn student_t_two_sided(t: f64, df: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t.is_infinite() {
        return 0.0;
    }
    let x = df / (df + t * t);
    beta_reg(df / 2.0, 0.5, x).clamp(0.0, 1.0)
}

/// Two-sided normal tail probability.
pub fn normal_two_sided(z: f64) -> f64 {
    erfc(z.abs() / std::f64::consts::SQRT_2).clamp(0.0, 1.0)
}

/// Upper tail of chi-square with one degree of freedom.
pub fn chi2_1_upper(stat: f64) -> f64 {
    if stat <= 0.0 {
        1.0
    } else {
        erfc((stat / 2.0).sqrt()).clamp(0.0, 1.0)
    }
}

/// Inverts a small symmetric positive (semi)definite matrix by Gauss-Jordan
/// elimination with partial pivoting. Fails when a pivot falls below
/// `1e-12` of the matching diagonal entry.
fn invert(mut a: Vec<Vec<f64>>) -> Result<Vec<Vec<f64>>> {
    let p = a.len();
    let scale: Vec<f64> = (0..p).map(|i| a[i][i].abs().max(f64::MIN_POSITIVE)).collect();
    let mut inv: Vec<Vec<f64>> = (0..p)
        .map(|i| (0..p).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..p {
        let pivot_row = (col..p)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .unwrap_or(col);
        if a[pivot_row][col].abs() <= 1e-12 * scale[col] {
            return Err(Error::Collinear(format!(
                "column {col} is a linear combination of earlier columns"
            )));
        }
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let d = a[col][col];
        for j in 0..p {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..p {
            if r != col {
                let f = a[r][col];
                if f != 0.0 {
                    for j in 0..p {
                        a[r][j] -= f * a[col][j];
                        inv[r][j] -= f * inv[col][j];
                    }
                }
            }
        }
    }
    Ok(inv)
}

/// Ordinary least squares fit.
#[derive(Clone, Debug, PartialEq)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub t_statistics: Vec<f64>,
    pub p_values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub rss: f64,
    pub df: usize,
}

/// Fits `y ~ X` through the normal equations. `rows` must already contain
/// an intercept column if one is wanted.
pub fn ols(rows: &[Vec<f64>], y: &[f64]) -> Result<OlsFit> {
    if rows.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: rows.len(),
            right: y.len(),
        });
    }
    let p = rows.first().map_or(0, Vec::len);
    if p == 0 || rows.iter().any(|r| r.len() != p) {
        return Err(Error::InvalidArgument("design rows must share a nonzero width".into()));
    }
    let n = rows.len();
    if n < p + 2 {
        return Err(Error::TooFewObservations { needed: p + 2, got: n });
    }
    let mut xtx = vec![vec![0.0; p]; p];
    let mut xty = vec![0.0; p];
    for (row, &yi) in rows.iter().zip(y) {
        for i in 0..p {
            xty[i] += row[i] * yi;
            for j in i..p {
                xtx[i][j] += row[i] * row[j];
            }
        }
    }
    for i in 0..p {
        for j in 0..i {
            xtx[i][j] = xtx[j][i];
        }
    }
    let inv = invert(xtx)?;
    let coefficients: Vec<f64> = (0..p)
        .map(|i| (0..p).map(|j| inv[i][j] * xty[j]).sum())
        .collect();
    let residuals: Vec<f64> = rows
        .iter()
        .zip(y)
        .map(|(row, &yi)| yi - row.iter().zip(&coefficients).map(|(x, b)| x * b).sum::<f64>())
        .collect();
    let rss: f64 = residuals.iter().map(|r| r * r).sum();
    let df = n - p;
    let sigma2 = rss / df as f64;
    let tss_scale: f64 = y.iter().map(|v| v * v).sum::<f64>().max(f64::MIN_POSITIVE);
    let exact_fit = rss <= 1e-24 * tss_scale;
    let mut std_errors = Vec::with_capacity(p);
    let mut t_statistics = Vec::with_capacity(p);
    let mut p_values = Vec::with_capacity(p);
    for i in 0..p {
        let se = (sigma2 * inv[i][i]).max(0.0).sqrt();
        let b = coefficients[i];
        let (t, pv) = if exact_fit {
            if b.abs() <= 1e-12 * (1.0 + b.abs()) {
                (0.0, 1.0)
            } else {
                (b.signum() * f64::INFINITY, 0.0)
            }
        } else {
            let t = b / se;
            (t, student_t_two_sided(t, df as f64))
        };
        std_errors.push(se);
        t_statistics.push(t);
        p_values.push(pv);
    }
    Ok(OlsFit {
        coefficients,
        std_errors,
        t_statistics,
        p_values,
        residuals,
        rss,
        df,
    })
}

/// Regresses a per-participant feature on power (1 = superior) with token
/// count as a control. Rows whose value is `None` are excluded.
pub fn ols_power_regression(
    values: &[Option<f64>],
    superior: &[bool],
    token_counts: &[f64],
) -> Result<RegressionResult> {
    if values.len() != superior.len() || values.len() != token_counts.len() {
        return Err(Error::Misaligned(format!(
            "{} values, {} power indicators, {} token counts",
            values.len(),
            superior.len(),
            token_counts.len()
        )));
    }
    let mut rows = Vec::new();
    let mut y = Vec::new();
    for ((v, &sup), &tokens) in values.iter().zip(superior).zip(token_counts) {
        if let Some(v) = v {
            rows.push(vec![1.0, if sup { 1.0 } else { 0.0 }, tokens]);
            y.push(*v);
        }
    }
    if rows.len() < 3 {
        return Err(Error::TooFewObservations { needed: 3, got: rows.len() });
    }
    let fit = ols(&rows, &y)?;
    Ok(RegressionResult {
        coefficient: fit.coefficients[1],
        t_statistic: fit.t_statistics[1],
        p_value: fit.p_values[1],
        n: rows.len(),
        df: Some(fit.df),
        controls: vec!["token_count".into()],
        quasi_separation: false,
    })
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn bernoulli_loglik(successes: f64, total: f64) -> f64 {
    if total == 0.0 || successes == 0.0 || successes == total {
        return 0.0;
    }
    let p = successes / total;
    successes * p.ln() + (total - successes) * (1.0 - p).ln()
}

pub const LOGISTIC_TOLERANCE: f64 = 1e-8;
pub const LOGISTIC_MAX_ITER: usize = 100;

/// Logistic regression of a binary outcome on one predictor plus intercept,
/// fitted by Newton-Raphson; Wald test on the slope.
///
/// Complete separation is an error. Quasi-complete separation (the classes
/// touch only at one predictor value) has no finite maximum-likelihood
/// estimate, so the slope is reported as infinite and tested with the
/// likelihood ratio against the limiting fit.
pub fn logistic_regression(y: &[bool], x: &[f64]) -> Result<RegressionResult> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: y.len(),
            right: x.len(),
        });
    }
    let n = y.len();
    let n1 = y.iter().filter(|&&v| v).count();
    if n1 == 0 || n1 == n {
        return Err(Error::InvalidArgument(
            "logistic regression needs both outcome classes".into(),
        ));
    }
    let range = |want: bool| {
        x.iter()
            .zip(y)
            .filter(|(_, &v)| v == want)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (&xi, _)| {
                (lo.min(xi), hi.max(xi))
            })
    };
    let (lo0, hi0) = range(false);
    let (lo1, hi1) = range(true);
    if lo0.min(lo1) == hi0.max(hi1) {
        return Err(Error::Collinear("predictor is constant".into()));
    }
    if hi0 < lo1 || hi1 < lo0 {
        return Err(Error::Separation);
    }
    let boundary = if hi0 == lo1 {
        Some((hi0, 1.0))
    } else if hi1 == lo0 {
        Some((hi1, -1.0))
    } else {
        None
    };
    if let Some((b, sign)) = boundary {
        let at_b: Vec<bool> = x.iter().zip(y).filter(|(&xi, _)| xi == b).map(|(_, &v)| v).collect();
        let k = at_b.iter().filter(|&&v| v).count() as f64;
        let full = bernoulli_loglik(k, at_b.len() as f64);
        let null = bernoulli_loglik(n1 as f64, n as f64);
        let lr = (2.0 * (full - null)).max(0.0);
        return Ok(RegressionResult {
            coefficient: sign * f64::INFINITY,
            t_statistic: sign * lr.sqrt(),
            p_value: chi2_1_upper(lr),
            n,
            df: None,
            controls: Vec::new(),
            quasi_separation: true,
        });
    }

    let mut beta = [0.0f64; 2];
    let mut trace = Vec::new();
    for _ in 0..LOGISTIC_MAX_ITER {
        let mut g = [0.0; 2];
        let mut h = [[0.0; 2]; 2];
        for (&xi, &yi) in x.iter().zip(y) {
            let p = sigmoid(beta[0] + beta[1] * xi);
            let r = if yi { 1.0 } else { 0.0 } - p;
            let w = p * (1.0 - p);
            g[0] += r;
            g[1] += r * xi;
            h[0][0] += w;
            h[0][1] += w * xi;
            h[1][1] += w * xi * xi;
        }
        h[1][0] = h[0][1];
        let inv = invert(vec![h[0].to_vec(), h[1].to_vec()])?;
        let step = [
            inv[0][0] * g[0] + inv[0][1] * g[1],
            inv[1][0] * g[0] + inv[1][1] * g[1],
        ];
        beta[0] += step[0];
        beta[1] += step[1];
        let size = step[0].abs().max(step[1].abs());
        trace.push(size);
        if !size.is_finite() {
            break;
        }
        if size < LOGISTIC_TOLERANCE {
            let mut h = [[0.0; 2]; 2];
            for &xi in x {
                let p = sigmoid(beta[0] + beta[1] * xi);
                let w = p * (1.0 - p);
                h[0][0] += w;
                h[0][1] += w * xi;
                h[1][1] += w * xi * xi;
            }
            let cov = invert(vec![vec![h[0][0], h[0][1]], vec![h[0][1], h[1][1]]])?;
            let se = cov[1][1].sqrt();
            let z = beta[1] / se;
            return Ok(RegressionResult {
                coefficient: beta[1],
                t_statistic: z,
                p_value: normal_two_sided(z),
                n,
                df: None,
                controls: Vec::new(),
                quasi_separation: false,
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: trace.len(),
        trace,
    })
}

/// Likelihood-ratio test for completely separated data, where the fitted
/// model reproduces every outcome and its log-likelihood is zero.
pub fn separated_lr(y: &[bool], x: &[f64]) -> RegressionResult {
    let n = y.len();
    let n1 = y.iter().filter(|&&v| v).count();
    let lr = (-2.0 * bernoulli_loglik(n1 as f64, n as f64)).max(0.0);
    let rising = x
        .iter()
        .zip(y)
        .filter(|(_, &v)| v)
        .map(|(&xi, _)| xi)
        .fold(f64::NEG_INFINITY, f64::max)
        > x.iter().zip(y).filter(|(_, &v)| !v).map(|(&xi, _)| xi).fold(f64::NEG_INFINITY, f64::max);
    let sign = if rising { 1.0 } else { -1.0 };
    RegressionResult {
        coefficient: sign * f64::INFINITY,
        t_statistic: sign * lr.sqrt(),
        p_value: chi2_1_upper(lr),
        n,
        df: None,
        controls: Vec::new(),
        quasi_separation: true,
    }
}

/// Multiplies each p-value by `m`, capped at one.
pub fn bonferroni(p_values: &[f64], m: usize) -> Result<Vec<f64>> {
    if m < p_values.len() {
        return Err(Error::InvalidArgument(format!(
            "Bonferroni family size {m} is smaller than {} tests",
            p_values.len()
        )));
    }
    Ok(p_values.iter().map(|p| (p * m as f64).min(1.0)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelativeDifference {
    pub feature: String,
    pub rd_percent: f64,
    pub mean_sub: f64,
    pub mean_sup: f64,
    pub significant: bool,
}

/// `(mean_sub - mean_sup) * 100 / mean_sup`.
pub fn relative_difference(mean_sub: f64, mean_sup: f64) -> Result<f64> {
    if mean_sup == 0.0 {
        return Err(Error::ZeroBaseline);
    }
    Ok((mean_sub - mean_sup) * 100.0 / mean_sup)
}

impl RelativeDifference {
    pub fn new(
        feature: impl Into<String>,
        mean_sub: f64,
        mean_sup: f64,
        significant: bool,
    ) -> Result<Self> {
        Ok(Self {
            feature: feature.into(),
            rd_percent: relative_difference(mean_sub, mean_sup)?,
            mean_sub,
            mean_sup,
            significant,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomizationResult {
    pub p_value: f64,
    pub iterations: usize,
    pub seed: u64,
    /// Accuracy of `a` minus accuracy of `b`.
    pub observed_diff: f64,
}

pub const MIN_RANDOMIZATION_ITERATIONS: usize = 1000;
pub const DEFAULT_RANDOMIZATION_ITERATIONS: usize = 10_000;

/// Paired approximate randomization test on two aligned correctness
/// vectors. Each iteration swaps every aligned pair with probability 1/2,
/// using its own ChaCha stream so iterations can run in parallel without
/// changing the result.
pub fn approx_randomization(
    correct_a: &[bool],
    correct_b: &[bool],
    iterations: usize,
    seed: u64,
) -> Result<RandomizationResult> {
    if correct_a.len() != correct_b.len() {
        return Err(Error::LengthMismatch {
            left: correct_a.len(),
            right: correct_b.len(),
        });
    }
    if iterations < MIN_RANDOMIZATION_ITERATIONS {
        return Err(Error::InvalidArgument(format!(
            "randomization needs at least {MIN_RANDOMIZATION_ITERATIONS} iterations, got {iterations}"
        )));
    }
    let n = correct_a.len();
    let diff = |a: &[bool], b: &[bool]| {
        a.iter().filter(|&&v| v).count() as i64 - b.iter().filter(|&&v| v).count() as i64
    };
    let observed = diff(correct_a, correct_b);
    let at_least = (0..iterations as u64)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let mut d = 0i64;
            for (&a, &b) in correct_a.iter().zip(correct_b) {
                let (x, y) = if rng.random::<bool>() { (b, a) } else { (a, b) };
                d += x as i64 - y as i64;
            }
            d.abs() >= observed.abs()
        })
        .count();
    Ok(RandomizationResult {
        p_value: (at_least as f64 + 1.0) / (iterations as f64 + 1.0),
        iterations,
        seed,
        observed_diff: if n == 0 { 0.0 } else { observed as f64 / n as f64 },
    })
}

/// One participant of one related pair, as seen by the hypothesis suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParticipantObservation {
    pub role: Role,
    /// `None` when the participant sent nothing (or only empty messages).
    pub counts: Option<BeliefCounts>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    SuperiorsMore,
    SubordinatesMore,
}

/// Hypotheses about belief usage: the label and which side is expected to
/// use it more.
pub const HYPOTHESES: [(&str, BeliefLabel, Direction); 4] = [
    ("H1", BeliefLabel::Cb, Direction::SuperiorsMore),
    ("H2", BeliefLabel::Ncb, Direction::SubordinatesMore),
    ("H3", BeliefLabel::Rob, Direction::SubordinatesMore),
    ("H4", BeliefLabel::Na, Direction::SuperiorsMore),
];

pub const SIGNIFICANCE: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisRow {
    pub hypothesis: String,
    pub feature: String,
    pub label: BeliefLabel,
    pub regression: RegressionResult,
    pub p_adjusted: f64,
    pub rd: RelativeDifference,
    pub confirmed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub rows: Vec<HypothesisRow>,
    pub excluded: usize,
}

pub const REPORT_HEADER: &str = "feature\tb\tt\tp\tp_adjusted\trd_percent\tmean_sub\tmean_sup\tn";
pub const CHART_HEADER: &str = "label\tvalue\tsignificant";

impl HypothesisReport {
    pub fn row(&self, label: BeliefLabel) -> Option<&HypothesisRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// Tab-separated table, one row per belief feature.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(REPORT_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.feature,
                r.regression.coefficient,
                r.regression.t_statistic,
                r.regression.p_value,
                r.p_adjusted,
                r.rd.rd_percent,
                r.rd.mean_sub,
                r.rd.mean_sup,
                r.regression.n
            ));
        }
        out
    }

    /// Bar-chart data: relative difference per feature and its significance.
    pub fn chart_tsv(&self) -> String {
        let mut out = String::from(CHART_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{}\t{}\t{}\n", r.label, r.rd.rd_percent, r.rd.significant));
        }
        out
    }
}

/// Regresses each belief count on power with token-count control, applies
/// Bonferroni with `m = 4`, and computes token-normalized relative
/// differences.
pub fn run_hypothesis_suite(observations: &[ParticipantObservation]) -> Result<HypothesisReport> {
    let defined: Vec<(&ParticipantObservation, &BeliefCounts)> = observations
        .iter()
        .filter_map(|o| o.counts.as_ref().map(|c| (o, c)))
        .collect();
    let excluded = observations.len() - defined.len();
    let superior: Vec<bool> = defined.iter().map(|(o, _)| o.role == Role::Superior).collect();
    let tokens: Vec<f64> = defined.iter().map(|(_, c)| c.token_count as f64).collect();

    let mut regressions = Vec::new();
    for (_, label, _) in HYPOTHESES {
        let values: Vec<Option<f64>> = defined.iter().map(|(_, c)| Some(c.get(label) as f64)).collect();
        regressions.push(ols_power_regression(&values, &superior, &tokens)?);
    }
    let raw: Vec<f64> = regressions.iter().map(|r| r.p_value).collect();
    let adjusted = bonferroni(&raw, HYPOTHESES.len())?;

    let mut rows = Vec::new();
    for (((name, label, direction), regression), p_adjusted) in
        HYPOTHESES.into_iter().zip(regressions).zip(adjusted)
    {
        let mean_of = |role: Role| {
            let v: Vec<f64> = defined
                .iter()
                .filter(|(o, _)| o.role == role)
                .map(|(_, c)| c.get(label) as f64 / c.token_count as f64)
                .collect();
            v.iter().sum::<f64>() / v.len().max(1) as f64
        };
        let significant = p_adjusted < SIGNIFICANCE;
        let (mean_sub, mean_sup) = (mean_of(Role::Subordinate), mean_of(Role::Superior));
        let feature = format!("{}Count", label.camel());
        // A zero superior mean leaves RD undefined; the regression still stands.
        let rd_percent = relative_difference(mean_sub, mean_sup).unwrap_or_else(|_| {
            log::warn!("{feature}: superior mean is zero, relative difference undefined");
            f64::NAN
        });
        let rd = RelativeDifference {
            feature,
            rd_percent,
            mean_sub,
            mean_sup,
            significant,
        };
        let expected_sign = match direction {
            Direction::SuperiorsMore => 1.0,
            Direction::SubordinatesMore => -1.0,
        };
        rows.push(HypothesisRow {
            hypothesis: name.to_string(),
            feature: rd.feature.clone(),
            label,
            confirmed: significant && regression.coefficient * expected_sign > 0.0,
            regression,
            p_adjusted,
            rd,
        });
    }
    Ok(HypothesisReport { rows, excluded })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn t_tail_known_values() {
        // t = 2.228 is the 97.5% quantile at 10 df.
        assert_relative_eq!(student_t_two_sided(2.228138851986274, 10.0), 0.05, epsilon = 1e-10);
        assert_relative_eq!(student_t_two_sided(0.0, 5.0), 1.0, epsilon = 1e-12);
        // df = 1 is Cauchy: P(|T| > 1) = 1/2.
        assert_relative_eq!(student_t_two_sided(1.0, 1.0), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn constant_outcome_gives_null() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![1.0, (i % 2) as f64, i as f64 * 3.0 + 1.0]).collect();
        let fit = ols(&rows, &[2.5; 10]).unwrap();
        assert!(fit.coefficients[1].abs() < 1e-12);
        assert_eq!(fit.p_values[1], 1.0);
    }

    #[test]
    fn collinear_design_is_rejected() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![1.0, i as f64, 2.0 * i as f64]).collect();
        let y: Vec<f64> = (0..10).map(|i| i as f64).collect();
        assert!(matches!(ols(&rows, &y), Err(Error::Collinear(_))));
    }

    #[test]
    fn too_few_rows() {
        let r = ols_power_regression(&[Some(1.0), None, Some(2.0)], &[true, false, false], &[1.0, 2.0, 3.0]);
        assert!(matches!(r, Err(Error::TooFewObservations { .. })));
    }

    #[test]
    fn bonferroni_caps_at_one() {
        assert_eq!(bonferroni(&[0.01], 4).unwrap(), vec![0.04]);
        assert_eq!(bonferroni(&[0.5], 4).unwrap(), vec![1.0]);
        assert!(bonferroni(&[0.1, 0.2], 1).is_err());
        // p < .001 effects stay below .001 after m = 4 when p < .00025.
        assert!(bonferroni(&[0.0002], 4).unwrap()[0] < 0.001);
    }

    #[test]
    fn relative_difference_examples() {
        assert_relative_eq!(relative_difference(1.48, 1.0).unwrap(), 48.0, epsilon = 1e-9);
        assert_relative_eq!(relative_difference(1.653, 1.0).unwrap(), 65.3, epsilon = 1e-9);
        assert_eq!(relative_difference(0.7, 0.7).unwrap(), 0.0);
        assert!(matches!(relative_difference(1.0, 0.0), Err(Error::ZeroBaseline)));
    }

    #[test]
    fn separation_cases() {
        let y = [false, false, true, true];
        assert!(matches!(logistic_regression(&y, &[0.0, 0.0, 1.0, 1.0]), Err(Error::Separation)));
        let quasi = logistic_regression(&[false, false, true, false, true], &[0.0, 0.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(quasi.quasi_separation);
        assert_eq!(quasi.coefficient, f64::INFINITY);
        assert!(quasi.p_value > 0.0 && quasi.p_value < 1.0);
        assert!(logistic_regression(&[true, true], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn balanced_independent_outcome_is_null() {
        let y = [true, false, true, false, true, false, true, false];
        let x = [0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0];
        let r = logistic_regression(&y, &x).unwrap();
        assert!(r.coefficient.abs() < 1e-9);
        assert_relative_eq!(r.p_value, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn identical_systems_give_p_one() {
        let a = [true, false, true, true];
        let r = approx_randomization(&a, &a, 1000, 3).unwrap();
        assert_eq!(r.observed_diff, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn randomization_rejects_short_runs_and_mismatch() {
        assert!(approx_randomization(&[true], &[true], 10, 0).is_err());
        assert!(approx_randomization(&[true], &[true, false], 1000, 0).is_err());
    }
}
