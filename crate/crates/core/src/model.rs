//! L2-regularized linear SVM trained with seeded stochastic subgradient
//! descent, prediction, evaluation, model files and weight-variation
//! analysis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::belief::BeliefLabel;
use crate::corpus::Gold;
use crate::error::{Error, Result};
use crate::features::{Instance, Vocabulary};

pub type SparseRow = Vec<(usize, f64)>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Loss {
    #[default]
    Hinge,
}

impl fmt::Display for Loss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("hinge")
    }
}

impl FromStr for Loss {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hinge" => Ok(Loss::Hinge),
            _ => Err(Error::TrainConfig(format!("unknown loss {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub lambda: f64,
    pub epochs: usize,
    pub seed: u64,
    pub loss: Loss,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            lambda: 1e-3,
            epochs: 30,
            seed: 0,
            loss: Loss::Hinge,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::TrainConfig(format!("lambda must be positive, got {}", self.lambda)));
        }
        if self.epochs < 1 {
            return Err(Error::TrainConfig("epochs must be at least 1".into()));
        }
        Ok(())
    }
}

/// Regularization grid searched on the dev split.
pub const LAMBDA_GRID: [f64; 4] = [1e-4, 1e-3, 1e-2, 1e-1];

fn dot(w: &[f64], x: &[(usize, f64)]) -> f64 {
    x.iter().map(|&(j, v)| w[j] * v).sum()
}

/// `lambda/2 * (|w|^2 + b^2) + mean hinge loss`. The bias is treated as the
/// weight of a constant feature and regularized with the rest.
pub fn objective(w: &[f64], b: f64, rows: &[SparseRow], y: &[f64], lambda: f64) -> f64 {
    let reg = w.iter().map(|v| v * v).sum::<f64>() + b * b;
    let loss: f64 = rows
        .iter()
        .zip(y)
        .map(|(x, &yi)| (1.0 - yi * (dot(w, x) + b)).max(0.0))
        .sum();
    0.5 * lambda * reg + loss / rows.len() as f64
}

/// Pegasos on sparse rows with labels in {-1, +1}. Step size `1/(lambda t)`,
/// projection onto the ball of radius `1/sqrt(lambda)`, a fresh seeded
/// shuffle every epoch, and the average of the epoch-end iterates over the
/// second half of training as the returned solution.
pub fn train_sparse(rows: &[SparseRow], y: &[f64], dim: usize, config: &TrainConfig) -> Result<(Vec<f64>, f64)> {
    config.validate()?;
    if rows.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: rows.len(),
            right: y.len(),
        });
    }
    if rows.len() < 2 || !y.contains(&1.0) || !y.contains(&-1.0) {
        return Err(Error::DegenerateLabels);
    }
    let lambda = config.lambda;
    let radius = 1.0 / lambda.sqrt();
    // w = scale * v, with the bias as the last coordinate of v.
    let mut v = vec![0.0; dim + 1];
    let mut scale = 1.0f64;
    let mut sq_norm = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut avg = vec![0.0; dim + 1];
    let mut averaged = 0usize;
    let tail_start = config.epochs / 2;
    let mut t = 0usize;
    for epoch in 0..config.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let x = &rows[i];
            let margin = y[i] * scale * (dot(&v, x) + v[dim]);
            let shrink = 1.0 - eta * lambda;
            if shrink <= 0.0 {
                v.iter_mut().for_each(|c| *c = 0.0);
                scale = 1.0;
                sq_norm = 0.0;
            } else {
                scale *= shrink;
                sq_norm *= shrink * shrink;
            }
            if margin < 1.0 {
                let step = eta * y[i] / scale;
                for &(j, xj) in x.iter().chain(std::iter::once(&(dim, 1.0))) {
                    let old = v[j];
                    v[j] += step * xj;
                    sq_norm += scale * scale * (v[j] * v[j] - old * old);
                }
            }
            let norm = sq_norm.max(0.0).sqrt();
            if norm > radius {
                scale *= radius / norm;
                sq_norm = radius * radius;
            }
            if scale < 1e-9 {
                v.iter_mut().for_each(|c| *c *= scale);
                scale = 1.0;
            }
        }
        if epoch >= tail_start {
            for (a, c) in avg.iter_mut().zip(&v) {
                *a += scale * c;
            }
            averaged += 1;
        }
    }
    avg.iter_mut().for_each(|a| *a /= averaged as f64);
    let bias = avg.pop().unwrap_or(0.0);
    Ok((avg, bias))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub vocab: Vocabulary,
    pub config: TrainConfig,
    /// Feature configuration the vocabulary was built with.
    pub features: String,
}

fn labels_of(instances: &[Instance]) -> Vec<f64> {
    instances.iter().map(|i| i.gold.sign()).collect()
}

pub fn train(instances: &[Instance], vocab: Vocabulary, config: &TrainConfig, features: &str) -> Result<LinearModel> {
    let rows: Vec<SparseRow> = instances.iter().map(|i| vocab.vectorize(&i.features)).collect();
    let (weights, bias) = train_sparse(&rows, &labels_of(instances), vocab.len(), config)?;
    Ok(LinearModel {
        weights,
        bias,
        vocab,
        config: *config,
        features: features.to_string(),
    })
}

impl LinearModel {
    pub fn score(&self, features: &BTreeMap<String, f64>) -> f64 {
        dot(&self.weights, &self.vocab.vectorize(features)) + self.bias
    }

    pub fn weight(&self, name: &str) -> f64 {
        self.vocab.column(name).map_or(0.0, |c| self.weights[c])
    }
}

/// Label and margin. A score of exactly zero is `P1_SUPERIOR`.
pub fn predict(model: &LinearModel, features: &BTreeMap<String, f64>) -> (Gold, f64) {
    let s = model.score(features);
    (Gold::from_sign(s), s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub accuracy: f64,
    pub ids: Vec<String>,
    pub correct: Vec<bool>,
}

pub fn evaluate(model: &LinearModel, instances: &[Instance]) -> Result<Evaluation> {
    if instances.is_empty() {
        return Err(Error::EmptyInstances);
    }
    let correct: Vec<bool> = instances
        .par_iter()
        .map(|i| predict(model, &i.features).0 == i.gold)
        .collect();
    let hits = correct.iter().filter(|&&c| c).count();
    Ok(Evaluation {
        accuracy: hits as f64 / correct.len() as f64,
        ids: instances.iter().map(|i| i.id.clone()).collect(),
        correct,
    })
}

/// Picks the grid value with the best dev accuracy; ties go to the earlier
/// grid entry. Returns the chosen lambda and every dev accuracy.
pub fn select_regularization(
    train_set: &[Instance],
    dev: &[Instance],
    vocab: &Vocabulary,
    base: &TrainConfig,
    grid: &[f64],
) -> Result<(f64, Vec<(f64, f64)>)> {
    let mut scores = Vec::new();
    for &lambda in grid {
        let config = TrainConfig { lambda, ..*base };
        let model = train(train_set, vocab.clone(), &config, "")?;
        scores.push((lambda, evaluate(&model, dev)?.accuracy));
    }
    let best = scores
        .iter()
        .fold(None::<(f64, f64)>, |best, &(l, a)| match best {
            Some((_, ba)) if ba >= a => best,
            _ => Some((l, a)),
        })
        .ok_or_else(|| Error::TrainConfig("empty regularization grid".into()))?;
    Ok((best.0, scores))
}

pub const MODEL_SCHEMA_VERSION: u32 = 1;
const MODEL_HEADER: &str = "# linear model v";

impl LinearModel {
    /// Tab-separated text: header, config snapshot, bias, then one
    /// `w<TAB>name<TAB>scale<TAB>weight` line per column.
    pub fn to_text(&self) -> String {
        let mut out = format!("{MODEL_HEADER}{MODEL_SCHEMA_VERSION}\n");
        out.push_str(&format!("config\tlambda\t{}\n", self.config.lambda));
        out.push_str(&format!("config\tepochs\t{}\n", self.config.epochs));
        out.push_str(&format!("config\tseed\t{}\n", self.config.seed));
        out.push_str(&format!("config\tloss\t{}\n", self.config.loss));
        out.push_str(&format!("config\tfeatures\t{}\n", self.features));
        out.push_str(&format!("bias\t{}\n", self.bias));
        for ((name, scale), w) in self.vocab.names.iter().zip(&self.vocab.scale).zip(&self.weights) {
            out.push_str(&format!("w\t{name}\t{scale}\t{w}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |d: String| Error::parse("model", d);
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        if header != format!("{MODEL_HEADER}{MODEL_SCHEMA_VERSION}") {
            return Err(Error::Schema {
                artifact: "model".into(),
                expected: MODEL_SCHEMA_VERSION,
                found: header.to_string(),
            });
        }
        let mut config = TrainConfig::default();
        let mut features = String::new();
        let mut bias = None;
        let (mut names, mut scales, mut weights) = (Vec::new(), Vec::new(), Vec::new());
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("bad number {s:?}")));
        for line in lines.filter(|l| !l.is_empty()) {
            let cols: Vec<&str> = line.split('\t').collect();
            match cols.as_slice() {
                ["config", "lambda", v] => config.lambda = num(v)?,
                ["config", "epochs", v] => config.epochs = v.parse().map_err(|_| bad(format!("bad epochs {v:?}")))?,
                ["config", "seed", v] => config.seed = v.parse().map_err(|_| bad(format!("bad seed {v:?}")))?,
                ["config", "loss", v] => config.loss = v.parse()?,
                ["config", "features", v] => features = v.to_string(),
                ["bias", v] => bias = Some(num(v)?),
                ["w", name, scale, w] => {
                    names.push(name.to_string());
                    scales.push(num(scale)?);
                    weights.push(num(w)?);
                }
                _ => return Err(bad(format!("unrecognized line {line:?}"))),
            }
        }
        Ok(Self {
            weights,
            bias: bias.ok_or_else(|| bad("missing bias".into()))?,
            vocab: Vocabulary::from_parts(names, scales),
            config,
            features,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightVariationEntry {
    pub head_lemma: String,
    pub weights: BTreeMap<BeliefLabel, f64>,
    pub stddev: f64,
}

/// Population standard deviation.
pub fn stddev(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// Splits `LN:need(CB)` into `("need", CB)`.
fn appended_unigram(name: &str) -> Option<(&str, BeliefLabel)> {
    let body = name.strip_prefix("LN:")?;
    if body.contains('_') {
        return None;
    }
    let open = body.rfind('(')?;
    let label = body[open + 1..].strip_suffix(')')?.parse().ok()?;
    Some((&body[..open], label))
}

/// Belief versions of each head lemma among the LN unigram features, with
/// the standard deviation of their weights over the versions present.
///
/// A version's weight is its `P1|` weight minus its `P2|` weight, i.e. how
/// strongly the lemma in that context marks its speaker as the superior.
/// Lemmas with fewer than two versions are left out.
pub fn weight_variation_report(model: &LinearModel, top_k: usize) -> Result<Vec<WeightVariationEntry>> {
    let mut groups: BTreeMap<String, BTreeMap<BeliefLabel, f64>> = BTreeMap::new();
    for (name, &w) in model.vocab.names.iter().zip(&model.weights) {
        let Some((side, feature)) = name.split_once('|') else {
            continue;
        };
        let sign = match side {
            "P1" => 1.0,
            "P2" => -1.0,
            _ => continue,
        };
        if let Some((lemma, label)) = appended_unigram(feature) {
            *groups.entry(lemma.to_string()).or_default().entry(label).or_default() += sign * w;
        }
    }
    if groups.is_empty() {
        return Err(Error::NoAppendFeatures);
    }
    let mut entries: Vec<WeightVariationEntry> = groups
        .into_iter()
        .filter(|(_, w)| w.len() >= 2)
        .map(|(head_lemma, weights)| {
            let values: Vec<f64> = weights.values().copied().collect();
            WeightVariationEntry {
                head_lemma,
                stddev: stddev(&values),
                weights,
            }
        })
        .collect();
    entries.sort_by(|a, b| b.stddev.total_cmp(&a.stddev).then_with(|| a.head_lemma.cmp(&b.head_lemma)));
    entries.truncate(top_k);
    Ok(entries)
}

pub const WEIGHTS_HEADER: &str = "head_lemma\tstddev\tCB\tNCB\tROB\tNA";

/// Tab-separated report; versions absent for a lemma are left empty.
pub fn weight_report_tsv(entries: &[WeightVariationEntry]) -> String {
    let mut out = String::from(WEIGHTS_HEADER);
    out.push('\n');
    for e in entries {
        out.push_str(&format!("{}\t{}", e.head_lemma, e.stddev));
        for l in BeliefLabel::ALL {
            out.push('\t');
            if let Some(w) = e.weights.get(&l) {
                out.push_str(&w.to_string());
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Split;

    fn inst(id: &str, gold: Gold, pairs: &[(&str, f64)]) -> Instance {
        Instance {
            id: id.into(),
            split: Split::Train,
            gold,
            features: pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    fn toy() -> Vec<Instance> {
        vec![
            inst("a", Gold::P1Superior, &[("x", 2.0), ("y", 0.5)]),
            inst("b", Gold::P1Superior, &[("x", 1.5), ("y", 0.2)]),
            inst("c", Gold::P1Subordinate, &[("x", -1.0), ("y", 0.4)]),
            inst("d", Gold::P1Subordinate, &[("x", -2.0), ("y", 0.1)]),
        ]
    }

    #[test]
    fn separable_toy_is_fit() {
        let data = toy();
        let vocab = Vocabulary::build(&data, 1);
        let model = train(&data, vocab, &TrainConfig::default(), "").unwrap();
        assert_eq!(evaluate(&model, &data).unwrap().accuracy, 1.0);
        for i in &data {
            assert_eq!(predict(&model, &i.features).0, i.gold);
        }
    }

    #[test]
    fn training_is_deterministic() {
        let data = toy();
        let vocab = Vocabulary::build(&data, 1);
        let c = TrainConfig { seed: 9, ..TrainConfig::default() };
        let a = train(&data, vocab.clone(), &c, "").unwrap();
        let b = train(&data, vocab, &c, "").unwrap();
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn degenerate_and_invalid_configs() {
        let data: Vec<Instance> = toy().into_iter().filter(|i| i.gold == Gold::P1Superior).collect();
        let vocab = Vocabulary::build(&data, 1);
        assert!(matches!(train(&data, vocab.clone(), &TrainConfig::default(), ""), Err(Error::DegenerateLabels)));
        let bad = TrainConfig { lambda: 0.0, ..TrainConfig::default() };
        assert!(train(&toy(), vocab.clone(), &bad, "").is_err());
        let bad = TrainConfig { epochs: 0, ..TrainConfig::default() };
        assert!(train(&toy(), vocab, &bad, "").is_err());
    }

    #[test]
    fn zero_vector_follows_bias_and_ties_go_to_superior() {
        let mut model = LinearModel {
            weights: vec![1.0],
            bias: -0.5,
            vocab: Vocabulary::from_parts(vec!["x".into()], vec![1.0]),
            config: TrainConfig::default(),
            features: String::new(),
        };
        assert_eq!(predict(&model, &BTreeMap::new()).0, Gold::P1Subordinate);
        model.bias = 0.0;
        assert_eq!(predict(&model, &BTreeMap::new()), (Gold::P1Superior, 0.0));
    }

    #[test]
    fn model_text_round_trip() {
        let data = toy();
        let model = train(&data, Vocabulary::build(&data, 1), &TrainConfig::default(), "VRB").unwrap();
        let back = LinearModel::from_text(&model.to_text()).unwrap();
        assert_eq!(back, model);
        assert!(LinearModel::from_text("# linear model v2\n").is_err());
    }

    #[test]
    fn variation_entries() {
        let names = ["P1|LN:need(CB)", "P1|LN:need(NA)", "P1|LN:go(CB)", "P1|LN:i_need(CB)"];
        let model = LinearModel {
            weights: vec![1.0, -1.0, 3.0, 5.0],
            bias: 0.0,
            vocab: Vocabulary::from_parts(names.iter().map(|s| s.to_string()).collect(), vec![1.0; 4]),
            config: TrainConfig::default(),
            features: String::new(),
        };
        let report = weight_variation_report(&model, 5).unwrap();
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].head_lemma, "need");
        assert_eq!(report[0].stddev, 1.0);
        let plain = LinearModel {
            vocab: Vocabulary::from_parts(vec!["P1|LN:need".into()], vec![1.0]),
            weights: vec![1.0],
            ..model
        };
        assert!(matches!(weight_variation_report(&plain, 5), Err(Error::NoAppendFeatures)));
    }
}
