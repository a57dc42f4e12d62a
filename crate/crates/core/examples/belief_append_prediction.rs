//! Power prediction with and without belief labels appended to lexical
//! ngrams, on a corpus where the two roles use the same words in different
//! belief contexts.
//!
//!     cargo run --release --example belief_append_prediction

use commitment_power::corpus::Split;
use commitment_power::features::{FeatureConfig, Vocabulary, NGRAM_DF_FLOOR};
use commitment_power::model::{self, TrainConfig, LAMBDA_GRID};
use commitment_power::pipeline::{in_split, Toolkit};
use commitment_power::stats::approx_randomization;
use commitment_power::synth::{generate_belief_contrast_corpus, ContrastConfig};

fn main() -> commitment_power::Result<()> {
    let synth = generate_belief_contrast_corpus(&ContrastConfig::default())?;
    let tk = Toolkit::default();
    let mut results = Vec::new();
    for features in ["LN", "LNapnd"] {
        let config: FeatureConfig = features.parse()?;
        let instances = tk.instances(&synth.corpus, &synth.ripps, &config);
        let (train, dev, test) = (
            in_split(&instances, Split::Train),
            in_split(&instances, Split::Dev),
            in_split(&instances, Split::Test),
        );
        let vocab = Vocabulary::build(train.iter(), NGRAM_DF_FLOOR);
        let base = TrainConfig::default();
        let (lambda, _) = model::select_regularization(&train, &dev, &vocab, &base, &LAMBDA_GRID)?;
        let m = model::train(&train, vocab, &TrainConfig { lambda, ..base }, features)?;
        let eval = model::evaluate(&m, &test)?;
        println!("{features:8} lambda {lambda:<6} test accuracy {:.3} ({} instances)", eval.accuracy, test.len());
        results.push(eval);
    }
    let r = approx_randomization(&results[1].correct, &results[0].correct, 10_000, 0)?;
    println!("approximate randomization: p = {:.4} over {} iterations", r.p_value, r.iterations);
    Ok(())
}
