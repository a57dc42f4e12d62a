//! Trains on appended lexical features and lists the head lemmas whose
//! belief versions disagree most about who holds power.
//!
//!     cargo run --release --example weight_variation

use commitment_power::corpus::Split;
use commitment_power::features::{Vocabulary, NGRAM_DF_FLOOR};
use commitment_power::model::{self, weight_report_tsv, TrainConfig};
use commitment_power::pipeline::{in_split, Toolkit};
use commitment_power::synth::{generate_belief_contrast_corpus, ContrastConfig};

fn main() -> commitment_power::Result<()> {
    let synth = generate_belief_contrast_corpus(&ContrastConfig::default())?;
    let tk = Toolkit::default();
    let instances = tk.instances(&synth.corpus, &synth.ripps, &"LNapnd".parse()?);
    let train = in_split(&instances, Split::Train);
    let vocab = Vocabulary::build(train.iter(), NGRAM_DF_FLOOR);
    let m = model::train(&train, vocab, &TrainConfig::default(), "LNapnd")?;
    // Positive weights mark the speaker as the superior.
    print!("{}", weight_report_tsv(&model::weight_variation_report(&m, 8)?));
    Ok(())
}
