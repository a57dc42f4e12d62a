//! Loads a thread corpus with its dominance file and lists the related
//! interacting participant pairs. Without arguments a small synthetic
//! corpus is generated, written to a temporary directory and read back.
//!
//!     cargo run --example corpus_ripps -- corpus.jsonl dominance.tsv

use std::path::PathBuf;

use commitment_power::corpus::{corpus_stats, Corpus, SplitRatios};
use commitment_power::synth::{generate_corpus, SynthConfig};

fn main() -> commitment_power::Result<()> {
    let args: Vec<PathBuf> = std::env::args().skip(1).map(PathBuf::from).collect();
    let tmp = std::env::temp_dir().join("commitment-power-corpus-example");
    let (corpus_path, dominance_path) = match args.as_slice() {
        [c, d] => (c.clone(), d.clone()),
        _ => {
            let synth = generate_corpus(&SynthConfig::default().with_threads(25).with_seed(1))?;
            synth.corpus.save_threads(&tmp.join("corpus.jsonl"))?;
            synth.corpus.save_dominance(&tmp.join("dominance.tsv"))?;
            (tmp.join("corpus.jsonl"), tmp.join("dominance.tsv"))
        }
    };
    let (corpus, skipped) = Corpus::load(&corpus_path, &dominance_path, None, SplitRatios::default())?;
    for s in &skipped {
        println!("skipped line {}: {}", s.line, s.reason);
    }
    println!("{}\n", corpus_stats(&corpus));
    println!("thread\tp1\tp2\tgold\tsplit");
    for r in corpus.ripps().iter().take(15) {
        println!("{}\t{}\t{}\t{}\t{}", r.thread_id, r.p1, r.p2, r.gold, r.split);
    }
    Ok(())
}
