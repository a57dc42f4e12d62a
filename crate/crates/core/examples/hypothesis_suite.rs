//! Generates a corpus with planted belief-rate differences between
//! superiors and subordinates, tags it, and runs the four regressions.
//!
//!     cargo run --release --example hypothesis_suite -- [seed]

use commitment_power::belief::BeliefLabel;
use commitment_power::pipeline::Toolkit;
use commitment_power::stats::run_hypothesis_suite;
use commitment_power::synth::{generate_corpus, SynthConfig};

fn main() -> commitment_power::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let synth = generate_corpus(&SynthConfig::default().with_seed(seed))?;
    let tk = Toolkit::default();
    let observations = tk.belief_observations(&synth.corpus, &synth.ripps);
    let report = run_hypothesis_suite(&observations)?;

    println!("emitted heads per 100 tokens:");
    for (role, tally) in &synth.bookkeeping.emitted {
        let rates: Vec<String> = BeliefLabel::ALL.iter().map(|&l| format!("{l} {:.2}", tally.rate(l))).collect();
        println!("  {role:?}: {}", rates.join(", "));
    }
    println!("\n{}", report.to_tsv());
    for row in &report.rows {
        println!(
            "{} {}: {}",
            row.hypothesis,
            row.feature,
            if row.confirmed { "confirmed" } else { "not confirmed" }
        );
    }
    Ok(())
}
