//! Checks whether belief-tagging errors depend on the writer's power role.
//! Gold labels come from a synthetic corpus; errors are injected first
//! independently of power, then for subordinates only.
//!
//!     cargo run --release --example bias_audit

use commitment_power::belief::{bias_audit, BeliefLabel, ErrorKind};
use commitment_power::corpus::Role;
use commitment_power::pipeline::Toolkit;
use commitment_power::synth::{generate_corpus, SynthConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corrupt(gold: &[BeliefLabel], power: &[Role], only: Option<Role>, rng: &mut ChaCha8Rng) -> Vec<BeliefLabel> {
    gold.iter()
        .zip(power)
        .map(|(&g, &role)| {
            if only.is_none_or(|r| r == role) && rng.random_bool(0.1) {
                let others: Vec<_> = BeliefLabel::ALL.into_iter().filter(|&l| l != g).collect();
                others[rng.random_range(0..others.len())]
            } else {
                g
            }
        })
        .collect()
}

fn main() -> commitment_power::Result<()> {
    let synth = generate_corpus(&SynthConfig::default().with_threads(300).with_seed(3))?;
    let tk = Toolkit::default();
    let (mut gold, mut power) = (Vec::new(), Vec::new());
    for r in &synth.ripps {
        let thread = synth.corpus.thread(&r.thread_id).expect("thread of ripp");
        for (p, role) in [(&r.p1, r.gold.p1_role()), (&r.p2, r.gold.p1_role().flip())] {
            for h in tk.participant_tags(thread, p).messages.into_iter().flat_map(|m| m.heads) {
                gold.push(h.label);
                power.push(role);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (name, only) in [("errors independent of power", None), ("errors on subordinates only", Some(Role::Subordinate))] {
        let predicted = corrupt(&gold, &power, only, &mut rng);
        let audit = bias_audit(&gold, &predicted, &power)?;
        println!("{name} ({} heads): audit {}", gold.len(), if audit.passes() { "passes" } else { "FAILS" });
        for t in &audit.tests {
            let kind = match t.kind {
                ErrorKind::FalsePositive => "false positive",
                ErrorKind::FalseNegative => "false negative",
            };
            println!("  {:3} {kind:14}  b {:+.3}  p {:.4}", t.label.as_str(), t.result.coefficient, t.result.p_value);
        }
    }
    Ok(())
}
