use std::sync::Arc;

use commitment_power::belief::{BeliefLabel, BeliefTagger, RuleBeliefTagger};
use commitment_power::lexicon::Lexicons;
use commitment_power::synth::{ADJECTIVES, NAMES, OBJECTS, TEMPLATES, VERBS};
use commitment_power::textproc::{detokenize, TextProcessor};

fn sorted(mut v: Vec<BeliefLabel>) -> Vec<BeliefLabel> {
    v.sort();
    v
}

/// Every slot value in every template position yields exactly the declared
/// labels, and the text splits into a single sentence with the template's
/// tokens.
#[test]
fn templates_are_labeled_by_construction() {
    let lex = Arc::new(Lexicons::bundled());
    let tp = TextProcessor::new(lex.clone());
    let tagger = RuleBeliefTagger::new(lex);
    let mut failures = Vec::new();
    for t in TEMPLATES {
        let n = NAMES.len().max(VERBS.len()).max(OBJECTS.len()).max(ADJECTIVES.len());
        for k in 0..n {
            let words: Vec<String> = t
                .text
                .split(' ')
                .enumerate()
                .map(|(i, w)| {
                    let s = match w {
                        "{NAME}" => NAMES[k % NAMES.len()].to_string(),
                        "{NAME2}" => NAMES[(k + 1) % NAMES.len()].to_string(),
                        "{VERB}" => VERBS[k % VERBS.len()].to_string(),
                        "{OBJ}" => OBJECTS[k % OBJECTS.len()].to_string(),
                        "{ADJ}" => ADJECTIVES[k % ADJECTIVES.len()].to_string(),
                        o => o.to_string(),
                    };
                    if i == 0 {
                        let mut c = s.chars();
                        c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
                    } else {
                        s
                    }
                })
                .collect();
            let text = detokenize(&words);
            let sentences = tp.analyze(&text);
            if sentences.len() != 1 || sentences[0].len() != words.len() {
                failures.push(format!("{text}: split into {} sentences", sentences.len()));
                continue;
            }
            let got = sorted(tagger.label_sentence(&sentences[0], 0).into_iter().map(|h| h.label).collect());
            let want = sorted(t.labels.to_vec());
            if got != want {
                let detail: Vec<String> = tagger
                    .label_sentence(&sentences[0], 0)
                    .iter()
                    .map(|h| format!("{}:{}:{}", sentences[0].tokens[h.token_index].surface, h.label, h.rule_fired))
                    .collect();
                failures.push(format!("{text}: want {want:?}, got {detail:?}"));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
