use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use commitment_power::lexicon::Lexicons;
use commitment_power::textproc::{detokenize, Pos, TextProcessor, Token};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    fs::read_to_string(path).unwrap()
}

fn processor() -> TextProcessor {
    TextProcessor::new(Arc::new(Lexicons::bundled()))
}

#[test]
fn tagger_accuracy_on_hand_tagged_fixture() {
    let tp = processor();
    let mut total = 0;
    let mut correct = 0;
    let mut misses = Vec::new();
    for line in fixture("pos_tagged.txt").lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let gold: Vec<(&str, Pos)> = line
            .split_whitespace()
            .map(|pair| {
                let (w, t) = pair.rsplit_once('/').unwrap();
                (w, t.parse::<Pos>().unwrap())
            })
            .collect();
        let words: Vec<&str> = gold.iter().map(|(w, _)| *w).collect();
        let sentence = tp.tokenize(&words.join(" "));
        assert_eq!(sentence.tokens.len(), gold.len(), "tokenization drift in {line:?}");
        for (tok, (w, tag)) in sentence.tokens.iter().zip(&gold) {
            total += 1;
            if tok.pos == *tag {
                correct += 1;
            } else {
                misses.push(format!("{w}: {} (gold {tag})", tok.pos));
            }
        }
    }
    let accuracy = correct as f64 / total as f64;
    assert!(total >= 200);
    eprintln!("tagger accuracy {accuracy:.3} over {total} tokens; misses: {misses:?}");
    assert!(accuracy >= 0.90);
}

#[test]
fn lemmatizer_matches_inflection_fixture() {
    let tp = processor();
    for line in fixture("inflections.tsv").lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let cols: Vec<&str> = line.split('\t').collect();
        let token = Token {
            surface: cols[0].to_string(),
            lemma: String::new(),
            pos: cols[1].parse().unwrap(),
            index: 0,
        };
        assert_eq!(tp.lemmatize(&token), cols[2], "{}", cols[0]);
    }
}

#[test]
fn open_class_set() {
    let open: Vec<Pos> = Pos::ALL.into_iter().filter(|p| p.is_open_class()).collect();
    assert_eq!(open, [Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv]);
}

const WORDS: &[&str] = &[
    "John", "will", "submit", "the", "report", ".", ",", "?", "!", "don't", "can't", "it's",
    "I'm", "(", ")", "maybe", "Mr.", "e.g.", "3.5", "50%", "we'll", "Sara", "says", "n't",
    "...", "\"", "ok", "budget;", "x-ray", "re:",
];

proptest! {
    #[test]
    fn tokenization_is_idempotent(idx in proptest::collection::vec(0..WORDS.len(), 0..25)) {
        let tp = processor();
        let text = idx.iter().map(|&i| WORDS[i]).collect::<Vec<_>>().join(" ");
        let first: Vec<String> = tp.tokenize(&text).tokens.into_iter().map(|t| t.surface).collect();
        let second: Vec<String> = tp.tokenize(&detokenize(&first)).tokens.into_iter().map(|t| t.surface).collect();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn every_token_gets_one_lowercase_lemma(idx in proptest::collection::vec(0..WORDS.len(), 1..25)) {
        let tp = processor();
        let text = idx.iter().map(|&i| WORDS[i]).collect::<Vec<_>>().join(" ");
        let s = tp.tokenize(&text);
        for (i, t) in s.tokens.iter().enumerate() {
            prop_assert_eq!(t.index, i);
            prop_assert!(!t.lemma.is_empty());
            prop_assert_eq!(t.lemma.clone(), t.lemma.to_lowercase());
        }
        prop_assert!(!(s.is_question && s.is_imperative));
    }

    #[test]
    fn split_sentences_covers_input(idx in proptest::collection::vec(0..WORDS.len(), 0..30)) {
        let tp = processor();
        let text = idx.iter().map(|&i| WORDS[i]).collect::<Vec<_>>().join(" ");
        let squash = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        let joined: String = tp.split_sentences(&text).iter().map(|s| squash(s)).collect();
        prop_assert_eq!(joined, squash(&text));
    }
}
