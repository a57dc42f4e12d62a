//! Line-delimited word lists used by the tagger, the belief rules and the
//! dialog-act heuristics.
//!
//! Every list ships with the crate. [`Lexicons::from_dir`] replaces any list
//! for which a file of the same name exists in the given directory, so a
//! single entry can be tuned without copying the rest.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::textproc::Pos;

const CLOSED_CLASS: &str = include_str!("../lexicons/closed_class.txt");
const IRREGULAR_LEMMAS: &str = include_str!("../lexicons/irregular_lemmas.txt");
const IRREGULAR_PLURALS: &str = include_str!("../lexicons/irregular_plurals.txt");
const ABBREVIATIONS: &str = include_str!("../lexicons/abbreviations.txt");
const VERBS: &str = include_str!("../lexicons/verbs.txt");
const ADJECTIVES: &str = include_str!("../lexicons/adjectives.txt");
const HEDGES_PROPOSITIONAL: &str = include_str!("../lexicons/hedges_propositional.txt");
const HEDGES_RELATIONAL: &str = include_str!("../lexicons/hedges_relational.txt");
const DESIRE: &str = include_str!("../lexicons/desire_predicates.txt");
const REPORT: &str = include_str!("../lexicons/report_predicates.txt");
const WEAK_BELIEF: &str = include_str!("../lexicons/weak_belief_predicates.txt");
const STATIVE: &str = include_str!("../lexicons/stative_predicates.txt");
const CONVENTIONAL: &str = include_str!("../lexicons/conventional.txt");
const ODP_CUES: &str = include_str!("../lexicons/odp_cues.txt");

/// Longest phrase accepted in any phrase list.
pub const MAX_PHRASE_LEN: usize = 4;

/// A set of lowercase phrases of one to four tokens, matched against token
/// sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhraseSet {
    phrases: HashSet<Vec<String>>,
}

impl PhraseSet {
    pub fn new<I, S>(phrases: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = HashSet::new();
        for phrase in phrases {
            let words: Vec<String> = phrase
                .as_ref()
                .split_whitespace()
                .map(str::to_lowercase)
                .collect();
            if words.is_empty() || words.len() > MAX_PHRASE_LEN {
                return Err(Error::Lexicon(format!(
                    "phrase {:?} must have 1-{MAX_PHRASE_LEN} tokens",
                    phrase.as_ref()
                )));
            }
            set.insert(words);
        }
        Ok(Self { phrases: set })
    }

    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    pub fn contains(&self, phrase: &[&str]) -> bool {
        let key: Vec<String> = phrase.iter().map(|w| w.to_lowercase()).collect();
        self.phrases.contains(&key)
    }

    pub fn phrases(&self) -> impl Iterator<Item = &Vec<String>> {
        self.phrases.iter()
    }

    /// Length of the longest phrase that starts at `start`, if any.
    pub fn longest_match_at(&self, words: &[String], start: usize) -> Option<usize> {
        let max = MAX_PHRASE_LEN.min(words.len().saturating_sub(start));
        (1..=max)
            .rev()
            .find(|&len| self.phrases.contains(&words[start..start + len]))
    }

    /// Spans `(start, len)` of maximal non-overlapping matches, scanning left
    /// to right and preferring the longest phrase at each position.
    pub fn find_spans(&self, words: &[String]) -> Vec<(usize, usize)> {
        let mut spans = Vec::new();
        let mut i = 0;
        while i < words.len() {
            match self.longest_match_at(words, i) {
                Some(len) => {
                    spans.push((i, len));
                    i += len;
                }
                None => i += 1,
            }
        }
        spans
    }
}

/// All bundled word lists.
#[derive(Clone, Debug)]
pub struct Lexicons {
    pub closed_class: HashMap<String, Pos>,
    pub irregular_lemmas: HashMap<String, String>,
    pub irregular_plurals: HashMap<String, String>,
    pub abbreviations: HashSet<String>,
    pub verbs: HashSet<String>,
    pub adjectives: HashSet<String>,
    pub propositional_hedges: PhraseSet,
    pub relational_hedges: PhraseSet,
    pub desire_predicates: PhraseSet,
    pub report_predicates: HashSet<String>,
    pub weak_belief_predicates: HashSet<String>,
    pub stative_predicates: HashSet<String>,
    pub conventional: PhraseSet,
    pub odp_cues: PhraseSet,
}

fn entries(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn word_set(text: &str) -> HashSet<String> {
    entries(text).map(str::to_lowercase).collect()
}

fn pair_map(name: &str, text: &str) -> Result<HashMap<String, String>> {
    entries(text)
        .map(|line| {
            let mut parts = line.split('\t');
            match (parts.next(), parts.next()) {
                (Some(k), Some(v)) => Ok((k.trim().to_lowercase(), v.trim().to_lowercase())),
                _ => Err(Error::Lexicon(format!("{name}: expected two columns in {line:?}"))),
            }
        })
        .collect()
}

fn closed_class_map(text: &str) -> Result<HashMap<String, Pos>> {
    let pairs = pair_map("closed_class", text)?;
    pairs
        .into_iter()
        .map(|(word, tag)| {
            let pos = tag
                .to_uppercase()
                .parse::<Pos>()
                .map_err(|_| Error::Lexicon(format!("closed_class: unknown tag {tag:?}")))?;
            Ok((word, pos))
        })
        .collect()
}

fn phrase_set(text: &str) -> Result<PhraseSet> {
    PhraseSet::new(entries(text))
}

impl Lexicons {
    /// The lists compiled into the crate.
    pub fn bundled() -> Self {
        Self::from_sources(|_, default| Ok(default.to_string()))
            .expect("bundled lexicons are well formed")
    }

    /// Bundled lists, with each file present in `dir` taking precedence.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        if !dir.is_dir() {
            return Err(Error::Lexicon(format!(
                "lexicon directory {} does not exist",
                dir.display()
            )));
        }
        Self::from_sources(|file, default| {
            let path = dir.join(file);
            if path.exists() {
                fs::read_to_string(&path).map_err(|e| Error::io(&path, e))
            } else {
                Ok(default.to_string())
            }
        })
    }

    fn from_sources<F>(read: F) -> Result<Self>
    where
        F: Fn(&str, &str) -> Result<String>,
    {
        Ok(Self {
            closed_class: closed_class_map(&read("closed_class.txt", CLOSED_CLASS)?)?,
            irregular_lemmas: pair_map(
                "irregular_lemmas",
                &read("irregular_lemmas.txt", IRREGULAR_LEMMAS)?,
            )?,
            irregular_plurals: pair_map(
                "irregular_plurals",
                &read("irregular_plurals.txt", IRREGULAR_PLURALS)?,
            )?,
            abbreviations: word_set(&read("abbreviations.txt", ABBREVIATIONS)?),
            verbs: word_set(&read("verbs.txt", VERBS)?),
            adjectives: word_set(&read("adjectives.txt", ADJECTIVES)?),
            propositional_hedges: phrase_set(
                &read("hedges_propositional.txt", HEDGES_PROPOSITIONAL)?,
            )?,
            relational_hedges: phrase_set(&read("hedges_relational.txt", HEDGES_RELATIONAL)?)?,
            desire_predicates: phrase_set(&read("desire_predicates.txt", DESIRE)?)?,
            report_predicates: word_set(&read("report_predicates.txt", REPORT)?),
            weak_belief_predicates: word_set(&read("weak_belief_predicates.txt", WEAK_BELIEF)?),
            stative_predicates: word_set(&read("stative_predicates.txt", STATIVE)?),
            conventional: phrase_set(&read("conventional.txt", CONVENTIONAL)?)?,
            odp_cues: phrase_set(&read("odp_cues.txt", ODP_CUES)?)?,
        })
    }
}

impl Default for Lexicons {
    fn default() -> Self {
        Self::bundled()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_lists_load() {
        let lex = Lexicons::bundled();
        assert_eq!(lex.closed_class.get("may"), Some(&Pos::Modal));
        assert_eq!(lex.irregular_lemmas.get("says").map(String::as_str), Some("say"));
        assert!(lex.abbreviations.contains("mr"));
        assert!(lex.propositional_hedges.contains(&["i", "guess"]));
        assert!(lex.desire_predicates.contains(&["would", "like"]));
    }

    #[test]
    fn phrase_entries_are_lowercase_and_short() {
        let lex = Lexicons::bundled();
        for set in [&lex.propositional_hedges, &lex.relational_hedges, &lex.odp_cues] {
            for phrase in set.phrases() {
                assert!((1..=MAX_PHRASE_LEN).contains(&phrase.len()));
                assert!(phrase.iter().all(|w| *w == w.to_lowercase()));
            }
        }
    }

    #[test]
    fn overlong_phrase_is_rejected() {
        assert!(PhraseSet::new(["one two three four five"]).is_err());
    }

    #[test]
    fn spans_are_longest_first_and_disjoint() {
        let set = PhraseSet::new(["i guess", "guess", "sort of"]).unwrap();
        let words: Vec<String> = "i guess i guess sort of".split(' ').map(String::from).collect();
        assert_eq!(set.find_spans(&words), vec![(0, 2), (2, 2), (4, 2)]);
    }

    #[test]
    fn directory_override_replaces_single_list() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("report_predicates.txt"), "announce\n").unwrap();
        let lex = Lexicons::from_dir(dir.path()).unwrap();
        assert!(lex.report_predicates.contains("announce"));
        assert!(!lex.report_predicates.contains("say"));
        assert!(lex.verbs.contains("submit"));
    }
}
