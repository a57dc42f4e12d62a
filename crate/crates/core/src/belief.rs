//! Propositional heads, the four-way commitment labels, hedge counting and
//! per-participant aggregation.
//!
//! [`RuleBeliefTagger`] labels heads with a fixed cascade: NA, then ROB,
//! then NCB, with CB as the default. Each label carries the identifier of
//! the rule that produced it.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::corpus::{Message, Role};
use crate::error::{Error, Result};
use crate::lexicon::{Lexicons, PhraseSet};
use crate::stats::{self, RegressionResult};
use crate::textproc::{Pos, Sentence, TextProcessor, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BeliefLabel {
    #[serde(rename = "CB")]
    Cb,
    #[serde(rename = "NCB")]
    Ncb,
    #[serde(rename = "ROB")]
    Rob,
    #[serde(rename = "NA")]
    Na,
}

impl BeliefLabel {
    pub const ALL: [BeliefLabel; 4] = [
        BeliefLabel::Cb,
        BeliefLabel::Ncb,
        BeliefLabel::Rob,
        BeliefLabel::Na,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BeliefLabel::Cb => "CB",
            BeliefLabel::Ncb => "NCB",
            BeliefLabel::Rob => "ROB",
            BeliefLabel::Na => "NA",
        }
    }

    /// Prefix used in feature names such as `NCBCount`.
    pub fn camel(self) -> &'static str {
        self.as_str()
    }
}

impl fmt::Display for BeliefLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BeliefLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BeliefLabel::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::parse("belief label", format!("unknown label {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionalHead {
    pub sentence_ref: usize,
    pub token_index: usize,
    pub label: BeliefLabel,
    pub rule_fired: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeliefCounts {
    pub cb: usize,
    pub ncb: usize,
    pub rob: usize,
    pub na: usize,
    pub token_count: usize,
}

impl BeliefCounts {
    pub fn get(&self, label: BeliefLabel) -> usize {
        match label {
            BeliefLabel::Cb => self.cb,
            BeliefLabel::Ncb => self.ncb,
            BeliefLabel::Rob => self.rob,
            BeliefLabel::Na => self.na,
        }
    }

    pub fn add(&mut self, label: BeliefLabel) {
        match label {
            BeliefLabel::Cb => self.cb += 1,
            BeliefLabel::Ncb => self.ncb += 1,
            BeliefLabel::Rob => self.rob += 1,
            BeliefLabel::Na => self.na += 1,
        }
    }

    pub fn heads(&self) -> usize {
        self.cb + self.ncb + self.rob + self.na
    }

    pub fn merge(&mut self, other: &BeliefCounts) {
        self.cb += other.cb;
        self.ncb += other.ncb;
        self.rob += other.rob;
        self.na += other.na;
        self.token_count += other.token_count;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HedgeLexicon {
    pub propositional: PhraseSet,
    pub relational: PhraseSet,
}

impl HedgeLexicon {
    pub fn from_lexicons(lex: &Lexicons) -> Self {
        Self {
            propositional: lex.propositional_hedges.clone(),
            relational: lex.relational_hedges.clone(),
        }
    }
}

/// Counts maximal non-overlapping hedge phrases, longest match first.
/// Relational phrases are matched first so that "i think" is not also
/// counted by a shorter propositional entry.
pub fn count_hedges(sentence: &Sentence, lexicon: &HedgeLexicon) -> (usize, usize) {
    let words = sentence.lowercase_words();
    let mut covered = vec![false; words.len()];
    let relational = lexicon.relational.find_spans(&words);
    for &(s, l) in &relational {
        covered[s..s + l].iter_mut().for_each(|c| *c = true);
    }
    let mut propositional = 0;
    let mut i = 0;
    while i < words.len() {
        if covered[i] {
            i += 1;
            continue;
        }
        let free = covered[i..].iter().take_while(|c| !**c).count();
        match lexicon.propositional.longest_match_at(&words[..i + free], i) {
            Some(len) => {
                propositional += 1;
                i += len;
            }
            None => i += 1,
        }
    }
    (propositional, relational.len())
}

/// Head detection and labeling. Implementations must be deterministic.
pub trait BeliefTagger: Send + Sync {
    fn find_heads(&self, sentence: &Sentence) -> Vec<usize>;

    /// Label and rule identifier for a head returned by `find_heads`.
    fn classify_head(&self, sentence: &Sentence, head: usize) -> Result<(BeliefLabel, String)>;

    fn label_sentence(&self, sentence: &Sentence, sentence_ref: usize) -> Vec<PropositionalHead> {
        self.find_heads(sentence)
            .into_iter()
            .filter_map(|h| {
                self.classify_head(sentence, h).ok().map(|(label, rule)| PropositionalHead {
                    sentence_ref,
                    token_index: h,
                    label,
                    rule_fired: rule,
                })
            })
            .collect()
    }
}

const FIRST_PERSON: [&str; 4] = ["i", "we", "me", "us"];
const CONDITIONAL_OPENERS: [&str; 3] = ["if", "unless", "whether"];
const REGION_BREAKS: [&str; 7] = [",", ";", ":", "-", "(", ")", "--"];
const STRONG_EPISTEMIC: [&str; 2] = ["may", "might"];
const STATIVE_EPISTEMIC: [&str; 4] = ["could", "should", "must", "'d"];

/// A detected head: the labeled token and the verb it hangs from (the
/// copula for predicative adjectives and nouns, else the head itself).
#[derive(Clone, Copy, Debug)]
struct Head {
    token: usize,
    anchor: usize,
}

/// Clause-like region of a sentence between breaks.
#[derive(Clone, Debug)]
struct Region {
    start: usize,
    end: usize,
    opener: Option<String>,
    after_punct: bool,
}

pub struct RuleBeliefTagger {
    lex: Arc<Lexicons>,
    hedges: HedgeLexicon,
}

fn is_aux(t: &Token) -> bool {
    t.pos == Pos::Verb && matches!(t.lemma.as_str(), "be" | "have" | "do")
}

fn is_negation(t: &Token) -> bool {
    matches!(t.lemma.as_str(), "not" | "n't")
}

impl RuleBeliefTagger {
    pub fn new(lex: Arc<Lexicons>) -> Self {
        Self {
            hedges: HedgeLexicon::from_lexicons(&lex),
            lex,
        }
    }

    pub fn hedges(&self) -> &HedgeLexicon {
        &self.hedges
    }

    fn next_non_adv(tokens: &[Token], from: usize) -> Option<usize> {
        (from..tokens.len()).find(|&j| tokens[j].pos != Pos::Adv)
    }

    /// Whether the be/have/do at `i` governs a later verb.
    fn governs_verb(tokens: &[Token], i: usize) -> bool {
        let Some(j) = Self::next_non_adv(tokens, i + 1) else {
            return false;
        };
        if tokens[j].pos == Pos::Verb {
            return true;
        }
        // Inverted auxiliary: "did John submit", "has the team finished".
        let clause_initial = (0..i)
            .rev()
            .find(|&k| tokens[k].pos != Pos::Punct)
            .is_none_or(|k| matches!(tokens[k].pos, Pos::Wh | Pos::Conj));
        if !clause_initial {
            return false;
        }
        let mut k = j;
        let mut subject = 0;
        while k < tokens.len() && subject < 3 && matches!(tokens[k].pos, Pos::Pron | Pos::Det | Pos::Noun) {
            k += 1;
            subject += 1;
        }
        subject > 0
            && Self::next_non_adv(tokens, k).is_some_and(|m| tokens[m].pos == Pos::Verb && tokens[m].lemma != "be")
    }

    /// Predicative complement of the copula at `i`, if any.
    fn predicative(tokens: &[Token], i: usize) -> Option<usize> {
        let mut k = i + 1;
        while k < tokens.len() && tokens[k].pos == Pos::Adv {
            k += 1;
        }
        if k < tokens.len() && tokens[k].pos == Pos::Det {
            k += 1;
        }
        let mut last_adj = None;
        while k < tokens.len() && matches!(tokens[k].pos, Pos::Adj | Pos::Adv) {
            if tokens[k].pos == Pos::Adj {
                last_adj = Some(k);
            }
            k += 1;
        }
        let mut last_noun = None;
        while k < tokens.len() && tokens[k].pos == Pos::Noun {
            last_noun = Some(k);
            k += 1;
        }
        last_noun.or(last_adj)
    }

    fn heads(&self, sentence: &Sentence) -> Vec<Head> {
        let tokens = &sentence.tokens;
        let mut heads = Vec::new();
        for (i, t) in tokens.iter().enumerate() {
            if t.pos != Pos::Verb {
                continue;
            }
            if is_aux(t) && Self::governs_verb(tokens, i) {
                continue;
            }
            if t.lemma == "be" {
                let token = Self::predicative(tokens, i).unwrap_or(i);
                heads.push(Head { token, anchor: i });
            } else {
                heads.push(Head { token: i, anchor: i });
            }
        }
        heads
    }

    fn regions(tokens: &[Token]) -> Vec<Region> {
        let mut regions = Vec::new();
        let mut current = Region {
            start: 0,
            end: 0,
            opener: None,
            after_punct: false,
        };
        let first_content = tokens.iter().position(|t| t.pos != Pos::Punct);
        if let Some(f) = first_content {
            if tokens[f].pos == Pos::Conj {
                current.opener = Some(tokens[f].lower());
            }
        }
        for (i, t) in tokens.iter().enumerate() {
            let punct_break = t.pos == Pos::Punct && REGION_BREAKS.contains(&t.surface.as_str());
            let conj_break = t.pos == Pos::Conj && Some(i) != first_content;
            if punct_break || conj_break {
                current.end = i;
                regions.push(current);
                current = Region {
                    start: i,
                    end: i,
                    opener: conj_break.then(|| t.lower()),
                    after_punct: punct_break,
                };
                if punct_break {
                    if let Some(j) = (i + 1..tokens.len()).find(|&j| tokens[j].pos != Pos::Punct) {
                        if tokens[j].pos == Pos::Conj {
                            current.opener = Some(tokens[j].lower());
                        }
                    }
                }
            }
        }
        current.end = tokens.len();
        regions.push(current);
        regions
    }

    fn region_of(regions: &[Region], i: usize) -> usize {
        regions
            .iter()
            .rposition(|r| r.start <= i && i < r.end.max(r.start + 1))
            .unwrap_or(0)
    }

    /// Heads governing `h`: each is the nearest earlier head in the same
    /// region as its dependent.
    fn chain(heads: &[Head], regions: &[Region], h: usize) -> Vec<usize> {
        let region = Self::region_of(regions, heads[h].anchor);
        let mut out: Vec<usize> = (0..heads.len())
            .filter(|&g| heads[g].anchor < heads[h].anchor && Self::region_of(regions, heads[g].anchor) == region)
            .collect();
        out.reverse();
        out
    }

    /// Subject of the verb at `anchor`: the first token to its left after
    /// skipping adverbs, modals, auxiliaries and negation.
    fn subject(tokens: &[Token], anchor: usize) -> Option<&Token> {
        let mut k = anchor;
        while k > 0 {
            k -= 1;
            let t = &tokens[k];
            if t.pos == Pos::Adv || t.pos == Pos::Modal || is_aux(t) || is_negation(t) {
                continue;
            }
            return matches!(t.pos, Pos::Pron | Pos::Noun).then_some(t);
        }
        None
    }

    fn first_person_subject(tokens: &[Token], anchor: usize) -> bool {
        Self::subject(tokens, anchor).is_some_and(|t| FIRST_PERSON.contains(&t.lower().as_str()))
    }

    fn desire_lemma(&self, tokens: &[Token], anchor: usize) -> Option<String> {
        let t = &tokens[anchor];
        if t.lemma == "like" {
            let prev = (0..anchor).rev().find(|&k| tokens[k].pos != Pos::Adv);
            if prev.is_some_and(|k| matches!(tokens[k].lower().as_str(), "would" | "'d")) {
                return Some("would like".into());
            }
            return None;
        }
        self.lex
            .desire_predicates
            .contains(&[t.lemma.as_str()])
            .then(|| t.lemma.clone())
    }

    fn modal_in_group(tokens: &[Token], anchor: usize) -> Option<String> {
        let mut k = anchor;
        while k > 0 {
            k -= 1;
            let t = &tokens[k];
            if t.pos == Pos::Modal {
                return Some(t.lower());
            }
            if !(t.pos == Pos::Adv || is_aux(t) || is_negation(t)) {
                return None;
            }
        }
        None
    }

    fn is_stative(&self, tokens: &[Token], head: Head) -> bool {
        head.token != head.anchor || self.lex.stative_predicates.contains(&tokens[head.token].lemma)
    }

    fn region_is_imperative(tokens: &[Token], region: &Region) -> bool {
        if !region.after_punct {
            return false;
        }
        let mut k = region.start + 1;
        let mut polite = false;
        while k < region.end && matches!(tokens[k].lower().as_str(), "please" | "kindly" | "just") {
            polite = true;
            k += 1;
        }
        polite && k < region.end && tokens[k].pos == Pos::Verb && tokens[k].lower() == tokens[k].lemma
    }

    fn classify(&self, sentence: &Sentence, heads: &[Head], h: usize) -> (BeliefLabel, String) {
        let tokens = &sentence.tokens;
        let regions = Self::regions(tokens);
        let head = heads[h];
        let region = &regions[Self::region_of(&regions, head.anchor)];
        let chain = Self::chain(heads, &regions, h);

        // Non-belief contexts.
        if sentence.is_question {
            return (BeliefLabel::Na, "na:question".into());
        }
        if sentence.is_imperative || Self::region_is_imperative(tokens, region) {
            return (BeliefLabel::Na, "na:imperative".into());
        }
        for &g in &chain {
            if let Some(lemma) = self.desire_lemma(tokens, heads[g].anchor) {
                return (BeliefLabel::Na, format!("na:desire-complement:{lemma}"));
            }
        }
        if let Some(opener) = region.opener.as_deref().filter(|o| CONDITIONAL_OPENERS.contains(o)) {
            return (BeliefLabel::Na, format!("na:conditional:{opener}"));
        }

        // Beliefs attributed to someone else.
        for &g in &chain {
            let pred = &tokens[heads[g].anchor];
            if self.lex.report_predicates.contains(&pred.lemma) {
                if let Some(subj) = Self::subject(tokens, heads[g].anchor) {
                    if !FIRST_PERSON.contains(&subj.lower().as_str()) {
                        return (BeliefLabel::Rob, format!("rob:report-complement:{}", pred.lemma));
                    }
                }
            }
        }

        // Weakened commitment.
        if let Some(modal) = Self::modal_in_group(tokens, head.anchor) {
            let epistemic = STRONG_EPISTEMIC.contains(&modal.as_str())
                || (STATIVE_EPISTEMIC.contains(&modal.as_str()) && self.is_stative(tokens, head));
            if epistemic {
                return (BeliefLabel::Ncb, format!("ncb:epistemic-modal:{modal}"));
            }
        }
        let words = sentence.lowercase_words();
        let scoped_regions: Vec<usize> = std::iter::once(h)
            .chain(chain.iter().copied())
            .map(|g| Self::region_of(&regions, heads[g].anchor))
            .collect();
        for (start, len) in self.hedges.propositional.find_spans(&words) {
            let inside = (start..start + len).contains(&head.token);
            if !inside && scoped_regions.contains(&Self::region_of(&regions, start)) {
                return (BeliefLabel::Ncb, format!("ncb:hedge:{}", words[start..start + len].join(" ")));
            }
        }
        for &g in &chain {
            let pred = &tokens[heads[g].anchor];
            if self.lex.weak_belief_predicates.contains(&pred.lemma)
                && Self::first_person_subject(tokens, heads[g].anchor)
            {
                return (BeliefLabel::Ncb, format!("ncb:weak-belief:{}", pred.lemma));
            }
        }

        (BeliefLabel::Cb, "cb:default".into())
    }
}

impl BeliefTagger for RuleBeliefTagger {
    /// Main verbs and predicative adjectives or nouns after a copula.
    /// Auxiliaries governing another verb and modals are never heads.
    fn find_heads(&self, sentence: &Sentence) -> Vec<usize> {
        self.heads(sentence).into_iter().map(|h| h.token).collect()
    }

    fn classify_head(&self, sentence: &Sentence, head: usize) -> Result<(BeliefLabel, String)> {
        let heads = self.heads(sentence);
        let h = heads.iter().position(|x| x.token == head).ok_or_else(|| Error::NotAHead {
            index: head,
            token: sentence
                .tokens
                .get(head)
                .map_or_else(|| "<out of range>".to_string(), |t| t.surface.clone()),
        })?;
        Ok(self.classify(sentence, &heads, h))
    }

    fn label_sentence(&self, sentence: &Sentence, sentence_ref: usize) -> Vec<PropositionalHead> {
        let heads = self.heads(sentence);
        (0..heads.len())
            .map(|h| {
                let (label, rule_fired) = self.classify(sentence, &heads, h);
                PropositionalHead {
                    sentence_ref,
                    token_index: heads[h].token,
                    label,
                    rule_fired,
                }
            })
            .collect()
    }
}

/// Analysis of one message.
#[derive(Clone, Debug, PartialEq)]
pub struct MessageTags {
    pub message_id: String,
    pub sentences: Vec<Sentence>,
    pub heads: Vec<PropositionalHead>,
}

impl MessageTags {
    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Sentence::len).sum()
    }

    /// Label of the head at `(sentence, token)`, if that token is a head.
    pub fn label_at(&self, sentence: usize, token: usize) -> Option<BeliefLabel> {
        self.heads
            .iter()
            .find(|h| h.sentence_ref == sentence && h.token_index == token)
            .map(|h| h.label)
    }
}

pub fn tag_message(processor: &TextProcessor, tagger: &dyn BeliefTagger, message: &Message) -> MessageTags {
    let sentences = processor.analyze(&message.body);
    let heads = sentences
        .iter()
        .enumerate()
        .flat_map(|(i, s)| tagger.label_sentence(s, i))
        .collect();
    MessageTags {
        message_id: message.id.clone(),
        sentences,
        heads,
    }
}

/// Tags of everything one participant sent in one thread. `counts` is
/// `None` (undefined) when nothing was sent or every body was empty.
#[derive(Clone, Debug, PartialEq)]
pub struct ParticipantTags {
    pub counts: Option<BeliefCounts>,
    pub messages: Vec<MessageTags>,
}

pub fn aggregate(messages: Vec<MessageTags>) -> ParticipantTags {
    let mut counts = BeliefCounts::default();
    for m in &messages {
        counts.token_count += m.token_count();
        for h in &m.heads {
            counts.add(h.label);
        }
    }
    ParticipantTags {
        counts: (counts.token_count > 0).then_some(counts),
        messages,
    }
}

pub fn tag_messages(processor: &TextProcessor, tagger: &dyn BeliefTagger, messages: &[&Message]) -> ParticipantTags {
    aggregate(messages.iter().map(|m| tag_message(processor, tagger, m)).collect())
}

pub const STANDOFF_HEADER: &str = "message_id\tsentence_idx\ttoken_idx\tlabel\trule_fired\ttoken";

/// Per-head standoff records. The trailing token column is for readability.
pub fn standoff_tsv<'a, I>(messages: I) -> String
where
    I: IntoIterator<Item = &'a MessageTags>,
{
    let mut out = String::from(STANDOFF_HEADER);
    out.push('\n');
    for m in messages {
        for h in &m.heads {
            let token = &m.sentences[h.sentence_ref].tokens[h.token_index].surface;
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                m.message_id, h.sentence_ref, h.token_index, h.label, h.rule_fired, token
            ));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorKind {
    FalsePositive,
    FalseNegative,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditTest {
    pub label: BeliefLabel,
    pub kind: ErrorKind,
    pub result: RegressionResult,
}

/// Null significance level for the audit.
pub const AUDIT_ALPHA: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiasAudit {
    pub tests: Vec<AuditTest>,
}

impl BiasAudit {
    /// True when every test accepts the null of power-independent errors.
    pub fn passes(&self) -> bool {
        self.tests.iter().all(|t| t.result.p_value > AUDIT_ALPHA)
    }
}

fn error_test(y: &[bool], x: &[f64]) -> Result<RegressionResult> {
    let n = y.len();
    let positives = y.iter().filter(|&&v| v).count();
    let x_varies = x.iter().any(|&v| v != x[0]);
    if n == 0 || positives == 0 || positives == n || !x_varies {
        return Ok(RegressionResult::null(n));
    }
    match stats::logistic_regression(y, x) {
        Err(Error::Separation) => Ok(stats::separated_lr(y, x)),
        other => other,
    }
}

/// Tests whether tagging errors depend on the author's power role. For each
/// label, false positives are examined among heads whose gold label is
/// different and false negatives among heads carrying that gold label; the
/// error indicator is regressed on `x = 1` for subordinates.
pub fn bias_audit(gold: &[BeliefLabel], predicted: &[BeliefLabel], power: &[Role]) -> Result<BiasAudit> {
    if gold.len() != predicted.len() || gold.len() != power.len() {
        return Err(Error::Misaligned(format!(
            "{} gold labels, {} predictions, {} power roles",
            gold.len(),
            predicted.len(),
            power.len()
        )));
    }
    let mut tests = Vec::new();
    for label in BeliefLabel::ALL {
        for kind in [ErrorKind::FalsePositive, ErrorKind::FalseNegative] {
            let mut y = Vec::new();
            let mut x = Vec::new();
            for ((&g, &p), &role) in gold.iter().zip(predicted).zip(power) {
                let (in_population, error) = match kind {
                    ErrorKind::FalsePositive => (g != label, p == label),
                    ErrorKind::FalseNegative => (g == label, p != label),
                };
                if in_population {
                    y.push(error);
                    x.push(if role == Role::Subordinate { 1.0 } else { 0.0 });
                }
            }
            tests.push(AuditTest {
                label,
                kind,
                result: error_test(&y, &x)?,
            });
        }
    }
    Ok(BiasAudit { tests })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (TextProcessor, RuleBeliefTagger) {
        let lex = Arc::new(Lexicons::bundled());
        (TextProcessor::new(lex.clone()), RuleBeliefTagger::new(lex))
    }

    fn labels(text: &str) -> Vec<(String, BeliefLabel)> {
        let (tp, tagger) = setup();
        let s = tp.tokenize(text);
        tagger
            .label_sentence(&s, 0)
            .into_iter()
            .map(|h| (s.tokens[h.token_index].lower(), h.label))
            .collect()
    }

    fn label_of(text: &str, word: &str) -> BeliefLabel {
        labels(text)
            .into_iter()
            .find(|(w, _)| w == word)
            .unwrap_or_else(|| panic!("{word} is not a head in {text:?}: {:?}", labels(text)))
            .1
    }

    #[test]
    fn heads_of_examples() {
        let (tp, tagger) = setup();
        let heads = |t: &str| {
            let s = tp.tokenize(t);
            tagger
                .find_heads(&s)
                .into_iter()
                .map(|i| s.tokens[i].lower())
                .collect::<Vec<_>>()
        };
        assert_eq!(heads("John will submit the report."), ["submit"]);
        assert_eq!(heads("I know that John is capable."), ["know", "capable"]);
        assert!(heads("The report.").is_empty());
        assert_eq!(heads("The report has been submitted."), ["submitted"]);
        assert_eq!(heads("Did John submit the report?"), ["submit"]);
        assert_eq!(heads("The report is on the desk."), ["is"]);
    }

    #[test]
    fn example_frames() {
        use BeliefLabel::*;
        assert_eq!(label_of("John will submit the report.", "submit"), Cb);
        assert_eq!(label_of("I know that John is capable.", "capable"), Cb);
        assert_eq!(label_of("John may submit the report.", "submit"), Ncb);
        assert_eq!(label_of("I guess John is capable.", "capable"), Ncb);
        assert_eq!(label_of("Sara says John will submit the report.", "submit"), Rob);
        assert_eq!(label_of("Sara thinks John may be capable.", "capable"), Rob);
        assert_eq!(label_of("I need John to submit the report.", "submit"), Na);
        assert_eq!(label_of("Will John be capable?", "capable"), Na);
        assert_eq!(label_of("I need the report by tomorrow.", "need"), Cb);
        assert_eq!(label_of("If I need the report, I will let you know.", "need"), Na);
    }

    #[test]
    fn first_person_report_is_not_rob() {
        assert_eq!(label_of("I say John will submit the report.", "submit"), BeliefLabel::Cb);
        assert_eq!(label_of("I know that Sara says John is capable.", "capable"), BeliefLabel::Rob);
    }

    #[test]
    fn deontic_modal_on_event_is_not_ncb() {
        assert_eq!(label_of("John should submit the report.", "submit"), BeliefLabel::Cb);
        assert_eq!(label_of("John should be capable.", "capable"), BeliefLabel::Ncb);
    }

    #[test]
    fn imperative_and_polite_clauses() {
        assert_eq!(label_of("Submit the report.", "submit"), BeliefLabel::Na);
        assert_eq!(label_of("Thanks, please send the file.", "send"), BeliefLabel::Na);
    }

    #[test]
    fn classify_rejects_non_heads() {
        let (tp, tagger) = setup();
        let s = tp.tokenize("John will submit the report.");
        assert!(matches!(tagger.classify_head(&s, 1), Err(Error::NotAHead { .. })));
    }

    #[test]
    fn hedge_counts() {
        let (tp, tagger) = setup();
        let h = tagger.hedges();
        assert_eq!(count_hedges(&tp.tokenize("maybe we should go"), h), (1, 0));
        assert_eq!(count_hedges(&tp.tokenize("i guess i guess"), h), (2, 0));
        assert_eq!(count_hedges(&tp.tokenize("I think it is sort of done"), h), (1, 1));
    }

    #[test]
    fn rule_ids_name_the_trigger() {
        let (tp, tagger) = setup();
        let s = tp.tokenize("I guess John is capable.");
        let hs = tagger.label_sentence(&s, 0);
        assert!(hs.iter().any(|h| h.rule_fired == "ncb:hedge:i guess"));
    }

    #[test]
    fn identical_labels_pass_audit() {
        let gold = vec![BeliefLabel::Cb, BeliefLabel::Na, BeliefLabel::Ncb, BeliefLabel::Rob];
        let power = vec![Role::Superior, Role::Subordinate, Role::Superior, Role::Subordinate];
        let audit = bias_audit(&gold, &gold, &power).unwrap();
        assert_eq!(audit.tests.len(), 8);
        assert!(audit.passes());
        assert!(bias_audit(&gold, &gold[..3], &power).is_err());
    }
}
