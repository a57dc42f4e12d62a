//! Per-participant feature vectors for a pair: verbosity, position, thread
//! structure, dialog acts, overt displays of power, belief counts and
//! lemma/tag/mixed ngrams with optional belief-label appending.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::belief::{self, BeliefLabel, BeliefTagger, MessageTags};
use crate::corpus::{Gold, Message, Ripp, Split, Thread};
use crate::error::{Error, Result};
use crate::lexicon::Lexicons;
use crate::textproc::{Pos, Sentence, TextProcessor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Vrb,
    Pst,
    Thr,
    Dia,
    Odp,
    Ln,
    Pn,
    Mn,
    Bel,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Vrb,
        Family::Pst,
        Family::Thr,
        Family::Dia,
        Family::Odp,
        Family::Ln,
        Family::Pn,
        Family::Mn,
        Family::Bel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Vrb => "VRB",
            Family::Pst => "PST",
            Family::Thr => "THR",
            Family::Dia => "DIA",
            Family::Odp => "ODP",
            Family::Ln => "LN",
            Family::Pn => "PN",
            Family::Mn => "MN",
            Family::Bel => "BEL",
        }
    }

    pub fn is_ngram(self) -> bool {
        matches!(self, Family::Ln | Family::Pn | Family::Mn)
    }

    /// Family of a namespaced feature name such as `LN:i_need`.
    pub fn of_feature(name: &str) -> Option<Family> {
        let prefix = name.split(':').next()?;
        Family::ALL.into_iter().find(|f| f.as_str() == prefix)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AppendMode {
    #[default]
    Plain,
    Append,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureConfig {
    pub families: BTreeSet<Family>,
    pub ngram_orders: BTreeSet<usize>,
    pub append: BTreeMap<Family, AppendMode>,
}

impl Default for FeatureConfig {
    /// Every non-belief family with plain ngrams of orders 1-3.
    fn default() -> Self {
        "VRB+PST+THR+DIA+ODP+LN+PN+MN".parse().expect("valid default")
    }
}

impl FeatureConfig {
    pub fn mode(&self, family: Family) -> AppendMode {
        self.append.get(&family).copied().unwrap_or_default()
    }

    pub fn with_orders<I: IntoIterator<Item = usize>>(mut self, orders: I) -> Result<Self> {
        self.ngram_orders = orders.into_iter().collect();
        if self.ngram_orders.is_empty() {
            return Err(Error::FeatureConfig("no ngram orders".into()));
        }
        if let Some(&o) = self.ngram_orders.iter().find(|&&o| o < 1) {
            return Err(Error::NgramOrder(o));
        }
        Ok(self)
    }
}

impl FromStr for FeatureConfig {
    type Err = Error;

    /// `+`-separated family names; an `apnd` suffix on LN, PN or MN turns on
    /// belief appending. `LEX` stands for LN+PN+MN.
    fn from_str(s: &str) -> Result<Self> {
        let mut families = BTreeSet::new();
        let mut append = BTreeMap::new();
        for part in s.split('+').map(str::trim).filter(|p| !p.is_empty()) {
            let upper = part.to_uppercase();
            let (name, mode) = match upper.strip_suffix("APND") {
                Some(base) => (base.to_string(), AppendMode::Append),
                None => (upper.clone(), AppendMode::Plain),
            };
            if name == "LEX" {
                for f in [Family::Ln, Family::Pn, Family::Mn] {
                    families.insert(f);
                    append.insert(f, mode);
                }
                continue;
            }
            let family = Family::ALL
                .into_iter()
                .find(|f| f.as_str() == name)
                .ok_or_else(|| Error::FeatureConfig(format!("unknown family {part:?}")))?;
            if mode == AppendMode::Append && !family.is_ngram() {
                return Err(Error::FeatureConfig(format!(
                    "{part:?}: appending is only defined for LN, PN and MN"
                )));
            }
            families.insert(family);
            if family.is_ngram() {
                append.insert(family, mode);
            }
        }
        if families.is_empty() {
            return Err(Error::FeatureConfig(format!("no families in {s:?}")));
        }
        Ok(Self {
            families,
            ngram_orders: [1, 2, 3].into_iter().collect(),
            append,
        })
    }
}

impl fmt::Display for FeatureConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .families
            .iter()
            .map(|fam| match self.mode(*fam) {
                AppendMode::Append => format!("{fam}apnd"),
                AppendMode::Plain => fam.to_string(),
            })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

pub const SENTENCE_START: &str = "<s>";
pub const SENTENCE_END: &str = "</s>";

/// Ngrams of one sentence. `labels[i]` is the belief label of token `i` if
/// it is a propositional head. Orders of two or more are padded with one
/// boundary marker on each side.
pub fn build_ngrams(
    sentence: &Sentence,
    labels: &[Option<BeliefLabel>],
    family: Family,
    order: usize,
    mode: AppendMode,
) -> Result<Vec<String>> {
    if order < 1 {
        return Err(Error::NgramOrder(order));
    }
    if !family.is_ngram() {
        return Err(Error::FeatureConfig(format!("{family} has no ngrams")));
    }
    if labels.len() != sentence.len() {
        return Err(Error::Misaligned(format!(
            "{} labels for {} tokens",
            labels.len(),
            sentence.len()
        )));
    }
    let mut units: Vec<String> = sentence
        .tokens
        .iter()
        .zip(labels)
        .map(|(t, label)| {
            let base = match family {
                Family::Ln => t.lemma.clone(),
                Family::Pn => t.pos.as_str().to_string(),
                _ if t.pos.is_open_class() => t.pos.as_str().to_string(),
                _ => t.lemma.clone(),
            };
            match (mode, label) {
                (AppendMode::Append, Some(l)) => format!("{base}({l})"),
                _ => base,
            }
        })
        .collect();
    if order >= 2 {
        units.insert(0, SENTENCE_START.to_string());
        units.push(SENTENCE_END.to_string());
    }
    if units.len() < order {
        return Ok(Vec::new());
    }
    Ok(units.windows(order).map(|w| w.join("_")).collect())
}

/// Removes every `(LABEL)` suffix from an ngram.
pub fn strip_labels(ngram: &str) -> String {
    let mut out = ngram.to_string();
    for l in BeliefLabel::ALL {
        out = out.replace(&format!("({l})"), "");
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DialogAct {
    RequestAction,
    RequestInfo,
    Inform,
    Conventional,
}

impl DialogAct {
    pub const ALL: [DialogAct; 4] = [
        DialogAct::RequestAction,
        DialogAct::RequestInfo,
        DialogAct::Inform,
        DialogAct::Conventional,
    ];

    pub fn feature_name(self) -> &'static str {
        match self {
            DialogAct::RequestAction => "DIA:request_action",
            DialogAct::RequestInfo => "DIA:request_info",
            DialogAct::Inform => "DIA:inform",
            DialogAct::Conventional => "DIA:conventional",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DialogActCounts {
    pub request_action: usize,
    pub request_info: usize,
    pub inform: usize,
    pub conventional: usize,
}

impl DialogActCounts {
    pub fn get(&self, act: DialogAct) -> usize {
        match act {
            DialogAct::RequestAction => self.request_action,
            DialogAct::RequestInfo => self.request_info,
            DialogAct::Inform => self.inform,
            DialogAct::Conventional => self.conventional,
        }
    }

    fn add(&mut self, act: DialogAct) {
        match act {
            DialogAct::RequestAction => self.request_action += 1,
            DialogAct::RequestInfo => self.request_info += 1,
            DialogAct::Inform => self.inform += 1,
            DialogAct::Conventional => self.conventional += 1,
        }
    }
}

const REQUEST_MODALS: [&str; 4] = ["can", "could", "will", "would"];

/// Requests for action: imperatives, "please" before a verb, "can/could/
/// will/would you", "you must", and "need/want you to".
fn is_action_request(s: &Sentence) -> bool {
    if s.is_imperative {
        return true;
    }
    let t = &s.tokens;
    let w: Vec<String> = s.lowercase_words();
    for i in 0..t.len() {
        if w[i] == "please" && t[i + 1..].iter().take(2).any(|x| x.pos == Pos::Verb) {
            return true;
        }
        let next_is_you = w.get(i + 1).is_some_and(|x| x == "you");
        if next_is_you && t[i].pos == Pos::Modal && REQUEST_MODALS.contains(&w[i].as_str()) {
            return true;
        }
        if w[i] == "you" && w.get(i + 1).is_some_and(|x| x == "must") {
            return true;
        }
        if matches!(t[i].lemma.as_str(), "need" | "want")
            && next_is_you
            && w.get(i + 2).is_some_and(|x| x == "to")
        {
            return true;
        }
    }
    false
}

fn is_conventional(s: &Sentence, lex: &Lexicons) -> bool {
    let words = s.lowercase_words();
    let start = words
        .iter()
        .position(|w| !w.chars().all(|c| c.is_ascii_punctuation()))
        .unwrap_or(0);
    lex.conventional.longest_match_at(&words, start).is_some()
}

/// Dialog act of each sentence; `conventional` is only considered in the
/// first and last sentence of a message.
pub fn sentence_dialog_acts(sentences: &[Sentence], lex: &Lexicons) -> Vec<DialogAct> {
    let n = sentences.len();
    sentences
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if is_action_request(s) {
                DialogAct::RequestAction
            } else if s.is_question {
                DialogAct::RequestInfo
            } else if (i == 0 || i + 1 == n) && is_conventional(s, lex) {
                DialogAct::Conventional
            } else {
                DialogAct::Inform
            }
        })
        .collect()
}

pub fn count_dialog_acts(sentences: &[Sentence], lex: &Lexicons) -> DialogActCounts {
    let mut counts = DialogActCounts::default();
    for act in sentence_dialog_acts(sentences, lex) {
        counts.add(act);
    }
    counts
}

pub fn tag_dialog_acts(processor: &TextProcessor, message: &Message) -> DialogActCounts {
    count_dialog_acts(&processor.analyze(&message.body), processor.lexicons())
}

/// Whether a sentence is an overt display of power: an action request
/// carrying an urgency or obligation cue.
pub fn is_odp_sentence(s: &Sentence, lex: &Lexicons) -> bool {
    is_action_request(s) && !lex.odp_cues.find_spans(&s.lowercase_words()).is_empty()
}

pub fn count_odp(sentences: &[Sentence], lex: &Lexicons) -> usize {
    sentences.iter().filter(|s| is_odp_sentence(s, lex)).count()
}

pub fn detect_odp(processor: &TextProcessor, message: &Message) -> usize {
    count_odp(&processor.analyze(&message.body), processor.lexicons())
}

/// Everything extracted from one message, computed once per thread.
#[derive(Clone, Debug, PartialEq)]
pub struct MessageAnalysis {
    pub tags: MessageTags,
    pub dialog_acts: DialogActCounts,
    pub odp: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreadAnalysis {
    pub messages: Vec<MessageAnalysis>,
}

pub fn analyze_thread(processor: &TextProcessor, tagger: &dyn BeliefTagger, thread: &Thread) -> ThreadAnalysis {
    let lex = processor.lexicons();
    let messages = thread
        .messages
        .iter()
        .map(|m| {
            let tags = belief::tag_message(processor, tagger, m);
            MessageAnalysis {
                dialog_acts: count_dialog_acts(&tags.sentences, lex),
                odp: count_odp(&tags.sentences, lex),
                tags,
            }
        })
        .collect();
    ThreadAnalysis { messages }
}

/// Sparse named features of one participant. Zero values are never stored.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub instance: String,
    pub entries: BTreeMap<String, f64>,
}

impl FeatureVector {
    pub fn new(instance: impl Into<String>) -> Self {
        Self {
            instance: instance.into(),
            entries: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) {
        let name = name.into();
        if value == 0.0 {
            self.entries.remove(&name);
        } else {
            self.entries.insert(name, value);
        }
    }

    pub fn add(&mut self, name: &str, value: f64) {
        let v = self.entries.get(name).copied().unwrap_or(0.0) + value;
        self.set(name.to_string(), v);
    }

    pub fn get(&self, name: &str) -> f64 {
        self.entries.get(name).copied().unwrap_or(0.0)
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// Participants of a message: sender plus all recipients.
fn audience(m: &Message) -> HashSet<&str> {
    std::iter::once(m.sender.as_str())
        .chain(m.recipients().map(String::as_str))
        .collect()
}

fn participant_vector(
    thread: &Thread,
    analysis: &ThreadAnalysis,
    me: &str,
    other: &str,
    config: &FeatureConfig,
    instance: String,
) -> Option<FeatureVector> {
    let mine: Vec<usize> = (0..thread.messages.len())
        .filter(|&i| thread.messages[i].sender == me)
        .collect();
    if mine.is_empty() {
        return None;
    }
    let theirs: Vec<usize> = (0..thread.messages.len())
        .filter(|&i| thread.messages[i].sender == other)
        .collect();
    let tokens = |ix: &[usize]| -> usize { ix.iter().map(|&i| analysis.messages[i].tags.token_count()).sum() };
    let my_tokens = tokens(&mine) as f64;
    let their_tokens = tokens(&theirs) as f64;
    let n = thread.messages.len() as f64;
    let mut v = FeatureVector::new(instance);
    let on = |f: Family| config.families.contains(&f);

    if on(Family::Vrb) {
        let count = mine.len() as f64;
        v.set("VRB:msg_count", count);
        v.set("VRB:msg_ratio", count / (count + theirs.len() as f64));
        v.set("VRB:token_count", my_tokens);
        if my_tokens + their_tokens > 0.0 {
            v.set("VRB:token_ratio", my_tokens / (my_tokens + their_tokens));
        }
        v.set("VRB:tokens_per_msg", my_tokens / count);
    }
    if on(Family::Pst) {
        v.set("PST:initiator", if mine[0] == 0 { 1.0 } else { 0.0 });
        v.set("PST:first_pos", (mine[0] + 1) as f64 / n);
        v.set("PST:last_pos", (mine[mine.len() - 1] + 1) as f64 / n);
    }
    if on(Family::Thr) {
        let msgs: Vec<&Message> = mine.iter().map(|&i| &thread.messages[i]).collect();
        v.set("THR:mean_recipients", mean(msgs.iter().map(|m| m.recipients().count() as f64)));
        v.set("THR:mean_to", mean(msgs.iter().map(|m| m.to.len() as f64)));
        v.set("THR:mean_cc", mean(msgs.iter().map(|m| m.cc.len() as f64)));
        if !theirs.is_empty() {
            let replied: HashSet<&str> = msgs.iter().filter_map(|m| m.in_reply_to.as_deref()).collect();
            let answered = theirs
                .iter()
                .filter(|&&i| replied.contains(thread.messages[i].id.as_str()))
                .count();
            v.set("THR:reply_rate", answered as f64 / theirs.len() as f64);
        }
        let (mut adds, mut removes) = (false, false);
        for &i in &mine {
            let m = &thread.messages[i];
            let prior = match &m.in_reply_to {
                Some(id) => thread.messages.iter().find(|x| &x.id == id),
                None if i > 0 => Some(&thread.messages[i - 1]),
                None => None,
            };
            if let Some(prior) = prior {
                let now = audience(m);
                let before = audience(prior);
                adds |= now.difference(&before).next().is_some();
                removes |= before.difference(&now).next().is_some();
            }
        }
        v.set("THR:adds_participants", if adds { 1.0 } else { 0.0 });
        v.set("THR:removes_participants", if removes { 1.0 } else { 0.0 });
    }
    if on(Family::Dia) {
        for act in DialogAct::ALL {
            let c: usize = mine.iter().map(|&i| analysis.messages[i].dialog_acts.get(act)).sum();
            v.set(act.feature_name(), c as f64);
        }
    }
    if on(Family::Odp) {
        let c: usize = mine.iter().map(|&i| analysis.messages[i].odp).sum();
        v.set("ODP:count", c as f64);
    }
    if on(Family::Bel) {
        let mut counts = belief::BeliefCounts::default();
        for &i in &mine {
            for h in &analysis.messages[i].tags.heads {
                counts.add(h.label);
            }
        }
        for label in BeliefLabel::ALL {
            let c = counts.get(label) as f64;
            v.set(format!("BEL:{label}"), c);
            if my_tokens > 0.0 {
                v.set(format!("BEL:{label}_norm"), c / my_tokens);
            }
        }
    }
    for family in [Family::Ln, Family::Pn, Family::Mn] {
        if !on(family) {
            continue;
        }
        let mode = config.mode(family);
        for &i in &mine {
            let tags = &analysis.messages[i].tags;
            for (si, s) in tags.sentences.iter().enumerate() {
                let labels: Vec<Option<BeliefLabel>> = (0..s.len()).map(|ti| tags.label_at(si, ti)).collect();
                for &order in &config.ngram_orders {
                    let grams = build_ngrams(s, &labels, family, order, mode).unwrap_or_default();
                    for g in grams {
                        v.add(&format!("{family}:{g}"), 1.0);
                    }
                }
            }
        }
    }
    Some(v)
}

/// Feature vectors of `p1` and `p2`. A participant who sent nothing gets
/// `None`.
pub fn extract_pair_features(
    thread: &Thread,
    analysis: &ThreadAnalysis,
    ripp: &Ripp,
    config: &FeatureConfig,
) -> (Option<FeatureVector>, Option<FeatureVector>) {
    let id = ripp.id();
    (
        participant_vector(thread, analysis, &ripp.p1, &ripp.p2, config, format!("{id}#p1")),
        participant_vector(thread, analysis, &ripp.p2, &ripp.p1, config, format!("{id}#p2")),
    )
}

/// A classifier instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub id: String,
    pub split: Split,
    pub gold: Gold,
    pub features: BTreeMap<String, f64>,
}

impl Instance {
    /// `P1|` and `P2|` copies of each vector plus `R|` ratios
    /// `p1 / (p1 + p2)` for the non-ngram features.
    pub fn from_pair(ripp: &Ripp, p1: &FeatureVector, p2: &FeatureVector) -> Self {
        let mut features = BTreeMap::new();
        for (k, v) in &p1.entries {
            features.insert(format!("P1|{k}"), *v);
        }
        for (k, v) in &p2.entries {
            features.insert(format!("P2|{k}"), *v);
        }
        let numeric: BTreeSet<&String> = p1
            .entries
            .keys()
            .chain(p2.entries.keys())
            .filter(|k| !Family::of_feature(k).is_some_and(Family::is_ngram))
            .collect();
        for k in numeric {
            let (a, b) = (p1.get(k), p2.get(k));
            if a + b != 0.0 && a != 0.0 {
                features.insert(format!("R|{k}"), a / (a + b));
            }
        }
        Self {
            id: ripp.id(),
            split: ripp.split,
            gold: ripp.gold,
            features,
        }
    }
}

/// Analyzes every thread and builds one instance per RIPP whose members
/// both sent at least one message.
pub fn build_instances(
    processor: &TextProcessor,
    tagger: &dyn BeliefTagger,
    threads: &[Thread],
    ripps: &[Ripp],
    config: &FeatureConfig,
) -> Vec<Instance> {
    use rayon::prelude::*;
    let by_thread: HashMap<&str, &Thread> = threads.iter().map(|t| (t.id.as_str(), t)).collect();
    let mut wanted: Vec<&str> = ripps.iter().map(|r| r.thread_id.as_str()).collect();
    wanted.sort_unstable();
    wanted.dedup();
    let analyses: HashMap<&str, ThreadAnalysis> = wanted
        .par_iter()
        .filter_map(|id| by_thread.get(id).map(|t| (*id, analyze_thread(processor, tagger, t))))
        .collect();
    ripps
        .par_iter()
        .filter_map(|r| {
            let thread = by_thread.get(r.thread_id.as_str())?;
            let analysis = analyses.get(r.thread_id.as_str())?;
            match extract_pair_features(thread, analysis, r, config) {
                (Some(a), Some(b)) => Some(Instance::from_pair(r, &a, &b)),
                _ => None,
            }
        })
        .collect()
}

/// Minimum number of training instances an ngram must occur in.
pub const NGRAM_DF_FLOOR: usize = 2;

pub const VOCAB_SCHEMA_VERSION: u32 = 1;

/// Column index over training features with per-column max-abs scaling.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    pub names: Vec<String>,
    pub scale: Vec<f64>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

fn is_ngram_feature(name: &str) -> bool {
    let base = name.split_once('|').map_or(name, |(_, rest)| rest);
    Family::of_feature(base).is_some_and(Family::is_ngram)
}

impl Vocabulary {
    /// Built from the training instances in one sequential pass; ngram
    /// columns must occur in at least `df_floor` instances.
    pub fn build<'a, I>(train: I, df_floor: usize) -> Self
    where
        I: IntoIterator<Item = &'a Instance>,
    {
        let mut df: BTreeMap<&str, usize> = BTreeMap::new();
        let mut max_abs: BTreeMap<&str, f64> = BTreeMap::new();
        for inst in train {
            for (k, v) in &inst.features {
                *df.entry(k).or_default() += 1;
                let m = max_abs.entry(k).or_default();
                *m = m.max(v.abs());
            }
        }
        let mut names = Vec::new();
        let mut scale = Vec::new();
        for (k, d) in df {
            if is_ngram_feature(k) && d < df_floor {
                continue;
            }
            names.push(k.to_string());
            scale.push(max_abs[k].max(f64::MIN_POSITIVE));
        }
        Self::from_parts(names, scale)
    }

    pub fn from_parts(names: Vec<String>, scale: Vec<f64>) -> Self {
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        Self { names, scale, index }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Scaled sparse row; unknown features are dropped.
    pub fn vectorize(&self, features: &BTreeMap<String, f64>) -> Vec<(usize, f64)> {
        features
            .iter()
            .filter_map(|(k, v)| self.column(k).map(|c| (c, v / self.scale[c])))
            .collect()
    }

    /// `name<TAB>column<TAB>scale` lines after a version header.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# vocabulary v{VOCAB_SCHEMA_VERSION}\n");
        for (i, (n, s)) in self.names.iter().zip(&self.scale).enumerate() {
            out.push_str(&format!("{n}\t{i}\t{s}\n"));
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        let expected = format!("# vocabulary v{VOCAB_SCHEMA_VERSION}");
        if header != expected {
            return Err(Error::Schema {
                artifact: "vocabulary".into(),
                expected: VOCAB_SCHEMA_VERSION,
                found: header.to_string(),
            });
        }
        let mut names = Vec::new();
        let mut scale = Vec::new();
        for line in lines.filter(|l| !l.is_empty()) {
            let cols: Vec<&str> = line.split('\t').collect();
            let [name, col, s] = cols.as_slice() else {
                return Err(Error::parse("vocabulary", format!("bad line {line:?}")));
            };
            if col.parse::<usize>().ok() != Some(names.len()) {
                return Err(Error::parse("vocabulary", format!("column out of order in {line:?}")));
            }
            names.push(name.to_string());
            scale.push(s.parse().map_err(|_| Error::parse("vocabulary", format!("bad scale in {line:?}")))?);
        }
        Ok(Self::from_parts(names, scale))
    }
}

/// `instance_id<TAB>feature_name<TAB>value` triples.
pub fn export_triples(instances: &[Instance]) -> String {
    let mut out = String::new();
    for inst in instances {
        for (k, v) in &inst.features {
            out.push_str(&format!("{}\t{}\t{}\n", inst.id, k, v));
        }
    }
    out
}
