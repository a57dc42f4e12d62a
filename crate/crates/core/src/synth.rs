//! Seeded synthetic corpora with a planted hierarchy and planted
//! differences in how superiors and subordinates commit to what they write.
//!
//! Message bodies are assembled from a template bank whose belief labels
//! under [`RuleBeliefTagger`](crate::belief::RuleBeliefTagger) are fixed by
//! construction, so the generator knows exactly how many heads of each
//! label it emitted.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::belief::BeliefLabel;
use crate::corpus::{Corpus, Dominance, DominanceTuple, Message, Ripp, Role, Split, SplitRatios, Thread};
use crate::error::{Error, Result};
use crate::textproc::detokenize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Cb,
    Ncb,
    Rob,
    Na,
    Filler,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::Cb,
        Category::Ncb,
        Category::Rob,
        Category::Na,
        Category::Filler,
    ];
}

/// A sentence frame. Slots are `{NAME}`, `{NAME2}`, `{VERB}`, `{OBJ}` and
/// `{ADJ}`, each filled with one token; `labels` lists the label of every
/// head the frame produces.
#[derive(Clone, Copy, Debug)]
pub struct Template {
    pub category: Category,
    pub text: &'static str,
    pub labels: &'static [BeliefLabel],
}

use BeliefLabel::{Cb, Na, Ncb, Rob};

pub const TEMPLATES: &[Template] = &[
    Template { category: Category::Cb, text: "{NAME} will {VERB} the {OBJ} .", labels: &[Cb] },
    Template { category: Category::Cb, text: "The {OBJ} is {ADJ} .", labels: &[Cb] },
    Template { category: Category::Cb, text: "I know that {NAME} is {ADJ} .", labels: &[Cb, Cb] },
    Template { category: Category::Cb, text: "We will {VERB} the {OBJ} today .", labels: &[Cb] },
    Template { category: Category::Ncb, text: "{NAME} may {VERB} the {OBJ} .", labels: &[Ncb] },
    Template { category: Category::Ncb, text: "{NAME} might {VERB} the {OBJ} .", labels: &[Ncb] },
    Template { category: Category::Ncb, text: "Maybe {NAME} will {VERB} the {OBJ} .", labels: &[Ncb] },
    Template { category: Category::Ncb, text: "The {OBJ} might be {ADJ} .", labels: &[Ncb] },
    Template { category: Category::Ncb, text: "I guess the {OBJ} is {ADJ} .", labels: &[Cb, Ncb] },
    Template { category: Category::Rob, text: "{NAME2} says {NAME} will {VERB} the {OBJ} .", labels: &[Cb, Rob] },
    Template { category: Category::Rob, text: "{NAME2} thinks the {OBJ} may be {ADJ} .", labels: &[Cb, Rob] },
    Template { category: Category::Rob, text: "{NAME2} told me that the {OBJ} is {ADJ} .", labels: &[Cb, Rob] },
    Template { category: Category::Na, text: "Please {VERB} the {OBJ} .", labels: &[Na] },
    Template { category: Category::Na, text: "{VERB} the {OBJ} by tomorrow .", labels: &[Na] },
    Template { category: Category::Na, text: "Can you {VERB} the {OBJ} ?", labels: &[Na] },
    Template { category: Category::Na, text: "Will the {OBJ} be {ADJ} ?", labels: &[Na] },
    Template { category: Category::Na, text: "I need {NAME} to {VERB} the {OBJ} .", labels: &[Cb, Na] },
    Template { category: Category::Filler, text: "Thanks for the update .", labels: &[] },
    Template { category: Category::Filler, text: "More on the {OBJ} later .", labels: &[] },
    Template { category: Category::Filler, text: "Just a quick note on the {OBJ} .", labels: &[] },
    Template { category: Category::Filler, text: "Two more items .", labels: &[] },
];

pub const NAMES: &[&str] = &["John", "Sara", "Kim", "Lisa", "Raj", "Omar", "Elena", "Tom", "Priya", "Chen"];
pub const VERBS: &[&str] = &["submit", "review", "send", "update", "finish", "check", "sign", "approve", "revise", "share"];
pub const OBJECTS: &[&str] = &[
    "report", "contract", "budget", "schedule", "proposal", "memo", "forecast", "draft", "invoice", "presentation",
];
pub const ADJECTIVES: &[&str] = &["ready", "complete", "accurate", "late", "final", "correct", "fine", "useful"];

impl Template {
    pub fn token_len(&self) -> usize {
        self.text.split(' ').count()
    }

    pub fn count(&self, label: BeliefLabel) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Fills the slots; `{NAME2}` is always a different name from `{NAME}`.
    pub fn fill<R: Rng>(&self, rng: &mut R) -> Vec<String> {
        let name = *NAMES.choose(rng).expect("names");
        let name2 = loop {
            let n = *NAMES.choose(rng).expect("names");
            if n != name {
                break n;
            }
        };
        let verb = *VERBS.choose(rng).expect("verbs");
        let obj = *OBJECTS.choose(rng).expect("objects");
        let adj = *ADJECTIVES.choose(rng).expect("adjectives");
        self.text
            .split(' ')
            .enumerate()
            .map(|(i, w)| {
                let word = match w {
                    "{NAME}" => name.to_string(),
                    "{NAME2}" => name2.to_string(),
                    "{VERB}" => verb.to_string(),
                    "{OBJ}" => obj.to_string(),
                    "{ADJ}" => adj.to_string(),
                    other => other.to_string(),
                };
                if i == 0 {
                    capitalize(&word)
                } else {
                    word
                }
            })
            .collect()
    }
}

fn capitalize(w: &str) -> String {
    let mut c = w.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn templates_in(category: Category) -> Vec<&'static Template> {
    TEMPLATES.iter().filter(|t| t.category == category).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub n_threads: usize,
    /// Inclusive range of messages per thread.
    pub messages_per_thread: (usize, usize),
    pub hierarchy_depth: usize,
    pub branching: usize,
    /// Probability that an unrelated colleague is copied on a thread.
    pub outsider_rate: f64,
    /// Mean body length in tokens per role; lengths vary uniformly by half
    /// this value either way.
    pub tokens_per_message: BTreeMap<Role, f64>,
    /// Heads per 100 tokens for each role and label.
    pub rates: BTreeMap<Role, BTreeMap<BeliefLabel, f64>>,
    pub split: SplitRatios,
    pub seed: u64,
}

/// Heads per 100 tokens when no effect is planted.
pub const BASE_RATES: [(BeliefLabel, f64); 4] = [(Cb, 5.0), (Ncb, 2.0), (Rob, 1.2), (Na, 2.5)];

/// Default planted multipliers: subordinates use 48% more NCB and 65.3%
/// more ROB; superiors use 30% more NA.
pub const SUBORDINATE_NCB: f64 = 1.48;
pub const SUBORDINATE_ROB: f64 = 1.653;
pub const SUPERIOR_NA: f64 = 1.3;

impl Default for SynthConfig {
    fn default() -> Self {
        Self::planted(SUBORDINATE_NCB, SUBORDINATE_ROB, SUPERIOR_NA)
    }
}

impl SynthConfig {
    /// Base rates with the given multipliers applied to the subordinate's
    /// NCB and ROB and the superior's NA.
    pub fn planted(sub_ncb: f64, sub_rob: f64, sup_na: f64) -> Self {
        let base: BTreeMap<BeliefLabel, f64> = BASE_RATES.into_iter().collect();
        let mut sup = base.clone();
        let mut sub = base;
        *sub.get_mut(&Ncb).expect("ncb") *= sub_ncb;
        *sub.get_mut(&Rob).expect("rob") *= sub_rob;
        *sup.get_mut(&Na).expect("na") *= sup_na;
        Self {
            n_threads: 2000,
            messages_per_thread: (2, 6),
            hierarchy_depth: 3,
            branching: 6,
            outsider_rate: 0.3,
            tokens_per_message: [(Role::Superior, 40.0), (Role::Subordinate, 55.0)].into_iter().collect(),
            rates: [(Role::Superior, sup), (Role::Subordinate, sub)].into_iter().collect(),
            split: SplitRatios::default(),
            seed: 0,
        }
    }

    /// No difference between roles: shared base rates and equal message
    /// lengths.
    pub fn null() -> Self {
        let mut c = Self::planted(1.0, 1.0, 1.0);
        c.tokens_per_message = [(Role::Superior, 50.0), (Role::Subordinate, 50.0)].into_iter().collect();
        c
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_threads(mut self, n: usize) -> Self {
        self.n_threads = n;
        self
    }

    pub fn rate(&self, role: Role, label: BeliefLabel) -> f64 {
        self.rates.get(&role).and_then(|r| r.get(&label)).copied().unwrap_or(0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.messages_per_thread;
        if lo < 2 || hi < lo {
            return Err(Error::InvalidArgument(format!(
                "messages_per_thread must satisfy 2 <= min <= max, got ({lo}, {hi})"
            )));
        }
        if self.hierarchy_depth < 2 || self.branching < 1 {
            return Err(Error::InvalidArgument("hierarchy needs depth >= 2 and branching >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.outsider_rate) {
            return Err(Error::InvalidArgument("outsider_rate must be in [0, 1]".into()));
        }
        self.split.validate()?;
        for role in [Role::Superior, Role::Subordinate] {
            for label in BeliefLabel::ALL {
                let r = self.rate(role, label);
                if !r.is_finite() || r < 0.0 {
                    return Err(Error::InvalidArgument(format!("rate for {role:?} {label} must be nonnegative")));
                }
            }
            let len = self.tokens_per_message.get(&role).copied().unwrap_or(0.0);
            if !(len.is_finite() && len > 0.0) {
                return Err(Error::InvalidArgument(format!("tokens_per_message for {role:?} must be positive")));
            }
        }
        Ok(())
    }
}

/// Category probabilities realizing one role's rates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mixture {
    pub probabilities: BTreeMap<Category, f64>,
    pub mean_sentence_tokens: f64,
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// Solves for per-token sentence rates `q_c` of each category such that the
/// expected heads of every label per token equal `rates / 100` and the
/// expected tokens per token equal one.
pub fn solve_mixture(rates: &BTreeMap<BeliefLabel, f64>) -> Result<Mixture> {
    let mean_len = |c: Category| {
        let ts = templates_in(c);
        ts.iter().map(|t| t.token_len() as f64).sum::<f64>() / ts.len() as f64
    };
    let mean_count = |c: Category, l: BeliefLabel| {
        let ts = templates_in(c);
        ts.iter().map(|t| t.count(l) as f64).sum::<f64>() / ts.len() as f64
    };
    let mut a = Vec::new();
    let mut b = Vec::new();
    for l in BeliefLabel::ALL {
        a.push(Category::ALL.iter().map(|&c| mean_count(c, l)).collect());
        b.push(rates.get(&l).copied().unwrap_or(0.0) / 100.0);
    }
    a.push(Category::ALL.iter().map(|&c| mean_len(c)).collect());
    b.push(1.0);
    let q = solve(a, b).ok_or_else(|| Error::Infeasible("template bank is rank deficient".into()))?;
    if let Some((c, v)) = Category::ALL.iter().zip(&q).find(|(_, v)| **v < -1e-12) {
        return Err(Error::Infeasible(format!(
            "rates need a negative share ({v:.4}) of {c:?} sentences"
        )));
    }
    let total: f64 = q.iter().map(|v| v.max(0.0)).sum();
    Ok(Mixture {
        probabilities: Category::ALL.iter().zip(&q).map(|(&c, &v)| (c, v.max(0.0) / total)).collect(),
        mean_sentence_tokens: 1.0 / total,
    })
}

/// True emission counts for one role.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RoleTally {
    pub messages: usize,
    pub sentences: usize,
    pub tokens: usize,
    pub heads: BTreeMap<BeliefLabel, usize>,
}

impl RoleTally {
    fn merge(&mut self, o: &RoleTally) {
        self.messages += o.messages;
        self.sentences += o.sentences;
        self.tokens += o.tokens;
        for (l, c) in &o.heads {
            *self.heads.entry(*l).or_default() += c;
        }
    }

    pub fn rate(&self, label: BeliefLabel) -> f64 {
        100.0 * self.heads.get(&label).copied().unwrap_or(0) as f64 / self.tokens.max(1) as f64
    }
}

/// Sidecar describing what the generator planted and emitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bookkeeping {
    pub schema_version: u32,
    pub seed: u64,
    pub configured_rates: BTreeMap<Role, BTreeMap<BeliefLabel, f64>>,
    pub mixtures: BTreeMap<Role, Mixture>,
    pub emitted: BTreeMap<Role, RoleTally>,
}

pub const BOOKKEEPING_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticCorpus {
    pub corpus: Corpus,
    pub ripps: Vec<Ripp>,
    pub bookkeeping: Bookkeeping,
}

/// Participant ids of an org tree, a dominance tuple for each manager and
/// direct report, and the (manager, report) edges.
struct Org {
    people: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Org {
    fn build(depth: usize, branching: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut edges = Vec::new();
        let mut level = vec![0usize];
        let mut n = 1;
        for _ in 1..depth {
            let mut next = Vec::new();
            for &m in &level {
                for _ in 0..branching {
                    edges.push((m, n));
                    next.push(n);
                    n += 1;
                }
            }
            level = next;
        }
        // Ids are shuffled so that lexicographic order says nothing about
        // rank; reshuffle until managers sort first on half of the edges.
        let mut ids: Vec<String> = (0..n).map(|i| format!("p{i:04}")).collect();
        loop {
            ids.shuffle(rng);
            let first = edges.iter().filter(|&&(m, r)| ids[m] < ids[r]).count();
            if first.abs_diff(edges.len() - first) <= 1 {
                break;
            }
        }
        Self { people: ids, edges }
    }

    fn dominance(&self) -> Result<Dominance> {
        Dominance::new(self.edges.iter().map(|&(m, r)| DominanceTuple {
            superior: self.people[m].clone(),
            subordinate: self.people[r].clone(),
        }))
    }

    /// Someone who is neither of `a`, `b` nor directly related to either.
    fn outsider(&self, a: usize, b: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
        let related = |x: usize, y: usize| self.edges.iter().any(|&(m, r)| (m, r) == (x, y) || (m, r) == (y, x));
        let candidates: Vec<usize> = (0..self.people.len())
            .filter(|&p| p != a && p != b && !related(p, a) && !related(p, b))
            .collect();
        candidates.choose(rng).copied()
    }
}

/// Exact split sizes: rounded shares for train and dev, the rest test,
/// assigned over a seeded permutation of thread indices.
fn assign_splits(n: usize, ratios: &SplitRatios, rng: &mut ChaCha8Rng) -> Vec<Split> {
    let total = ratios.train + ratios.dev + ratios.test;
    let n_train = ((n as f64) * ratios.train / total).round() as usize;
    let n_dev = (((n as f64) * ratios.dev / total).round() as usize).min(n - n_train.min(n));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut out = vec![Split::Test; n];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = if rank < n_train {
            Split::Train
        } else if rank < n_train + n_dev {
            Split::Dev
        } else {
            Split::Test
        };
    }
    out
}

const ORG_STREAM: u64 = u64::MAX;
const SPLIT_STREAM: u64 = u64::MAX - 1;

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Writes a body for one message and reports what it planted.
trait BodyWriter: Sync {
    fn write(&self, role: Role, rng: &mut ChaCha8Rng) -> (Vec<Vec<String>>, RoleTally);
}

struct PlantedWriter<'a> {
    config: &'a SynthConfig,
    mixtures: BTreeMap<Role, Mixture>,
}

impl BodyWriter for PlantedWriter<'_> {
    fn write(&self, role: Role, rng: &mut ChaCha8Rng) -> (Vec<Vec<String>>, RoleTally) {
        let mixture = &self.mixtures[&role];
        let mean = self.config.tokens_per_message[&role];
        let target = rng.random_range(0.5 * mean..=1.5 * mean);
        let k = ((target / mixture.mean_sentence_tokens).round() as usize).max(1);
        let cats: Vec<(Category, f64)> = mixture.probabilities.iter().map(|(c, p)| (*c, *p)).collect();
        let mut tally = RoleTally::default();
        let mut sentences = Vec::with_capacity(k);
        for _ in 0..k {
            let category = cats.choose_weighted(rng, |x| x.1).map(|x| x.0).unwrap_or(Category::Filler);
            let template = *templates_in(category).choose(rng).expect("templates");
            let words = template.fill(rng);
            tally.sentences += 1;
            tally.tokens += words.len();
            for &l in template.labels {
                *tally.heads.entry(l).or_default() += 1;
            }
            sentences.push(words);
        }
        (sentences, tally)
    }
}

fn body_text(sentences: &[Vec<String>]) -> String {
    sentences.iter().map(|s| detokenize(s)).collect::<Vec<_>>().join(" ")
}

struct ThreadPlan {
    thread: Thread,
    tallies: BTreeMap<Role, RoleTally>,
}

fn generate_thread(
    config: &SynthConfig,
    org: &Org,
    writer: &dyn BodyWriter,
    index: usize,
) -> ThreadPlan {
    let mut rng = stream_rng(config.seed, index as u64);
    let &(sup, sub) = org.edges.choose(&mut rng).expect("org has edges");
    let outsider = if rng.random_bool(config.outsider_rate) {
        org.outsider(sup, sub, &mut rng)
    } else {
        None
    };
    let (lo, hi) = config.messages_per_thread;
    let n = rng.random_range(lo..=hi);
    let mut sender_role = if rng.random_bool(0.5) { Role::Superior } else { Role::Subordinate };
    let mut tallies: BTreeMap<Role, RoleTally> = BTreeMap::new();
    let mut messages: Vec<Message> = Vec::with_capacity(n);
    let mut ts: i64 = 1_000_000_000 + rng.random_range(0..10_000_000);
    let id = format!("thread{index:06}");
    let subject = OBJECTS.choose(&mut rng).expect("objects").to_string();
    for i in 0..n {
        let (from, to) = match sender_role {
            Role::Superior => (sup, sub),
            Role::Subordinate => (sub, sup),
        };
        let (sentences, mut tally) = writer.write(sender_role, &mut rng);
        tally.messages = 1;
        tallies.entry(sender_role).or_default().merge(&tally);
        messages.push(Message {
            id: format!("{id}.m{i}"),
            sender: org.people[from].clone(),
            to: vec![org.people[to].clone()],
            cc: outsider.map(|o| vec![org.people[o].clone()]).unwrap_or_default(),
            timestamp: ts,
            subject: if i == 0 { subject.clone() } else { format!("Re: {subject}") },
            body: body_text(&sentences),
            in_reply_to: i.checked_sub(1).map(|p| format!("{id}.m{p}")),
        });
        ts += rng.random_range(60..86_400);
        sender_role = sender_role.flip();
    }
    ThreadPlan {
        thread: Thread { id, messages },
        tallies,
    }
}

fn assemble(config: &SynthConfig, writer: &dyn BodyWriter, mixtures: BTreeMap<Role, Mixture>) -> Result<SyntheticCorpus> {
    config.validate()?;
    let org = Org::build(config.hierarchy_depth, config.branching, &mut stream_rng(config.seed, ORG_STREAM));
    let dominance = org.dominance()?;
    let plans: Vec<ThreadPlan> = (0..config.n_threads)
        .into_par_iter()
        .map(|i| generate_thread(config, &org, writer, i))
        .collect();
    let splits_by_index = assign_splits(config.n_threads, &config.split, &mut stream_rng(config.seed, SPLIT_STREAM));
    let mut emitted: BTreeMap<Role, RoleTally> = BTreeMap::new();
    let mut threads = Vec::with_capacity(plans.len());
    let mut splits = BTreeMap::new();
    for (plan, split) in plans.into_iter().zip(splits_by_index) {
        for (role, t) in &plan.tallies {
            emitted.entry(*role).or_default().merge(t);
        }
        splits.insert(plan.thread.id.clone(), split);
        threads.push(plan.thread);
    }
    let corpus = Corpus {
        threads,
        dominance,
        splits,
    };
    let ripps = corpus.ripps();
    Ok(SyntheticCorpus {
        corpus,
        ripps,
        bookkeeping: Bookkeeping {
            schema_version: BOOKKEEPING_SCHEMA_VERSION,
            seed: config.seed,
            configured_rates: config.rates.clone(),
            mixtures,
            emitted,
        },
    })
}

/// Threads between a manager and a direct report whose belief usage follows
/// the configured per-role rates.
pub fn generate_corpus(config: &SynthConfig) -> Result<SyntheticCorpus> {
    config.validate()?;
    let mut mixtures = BTreeMap::new();
    for role in [Role::Superior, Role::Subordinate] {
        let m = solve_mixture(&config.rates[&role])?;
        let expected = config.tokens_per_message[&role] / m.mean_sentence_tokens;
        if expected < 1.0 {
            return Err(Error::Infeasible(format!(
                "{role:?} messages would hold {expected:.2} sentences on average"
            )));
        }
        mixtures.insert(role, m);
    }
    let writer = PlantedWriter {
        config,
        mixtures: mixtures.clone(),
    };
    assemble(config, &writer, mixtures)
}

/// Corpus in which power shows only in the belief context of two shared
/// lemmas.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContrastConfig {
    pub base: SynthConfig,
    /// Probability that a message carries the contrast frames.
    pub frame_rate: f64,
    /// Probability that a framed message uses the other role's frames.
    pub flip_rate: f64,
    /// Filler sentences per message, inclusive range.
    pub filler_sentences: (usize, usize),
}

impl Default for ContrastConfig {
    fn default() -> Self {
        Self {
            base: SynthConfig::null().with_threads(3000),
            frame_rate: 0.8,
            flip_rate: 0.1,
            filler_sentences: (1, 3),
        }
    }
}

/// Lemma carrying CB for superiors and NA for subordinates, and its mirror.
pub const CONTRAST_LEMMAS: (&str, &str) = ("need", "want");

fn contrast_frames(committed: &str, conditional: &str) -> [Vec<String>; 2] {
    let words = |s: String| s.split(' ').map(String::from).collect::<Vec<_>>();
    [
        words(format!("At some point I {committed} the report .")),
        words(format!("If at some point I {conditional} the report , I will let you know .")),
    ]
}

struct ContrastWriter<'a> {
    config: &'a ContrastConfig,
}

impl BodyWriter for ContrastWriter<'_> {
    fn write(&self, role: Role, rng: &mut ChaCha8Rng) -> (Vec<Vec<String>>, RoleTally) {
        let (a, b) = CONTRAST_LEMMAS;
        let mut tally = RoleTally::default();
        let mut sentences = Vec::new();
        let (lo, hi) = self.config.filler_sentences;
        let neutral: Vec<&Template> = TEMPLATES
            .iter()
            .filter(|t| matches!(t.category, Category::Cb | Category::Filler))
            .collect();
        for _ in 0..rng.random_range(lo..=hi) {
            let t = *neutral.choose(rng).expect("templates");
            for &l in t.labels {
                *tally.heads.entry(l).or_default() += 1;
            }
            sentences.push(t.fill(rng));
        }
        if rng.random_bool(self.config.frame_rate) {
            let superior_frames = (role == Role::Superior) != rng.random_bool(self.config.flip_rate);
            let frames = if superior_frames { contrast_frames(a, b) } else { contrast_frames(b, a) };
            // need/want CB, then need/want NA plus let and know CB.
            *tally.heads.entry(Cb).or_default() += 3;
            *tally.heads.entry(Na).or_default() += 1;
            let at = rng.random_range(0..=sentences.len());
            for (k, f) in frames.into_iter().enumerate() {
                sentences.insert(at + k, f);
            }
        }
        tally.sentences = sentences.len();
        tally.tokens = sentences.iter().map(Vec::len).sum();
        (sentences, tally)
    }
}

pub fn generate_belief_contrast_corpus(config: &ContrastConfig) -> Result<SyntheticCorpus> {
    if !(0.0..=1.0).contains(&config.frame_rate) || !(0.0..=1.0).contains(&config.flip_rate) {
        return Err(Error::InvalidArgument("frame_rate and flip_rate must be probabilities".into()));
    }
    let (lo, hi) = config.filler_sentences;
    if hi < lo || (hi == 0 && config.frame_rate < 1.0) {
        return Err(Error::Infeasible("messages could end up empty".into()));
    }
    assemble(&config.base, &ContrastWriter { config }, BTreeMap::new())
}

/// Every participant id in the corpus, for tests and reports.
pub fn participants(corpus: &Corpus) -> BTreeSet<String> {
    corpus
        .threads
        .iter()
        .flat_map(|t| t.participants().into_iter().map(String::from).collect::<Vec<_>>())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_mixture_is_feasible() {
        let c = SynthConfig::default();
        for role in [Role::Superior, Role::Subordinate] {
            let m = solve_mixture(&c.rates[&role]).unwrap();
            let total: f64 = m.probabilities.values().sum();
            assert!((total - 1.0).abs() < 1e-12);
            assert!(m.probabilities.values().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn mixture_reproduces_rates_in_expectation() {
        let rates = &SynthConfig::default().rates[&Role::Subordinate];
        let m = solve_mixture(rates).unwrap();
        for l in BeliefLabel::ALL {
            let mut per_sentence = 0.0;
            for (c, p) in &m.probabilities {
                let ts = templates_in(*c);
                per_sentence += p * ts.iter().map(|t| t.count(l) as f64).sum::<f64>() / ts.len() as f64;
            }
            let per_100 = 100.0 * per_sentence / m.mean_sentence_tokens;
            assert!((per_100 - rates[&l]).abs() < 1e-9, "{l}: {per_100}");
        }
    }

    #[test]
    fn impossible_rates_are_infeasible() {
        let mut rates: BTreeMap<BeliefLabel, f64> = BASE_RATES.into_iter().collect();
        rates.insert(Cb, 0.1);
        assert!(matches!(solve_mixture(&rates), Err(Error::Infeasible(_))));
        let mut c = SynthConfig::default().with_threads(3);
        c.tokens_per_message.insert(Role::Superior, 2.0);
        assert!(matches!(generate_corpus(&c), Err(Error::Infeasible(_))));
    }

    #[test]
    fn exact_split_counts() {
        let c = SynthConfig::default().with_threads(100).with_seed(4);
        let s = generate_corpus(&c).unwrap();
        let count = |sp| s.corpus.splits.values().filter(|&&x| x == sp).count();
        assert_eq!((count(Split::Train), count(Split::Dev), count(Split::Test)), (60, 20, 20));
    }

    #[test]
    fn same_seed_same_corpus() {
        let c = SynthConfig::default().with_threads(20).with_seed(11);
        assert_eq!(generate_corpus(&c).unwrap(), generate_corpus(&c).unwrap());
        let other = generate_corpus(&c.clone().with_seed(12)).unwrap();
        assert_ne!(other.corpus, generate_corpus(&c).unwrap().corpus);
    }

    #[test]
    fn every_thread_is_valid_and_has_one_ripp() {
        let s = generate_corpus(&SynthConfig::default().with_threads(50).with_seed(2)).unwrap();
        for t in &s.corpus.threads {
            t.validate().unwrap();
        }
        assert_eq!(s.ripps.len(), 50);
    }
}
