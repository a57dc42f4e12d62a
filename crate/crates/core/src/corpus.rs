//! Email threads, gold dominance relations, split assignment and extraction
//! of related interacting participant pairs (RIPPs).
//!
//! Threads are stored one JSON object per line:
//!
//! ```text
//! {"schema_version":1,"id":"t1","split":"train","messages":[{"id":"m1","sender":"alice",
//!   "to":["bob"],"cc":[],"timestamp":1000,"subject":"hi","body":"...","in_reply_to":null}]}
//! ```
//!
//! `split` is optional. Dominance tuples live in a separate
//! `superior<TAB>subordinate` file.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const CORPUS_SCHEMA_VERSION: u32 = 1;

pub type ParticipantId = String;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub id: String,
    pub sender: ParticipantId,
    #[serde(default)]
    pub to: Vec<ParticipantId>,
    #[serde(default)]
    pub cc: Vec<ParticipantId>,
    pub timestamp: i64,
    #[serde(default)]
    pub subject: String,
    #[serde(default)]
    pub body: String,
    #[serde(default)]
    pub in_reply_to: Option<String>,
}

impl Message {
    pub fn recipients(&self) -> impl Iterator<Item = &ParticipantId> {
        self.to.iter().chain(&self.cc)
    }

    pub fn addresses(&self, p: &str) -> bool {
        self.recipients().any(|r| r == p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thread {
    pub id: String,
    pub messages: Vec<Message>,
}

impl Thread {
    /// Everyone who sent or received a message, sorted.
    pub fn participants(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for m in &self.messages {
            out.insert(m.sender.as_str());
            out.extend(m.recipients().map(String::as_str));
        }
        out
    }

    pub fn messages_from<'a>(&'a self, p: &'a str) -> impl Iterator<Item = &'a Message> + 'a {
        self.messages.iter().filter(move |m| m.sender == p)
    }

    /// Whether a message went from `a` to `b` or from `b` to `a`.
    pub fn exchanged(&self, a: &str, b: &str) -> bool {
        self.messages
            .iter()
            .any(|m| (m.sender == a && m.addresses(b)) || (m.sender == b && m.addresses(a)))
    }

    /// Checks the structural invariants; the error text is the skip reason.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.id.is_empty() {
            return Err("empty thread id".into());
        }
        if self.messages.is_empty() {
            return Err("thread has no messages".into());
        }
        let mut seen = HashSet::new();
        let mut last = i64::MIN;
        for m in &self.messages {
            if m.sender.trim().is_empty() {
                return Err(format!("message {} has an empty sender", m.id));
            }
            if m.timestamp < last {
                return Err(format!("message {} is out of timestamp order", m.id));
            }
            last = m.timestamp;
            if let Some(parent) = &m.in_reply_to {
                if !seen.contains(parent.as_str()) {
                    return Err("dangling reply link".into());
                }
            }
            if !seen.insert(m.id.as_str()) {
                return Err(format!("duplicate message id {}", m.id));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominanceTuple {
    pub superior: ParticipantId,
    pub subordinate: ParticipantId,
}

/// Power role of one participant relative to the other member of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Superior,
    Subordinate,
}

impl Role {
    pub fn flip(self) -> Self {
        match self {
            Role::Superior => Role::Subordinate,
            Role::Subordinate => Role::Superior,
        }
    }
}

/// Gold direction of a pair, from the point of view of `p1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gold {
    #[serde(rename = "P1_SUPERIOR")]
    P1Superior,
    #[serde(rename = "P1_SUBORDINATE")]
    P1Subordinate,
}

impl Gold {
    pub fn as_str(self) -> &'static str {
        match self {
            Gold::P1Superior => "P1_SUPERIOR",
            Gold::P1Subordinate => "P1_SUBORDINATE",
        }
    }

    /// +1 for `P1_SUPERIOR`, -1 otherwise.
    pub fn sign(self) -> f64 {
        match self {
            Gold::P1Superior => 1.0,
            Gold::P1Subordinate => -1.0,
        }
    }

    pub fn from_sign(score: f64) -> Self {
        if score >= 0.0 {
            Gold::P1Superior
        } else {
            Gold::P1Subordinate
        }
    }

    pub fn p1_role(self) -> Role {
        match self {
            Gold::P1Superior => Role::Superior,
            Gold::P1Subordinate => Role::Subordinate,
        }
    }
}

impl fmt::Display for Gold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Gold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P1_SUPERIOR" => Ok(Gold::P1Superior),
            "P1_SUBORDINATE" => Ok(Gold::P1Subordinate),
            _ => Err(Error::parse("gold label", format!("unknown direction {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Dev,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Dev, Split::Test];

    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Dev => "dev",
            Split::Test => "test",
        }
    }

    fn index(self) -> usize {
        match self {
            Split::Train => 0,
            Split::Dev => 1,
            Split::Test => 2,
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "train" => Ok(Split::Train),
            "dev" => Ok(Split::Dev),
            "test" => Ok(Split::Test),
            other => Err(Error::parse("split", format!("unknown split {other:?}"))),
        }
    }
}

/// Train/dev/test proportions used when a thread carries no split.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitRatios {
    pub train: f64,
    pub dev: f64,
    pub test: f64,
}

impl Default for SplitRatios {
    fn default() -> Self {
        Self {
            train: 0.6,
            dev: 0.2,
            test: 0.2,
        }
    }
}

impl SplitRatios {
    pub fn validate(&self) -> Result<()> {
        let parts = [self.train, self.dev, self.test];
        if parts.iter().any(|p| !p.is_finite() || *p < 0.0) || parts.iter().sum::<f64>() <= 0.0 {
            return Err(Error::InvalidArgument(format!("bad split ratios {self:?}")));
        }
        Ok(())
    }

    /// Deterministic split from a SHA-256 hash of the thread id.
    pub fn assign(&self, thread_id: &str) -> Split {
        let digest = Sha256::digest(thread_id.as_bytes());
        let mut head = [0u8; 8];
        head.copy_from_slice(&digest[..8]);
        let u = u64::from_be_bytes(head) as f64 / 2f64.powi(64);
        let total = self.train + self.dev + self.test;
        if u < self.train / total {
            Split::Train
        } else if u < (self.train + self.dev) / total {
            Split::Dev
        } else {
            Split::Test
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ripp {
    pub thread_id: String,
    pub p1: ParticipantId,
    pub p2: ParticipantId,
    pub gold: Gold,
    pub split: Split,
}

impl Ripp {
    pub fn id(&self) -> String {
        format!("{}|{}|{}", self.thread_id, self.p1, self.p2)
    }

    pub fn role_of(&self, p: &str) -> Option<Role> {
        if p == self.p1 {
            Some(self.gold.p1_role())
        } else if p == self.p2 {
            Some(self.gold.p1_role().flip())
        } else {
            None
        }
    }
}

/// Gold dominance relations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dominance {
    tuples: BTreeSet<DominanceTuple>,
}

impl Dominance {
    /// Builds the relation, rejecting self pairs and pairs given in both
    /// orientations.
    pub fn new<I: IntoIterator<Item = DominanceTuple>>(tuples: I) -> Result<Self> {
        let tuples: BTreeSet<DominanceTuple> = tuples.into_iter().collect();
        for t in &tuples {
            if t.superior == t.subordinate {
                return Err(Error::Corpus(format!("{} dominates itself", t.superior)));
            }
            let reversed = DominanceTuple {
                superior: t.subordinate.clone(),
                subordinate: t.superior.clone(),
            };
            if tuples.contains(&reversed) {
                return Err(Error::Corpus(format!(
                    "{} and {} dominate each other",
                    t.superior, t.subordinate
                )));
            }
        }
        Ok(Self { tuples })
    }

    pub fn tuples(&self) -> impl Iterator<Item = &DominanceTuple> {
        self.tuples.iter()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// `Some(Superior)` if `a` dominates `b`, `Some(Subordinate)` if `b`
    /// dominates `a`.
    pub fn role(&self, a: &str, b: &str) -> Option<Role> {
        let probe = |s: &str, t: &str| {
            self.tuples.contains(&DominanceTuple {
                superior: s.to_string(),
                subordinate: t.to_string(),
            })
        };
        if probe(a, b) {
            Some(Role::Superior)
        } else if probe(b, a) {
            Some(Role::Subordinate)
        } else {
            None
        }
    }

    /// Parses `superior<TAB>subordinate` lines. Blank lines and `#` comments
    /// are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tuples = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() != 2 || cols.iter().any(|c| c.is_empty()) {
                return Err(Error::parse("dominance", format!("line {}: expected two columns", n + 1)));
            }
            tuples.push(DominanceTuple {
                superior: cols[0].to_string(),
                subordinate: cols[1].to_string(),
            });
        }
        Self::new(tuples)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }

    pub fn to_tsv(&self) -> String {
        self.tuples
            .iter()
            .map(|t| format!("{}\t{}\n", t.superior, t.subordinate))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct ThreadRecord {
    schema_version: u32,
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    split: Option<Split>,
    messages: Vec<Message>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedRecord {
    pub line: usize,
    pub thread_id: Option<String>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Corpus {
    pub threads: Vec<Thread>,
    pub dominance: Dominance,
    pub splits: BTreeMap<String, Split>,
}

/// Outcome of loading a thread file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LoadedThreads {
    pub threads: Vec<Thread>,
    pub splits: BTreeMap<String, Split>,
    pub skipped: Vec<SkippedRecord>,
}

/// Reads a thread file, skipping (and reporting) records that fail to parse
/// or validate. Only an unreadable file is fatal.
pub fn load_threads(path: &Path) -> Result<LoadedThreads> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = LoadedThreads::default();
    let mut ids = HashSet::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let skip = |thread_id: Option<String>, reason: String| SkippedRecord {
            line: n + 1,
            thread_id,
            reason,
        };
        let record: ThreadRecord = match serde_json::from_str(&line) {
            Ok(r) => r,
            Err(e) => {
                out.skipped.push(skip(None, format!("malformed record: {e}")));
                continue;
            }
        };
        if record.schema_version != CORPUS_SCHEMA_VERSION {
            out.skipped.push(skip(
                Some(record.id),
                format!("unsupported schema_version {}", record.schema_version),
            ));
            continue;
        }
        let thread = Thread {
            id: record.id,
            messages: record.messages,
        };
        if let Err(reason) = thread.validate() {
            out.skipped.push(skip(Some(thread.id), reason));
            continue;
        }
        if !ids.insert(thread.id.clone()) {
            out.skipped.push(skip(Some(thread.id), "duplicate thread id".into()));
            continue;
        }
        if let Some(split) = record.split {
            out.splits.insert(thread.id.clone(), split);
        }
        out.threads.push(thread);
    }
    for s in &out.skipped {
        log::warn!("{}: skipped line {}: {}", path.display(), s.line, s.reason);
    }
    Ok(out)
}

/// Parses a `thread_id<TAB>split` file.
pub fn load_splits(path: &Path) -> Result<BTreeMap<String, Split>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, split) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse("splits", format!("line {}: expected two columns", n + 1)))?;
        out.insert(id.trim().to_string(), split.parse()?);
    }
    Ok(out)
}

impl Corpus {
    /// Loads threads and dominance tuples. Split precedence: the splits
    /// file, then the split stored in the record, then the hash of the
    /// thread id under `ratios`.
    pub fn load(
        corpus: &Path,
        dominance: &Path,
        splits: Option<&Path>,
        ratios: SplitRatios,
    ) -> Result<(Self, Vec<SkippedRecord>)> {
        ratios.validate()?;
        let loaded = load_threads(corpus)?;
        let dominance = Dominance::load(dominance)?;
        let external = splits.map(load_splits).transpose()?.unwrap_or_default();
        let splits = loaded
            .threads
            .iter()
            .map(|t| {
                let s = external
                    .get(&t.id)
                    .or_else(|| loaded.splits.get(&t.id))
                    .copied()
                    .unwrap_or_else(|| ratios.assign(&t.id));
                (t.id.clone(), s)
            })
            .collect();
        Ok((
            Self {
                threads: loaded.threads,
                dominance,
                splits,
            },
            loaded.skipped,
        ))
    }

    pub fn split_of(&self, thread_id: &str) -> Split {
        self.splits.get(thread_id).copied().unwrap_or(Split::Train)
    }

    pub fn thread(&self, id: &str) -> Option<&Thread> {
        self.threads.iter().find(|t| t.id == id)
    }

    /// Writes the thread file, each record carrying its split.
    pub fn save_threads(&self, path: &Path) -> Result<()> {
        let mut out = Vec::new();
        for t in &self.threads {
            let record = ThreadRecord {
                schema_version: CORPUS_SCHEMA_VERSION,
                id: t.id.clone(),
                split: self.splits.get(&t.id).copied(),
                messages: t.messages.clone(),
            };
            serde_json::to_writer(&mut out, &record)
                .map_err(|e| Error::parse("corpus", e.to_string()))?;
            out.push(b'\n');
        }
        write_file(path, &out)
    }

    pub fn save_dominance(&self, path: &Path) -> Result<()> {
        write_file(path, self.dominance.to_tsv().as_bytes())
    }

    pub fn ripps(&self) -> Vec<Ripp> {
        self.threads
            .iter()
            .flat_map(|t| extract_ripps(t, &self.dominance, self.split_of(&t.id)))
            .collect()
    }
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(bytes).map_err(|e| Error::io(path, e))
}

/// Pairs that exchanged at least one message and are related by an explicit
/// dominance tuple, ordered so that `p1 < p2`.
pub fn extract_ripps(thread: &Thread, dominance: &Dominance, split: Split) -> Vec<Ripp> {
    let mut pairs = BTreeSet::new();
    for m in &thread.messages {
        for r in m.recipients() {
            if *r == m.sender {
                continue;
            }
            let (a, b) = if m.sender < *r { (&m.sender, r) } else { (r, &m.sender) };
            pairs.insert((a.clone(), b.clone()));
        }
    }
    pairs
        .into_iter()
        .filter_map(|(p1, p2)| {
            let gold = match dominance.role(&p1, &p2)? {
                Role::Superior => Gold::P1Superior,
                Role::Subordinate => Gold::P1Subordinate,
            };
            Some(Ripp {
                thread_id: thread.id.clone(),
                p1,
                p2,
                gold,
                split,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub threads: [usize; 3],
    pub ripps: [usize; 3],
}

impl CorpusStats {
    pub fn threads_in(&self, split: Split) -> usize {
        self.threads[split.index()]
    }

    pub fn ripps_in(&self, split: Split) -> usize {
        self.ripps[split.index()]
    }
}

pub fn corpus_stats(corpus: &Corpus) -> CorpusStats {
    let mut stats = CorpusStats::default();
    for t in &corpus.threads {
        let split = corpus.split_of(&t.id);
        stats.threads[split.index()] += 1;
        stats.ripps[split.index()] += extract_ripps(t, &corpus.dominance, split).len();
    }
    stats
}

impl fmt::Display for CorpusStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<10}{:>10}{:>10}{:>10}", "", "Train", "Dev", "Test")?;
        writeln!(
            f,
            "{:<10}{:>10}{:>10}{:>10}",
            "# threads", self.threads[0], self.threads[1], self.threads[2]
        )?;
        write!(
            f,
            "{:<10}{:>10}{:>10}{:>10}",
            "# RIPPs", self.ripps[0], self.ripps[1], self.ripps[2]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn msg(id: &str, from: &str, to: &[&str], ts: i64, reply: Option<&str>) -> Message {
        Message {
            id: id.into(),
            sender: from.into(),
            to: to.iter().map(|s| s.to_string()).collect(),
            cc: vec![],
            timestamp: ts,
            subject: String::new(),
            body: "Hello.".into(),
            in_reply_to: reply.map(String::from),
        }
    }

    fn dom(pairs: &[(&str, &str)]) -> Dominance {
        Dominance::new(pairs.iter().map(|(a, b)| DominanceTuple {
            superior: a.to_string(),
            subordinate: b.to_string(),
        }))
        .unwrap()
    }

    #[test]
    fn single_pair() {
        let t = Thread {
            id: "t".into(),
            messages: vec![msg("1", "A", &["B"], 0, None)],
        };
        let r = extract_ripps(&t, &dom(&[("A", "B")]), Split::Train);
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].p1.as_str(), r[0].p2.as_str(), r[0].gold), ("A", "B", Gold::P1Superior));
        assert!(extract_ripps(&t, &dom(&[]), Split::Train).is_empty());
        let flipped = extract_ripps(&t, &dom(&[("B", "A")]), Split::Train);
        assert_eq!(flipped[0].gold, Gold::P1Subordinate);
    }

    #[test]
    fn only_pairs_that_exchanged() {
        let t = Thread {
            id: "t".into(),
            messages: vec![msg("1", "A", &["B"], 0, None), msg("2", "B", &["C"], 1, Some("1"))],
        };
        let r = extract_ripps(&t, &dom(&[("A", "B"), ("A", "C"), ("B", "C")]), Split::Dev);
        let pairs: Vec<(&str, &str)> = r.iter().map(|x| (x.p1.as_str(), x.p2.as_str())).collect();
        assert_eq!(pairs, [("A", "B"), ("B", "C")]);
    }

    #[test]
    fn validation_reasons() {
        let dangling = Thread {
            id: "t".into(),
            messages: vec![msg("1", "A", &["B"], 0, Some("0"))],
        };
        assert_eq!(dangling.validate().unwrap_err(), "dangling reply link");
        let unordered = Thread {
            id: "t".into(),
            messages: vec![msg("1", "A", &["B"], 5, None), msg("2", "B", &["A"], 1, None)],
        };
        assert!(unordered.validate().is_err());
        let empty = Thread {
            id: "t".into(),
            messages: vec![],
        };
        assert!(empty.validate().is_err());
    }

    #[test]
    fn contradictory_dominance_rejected() {
        let r = Dominance::new([
            DominanceTuple {
                superior: "a".into(),
                subordinate: "b".into(),
            },
            DominanceTuple {
                superior: "b".into(),
                subordinate: "a".into(),
            },
        ]);
        assert!(r.is_err());
        assert!(Dominance::parse("a\ta\n").is_err());
        assert_eq!(Dominance::parse("# x\na\tb\n").unwrap().len(), 1);
    }

    #[test]
    fn hash_split_is_stable_and_roughly_proportional() {
        let ratios = SplitRatios::default();
        assert_eq!(ratios.assign("thread-1"), ratios.assign("thread-1"));
        let train = (0..5000)
            .filter(|i| ratios.assign(&format!("t{i}")) == Split::Train)
            .count();
        assert!((2800..3200).contains(&train), "{train}");
    }

    #[test]
    fn empty_corpus_stats() {
        let s = corpus_stats(&Corpus::default());
        assert_eq!(s, CorpusStats::default());
        assert!(s.to_string().contains("# RIPPs"));
    }
}
