//! Command-line pipeline. Stages talk through files under `--out`:
//!
//! ```text
//! synth | ingest   -> corpus.jsonl, dominance.tsv
//! tag              -> tags.tsv, belief_counts.tsv
//! analyze          -> analysis.tsv, chart.tsv, hypotheses.tsv
//! featurize        -> <features>/instances.tsv, features.tsv, vocab.tsv
//! train            -> <features>/model.txt
//! eval             -> <features>/eval.tsv, predictions.tsv [, compare_*.tsv]
//! weights          -> <features>/weights.tsv
//! ```
//!
//! Every command also writes `<command>.manifest.json` next to its outputs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::belief;
use crate::corpus::{corpus_stats, write_file, Corpus, Gold, Split, SplitRatios};
use crate::error::Error;
use crate::features::{export_triples, FeatureConfig, Instance, Vocabulary, NGRAM_DF_FLOOR};
use crate::lexicon::Lexicons;
use crate::model::{self, LinearModel, TrainConfig, LAMBDA_GRID};
use crate::pipeline::{in_split, Toolkit};
use crate::stats::{self, DEFAULT_RANDOMIZATION_ITERATIONS, HYPOTHESES};
use crate::synth::{self, ContrastConfig, SynthConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "commitment-power", version, about = "Belief tagging and power analysis for email threads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone, Default)]
struct Opts {
    /// Thread file (JSONL). Defaults to <out>/corpus.jsonl.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// Dominance file (superior<TAB>subordinate). Defaults to <out>/dominance.tsv.
    #[arg(long, global = true)]
    dominance: Option<PathBuf>,
    /// Optional thread_id<TAB>split file.
    #[arg(long, global = true)]
    splits: Option<PathBuf>,
    /// Directory whose lexicon files override the bundled ones.
    #[arg(long, global = true)]
    lexicons: Option<PathBuf>,
    /// synth: default | null | contrast | JSON file. train: JSON training config.
    #[arg(long, global = true)]
    config: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Feature families joined by '+', e.g. LNapnd+PN+MN.
    #[arg(long, global = true)]
    features: Option<String>,
    /// eval: second feature configuration to compare against.
    #[arg(long, global = true)]
    compare: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a corpus and dominance file and write normalized copies.
    Ingest,
    /// Label propositional heads in --text or in the corpus.
    Tag {
        #[arg(long)]
        text: Option<String>,
    },
    /// Build classifier instances for --features.
    Featurize,
    /// Train a linear SVM on featurized instances.
    Train,
    /// Evaluate a trained model; --compare runs the randomization test.
    Eval {
        #[arg(long, default_value_t = DEFAULT_RANDOMIZATION_ITERATIONS)]
        iterations: usize,
    },
    /// Run the belief hypothesis suite.
    Analyze,
    /// Report belief versions of head lemmas with the most weight variation.
    Weights {
        #[arg(long, default_value_t = 10)]
        top_k: usize,
    },
    /// Generate a synthetic corpus.
    Synth,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Ingest => "ingest",
            Command::Tag { .. } => "tag",
            Command::Featurize => "featurize",
            Command::Train => "train",
            Command::Eval { .. } => "eval",
            Command::Analyze => "analyze",
            Command::Weights { .. } => "weights",
            Command::Synth => "synth",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub config: serde_json::Value,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub seed: u64,
    pub tool_version: String,
    pub timing_ms: u128,
}

/// Failure of a command, carrying its exit status.
enum Failure {
    Validation(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Schema { .. }
            | Error::Parse { .. }
            | Error::InvalidArgument(_)
            | Error::FeatureConfig(_)
            | Error::TrainConfig(_)
            | Error::Corpus(_)
            | Error::Lexicon(_)
            | Error::NgramOrder(_)
            | Error::Infeasible(_)
            | Error::NoAppendFeatures => Failure::Validation(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

/// Accuracy per split, and test-set correctness by instance id.
type Scored = (BTreeMap<Split, f64>, Vec<(String, bool)>);

/// Runs the command line and returns the process exit status: 0 on
/// success, 1 on invalid input, 2 when a valid run fails.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let started = Instant::now();
    let mut ctx = Context {
        opts: cli.opts.clone(),
        inputs: Vec::new(),
        outputs: Vec::new(),
        config: serde_json::Value::Null,
        manifest_dir: None,
    };
    let result = match &cli.command {
        Command::Ingest => ctx.ingest(),
        Command::Tag { text } => ctx.tag(text.as_deref()),
        Command::Featurize => ctx.featurize().map(|_| ()),
        Command::Train => ctx.train(),
        Command::Eval { iterations } => ctx.eval(*iterations),
        Command::Analyze => ctx.analyze(),
        Command::Weights { top_k } => ctx.weights(*top_k),
        Command::Synth => ctx.synth(),
    };
    let result = result.and_then(|()| {
        if ctx.outputs.is_empty() {
            return Ok(());
        }
        let manifest = RunManifest {
            command: cli.command.name().to_string(),
            argv: argv.iter().skip(1).cloned().collect(),
            config: ctx.config.clone(),
            inputs: ctx.inputs.clone(),
            outputs: ctx.outputs.clone(),
            seed: ctx.opts.seed,
            tool_version: VERSION.to_string(),
            timing_ms: started.elapsed().as_millis(),
        };
        let dir = ctx.manifest_dir.clone().unwrap_or_else(|| ctx.opts.out.clone());
        let json = serde_json::to_string_pretty(&manifest).map_err(|e| Failure::Runtime(e.to_string()))?;
        write_file(&dir.join(format!("{}.manifest.json", cli.command.name())), json.as_bytes())?;
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

struct Context {
    opts: Opts,
    inputs: Vec<String>,
    outputs: Vec<String>,
    config: serde_json::Value,
    manifest_dir: Option<PathBuf>,
}

fn snapshot<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).unwrap_or(serde_json::Value::Null)
}

fn read(path: &Path, producer: &str) -> CmdResult<String> {
    if !path.exists() {
        return Err(Failure::Validation(format!(
            "missing {}; run `{producer}` first",
            path.display()
        )));
    }
    fs::read_to_string(path).map_err(|e| Error::io(path, e).into())
}

const INSTANCES_HEADER: &str = "# instances v1";
const FEATURES_HEADER: &str = "# features v1";
const PREDICTIONS_HEADER: &str = "# predictions v1";

fn check_header(text: &str, expected: &str, artifact: &str) -> CmdResult<()> {
    let found = text.lines().next().unwrap_or("");
    if found != expected {
        return Err(Error::Schema {
            artifact: artifact.into(),
            expected: 1,
            found: found.to_string(),
        }
        .into());
    }
    Ok(())
}

impl Context {
    fn write(&mut self, path: PathBuf, contents: &str) -> CmdResult<()> {
        write_file(&path, contents.as_bytes())?;
        self.outputs.push(path.display().to_string());
        Ok(())
    }

    fn toolkit(&mut self) -> CmdResult<Toolkit> {
        let lex = match &self.opts.lexicons {
            Some(dir) => {
                self.inputs.push(dir.display().to_string());
                Lexicons::from_dir(dir)?
            }
            None => Lexicons::bundled(),
        };
        Ok(Toolkit::new(Arc::new(lex)))
    }

    fn corpus_paths(&self) -> (PathBuf, PathBuf) {
        (
            self.opts.corpus.clone().unwrap_or_else(|| self.opts.out.join("corpus.jsonl")),
            self.opts.dominance.clone().unwrap_or_else(|| self.opts.out.join("dominance.tsv")),
        )
    }

    fn load_corpus(&mut self) -> CmdResult<Corpus> {
        let (corpus, dominance) = self.corpus_paths();
        for p in [&corpus, &dominance] {
            if !p.exists() {
                return Err(Failure::Validation(format!(
                    "missing {}; run `synth` or `ingest` first, or pass --corpus/--dominance",
                    p.display()
                )));
            }
        }
        if let Some(s) = &self.opts.splits {
            if !s.exists() {
                return Err(Failure::Validation(format!("missing splits file {}", s.display())));
            }
            self.inputs.push(s.display().to_string());
        }
        let (c, skipped) = Corpus::load(&corpus, &dominance, self.opts.splits.as_deref(), SplitRatios::default())?;
        if !skipped.is_empty() {
            eprintln!("skipped {} malformed thread record(s)", skipped.len());
        }
        self.inputs.push(corpus.display().to_string());
        self.inputs.push(dominance.display().to_string());
        Ok(c)
    }

    fn feature_config(&self, raw: Option<&str>) -> CmdResult<FeatureConfig> {
        let raw = raw.ok_or_else(|| Failure::Validation("--features is required".into()))?;
        Ok(raw.parse()?)
    }

    fn feature_dir(&self, config: &FeatureConfig) -> PathBuf {
        self.opts.out.join(config.to_string())
    }

    fn synth(&mut self) -> CmdResult<()> {
        let choice = self.opts.config.clone().unwrap_or_else(|| "default".into());
        let seed = self.opts.seed;
        let generated = match choice.as_str() {
            "default" => {
                let c = SynthConfig::default().with_seed(seed);
                self.config = snapshot(&c);
                synth::generate_corpus(&c)?
            }
            "null" => {
                let c = SynthConfig::null().with_seed(seed);
                self.config = snapshot(&c);
                synth::generate_corpus(&c)?
            }
            "contrast" => {
                let mut c = ContrastConfig::default();
                c.base.seed = seed;
                self.config = snapshot(&c);
                synth::generate_belief_contrast_corpus(&c)?
            }
            path => {
                let text = read(Path::new(path), "a config file")?;
                self.inputs.push(path.to_string());
                let mut c: SynthConfig = serde_json::from_str(&text)
                    .map_err(|e| Error::parse("synth config", e.to_string()))?;
                c.seed = seed;
                self.config = snapshot(&c);
                synth::generate_corpus(&c)?
            }
        };
        let out = self.opts.out.clone();
        generated.corpus.save_threads(&out.join("corpus.jsonl"))?;
        self.outputs.push(out.join("corpus.jsonl").display().to_string());
        self.write(out.join("dominance.tsv"), &generated.corpus.dominance.to_tsv())?;
        let book = serde_json::to_string_pretty(&generated.bookkeeping)
            .map_err(|e| Failure::Runtime(e.to_string()))?;
        self.write(out.join("bookkeeping.json"), &book)?;
        let stats = corpus_stats(&generated.corpus);
        println!("{stats}");
        Ok(())
    }

    fn ingest(&mut self) -> CmdResult<()> {
        let corpus = self.load_corpus()?;
        let out = self.opts.out.clone();
        let (src_corpus, _) = self.corpus_paths();
        let target = out.join("corpus.jsonl");
        if fs::canonicalize(&src_corpus).ok() != fs::canonicalize(&target).ok() || !target.exists() {
            corpus.save_threads(&target)?;
            self.outputs.push(target.display().to_string());
            self.write(out.join("dominance.tsv"), &corpus.dominance.to_tsv())?;
        }
        let mut ripps = String::from("thread_id\tp1\tp2\tgold\tsplit\n");
        for r in corpus.ripps() {
            ripps.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.thread_id, r.p1, r.p2, r.gold, r.split));
        }
        self.write(out.join("ripps.tsv"), &ripps)?;
        let stats = corpus_stats(&corpus);
        self.write(out.join("stats.txt"), &format!("{stats}\n"))?;
        println!("{stats}");
        Ok(())
    }

    fn tag(&mut self, text: Option<&str>) -> CmdResult<()> {
        let tk = self.toolkit()?;
        if let Some(text) = text {
            let message = crate::corpus::Message {
                id: "text".into(),
                sender: "user".into(),
                to: vec![],
                cc: vec![],
                timestamp: 0,
                subject: String::new(),
                body: text.to_string(),
                in_reply_to: None,
            };
            let tags = belief::tag_message(&tk.processor, tk.tagger.as_ref(), &message);
            print!("{}", belief::standoff_tsv([&tags]));
            return Ok(());
        }
        let corpus = self.load_corpus()?;
        let mut all = Vec::new();
        for t in &corpus.threads {
            for m in &t.messages {
                all.push(belief::tag_message(&tk.processor, tk.tagger.as_ref(), m));
            }
        }
        let out = self.opts.out.clone();
        self.write(out.join("tags.tsv"), &belief::standoff_tsv(&all))?;
        let ripps = corpus.ripps();
        let obs = tk.belief_observations(&corpus, &ripps);
        let mut counts = String::from("thread_id\tparticipant\trole\tcb\tncb\trob\tna\ttoken_count\n");
        for (r, pair) in ripps.iter().zip(obs.chunks(2)) {
            for (p, o) in [&r.p1, &r.p2].into_iter().zip(pair) {
                let role = match o.role {
                    crate::corpus::Role::Superior => "superior",
                    crate::corpus::Role::Subordinate => "subordinate",
                };
                match &o.counts {
                    Some(c) => counts.push_str(&format!(
                        "{}\t{p}\t{role}\t{}\t{}\t{}\t{}\t{}\n",
                        r.thread_id, c.cb, c.ncb, c.rob, c.na, c.token_count
                    )),
                    None => counts.push_str(&format!("{}\t{p}\t{role}\tundefined\t\t\t\t\n", r.thread_id)),
                }
            }
        }
        self.write(out.join("belief_counts.tsv"), &counts)?;
        println!("tagged {} messages", all.len());
        Ok(())
    }

    fn analyze(&mut self) -> CmdResult<()> {
        let tk = self.toolkit()?;
        let corpus = self.load_corpus()?;
        let ripps = corpus.ripps();
        let report = stats::run_hypothesis_suite(&tk.belief_observations(&corpus, &ripps))?;
        let out = self.opts.out.clone();
        self.write(out.join("analysis.tsv"), &report.to_tsv())?;
        self.write(out.join("chart.tsv"), &report.chart_tsv())?;
        let mut hyp = String::from("hypothesis\tfeature\texpected\tb\tp_adjusted\tconfirmed\n");
        for ((name, _, dir), row) in HYPOTHESES.iter().zip(&report.rows) {
            let expected = match dir {
                stats::Direction::SuperiorsMore => "superiors_more",
                stats::Direction::SubordinatesMore => "subordinates_more",
            };
            hyp.push_str(&format!(
                "{name}\t{}\t{expected}\t{}\t{}\t{}\n",
                row.feature, row.regression.coefficient, row.p_adjusted, row.confirmed
            ));
        }
        self.write(out.join("hypotheses.tsv"), &hyp)?;
        print!("{hyp}");
        Ok(())
    }

    fn featurize(&mut self) -> CmdResult<FeatureConfig> {
        let config = self.feature_config(self.opts.features.clone().as_deref())?;
        let tk = self.toolkit()?;
        let corpus = self.load_corpus()?;
        let instances = tk.instances(&corpus, &corpus.ripps(), &config);
        let vocab = Vocabulary::build(instances.iter().filter(|i| i.split == Split::Train), NGRAM_DF_FLOOR);
        let dir = self.feature_dir(&config);
        let mut inst = format!("{INSTANCES_HEADER}\n");
        for i in &instances {
            inst.push_str(&format!("{}\t{}\t{}\n", i.id, i.split, i.gold));
        }
        self.write(dir.join("instances.tsv"), &inst)?;
        self.write(dir.join("features.tsv"), &format!("{FEATURES_HEADER}\n{}", export_triples(&instances)))?;
        self.write(dir.join("vocab.tsv"), &vocab.to_tsv())?;
        self.config = serde_json::json!({ "features": config.to_string(), "df_floor": NGRAM_DF_FLOOR });
        self.manifest_dir = Some(dir);
        println!("{} instances, {} vocabulary columns", instances.len(), vocab.len());
        Ok(config)
    }

    fn load_instances(&mut self, config: &FeatureConfig) -> CmdResult<Vec<Instance>> {
        let dir = self.feature_dir(config);
        let inst_text = read(&dir.join("instances.tsv"), &format!("featurize --features {config}"))?;
        let feat_text = read(&dir.join("features.tsv"), &format!("featurize --features {config}"))?;
        check_header(&inst_text, INSTANCES_HEADER, "instances")?;
        check_header(&feat_text, FEATURES_HEADER, "features")?;
        let mut order = Vec::new();
        let mut by_id: BTreeMap<String, Instance> = BTreeMap::new();
        for line in inst_text.lines().skip(1).filter(|l| !l.is_empty()) {
            let cols: Vec<&str> = line.split('\t').collect();
            let [id, split, gold] = cols.as_slice() else {
                return Err(Error::parse("instances", format!("bad line {line:?}")).into());
            };
            order.push(id.to_string());
            by_id.insert(
                id.to_string(),
                Instance {
                    id: id.to_string(),
                    split: split.parse()?,
                    gold: gold.parse::<Gold>()?,
                    features: BTreeMap::new(),
                },
            );
        }
        for line in feat_text.lines().skip(1).filter(|l| !l.is_empty()) {
            let mut cols = line.rsplitn(3, '\t');
            let (Some(value), Some(name), Some(id)) = (cols.next(), cols.next(), cols.next()) else {
                return Err(Error::parse("features", format!("bad line {line:?}")).into());
            };
            let value: f64 = value
                .parse()
                .map_err(|_| Error::parse("features", format!("bad value in {line:?}")))?;
            let inst = by_id
                .get_mut(id)
                .ok_or_else(|| Error::parse("features", format!("unknown instance {id:?}")))?;
            inst.features.insert(name.to_string(), value);
        }
        self.inputs.push(dir.join("instances.tsv").display().to_string());
        self.inputs.push(dir.join("features.tsv").display().to_string());
        Ok(order.into_iter().filter_map(|id| by_id.remove(&id)).collect())
    }

    fn train_config(&mut self) -> CmdResult<Option<TrainConfig>> {
        match self.opts.config.clone() {
            None => Ok(None),
            Some(path) => {
                let text = read(Path::new(&path), "a config file")?;
                self.inputs.push(path);
                let mut c: TrainConfig =
                    serde_json::from_str(&text).map_err(|e| Error::parse("train config", e.to_string()))?;
                c.seed = self.opts.seed;
                c.validate()?;
                Ok(Some(c))
            }
        }
    }

    fn train(&mut self) -> CmdResult<()> {
        let config = self.feature_config(self.opts.features.clone().as_deref())?;
        let dir = self.feature_dir(&config);
        if !dir.join("instances.tsv").exists() && self.opts.corpus.is_some() {
            self.featurize()?;
            self.outputs.clear();
        }
        let instances = self.load_instances(&config)?;
        let vocab = Vocabulary::from_tsv(&read(&dir.join("vocab.tsv"), &format!("featurize --features {config}"))?)?;
        let train_set = in_split(&instances, Split::Train);
        let dev = in_split(&instances, Split::Dev);
        let explicit = self.train_config()?;
        let mut selection = String::from("lambda\tdev_accuracy\n");
        let train_config = match explicit {
            Some(c) => c,
            None => {
                let base = TrainConfig {
                    seed: self.opts.seed,
                    ..TrainConfig::default()
                };
                if dev.is_empty() {
                    base
                } else {
                    let (lambda, scores) = model::select_regularization(&train_set, &dev, &vocab, &base, &LAMBDA_GRID)?;
                    for (l, a) in scores {
                        selection.push_str(&format!("{l}\t{a}\n"));
                    }
                    TrainConfig { lambda, ..base }
                }
            }
        };
        let m = model::train(&train_set, vocab, &train_config, &config.to_string())?;
        self.write(dir.join("model.txt"), &m.to_text())?;
        self.write(dir.join("selection.tsv"), &selection)?;
        self.config = serde_json::json!({ "features": config.to_string(), "train": snapshot(&train_config) });
        self.manifest_dir = Some(dir);
        println!("trained on {} instances (lambda {})", train_set.len(), train_config.lambda);
        Ok(())
    }

    fn load_model(&mut self, config: &FeatureConfig) -> CmdResult<LinearModel> {
        let path = self.feature_dir(config).join("model.txt");
        let m = LinearModel::from_text(&read(&path, &format!("train --features {config}"))?)?;
        self.inputs.push(path.display().to_string());
        Ok(m)
    }

    /// Evaluates on dev and test and writes the test predictions.
    fn evaluate_config(&mut self, config: &FeatureConfig) -> CmdResult<Scored> {
        let m = self.load_model(config)?;
        let instances = self.load_instances(config)?;
        let dir = self.feature_dir(config);
        let mut accuracy = BTreeMap::new();
        let mut table = String::from("split\taccuracy\tn\n");
        let mut correct = Vec::new();
        for split in [Split::Dev, Split::Test] {
            let part = in_split(&instances, split);
            if part.is_empty() {
                continue;
            }
            let e = model::evaluate(&m, &part)?;
            table.push_str(&format!("{split}\t{}\t{}\n", e.accuracy, part.len()));
            accuracy.insert(split, e.accuracy);
            if split == Split::Test {
                let mut preds = format!("{PREDICTIONS_HEADER}\nid\tgold\tpredicted\tscore\tcorrect\n");
                for i in &part {
                    let (label, score) = model::predict(&m, &i.features);
                    preds.push_str(&format!("{}\t{}\t{label}\t{score}\t{}\n", i.id, i.gold, label == i.gold));
                }
                self.write(dir.join("predictions.tsv"), &preds)?;
                correct = e.ids.into_iter().zip(e.correct).collect();
            }
        }
        self.write(dir.join("eval.tsv"), &table)?;
        Ok((accuracy, correct))
    }

    fn eval(&mut self, iterations: usize) -> CmdResult<()> {
        let config = self.feature_config(self.opts.features.clone().as_deref())?;
        let (acc, correct_a) = self.evaluate_config(&config)?;
        for (split, a) in &acc {
            println!("{config}\t{split}\t{a:.4}");
        }
        self.config = serde_json::json!({ "features": config.to_string() });
        let dir = self.feature_dir(&config);
        if let Some(other) = self.opts.compare.clone() {
            let other = self.feature_config(Some(&other))?;
            let (acc_b, correct_b) = self.evaluate_config(&other)?;
            for (split, a) in &acc_b {
                println!("{other}\t{split}\t{a:.4}");
            }
            let b_by_id: BTreeMap<&str, bool> = correct_b.iter().map(|(id, c)| (id.as_str(), *c)).collect();
            let mut a_vec = Vec::new();
            let mut b_vec = Vec::new();
            for (id, c) in &correct_a {
                if let Some(&cb) = b_by_id.get(id.as_str()) {
                    a_vec.push(*c);
                    b_vec.push(cb);
                }
            }
            if a_vec.len() != correct_a.len() || a_vec.len() != correct_b.len() {
                return Err(Failure::Validation(format!(
                    "{config} and {other} were evaluated on different test instances"
                )));
            }
            let r = stats::approx_randomization(&a_vec, &b_vec, iterations, self.opts.seed)?;
            let text = format!(
                "config\ttest_accuracy\n{config}\t{}\n{other}\t{}\nobserved_diff\t{}\np_value\t{}\niterations\t{}\nseed\t{}\n",
                acc.get(&Split::Test).copied().unwrap_or(f64::NAN),
                acc_b.get(&Split::Test).copied().unwrap_or(f64::NAN),
                r.observed_diff,
                r.p_value,
                r.iterations,
                r.seed
            );
            self.write(dir.join(format!("compare_{other}.tsv")), &text)?;
            println!("randomization p = {} (R = {}, seed {})", r.p_value, r.iterations, r.seed);
            self.config = serde_json::json!({ "features": config.to_string(), "compare": other.to_string(), "iterations": iterations });
        }
        self.manifest_dir = Some(dir);
        Ok(())
    }

    fn weights(&mut self, top_k: usize) -> CmdResult<()> {
        let config = self.feature_config(self.opts.features.clone().as_deref())?;
        let m = self.load_model(&config)?;
        let entries = model::weight_variation_report(&m, top_k)?;
        let dir = self.feature_dir(&config);
        let text = model::weight_report_tsv(&entries);
        self.write(dir.join("weights.tsv"), &text)?;
        self.config = serde_json::json!({ "features": config.to_string(), "top_k": top_k });
        self.manifest_dir = Some(dir);
        print!("{text}");
        Ok(())
    }
}
