//! Command-line interface: similarity queries, logic-form derivation,
//! refutation proofs with traces, lexical-path queries, knowledge-base
//! statistics, and batch corpus evaluation comparing the two methods.
//!
//! Exit codes: 0 for success (or an entailed verdict), 1 for a valid run
//! with a negative verdict, 2 for usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::lexkb::{LexKB, Pos, SimMeasure};
use crate::logicform::{
    derive_logic_form, parse_annotated_tokens, parse_logic_form, AnnotatedToken, LogicalForm,
};
use crate::lpe::{content_words, entails_lpe, find_all_lpe, words_of_form, LpeConfig, LpeWitness};
use crate::resolution::{entails_mrm, Evidence, ProveConfig, RefuteOutcome};
use crate::unification::UnifyConfig;

#[derive(Parser)]
#[command(
    name = "entail",
    about = "Textual entailment by scored resolution and by lexical semantic paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Word similarity over the knowledge base
    Sim(SimArgs),
    /// Derive a logic form from an annotated sentence
    Derive(DeriveArgs),
    /// Decide entailment by refutation with similarity-scored unification
    Prove(ProveArgs),
    /// Decide entailment by counting lexical paths
    Lpe(LpeArgs),
    /// Run both methods over a corpus of pairs and compare them
    Eval(EvalArgs),
    /// Knowledge-base statistics
    KbInfo(KbInfoArgs),
}

fn parse_measure(s: &str) -> Result<SimMeasure, String> {
    SimMeasure::from_tag(s).ok_or_else(|| format!("unknown measure `{s}` (path, wup, lch)"))
}

fn parse_pos(s: &str) -> Result<Pos, String> {
    Pos::from_tag(s).ok_or_else(|| format!("unknown pos `{s}` (n, v, a, r)"))
}

#[derive(Args)]
struct SimArgs {
    /// Knowledge base file
    #[arg(long, env = "ENTAIL_KB")]
    kb: PathBuf,
    #[arg(long, env = "ENTAIL_MEASURE", default_value = "path", value_parser = parse_measure)]
    measure: SimMeasure,
    /// Restrict both words to one part of speech
    #[arg(long, value_parser = parse_pos)]
    pos: Option<Pos>,
    w1: String,
    w2: String,
}

#[derive(Args)]
struct DeriveArgs {
    /// Annotated-sentence file (index, lemma, pos, role, head, transitivity)
    #[arg(long)]
    ann: PathBuf,
}

#[derive(Args)]
struct ProveArgs {
    #[arg(long, env = "ENTAIL_KB")]
    kb: PathBuf,
    /// Text file: one logic form per line
    #[arg(long = "t")]
    t: PathBuf,
    /// Hypothesis file: a single logic form
    #[arg(long = "h")]
    h: PathBuf,
    #[arg(long, env = "ENTAIL_MEASURE", default_value = "path", value_parser = parse_measure)]
    measure: SimMeasure,
    /// Per-comparison similarity threshold
    #[arg(long = "tau-step", default_value_t = 0.2)]
    tau_step: f64,
    /// Per-atom aggregate score threshold
    #[arg(long = "tau-atom", default_value_t = 0.0)]
    tau_atom: f64,
    /// Derivation-score threshold for the verdict
    #[arg(long = "tau-total", default_value_t = 0.0)]
    tau_total: f64,
    /// Resolvent-generation budget
    #[arg(long = "max-steps", default_value_t = 10_000)]
    max_steps: usize,
    /// Append the derivation trace to the report
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct LpeArgs {
    #[arg(long, env = "ENTAIL_KB")]
    kb: PathBuf,
    /// Text words given inline
    #[arg(long = "t-words", num_args = 1..)]
    t_words: Vec<String>,
    /// Hypothesis words given inline
    #[arg(long = "h-words", num_args = 1..)]
    h_words: Vec<String>,
    /// Annotated-sentence file for the text side
    #[arg(long = "t", conflicts_with = "t_words")]
    t: Option<PathBuf>,
    /// Annotated-sentence file for the hypothesis side
    #[arg(long = "h", conflicts_with = "h_words")]
    h: Option<PathBuf>,
    /// The verdict needs strictly more qualifying pairs than this
    #[arg(long = "tau-pairs", default_value_t = 0)]
    tau_pairs: usize,
    /// Maximum path length in edges
    #[arg(long = "max-len", default_value_t = 6)]
    max_len: usize,
    /// Do not credit word pairs that merely share a synset
    #[arg(long = "no-shared-synsets")]
    no_shared_synsets: bool,
    /// List every simple path per qualifying pair, not just a shortest one
    #[arg(long = "all-paths")]
    all_paths: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, env = "ENTAIL_KB")]
    kb: PathBuf,
    /// Corpus file of entailment pairs
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, env = "ENTAIL_MEASURE", default_value = "path", value_parser = parse_measure)]
    measure: SimMeasure,
    #[arg(long = "tau-step", default_value_t = 0.2)]
    tau_step: f64,
    #[arg(long = "tau-atom", default_value_t = 0.0)]
    tau_atom: f64,
    #[arg(long = "tau-total", default_value_t = 0.0)]
    tau_total: f64,
    #[arg(long = "max-steps", default_value_t = 10_000)]
    max_steps: usize,
    #[arg(long = "tau-pairs", default_value_t = 0)]
    tau_pairs: usize,
    #[arg(long = "max-len", default_value_t = 6)]
    max_len: usize,
    /// Aggregate sweep, e.g. `tau-total=0:20:5` or `tau-pairs=0:4:1`
    #[arg(long)]
    sweep: Option<String>,
}

#[derive(Args)]
struct KbInfoArgs {
    #[arg(long, env = "ENTAIL_KB")]
    kb: PathBuf,
}

/// Runs one invocation. `argv` includes the program name. Returns the
/// exit status and the full report text.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, err.render().to_string());
        }
    };
    let result = match cli.command {
        Command::Sim(args) => cmd_sim(args),
        Command::Derive(args) => cmd_derive(args),
        Command::Prove(args) => cmd_prove(args),
        Command::Lpe(args) => cmd_lpe(args),
        Command::Eval(args) => cmd_eval(args),
        Command::KbInfo(args) => cmd_kb_info(args),
    };
    match result {
        Ok((code, out)) => (code, out),
        Err(msg) => (2, format!("error: {msg}\n")),
    }
}

fn load_kb_file(path: &Path) -> Result<LexKB, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    text.parse().map_err(|e| format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// One logic form per non-empty, non-comment line.
fn parse_form_file(path: &Path) -> Result<Vec<LogicalForm>, String> {
    let mut forms = Vec::new();
    for (idx, line) in read_file(path)?.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let form = parse_logic_form(line)
            .map_err(|e| format!("{} line {}: {e}", path.display(), idx + 1))?;
        forms.push(form);
    }
    if forms.is_empty() {
        return Err(format!("{}: no logic forms found", path.display()));
    }
    Ok(forms)
}

fn parse_ann_file(path: &Path) -> Result<Vec<AnnotatedToken>, String> {
    parse_annotated_tokens(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn check_prove_thresholds(
    tau_step: f64,
    tau_atom: f64,
    tau_total: f64,
    max_steps: usize,
) -> Result<(), String> {
    if !(0.0..=1.0).contains(&tau_step) {
        return Err(format!("tau-step must lie in [0, 1], got {tau_step}"));
    }
    if tau_atom < 0.0 {
        return Err(format!("tau-atom must be non-negative, got {tau_atom}"));
    }
    if tau_total < 0.0 {
        return Err(format!("tau-total must be non-negative, got {tau_total}"));
    }
    if max_steps == 0 {
        return Err("max-steps must be at least 1".into());
    }
    Ok(())
}

/// Plain `Display` float formatting: `0.5`, `1`, `17.75`.
fn num(value: f64) -> String {
    format!("{value}")
}

fn yes_no(value: bool) -> &'static str {
    if value {
        "yes"
    } else {
        "no"
    }
}

fn cmd_sim(args: SimArgs) -> Result<(i32, String), String> {
    let kb = load_kb_file(&args.kb)?;
    let score = kb.similarity(&args.w1, &args.w2, args.measure, args.pos);
    let mut out = String::new();
    let _ = writeln!(out, "measure: {}", args.measure.tag());
    if let Some(pos) = args.pos {
        let _ = writeln!(out, "pos: {pos}");
    }
    let _ = writeln!(out, "w1: {}", args.w1);
    let _ = writeln!(out, "w2: {}", args.w2);
    let _ = writeln!(out, "similarity: {}", num(score));
    Ok((0, out))
}

fn cmd_derive(args: DeriveArgs) -> Result<(i32, String), String> {
    let tokens = parse_ann_file(&args.ann)?;
    let form = derive_logic_form(&tokens).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let _ = writeln!(out, "tokens: {}", tokens.len());
    let _ = writeln!(out, "logic-form: {form}");
    Ok((0, out))
}

fn cmd_prove(args: ProveArgs) -> Result<(i32, String), String> {
    check_prove_thresholds(args.tau_step, args.tau_atom, args.tau_total, args.max_steps)?;
    let kb = load_kb_file(&args.kb)?;
    let t_forms = parse_form_file(&args.t)?;
    let h_forms = parse_form_file(&args.h)?;
    if h_forms.len() != 1 {
        return Err(format!(
            "{}: the hypothesis must be a single logic form, found {}",
            args.h.display(),
            h_forms.len()
        ));
    }
    let cfg = ProveConfig {
        unify: UnifyConfig {
            tau_step: args.tau_step,
            tau_atom: args.tau_atom,
            measure: args.measure,
        },
        tau_total: args.tau_total,
        max_steps: args.max_steps,
        ..ProveConfig::default()
    };
    let verdict = entails_mrm(&t_forms, &h_forms[0], &kb, &cfg);

    let mut out = String::new();
    let _ = writeln!(out, "method: mrm");
    let _ = writeln!(out, "measure: {}", args.measure.tag());
    for (name, value) in &verdict.thresholds {
        let _ = writeln!(out, "{name}: {}", num(*value));
    }
    let Evidence::Mrm(outcome) = &verdict.evidence else {
        unreachable!("mrm verdicts carry refutation evidence");
    };
    let _ = writeln!(out, "outcome: {}", outcome.label());
    let steps = outcome.derivation().map_or(0, |d| d.steps.len());
    let _ = writeln!(out, "steps: {steps}");
    let _ = writeln!(out, "score: {}", num(verdict.score));
    let _ = writeln!(out, "entailed: {}", yes_no(verdict.entailed));
    if args.trace {
        if let Some(derivation) = outcome.derivation() {
            out.push_str(&derivation.trace());
        }
    }
    Ok((if verdict.entailed { 0 } else { 1 }, out))
}

fn cmd_lpe(args: LpeArgs) -> Result<(i32, String), String> {
    if args.max_len == 0 {
        return Err("max-len must be at least 1".into());
    }
    let kb = load_kb_file(&args.kb)?;
    let t_words = match (&args.t, args.t_words.is_empty()) {
        (Some(path), _) => content_words(&parse_ann_file(path)?),
        (None, false) => args.t_words.clone(),
        (None, true) => return Err("provide --t-words or --t".into()),
    };
    let h_words = match (&args.h, args.h_words.is_empty()) {
        (Some(path), _) => content_words(&parse_ann_file(path)?),
        (None, false) => args.h_words.clone(),
        (None, true) => return Err("provide --h-words or --h".into()),
    };
    let cfg = LpeConfig {
        tau_pairs: args.tau_pairs,
        max_len: args.max_len,
        count_shared_synset: !args.no_shared_synsets,
    };
    let verdict = entails_lpe(&t_words, &h_words, &kb, &cfg);

    let mut out = String::new();
    let _ = writeln!(out, "method: lpe");
    let _ = writeln!(out, "tau-pairs: {}", args.tau_pairs);
    let _ = writeln!(out, "max-len: {}", args.max_len);
    let _ = writeln!(out, "count: {}", num(verdict.score));
    let _ = writeln!(out, "entailed: {}", yes_no(verdict.entailed));
    let Evidence::Lpe(witnesses) = &verdict.evidence else {
        unreachable!("lpe verdicts carry path evidence");
    };
    for witness in witnesses {
        if args.all_paths {
            if let LpeWitness::Path(path) = witness {
                for alt in find_all_lpe(&kb, &path.source_word, &path.target_word, args.max_len) {
                    let _ = writeln!(
                        out,
                        "pair {} -> {}: {alt}",
                        path.source_word, path.target_word
                    );
                }
                continue;
            }
        }
        let _ = writeln!(out, "{witness}");
    }
    Ok((if verdict.entailed { 0 } else { 1 }, out))
}

fn cmd_kb_info(args: KbInfoArgs) -> Result<(i32, String), String> {
    let kb = load_kb_file(&args.kb)?;
    let mut out = String::new();
    let _ = writeln!(out, "synsets: {}", kb.synset_count());
    let _ = writeln!(out, "edges: {}", kb.edge_count());
    for (label, pos) in [
        ("nouns", Pos::Noun),
        ("verbs", Pos::Verb),
        ("adjectives", Pos::Adj),
        ("adverbs", Pos::Adv),
    ] {
        let count = kb.synsets().filter(|s| s.pos == pos).count();
        let _ = writeln!(out, "{label}: {count}");
    }
    for (label, rel) in [
        ("isa-edges", crate::lexkb::SemRelation::IsA),
        ("entail-edges", crate::lexkb::SemRelation::Entail),
        ("cause-edges", crate::lexkb::SemRelation::CauseTo),
    ] {
        let count = kb.edges().filter(|(_, r, _)| *r == rel).count();
        let _ = writeln!(out, "{label}: {count}");
    }
    for (label, pos) in [
        ("max-depth-noun", Pos::Noun),
        ("max-depth-verb", Pos::Verb),
        ("max-depth-adj", Pos::Adj),
        ("max-depth-adv", Pos::Adv),
    ] {
        let _ = writeln!(out, "{label}: {}", kb.max_depth(pos));
    }
    Ok((0, out))
}

// ---- corpus evaluation ----

enum PairSource {
    Forms(Vec<LogicalForm>),
    Tokens(Vec<AnnotatedToken>),
}

struct CorpusPair {
    id: String,
    gold: Option<bool>,
    t: PairSource,
    h: PairSource,
}

enum CorpusBlock {
    Pair(Box<CorpusPair>),
    Skipped { id: String, reason: String },
}

/// Parses the pair file format: blocks separated by blank lines, with
/// `id:`, `gold:`, and either `t-lf:`/`h-lf:` inline logic forms or
/// `t-ann:`/`h-ann:` headers followed by token lines. Per-block failures
/// become skipped rows instead of aborting the run.
fn parse_corpus(text: &str) -> Vec<CorpusBlock> {
    let mut blocks = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    for line in text.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if !current.is_empty() {
                blocks.push(parse_block(&current, blocks.len() + 1));
                current.clear();
            }
        } else if !line.trim_start().starts_with('#') {
            current.push(line);
        }
    }
    blocks
}

fn parse_block(lines: &[&str], ordinal: usize) -> CorpusBlock {
    let mut id: Option<String> = None;
    let mut gold: Option<bool> = None;
    let mut t_forms: Vec<LogicalForm> = Vec::new();
    let mut h_forms: Vec<LogicalForm> = Vec::new();
    let mut t_ann: Option<String> = None;
    let mut h_ann: Option<String> = None;
    // which `-ann:` section subsequent token lines belong to
    let mut open_ann: Option<bool> = None; // true = t side

    let fallback_id = format!("block-{ordinal}");
    let fail = |id: &Option<String>, reason: String| CorpusBlock::Skipped {
        id: id.clone().unwrap_or_else(|| fallback_id.clone()),
        reason,
    };

    for line in lines {
        if line.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            let target = match open_ann {
                Some(true) => &mut t_ann,
                Some(false) => &mut h_ann,
                None => return fail(&id, "token line outside a t-ann/h-ann section".into()),
            };
            let buf = target.get_or_insert_with(String::new);
            buf.push_str(line);
            buf.push('\n');
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return fail(&id, format!("expected `key: value`, got `{line}`"));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "id" => id = Some(value.to_string()),
            "gold" => match value {
                "yes" => gold = Some(true),
                "no" => gold = Some(false),
                other => return fail(&id, format!("gold must be yes or no, got `{other}`")),
            },
            "t-lf" => match parse_logic_form(value) {
                Ok(form) => {
                    open_ann = None;
                    t_forms.push(form);
                }
                Err(e) => return fail(&id, format!("t-lf: {e}")),
            },
            "h-lf" => match parse_logic_form(value) {
                Ok(form) => {
                    open_ann = None;
                    h_forms.push(form);
                }
                Err(e) => return fail(&id, format!("h-lf: {e}")),
            },
            "t-ann" => open_ann = Some(true),
            "h-ann" => open_ann = Some(false),
            other => return fail(&id, format!("unknown key `{other}`")),
        }
    }

    let id_value = id.clone().unwrap_or(fallback_id.clone());
    let side =
        |forms: Vec<LogicalForm>, ann: Option<String>, label: &str| -> Result<PairSource, String> {
            match (forms.is_empty(), ann) {
                (false, None) => Ok(PairSource::Forms(forms)),
                (true, Some(text)) => parse_annotated_tokens(&text)
                    .map(PairSource::Tokens)
                    .map_err(|e| format!("{label}-ann: {e}")),
                (false, Some(_)) => Err(format!("{label}-lf and {label}-ann are exclusive")),
                (true, None) => Err(format!("missing {label}-lf or {label}-ann")),
            }
        };
    let t = match side(t_forms, t_ann, "t") {
        Ok(source) => source,
        Err(reason) => return fail(&id, reason),
    };
    let h = match side(h_forms, h_ann, "h") {
        Ok(source) => source,
        Err(reason) => return fail(&id, reason),
    };
    CorpusBlock::Pair(Box::new(CorpusPair {
        id: id_value,
        gold,
        t,
        h,
    }))
}

/// One evaluated corpus pair: the raw method outputs plus the gold label.
/// Verdicts depend on thresholds and are derived on demand.
#[derive(Debug, Clone)]
pub struct EvalRow {
    pub id: String,
    pub gold: Option<bool>,
    /// Whether the refutation search reached the empty clause.
    pub mrm_proved: bool,
    pub mrm_score: f64,
    pub lpe_count: usize,
}

impl EvalRow {
    pub fn mrm_entailed(&self, tau_total: f64) -> bool {
        self.mrm_proved && self.mrm_score > tau_total
    }

    pub fn lpe_entailed(&self, tau_pairs: usize) -> bool {
        self.lpe_count > tau_pairs
    }
}

/// A report entry, in corpus order.
#[derive(Debug, Clone)]
pub enum EvalEntry {
    Row(EvalRow),
    Skipped { id: String, reason: String },
}

fn evaluate_pair(
    pair: &CorpusPair,
    kb: &LexKB,
    prove_cfg: &ProveConfig,
    lpe_cfg: &LpeConfig,
) -> Result<EvalRow, String> {
    let t_forms: Vec<LogicalForm> = match &pair.t {
        PairSource::Forms(forms) => forms.clone(),
        PairSource::Tokens(tokens) => {
            vec![derive_logic_form(tokens).map_err(|e| format!("t-ann: {e}"))?]
        }
    };
    let h_form: LogicalForm = match &pair.h {
        PairSource::Forms(forms) => {
            if forms.len() != 1 {
                return Err("the hypothesis must be a single logic form".into());
            }
            forms[0].clone()
        }
        PairSource::Tokens(tokens) => {
            derive_logic_form(tokens).map_err(|e| format!("h-ann: {e}"))?
        }
    };
    let mrm = entails_mrm(&t_forms, &h_form, kb, prove_cfg);
    let Evidence::Mrm(outcome) = &mrm.evidence else {
        unreachable!()
    };

    let side_words = |source: &PairSource| -> Vec<String> {
        match source {
            PairSource::Tokens(tokens) => content_words(tokens),
            PairSource::Forms(forms) => forms.iter().flat_map(words_of_form).collect(),
        }
    };
    let lpe = entails_lpe(&side_words(&pair.t), &side_words(&pair.h), kb, lpe_cfg);

    Ok(EvalRow {
        id: pair.id.clone(),
        gold: pair.gold,
        mrm_proved: matches!(outcome, RefuteOutcome::Proved(_)),
        mrm_score: mrm.score,
        lpe_count: lpe.score as usize,
    })
}

/// Accuracy (against gold labels) and inter-method agreement; `None` when
/// the denominator is empty.
#[derive(Debug, Clone, Copy)]
pub struct Aggregates {
    pub mrm_accuracy: Option<f64>,
    pub lpe_accuracy: Option<f64>,
    pub agreement: Option<f64>,
}

/// Result of evaluating a corpus with both methods, with the thresholds
/// its verdict columns were decided against.
#[derive(Debug, Clone)]
pub struct EvalReport {
    pub entries: Vec<EvalEntry>,
    pub tau_total: f64,
    pub tau_pairs: usize,
}

impl EvalReport {
    pub fn rows(&self) -> impl Iterator<Item = &EvalRow> {
        self.entries.iter().filter_map(|entry| match entry {
            EvalEntry::Row(row) => Some(row),
            EvalEntry::Skipped { .. } => None,
        })
    }

    pub fn skipped(&self) -> usize {
        self.entries.len() - self.rows().count()
    }

    pub fn aggregates(&self) -> Aggregates {
        self.aggregates_at(self.tau_total, self.tau_pairs)
    }

    /// Aggregates recomputed at other thresholds (threshold sweeps).
    pub fn aggregates_at(&self, tau_total: f64, tau_pairs: usize) -> Aggregates {
        let mut agree = 0usize;
        let mut gold_total = 0usize;
        let (mut mrm_hits, mut lpe_hits) = (0usize, 0usize);
        let mut rows = 0usize;
        for row in self.rows() {
            rows += 1;
            let mrm = row.mrm_entailed(tau_total);
            let lpe = row.lpe_entailed(tau_pairs);
            if mrm == lpe {
                agree += 1;
            }
            if let Some(gold) = row.gold {
                gold_total += 1;
                if mrm == gold {
                    mrm_hits += 1;
                }
                if lpe == gold {
                    lpe_hits += 1;
                }
            }
        }
        let ratio = |hits: usize, total: usize| (total > 0).then(|| hits as f64 / total as f64);
        Aggregates {
            mrm_accuracy: ratio(mrm_hits, gold_total),
            lpe_accuracy: ratio(lpe_hits, gold_total),
            agreement: ratio(agree, rows),
        }
    }

    /// The key-value report text: one line per entry in corpus order,
    /// then the summary counts and aggregate rates.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            match entry {
                EvalEntry::Row(row) => {
                    let _ = writeln!(
                        out,
                        "pair {}: mrm={} mrm-score={} lpe={} lpe-count={} gold={}",
                        row.id,
                        yes_no(row.mrm_entailed(self.tau_total)),
                        num(row.mrm_score),
                        yes_no(row.lpe_entailed(self.tau_pairs)),
                        row.lpe_count,
                        row.gold.map_or("-", yes_no),
                    );
                }
                EvalEntry::Skipped { id, reason } => {
                    let _ = writeln!(out, "skipped {id}: {reason}");
                }
            }
        }
        let _ = writeln!(out, "pairs: {}", self.rows().count());
        let _ = writeln!(out, "skipped: {}", self.skipped());
        let agg = self.aggregates();
        let _ = writeln!(out, "mrm-accuracy: {}", opt_num(agg.mrm_accuracy));
        let _ = writeln!(out, "lpe-accuracy: {}", opt_num(agg.lpe_accuracy));
        let _ = writeln!(out, "agreement: {}", opt_num(agg.agreement));
        out
    }
}

/// Runs both methods over every pair of a corpus given as text. Rows keep
/// the input order; malformed or underivable pairs become skipped entries
/// rather than aborting the run.
pub fn eval_corpus(
    corpus: &str,
    kb: &LexKB,
    prove_cfg: &ProveConfig,
    lpe_cfg: &LpeConfig,
) -> EvalReport {
    let mut entries = Vec::new();
    for block in parse_corpus(corpus) {
        match block {
            CorpusBlock::Skipped { id, reason } => entries.push(EvalEntry::Skipped { id, reason }),
            CorpusBlock::Pair(pair) => match evaluate_pair(&pair, kb, prove_cfg, lpe_cfg) {
                Ok(row) => entries.push(EvalEntry::Row(row)),
                Err(reason) => entries.push(EvalEntry::Skipped {
                    id: pair.id.clone(),
                    reason,
                }),
            },
        }
    }
    EvalReport {
        entries,
        tau_total: prove_cfg.tau_total,
        tau_pairs: lpe_cfg.tau_pairs,
    }
}

fn opt_num(value: Option<f64>) -> String {
    value.map_or_else(|| "n/a".to_string(), num)
}

/// `name=a:b:step`
fn parse_sweep(spec: &str) -> Result<(String, Vec<f64>), String> {
    let (name, range) = spec
        .split_once('=')
        .ok_or_else(|| format!("sweep must look like name=a:b:step, got `{spec}`"))?;
    if !matches!(name, "tau-total" | "tau-pairs") {
        return Err(format!(
            "sweep supports tau-total or tau-pairs, got `{name}`"
        ));
    }
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("sweep range must be a:b:step, got `{range}`"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|e| format!("bad sweep number `{p}`: {e}"))
        })
        .collect::<Result<_, _>>()?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if step <= 0.0 || end < start {
        return Err("sweep needs step > 0 and b >= a".into());
    }
    let count = ((end - start) / step).floor() as usize + 1;
    Ok((
        name.to_string(),
        (0..count).map(|i| start + step * i as f64).collect(),
    ))
}

fn cmd_eval(args: EvalArgs) -> Result<(i32, String), String> {
    check_prove_thresholds(args.tau_step, args.tau_atom, args.tau_total, args.max_steps)?;
    if args.max_len == 0 {
        return Err("max-len must be at least 1".into());
    }
    let kb = load_kb_file(&args.kb)?;
    let prove_cfg = ProveConfig {
        unify: UnifyConfig {
            tau_step: args.tau_step,
            tau_atom: args.tau_atom,
            measure: args.measure,
        },
        tau_total: args.tau_total,
        max_steps: args.max_steps,
        ..ProveConfig::default()
    };
    let lpe_cfg = LpeConfig {
        tau_pairs: args.tau_pairs,
        max_len: args.max_len,
        count_shared_synset: true,
    };
    let sweep = args.sweep.as_deref().map(parse_sweep).transpose()?;

    let report = eval_corpus(&read_file(&args.corpus)?, &kb, &prove_cfg, &lpe_cfg);
    let mut out = report.render();

    if let Some((name, values)) = sweep {
        for value in values {
            let (tau_total, tau_pairs) = match name.as_str() {
                "tau-total" => (value, args.tau_pairs),
                _ => (args.tau_total, value as usize),
            };
            let agg = report.aggregates_at(tau_total, tau_pairs);
            let _ = writeln!(
                out,
                "sweep {name}={}: mrm-accuracy={} lpe-accuracy={} agreement={}",
                num(value),
                opt_num(agg.mrm_accuracy),
                opt_num(agg.lpe_accuracy),
                opt_num(agg.agreement),
            );
        }
    }
    Ok((0, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> String {
        format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn run(args: &[&str]) -> (i32, String) {
        let mut argv = vec!["entail".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        run_command(argv)
    }

    #[test]
    fn sim_reports_the_fixture_similarity() {
        let (code, out) = run(&[
            "sim",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--measure",
            "path",
            "relative",
            "uncle",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("similarity: 0.5"), "{out}");
    }

    #[test]
    fn sim_rejects_unknown_measure() {
        let (code, out) = run(&[
            "sim",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--measure",
            "resnik",
            "a",
            "b",
        ]);
        assert_eq!(code, 2, "{out}");
    }

    #[test]
    fn missing_kb_file_is_a_usage_error() {
        let (code, out) = run(&["kb-info", "--kb", "/nonexistent/base.kb"]);
        assert_eq!(code, 2);
        assert!(out.contains("cannot read"), "{out}");
    }

    #[test]
    fn out_of_range_tau_step_is_a_usage_error() {
        let (code, out) = run(&[
            "prove",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--t",
            &fixture("t_george.lf"),
            "--h",
            &fixture("h_george.lf"),
            "--tau-step",
            "1.5",
        ]);
        assert_eq!(code, 2, "{out}");
        assert!(out.contains("tau-step"), "{out}");
    }

    #[test]
    fn derive_prints_the_logic_form() {
        let (code, out) = run(&["derive", "--ann", &fixture("george_came.ann")]);
        assert_eq!(code, 0, "{out}");
        assert!(
            out.contains("logic-form: george(x1) & come(e1) & Agent(x1,e1)"),
            "{out}"
        );
    }

    #[test]
    fn prove_reports_the_worked_example() {
        let (code, out) = run(&[
            "prove",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--t",
            &fixture("t_george.lf"),
            "--h",
            &fixture("h_george.lf"),
            "--tau-step",
            "0.2",
            "--tau-total",
            "10",
            "--trace",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("outcome: proved"), "{out}");
        assert!(out.contains("steps: 8"), "{out}");
        assert!(out.contains("score: 17.75"), "{out}");
        assert!(out.contains("entailed: yes"), "{out}");
        assert_eq!(out.matches("\nstep ").count(), 8, "{out}");
        assert!(out.trim_end().ends_with("-> []"), "{out}");
    }

    #[test]
    fn prove_negative_verdict_exits_one() {
        let (code, out) = run(&[
            "prove",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--t",
            &fixture("t_george.lf"),
            "--h",
            &fixture("h_george.lf"),
            "--tau-total",
            "100",
        ]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("entailed: no"), "{out}");
        assert!(out.contains("outcome: proved"), "{out}");
    }

    #[test]
    fn lpe_counts_the_snore_sleep_pair() {
        let (code, out) = run(&[
            "lpe",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--t-words",
            "snore",
            "--h-words",
            "sleep",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("count: 1"), "{out}");
        assert!(
            out.contains("pair snore -> sleep: v5 -[entail]-> v6 (aggregate=entail)"),
            "{out}"
        );
    }

    #[test]
    fn lpe_reads_annotated_files() {
        let (code, out) = run(&[
            "lpe",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--t",
            &fixture("t_george.ann"),
            "--h",
            &fixture("h_george.ann"),
            "--tau-pairs",
            "1",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("count: 2"), "{out}");
        assert!(out.contains("pair uncle -> relative"), "{out}");
        assert!(
            out.contains("pair us -> america: shared synset n5"),
            "{out}"
        );
    }

    #[test]
    fn lpe_all_paths_lists_every_route() {
        let (code, out) = run(&[
            "lpe",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--t-words",
            "murder",
            "--h-words",
            "die",
            "--all-paths",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(
            out.contains("pair murder -> die: v9 -[isa]-> v7 -[cause]-> v8 (aggregate=cause)"),
            "{out}"
        );
    }

    #[test]
    fn lpe_shared_synset_crediting_can_be_disabled() {
        let (code, out) = run(&[
            "lpe",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--t-words",
            "us",
            "--h-words",
            "america",
            "--no-shared-synsets",
        ]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("count: 0"), "{out}");
    }

    #[test]
    fn lpe_negative_verdict_exits_one() {
        let (code, out) = run(&[
            "lpe",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--t-words",
            "sleep",
            "--h-words",
            "snore",
        ]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("count: 0"), "{out}");
    }

    #[test]
    fn kb_info_reports_counts_and_depths() {
        let (code, out) = run(&["kb-info", "--kb", &fixture("mini_wordnet.kb")]);
        assert_eq!(code, 0);
        for expect in [
            "synsets: 15",
            "edges: 10",
            "nouns: 6",
            "verbs: 9",
            "isa-edges: 8",
            "entail-edges: 1",
            "cause-edges: 1",
            "max-depth-noun: 3",
            "max-depth-verb: 3",
        ] {
            assert!(out.contains(expect), "missing `{expect}` in {out}");
        }
    }

    #[test]
    fn eval_reports_rows_and_aggregates() {
        let (code, out) = run(&[
            "eval",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--corpus",
            &fixture("rte_sample.corpus"),
            "--tau-total",
            "10",
            "--tau-pairs",
            "1",
        ]);
        assert_eq!(code, 0, "{out}");
        // logic-form sources draw LPE words from predicates too, so the
        // Location role atoms contribute location->location and us->location
        assert!(
            out.contains(
                "pair george-example: mrm=yes mrm-score=17.75 lpe=yes lpe-count=4 gold=yes"
            ),
            "{out}"
        );
        assert!(out.contains("pair george-reversed: mrm=no"), "{out}");
        assert!(out.contains("pair snore-sleep: mrm=no"), "{out}");
        assert!(
            out.contains("pair george-ann: mrm=yes mrm-score=18.75 lpe=yes lpe-count=2 gold=yes"),
            "{out}"
        );
        assert!(out.contains("pairs: 4"), "{out}");
        assert!(out.contains("skipped: 0"), "{out}");
        assert!(out.contains("mrm-accuracy: 0.75"), "{out}");
        assert!(out.contains("lpe-accuracy: 1"), "{out}");
        assert!(out.contains("agreement: 0.75"), "{out}");
    }

    #[test]
    fn eval_handles_an_empty_corpus() {
        let dir = std::env::temp_dir().join("entail-empty-corpus-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("empty.corpus");
        std::fs::write(&path, "# nothing here\n").unwrap();
        let (code, out) = run(&[
            "eval",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--corpus",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("pairs: 0"), "{out}");
        assert!(out.contains("agreement: n/a"), "{out}");
    }

    #[test]
    fn eval_records_skipped_blocks() {
        let dir = std::env::temp_dir().join("entail-skip-corpus-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.corpus");
        std::fs::write(
            &path,
            "id: broken\ngold: yes\nt-lf: p(x1) &\nh-lf: q(x1)\n\nid: fine\ngold: yes\nt-lf: man(x1)\nh-lf: person(x1)\n",
        )
        .unwrap();
        let (code, out) = run(&[
            "eval",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--corpus",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("skipped broken: t-lf:"), "{out}");
        assert!(out.contains("skipped: 1"), "{out}");
        assert!(out.contains("pairs: 1"), "{out}");
        assert!(out.contains("pair fine: mrm=yes"), "{out}");
    }

    #[test]
    fn eval_corpus_reports_rows_in_input_order() {
        let kb: LexKB = std::fs::read_to_string(fixture("mini_wordnet.kb"))
            .unwrap()
            .parse()
            .unwrap();
        let corpus = "id: one\ngold: yes\nt-lf: snore(e1)\nh-lf: sleep(e1)\n\nid: two\nt-lf: p(x1) &\nh-lf: q(x1)\n";
        let report = eval_corpus(corpus, &kb, &ProveConfig::default(), &LpeConfig::default());
        assert_eq!(report.entries.len(), 2);
        let EvalEntry::Row(row) = &report.entries[0] else {
            panic!("first entry is a row");
        };
        assert_eq!(row.id, "one");
        assert!(row.lpe_entailed(0));
        assert!(!row.mrm_proved, "snore/sleep has no IS-A similarity");
        assert!(matches!(&report.entries[1], EvalEntry::Skipped { id, .. } if id == "two"));
        let agg = report.aggregates();
        assert_eq!(agg.agreement, Some(0.0));
        assert_eq!(agg.lpe_accuracy, Some(1.0));
        assert_eq!(agg.mrm_accuracy, Some(0.0));
    }

    #[test]
    fn agreement_is_invariant_under_row_permutation() {
        let blocks = [
            "id: a\ngold: yes\nt-lf: snore(e1)\nh-lf: sleep(e1)\n",
            "id: b\ngold: no\nt-lf: sleep(e1)\nh-lf: snore(e1)\n",
            "id: c\nt-lf: murder(e1)\nh-lf: die(e1)\n",
        ];
        let dir = std::env::temp_dir().join("entail-permutation-test");
        std::fs::create_dir_all(&dir).unwrap();
        let mut agreements = Vec::new();
        for (name, order) in [("fwd", [0, 1, 2]), ("rev", [2, 0, 1])] {
            let path = dir.join(format!("{name}.corpus"));
            let text: String = order.map(|i| blocks[i]).join("\n");
            std::fs::write(&path, text).unwrap();
            let (code, out) = run(&[
                "eval",
                "--kb",
                &fixture("mini_wordnet.kb"),
                "--corpus",
                path.to_str().unwrap(),
            ]);
            assert_eq!(code, 0, "{out}");
            let agreement = out
                .lines()
                .find(|l| l.starts_with("agreement: "))
                .expect("agreement line")
                .to_string();
            agreements.push(agreement);
        }
        assert_eq!(agreements[0], agreements[1]);
    }

    #[test]
    fn eval_sweep_emits_one_row_per_value() {
        let (code, out) = run(&[
            "eval",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--corpus",
            &fixture("rte_sample.corpus"),
            "--sweep",
            "tau-total=0:20:5",
        ]);
        assert_eq!(code, 0, "{out}");
        for expect in [
            "sweep tau-total=0:",
            "sweep tau-total=5:",
            "sweep tau-total=10:",
            "sweep tau-total=15:",
            "sweep tau-total=20:",
        ] {
            assert!(out.contains(expect), "missing `{expect}` in {out}");
        }
    }

    #[test]
    fn identical_invocations_are_byte_identical() {
        let args = [
            "eval",
            "--kb",
            &fixture("mini_wordnet.kb"),
            "--corpus",
            &fixture("rte_sample.corpus"),
            "--tau-total",
            "10",
            "--tau-pairs",
            "1",
        ];
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second);
    }
}
