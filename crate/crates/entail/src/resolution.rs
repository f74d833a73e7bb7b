//! Lexical resolution: the resolution rule with similarity-relaxed
//! unification in place of syntactic unification, a scored best-first
//! refutation search, and the entailment decision built on top of it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt;
use std::rc::Rc;

use crate::lexkb::LexKB;
use crate::logicform::{clausify, Clause, Literal, LogicalForm, Term};
use crate::unification::{apply_substitution, unify_atoms, Substitution, UnifyConfig};

/// Identifier of a clause within one refutation search: input clauses get
/// 1..=n in input order, resolvents continue from n+1 in generation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClauseId(pub usize);

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One application of the lexical resolution rule.
#[derive(Debug, Clone)]
pub struct ResolutionStep {
    pub parents: (ClauseId, ClauseId),
    /// The resolved literal pair, in parent order; the two have opposite
    /// polarity.
    pub resolved: (Literal, Literal),
    pub sigma: Substitution,
    pub resolvent: Clause,
    /// The unification score W of the resolved pair.
    pub score: f64,
}

/// A refutation: resolution steps (each listed after its parents) ending
/// in the empty clause.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub steps: Vec<ResolutionStep>,
    /// Sum of the step scores.
    pub total_score: f64,
    pub final_clause: Clause,
}

impl Derivation {
    /// Line-oriented trace, one line per step:
    /// `step <n>: <cid1> x <cid2> on <lit1>~<lit2> sim-score=<W> -> <resolvent>`
    pub fn trace(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "step {}: {} x {} on {}~{} sim-score={} -> {}\n",
                i + 1,
                step.parents.0,
                step.parents.1,
                step.resolved.0,
                step.resolved.1,
                step.score,
                step.resolvent,
            ));
        }
        out
    }
}

/// Outcome of a refutation search. Budget exhaustion is reported apart
/// from genuine saturation: the former is "unknown", the latter means no
/// refutation exists under the configuration.
#[derive(Debug, Clone)]
pub enum RefuteOutcome {
    Proved(Derivation),
    Saturated,
    BudgetExhausted,
}

impl RefuteOutcome {
    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            RefuteOutcome::Proved(d) => Some(d),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            RefuteOutcome::Proved(_) => "proved",
            RefuteOutcome::Saturated => "saturated",
            RefuteOutcome::BudgetExhausted => "budget",
        }
    }
}

/// Configuration of the refutation search and the entailment verdict.
#[derive(Debug, Clone, Copy)]
pub struct ProveConfig {
    pub unify: UnifyConfig,
    /// Derivation-score threshold τ for the verdict; 0 makes bare
    /// refutation sufficient.
    pub tau_total: f64,
    /// Resolvent-generation budget.
    pub max_steps: usize,
    /// Resolvents with more literals than this are discarded.
    pub max_clause_size: usize,
}

impl Default for ProveConfig {
    fn default() -> ProveConfig {
        ProveConfig {
            unify: UnifyConfig::default(),
            tau_total: 0.0,
            max_steps: 10_000,
            max_clause_size: 64,
        }
    }
}

/// All lexical resolution steps between two clauses: one per literal pair
/// of opposite polarity whose atoms unify under `cfg`. The clauses must
/// be standardized apart.
pub fn resolve_step(
    c1: &Clause,
    c2: &Clause,
    kb: &LexKB,
    cfg: &UnifyConfig,
) -> Vec<ResolutionStep> {
    resolve_between(ClauseId(1), c1, ClauseId(2), c2, kb, cfg)
}

fn resolve_between(
    id1: ClauseId,
    c1: &Clause,
    id2: ClauseId,
    c2: &Clause,
    kb: &LexKB,
    cfg: &UnifyConfig,
) -> Vec<ResolutionStep> {
    let mut steps = Vec::new();
    for lit1 in &c1.literals {
        for lit2 in &c2.literals {
            if lit1.negated == lit2.negated {
                continue;
            }
            let Some(outcome) = unify_atoms(&lit1.atom, &lit2.atom, kb, cfg) else {
                continue;
            };
            let resolvent = Clause::new(
                c1.literals
                    .iter()
                    .filter(|l| *l != lit1)
                    .chain(c2.literals.iter().filter(|l| *l != lit2))
                    .map(|l| outcome.sigma.apply_literal(l)),
            );
            steps.push(ResolutionStep {
                parents: (id1, id2),
                resolved: (lit1.clone(), lit2.clone()),
                sigma: outcome.sigma,
                resolvent,
                score: outcome.score,
            });
        }
    }
    steps
}

struct History {
    step: ResolutionStep,
    parents: (Option<Rc<History>>, Option<Rc<History>>),
}

struct Node {
    clause: Clause,
    accum: f64,
    history: Option<Rc<History>>,
    in_usable: bool,
}

enum Inserted {
    New(usize),
    /// A known clause rediscovered with a strictly better accumulated
    /// score; its derivation is replaced.
    Improved(usize),
    Duplicate,
}

/// Priority-queue entry: highest accumulated score first, oldest clause on
/// ties (stable, deterministic exploration order).
struct QueueEntry {
    node: usize,
    accum: f64,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for QueueEntry {}
impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.accum
            .total_cmp(&other.accum)
            .then_with(|| other.node.cmp(&self.node))
    }
}

struct Engine<'a> {
    kb: &'a LexKB,
    cfg: &'a ProveConfig,
    nodes: Vec<Node>,
    seen: BTreeMap<Clause, usize>,
    usable: Vec<usize>,
    sos: BinaryHeap<QueueEntry>,
    generated: usize,
    rename_counter: usize,
}

impl<'a> Engine<'a> {
    fn new(clauses: &[Clause], kb: &'a LexKB, cfg: &'a ProveConfig) -> Engine<'a> {
        let mut engine = Engine {
            kb,
            cfg,
            nodes: Vec::new(),
            seen: BTreeMap::new(),
            usable: Vec::new(),
            sos: BinaryHeap::new(),
            generated: 0,
            rename_counter: 0,
        };

        // Standardize the inputs apart: clauses may not share variables.
        let mut seen_vars: BTreeSet<String> = BTreeSet::new();
        let mut prepared: Vec<Clause> = Vec::new();
        for clause in clauses {
            let clashing: Vec<String> = clause
                .variables()
                .into_iter()
                .filter(|v| seen_vars.contains(*v))
                .map(str::to_string)
                .collect();
            let clause = if clashing.is_empty() {
                clause.clone()
            } else {
                let mut renaming = Substitution::new();
                for var in clashing {
                    engine.rename_counter += 1;
                    let fresh = format!("{var}@{}", engine.rename_counter);
                    renaming.bind(&var, &Term::var(fresh));
                }
                apply_substitution(&renaming, clause)
            };
            seen_vars.extend(clause.variables().into_iter().map(str::to_string));
            prepared.push(clause);
        }

        // Support set: every all-negative clause, plus the last input
        // clause by convention (the negated hypothesis, when the input
        // comes from clausify). The complement then only holds clauses
        // with a positive literal, which keeps the restriction complete.
        let last = prepared.len().checked_sub(1);
        for (i, clause) in prepared.into_iter().enumerate() {
            let supported = clause.literals.iter().all(|l| l.negated) || last == Some(i);
            if let Inserted::New(node) = engine.insert(clause, 0.0, None) {
                if supported {
                    engine.sos.push(QueueEntry { node, accum: 0.0 });
                } else {
                    engine.nodes[node].in_usable = true;
                    engine.usable.push(node);
                }
            }
        }
        engine
    }

    fn insert(&mut self, clause: Clause, accum: f64, history: Option<Rc<History>>) -> Inserted {
        match self.seen.get(&clause) {
            None => {
                self.nodes.push(Node {
                    clause: clause.clone(),
                    accum,
                    history,
                    in_usable: false,
                });
                let node = self.nodes.len() - 1;
                self.seen.insert(clause, node);
                Inserted::New(node)
            }
            // A still-open clause rediscovered with a better score adopts
            // the better derivation. Closed (already expanded) clauses are
            // frozen, which keeps the relaxation loop-free.
            Some(&node) if !self.nodes[node].in_usable && accum > self.nodes[node].accum => {
                self.nodes[node].accum = accum;
                self.nodes[node].history = history;
                Inserted::Improved(node)
            }
            Some(_) => Inserted::Duplicate,
        }
    }

    /// Renames the variables of `clause` that clash with `against`.
    fn standardized_copy(&mut self, clause: &Clause, against: &Clause) -> Clause {
        let own: BTreeSet<&str> = against.variables();
        let clashing: Vec<String> = clause
            .variables()
            .into_iter()
            .filter(|v| own.contains(*v))
            .map(str::to_string)
            .collect();
        if clashing.is_empty() {
            return clause.clone();
        }
        let mut renaming = Substitution::new();
        for var in clashing {
            self.rename_counter += 1;
            let fresh = format!("{var}@{}", self.rename_counter);
            renaming.bind(&var, &Term::var(fresh));
        }
        apply_substitution(&renaming, clause)
    }

    fn run(mut self) -> RefuteOutcome {
        while let Some(entry) = self.sos.pop() {
            let given = entry.node;
            if entry.accum != self.nodes[given].accum || self.nodes[given].in_usable {
                continue; // superseded by a better derivation of the same clause
            }
            if self.nodes[given].clause.is_empty() {
                return RefuteOutcome::Proved(build_derivation(&self.nodes[given]));
            }
            let given_clause = self.nodes[given].clause.clone();
            for u in 0..self.usable.len() {
                let usable = self.usable[u];
                if usable == given {
                    continue;
                }
                let usable_clause = self.nodes[usable].clause.clone();
                let partner = self.standardized_copy(&usable_clause, &given_clause);
                let steps = resolve_between(
                    ClauseId(given + 1),
                    &given_clause,
                    ClauseId(usable + 1),
                    &partner,
                    self.kb,
                    &self.cfg.unify,
                );
                for step in steps {
                    self.generated += 1;
                    if self.generated > self.cfg.max_steps {
                        return RefuteOutcome::BudgetExhausted;
                    }
                    if step.resolvent.is_tautology()
                        || step.resolvent.len() > self.cfg.max_clause_size
                    {
                        continue;
                    }
                    let accum = self.nodes[given].accum + self.nodes[usable].accum + step.score;
                    let history = Rc::new(History {
                        step: step.clone(),
                        parents: (
                            self.nodes[given].history.clone(),
                            self.nodes[usable].history.clone(),
                        ),
                    });
                    match self.insert(step.resolvent, accum, Some(history)) {
                        Inserted::New(node) | Inserted::Improved(node) => {
                            self.sos.push(QueueEntry { node, accum });
                        }
                        Inserted::Duplicate => {}
                    }
                }
            }
            if !self.nodes[given].in_usable {
                self.nodes[given].in_usable = true;
                self.usable.push(given);
            }
        }
        RefuteOutcome::Saturated
    }
}

fn build_derivation(node: &Node) -> Derivation {
    // Post-order walk of the history DAG with an explicit stack, listing
    // each step once, after the steps it depends on.
    let mut steps = Vec::new();
    let mut visited: BTreeSet<*const History> = BTreeSet::new();
    let mut stack: Vec<(Rc<History>, bool)> = Vec::new();
    if let Some(history) = &node.history {
        stack.push((history.clone(), false));
    }
    while let Some((history, emitted)) = stack.pop() {
        if emitted {
            steps.push(history.step.clone());
            continue;
        }
        if !visited.insert(Rc::as_ptr(&history)) {
            continue;
        }
        stack.push((history.clone(), true));
        if let Some(parent) = &history.parents.1 {
            stack.push((parent.clone(), false));
        }
        if let Some(parent) = &history.parents.0 {
            stack.push((parent.clone(), false));
        }
    }
    let total_score = steps.iter().map(|s| s.score).sum();
    Derivation {
        steps,
        total_score,
        final_clause: node.clause.clone(),
    }
}

/// Best-first refutation search over `clauses`.
///
/// Exploration pops the support clause with the highest accumulated
/// derivation score; resolvents that are tautologies, oversized, or exact
/// duplicates of known clauses are discarded. Returns the first derivation
/// that reaches the empty clause, or reports saturation/budget exhaustion.
pub fn refute(clauses: &[Clause], kb: &LexKB, cfg: &ProveConfig) -> RefuteOutcome {
    Engine::new(clauses, kb, cfg).run()
}

/// Which method produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Mrm,
    Lpe,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Mrm => "mrm",
            Method::Lpe => "lpe",
        }
    }
}

/// Evidence backing a verdict: a refutation outcome or the list of
/// witnessing lexical paths.
#[derive(Debug, Clone)]
pub enum Evidence {
    Mrm(RefuteOutcome),
    Lpe(Vec<crate::lpe::LpeWitness>),
}

/// An entailment verdict, its score, the evidence, and the thresholds it
/// was decided against.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub entailed: bool,
    pub method: Method,
    /// MRM: total derivation score; LPE: qualifying pair count.
    pub score: f64,
    pub evidence: Evidence,
    pub thresholds: Vec<(&'static str, f64)>,
}

/// The entailment decision by refutation: translate T and H to clauses,
/// refute T ∪ ¬H, then require the derivation's total score to exceed
/// `tau_total`.
pub fn entails_mrm(
    t_forms: &[LogicalForm],
    h_form: &LogicalForm,
    kb: &LexKB,
    cfg: &ProveConfig,
) -> Verdict {
    let (mut clauses, neg_h) = clausify(t_forms, h_form);
    clauses.push(neg_h);
    let outcome = refute(&clauses, kb, cfg);
    let score = outcome.derivation().map_or(0.0, |d| d.total_score);
    let entailed = matches!(outcome, RefuteOutcome::Proved(_)) && score > cfg.tau_total;
    Verdict {
        entailed,
        method: Method::Mrm,
        score,
        evidence: Evidence::Mrm(outcome),
        thresholds: vec![
            ("tau-step", cfg.unify.tau_step),
            ("tau-atom", cfg.unify.tau_atom),
            ("tau-total", cfg.tau_total),
        ],
    }
}
