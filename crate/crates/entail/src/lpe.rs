//! Lexical paths for entailment: relation composition along oriented
//! IS-A / ENTAIL / CAUSE-TO paths, path discovery between words, and the
//! pair-count entailment verdict.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::lexkb::{LexKB, SemRelation, SynsetId};
use crate::logicform::{AnnotatedToken, LogicalForm, Term};
use crate::resolution::{Evidence, Method, Verdict};

/// Composes two semantic relations met in sequence along a path.
///
/// The nine composition rules, total on the 3×3 domain: IS-A chains stay
/// IS-A, CAUSE-TO survives IS-A steps and itself, and ENTAIL absorbs
/// everything else. Equivalently, `max` under `IsA < CauseTo < Entail`.
pub fn compose_relations(r1: SemRelation, r2: SemRelation) -> SemRelation {
    use SemRelation::*;
    match (r1, r2) {
        (IsA, IsA) => IsA,
        (IsA, Entail) => Entail,
        (Entail, IsA) => Entail,
        (Entail, Entail) => Entail,
        (IsA, CauseTo) => CauseTo,
        (CauseTo, IsA) => CauseTo,
        (CauseTo, CauseTo) => CauseTo,
        (CauseTo, Entail) => Entail,
        (Entail, CauseTo) => Entail,
    }
}

/// An oriented synset path witnessing entailment from `source_word` to
/// `target_word`, with the aggregate relation obtained by folding
/// [`compose_relations`] over the edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpePath {
    pub synsets: Vec<SynsetId>,
    pub relations: Vec<SemRelation>,
    pub aggregate: SemRelation,
    pub source_word: String,
    pub target_word: String,
}

impl LpePath {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

impl fmt::Display for LpePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.synsets[0])?;
        for (rel, synset) in self.relations.iter().zip(&self.synsets[1..]) {
            write!(f, " -[{rel}]-> {synset}")?;
        }
        write!(f, " (aggregate={})", self.aggregate)
    }
}

/// Pair-count threshold and search bounds for the path method.
#[derive(Debug, Clone, Copy)]
pub struct LpeConfig {
    /// The verdict requires strictly more qualifying pairs than this.
    pub tau_pairs: usize,
    /// Maximum path length in edges.
    pub max_len: usize,
    /// Credit word pairs that share a synset as trivial (length-0) paths.
    pub count_shared_synset: bool,
}

impl Default for LpeConfig {
    fn default() -> LpeConfig {
        LpeConfig {
            tau_pairs: 0,
            max_len: 6,
            count_shared_synset: true,
        }
    }
}

/// Finds a shortest oriented path (between 1 and `max_len` edges) from a
/// synset of `w1` to a synset containing `w2`, following directed IS-A /
/// ENTAIL / CAUSE-TO edges.
pub fn find_lpe(kb: &LexKB, w1: &str, w2: &str, max_len: usize) -> Option<LpePath> {
    let starts = kb.synsets_of(w1, None);
    let targets = kb.synsets_of(w2, None);
    if starts.is_empty() || targets.is_empty() {
        return None;
    }

    let mut parent: BTreeMap<SynsetId, (SynsetId, SemRelation)> = BTreeMap::new();
    let mut dist: BTreeMap<SynsetId, usize> = BTreeMap::new();
    let mut queue: VecDeque<SynsetId> = VecDeque::new();
    for start in &starts {
        dist.insert(start.clone(), 0);
        queue.push_back(start.clone());
    }

    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        if d == max_len {
            continue;
        }
        for (rel, next) in kb.outgoing(&cur) {
            if dist.contains_key(next) {
                continue;
            }
            dist.insert(next.clone(), d + 1);
            parent.insert(next.clone(), (cur.clone(), *rel));
            if targets.contains(next) {
                return Some(reconstruct(kb, next, &parent, w1, w2));
            }
            queue.push_back(next.clone());
        }
    }
    None
}

fn reconstruct(
    _kb: &LexKB,
    end: &SynsetId,
    parent: &BTreeMap<SynsetId, (SynsetId, SemRelation)>,
    w1: &str,
    w2: &str,
) -> LpePath {
    let mut synsets = vec![end.clone()];
    let mut relations = Vec::new();
    let mut cur = end.clone();
    while let Some((prev, rel)) = parent.get(&cur) {
        synsets.push(prev.clone());
        relations.push(*rel);
        cur = prev.clone();
    }
    synsets.reverse();
    relations.reverse();
    let aggregate = fold_relations(&relations);
    LpePath {
        synsets,
        relations,
        aggregate,
        source_word: w1.to_ascii_lowercase(),
        target_word: w2.to_ascii_lowercase(),
    }
}

/// Left fold of [`compose_relations`] over a non-empty relation sequence.
pub fn fold_relations(relations: &[SemRelation]) -> SemRelation {
    let mut acc = relations[0];
    for rel in &relations[1..] {
        acc = compose_relations(acc, *rel);
    }
    acc
}

/// All simple oriented paths (1..=max_len edges) between two words, for
/// exhaustive evidence reports. Ordered by length, then lexicographically
/// by synset sequence.
pub fn find_all_lpe(kb: &LexKB, w1: &str, w2: &str, max_len: usize) -> Vec<LpePath> {
    let starts = kb.synsets_of(w1, None);
    let targets = kb.synsets_of(w2, None);
    let mut found = Vec::new();

    fn walk(
        kb: &LexKB,
        targets: &BTreeSet<SynsetId>,
        max_len: usize,
        synsets: &mut Vec<SynsetId>,
        relations: &mut Vec<SemRelation>,
        found: &mut Vec<(Vec<SynsetId>, Vec<SemRelation>)>,
    ) {
        if !relations.is_empty() && targets.contains(synsets.last().unwrap()) {
            found.push((synsets.clone(), relations.clone()));
        }
        if relations.len() == max_len {
            return;
        }
        let cur = synsets.last().unwrap().clone();
        for (rel, next) in kb.outgoing(&cur) {
            if synsets.contains(next) {
                continue; // simple paths only
            }
            synsets.push(next.clone());
            relations.push(*rel);
            walk(kb, targets, max_len, synsets, relations, found);
            synsets.pop();
            relations.pop();
        }
    }

    let mut raw = Vec::new();
    for start in &starts {
        walk(
            kb,
            &targets,
            max_len,
            &mut vec![start.clone()],
            &mut Vec::new(),
            &mut raw,
        );
    }
    raw.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    for (synsets, relations) in raw {
        let aggregate = fold_relations(&relations);
        found.push(LpePath {
            synsets,
            relations,
            aggregate,
            source_word: w1.to_ascii_lowercase(),
            target_word: w2.to_ascii_lowercase(),
        });
    }
    found
}

/// Content words of an annotated sentence: the lemmas of its open-class
/// tokens, in order, duplicates kept.
pub fn content_words(tokens: &[AnnotatedToken]) -> Vec<String> {
    tokens
        .iter()
        .filter(|t| t.pos.is_open_class())
        .map(|t| t.lemma.clone())
        .collect()
}

/// Words of a logic form, for running the path method on pairs given as
/// forms: predicate names plus word-constant arguments, lowercased, in
/// order of appearance.
pub fn words_of_form(form: &LogicalForm) -> Vec<String> {
    let mut words = Vec::new();
    for atom in &form.atoms {
        words.push(atom.predicate.to_ascii_lowercase());
        for arg in &atom.args {
            if let Term::WordConst(w) = arg {
                words.push(w.to_ascii_lowercase());
            }
        }
    }
    words
}

/// A qualifying word pair and the witness that connects it.
#[derive(Debug, Clone)]
pub enum LpeWitness {
    Path(LpePath),
    SharedSynset {
        source_word: String,
        target_word: String,
        synset: SynsetId,
    },
}

impl fmt::Display for LpeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpeWitness::Path(path) => write!(
                f,
                "pair {} -> {}: {}",
                path.source_word, path.target_word, path
            ),
            LpeWitness::SharedSynset {
                source_word,
                target_word,
                synset,
            } => write!(
                f,
                "pair {source_word} -> {target_word}: shared synset {synset}"
            ),
        }
    }
}

/// The path-based entailment decision: counts distinct ordered pairs
/// (t-word, h-word) connected by a lexical path (or sharing a synset, when
/// enabled) and requires the count to exceed `tau_pairs`.
pub fn entails_lpe(t_words: &[String], h_words: &[String], kb: &LexKB, cfg: &LpeConfig) -> Verdict {
    let mut witnesses = Vec::new();
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
    for w1 in t_words {
        for w2 in h_words {
            let key = (w1.to_ascii_lowercase(), w2.to_ascii_lowercase());
            if !seen.insert(key.clone()) {
                continue;
            }
            if cfg.count_shared_synset {
                let s1 = kb.synsets_of(w1, None);
                let s2 = kb.synsets_of(w2, None);
                if let Some(first) = s1.intersection(&s2).next() {
                    witnesses.push(LpeWitness::SharedSynset {
                        source_word: key.0,
                        target_word: key.1,
                        synset: first.clone(),
                    });
                    continue;
                }
            }
            if let Some(path) = find_lpe(kb, w1, w2, cfg.max_len) {
                witnesses.push(LpeWitness::Path(path));
            }
        }
    }
    let count = witnesses.len();
    Verdict {
        entailed: count > cfg.tau_pairs,
        method: Method::Lpe,
        score: count as f64,
        evidence: Evidence::Lpe(witnesses),
        thresholds: vec![("tau-pairs", cfg.tau_pairs as f64)],
    }
}
