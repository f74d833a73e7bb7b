//! WordNet-subset knowledge base: synsets, semantic relations, and word
//! similarity in `[0, 1]`.
//!
//! A [`LexKB`] is loaded once from the line-oriented text format described in
//! the crate README and is immutable afterwards, so it can be shared freely
//! across threads.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use thiserror::Error;

/// Part of speech of a synset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    Noun,
    Verb,
    Adj,
    Adv,
}

impl Pos {
    /// All parts of speech, in a fixed order.
    pub const ALL: [Pos; 4] = [Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv];

    /// Parses the one-letter tag used by the KB file format (`n v a r`).
    pub fn from_tag(tag: &str) -> Option<Pos> {
        match tag {
            "n" => Some(Pos::Noun),
            "v" => Some(Pos::Verb),
            "a" => Some(Pos::Adj),
            "r" => Some(Pos::Adv),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Pos::Noun => "n",
            Pos::Verb => "v",
            Pos::Adj => "a",
            Pos::Adv => "r",
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Opaque synset identifier, unique within one knowledge base.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SynsetId(String);

impl SynsetId {
    pub fn new(id: impl Into<String>) -> Self {
        SynsetId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SynsetId {
    fn from(s: &str) -> Self {
        SynsetId::new(s)
    }
}

/// Directed semantic relation between synsets.
///
/// The variant order gives the total order `IsA < CauseTo < Entail`, under
/// which [`compose`](crate::lpe::compose_relations)-style composition is the
/// `max` operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemRelation {
    IsA,
    CauseTo,
    Entail,
}

impl SemRelation {
    pub fn from_tag(tag: &str) -> Option<SemRelation> {
        match tag {
            "isa" => Some(SemRelation::IsA),
            "entail" => Some(SemRelation::Entail),
            "cause" => Some(SemRelation::CauseTo),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            SemRelation::IsA => "isa",
            SemRelation::Entail => "entail",
            SemRelation::CauseTo => "cause",
        }
    }
}

impl fmt::Display for SemRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One synset: a set of synonymous lemmas sharing a part of speech.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synset {
    pub id: SynsetId,
    pub pos: Pos,
    pub lemmas: BTreeSet<String>,
}

/// Word/synset similarity measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimMeasure {
    /// `1 / (1 + len)` over the shortest undirected IS-A path.
    Path,
    /// Wu–Palmer: `2·depth(lcs) / (depth(s1) + depth(s2))`.
    Wup,
    /// Leacock–Chodorow, normalized by its maximum: `ln(2D/(len+1)) / ln(2D)`.
    Lch,
}

impl SimMeasure {
    pub fn from_tag(tag: &str) -> Option<SimMeasure> {
        match tag {
            "path" => Some(SimMeasure::Path),
            "wup" => Some(SimMeasure::Wup),
            "lch" => Some(SimMeasure::Lch),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            SimMeasure::Path => "path",
            SimMeasure::Wup => "wup",
            SimMeasure::Lch => "lch",
        }
    }
}

#[derive(Debug, Error)]
pub enum KbError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid knowledge base: {0}")]
    Validation(String),
    #[error("unknown synset id `{0}`")]
    UnknownSynset(String),
}

/// Immutable semantic graph: synsets, IS-A/ENTAIL/CAUSE-TO edges, and a
/// lemma index. Construction validates every structural invariant, so any
/// `LexKB` value in hand is well-formed.
#[derive(Debug, Clone, Default)]
pub struct LexKB {
    synsets: BTreeMap<SynsetId, Synset>,
    edges: BTreeSet<(SynsetId, SemRelation, SynsetId)>,
    lemma_index: BTreeMap<(String, Pos), BTreeSet<SynsetId>>,
    /// Within-POS IS-A parents (edge source → targets of the same POS).
    isa_up: BTreeMap<SynsetId, Vec<SynsetId>>,
    /// Reverse of `isa_up`.
    isa_down: BTreeMap<SynsetId, Vec<SynsetId>>,
    /// All outgoing edges regardless of relation, for path search.
    out_edges: BTreeMap<SynsetId, Vec<(SemRelation, SynsetId)>>,
    /// IS-A depth per synset; top synsets of each POS have depth 1.
    depths: BTreeMap<SynsetId, usize>,
    max_depth: BTreeMap<Pos, usize>,
}

impl LexKB {
    /// Loads and validates a knowledge base from a character stream.
    pub fn from_reader(reader: impl BufRead) -> Result<LexKB, KbError> {
        let mut synsets: BTreeMap<SynsetId, Synset> = BTreeMap::new();
        let mut edges: BTreeSet<(SynsetId, SemRelation, SynsetId)> = BTreeSet::new();

        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| KbError::Parse {
                line: line_no,
                msg: format!("read error: {e}"),
            })?;
            let line = match line.find('#') {
                Some(pos) => &line[..pos],
                None => &line[..],
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }

            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |msg: String| KbError::Parse { line: line_no, msg };
            match fields[0] {
                "s" => {
                    if fields.len() != 4 {
                        return Err(parse_err(format!(
                            "synset record needs `s <id> <pos> <lemmas>`, got {} fields",
                            fields.len()
                        )));
                    }
                    let id = SynsetId::new(fields[1]);
                    let pos = Pos::from_tag(fields[2])
                        .ok_or_else(|| parse_err(format!("unknown pos tag `{}`", fields[2])))?;
                    let lemmas: BTreeSet<String> = fields[3]
                        .split(',')
                        .filter(|l| !l.is_empty())
                        .map(|l| l.to_ascii_lowercase())
                        .collect();
                    if lemmas.is_empty() {
                        return Err(parse_err("synset has an empty lemma list".into()));
                    }
                    if synsets.contains_key(&id) {
                        return Err(parse_err(format!("duplicate synset id `{id}`")));
                    }
                    synsets.insert(id.clone(), Synset { id, pos, lemmas });
                }
                "r" => {
                    if fields.len() != 4 {
                        return Err(parse_err(format!(
                            "relation record needs `r <rel> <from> <to>`, got {} fields",
                            fields.len()
                        )));
                    }
                    let rel = SemRelation::from_tag(fields[1])
                        .ok_or_else(|| parse_err(format!("unknown relation `{}`", fields[1])))?;
                    edges.insert((SynsetId::new(fields[2]), rel, SynsetId::new(fields[3])));
                }
                other => {
                    return Err(parse_err(format!("unknown record tag `{other}`")));
                }
            }
        }

        Self::build(synsets, edges)
    }

    fn build(
        synsets: BTreeMap<SynsetId, Synset>,
        edges: BTreeSet<(SynsetId, SemRelation, SynsetId)>,
    ) -> Result<LexKB, KbError> {
        // Endpoint existence and verb-only restrictions.
        for (from, rel, to) in &edges {
            for end in [from, to] {
                if !synsets.contains_key(end) {
                    return Err(KbError::Validation(format!(
                        "edge `{from} {rel} {to}` references unknown synset `{end}`"
                    )));
                }
            }
            if matches!(rel, SemRelation::Entail | SemRelation::CauseTo) {
                for end in [from, to] {
                    if synsets[end].pos != Pos::Verb {
                        return Err(KbError::Validation(format!(
                            "`{rel}` edges connect verb synsets only, `{end}` is not a verb"
                        )));
                    }
                }
            }
        }

        // Acyclicity. IS-A restricted to each POS must be a DAG, and the
        // combined verb graph (IS-A + ENTAIL + CAUSE-TO) must be a DAG.
        for pos in Pos::ALL {
            let sub: Vec<(&SynsetId, &SynsetId)> = edges
                .iter()
                .filter(|(f, r, t)| {
                    *r == SemRelation::IsA && synsets[f].pos == pos && synsets[t].pos == pos
                })
                .map(|(f, _, t)| (f, t))
                .collect();
            if has_cycle(&sub) {
                return Err(KbError::Validation(format!(
                    "IS-A edges between `{pos}` synsets contain a cycle"
                )));
            }
        }
        let verb_sub: Vec<(&SynsetId, &SynsetId)> = edges
            .iter()
            .filter(|(f, _, t)| synsets[f].pos == Pos::Verb && synsets[t].pos == Pos::Verb)
            .map(|(f, _, t)| (f, t))
            .collect();
        if has_cycle(&verb_sub) {
            return Err(KbError::Validation(
                "verb IS-A/ENTAIL/CAUSE-TO edges contain a cycle".into(),
            ));
        }

        let mut kb = LexKB {
            synsets,
            edges,
            ..LexKB::default()
        };

        for synset in kb.synsets.values() {
            for lemma in &synset.lemmas {
                kb.lemma_index
                    .entry((lemma.clone(), synset.pos))
                    .or_default()
                    .insert(synset.id.clone());
            }
        }

        for (from, rel, to) in &kb.edges {
            kb.out_edges
                .entry(from.clone())
                .or_default()
                .push((*rel, to.clone()));
            if *rel == SemRelation::IsA && kb.synsets[from].pos == kb.synsets[to].pos {
                kb.isa_up.entry(from.clone()).or_default().push(to.clone());
                kb.isa_down
                    .entry(to.clone())
                    .or_default()
                    .push(from.clone());
            }
        }
        for targets in kb.out_edges.values_mut() {
            targets.sort();
        }
        for targets in kb.isa_up.values_mut().chain(kb.isa_down.values_mut()) {
            targets.sort();
        }

        kb.compute_depths();
        Ok(kb)
    }

    /// Depth = 1 + shortest within-POS IS-A distance to a top synset.
    /// A virtual root above all top synsets has depth 0.
    fn compute_depths(&mut self) {
        let mut queue: VecDeque<SynsetId> = VecDeque::new();
        for synset in self.synsets.values() {
            if self.isa_up.get(&synset.id).is_none_or(Vec::is_empty) {
                self.depths.insert(synset.id.clone(), 1);
                queue.push_back(synset.id.clone());
            }
        }
        while let Some(id) = queue.pop_front() {
            let depth = self.depths[&id];
            let children = self.isa_down.get(&id).cloned().unwrap_or_default();
            for child in children {
                if !self.depths.contains_key(&child) {
                    self.depths.insert(child.clone(), depth + 1);
                    queue.push_back(child);
                }
            }
        }
        for synset in self.synsets.values() {
            let d = self.depths[&synset.id];
            let entry = self.max_depth.entry(synset.pos).or_insert(0);
            *entry = (*entry).max(d);
        }
    }

    pub fn synset(&self, id: &SynsetId) -> Option<&Synset> {
        self.synsets.get(id)
    }

    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.values()
    }

    pub fn synset_count(&self) -> usize {
        self.synsets.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &(SynsetId, SemRelation, SynsetId)> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Outgoing edges of a synset (all relations), sorted for determinism.
    pub fn outgoing(&self, id: &SynsetId) -> &[(SemRelation, SynsetId)] {
        self.out_edges.get(id).map_or(&[], Vec::as_slice)
    }

    /// IS-A depth of a synset (top synsets have depth 1).
    pub fn depth(&self, id: &SynsetId) -> Option<usize> {
        self.depths.get(id).copied()
    }

    /// Maximum IS-A depth over all synsets of a POS; 0 when the POS is empty.
    pub fn max_depth(&self, pos: Pos) -> usize {
        self.max_depth.get(&pos).copied().unwrap_or(0)
    }

    /// All synsets whose lemma set contains `lemma` (case-insensitive),
    /// optionally filtered by POS. Unknown words yield the empty set.
    pub fn synsets_of(&self, lemma: &str, pos: Option<Pos>) -> BTreeSet<SynsetId> {
        let lemma = lemma.to_ascii_lowercase();
        let mut out = BTreeSet::new();
        for p in Pos::ALL {
            if pos.is_some_and(|want| want != p) {
                continue;
            }
            if let Some(ids) = self.lemma_index.get(&(lemma.clone(), p)) {
                out.extend(ids.iter().cloned());
            }
        }
        out
    }

    /// Edge count of the shortest path between two synsets in the undirected
    /// IS-A graph restricted to their POS. `Some(0)` iff `s1 == s2`;
    /// `None` when disconnected (or when the two POS differ).
    pub fn isa_path_length(&self, s1: &SynsetId, s2: &SynsetId) -> Result<Option<usize>, KbError> {
        let a = self
            .synsets
            .get(s1)
            .ok_or_else(|| KbError::UnknownSynset(s1.to_string()))?;
        let b = self
            .synsets
            .get(s2)
            .ok_or_else(|| KbError::UnknownSynset(s2.to_string()))?;
        if a.pos != b.pos {
            return Ok(None);
        }
        if s1 == s2 {
            return Ok(Some(0));
        }

        let mut dist: BTreeMap<&SynsetId, usize> = BTreeMap::new();
        let mut queue: VecDeque<&SynsetId> = VecDeque::new();
        dist.insert(s1, 0);
        queue.push_back(s1);
        while let Some(cur) = queue.pop_front() {
            let d = dist[cur];
            let ups = self.isa_up.get(cur).map_or(&[][..], Vec::as_slice);
            let downs = self.isa_down.get(cur).map_or(&[][..], Vec::as_slice);
            for next in ups.iter().chain(downs) {
                if !dist.contains_key(next) {
                    if next == s2 {
                        return Ok(Some(d + 1));
                    }
                    dist.insert(next, d + 1);
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    /// Upward IS-A closure of a synset (within its POS), including itself.
    fn isa_ancestors(&self, id: &SynsetId) -> BTreeSet<SynsetId> {
        let mut seen: BTreeSet<SynsetId> = BTreeSet::new();
        let mut queue: VecDeque<SynsetId> = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id.clone());
        while let Some(cur) = queue.pop_front() {
            for up in self.isa_up.get(&cur).map_or(&[][..], Vec::as_slice) {
                if seen.insert(up.clone()) {
                    queue.push_back(up.clone());
                }
            }
        }
        seen
    }

    /// Per-synset-pair similarity; `None` when the measure is undefined for
    /// the pair (no IS-A path). Both synsets must share a POS.
    fn synset_similarity(&self, s1: &SynsetId, s2: &SynsetId, measure: SimMeasure) -> Option<f64> {
        match measure {
            SimMeasure::Path => {
                let len = self.isa_path_length(s1, s2).ok()?? as f64;
                Some(1.0 / (1.0 + len))
            }
            SimMeasure::Lch => {
                let len = self.isa_path_length(s1, s2).ok()?? as f64;
                let d = self.max_depth(self.synsets[s1].pos) as f64;
                // Down-up zigzags can make len+1 exceed 2D; clamp into range.
                let raw = (2.0 * d / (len + 1.0)).ln() / (2.0 * d).ln();
                Some(raw.clamp(0.0, 1.0))
            }
            SimMeasure::Wup => {
                let common: Vec<SynsetId> = self
                    .isa_ancestors(s1)
                    .intersection(&self.isa_ancestors(s2))
                    .cloned()
                    .collect();
                // No common subsumer: fall back to the virtual root (depth 0).
                let lcs_depth = common
                    .iter()
                    .filter_map(|c| self.depth(c))
                    .max()
                    .unwrap_or(0) as f64;
                let d1 = self.depth(s1)? as f64;
                let d2 = self.depth(s2)? as f64;
                Some((2.0 * lcs_depth / (d1 + d2)).clamp(0.0, 1.0))
            }
        }
    }

    /// Word similarity: the maximum of the per-synset measure over all
    /// same-POS synset pairs of the two words. 1.0 when the words share a
    /// synset; 0.0 when either word is unknown or no same-POS pair exists.
    pub fn similarity(&self, w1: &str, w2: &str, measure: SimMeasure, pos: Option<Pos>) -> f64 {
        let set1 = self.synsets_of(w1, pos);
        let set2 = self.synsets_of(w2, pos);
        let mut best = 0.0_f64;
        for s1 in &set1 {
            for s2 in &set2 {
                if self.synsets[s1].pos != self.synsets[s2].pos {
                    continue;
                }
                if let Some(score) = self.synset_similarity(s1, s2, measure) {
                    best = best.max(score);
                }
            }
        }
        best
    }
}

impl FromStr for LexKB {
    type Err = KbError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LexKB::from_reader(s.as_bytes())
    }
}

/// Convenience alias for [`LexKB::from_reader`].
pub fn load_kb(reader: impl BufRead) -> Result<LexKB, KbError> {
    LexKB::from_reader(reader)
}

fn has_cycle(edges: &[(&SynsetId, &SynsetId)]) -> bool {
    let mut out: BTreeMap<&SynsetId, Vec<&SynsetId>> = BTreeMap::new();
    let mut indegree: BTreeMap<&SynsetId, usize> = BTreeMap::new();
    for (from, to) in edges {
        out.entry(from).or_default().push(to);
        indegree.entry(from).or_insert(0);
        *indegree.entry(to).or_insert(0) += 1;
    }
    let mut queue: VecDeque<&SynsetId> = indegree
        .iter()
        .filter(|(_, deg)| **deg == 0)
        .map(|(id, _)| *id)
        .collect();
    let mut removed = 0usize;
    while let Some(id) = queue.pop_front() {
        removed += 1;
        for next in out.get(id).map_or(&[][..], Vec::as_slice) {
            let deg = indegree.get_mut(next).expect("endpoint has an indegree");
            *deg -= 1;
            if *deg == 0 {
                queue.push_back(next);
            }
        }
    }
    removed != indegree.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) const FIXTURE: &str = include_str!("../fixtures/mini_wordnet.kb");

    fn fixture() -> LexKB {
        FIXTURE.parse().expect("fixture loads")
    }

    fn id(s: &str) -> SynsetId {
        SynsetId::new(s)
    }

    #[test]
    fn loads_minimal_kb() {
        let kb: LexKB = "s a1 n dog\ns a2 n animal\nr isa a1 a2\n".parse().unwrap();
        assert_eq!(kb.synset_count(), 2);
        assert_eq!(kb.edge_count(), 1);
    }

    #[test]
    fn fixture_counts() {
        let kb = fixture();
        assert_eq!(kb.synset_count(), 15);
        assert_eq!(kb.edge_count(), 10);
    }

    #[test]
    fn self_loop_is_rejected() {
        let err = "s n1 n person\nr isa n1 n1\n".parse::<LexKB>().unwrap_err();
        assert!(matches!(err, KbError::Validation(_)), "got {err:?}");
    }

    #[test]
    fn longer_cycle_is_rejected() {
        let src = "s a n x\ns b n y\ns c n z\nr isa a b\nr isa b c\nr isa c a\n";
        assert!(matches!(src.parse::<LexKB>(), Err(KbError::Validation(_))));
    }

    #[test]
    fn dangling_endpoint_is_rejected() {
        let err = "s n1 n person\nr isa n1 n9\n".parse::<LexKB>().unwrap_err();
        assert!(matches!(err, KbError::Validation(_)));
    }

    #[test]
    fn entail_between_nouns_is_rejected() {
        let err = "s n1 n a\ns n2 n b\nr entail n1 n2\n"
            .parse::<LexKB>()
            .unwrap_err();
        assert!(matches!(err, KbError::Validation(_)));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = "s n1 n person\ns broken\n".parse::<LexKB>().unwrap_err();
        match err {
            KbError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_lemma_list_is_rejected() {
        let err = "s n1 n ,,,\n".parse::<LexKB>().unwrap_err();
        assert!(matches!(err, KbError::Parse { line: 1, .. }), "got {err:?}");
    }

    #[test]
    fn kb_is_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<LexKB>();

        let kb = std::sync::Arc::new(fixture());
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let kb = kb.clone();
                std::thread::spawn(move || {
                    kb.similarity("relative", "uncle", SimMeasure::Path, None)
                })
            })
            .collect();
        for handle in handles {
            assert_eq!(handle.join().unwrap(), 0.5);
        }
    }

    #[test]
    fn synsets_of_lookups() {
        let kb = fixture();
        assert_eq!(
            kb.synsets_of("america", Some(Pos::Noun)),
            BTreeSet::from([id("n5")])
        );
        assert_eq!(kb.synsets_of("zzz", None), BTreeSet::new());
        assert_eq!(kb.synsets_of("us", None), BTreeSet::from([id("n5")]));
        assert_eq!(kb.synsets_of("AMERICA", None), BTreeSet::from([id("n5")]));
    }

    #[test]
    fn isa_path_lengths() {
        let kb = fixture();
        assert_eq!(kb.isa_path_length(&id("n3"), &id("n2")).unwrap(), Some(1));
        assert_eq!(kb.isa_path_length(&id("n3"), &id("n3")).unwrap(), Some(0));
        // emigrate -> migrate -> travel -> come
        assert_eq!(kb.isa_path_length(&id("v3"), &id("v4")).unwrap(), Some(3));
        // nouns and verbs never connect
        assert_eq!(kb.isa_path_length(&id("n1"), &id("v1")).unwrap(), None);
        // snore/sleep only share an ENTAIL edge, which is not an IS-A path
        assert_eq!(kb.isa_path_length(&id("v5"), &id("v6")).unwrap(), None);
        assert!(matches!(
            kb.isa_path_length(&id("nope"), &id("n1")),
            Err(KbError::UnknownSynset(_))
        ));
    }

    #[test]
    fn fixture_depths() {
        let kb = fixture();
        assert_eq!(kb.depth(&id("n1")), Some(1));
        assert_eq!(kb.depth(&id("n3")), Some(3));
        assert_eq!(kb.depth(&id("v3")), Some(3));
        assert_eq!(kb.depth(&id("v4")), Some(2));
        assert_eq!(kb.max_depth(Pos::Noun), 3);
        assert_eq!(kb.max_depth(Pos::Verb), 3);
        assert_eq!(kb.max_depth(Pos::Adj), 0);
    }

    #[test]
    fn similarity_fixture_values() {
        let kb = fixture();
        assert_eq!(kb.similarity("us", "america", SimMeasure::Path, None), 1.0);
        assert!((kb.similarity("relative", "uncle", SimMeasure::Path, None) - 0.5).abs() < 1e-9);
        assert!((kb.similarity("emigrate", "come", SimMeasure::Path, None) - 0.25).abs() < 1e-9);
        // LCS = travel at depth 1; depths 3 and 2.
        assert!((kb.similarity("emigrate", "come", SimMeasure::Wup, None) - 0.4).abs() < 1e-9);
        assert_eq!(kb.similarity("zzz", "uncle", SimMeasure::Path, None), 0.0);
        // same word, different POS filter than its synset -> no pair
        assert_eq!(
            kb.similarity("uncle", "uncle", SimMeasure::Path, Some(Pos::Verb)),
            0.0
        );
    }

    #[test]
    fn inflected_fixture_lemmas_resolve() {
        let kb = fixture();
        assert!((kb.similarity("came", "emigrated", SimMeasure::Path, None) - 0.25).abs() < 1e-9);
    }

    #[test]
    fn lch_is_one_for_shared_synset() {
        let kb = fixture();
        assert!((kb.similarity("us", "america", SimMeasure::Lch, None) - 1.0).abs() < 1e-9);
        let expected = (6.0_f64 / 2.0).ln() / 6.0_f64.ln();
        assert!(
            (kb.similarity("relative", "uncle", SimMeasure::Lch, None) - expected).abs() < 1e-9
        );
    }

    // Strategy: a random single-POS taxonomy where node i > 0 has a parent
    // among nodes 0..i, so the IS-A graph is a connected tree.
    fn tree_kb(n: usize, parents: &[usize], extra_lemmas: &[(usize, usize)]) -> LexKB {
        let mut src = String::new();
        for i in 0..n {
            src.push_str(&format!("s s{i} n w{i}"));
            for (node, lemma) in extra_lemmas {
                if *node == i {
                    src.push_str(&format!(",w{lemma}"));
                }
            }
            src.push('\n');
        }
        for (i, p) in parents.iter().enumerate() {
            src.push_str(&format!("r isa s{} s{p}\n", i + 1));
        }
        src.parse().expect("generated taxonomy is valid")
    }

    proptest! {
        #[test]
        fn similarity_is_symmetric_on_fixture(w1_idx in 0usize..17, w2_idx in 0usize..17, m in 0usize..3) {
            let words = [
                "person", "relative", "uncle", "location", "united_states", "us", "america",
                "man", "travel", "migrate", "emigrate", "come", "snore", "sleep", "kill",
                "die", "murder",
            ];
            let measure = [SimMeasure::Path, SimMeasure::Wup, SimMeasure::Lch][m];
            let kb = fixture();
            let a = kb.similarity(words[w1_idx], words[w2_idx], measure, None);
            let b = kb.similarity(words[w2_idx], words[w1_idx], measure, None);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn self_similarity_is_one(w_idx in 0usize..17, m in 0usize..3) {
            let words = [
                "person", "relative", "uncle", "location", "united_states", "us", "america",
                "man", "travel", "migrate", "emigrate", "come", "snore", "sleep", "kill",
                "die", "murder",
            ];
            let measure = [SimMeasure::Path, SimMeasure::Wup, SimMeasure::Lch][m];
            let kb = fixture();
            prop_assert_eq!(kb.similarity(words[w_idx], words[w_idx], measure, None), 1.0);
        }

        #[test]
        fn similarity_stays_in_range(
            raw_parents in proptest::collection::vec(0usize..1000, 1..12),
            sharing in proptest::collection::vec((0usize..12, 0usize..12), 0..4),
            m in 0usize..3,
        ) {
            // node i+1 picks a parent among nodes 0..=i, so the graph is a tree
            let parents: Vec<usize> = raw_parents
                .iter()
                .enumerate()
                .map(|(i, r)| r % (i + 1))
                .collect();
            let n = parents.len() + 1;
            let extra: Vec<(usize, usize)> = sharing
                .into_iter()
                .map(|(a, b)| (a % n, b % n))
                .collect();
            let kb = tree_kb(n, &parents, &extra);
            let measure = [SimMeasure::Path, SimMeasure::Wup, SimMeasure::Lch][m];
            for i in 0..n {
                for j in 0..n {
                    let s = kb.similarity(&format!("w{i}"), &format!("w{j}"), measure, None);
                    prop_assert!((0.0..=1.0).contains(&s), "sim(w{},w{}) = {} out of range", i, j, s);
                }
            }
        }

        #[test]
        fn path_similarity_strictly_decreases_on_chain(len in 2usize..10) {
            // chain taxonomy: s0 <- s1 <- ... <- s(len-1)
            let parents: Vec<usize> = (0..len - 1).collect();
            let kb = tree_kb(len, &parents, &[]);
            let mut last = f64::INFINITY;
            for k in 0..len {
                let s = kb.similarity("w0", &format!("w{k}"), SimMeasure::Path, None);
                prop_assert!(s < last, "PATH not strictly decreasing at distance {}", k);
                last = s;
            }
        }

        #[test]
        fn isa_path_length_triangle_inequality(
            raw_parents in proptest::collection::vec(0usize..1000, 1..10),
            picks in (0usize..10, 0usize..10, 0usize..10),
        ) {
            let parents: Vec<usize> = raw_parents
                .iter()
                .enumerate()
                .map(|(i, r)| r % (i + 1))
                .collect();
            let n = parents.len() + 1;
            let kb = tree_kb(n, &parents, &[]);
            let (a, b, c) = (picks.0 % n, picks.1 % n, picks.2 % n);
            let d = |x: usize, y: usize| {
                kb.isa_path_length(&SynsetId::new(format!("s{x}")), &SynsetId::new(format!("s{y}")))
                    .unwrap()
                    .expect("tree is connected")
            };
            prop_assert!(d(a, c) <= d(a, b) + d(b, c));
        }
    }
}
