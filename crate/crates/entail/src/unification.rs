//! Lexical unification: classical unification of atoms relaxed by word
//! similarity, yielding a substitution and a score `W`.
//!
//! Two terms unify either classically (equal constants, or a variable
//! against anything — score 1, never thresholded) or lexically (two
//! distinct word constants whose similarity must exceed the step
//! threshold). Skolem constants are not words: distinct Skolems never
//! unify, and a Skolem never matches a word constant.

use std::collections::BTreeMap;

use crate::lexkb::{LexKB, SimMeasure};
use crate::logicform::{Atom, Clause, Literal, Term};

/// An idempotent, acyclic variable → term binding map.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.bindings.iter()
    }

    /// Unifies `var` with `term` under the current bindings, extending the
    /// map and keeping it idempotent. Returns `false` when both sides
    /// resolve to distinct non-variables.
    pub fn bind(&mut self, var: &str, term: &Term) -> bool {
        let left = self.apply_term(&Term::Variable(var.to_string()));
        let right = self.apply_term(term);
        if left == right {
            return true;
        }
        let (open, value) = match (left, right) {
            (Term::Variable(v), other) | (other, Term::Variable(v)) => (v, other),
            _ => return false,
        };
        for bound in self.bindings.values_mut() {
            if matches!(bound, Term::Variable(name) if *name == open) {
                *bound = value.clone();
            }
        }
        self.bindings.insert(open, value);
        true
    }

    /// Applies the substitution to a term. Idempotence makes one lookup
    /// sufficient.
    pub fn apply_term(&self, term: &Term) -> Term {
        match term {
            Term::Variable(name) => self
                .bindings
                .get(name)
                .cloned()
                .unwrap_or_else(|| term.clone()),
            _ => term.clone(),
        }
    }

    pub fn apply_atom(&self, atom: &Atom) -> Atom {
        Atom::new(
            atom.predicate.clone(),
            atom.args.iter().map(|t| self.apply_term(t)).collect(),
        )
    }

    pub fn apply_literal(&self, literal: &Literal) -> Literal {
        Literal {
            atom: self.apply_atom(&literal.atom),
            negated: literal.negated,
        }
    }
}

/// Applies `sigma` to every literal of a clause; the literal set is
/// deduplicated by construction.
pub fn apply_substitution(sigma: &Substitution, clause: &Clause) -> Clause {
    Clause::new(clause.literals.iter().map(|l| sigma.apply_literal(l)))
}

/// Thresholds and similarity measure for lexical unification.
#[derive(Debug, Clone, Copy)]
pub struct UnifyConfig {
    /// Per-comparison threshold τ′: predicates need `sim ≥ tau_step`,
    /// word/word argument pairs need `sim > tau_step`.
    pub tau_step: f64,
    /// Per-atom aggregate threshold τ; the default 0 disables it.
    pub tau_atom: f64,
    pub measure: SimMeasure,
}

impl Default for UnifyConfig {
    fn default() -> UnifyConfig {
        UnifyConfig {
            tau_step: 0.2,
            tau_atom: 0.0,
            measure: SimMeasure::Path,
        }
    }
}

/// Result of unifying one term pair.
#[derive(Debug, Clone, PartialEq)]
pub struct TermUnification {
    pub binding: Option<(String, Term)>,
    pub score: f64,
    /// True when the score came from word similarity (and is therefore
    /// subject to the step threshold) rather than a classical case.
    pub lexical: bool,
}

/// Unifies two terms, if possible.
pub fn unify_terms(
    t1: &Term,
    t2: &Term,
    kb: &LexKB,
    measure: SimMeasure,
) -> Option<TermUnification> {
    let classical = |binding: Option<(String, Term)>| {
        Some(TermUnification {
            binding,
            score: 1.0,
            lexical: false,
        })
    };
    match (t1, t2) {
        (Term::Variable(a), Term::Variable(b)) if a == b => classical(None),
        (Term::Variable(a), other) => classical(Some((a.clone(), other.clone()))),
        (other, Term::Variable(b)) => classical(Some((b.clone(), other.clone()))),
        (Term::WordConst(a), Term::WordConst(b)) => {
            if a.eq_ignore_ascii_case(b) {
                classical(None)
            } else {
                Some(TermUnification {
                    binding: None,
                    score: kb.similarity(a, b, measure, None),
                    lexical: true,
                })
            }
        }
        (Term::SkolemConst(a), Term::SkolemConst(b)) if a == b => classical(None),
        _ => None,
    }
}

/// Outcome of a successful atom unification: the unifier σ and the score
/// `W` (predicate similarity plus the term-pair scores).
#[derive(Debug, Clone, PartialEq)]
pub struct UnifyOutcome {
    pub sigma: Substitution,
    pub score: f64,
}

/// Lexically unifies two atoms.
///
/// The smaller-arity atom drives the match: every one of its arguments is
/// assigned to a distinct argument of the other atom so that each pair
/// unifies (word/word pairs strictly above `tau_step`), the bindings
/// compose into one consistent σ, and the total term score is maximal.
/// Ties prefer leftmost positions. Succeeds when the predicates are equal
/// or similar enough (`≥ tau_step`) and `W` exceeds `tau_atom`.
pub fn unify_atoms(a1: &Atom, a2: &Atom, kb: &LexKB, cfg: &UnifyConfig) -> Option<UnifyOutcome> {
    let (small, large) = if a1.arity() <= a2.arity() {
        (a1, a2)
    } else {
        (a2, a1)
    };

    let pred_score = if small.predicate.eq_ignore_ascii_case(&large.predicate) {
        1.0
    } else {
        let sim = kb.similarity(&small.predicate, &large.predicate, cfg.measure, None);
        if sim < cfg.tau_step {
            return None;
        }
        sim
    };

    // Pairwise term unifications, with the step threshold already applied
    // to the lexical (word/word) cases.
    let n = small.arity();
    let m = large.arity();
    let mut pairs: Vec<Vec<Option<TermUnification>>> = vec![vec![None; m]; n];
    for (i, row) in pairs.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = unify_terms(&small.args[i], &large.args[j], kb, cfg.measure)
                .filter(|u| !u.lexical || u.score > cfg.tau_step);
        }
    }

    struct Search<'a> {
        pairs: &'a [Vec<Option<TermUnification>>],
        m: usize,
        best: Option<(f64, Substitution)>,
    }

    impl Search<'_> {
        // Enumerates injective assignments in lexicographic position order;
        // keeping only strict improvements makes ties resolve leftmost.
        fn go(&mut self, i: usize, used: &mut Vec<bool>, sigma: &Substitution, score: f64) {
            if i == self.pairs.len() {
                if self.best.as_ref().is_none_or(|(s, _)| score > *s) {
                    self.best = Some((score, sigma.clone()));
                }
                return;
            }
            for j in 0..self.m {
                if used[j] {
                    continue;
                }
                let Some(unif) = &self.pairs[i][j] else {
                    continue;
                };
                let mut extended = sigma.clone();
                let consistent = match &unif.binding {
                    Some((var, term)) => extended.bind(var, term),
                    None => true,
                };
                if !consistent {
                    continue;
                }
                used[j] = true;
                self.go(i + 1, used, &extended, score + unif.score);
                used[j] = false;
            }
        }
    }

    let mut search = Search {
        pairs: &pairs,
        m,
        best: None,
    };
    search.go(0, &mut vec![false; m], &Substitution::new(), 0.0);

    let (term_score, sigma) = search.best?;
    let total = pred_score + term_score;
    (total > cfg.tau_atom).then_some(UnifyOutcome {
        sigma,
        score: total,
    })
}
