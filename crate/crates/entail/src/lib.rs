//! Textual entailment between a text T and a hypothesis H, decided two
//! ways over the same WordNet-style knowledge base:
//!
//! * **Scored resolution** ([`resolution`]): T and H are logic forms (one
//!   predicate per content word, see [`logicform`]); T together with the
//!   negated H is refuted by resolution whose unification is relaxed by
//!   word similarity ([`unification`], [`lexkb`]), and the derivation's
//!   total similarity score is compared against a threshold.
//! * **Lexical paths** ([`lpe`]): entailment is read off the knowledge
//!   base directly, by counting word pairs (t-word, h-word) connected by
//!   an oriented path of IS-A / ENTAIL / CAUSE-TO relations.
//!
//! The [`cli`] module exposes both methods plus a batch corpus evaluator
//! behind a subcommand interface (`sim`, `derive`, `prove`, `lpe`, `eval`,
//! `kb-info`); the `examples/` directory walks through each capability at
//! the library level.

pub mod cli;
pub mod lexkb;
pub mod logicform;
pub mod lpe;
pub mod resolution;
pub mod unification;

pub use cli::{eval_corpus, run_command, EvalEntry, EvalReport, EvalRow};
pub use lexkb::{load_kb, KbError, LexKB, Pos, SemRelation, SimMeasure, Synset, SynsetId};
pub use logicform::{
    clausify, derive_logic_form, parse_annotated_tokens, parse_logic_form, AnnError,
    AnnotatedToken, Atom, Clause, DeriveError, Literal, LogicalForm, ParseError, Role, Term,
    TokenPos, Transitivity,
};
pub use lpe::{
    compose_relations, content_words, entails_lpe, find_all_lpe, find_lpe, fold_relations,
    words_of_form, LpeConfig, LpePath, LpeWitness,
};
pub use resolution::{
    entails_mrm, refute, resolve_step, ClauseId, Derivation, Evidence, Method, ProveConfig,
    RefuteOutcome, ResolutionStep, Verdict,
};
pub use unification::{
    apply_substitution, unify_atoms, unify_terms, Substitution, TermUnification, UnifyConfig,
    UnifyOutcome,
};
