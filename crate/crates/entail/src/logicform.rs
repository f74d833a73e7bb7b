//! Logic forms and their clausal form.
//!
//! A sentence is represented as a conjunction of atoms, one per content
//! word, over variables and constants only (no function symbols). This
//! module derives such forms from annotated token streams, parses and
//! renders the textual syntax (`pred(arg,...) & pred(...)`), and turns a
//! (T, H) pair into clauses for refutation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// A term: a variable, a word constant, or a Skolem constant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Variable(String),
    WordConst(String),
    SkolemConst(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Variable(name.into())
    }

    pub fn word(name: impl Into<String>) -> Term {
        Term::WordConst(name.into())
    }

    pub fn skolem(name: impl Into<String>) -> Term {
        Term::SkolemConst(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Variable(n) | Term::WordConst(n) | Term::SkolemConst(n) => n,
        }
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }

    /// Classifies a bare identifier per the logic-form grammar: `[xe][0-9]+`
    /// is a variable, `sk[0-9]+` a Skolem constant, anything else a word.
    pub fn from_ident(ident: &str) -> Term {
        fn all_digits(s: &str) -> bool {
            !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
        }
        if (ident.starts_with('x') || ident.starts_with('e')) && all_digits(&ident[1..]) {
            Term::Variable(ident.to_string())
        } else if let Some(rest) = ident.strip_prefix("sk") {
            if all_digits(rest) {
                Term::SkolemConst(ident.to_string())
            } else {
                Term::WordConst(ident.to_string())
            }
        } else {
            Term::WordConst(ident.to_string())
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An atom: a predicate applied to one or more terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Atom {
        let atom = Atom {
            predicate: predicate.into(),
            args,
        };
        debug_assert!(!atom.predicate.is_empty());
        debug_assert!(!atom.args.is_empty(), "atoms have arity >= 1");
        atom
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    /// Names of the variables occurring in the argument list.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Variable(n) => Some(n.as_str()),
            _ => None,
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.predicate)?;
        for (i, arg) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{arg}")?;
        }
        f.write_str(")")
    }
}

/// A possibly negated atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal {
            atom,
            negated: false,
        }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal {
            atom,
            negated: true,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("¬")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// A disjunctive clause as a set of literals. The empty set is the empty
/// clause `[]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct Clause {
    pub literals: BTreeSet<Literal>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Clause {
        Clause {
            literals: literals.into_iter().collect(),
        }
    }

    pub fn empty() -> Clause {
        Clause::default()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    /// True when the clause contains an exact complementary literal pair.
    pub fn is_tautology(&self) -> bool {
        self.literals.iter().any(|l| {
            l.negated
                && self.literals.contains(&Literal {
                    atom: l.atom.clone(),
                    negated: false,
                })
        })
    }

    /// Names of all variables occurring in the clause.
    pub fn variables(&self) -> BTreeSet<&str> {
        self.literals
            .iter()
            .flat_map(|l| l.atom.variables())
            .collect()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("[]");
        }
        for (i, lit) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

/// A conjunction of atoms, implicitly existentially quantified over all of
/// its variables. `Display` renders the canonical textual form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LogicalForm {
    pub atoms: Vec<Atom>,
}

impl LogicalForm {
    pub fn new(atoms: Vec<Atom>) -> LogicalForm {
        LogicalForm { atoms }
    }
}

impl fmt::Display for LogicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("position {pos}: unexpected character `{ch}`")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// Parses the textual logic-form syntax.
///
/// Grammar: `form := atom ('&' atom)*`, `atom := IDENT '(' term (',' term)* ')'`,
/// `term := IDENT`. Whitespace is insignificant; identifier case is
/// preserved.
pub fn parse_logic_form(text: &str) -> Result<LogicalForm, ParseError> {
    Parser::new(text).form()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Parser {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.syntax(format!("expected `{ch}`, found `{c}`"))),
            None => Err(self.syntax(format!("expected `{ch}`, found end of input"))),
        }
    }

    fn is_ident_char(c: char) -> bool {
        c.is_ascii_alphanumeric() || c == '_' || c == '-'
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if Self::is_ident_char(c) && c != '-' => {}
            Some(c) if "(),&".contains(c) => {
                return Err(self.syntax(format!("expected an identifier, found `{c}`")))
            }
            Some(c) => {
                return Err(ParseError::UnexpectedChar {
                    pos: self.pos + 1,
                    ch: c,
                })
            }
            None => return Err(self.syntax("expected an identifier, found end of input")),
        }
        let start = self.pos;
        while self.peek().is_some_and(Self::is_ident_char) {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let predicate = self.ident()?;
        self.expect('(')?;
        let mut args = vec![Term::from_ident(&self.ident()?)];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    args.push(Term::from_ident(&self.ident()?));
                }
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                Some(c) if Self::is_ident_char(c) || "(&".contains(c) => {
                    return Err(self.syntax(format!("expected `,` or `)`, found `{c}`")))
                }
                Some(c) => {
                    return Err(ParseError::UnexpectedChar {
                        pos: self.pos + 1,
                        ch: c,
                    })
                }
                None => return Err(self.syntax("expected `,` or `)`, found end of input")),
            }
        }
        Ok(Atom::new(predicate, args))
    }

    fn form(&mut self) -> Result<LogicalForm, ParseError> {
        let mut atoms = vec![self.atom()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('&') => {
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek().is_none() {
                        return Err(self.syntax("trailing `&` with no atom after it"));
                    }
                    atoms.push(self.atom()?);
                }
                Some(c) if Self::is_ident_char(c) => {
                    return Err(self.syntax(format!("expected `&` between atoms, found `{c}`")))
                }
                Some(c) => {
                    return Err(ParseError::UnexpectedChar {
                        pos: self.pos + 1,
                        ch: c,
                    })
                }
            }
        }
        Ok(LogicalForm::new(atoms))
    }
}

/// Part of speech of an annotated token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenPos {
    Noun,
    Verb,
    Adj,
    Adv,
    Prep,
    Conj,
    Art,
    Other,
}

impl TokenPos {
    pub fn from_tag(tag: &str) -> Option<TokenPos> {
        match tag {
            "noun" => Some(TokenPos::Noun),
            "verb" => Some(TokenPos::Verb),
            "adj" => Some(TokenPos::Adj),
            "adv" => Some(TokenPos::Adv),
            "prep" => Some(TokenPos::Prep),
            "conj" => Some(TokenPos::Conj),
            "art" => Some(TokenPos::Art),
            "other" => Some(TokenPos::Other),
            _ => None,
        }
    }

    /// Nouns, verbs, adjectives and adverbs carry content.
    pub fn is_open_class(self) -> bool {
        matches!(
            self,
            TokenPos::Noun | TokenPos::Verb | TokenPos::Adj | TokenPos::Adv
        )
    }
}

/// Grammatical role of a token relative to its governing verb.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Role {
    Subj,
    Dobj,
    Iobj,
    #[default]
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transitivity {
    Intrans,
    Trans,
    Ditrans,
}

/// One token of a POS-tagged, syntactically analyzed sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedToken {
    pub index: usize,
    pub lemma: String,
    pub pos: TokenPos,
    pub role: Role,
    /// The modified token (ADJ/ADV/PREP/CONJ) or the governing verb
    /// (role-bearing tokens).
    pub head: Option<usize>,
    /// Required for verbs; absent otherwise.
    pub transitivity: Option<Transitivity>,
}

#[derive(Debug, Error)]
#[error("line {line}: {msg}")]
pub struct AnnError {
    pub line: usize,
    pub msg: String,
}

/// Parses the tab-separated annotated-sentence format:
/// `index<TAB>lemma<TAB>pos<TAB>role<TAB>head<TAB>transitivity`, with `-`
/// marking absent fields. Blank lines and `#` comments are ignored.
pub fn parse_annotated_tokens(text: &str) -> Result<Vec<AnnotatedToken>, AnnError> {
    let mut tokens = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| AnnError { line: line_no, msg };
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != 6 {
            return Err(err(format!(
                "expected 6 tab-separated fields, got {}",
                fields.len()
            )));
        }
        let index: usize = fields[0]
            .parse()
            .map_err(|_| err(format!("bad token index `{}`", fields[0])))?;
        if !seen.insert(index) {
            return Err(err(format!("duplicate token index {index}")));
        }
        let pos = TokenPos::from_tag(fields[2])
            .ok_or_else(|| err(format!("unknown pos `{}`", fields[2])))?;
        let role = match fields[3] {
            "-" => Role::None,
            "subj" => Role::Subj,
            "dobj" => Role::Dobj,
            "iobj" => Role::Iobj,
            other => return Err(err(format!("unknown role `{other}`"))),
        };
        let head = match fields[4] {
            "-" => None,
            h => Some(
                h.parse()
                    .map_err(|_| err(format!("bad head index `{h}`")))?,
            ),
        };
        let transitivity = match fields[5] {
            "-" => None,
            "intrans" => Some(Transitivity::Intrans),
            "trans" => Some(Transitivity::Trans),
            "ditrans" => Some(Transitivity::Ditrans),
            other => return Err(err(format!("unknown transitivity `{other}`"))),
        };
        tokens.push(AnnotatedToken {
            index,
            lemma: fields[1].to_string(),
            pos,
            role,
            head,
            transitivity,
        });
    }
    Ok(tokens)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("token {index}: head {head} does not reference a token in the sentence")]
    DanglingHead { index: usize, head: usize },
    #[error("token {index}: a modifier needs a head token")]
    MissingHead { index: usize },
    #[error("token {index}: head chain does not reach a noun or verb")]
    NoVariableForHead { index: usize },
    #[error("token {index}: role-bearing tokens must attach to a verb")]
    RoleHeadNotVerb { index: usize },
    #[error("token {index}: verb is missing its transitivity")]
    MissingTransitivity { index: usize },
    #[error("token {index}: {msg}")]
    TransitivityMismatch { index: usize, msg: String },
    #[error("duplicate token index {index}")]
    DuplicateIndex { index: usize },
}

/// Derives a logic form from an annotated sentence.
///
/// One predicate is generated per content word: nouns become unary atoms
/// over a fresh entity variable `x_k`, verbs become atoms over a fresh
/// event variable `e_k` (followed by the direct and indirect object
/// variables as their transitivity demands), and each subject dependent
/// adds an `Agent(x, e)` atom. Adjectives, adverbs, prepositions and
/// conjunctions share the variable of the token they modify; articles
/// produce nothing.
pub fn derive_logic_form(tokens: &[AnnotatedToken]) -> Result<LogicalForm, DeriveError> {
    let mut by_index: BTreeMap<usize, &AnnotatedToken> = BTreeMap::new();
    for token in tokens {
        if by_index.insert(token.index, token).is_some() {
            return Err(DeriveError::DuplicateIndex { index: token.index });
        }
    }
    for token in tokens {
        if let Some(head) = token.head {
            if !by_index.contains_key(&head) {
                return Err(DeriveError::DanglingHead {
                    index: token.index,
                    head,
                });
            }
        }
    }

    // Fresh variables: x1, x2, ... for nouns, e1, e2, ... for verbs.
    let mut vars: BTreeMap<usize, Term> = BTreeMap::new();
    let (mut nouns, mut verbs) = (0usize, 0usize);
    for token in tokens {
        match token.pos {
            TokenPos::Noun => {
                nouns += 1;
                vars.insert(token.index, Term::var(format!("x{nouns}")));
            }
            TokenPos::Verb => {
                verbs += 1;
                vars.insert(token.index, Term::var(format!("e{verbs}")));
            }
            _ => {}
        }
    }

    // Modifiers borrow their head's variable, possibly through a chain of
    // modifiers ("very red ball").
    let var_of = |token: &AnnotatedToken| -> Result<Term, DeriveError> {
        let mut cur = token;
        let mut hops = 0usize;
        loop {
            if let Some(v) = vars.get(&cur.index) {
                return Ok(v.clone());
            }
            match cur.pos {
                TokenPos::Adj | TokenPos::Adv | TokenPos::Prep | TokenPos::Conj => {
                    let head = cur
                        .head
                        .ok_or(DeriveError::MissingHead { index: cur.index })?;
                    cur = by_index[&head];
                }
                _ => return Err(DeriveError::NoVariableForHead { index: token.index }),
            }
            hops += 1;
            if hops > tokens.len() {
                return Err(DeriveError::NoVariableForHead { index: token.index });
            }
        }
    };

    // Role-bearing tokens must attach to a verb.
    for token in tokens {
        if token.role != Role::None {
            let head = token
                .head
                .ok_or(DeriveError::MissingHead { index: token.index })?;
            if by_index[&head].pos != TokenPos::Verb {
                return Err(DeriveError::RoleHeadNotVerb { index: token.index });
            }
        }
    }

    let mut atoms = Vec::new();
    for token in tokens {
        let predicate = token.lemma.to_ascii_lowercase();
        match token.pos {
            TokenPos::Noun => {
                atoms.push(Atom::new(predicate, vec![vars[&token.index].clone()]));
            }
            TokenPos::Verb => {
                let event = vars[&token.index].clone();
                let transitivity = token
                    .transitivity
                    .ok_or(DeriveError::MissingTransitivity { index: token.index })?;
                let deps = |role: Role| -> Vec<&AnnotatedToken> {
                    tokens
                        .iter()
                        .filter(|t| t.head == Some(token.index) && t.role == role)
                        .collect()
                };
                let (subjects, dobjs, iobjs) =
                    (deps(Role::Subj), deps(Role::Dobj), deps(Role::Iobj));

                let mismatch = |msg: String| DeriveError::TransitivityMismatch {
                    index: token.index,
                    msg,
                };
                let expected = match transitivity {
                    Transitivity::Intrans => (0usize, 0usize),
                    Transitivity::Trans => (1, 0),
                    Transitivity::Ditrans => (1, 1),
                };
                if dobjs.len() != expected.0 {
                    return Err(mismatch(format!(
                        "verb declared {transitivity:?} but has {} direct object(s)",
                        dobjs.len()
                    )));
                }
                if iobjs.len() != expected.1 {
                    return Err(mismatch(format!(
                        "verb declared {transitivity:?} but has {} indirect object(s)",
                        iobjs.len()
                    )));
                }

                // Arguments in fixed order: event, direct object, indirect
                // object. Subjects are expressed through Agent role atoms.
                let mut args = vec![event.clone()];
                for dep in dobjs.iter().chain(iobjs.iter()) {
                    args.push(var_of(dep)?);
                }
                atoms.push(Atom::new(predicate, args));
                for subj in subjects {
                    atoms.push(Atom::new("Agent", vec![var_of(subj)?, event.clone()]));
                }
            }
            TokenPos::Adj | TokenPos::Adv | TokenPos::Prep | TokenPos::Conj => {
                let head = token
                    .head
                    .ok_or(DeriveError::MissingHead { index: token.index })?;
                atoms.push(Atom::new(predicate, vec![var_of(by_index[&head])?]));
            }
            TokenPos::Art | TokenPos::Other => {}
        }
    }
    Ok(LogicalForm::new(atoms))
}

/// Clausifies a (T, H) pair for refutation.
///
/// Every distinct variable of every T form is replaced by a fresh Skolem
/// constant (`sk1`, `sk2`, ...), making each T atom a ground positive unit
/// clause. H is negated into a single all-negative clause whose variables
/// are standardized apart from everything else; each literal gets its own
/// fresh copies (literal k renames `v` to `hk_v`), mirroring how each H
/// atom is matched against the T units independently.
pub fn clausify(t_forms: &[LogicalForm], h_form: &LogicalForm) -> (Vec<Clause>, Clause) {
    let mut t_clauses = Vec::new();
    let mut skolems = 0usize;
    for form in t_forms {
        let mut map: BTreeMap<String, Term> = BTreeMap::new();
        for atom in &form.atoms {
            let args = atom
                .args
                .iter()
                .map(|term| match term {
                    Term::Variable(name) => map
                        .entry(name.clone())
                        .or_insert_with(|| {
                            skolems += 1;
                            Term::skolem(format!("sk{skolems}"))
                        })
                        .clone(),
                    other => other.clone(),
                })
                .collect();
            t_clauses.push(Clause::new([Literal::pos(Atom::new(
                atom.predicate.clone(),
                args,
            ))]));
        }
    }

    let mut neg_literals = Vec::new();
    for (ordinal, atom) in h_form.atoms.iter().enumerate() {
        let k = ordinal + 1;
        let args = atom
            .args
            .iter()
            .map(|term| match term {
                Term::Variable(name) => Term::var(format!("h{k}_{name}")),
                other => other.clone(),
            })
            .collect();
        neg_literals.push(Literal::neg(Atom::new(atom.predicate.clone(), args)));
    }
    (t_clauses, Clause::new(neg_literals))
}
