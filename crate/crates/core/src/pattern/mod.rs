//! Pattern expressions for simple languages: sequences of literal symbols
//! and bounded repeats of nested patterns.
//!
//! A pattern is compiled to a minimal DFA for membership, inclusion, and
//! equivalence. Text syntax:
//!
//! ```text
//! pattern := atom+ | "EPS" | "SIGMA*"
//! atom    := SYMBOL [bound] | "(" pattern ")" bound
//! bound   := "{" INT "}" | "{>=" INT "}" | "+" | "*" | "{" INT ".." INT "}"
//! ```
//!
//! `EPS` and `SIGMA*` are reserved and win over symbols of the same spelling.

mod automaton;
mod canon;
mod generalize;
mod infer;
mod syntax;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, PStr, Symbol};
use crate::dfa::Dfa;
use crate::error::Result;

pub use automaton::to_dfa;
pub use canon::canonicalize;
pub use generalize::{generalize, generalize_symbol_blocks};
pub use infer::{infer_from_decompositions, infer_language, skeleton, Skeleton};
pub use syntax::PatternDisplay;

/// Multiplicity of a repeat.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Bound {
    /// Exactly `i` copies, `i >= 2`.
    Exact(u32),
    /// At least `m` copies.
    AtLeast(u32),
    /// Between `lo` and `hi` copies inclusive.
    Range(u32, u32),
}

impl Bound {
    pub fn lower(self) -> u32 {
        match self {
            Bound::Exact(i) => i,
            Bound::AtLeast(m) => m,
            Bound::Range(lo, _) => lo,
        }
    }

    /// Upper limit, `None` when unbounded.
    pub fn upper(self) -> Option<u32> {
        match self {
            Bound::Exact(i) => Some(i),
            Bound::AtLeast(_) => None,
            Bound::Range(_, hi) => Some(hi),
        }
    }

    pub fn allows(self, count: u32) -> bool {
        count >= self.lower() && self.upper().is_none_or(|hi| count <= hi)
    }

    pub fn is_valid(self) -> bool {
        match self {
            Bound::Exact(i) => i >= 2,
            Bound::AtLeast(_) => true,
            Bound::Range(lo, hi) => lo <= hi,
        }
    }

    /// Bound of `B^i B^j` for `i` in `self` and `j` in `other`.
    pub fn sum(self, other: Bound) -> Bound {
        let lo = self.lower() + other.lower();
        match (self.upper(), other.upper()) {
            (Some(a), Some(b)) if lo == a + b => Bound::Exact(lo),
            (Some(a), Some(b)) => Bound::Range(lo, a + b),
            _ => Bound::AtLeast(lo),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    Lit(Symbol),
    Rep { body: PatternExpr, bound: Bound },
}

impl Atom {
    pub fn rep(body: PatternExpr, bound: Bound) -> Atom {
        Atom::Rep { body, bound }
    }

    /// `s` repeated with `bound`.
    pub fn symbol_rep(s: Symbol, bound: Bound) -> Atom {
        Atom::rep(PatternExpr::Seq(vec![Atom::Lit(s)]), bound)
    }

    /// The single symbol this atom repeats (or is), if any.
    pub fn single_symbol(&self) -> Option<Symbol> {
        match self {
            Atom::Lit(s) => Some(*s),
            Atom::Rep { body, .. } => body.as_single_symbol(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternExpr {
    /// Concatenation; the empty sequence is the empty string.
    Seq(Vec<Atom>),
    /// Every string over the alphabet.
    Universal,
}

impl Default for PatternExpr {
    fn default() -> Self {
        PatternExpr::epsilon()
    }
}

impl PatternExpr {
    pub fn epsilon() -> Self {
        PatternExpr::Seq(Vec::new())
    }

    pub fn literal(x: &[Symbol]) -> Self {
        PatternExpr::Seq(x.iter().map(|&s| Atom::Lit(s)).collect())
    }

    /// Atoms of a sequence; empty for [`PatternExpr::Universal`].
    pub fn atoms(&self) -> &[Atom] {
        match self {
            PatternExpr::Seq(a) => a,
            PatternExpr::Universal => &[],
        }
    }

    pub fn is_universal(&self) -> bool {
        matches!(self, PatternExpr::Universal)
    }

    pub fn is_epsilon(&self) -> bool {
        matches!(self, PatternExpr::Seq(a) if a.is_empty())
    }

    /// The symbols of an all-literal sequence.
    pub fn as_literal(&self) -> Option<Vec<Symbol>> {
        match self {
            PatternExpr::Seq(atoms) => atoms
                .iter()
                .map(|a| match a {
                    Atom::Lit(s) => Some(*s),
                    Atom::Rep { .. } => None,
                })
                .collect(),
            PatternExpr::Universal => None,
        }
    }

    pub fn as_single_symbol(&self) -> Option<Symbol> {
        match self.atoms() {
            [Atom::Lit(s)] => Some(*s),
            _ => None,
        }
    }

    /// Length of the shortest string in the language.
    pub fn min_len(&self) -> u64 {
        self.atoms()
            .iter()
            .map(|a| match a {
                Atom::Lit(_) => 1,
                Atom::Rep { body, bound } => u64::from(bound.lower()) * body.min_len(),
            })
            .sum()
    }

    /// The single string in the language when every repeat is exact.
    pub fn unroll(&self) -> Option<PStr> {
        let mut out = Vec::new();
        self.unroll_into(&mut out)?;
        Some(PStr::new(out))
    }

    fn unroll_into(&self, out: &mut Vec<Symbol>) -> Option<()> {
        for atom in self.atoms_checked()? {
            match atom {
                Atom::Lit(s) => out.push(*s),
                Atom::Rep {
                    body,
                    bound: Bound::Exact(i),
                } => {
                    for _ in 0..*i {
                        body.unroll_into(out)?;
                    }
                }
                Atom::Rep { .. } => return None,
            }
        }
        Some(())
    }

    fn atoms_checked(&self) -> Option<&[Atom]> {
        match self {
            PatternExpr::Seq(a) => Some(a),
            PatternExpr::Universal => None,
        }
    }

    /// Largest symbol index used, if any.
    pub fn max_symbol(&self) -> Option<Symbol> {
        self.atoms()
            .iter()
            .filter_map(|a| match a {
                Atom::Lit(s) => Some(*s),
                Atom::Rep { body, .. } => body.max_symbol(),
            })
            .max()
    }

    /// Applies `f` to every literal symbol.
    pub fn map_symbols(&self, f: &impl Fn(Symbol) -> Symbol) -> PatternExpr {
        match self {
            PatternExpr::Universal => PatternExpr::Universal,
            PatternExpr::Seq(atoms) => PatternExpr::Seq(
                atoms
                    .iter()
                    .map(|a| match a {
                        Atom::Lit(s) => Atom::Lit(f(*s)),
                        Atom::Rep { body, bound } => Atom::rep(body.map_symbols(f), *bound),
                    })
                    .collect(),
            ),
        }
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        syntax::parse(text, alphabet)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PatternDisplay<'a> {
        PatternDisplay::new(self, alphabet)
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }
}

/// Rungs of the generalization ladder, finest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GeneralizationLevel {
    Exact,
    Ge2,
    Plus,
    Star,
    SymbolStar,
    SigmaStar,
}

impl GeneralizationLevel {
    pub const ALL: [GeneralizationLevel; 6] = [
        GeneralizationLevel::Exact,
        GeneralizationLevel::Ge2,
        GeneralizationLevel::Plus,
        GeneralizationLevel::Star,
        GeneralizationLevel::SymbolStar,
        GeneralizationLevel::SigmaStar,
    ];
}

/// `x ∈ L(p)`.
pub fn matches(p: &PatternExpr, x: &[Symbol], alphabet_size: usize) -> bool {
    to_dfa(p, alphabet_size).accepts(x)
}

/// `L(p) = L(q)`.
pub fn equivalent(p: &PatternExpr, q: &PatternExpr, alphabet_size: usize) -> bool {
    to_dfa(p, alphabet_size) == to_dfa(q, alphabet_size)
}

/// `L(p) ⊆ L(q)`.
pub fn included(p: &PatternExpr, q: &PatternExpr, alphabet_size: usize) -> bool {
    to_dfa(p, alphabet_size)
        .is_subset_of(&to_dfa(q, alphabet_size))
        .expect("same alphabet size")
}

/// A pattern compiled once for repeated membership queries.
#[derive(Clone, Debug)]
pub struct CompiledPattern {
    pub pattern: PatternExpr,
    pub dfa: Dfa,
}

impl CompiledPattern {
    pub fn new(pattern: PatternExpr, alphabet_size: usize) -> Self {
        let dfa = to_dfa(&pattern, alphabet_size);
        CompiledPattern { pattern, dfa }
    }

    pub fn matches(&self, x: &[Symbol]) -> bool {
        self.dfa.accepts(x)
    }
}
