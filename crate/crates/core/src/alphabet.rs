//! Alphabets, strings over them, and first-occurrence relabeling.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
pub type Symbol = u8;

/// An ordered set of distinct characters.
///
/// Strings are stored as sequences of indices into the alphabet, so two
/// strings are comparable only when they were parsed with the same alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: HashMap<char, Symbol>,
}

impl Alphabet {
    pub const MAX_SIZE: usize = Symbol::MAX as usize + 1;

    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if symbols.len() > Self::MAX_SIZE {
            return Err(Error::InvalidAlphabet(format!(
                "{} symbols exceed the maximum of {}",
                symbols.len(),
                Self::MAX_SIZE
            )));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if c.is_whitespace() || c.is_control() {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol {c:?} is whitespace or a control character"
                )));
            }
            if index.insert(c, i as Symbol).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// The 26 lowercase ASCII letters in order.
    pub fn lowercase() -> Self {
        Self::new('a'..='z').expect("lowercase alphabet is valid")
    }

    /// The first `n` lowercase letters (`1 <= n <= 26`).
    pub fn first_letters(n: usize) -> Result<Self> {
        if n == 0 || n > 26 {
            return Err(Error::InvalidAlphabet(format!("cannot take {n} lowercase letters")));
        }
        Self::new(('a'..='z').take(n))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn char_of(&self, s: Symbol) -> Option<char> {
        self.symbols.get(s as usize).copied()
    }

    pub fn index_of(&self, c: char) -> Option<Symbol> {
        self.index.get(&c).copied()
    }

    pub fn contains(&self, c: char) -> bool {
        self.index.contains_key(&c)
    }

    /// Parses text into a string over this alphabet.
    pub fn parse(&self, text: &str) -> Result<PStr> {
        text.chars()
            .map(|c| {
                self.index_of(c).ok_or_else(|| Error::UnknownSymbol {
                    symbol: c,
                    alphabet: self.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(PStr)
    }

    /// Checks that every symbol of `x` is a valid index for this alphabet.
    pub fn check(&self, x: &[Symbol]) -> Result<()> {
        match x.iter().find(|&&s| s as usize >= self.len()) {
            Some(&s) => Err(Error::SymbolOutOfRange {
                index: s as usize,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    pub fn render(&self, x: &[Symbol]) -> String {
        x.iter().map(|&s| self.char_of(s).unwrap_or('\u{fffd}')).collect()
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::lowercase()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// A finite string, stored as symbol indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PStr(Vec<Symbol>);

impl PStr {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        PStr(symbols)
    }

    pub fn empty() -> Self {
        PStr(Vec::new())
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &PStr) -> PStr {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        PStr(v)
    }
}

impl Deref for PStr {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for PStr {
    fn from(v: Vec<Symbol>) -> Self {
        PStr(v)
    }
}

impl From<&[Symbol]> for PStr {
    fn from(v: &[Symbol]) -> Self {
        PStr(v.to_vec())
    }
}

impl FromIterator<Symbol> for PStr {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        PStr(iter.into_iter().collect())
    }
}

/// Old-to-new symbol pairs, in order of first occurrence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relabeling {
    pairs: Vec<(Symbol, Symbol)>,
}

impl Relabeling {
    pub fn pairs(&self) -> &[(Symbol, Symbol)] {
        &self.pairs
    }

    pub fn get(&self, old: Symbol) -> Option<Symbol> {
        self.pairs.iter().find(|p| p.0 == old).map(|p| p.1)
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|(a, b)| a == b)
    }

    pub fn apply(&self, x: &[Symbol]) -> Option<PStr> {
        x.iter().map(|&s| self.get(s)).collect()
    }
}

/// Renames symbols so that first occurrences follow the alphabet order: the
/// first distinct symbol becomes index 0, the second index 1, and so on.
///
/// The empty string maps to itself with an empty mapping.
pub fn canonical_relabel(x: &[Symbol], target: &Alphabet) -> Result<(PStr, Relabeling)> {
    let mut pairs: Vec<(Symbol, Symbol)> = Vec::new();
    let mut table = [None::<Symbol>; Alphabet::MAX_SIZE];
    let mut out = Vec::with_capacity(x.len());
    for &s in x {
        let new = match table[s as usize] {
            Some(n) => n,
            None => {
                let n = pairs.len();
                if n >= target.len() {
                    let distinct = {
                        let mut seen = [false; Alphabet::MAX_SIZE];
                        x.iter()
                            .filter(|&&c| !std::mem::replace(&mut seen[c as usize], true))
                            .count()
                    };
                    return Err(Error::Capacity {
                        needed: distinct,
                        available: target.len(),
                    });
                }
                let n = n as Symbol;
                table[s as usize] = Some(n);
                pairs.push((s, n));
                n
            }
        };
        out.push(new);
    }
    Ok((PStr(out), Relabeling { pairs }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(text: &str) -> (String, Vec<(char, char)>) {
        let ab = Alphabet::lowercase();
        let x = ab.parse(text).unwrap();
        let (y, map) = canonical_relabel(&x, &ab).unwrap();
        let pairs = map
            .pairs()
            .iter()
            .map(|&(a, b)| (ab.char_of(a).unwrap(), ab.char_of(b).unwrap()))
            .collect();
        (ab.render(&y), pairs)
    }

    #[test]
    fn relabel_examples() {
        assert_eq!(relabel("bba"), ("aab".into(), vec![('b', 'a'), ('a', 'b')]));
        let (y, map) = relabel("abc");
        assert_eq!(y, "abc");
        assert!(map.iter().all(|(a, b)| a == b));
        assert_eq!(
            relabel("cacb"),
            ("abac".into(), vec![('c', 'a'), ('a', 'b'), ('b', 'c')])
        );
    }

    #[test]
    fn relabel_capacity_error() {
        let big = Alphabet::lowercase();
        let small = Alphabet::first_letters(2).unwrap();
        let x = big.parse("abcab").unwrap();
        match canonical_relabel(&x, &small) {
            Err(Error::Capacity {
                needed: 3,
                available: 2,
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn relabel_empty() {
        let (y, map) = canonical_relabel(&[], &Alphabet::lowercase()).unwrap();
        assert!(y.is_empty());
        assert!(map.pairs().is_empty());
    }

    #[test]
    fn alphabet_rejects_bad_input() {
        assert!(Alphabet::new(Vec::<char>::new()).is_err());
        assert!(Alphabet::new("aba".chars()).is_err());
        assert!(Alphabet::new("a b".chars()).is_err());
        let ab = Alphabet::new("xy".chars()).unwrap();
        assert!(matches!(ab.parse("xyz"), Err(Error::UnknownSymbol { symbol: 'z', .. })));
        assert_eq!(ab.parse("").unwrap(), PStr::empty());
        assert!(ab.check(&[0, 1]).is_ok());
        assert!(ab.check(&[2]).is_err());
    }
}
