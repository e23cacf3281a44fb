use std::fmt;

use super::{Atom, Bound, PatternExpr};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

const EPS: &str = "EPS";
const SIGMA_STAR: &str = "SIGMA*";

pub struct PatternDisplay<'a> {
    pattern: &'a PatternExpr,
    alphabet: &'a Alphabet,
}

impl<'a> PatternDisplay<'a> {
    pub(super) fn new(pattern: &'a PatternExpr, alphabet: &'a Alphabet) -> Self {
        PatternDisplay { pattern, alphabet }
    }
}

impl fmt::Display for PatternDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pattern(self.pattern, self.alphabet, f)
    }
}

fn write_pattern(p: &PatternExpr, ab: &Alphabet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match p {
        PatternExpr::Universal => f.write_str(SIGMA_STAR),
        PatternExpr::Seq(atoms) if atoms.is_empty() => f.write_str(EPS),
        PatternExpr::Seq(atoms) => atoms.iter().try_for_each(|a| write_atom(a, ab, f)),
    }
}

fn write_atom(a: &Atom, ab: &Alphabet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match a {
        Atom::Lit(s) => write!(f, "{}", ab.char_of(*s).unwrap_or('\u{fffd}')),
        Atom::Rep { body, bound } => {
            match body.as_single_symbol() {
                Some(s) => write!(f, "{}", ab.char_of(s).unwrap_or('\u{fffd}'))?,
                None => {
                    f.write_str("(")?;
                    write_pattern(body, ab, f)?;
                    f.write_str(")")?;
                }
            }
            write_bound(*bound, f)
        }
    }
}

fn write_bound(b: Bound, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match b {
        Bound::Exact(i) => write!(f, "{{{i}}}"),
        Bound::AtLeast(0) => f.write_str("*"),
        Bound::AtLeast(1) => f.write_str("+"),
        Bound::AtLeast(m) => write!(f, "{{>={m}}}"),
        Bound::Range(lo, hi) => write!(f, "{{{lo}..{hi}}}"),
    }
}

pub(super) fn parse(text: &str, alphabet: &Alphabet) -> Result<PatternExpr> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        alphabet,
    };
    let pattern = p.pattern()?;
    if p.pos != p.chars.len() {
        return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(pattern)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::PatternSyntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        let n = kw.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(kw.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn at_pattern_end(&self) -> bool {
        matches!(self.peek(), None | Some(')'))
    }

    fn pattern(&mut self) -> Result<PatternExpr> {
        for (kw, value) in [(SIGMA_STAR, PatternExpr::Universal), (EPS, PatternExpr::epsilon())] {
            let save = self.pos;
            if self.eat_keyword(kw) {
                if self.at_pattern_end() {
                    return Ok(value);
                }
                self.pos = save;
                return Err(self.error(format!("`{kw}` must stand alone")));
            }
        }
        let mut atoms = Vec::new();
        while !self.at_pattern_end() {
            atoms.push(self.atom()?);
        }
        if atoms.is_empty() {
            return Err(self.error("empty pattern (use EPS for the empty string)"));
        }
        Ok(PatternExpr::Seq(atoms))
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let start = self.pos;
                let body = self.pattern()?;
                if body.is_epsilon() {
                    self.pos = start;
                    return Err(self.error("repeat body must be non-empty"));
                }
                self.expect(')')?;
                let bound = self
                    .bound()?
                    .ok_or_else(|| self.error("parenthesized pattern needs a bound"))?;
                Ok(Atom::rep(body, bound))
            }
            Some(c) => {
                let s = self
                    .alphabet
                    .index_of(c)
                    .ok_or_else(|| self.error(format!("{c:?} is not in the alphabet")))?;
                self.pos += 1;
                Ok(match self.bound()? {
                    Some(bound) => Atom::symbol_rep(s, bound),
                    None => Atom::Lit(s),
                })
            }
            None => Err(self.error("unexpected end of pattern")),
        }
    }

    fn int(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| Error::PatternSyntax {
            offset: start,
            message: format!("integer {digits} is too large"),
        })
    }

    fn bound(&mut self) -> Result<Option<Bound>> {
        let start = self.pos;
        let bound = match self.peek() {
            Some('+') => {
                self.pos += 1;
                Bound::AtLeast(1)
            }
            Some('*') => {
                self.pos += 1;
                Bound::AtLeast(0)
            }
            Some('{') => {
                self.pos += 1;
                let b = if self.eat_keyword(">=") {
                    Bound::AtLeast(self.int()?)
                } else {
                    let lo = self.int()?;
                    if self.eat_keyword("..") {
                        Bound::Range(lo, self.int()?)
                    } else {
                        Bound::Exact(lo)
                    }
                };
                self.expect('}')?;
                b
            }
            _ => return Ok(None),
        };
        if !bound.is_valid() {
            self.pos = start;
            return Err(self.error(match bound {
                Bound::Exact(_) => "exact repeat count must be at least 2",
                _ => "range lower end exceeds upper end",
            }));
        }
        Ok(Some(bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(text: &str) {
        let ab = Alphabet::lowercase();
        let p = PatternExpr::parse(text, &ab).unwrap();
        assert_eq!(p.to_text(&ab), text);
    }

    #[test]
    fn documented_examples_roundtrip() {
        for t in [
            "a(bc){4}d",
            "(a{3}(bc){2}){3}",
            "a+b+a{0..1}",
            "(ab)*",
            "a{>=2}",
            "EPS",
            "SIGMA*",
            "(SIGMA*)+",
            "((ab){2}){3}",
        ] {
            roundtrip(t);
        }
    }

    #[test]
    fn structure() {
        let ab = Alphabet::lowercase();
        let p = PatternExpr::parse("a(bc){4}d", &ab).unwrap();
        assert_eq!(
            p,
            PatternExpr::Seq(vec![
                Atom::Lit(0),
                Atom::rep(PatternExpr::literal(&[1, 2]), Bound::Exact(4)),
                Atom::Lit(3),
            ])
        );
        // parenthesized single symbols print without parentheses
        let q = PatternExpr::parse("(a){3}", &ab).unwrap();
        assert_eq!(q.to_text(&ab), "a{3}");
        assert_eq!(PatternExpr::parse("a{>=1}", &ab).unwrap().to_text(&ab), "a+");
    }

    #[test]
    fn syntax_errors() {
        let ab = Alphabet::lowercase();
        for bad in [
            "",
            "(ab)",
            "a{1}",
            "a{3..2}",
            "(EPS)+",
            "aEPS",
            "a{",
            "a{x}",
            "A",
            "(ab",
            "ab)",
            "a{2",
            "a{99999999999}",
        ] {
            assert!(
                matches!(PatternExpr::parse(bad, &ab), Err(Error::PatternSyntax { .. })),
                "{bad:?} should not parse"
            );
        }
    }
}
