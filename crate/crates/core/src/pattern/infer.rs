//! Inferring one pattern that covers a cluster of strings.
//!
//! Each string is decomposed into tandem repeats and read as a sequence of
//! items, an item being a body (one symbol or a nested group) with an
//! observed count; a lone literal is a count of 1. The sequences are aligned
//! on their bodies and the observed counts are widened into bounds:
//!
//! | counts seen            | bound        |
//! |------------------------|--------------|
//! | always 1               | literal      |
//! | always `i >= 2`        | `{i}`        |
//! | varying, never absent  | `+`          |
//! | absent or once         | `{0..1}`     |
//! | absent or repeated     | `*`          |
//!
//! When the alignment leaves more optional items than mandatory ones, the
//! strings are not considered to share a structure and the generalization
//! ladder is climbed instead, ending at `SIGMA*`. The result always matches
//! every input string.

use std::collections::HashMap;

use super::{
    canonicalize, generalize, generalize_symbol_blocks, Atom, Bound, CompiledPattern, GeneralizationLevel, PatternExpr,
};
use crate::alphabet::{PStr, Symbol};
use crate::tandem::{decompose, DEFAULT_MAX_DEPTH};

/// Shape of a pattern with all multiplicities erased. A symbol occurring
/// once and a repeated symbol have the same skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Skeleton {
    Sym(Symbol),
    Group(Vec<Skeleton>),
    Any,
}

pub fn skeleton(p: &PatternExpr) -> Skeleton {
    match p {
        PatternExpr::Universal => Skeleton::Any,
        PatternExpr::Seq(atoms) => Skeleton::Group(atoms.iter().map(atom_skeleton).collect()),
    }
}

fn atom_skeleton(a: &Atom) -> Skeleton {
    match a {
        Atom::Lit(s) => Skeleton::Sym(*s),
        Atom::Rep { body, .. } => match body.as_single_symbol() {
            Some(s) => Skeleton::Sym(s),
            None => skeleton(body),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Body {
    Sym(Symbol),
    Group(Vec<Item>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Item {
    body: Body,
    min: u32,
    max: u32,
}

impl Item {
    fn key(&self) -> Skeleton {
        match &self.body {
            Body::Sym(s) => Skeleton::Sym(*s),
            Body::Group(items) => Skeleton::Group(items.iter().map(Item::key).collect()),
        }
    }

    fn once(body: Body) -> Item {
        Item { body, min: 1, max: 1 }
    }

    fn literal_symbol(&self) -> Option<Symbol> {
        match self.body {
            Body::Sym(s) if self.min == 1 && self.max == 1 => Some(s),
            _ => None,
        }
    }

    fn merge(&mut self, other: &Item) {
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
        if let (Body::Group(a), Body::Group(b)) = (&mut self.body, &other.body) {
            for (x, y) in a.iter_mut().zip(b) {
                x.merge(y);
            }
        }
    }

    fn optional(mut self) -> Item {
        self.min = 0;
        self
    }
}

/// Items of an exact-multiplicity pattern, or `None` for anything else.
fn items_of(p: &PatternExpr) -> Option<Vec<Item>> {
    let PatternExpr::Seq(atoms) = p else {
        return None;
    };
    atoms
        .iter()
        .map(|a| match a {
            Atom::Lit(s) => Some(Item::once(Body::Sym(*s))),
            Atom::Rep {
                body,
                bound: Bound::Exact(n),
            } => {
                let body = match body.as_single_symbol() {
                    Some(s) => Body::Sym(s),
                    None => Body::Group(items_of(body)?),
                };
                Some(Item { body, min: *n, max: *n })
            }
            Atom::Rep { .. } => None,
        })
        .collect()
}

/// Multi-symbol literal bodies appearing anywhere in `items`.
fn literal_bodies(items: &[Item], out: &mut Vec<Vec<Symbol>>) {
    for item in items {
        if let Body::Group(inner) = &item.body {
            let lit: Option<Vec<Symbol>> = inner.iter().map(Item::literal_symbol).collect();
            if let Some(lit) = lit {
                if lit.len() > 1 && !out.contains(&lit) {
                    out.push(lit);
                }
            }
            literal_bodies(inner, out);
        }
    }
}

/// Re-reads literal stretches as single occurrences of known bodies, so
/// that `abca` lines up with `a(bc){3}a`.
fn retokenize(items: Vec<Item>, bodies: &[Vec<Symbol>]) -> Vec<Item> {
    retokenize_within(items, bodies, usize::MAX)
}

/// Bodies shorter than `limit` only, so a group is never rewritten as a
/// single copy of itself.
fn retokenize_within(items: Vec<Item>, bodies: &[Vec<Symbol>], limit: usize) -> Vec<Item> {
    let mut out = Vec::with_capacity(items.len());
    let mut i = 0;
    while i < items.len() {
        let hit = bodies.iter().find(|b| {
            b.len() < limit
                && i + b.len() <= items.len()
                && b.iter().zip(&items[i..]).all(|(s, it)| it.literal_symbol() == Some(*s))
        });
        match hit {
            Some(b) => {
                let group = b.iter().map(|&s| Item::once(Body::Sym(s))).collect();
                out.push(Item::once(Body::Group(group)));
                i += b.len();
            }
            None => {
                let mut item = items[i].clone();
                if let Body::Group(inner) = item.body {
                    let len = inner.len();
                    item.body = Body::Group(retokenize_within(inner, bodies, len));
                }
                out.push(item);
                i += 1;
            }
        }
    }
    out
}

/// Merges `seq` into `profile` along a longest common subsequence of keys.
fn align(profile: Vec<Item>, seq: Vec<Item>) -> Vec<Item> {
    let pk: Vec<Skeleton> = profile.iter().map(Item::key).collect();
    let sk: Vec<Skeleton> = seq.iter().map(Item::key).collect();
    let (m, n) = (pk.len(), sk.len());
    let mut dp = vec![vec![0u32; n + 1]; m + 1];
    for i in 1..=m {
        for j in 1..=n {
            dp[i][j] = if pk[i - 1] == sk[j - 1] {
                dp[i - 1][j - 1] + 1
            } else {
                dp[i - 1][j].max(dp[i][j - 1])
            };
        }
    }
    enum Op {
        Both(usize, usize),
        Profile(usize),
        Seq(usize),
    }
    let mut ops = Vec::with_capacity(m + n);
    let (mut i, mut j) = (m, n);
    while i > 0 || j > 0 {
        if i > 0 && j > 0 && pk[i - 1] == sk[j - 1] && dp[i][j] == dp[i - 1][j - 1] + 1 {
            ops.push(Op::Both(i - 1, j - 1));
            i -= 1;
            j -= 1;
        } else if i > 0 && (j == 0 || dp[i - 1][j] >= dp[i][j - 1]) {
            ops.push(Op::Profile(i - 1));
            i -= 1;
        } else {
            ops.push(Op::Seq(j - 1));
            j -= 1;
        }
    }
    ops.reverse();
    ops.into_iter()
        .map(|op| match op {
            Op::Both(i, j) => {
                let mut item = profile[i].clone();
                item.merge(&seq[j]);
                item
            }
            Op::Profile(i) => profile[i].clone().optional(),
            Op::Seq(j) => seq[j].clone().optional(),
        })
        .collect()
}

fn bound_for(min: u32, max: u32) -> Option<Bound> {
    if min == max {
        (min != 1).then_some(Bound::Exact(min))
    } else if min >= 1 {
        Some(Bound::AtLeast(1))
    } else if max <= 1 {
        Some(Bound::Range(0, 1))
    } else {
        Some(Bound::AtLeast(0))
    }
}

fn items_to_pattern(items: &[Item]) -> PatternExpr {
    let mut atoms = Vec::new();
    for item in items {
        let body = match &item.body {
            Body::Sym(s) => PatternExpr::Seq(vec![Atom::Lit(*s)]),
            Body::Group(inner) => items_to_pattern(inner),
        };
        match bound_for(item.min, item.max) {
            None => atoms.extend(body.atoms().iter().cloned()),
            Some(bound) => atoms.push(Atom::rep(body, bound)),
        }
    }
    PatternExpr::Seq(atoms)
}

fn unify(decomps: &[PatternExpr]) -> Option<PatternExpr> {
    let seqs: Vec<Vec<Item>> = decomps.iter().map(items_of).collect::<Option<_>>()?;
    let mut bodies = Vec::new();
    seqs.iter().for_each(|s| literal_bodies(s, &mut bodies));
    bodies.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut seqs = seqs.into_iter().map(|s| retokenize(s, &bodies));
    let first = seqs.next()?;
    let profile = seqs.fold(first, align);
    let mandatory = profile.iter().filter(|i| i.min > 0).count();
    let optional = profile.len() - mandatory;
    if mandatory == 0 || optional > mandatory {
        return None;
    }
    Some(items_to_pattern(&profile))
}

const MAX_TEMPLATES: usize = 16;

/// Infers a pattern for a cluster from the strings and their tandem
/// decompositions (one per string, same order).
pub fn infer_from_decompositions(strings: &[PStr], decomps: &[PatternExpr], alphabet_size: usize) -> PatternExpr {
    assert_eq!(strings.len(), decomps.len(), "one decomposition per string");
    let decomps: Vec<PatternExpr> = decomps.iter().map(canonicalize).collect();
    let covers = |p: &PatternExpr| {
        let compiled = CompiledPattern::new(p.clone(), alphabet_size);
        strings.iter().all(|x| compiled.matches(x))
    };

    if let Some(p) = unify(&decomps).map(|p| canonicalize(&p)) {
        if covers(&p) {
            return p;
        }
    }

    // Distinct decompositions, most frequent first.
    let mut counts: HashMap<&PatternExpr, (usize, usize)> = HashMap::new();
    for (i, d) in decomps.iter().enumerate() {
        counts.entry(d).or_insert((0, i)).0 += 1;
    }
    let mut templates: Vec<(&PatternExpr, (usize, usize))> = counts.into_iter().collect();
    templates.sort_by(|a, b| b.1 .0.cmp(&a.1 .0).then(a.1 .1.cmp(&b.1 .1)));
    templates.truncate(MAX_TEMPLATES);

    type Rung = Box<dyn Fn(&PatternExpr) -> PatternExpr>;
    let rungs: Vec<Rung> = vec![
        Box::new(|p| generalize(p, GeneralizationLevel::Ge2)),
        Box::new(|p| generalize(p, GeneralizationLevel::Plus)),
        Box::new(|p| generalize(p, GeneralizationLevel::Star)),
        Box::new(|p| generalize_symbol_blocks(p, 2)),
        Box::new(|p| generalize_symbol_blocks(p, 1)),
        Box::new(|p| generalize(p, GeneralizationLevel::SymbolStar)),
    ];
    for rung in &rungs {
        for (template, _) in &templates {
            let candidate = canonicalize(&rung(template));
            if covers(&candidate) {
                return candidate;
            }
        }
    }
    PatternExpr::Universal
}

/// Infers one pattern matching every string of a non-empty cluster.
pub fn infer_language(cluster: &[PStr], alphabet_size: usize) -> PatternExpr {
    let decomps: Vec<PatternExpr> = cluster.iter().map(|x| decompose(x, DEFAULT_MAX_DEPTH)).collect();
    infer_from_decompositions(cluster, &decomps, alphabet_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::pattern::{equivalent, matches};

    fn infer(texts: &[&str]) -> String {
        let ab = Alphabet::lowercase();
        let xs: Vec<PStr> = texts.iter().map(|t| ab.parse(t).unwrap()).collect();
        let p = infer_language(&xs, ab.len());
        for x in &xs {
            assert!(matches(&p, x, ab.len()), "{} misses {}", p.to_text(&ab), ab.render(x));
        }
        p.to_text(&ab)
    }

    fn equiv(a: &str, b: &str) -> bool {
        let ab = Alphabet::lowercase();
        equivalent(
            &PatternExpr::parse(a, &ab).unwrap(),
            &PatternExpr::parse(b, &ab).unwrap(),
            ab.len(),
        )
    }

    #[test]
    fn varying_counts_become_plus() {
        assert_eq!(infer(&["aaaaa", "aaaaaaaaaa"]), "a+");
        assert_eq!(infer(&["abcbcbcbca", "abcbca"]), "a(bc)+a");
        assert_eq!(infer(&["abab", "abababab"]), "(ab)+");
    }

    #[test]
    fn single_string_stays_exact() {
        assert_eq!(infer(&["aaaaa"]), "a{5}");
        assert_eq!(infer(&["abcbcbcbcd"]), "a(bc){4}d");
        assert_eq!(infer(&["abc", "abc"]), "abc");
    }

    #[test]
    fn once_and_absent_occurrences() {
        // a single `a` lines up with a repeated one
        assert_eq!(infer(&["abbbb", "aaabb"]), "a+b+");
        // a single body occurrence spelled as literals
        assert_eq!(infer(&["abca", "abcbcbca"]), "a(bc)+a");
        let merged = infer(&["aaabbbb", "aabbb", "abbba", "abbbbbba"]);
        assert!(equiv(&merged, "a+b+a{0..1}"), "{merged}");
    }

    #[test]
    fn nested_bodies_merge() {
        let p = infer(&["aabaabaab", "aaabaaab"]);
        assert!(equiv(&p, "(a+b)+") || equiv(&p, "(a{2..3}b)+"), "{p}");
    }

    #[test]
    fn different_structures_climb_the_ladder() {
        let p = infer(&["abab", "abcabc"]);
        assert_ne!(p, "SIGMA*");
        assert_eq!(p, "(a*b*c*)*");
    }

    #[test]
    fn empty_strings() {
        assert_eq!(infer(&["", ""]), "EPS");
        let p = infer(&["", "ab"]);
        assert_ne!(p, "SIGMA*");
    }

    #[test]
    fn skeleton_ignores_multiplicities() {
        let ab = Alphabet::lowercase();
        let sk = |t: &str| skeleton(&decompose(&ab.parse(t).unwrap(), DEFAULT_MAX_DEPTH));
        assert_eq!(sk("abab"), sk("abababab"));
        assert_eq!(sk("aaa"), sk("aaaaa"));
        assert_ne!(sk("abab"), sk("aaa"));
        assert_eq!(sk("aab"), sk("abbb"));
        assert_ne!(sk("abc"), sk("acb"));
    }
}
