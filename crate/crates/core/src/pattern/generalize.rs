//! The generalization ladder over pattern languages.

use super::{Atom, Bound, GeneralizationLevel, PatternExpr};

/// Relaxes `p` to `level`. Each rung's language contains the previous
/// rung's:
///
/// * `Exact`: unchanged;
/// * `Ge2`, `Plus`, `Star`: every repeat's lower bound drops to 2, 1, or 0
///   and its upper bound is removed (ranges are kept until `Star`);
/// * `SymbolStar`: the `Star` rung with every maximal block of one symbol
///   replaced by that symbol starred, e.g. `(aab)*` becomes `(a*b*)*`;
/// * `SigmaStar`: every string.
pub fn generalize(p: &PatternExpr, level: GeneralizationLevel) -> PatternExpr {
    match level {
        GeneralizationLevel::Exact => p.clone(),
        GeneralizationLevel::Ge2 => relax_bounds(p, 2),
        GeneralizationLevel::Plus => relax_bounds(p, 1),
        GeneralizationLevel::Star => relax_bounds(p, 0),
        GeneralizationLevel::SymbolStar => generalize_symbol_blocks(p, 0),
        GeneralizationLevel::SigmaStar => PatternExpr::Universal,
    }
}

/// Symbol-level relaxation with lower bound `floor`: repeats are relaxed as
/// in [`generalize`], then each maximal block of one symbol spanning more
/// than a single literal becomes `s{>=floor}`. Lone literals are kept, except
/// at floor 0 where they become `s*`. For `aabaabaab` this walks
/// `(a{>=2}b){>=2}`, `(a+b)+`, `(a*b*)*` as the floor drops from 2 to 0.
pub fn generalize_symbol_blocks(p: &PatternExpr, floor: u32) -> PatternExpr {
    symbol_blocks(&relax_bounds(p, floor), floor)
}

fn relax(bound: Bound, floor: u32) -> Bound {
    match bound {
        Bound::Exact(i) => Bound::AtLeast(i.min(floor)),
        Bound::AtLeast(m) => Bound::AtLeast(m.min(floor)),
        Bound::Range(..) if floor == 0 => Bound::AtLeast(0),
        Bound::Range(lo, hi) => Bound::Range(lo, hi),
    }
}

fn relax_bounds(p: &PatternExpr, floor: u32) -> PatternExpr {
    match p {
        PatternExpr::Universal => PatternExpr::Universal,
        PatternExpr::Seq(atoms) => PatternExpr::Seq(
            atoms
                .iter()
                .map(|a| match a {
                    Atom::Lit(s) => Atom::Lit(*s),
                    Atom::Rep { body, bound } => Atom::rep(relax_bounds(body, floor), relax(*bound, floor)),
                })
                .collect(),
        ),
    }
}

fn symbol_blocks(p: &PatternExpr, floor: u32) -> PatternExpr {
    let atoms = match p {
        PatternExpr::Universal => return PatternExpr::Universal,
        PatternExpr::Seq(atoms) => atoms,
    };
    let mut out = Vec::with_capacity(atoms.len());
    let mut i = 0;
    while i < atoms.len() {
        match atoms[i].single_symbol() {
            Some(s) => {
                let mut j = i;
                let mut min_count = 0u32;
                while j < atoms.len() && atoms[j].single_symbol() == Some(s) {
                    min_count += match &atoms[j] {
                        Atom::Lit(_) => 1,
                        Atom::Rep { bound, .. } => bound.lower(),
                    };
                    j += 1;
                }
                let lone_literal = j == i + 1 && matches!(atoms[i], Atom::Lit(_));
                if lone_literal && floor > 0 {
                    out.push(Atom::Lit(s));
                } else {
                    out.push(Atom::symbol_rep(s, Bound::AtLeast(min_count.min(floor))));
                }
                i = j;
            }
            None => {
                out.push(match &atoms[i] {
                    Atom::Rep { body, bound } => Atom::rep(symbol_blocks(body, floor), *bound),
                    Atom::Lit(s) => Atom::Lit(*s),
                });
                i += 1;
            }
        }
    }
    PatternExpr::Seq(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::pattern::included;
    use crate::tandem::{decompose, DEFAULT_MAX_DEPTH};

    fn ladder(text: &str) -> Vec<String> {
        let ab = Alphabet::lowercase();
        let p = decompose(&ab.parse(text).unwrap(), DEFAULT_MAX_DEPTH);
        GeneralizationLevel::ALL
            .iter()
            .map(|&l| generalize(&p, l).to_text(&ab))
            .collect()
    }

    #[test]
    fn abcabc_ladder() {
        assert_eq!(
            ladder("abcabc"),
            vec!["(abc){2}", "(abc){>=2}", "(abc)+", "(abc)*", "(a*b*c*)*", "SIGMA*"]
        );
    }

    #[test]
    fn aabaabaab_symbol_direction() {
        let ab = Alphabet::lowercase();
        let p = decompose(&ab.parse("aabaabaab").unwrap(), DEFAULT_MAX_DEPTH);
        assert_eq!(p.to_text(&ab), "(a{2}b){3}");
        assert_eq!(generalize(&p, GeneralizationLevel::Ge2).to_text(&ab), "(a{>=2}b){>=2}");
        assert_eq!(generalize_symbol_blocks(&p, 2).to_text(&ab), "(a{>=2}b){>=2}");
        assert_eq!(generalize_symbol_blocks(&p, 1).to_text(&ab), "(a+b)+");
        assert_eq!(generalize_symbol_blocks(&p, 0).to_text(&ab), "(a*b*)*");
    }

    #[test]
    fn literal_blocks_collapse() {
        let ab = Alphabet::lowercase();
        let p = PatternExpr::parse("aab(cd){2}", &ab).unwrap();
        assert_eq!(generalize_symbol_blocks(&p, 2).to_text(&ab), "a{>=2}b(cd){>=2}");
        assert_eq!(generalize_symbol_blocks(&p, 0).to_text(&ab), "a*b*(c*d*)*");
    }

    #[test]
    fn ranges_survive_until_star() {
        let ab = Alphabet::lowercase();
        let p = PatternExpr::parse("a+b{2}a{0..1}", &ab).unwrap();
        assert_eq!(generalize(&p, GeneralizationLevel::Ge2).to_text(&ab), "a+b{>=2}a{0..1}");
        assert_eq!(generalize(&p, GeneralizationLevel::Star).to_text(&ab), "a*b*a*");
    }

    #[test]
    fn every_rung_contains_the_previous() {
        let ab = Alphabet::first_letters(3).unwrap();
        for text in ["abcabc", "aabaabaab", "abcbcbcbca", "aaabbaaabbaabbbaabbb", "abc"] {
            let p = decompose(&ab.parse(text).unwrap(), DEFAULT_MAX_DEPTH);
            for w in GeneralizationLevel::ALL.windows(2) {
                let (lo, hi) = (generalize(&p, w[0]), generalize(&p, w[1]));
                assert!(included(&lo, &hi, 3), "{text}: {:?} !⊆ {:?}", w[0], w[1]);
            }
        }
    }
}
