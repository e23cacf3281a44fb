//! Pattern to DFA: Thompson-style NFA, subset construction, minimization.

use std::collections::HashMap;

use super::{Atom, Bound, PatternExpr};
use crate::alphabet::Symbol;
use crate::dfa::Dfa;

#[derive(Default)]
struct Nfa {
    eps: Vec<Vec<u32>>,
    edges: Vec<Vec<(Symbol, u32)>>,
    // states with a self-loop on every symbol
    any_loop: Vec<bool>,
}

impl Nfa {
    fn state(&mut self) -> u32 {
        self.eps.push(Vec::new());
        self.edges.push(Vec::new());
        self.any_loop.push(false);
        (self.eps.len() - 1) as u32
    }

    fn eps(&mut self, from: u32, to: u32) {
        self.eps[from as usize].push(to);
    }

    /// Appends a fragment for `p` starting at `from`; returns its exit.
    fn pattern(&mut self, p: &PatternExpr, from: u32) -> u32 {
        match p {
            PatternExpr::Universal => {
                let s = self.state();
                self.eps(from, s);
                self.any_loop[s as usize] = true;
                s
            }
            PatternExpr::Seq(atoms) => atoms.iter().fold(from, |cur, a| self.atom(a, cur)),
        }
    }

    fn atom(&mut self, a: &Atom, from: u32) -> u32 {
        match a {
            Atom::Lit(s) => {
                let t = self.state();
                self.edges[from as usize].push((*s, t));
                t
            }
            Atom::Rep { body, bound } => {
                let mut cur = from;
                for _ in 0..bound.lower() {
                    cur = self.pattern(body, cur);
                }
                match *bound {
                    Bound::Exact(_) => cur,
                    Bound::AtLeast(_) => {
                        // fresh entry so the loop cannot leak into earlier copies
                        let entry = self.state();
                        self.eps(cur, entry);
                        let end = self.pattern(body, entry);
                        self.eps(end, entry);
                        entry
                    }
                    Bound::Range(lo, hi) => {
                        let exit = self.state();
                        self.eps(cur, exit);
                        for _ in lo..hi {
                            cur = self.pattern(body, cur);
                            self.eps(cur, exit);
                        }
                        exit
                    }
                }
            }
        }
    }

    fn closure(&self, set: &mut Vec<u32>) {
        let mut in_set = vec![false; self.eps.len()];
        for &s in set.iter() {
            in_set[s as usize] = true;
        }
        let mut i = 0;
        while i < set.len() {
            let s = set[i];
            for &t in &self.eps[s as usize] {
                if !in_set[t as usize] {
                    in_set[t as usize] = true;
                    set.push(t);
                }
            }
            i += 1;
        }
        set.sort_unstable();
    }
}

/// Minimal complete DFA accepting exactly `L(p)` over symbols
/// `0..alphabet_size`. Literals outside that range never match.
pub fn to_dfa(p: &PatternExpr, alphabet_size: usize) -> Dfa {
    let mut nfa = Nfa::default();
    let start = nfa.state();
    let accept = nfa.pattern(p, start);

    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut sets: Vec<Vec<u32>> = Vec::new();
    let mut init = vec![start];
    nfa.closure(&mut init);
    ids.insert(init.clone(), 0);
    sets.push(init);
    let mut trans: Vec<u32> = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let mut targets: Vec<Vec<u32>> = vec![Vec::new(); alphabet_size];
        for &s in &sets[i] {
            for &(a, t) in &nfa.edges[s as usize] {
                if (a as usize) < alphabet_size {
                    targets[a as usize].push(t);
                }
            }
            if nfa.any_loop[s as usize] {
                targets.iter_mut().for_each(|v| v.push(s));
            }
        }
        for mut set in targets {
            nfa.closure(&mut set);
            set.dedup();
            let next = sets.len() as u32;
            let id = *ids.entry(set.clone()).or_insert_with(|| {
                sets.push(set);
                next
            });
            trans.push(id);
        }
        i += 1;
    }
    let finals = sets.iter().map(|s| s.binary_search(&accept).is_ok()).collect();
    Dfa::new(alphabet_size, 0, trans, finals)
        .expect("subset construction yields a complete DFA")
        .minimize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn dfa(text: &str) -> Dfa {
        let ab = Alphabet::first_letters(4).unwrap();
        to_dfa(&PatternExpr::parse(text, &ab).unwrap(), 4)
    }

    fn accepts(text: &str, x: &str) -> bool {
        let ab = Alphabet::first_letters(4).unwrap();
        dfa(text).accepts(&ab.parse(x).unwrap())
    }

    #[test]
    fn state_counts() {
        let a_plus = dfa("a+");
        assert_eq!(a_plus.live_states(), 2);
        assert!(!a_plus.is_final(a_plus.start()));
        assert_eq!(dfa("(ab)+").live_states(), 3);

        let eps = dfa("EPS");
        assert!(eps.is_final(eps.start()));
        assert_eq!(eps.live_states(), 1);
        assert_eq!(eps.num_states(), 2);

        assert_eq!(dfa("SIGMA*").num_states(), 1);
    }

    #[test]
    fn membership() {
        assert!(accepts("(ab)+", "abab"));
        assert!(!accepts("(ab)+", "aba"));
        assert!(!accepts("(ab)+", ""));
        assert!(accepts("a(bc){>=2}d", "abcbcd"));
        assert!(!accepts("a(bc){>=2}d", "abcd"));
        assert!(accepts("a+b+a{0..1}", "aabbb"));
        assert!(accepts("a+b+a{0..1}", "abba"));
        assert!(!accepts("a+b+a{0..1}", "abbaa"));
        assert!(accepts("(a*b*)*", "abba"));
        assert!(accepts("(a*b*)*", ""));
        assert!(!accepts("(a*b*)*", "abc"));
        assert!(accepts("a(SIGMA*)+d", "ad"));
        assert!(accepts("a(SIGMA*)+d", "abcdd"));
        assert!(accepts("(a{2}){3}", "aaaaaa"));
        assert!(!accepts("(a{2}){3}", "aaaaa"));
        assert!(accepts("((ab)*)+", ""));
    }

    #[test]
    fn star_of_nullable_body() {
        // the loop entry must not allow skipping mandatory copies
        assert!(!accepts("(a*b)+", ""));
        assert!(accepts("(a*b)+", "b"));
        assert!(accepts("(a*b){>=2}", "abab"));
        assert!(!accepts("(a*b){>=2}", "ab"));
    }
}
