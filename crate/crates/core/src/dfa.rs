//! Total deterministic finite automata over a symbol-index alphabet.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, PStr, Symbol};
use crate::error::{Error, Result};

pub type StateId = u32;

/// A complete DFA. Every state has exactly one successor per symbol; missing
/// transitions are routed to an explicit non-accepting sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet_size: usize,
    start: StateId,
    // row-major: trans[q * alphabet_size + a]
    trans: Vec<StateId>,
    finals: Vec<bool>,
}

impl Dfa {
    pub fn new(alphabet_size: usize, start: StateId, trans: Vec<StateId>, finals: Vec<bool>) -> Result<Self> {
        let n = finals.len();
        if alphabet_size == 0 {
            return Err(Error::InvalidDfa("alphabet is empty".into()));
        }
        if n == 0 {
            return Err(Error::InvalidDfa("no states".into()));
        }
        if trans.len() != n * alphabet_size {
            return Err(Error::InvalidDfa(format!(
                "transition table has {} entries, expected {}",
                trans.len(),
                n * alphabet_size
            )));
        }
        if start as usize >= n {
            return Err(Error::InvalidDfa(format!("start state {start} out of range")));
        }
        if let Some(t) = trans.iter().find(|&&t| t as usize >= n) {
            return Err(Error::InvalidDfa(format!("transition target {t} out of range")));
        }
        Ok(Dfa {
            alphabet_size,
            start,
            trans,
            finals,
        })
    }

    /// One non-accepting state looping on every symbol.
    pub fn empty_language(alphabet_size: usize) -> Self {
        Dfa {
            alphabet_size,
            start: 0,
            trans: vec![0; alphabet_size],
            finals: vec![false],
        }
    }

    /// One accepting state looping on every symbol.
    pub fn universal(alphabet_size: usize) -> Self {
        Dfa {
            alphabet_size,
            start: 0,
            trans: vec![0; alphabet_size],
            finals: vec![true],
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    /// The pumping constant: every accepted string at least this long can be
    /// pumped within its first `pumping_bound` symbols.
    pub fn pumping_bound(&self) -> usize {
        self.num_states()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q as usize]
    }

    #[inline]
    pub fn next(&self, q: StateId, a: Symbol) -> StateId {
        self.trans[q as usize * self.alphabet_size + a as usize]
    }

    /// Extended transition function from `q`.
    pub fn walk(&self, q: StateId, x: &[Symbol]) -> Result<StateId> {
        x.iter().try_fold(q, |q, &a| {
            if a as usize >= self.alphabet_size {
                Err(Error::SymbolOutOfRange {
                    index: a as usize,
                    size: self.alphabet_size,
                })
            } else {
                Ok(self.next(q, a))
            }
        })
    }

    /// Membership test. Symbols outside the alphabet are an error.
    pub fn run(&self, x: &[Symbol]) -> Result<bool> {
        self.walk(self.start, x).map(|q| self.is_final(q))
    }

    /// Membership test treating out-of-alphabet symbols as rejection.
    pub fn accepts(&self, x: &[Symbol]) -> bool {
        self.run(x).unwrap_or(false)
    }

    /// States from which no accepting state is reachable.
    pub fn dead_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..self.alphabet_size {
                rev[self.trans[q * self.alphabet_size + a] as usize].push(q as StateId);
            }
        }
        let mut live = self.finals.clone();
        let mut queue: VecDeque<usize> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    queue.push_back(p as usize);
                }
            }
        }
        live.into_iter().map(|l| !l).collect()
    }

    /// Number of states that can still reach an accepting state.
    pub fn live_states(&self) -> usize {
        self.dead_states().iter().filter(|d| !**d).count()
    }

    fn reachable_bfs(&self) -> Vec<StateId> {
        let mut order = vec![self.start];
        let mut seen = vec![false; self.num_states()];
        seen[self.start as usize] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for a in 0..self.alphabet_size {
                let t = self.next(q, a as Symbol);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Minimal equivalent DFA via Moore partition refinement. States are
    /// numbered in breadth-first order from the start state, visiting symbols
    /// in alphabet order, so two minimal DFAs of the same language are equal
    /// as values.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet_size;
        let reach = self.reachable_bfs();
        let mut local = vec![u32::MAX; self.num_states()];
        for (i, &q) in reach.iter().enumerate() {
            local[q as usize] = i as u32;
        }
        let n = reach.len();
        let mut class: Vec<u32> = reach.iter().map(|&q| self.is_final(q) as u32).collect();
        let mut num_classes = {
            let mut seen = [false; 2];
            class.iter().for_each(|&c| seen[c as usize] = true);
            seen.iter().filter(|s| **s).count()
        };
        loop {
            let mut sig_ids: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut next_class = Vec::with_capacity(n);
            let mut sig = Vec::with_capacity(k + 1);
            for (i, &q) in reach.iter().enumerate() {
                sig.clear();
                sig.push(class[i]);
                for a in 0..k {
                    let t = self.next(q, a as Symbol);
                    sig.push(class[local[t as usize] as usize]);
                }
                let fresh = sig_ids.len() as u32;
                let id = *sig_ids.entry(sig.clone()).or_insert(fresh);
                next_class.push(id);
            }
            let count = sig_ids.len();
            class = next_class;
            if count == num_classes {
                break;
            }
            num_classes = count;
        }

        // Renumber classes in BFS order from the start class.
        let mut rep = vec![usize::MAX; num_classes];
        for i in 0..n {
            if rep[class[i] as usize] == usize::MAX {
                rep[class[i] as usize] = i;
            }
        }
        let class_next = |c: u32, a: usize| -> u32 {
            let q = reach[rep[c as usize]];
            class[local[self.next(q, a as Symbol) as usize] as usize]
        };
        let mut new_id = vec![u32::MAX; num_classes];
        let start_class = class[0];
        new_id[start_class as usize] = 0;
        let mut order = vec![start_class];
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for a in 0..k {
                let t = class_next(c, a);
                if new_id[t as usize] == u32::MAX {
                    new_id[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
            i += 1;
        }
        let mut trans = Vec::with_capacity(order.len() * k);
        let mut finals = Vec::with_capacity(order.len());
        for &c in &order {
            for a in 0..k {
                trans.push(new_id[class_next(c, a) as usize]);
            }
            finals.push(self.is_final(reach[rep[c as usize]]));
        }
        Dfa {
            alphabet_size: k,
            start: 0,
            trans,
            finals,
        }
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            finals: self.finals.iter().map(|f| !f).collect(),
            ..self.clone()
        }
    }

    /// Reachable part of the synchronous product; a pair is accepting when
    /// `accept(left_final, right_final)` holds.
    pub fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        if self.alphabet_size != other.alphabet_size {
            return Err(Error::argument(format!(
                "alphabet sizes differ: {} vs {}",
                self.alphabet_size, other.alphabet_size
            )));
        }
        let k = self.alphabet_size;
        let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        ids.insert((self.start, other.start), 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..k {
                let t = (self.next(p, a as Symbol), other.next(q, a as Symbol));
                let id = *ids.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    (pairs.len() - 1) as StateId
                });
                trans.push(id);
            }
            i += 1;
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| accept(self.is_final(p), other.is_final(q)))
            .collect();
        Ok(Dfa {
            alphabet_size: k,
            start: 0,
            trans,
            finals,
        })
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    /// A shortest accepted string, smallest in symbol order among those.
    pub fn shortest_accepted(&self) -> Option<PStr> {
        let n = self.num_states();
        let mut parent: Vec<Option<(StateId, Symbol)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.start as usize] = true;
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            if self.is_final(q) {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur as usize] {
                    word.push(a);
                    cur = p;
                }
                word.reverse();
                return Some(PStr::new(word));
            }
            for a in 0..self.alphabet_size {
                let t = self.next(q, a as Symbol);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = Some((q, a as Symbol));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// `L(self) ⊆ L(other)`, decided by emptiness of `self ∩ ¬other`.
    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool> {
        Ok(self.product(other, |a, b| a && !b)?.is_empty())
    }

    /// A shortest string in the symmetric difference, if any.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<PStr>> {
        Ok(self.product(other, |a, b| a != b)?.shortest_accepted())
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.distinguishing_word(other)?.is_none())
    }

    /// True if some accepted string has length in `min..=max`.
    pub fn accepts_length_in(&self, min: usize, max: usize) -> bool {
        let n = self.num_states();
        let mut cur = vec![false; n];
        cur[self.start as usize] = true;
        for len in 0..=max {
            if len >= min && cur.iter().enumerate().any(|(q, &on)| on && self.finals[q]) {
                return true;
            }
            if len == max {
                break;
            }
            let mut nxt = vec![false; n];
            for q in (0..n).filter(|&q| cur[q]) {
                for a in 0..self.alphabet_size {
                    nxt[self.next(q as StateId, a as Symbol) as usize] = true;
                }
            }
            cur = nxt;
        }
        false
    }

    /// `table[len][q]` is proportional to the number of accepted strings of
    /// length `len` read from state `q`. Each row is scaled by its maximum
    /// (exact counts overflow quickly); ratios within a row are exact up to
    /// rounding and zero entries stay zero.
    pub(crate) fn completion_weights(&self, max: usize) -> Vec<Vec<f64>> {
        let n = self.num_states();
        let mut table = Vec::with_capacity(max + 1);
        table.push(self.finals.iter().map(|&f| f as u8 as f64).collect::<Vec<_>>());
        for len in 1..=max {
            let prev: &Vec<f64> = &table[len - 1];
            let row = (0..n)
                .map(|q| {
                    (0..self.alphabet_size)
                        .map(|a| prev[self.next(q as StateId, a as Symbol) as usize])
                        .sum()
                })
                .collect::<Vec<f64>>();
            let top = row.iter().copied().fold(0.0, f64::max);
            table.push(if top > 0.0 {
                row.iter().map(|w| w / top).collect()
            } else {
                row
            });
        }
        table
    }

    /// Graphviz rendering; the dead state and edges into it are omitted.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let dead = self.dead_states();
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  __start [shape=point];\n");
        for (q, &is_dead) in dead.iter().enumerate() {
            if is_dead {
                continue;
            }
            let shape = if self.finals[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{q} [shape={shape}];");
        }
        let _ = writeln!(out, "  __start -> q{};", self.start);
        for q in 0..self.num_states() {
            if dead[q] {
                continue;
            }
            let mut edges: Vec<(StateId, Vec<char>)> = Vec::new();
            for a in 0..self.alphabet_size {
                let t = self.next(q as StateId, a as Symbol);
                if dead[t as usize] {
                    continue;
                }
                let c = alphabet.char_of(a as Symbol).unwrap_or('?');
                match edges.iter_mut().find(|e| e.0 == t) {
                    Some(e) => e.1.push(c),
                    None => edges.push((t, vec![c])),
                }
            }
            for (t, cs) in edges {
                let label: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", label.join(","));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // (ab)+ over {a, b}: 0 -a-> 1 -b-> 2 -a-> 1, everything else to sink 3.
    fn ab_plus() -> Dfa {
        Dfa::new(2, 0, vec![1, 3, 3, 2, 1, 3, 3, 3], vec![false, false, true, false]).unwrap()
    }

    fn a_star() -> Dfa {
        Dfa::new(2, 0, vec![0, 1, 1, 1], vec![true, false]).unwrap()
    }

    #[test]
    fn run_examples() {
        assert!(a_star().run(&[]).unwrap());
        assert!(ab_plus().run(&[0, 1, 0, 1]).unwrap());
        assert!(!ab_plus().run(&[0, 1, 0]).unwrap());
        assert!(matches!(
            ab_plus().run(&[0, 2]),
            Err(Error::SymbolOutOfRange { index: 2, size: 2 })
        ));
    }

    #[test]
    fn constructor_validates() {
        assert!(Dfa::new(2, 0, vec![0, 0, 0], vec![true, false]).is_err());
        assert!(Dfa::new(2, 2, vec![0, 0, 0, 0], vec![true, false]).is_err());
        assert!(Dfa::new(2, 0, vec![0, 5, 0, 0], vec![true, false]).is_err());
        assert!(Dfa::new(1, 0, vec![], vec![]).is_err());
    }

    // Exhaustive check against a direct recursive definition of the extended
    // transition function.
    #[test]
    fn run_agrees_with_recursive_delta_star() {
        fn delta_star(d: &Dfa, q: StateId, x: &[Symbol]) -> StateId {
            match x.split_first() {
                None => q,
                Some((&a, rest)) => delta_star(d, d.next(q, a), rest),
            }
        }
        for d in [ab_plus(), a_star(), ab_plus().complement()] {
            for len in 0..=8 {
                for bits in 0..(1u32 << len) {
                    let x: Vec<Symbol> = (0..len).map(|i| ((bits >> i) & 1) as Symbol).collect();
                    let expected = d.is_final(delta_star(&d, d.start(), &x));
                    assert_eq!(d.run(&x).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn minimize_merges_equivalent_states() {
        // Two copies of the a* acceptor glued together.
        let d = Dfa::new(2, 0, vec![2, 1, 1, 1, 0, 3, 3, 3], vec![true, false, true, false]).unwrap();
        let m = d.minimize();
        assert_eq!(m.num_states(), 2);
        assert_eq!(m, a_star().minimize());
        assert!(m.equivalent(&d).unwrap());
    }

    #[test]
    fn minimal_ab_plus_has_three_live_states() {
        let m = ab_plus().minimize();
        assert_eq!(m.live_states(), 3);
        assert_eq!(m.num_states(), 4);
    }

    #[test]
    fn inclusion_and_equivalence() {
        let ab = ab_plus();
        let all = Dfa::universal(2);
        assert!(ab.is_subset_of(&all).unwrap());
        assert!(!all.is_subset_of(&ab).unwrap());
        assert_eq!(ab.distinguishing_word(&all).unwrap(), Some(PStr::empty()));
        assert!(Dfa::empty_language(2).is_empty());
        assert!(!ab.is_empty());
        assert!(ab.product(&Dfa::universal(3), |a, _| a).is_err());
    }

    #[test]
    fn length_window() {
        let ab = ab_plus();
        assert!(ab.accepts_length_in(2, 2));
        assert!(!ab.accepts_length_in(3, 3));
        assert!(ab.accepts_length_in(3, 4));
        assert!(!ab.accepts_length_in(0, 1));
    }

    // Pumping: any accepted word of length >= |Q| has a loop within its
    // first |Q| symbols, and pumping that loop stays in the language.
    #[test]
    fn accepted_witnesses_pump() {
        let d = ab_plus();
        let p = d.pumping_bound();
        for len in p..p + 6 {
            for bits in 0..(1u32 << len) {
                let x: Vec<Symbol> = (0..len).map(|i| ((bits >> i) & 1) as Symbol).collect();
                if !d.accepts(&x) {
                    continue;
                }
                let mut seen = HashMap::new();
                let mut q = d.start();
                let mut split = None;
                for (i, &c) in x.iter().enumerate().take(p + 1) {
                    if let Some(&j) = seen.get(&q) {
                        split = Some((j, i));
                        break;
                    }
                    seen.insert(q, i);
                    q = d.next(q, c);
                }
                let (u_end, v_end) = split.expect("a state repeats within |Q| steps");
                assert!(v_end <= p && v_end > u_end);
                let (u, v, w) = (&x[..u_end], &x[u_end..v_end], &x[v_end..]);
                for i in 0..4 {
                    let mut y = u.to_vec();
                    (0..i).for_each(|_| y.extend_from_slice(v));
                    y.extend_from_slice(w);
                    assert!(d.accepts(&y));
                }
            }
        }
    }
}
