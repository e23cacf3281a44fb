//! Maximal repetitions (runs) and recursive tandem-repeat decomposition.
//!
//! [`find_runs`] is a Main–Lorentz style divide and conquer: runs that cross
//! the midpoint of a segment are located with Z-arrays of the two halves,
//! so each level costs linear time and the whole search `O(n log n)`.

use serde::{Deserialize, Serialize};

use crate::alphabet::{PStr, Symbol};
use crate::error::{Error, Result};
use crate::pattern::{Atom, Bound, PatternExpr};

/// Longest input accepted by [`brute_force_runs`].
pub const ORACLE_MAX_LEN: usize = 64;

pub const DEFAULT_MAX_DEPTH: usize = 8;

/// A maximal repetition `x[start..end)` with smallest period `|root|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Run {
    pub start: usize,
    pub end: usize,
    pub root: PStr,
    /// Whole copies of the root starting at `start`; at least 2.
    pub exponent: usize,
}

impl Run {
    fn new(x: &[Symbol], start: usize, end: usize, period: usize) -> Self {
        Run {
            start,
            end,
            root: PStr::from(&x[start..start + period]),
            exponent: (end - start) / period,
        }
    }

    pub fn period(&self) -> usize {
        self.root.len()
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    /// Symbols covered by whole copies of the root.
    pub fn covered(&self) -> usize {
        self.period() * self.exponent
    }
}

/// Length of the primitive root of `w` (`w = r^k` with `r` primitive).
pub fn primitive_root_len(w: &[Symbol]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    // failure function: smallest period is n - border
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let period = n - fail[n - 1];
    if n.is_multiple_of(period) {
        period
    } else {
        n
    }
}

pub fn is_primitive(w: &[Symbol]) -> bool {
    !w.is_empty() && primitive_root_len(w) == w.len()
}

fn z_array(s: &[u32]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

const SEP: u32 = u32::MAX;

/// All maximal repetitions of `x` with primitive roots, sorted by
/// `(start, period)`.
pub fn find_runs(x: &[Symbol]) -> Vec<Run> {
    let mut found: Vec<(usize, usize, usize)> = Vec::new();
    let s: Vec<u32> = x.iter().map(|&c| u32::from(c)).collect();
    crossing_runs(&s, 0, s.len(), &mut found);
    // An interval with a non-primitive period is also reported with its
    // smallest period; keep only that one.
    found.sort_unstable();
    found.dedup_by_key(|r| (r.0, r.1));
    let mut runs: Vec<Run> = found.into_iter().map(|(a, b, p)| Run::new(x, a, b, p)).collect();
    runs.sort_by_key(|r| (r.start, r.period()));
    runs
}

fn crossing_runs(s: &[u32], l: usize, r: usize, out: &mut Vec<(usize, usize, usize)>) {
    if r - l < 2 {
        return;
    }
    let m = (l + r) / 2;
    crossing_runs(s, l, m, out);
    crossing_runs(s, m, r, out);

    let (u, v) = (&s[l..m], &s[m..r]);
    let (nu, nv) = (u.len(), v.len());
    let u_rev: Vec<u32> = u.iter().rev().copied().collect();
    // z_u_rev[p]: common suffix of u and u[..nu-p]
    let z_u_rev = z_array(&u_rev);
    // common suffix of u and s[l..m+p)
    let z_u_rev_whole = {
        let mut t = u_rev.clone();
        t.push(SEP);
        t.extend(s[l..r].iter().rev());
        z_array(&t)
    };
    // z_v[p]: common prefix of v and v[p..]
    let z_v = z_array(v);
    // common prefix of v and s[j..r)
    let z_v_whole = {
        let mut t = v.to_vec();
        t.push(SEP);
        t.extend_from_slice(&s[l..r]);
        z_array(&t)
    };

    let maximal = |a: usize, b: usize, p: usize| -> bool {
        (a > l || a == 0 || s[a - 1] != s[a - 1 + p]) && (b < r || b == s.len() || s[b] != s[b - p])
    };

    for p in 1..=(r - l) / 2 {
        // Case 1: the run's comparison window s[i] == s[i+p] covers i = m - p.
        if p <= nu {
            let q = m - p;
            let back = if p < nu { z_u_rev[p] } else { 0 };
            let fwd = z_v_whole[nv + 1 + (q - l)];
            let (a, e) = (q - back, q + fwd);
            if e - a >= p {
                let b = e + p;
                if maximal(a, b, p) {
                    out.push((a, b, p));
                }
            }
        }
        // Case 2: the window covers i = m but not m - p.
        if p < nv {
            let fwd = z_v[p];
            if fwd > 0 {
                let back = z_u_rev_whole[nu + 1 + (r - m - p)];
                let (a, e) = (m - back, m + fwd);
                if a < m && a + p > m && e - a >= p {
                    let b = e + p;
                    if maximal(a, b, p) {
                        out.push((a, b, p));
                    }
                }
            }
        }
    }
}

/// Reference enumeration of maximal primitively rooted repetitions by
/// checking every `(start, period)` pair. Limited to
/// [`ORACLE_MAX_LEN`] symbols.
pub fn brute_force_runs(x: &[Symbol]) -> Result<Vec<Run>> {
    let n = x.len();
    if n > ORACLE_MAX_LEN {
        return Err(Error::argument(format!(
            "oracle input of length {n} exceeds {ORACLE_MAX_LEN}"
        )));
    }
    let is_primitive_naive =
        |w: &[Symbol]| (1..w.len()).all(|d| !w.len().is_multiple_of(d) || (0..w.len()).any(|i| w[i] != w[i % d]));
    let mut runs = Vec::new();
    for start in 0..n {
        for period in 1..=(n - start) / 2 {
            if start > 0 && x[start - 1] == x[start - 1 + period] {
                continue;
            }
            let mut end = start + period;
            while end < n && x[end] == x[end - period] {
                end += 1;
            }
            if end - start < 2 * period || !is_primitive_naive(&x[start..start + period]) {
                continue;
            }
            runs.push(Run::new(x, start, end, period));
        }
    }
    Ok(runs)
}

/// Rewrites `x` as nested tandem repeats.
///
/// The run covering the most symbols with whole copies of its root is
/// chosen (ties: smaller start, then shorter root); `x` becomes
/// `u (root){exponent} w`, and `u`, `w`, and the root are decomposed in
/// turn. `max_depth` bounds the nesting of repeats. The result, unrolled,
/// is exactly `x`.
pub fn decompose(x: &[Symbol], max_depth: usize) -> PatternExpr {
    let mut atoms = Vec::new();
    decompose_into(x, max_depth, &mut atoms);
    PatternExpr::Seq(atoms)
}

fn decompose_into(x: &[Symbol], depth: usize, out: &mut Vec<Atom>) {
    if depth == 0 {
        out.extend(x.iter().map(|&s| Atom::Lit(s)));
        return;
    }
    let best = find_runs(x).into_iter().max_by(|a, b| {
        a.covered()
            .cmp(&b.covered())
            .then(b.start.cmp(&a.start))
            .then(b.period().cmp(&a.period()))
    });
    match best {
        None => out.extend(x.iter().map(|&s| Atom::Lit(s))),
        Some(run) => {
            let stop = run.start + run.covered();
            decompose_into(&x[..run.start], depth, out);
            let body = decompose(&run.root, depth - 1);
            out.push(Atom::rep(body, Bound::Exact(run.exponent as u32)));
            decompose_into(&x[stop..], depth, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn sym(text: &str) -> Vec<Symbol> {
        Alphabet::lowercase().parse(text).unwrap().into_inner()
    }

    fn runs_of(text: &str) -> Vec<(usize, usize, String)> {
        let ab = Alphabet::lowercase();
        find_runs(&sym(text))
            .into_iter()
            .map(|r| (r.start, r.end, ab.render(&r.root)))
            .collect()
    }

    #[test]
    fn small_run_lists() {
        assert_eq!(runs_of("aa"), vec![(0, 2, "a".into())]);
        assert!(runs_of("abc").is_empty());
        assert_eq!(runs_of("aaaa"), vec![(0, 4, "a".into())]);
        assert_eq!(runs_of("abab"), vec![(0, 4, "ab".into())]);
        assert_eq!(
            runs_of("aabaab"),
            vec![(0, 2, "a".into()), (0, 6, "aab".into()), (3, 5, "a".into())]
        );
        assert_eq!(
            runs_of("abaabaab"),
            vec![(0, 8, "aba".into()), (2, 4, "a".into()), (5, 7, "a".into())]
        );
        assert!(runs_of("").is_empty());
        assert!(runs_of("a").is_empty());
    }

    #[test]
    fn oracle_agrees_on_examples() {
        for t in [
            "aa",
            "abc",
            "aaaa",
            "abab",
            "aabaab",
            "abaabaab",
            "abcbcbcbcd",
            "aaabcbcaaabcbcaaabcbc",
        ] {
            let x = sym(t);
            assert_eq!(find_runs(&x), brute_force_runs(&x).unwrap(), "{t}");
        }
    }

    #[test]
    fn oracle_rejects_long_input() {
        assert!(brute_force_runs(&[0; ORACLE_MAX_LEN + 1]).is_err());
    }

    #[test]
    fn primitivity() {
        assert_eq!(primitive_root_len(&sym("abab")), 2);
        assert_eq!(primitive_root_len(&sym("aba")), 3);
        assert_eq!(primitive_root_len(&sym("aaaa")), 1);
        assert!(is_primitive(&sym("aab")));
        assert!(!is_primitive(&sym("")));
    }

    fn dec(text: &str) -> String {
        let ab = Alphabet::lowercase();
        decompose(&sym(text), DEFAULT_MAX_DEPTH).to_text(&ab)
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(dec("abcbcbcbcd"), "a(bc){4}d");
        assert_eq!(dec("aaabcbcaaabcbcaaabcbc"), "(a{3}(bc){2}){3}");
        assert_eq!(dec("abc"), "abc");
        assert_eq!(dec("abaabaab"), "(aba){2}ab");
        assert_eq!(dec(""), "EPS");
    }

    #[test]
    fn depth_limits_nesting() {
        let ab = Alphabet::lowercase();
        let x = sym("aaabcbcaaabcbcaaabcbc");
        assert_eq!(decompose(&x, 1).to_text(&ab), "(aaabcbc){3}");
        assert_eq!(decompose(&x, 0).to_text(&ab), "aaabcbcaaabcbcaaabcbc");
    }

    #[test]
    fn decomposition_unrolls_to_input() {
        for t in [
            "abaabaab",
            "aabbbaabbbaabbb",
            "aaabbaaabbaabbbaabbb",
            "abcdebcdebcdea",
            "xyzzyx",
        ] {
            let x = sym(t);
            assert_eq!(
                decompose(&x, DEFAULT_MAX_DEPTH).unroll().unwrap().into_inner(),
                x,
                "{t}"
            );
        }
    }
}
