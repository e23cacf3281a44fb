//! Canonical representatives among equivalent pattern spellings.

use super::{Atom, Bound, PatternExpr};
use crate::alphabet::Symbol;
use crate::tandem::primitive_root_len;

/// Rewrites `p` into a canonical spelling of the same language:
///
/// * repeat bodies are canonicalized recursively; repeats of an exact
///   power under an exact bound are flattened, so `((ab){2}){3}` becomes
///   `(ab){6}` and `(abab){2}` becomes `(ab){4}`;
/// * empty bodies and `{0..0}` repeats vanish, `{1..1}` repeats are inlined;
/// * a literal just before a literal-bodied repeat is absorbed by rotating
///   the body when it equals the body's last symbol, which moves the repeat
///   as far left as possible: `ab(aab){>=2}` becomes `(aba){>=2}ab`;
/// * adjacent repeats of the same body are merged.
pub fn canonicalize(p: &PatternExpr) -> PatternExpr {
    let atoms = match p {
        PatternExpr::Universal => return PatternExpr::Universal,
        PatternExpr::Seq(atoms) => atoms,
    };
    let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
    for atom in atoms {
        match atom {
            Atom::Lit(s) => out.push(Atom::Lit(*s)),
            Atom::Rep { body, bound } => push_rep(&mut out, canonicalize(body), *bound),
        }
    }
    loop {
        let rotated = rotate_left(&mut out);
        let merged = merge_adjacent(&mut out);
        if !rotated && !merged {
            break;
        }
    }
    PatternExpr::Seq(out)
}

fn push_rep(out: &mut Vec<Atom>, body: PatternExpr, bound: Bound) {
    if body.is_epsilon() || bound.upper() == Some(0) {
        return;
    }
    if bound == Bound::Range(1, 1) {
        match body {
            PatternExpr::Seq(atoms) => out.extend(atoms),
            PatternExpr::Universal => out.push(Atom::rep(body, bound)),
        }
        return;
    }
    if let Bound::Exact(n) = bound {
        if let [Atom::Rep {
            body: inner,
            bound: Bound::Exact(m),
        }] = body.atoms()
        {
            out.push(Atom::rep(inner.clone(), Bound::Exact(n * m)));
            return;
        }
        if let Some(lit) = body.as_literal() {
            let root = primitive_root_len(&lit);
            if root < lit.len() {
                let times = (lit.len() / root) as u32;
                out.push(Atom::rep(PatternExpr::literal(&lit[..root]), Bound::Exact(n * times)));
                return;
            }
        }
    }
    out.push(Atom::rep(body, bound));
}

/// Moves literal-bodied repeats left past literals equal to the body's last
/// symbol: `c (B'c)^i` is `(cB')^i c`.
fn rotate_left(atoms: &mut [Atom]) -> bool {
    let mut changed = false;
    let mut i = 1;
    while i < atoms.len() {
        let rotated = match (&atoms[i - 1], &atoms[i]) {
            (Atom::Lit(c), Atom::Rep { body, bound }) => {
                body.as_literal().filter(|lit| lit.last() == Some(c)).map(|lit| {
                    let mut r: Vec<Symbol> = Vec::with_capacity(lit.len());
                    r.push(*c);
                    r.extend_from_slice(&lit[..lit.len() - 1]);
                    (Atom::rep(PatternExpr::literal(&r), *bound), Atom::Lit(*c))
                })
            }
            _ => None,
        };
        match rotated {
            Some((rep, lit)) => {
                atoms[i - 1] = rep;
                atoms[i] = lit;
                changed = true;
                i = i.saturating_sub(1).max(1);
            }
            None => i += 1,
        }
    }
    changed
}

fn merge_adjacent(atoms: &mut Vec<Atom>) -> bool {
    let mut changed = false;
    let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
    for atom in atoms.drain(..) {
        if let (
            Some(Atom::Rep {
                body: prev_body,
                bound: prev_bound,
            }),
            Atom::Rep { body, bound },
        ) = (out.last_mut(), &atom)
        {
            if prev_body == body && !body.is_universal() {
                *prev_bound = prev_bound.sum(*bound);
                changed = true;
                continue;
            }
        }
        out.push(atom);
    }
    *atoms = out;
    changed
}
