//! Agglomerative hierarchical clustering and dendrogram cuts.
//!
//! Node numbering follows the usual convention: leaves are `0..n`, and the
//! node created by the `i`-th merge is `n + i`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncd::DistMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linkage {
    Single,
    Complete,
    #[default]
    Average,
}

impl FromStr for Linkage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(Linkage::Single),
            "complete" => Ok(Linkage::Complete),
            "average" => Ok(Linkage::Average),
            other => Err(Error::argument(format!("unknown linkage `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    leaves: usize,
    merges: Vec<Merge>,
}

impl Dendrogram {
    pub fn from_merges(leaves: usize, merges: Vec<Merge>) -> Result<Self> {
        if leaves == 0 || merges.len() + 1 != leaves {
            return Err(Error::argument(format!(
                "{} merges cannot join {leaves} leaves",
                merges.len()
            )));
        }
        let mut used = vec![false; 2 * leaves - 1];
        for (i, m) in merges.iter().enumerate() {
            let node = leaves + i;
            for child in [m.left, m.right] {
                if child >= node || std::mem::replace(&mut used[child], true) {
                    return Err(Error::argument(format!(
                        "merge {i} reuses or forward-references node {child}"
                    )));
                }
            }
        }
        Ok(Dendrogram { leaves, merges })
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn root(&self) -> usize {
        2 * self.leaves - 2
    }

    /// Height of a node; leaves sit at 0.
    pub fn height(&self, node: usize) -> f64 {
        if node < self.leaves {
            0.0
        } else {
            self.merges[node - self.leaves].height
        }
    }

    /// Leaf indices under `node`, ascending.
    pub fn members(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            if v < self.leaves {
                out.push(v);
            } else {
                let m = &self.merges[v - self.leaves];
                stack.push(m.left);
                stack.push(m.right);
            }
        }
        out.sort_unstable();
        out
    }

    /// Newick text; leaves are named by index and branch lengths are the
    /// height differences between parent and child.
    pub fn to_newick(&self) -> String {
        enum Step {
            Enter(usize, Option<f64>),
            Text(&'static str),
            Close(usize, Option<f64>),
        }
        let mut out = String::new();
        let mut stack = vec![Step::Enter(self.root(), None)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Enter(node, parent) if node < self.leaves => {
                    let _ = write!(out, "{node}");
                    self.write_branch(node, parent, &mut out);
                }
                Step::Enter(node, parent) => {
                    let m = self.merges[node - self.leaves];
                    out.push('(');
                    stack.push(Step::Close(node, parent));
                    stack.push(Step::Enter(m.right, Some(m.height)));
                    stack.push(Step::Text(","));
                    stack.push(Step::Enter(m.left, Some(m.height)));
                }
                Step::Text(t) => out.push_str(t),
                Step::Close(node, parent) => {
                    out.push(')');
                    self.write_branch(node, parent, &mut out);
                }
            }
        }
        out.push_str(";\n");
        out
    }

    fn write_branch(&self, node: usize, parent_height: Option<f64>, out: &mut String) {
        if let Some(ph) = parent_height {
            let _ = write!(out, ":{}", ph - self.height(node));
        }
    }
}

/// Standard agglomerative clustering. At each step the pair of active
/// clusters with the smallest linkage value is merged. Ties are resolved by
/// the smallest `(min, max)` pair of cluster representatives, where a
/// cluster's representative is its smallest leaf index.
pub fn agglomerate(m: &DistMatrix, linkage: Linkage) -> Dendrogram {
    let n = m.len();
    let mut dist: Vec<f64> = m.rows().flatten().copied().collect();
    let mut size = vec![1usize; n];
    let mut node = (0..n).collect::<Vec<_>>();
    // slots are indexed by representative (smallest leaf)
    let mut active = vec![true; n];
    let mut merges = Vec::with_capacity(n.saturating_sub(1));

    for step in 0..n.saturating_sub(1) {
        let mut best: Option<(f64, usize, usize)> = None;
        for i in (0..n).filter(|&i| active[i]) {
            for j in ((i + 1)..n).filter(|&j| active[j]) {
                let d = dist[i * n + j];
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
        let (height, i, j) = best.expect("at least two active clusters");
        let (a, b) = (node[i], node[j]);
        merges.push(Merge {
            left: a.min(b),
            right: a.max(b),
            height,
        });
        for k in (0..n).filter(|&k| active[k] && k != i && k != j) {
            let (dik, djk) = (dist[i * n + k], dist[j * n + k]);
            let d = match linkage {
                Linkage::Single => dik.min(djk),
                Linkage::Complete => dik.max(djk),
                Linkage::Average => (size[i] as f64 * dik + size[j] as f64 * djk) / (size[i] + size[j]) as f64,
            };
            dist[i * n + k] = d;
            dist[k * n + i] = d;
        }
        active[j] = false;
        size[i] += size[j];
        node[i] = n + step;
    }
    Dendrogram { leaves: n, merges }
}

/// A flat partition of `0..n`. Cluster ids are numbered in order of each
/// cluster's smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clustering {
    assignment: Vec<usize>,
    k: usize,
}

impl Clustering {
    /// Renumbers arbitrary group labels into canonical ids.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Clustering {
            assignment,
            k: map.len(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn cluster_of(&self, i: usize) -> usize {
        self.assignment[i]
    }

    /// Members of each cluster, ascending.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.k];
        for (i, &c) in self.assignment.iter().enumerate() {
            groups[c].push(i);
        }
        groups
    }

    /// True if every cluster of `self` lies inside one cluster of `coarser`.
    pub fn refines(&self, coarser: &Clustering) -> bool {
        if self.len() != coarser.len() {
            return false;
        }
        let mut target = vec![None; self.k];
        self.assignment
            .iter()
            .zip(&coarser.assignment)
            .all(|(&f, &c)| *target[f].get_or_insert(c) == c)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn flatten(d: &Dendrogram, apply: impl Fn(usize, &Merge) -> bool) -> Clustering {
    let n = d.leaves;
    let mut uf = UnionFind::new(2 * n - 1);
    for (i, m) in d.merges.iter().enumerate() {
        if apply(i, m) {
            uf.union(m.left, n + i);
            uf.union(m.right, n + i);
        }
    }
    let labels: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    Clustering::from_labels(&labels)
}

/// Clusters are the maximal subtrees whose root height is below `t`.
pub fn cut_threshold(d: &Dendrogram, t: f64) -> Result<Clustering> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::argument(format!("threshold {t} must be >= 0")));
    }
    Ok(flatten(d, |_, m| m.height < t))
}

/// Undoes the last `k - 1` merges.
pub fn cut_k(d: &Dendrogram, k: usize) -> Result<Clustering> {
    let n = d.leaves;
    if k == 0 || k > n {
        return Err(Error::argument(format!("k = {k} is outside 1..={n}")));
    }
    Ok(flatten(d, |i, _| i < n - k))
}
