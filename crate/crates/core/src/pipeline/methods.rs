use std::collections::HashMap;

use rayon::prelude::*;

use super::report::{Cluster, ClusterReport, DendrogramSummary, Method, Parameters};
use crate::alphabet::{canonical_relabel, Alphabet, PStr};
use crate::cluster::{agglomerate, cut_k, cut_threshold, Clustering, Dendrogram, Linkage};
use crate::compress::DictCoder;
use crate::error::{Error, Result};
use crate::ncd::{distance_matrix, DistMatrix};
use crate::pattern::{canonicalize, infer_from_decompositions, infer_language, skeleton, Skeleton};
use crate::tandem::{decompose, DEFAULT_MAX_DEPTH};

/// Where to cut the dendrogram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cut {
    /// Merges strictly below this height.
    Threshold(f64),
    /// Exactly this many clusters.
    K(usize),
}

#[derive(Clone, Debug)]
pub struct NcdOptions {
    pub linkage: Linkage,
    pub cut: Cut,
    /// Compress canonically relabeled strings, so that `abab` and `baba`
    /// are indistinguishable.
    pub relabel: bool,
}

/// Report plus the intermediate artifacts of the compression method.
#[derive(Clone, Debug)]
pub struct NcdOutcome {
    pub report: ClusterReport,
    pub matrix: DistMatrix,
    pub dendrogram: Dendrogram,
}

fn non_empty(corpus: &[PStr]) -> Result<()> {
    if corpus.is_empty() {
        return Err(Error::argument("corpus is empty"));
    }
    Ok(())
}

/// NCD matrix of `corpus` under the dictionary coder for `alphabet`.
pub fn ncd_matrix(corpus: &[PStr], alphabet: &Alphabet, relabel: bool) -> Result<DistMatrix> {
    let coder = DictCoder::new(alphabet.len());
    if relabel {
        let relabeled = corpus
            .iter()
            .map(|x| canonical_relabel(x, alphabet).map(|(y, _)| y))
            .collect::<Result<Vec<_>>>()?;
        distance_matrix(&coder, &relabeled)
    } else {
        distance_matrix(&coder, corpus)
    }
}

fn infer_clusters(corpus: &[PStr], clustering: &Clustering, alphabet: &Alphabet) -> Vec<Cluster> {
    clustering
        .groups()
        .into_par_iter()
        .map(|members| {
            let strings: Vec<PStr> = members.iter().map(|&i| corpus[i].clone()).collect();
            let pattern = infer_language(&strings, alphabet.len()).to_text(alphabet);
            Cluster { members, pattern }
        })
        .collect()
}

/// Compression route: NCD matrix, agglomerative clustering, cut, and one
/// inferred pattern per cluster.
pub fn run_ncd_method(corpus: &[PStr], alphabet: &Alphabet, opts: &NcdOptions) -> Result<NcdOutcome> {
    non_empty(corpus)?;
    let matrix = ncd_matrix(corpus, alphabet, opts.relabel)?;
    let dendrogram = agglomerate(&matrix, opts.linkage);
    let clustering = match opts.cut {
        Cut::Threshold(t) => cut_threshold(&dendrogram, t)?,
        Cut::K(k) => cut_k(&dendrogram, k)?,
    };
    let (threshold, k) = match opts.cut {
        Cut::Threshold(t) => (Some(t), None),
        Cut::K(k) => (None, Some(k)),
    };
    let report = ClusterReport {
        method: Method::Ncd,
        parameters: Parameters {
            alphabet: alphabet.to_string(),
            linkage: Some(opts.linkage),
            threshold,
            k,
            relabel: opts.relabel,
            max_depth: DEFAULT_MAX_DEPTH,
        },
        n: corpus.len(),
        clusters: infer_clusters(corpus, &clustering, alphabet),
        purity: None,
        dendrogram: Some(DendrogramSummary {
            merges: dendrogram.merges().to_vec(),
            newick_path: None,
        }),
    };
    Ok(NcdOutcome {
        report,
        matrix,
        dendrogram,
    })
}

/// Tandem decomposition of every string, in input order.
pub fn decompose_corpus(corpus: &[PStr], max_depth: usize) -> Vec<crate::pattern::PatternExpr> {
    corpus.par_iter().map(|x| decompose(x, max_depth)).collect()
}

/// Structural route: strings whose canonical decompositions have the same
/// skeleton form one cluster.
pub fn run_tandem_method(corpus: &[PStr], alphabet: &Alphabet, max_depth: usize) -> Result<ClusterReport> {
    non_empty(corpus)?;
    let decomps: Vec<_> = decompose_corpus(corpus, max_depth)
        .into_par_iter()
        .map(|p| canonicalize(&p))
        .collect();
    let mut index: HashMap<Skeleton, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, d) in decomps.iter().enumerate() {
        let next = groups.len();
        let g = *index.entry(skeleton(d)).or_insert(next);
        if g == next {
            groups.push(Vec::new());
        }
        groups[g].push(i);
    }
    let clusters = groups
        .into_par_iter()
        .map(|members| {
            let strings: Vec<PStr> = members.iter().map(|&i| corpus[i].clone()).collect();
            let ds: Vec<_> = members.iter().map(|&i| decomps[i].clone()).collect();
            let pattern = infer_from_decompositions(&strings, &ds, alphabet.len()).to_text(alphabet);
            Cluster { members, pattern }
        })
        .collect();
    Ok(ClusterReport {
        method: Method::Tandem,
        parameters: Parameters {
            alphabet: alphabet.to_string(),
            max_depth,
            ..Parameters::default()
        },
        n: corpus.len(),
        clusters,
        purity: None,
        dendrogram: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(texts: &[&str]) -> (Vec<PStr>, Alphabet) {
        let ab = Alphabet::first_letters(3).unwrap();
        (texts.iter().map(|t| ab.parse(t).unwrap()).collect(), ab)
    }

    fn summary(r: &ClusterReport) -> Vec<(Vec<usize>, String)> {
        r.clusters
            .iter()
            .map(|c| (c.members.clone(), c.pattern.clone()))
            .collect()
    }

    #[test]
    fn tandem_groups_by_skeleton() {
        let (xs, ab) = corpus(&["abab", "abababab", "aaa", "aaaaa"]);
        let r = run_tandem_method(&xs, &ab, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(
            summary(&r),
            vec![(vec![0, 1], "(ab)+".to_string()), (vec![2, 3], "a+".to_string())]
        );

        let (xs, ab) = corpus(&["abc", "acb"]);
        let r = run_tandem_method(&xs, &ab, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(
            summary(&r),
            vec![(vec![0], "abc".to_string()), (vec![1], "acb".to_string())]
        );
    }

    #[test]
    fn single_string_keeps_its_decomposition() {
        let (xs, ab) = corpus(&["abcbcbcbca"]);
        let opts = NcdOptions {
            linkage: Linkage::Average,
            cut: Cut::K(1),
            relabel: false,
        };
        let out = run_ncd_method(&xs, &ab, &opts).unwrap();
        assert_eq!(summary(&out.report), vec![(vec![0], "a(bc){4}a".to_string())]);
        assert!(run_ncd_method(&[], &ab, &opts).is_err());
    }

    #[test]
    fn relabeling_merges_renamed_strings() {
        let (xs, ab) = corpus(&["abababab", "babababa"]);
        let plain = ncd_matrix(&xs, &ab, false).unwrap();
        let relabeled = ncd_matrix(&xs, &ab, true).unwrap();
        assert!(relabeled.get(0, 1) < plain.get(0, 1));
    }
}
