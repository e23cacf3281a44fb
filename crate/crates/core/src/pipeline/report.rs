use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::cluster::{Linkage, Merge};
use crate::error::{Error, Result};
use crate::pattern::PatternExpr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ncd,
    Tandem,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub alphabet: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linkage: Option<Linkage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default)]
    pub relabel: bool,
    pub max_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub members: Vec<usize>,
    pub pattern: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DendrogramSummary {
    pub merges: Vec<Merge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub newick_path: Option<String>,
}

/// Outcome of one clustering run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub method: Method,
    pub parameters: Parameters,
    /// Corpus size.
    pub n: usize,
    /// Ordered by smallest member.
    pub clusters: Vec<Cluster>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub purity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dendrogram: Option<DendrogramSummary>,
}

impl ClusterReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Parses a report and checks that its clusters partition `0..n`.
    pub fn from_json(text: &str) -> Result<Self> {
        let report: ClusterReport = serde_json::from_str(text)?;
        report.check_partition()?;
        Ok(report)
    }

    fn check_partition(&self) -> Result<()> {
        let mut seen = vec![false; self.n];
        for c in &self.clusters {
            if c.members.is_empty() {
                return Err(Error::Format {
                    line: 0,
                    message: "report contains an empty cluster".into(),
                });
            }
            for &i in &c.members {
                if i >= self.n || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Format {
                        line: 0,
                        message: format!("member {i} is out of range or listed twice"),
                    });
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Format {
                line: 0,
                message: "clusters do not cover the corpus".into(),
            });
        }
        Ok(())
    }

    pub fn patterns(&self) -> Result<Vec<PatternExpr>> {
        let alphabet = Alphabet::new(self.parameters.alphabet.chars())?;
        self.clusters
            .iter()
            .map(|c| PatternExpr::parse(&c.pattern, &alphabet))
            .collect()
    }

    /// Cluster index of every corpus item.
    pub fn assignment(&self) -> Vec<usize> {
        let mut a = vec![0; self.n];
        for (ci, c) in self.clusters.iter().enumerate() {
            for &i in &c.members {
                a[i] = ci;
            }
        }
        a
    }
}

/// Fraction of items carrying their cluster's majority label.
pub fn purity(report: &ClusterReport, labels: &[String]) -> Result<f64> {
    if labels.len() != report.n {
        return Err(Error::argument(format!(
            "{} labels for a corpus of {} strings",
            labels.len(),
            report.n
        )));
    }
    if report.n == 0 {
        return Ok(1.0);
    }
    let majority_total: usize = report
        .clusters
        .iter()
        .map(|c| {
            let mut counts: HashMap<&str, usize> = HashMap::new();
            for &i in &c.members {
                *counts.entry(labels[i].as_str()).or_default() += 1;
            }
            counts.into_values().max().unwrap_or(0)
        })
        .sum();
    Ok(majority_total as f64 / report.n as f64)
}
