//! End-to-end methods, corpus generation, and evaluation.

mod generate;
mod methods;
mod report;

pub use generate::{generate, CorpusSpec, Language};
pub use methods::{decompose_corpus, ncd_matrix, run_ncd_method, run_tandem_method, Cut, NcdOptions, NcdOutcome};
pub use report::{purity, Cluster, ClusterReport, DendrogramSummary, Method, Parameters};
