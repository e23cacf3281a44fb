//! Clustering strings by their positive-example languages.
//!
//! Two routes lead from a corpus to a set of clusters, each labeled with a
//! pattern that matches every member:
//!
//! * compression: a dictionary coder ([`compress::DictCoder`]) defines the
//!   normalized compression distance ([`ncd`]), which feeds agglomerative
//!   clustering ([`cluster`]);
//! * structure: each string is rewritten as nested tandem repeats
//!   ([`tandem::decompose`]) and strings sharing a shape are grouped.
//!
//! Patterns ([`pattern::PatternExpr`]) compile to minimal DFAs ([`dfa`]) for
//! membership, inclusion, and equivalence checks.

pub mod alphabet;
pub mod cluster;
pub mod compress;
pub mod corpus;
pub mod dfa;
pub mod error;
pub mod ncd;
pub mod pattern;
pub mod pipeline;
pub mod tandem;

pub use alphabet::{canonical_relabel, Alphabet, PStr, Relabeling, Symbol};
pub use cluster::{agglomerate, cut_k, cut_threshold, Clustering, Dendrogram, Linkage, Merge};
pub use compress::{CodeLength, Compressor, DictCoder};
pub use corpus::Corpus;
pub use dfa::Dfa;
pub use error::{Error, Result};
pub use ncd::{distance_matrix, ncd, DistMatrix};
pub use pattern::{Bound, PatternExpr};
pub use tandem::{decompose, find_runs, Run};
