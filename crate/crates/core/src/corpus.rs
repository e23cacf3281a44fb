//! Corpus files: one string per line, optionally `label<TAB>string`.

use std::fmt::Write as _;
use std::path::Path;

use crate::alphabet::{Alphabet, PStr};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub strings: Vec<PStr>,
    /// Present only when every line carried a label.
    pub labels: Option<Vec<String>>,
}

impl Corpus {
    pub fn unlabeled(strings: Vec<PStr>) -> Self {
        Corpus { strings, labels: None }
    }

    pub fn labeled(strings: Vec<PStr>, labels: Vec<String>) -> Result<Self> {
        if strings.len() != labels.len() {
            return Err(Error::argument(format!(
                "{} strings but {} labels",
                strings.len(),
                labels.len()
            )));
        }
        Ok(Corpus {
            strings,
            labels: Some(labels),
        })
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// Parses corpus text. Blank lines are skipped. Labeled and unlabeled
    /// lines may not be mixed.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut strings = Vec::new();
        let mut labels = Vec::new();
        let mut labeled: Option<bool> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.trim().is_empty() {
                continue;
            }
            let (label, body) = match line.split_once('\t') {
                Some((l, s)) => (Some(l), s),
                None => (None, line),
            };
            match (labeled, label.is_some()) {
                (None, has) => labeled = Some(has),
                (Some(a), b) if a != b => {
                    return Err(Error::Format {
                        line: lineno + 1,
                        message: "mixes labeled and unlabeled lines".into(),
                    })
                }
                _ => {}
            }
            let s = alphabet.parse(body).map_err(|e| Error::Format {
                line: lineno + 1,
                message: e.to_string(),
            })?;
            strings.push(s);
            if let Some(l) = label {
                labels.push(l.to_string());
            }
        }
        Ok(Corpus {
            strings,
            labels: labeled.unwrap_or(false).then_some(labels),
        })
    }

    pub fn read(path: impl AsRef<Path>, alphabet: &Alphabet) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, alphabet)
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (i, s) in self.strings.iter().enumerate() {
            if let Some(labels) = &self.labels {
                let _ = write!(out, "{}\t", labels[i]);
            }
            out.push_str(&alphabet.render(s));
            out.push('\n');
        }
        out
    }
}

/// Reads a label file: one label per line, or a labeled corpus, in which
/// case the text before the tab is taken. Blank lines are skipped.
pub fn parse_labels(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_once('\t').map_or(l, |(label, _)| label).to_string())
        .collect()
}
