//! Most-specific-parent lookup for named entities.
//!
//! A small curated table stands in for a full hypernym hierarchy. Anything
//! that answers [`HypernymProvider::get_msp`] can be plugged into the
//! translator instead.

use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

use crate::dl::is_valid_name;

const BUNDLED: &str = include_str!("../data/hypernyms.tsv");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read lexicon: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: duplicate lemma `{lemma}`")]
    DuplicateLemma { line: usize, lemma: String },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Bundled,
    External,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub lemma: String,
    pub msp: String,
    pub source: Source,
}

/// Result of a most-specific-parent query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Msp<'a> {
    Found(&'a str),
    NotFound,
}

pub trait HypernymProvider {
    fn get_msp(&self, lemma: &str) -> Msp<'_>;
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, LexiconEntry>,
}

impl Lexicon {
    pub fn parse(text: &str, source: Source) -> Result<Self, LexiconError> {
        let mut entries = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (lemma, msp) = line
                .split_once('\t')
                .ok_or_else(|| LexiconError::Malformed { line: n + 1, reason: "expected `lemma<TAB>parent`".into() })?;
            let (lemma, msp) = (lemma.trim(), msp.trim());
            if lemma.is_empty() || !is_valid_name(msp) {
                return Err(LexiconError::Malformed {
                    line: n + 1,
                    reason: format!("`{msp}` is not a concept identifier"),
                });
            }
            let entry = LexiconEntry { lemma: lemma.to_string(), msp: msp.to_string(), source };
            if entries.insert(lemma.to_string(), entry).is_some() {
                return Err(LexiconError::DuplicateLemma { line: n + 1, lemma: lemma.to_string() });
            }
        }
        Ok(Lexicon { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        Self::parse(&std::fs::read_to_string(path)?, Source::External)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED, Source::Bundled).expect("bundled lexicon is valid")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, lemma: &str) -> Option<&LexiconEntry> {
        self.entries.get(lemma)
    }
}

impl HypernymProvider for Lexicon {
    fn get_msp(&self, lemma: &str) -> Msp<'_> {
        match self.entries.get(lemma) {
            Some(e) => Msp::Found(&e.msp),
            None => Msp::NotFound,
        }
    }
}
