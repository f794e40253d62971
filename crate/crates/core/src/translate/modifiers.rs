//! Measurable modifiers and superlative detection.

use std::collections::HashMap;
use std::path::Path;

use crate::dl::{is_valid_name, Optimum};
use crate::hypernym::LexiconError;

const BUNDLED: &str = include_str!("../../data/modifiers.tsv");

/// Words ending in "-est" that are not superlatives.
const NOT_SUPERLATIVE: [&str; 16] = [
    "forest",
    "interest",
    "honest",
    "modest",
    "request",
    "contest",
    "harvest",
    "protest",
    "conquest",
    "suggest",
    "manifest",
    "arrest",
    "digest",
    "invest",
    "earnest",
    "southwest",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurableModifier {
    pub lemma: String,
    pub attribute: String,
    pub polarity: Polarity,
}

impl MeasurableModifier {
    pub fn optimum(&self) -> Optimum {
        match self.polarity {
            Polarity::Positive => Optimum::Max,
            Polarity::Negative => Optimum::Min,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ModifierLexicon {
    entries: HashMap<String, MeasurableModifier>,
}

/// A superlative found among a slot's modifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superlative {
    /// Positions of the consumed modifier tokens ("most populous" consumes two).
    pub consumed: Vec<usize>,
    /// `None` when the base adjective is not a measurable modifier.
    pub measure: Option<(String, Optimum)>,
}

impl ModifierLexicon {
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut entries = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |reason: &str| LexiconError::Malformed { line: n + 1, reason: reason.into() };
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [lemma, attribute, polarity] = cols[..] else {
                return Err(malformed("expected `lemma<TAB>attribute<TAB>polarity`"));
            };
            let polarity = match polarity {
                "positive" => Polarity::Positive,
                "negative" => Polarity::Negative,
                _ => return Err(malformed("polarity must be `positive` or `negative`")),
            };
            if !is_valid_name(attribute) {
                return Err(malformed("attribute is not a concept identifier"));
            }
            let entry = MeasurableModifier { lemma: lemma.into(), attribute: attribute.into(), polarity };
            if entries.insert(lemma.to_string(), entry).is_some() {
                return Err(LexiconError::DuplicateLemma { line: n + 1, lemma: lemma.into() });
            }
        }
        Ok(ModifierLexicon { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled modifier lexicon is valid")
    }

    pub fn get(&self, lemma: &str) -> Option<&MeasurableModifier> {
        self.entries.get(lemma)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Base adjective of an `-est` form: "tallest" → tall, "largest" → large,
    /// "biggest" → big, "heaviest" → heavy.
    fn base_of(&self, word: &str) -> Option<&MeasurableModifier> {
        let stem = word.strip_suffix("est")?;
        let mut candidates = vec![stem.to_string(), format!("{stem}e")];
        let b = stem.as_bytes();
        if b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] {
            candidates.push(stem[..stem.len() - 1].to_string());
        }
        if let Some(s) = stem.strip_suffix('i') {
            candidates.push(format!("{s}y"));
        }
        candidates.iter().find_map(|c| self.get(c))
    }

    /// Finds the first superlative in `modifiers`, either an `-est` form or
    /// `most`/`least` followed by an adjective.
    pub fn find_superlative(&self, modifiers: &[String]) -> Option<Superlative> {
        for (i, m) in modifiers.iter().enumerate() {
            if m == "most" || m == "least" {
                let next = modifiers.get(i + 1)?;
                let opt = if m == "most" { Optimum::Max } else { Optimum::Min };
                let measure = self.get(next).map(|e| (e.attribute.clone(), opt));
                return Some(Superlative { consumed: vec![i, i + 1], measure });
            }
            if m.len() > 4 && m.ends_with("est") && !NOT_SUPERLATIVE.contains(&m.as_str()) {
                let measure = self.base_of(m).map(|e| (e.attribute.clone(), e.optimum()));
                return Some(Superlative { consumed: vec![i], measure });
            }
        }
        None
    }
}
