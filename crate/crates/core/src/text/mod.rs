//! Text ingestion: tagged-input parsing, the fallback tagger and lemma
//! normalization.
//!
//! Two tagged formats are accepted. TSV has one `surface<TAB>POS` pair per
//! line; a final `?` line sets the terminal flag. JSON is
//! `{"tokens":[{"surface":...,"pos":...}]}`.

mod tagger;
mod token;

use serde::Deserialize;
use thiserror::Error;

pub use tagger::{tag_tokens, Tagger};
pub use token::{Pos, Token, TokenSequence, UnknownTag};

pub const WH_WORDS: [&str; 9] = ["what", "which", "who", "whose", "whom", "when", "where", "how", "why"];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IngestError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("input contains no tokens")]
    EmptyInput,
    #[error("invalid JSON token list: {0}")]
    Json(String),
}

/// Parses pre-tagged input in either TSV or JSON form.
pub fn parse_tagged_input(text: &str) -> Result<TokenSequence, IngestError> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut pairs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (surface, tag) = line
            .split_once('\t')
            .ok_or_else(|| IngestError::MalformedLine { line: n + 1, reason: "missing tab separator".into() })?;
        pairs.push((n + 1, surface.trim().to_string(), tag.trim().to_string()));
    }
    build_sequence(pairs)
}

#[derive(Deserialize)]
struct JsonTokens {
    tokens: Vec<JsonToken>,
}

#[derive(Deserialize)]
struct JsonToken {
    surface: String,
    pos: String,
}

fn parse_json(text: &str) -> Result<TokenSequence, IngestError> {
    let doc: JsonTokens = serde_json::from_str(text).map_err(|e| IngestError::Json(e.to_string()))?;
    let pairs = doc.tokens.into_iter().enumerate().map(|(i, t)| (i + 1, t.surface, t.pos)).collect();
    build_sequence(pairs)
}

fn build_sequence(pairs: Vec<(usize, String, String)>) -> Result<TokenSequence, IngestError> {
    let mut tagged = Vec::new();
    let mut terminal = false;
    for (line, surface, tag) in pairs {
        if surface.is_empty() {
            return Err(IngestError::MalformedLine { line, reason: "empty surface".into() });
        }
        if matches!(surface.as_str(), "?" | "." | "!") {
            terminal = true;
            continue;
        }
        let pos: Pos = tag
            .parse()
            .map_err(|UnknownTag(t)| IngestError::MalformedLine { line, reason: format!("unknown POS tag `{t}`") })?;
        tagged.push((surface, pos));
    }
    if tagged.is_empty() {
        return Err(IngestError::EmptyInput);
    }
    Ok(TokenSequence { tokens: merge_proper_nouns(tagged), terminal })
}

/// Joins runs of adjacent proper nouns into one token ("New York").
pub(crate) fn merge_proper_nouns(tagged: Vec<(String, Pos)>) -> Vec<Token> {
    let mut merged: Vec<(String, Pos)> = Vec::with_capacity(tagged.len());
    for (surface, pos) in tagged {
        match merged.last_mut() {
            Some((prev, prev_pos)) if prev_pos.is_proper() && pos.is_proper() => {
                prev.push(' ');
                prev.push_str(&surface);
                if pos == Pos::NNPS {
                    *prev_pos = Pos::NNPS;
                }
            }
            _ => merged.push((surface, pos)),
        }
    }
    merged.into_iter().enumerate().map(|(i, (s, p))| Token::new(s, p, i)).collect()
}

/// Writes a sequence back out in the TSV tagged format.
pub fn serialize_tsv(seq: &TokenSequence) -> String {
    let mut out = String::new();
    for t in &seq.tokens {
        out.push_str(&t.surface);
        out.push('\t');
        out.push_str(t.pos.as_str());
        out.push('\n');
    }
    if seq.terminal {
        out.push_str("?\t.\n");
    }
    out
}

/// Recomputes a token's lemma from its surface form.
///
/// Proper nouns keep their casing with spaces replaced by underscores;
/// plural common nouns lose their plural suffix; everything else is
/// lowercased.
pub fn normalize(mut token: Token) -> Token {
    token.lemma = match token.pos {
        Pos::NNP | Pos::NNPS => token.surface.split_whitespace().collect::<Vec<_>>().join("_"),
        Pos::NNS => singularize(&token.surface.to_lowercase()),
        _ => token.surface.to_lowercase(),
    };
    token
}

pub fn singularize(word: &str) -> String {
    let n = word.len();
    if n > 4 && word.ends_with("ies") {
        return format!("{}y", &word[..n - 3]);
    }
    for suffix in ["sses", "ches", "shes", "xes", "zes", "oes"] {
        if n > suffix.len() + 1 && word.ends_with(suffix) {
            return word[..n - 2].to_string();
        }
    }
    if n > 2 && word.ends_with('s') && !word.ends_with("ss") {
        return word[..n - 1].to_string();
    }
    word.to_string()
}
