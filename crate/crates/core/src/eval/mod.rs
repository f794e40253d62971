//! Corpus evaluation: characterize every entry, compare against gold, and
//! report CC-Recall, CC-Precision and CC-F1 by form and by query kind.
//!
//! Percentages are truncated (not rounded) to two decimals and F1 is taken
//! over the truncated values; that is the arithmetic the published totals
//! follow.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qct::{characterize, DesireMode, DesireSlot, Form, Qct, QueryKind};
use crate::text::{parse_tagged_input, singularize, tag_tokens, TokenSequence};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {reason}")]
    Schema { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    /// Raw text, or tab-separated `token<TAB>tag` lines.
    pub query: String,
    pub form: Form,
    pub kind: QueryKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gold: Option<Qct>,
    #[serde(default, rename = "goldDesire", skip_serializing_if = "Option::is_none")]
    pub gold_desire: Option<Vec<String>>,
}

impl CorpusEntry {
    pub fn tokens(&self) -> Result<TokenSequence, crate::text::IngestError> {
        if self.query.contains('\t') {
            parse_tagged_input(&self.query)
        } else {
            tag_tokens(&self.query)
        }
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut out = Vec::new();
    let mut ids = HashSet::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let schema = |reason: String| CorpusError::Schema { line: n + 1, reason };
        let entry: CorpusEntry = serde_json::from_str(line).map_err(|e| schema(e.to_string()))?;
        if entry.gold.is_none() && entry.gold_desire.is_none() {
            return Err(schema("entry has neither `gold` nor `goldDesire`".into()));
        }
        if !ids.insert(entry.id.clone()) {
            return Err(schema(format!("duplicate id `{}`", entry.id)));
        }
        out.push(entry);
    }
    Ok(out)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<CorpusEntry>, CorpusError> {
    parse_corpus(&std::fs::read_to_string(path)?)
}

fn truncate2(x: f64) -> f64 {
    // The epsilon keeps exact quotients such as 100.0 from dropping a cent.
    (x * 100.0 + 1e-9).floor() / 100.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CcRow {
    pub category: String,
    pub n: usize,
    pub n_i: usize,
    pub n_ci: usize,
    pub recall: f64,
    /// `None` when nothing was identified.
    pub precision: Option<f64>,
    pub f1: Option<f64>,
}

impl CcRow {
    pub fn from_counts(category: impl Into<String>, n: usize, n_i: usize, n_ci: usize) -> Self {
        assert!(n_ci <= n_i && n_i <= n, "counts must satisfy N_CI <= N_I <= N");
        let recall = if n == 0 { 0.0 } else { truncate2(100.0 * n_ci as f64 / n as f64) };
        let precision = (n_i > 0).then(|| truncate2(100.0 * n_ci as f64 / n_i as f64));
        let f1 = precision.map(|p| if p + recall == 0.0 { 0.0 } else { truncate2(2.0 * p * recall / (p + recall)) });
        CcRow { category: category.into(), n, n_i, n_ci, recall, precision, f1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct CcReport {
    pub rows: Vec<CcRow>,
}

impl CcReport {
    /// Builds category rows plus a trailing Total row.
    pub fn from_counts<S: Into<String>>(counts: impl IntoIterator<Item = (S, usize, usize, usize)>) -> Self {
        let mut rows = Vec::new();
        let (mut n, mut n_i, mut n_ci) = (0, 0, 0);
        for (cat, a, b, c) in counts {
            rows.push(CcRow::from_counts(cat, a, b, c));
            n += a;
            n_i += b;
            n_ci += c;
        }
        if !rows.is_empty() {
            rows.push(CcRow::from_counts("Total", n, n_i, n_ci));
        }
        CcReport { rows }
    }

    pub fn total(&self) -> Option<&CcRow> {
        self.rows.iter().find(|r| r.category == "Total")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub id: String,
    pub identified: bool,
    pub correct: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub by_form: CcReport,
    pub by_kind: CcReport,
    pub outcomes: Vec<Outcome>,
}

fn normalized(lemmas: &[String]) -> Vec<String> {
    lemmas
        .iter()
        .flat_map(|l| l.split(['_', ' ']))
        .filter(|l| !l.is_empty())
        .map(|l| singularize(&l.to_lowercase()))
        .collect()
}

fn desire_lemmas(d: &DesireSlot) -> Vec<String> {
    if !d.head.is_empty() {
        return normalized(&d.head);
    }
    let word = match d.mode {
        DesireMode::ImplicitTime => "time",
        DesireMode::ImplicitLocation => "location",
        DesireMode::ImplicitCount => "count",
        DesireMode::ImplicitDefinition => "definition",
        _ => return vec![],
    };
    vec![word.to_string()]
}

fn judge(entry: &CorpusEntry) -> Outcome {
    let outcome = |identified, correct, error| Outcome { id: entry.id.clone(), identified, correct, error };
    let qct = match entry.tokens().map_err(|e| e.to_string()).and_then(|t| characterize(&t).map_err(|e| e.to_string()))
    {
        Ok(q) => q,
        Err(e) => return outcome(false, false, Some(e)),
    };
    let correct = match (&entry.gold, &entry.gold_desire) {
        (Some(gold), _) => qct.same_slots(gold),
        (None, Some(desire)) => {
            let want = normalized(desire);
            qct.subqueries.iter().flat_map(|s| &s.desires).any(|d| desire_lemmas(d) == want)
        }
        (None, None) => false,
    };
    outcome(true, correct, None)
}

/// Characterizes every entry and groups the counts by gold form and kind.
pub fn evaluate(corpus: &[CorpusEntry]) -> Evaluation {
    let outcomes: Vec<Outcome> = corpus.iter().map(judge).collect();
    let mut by_form: BTreeMap<Form, (usize, usize, usize)> = BTreeMap::new();
    let mut by_kind: BTreeMap<QueryKind, (usize, usize, usize)> = BTreeMap::new();
    for (e, o) in corpus.iter().zip(&outcomes) {
        for c in [by_form.entry(e.form).or_default(), by_kind.entry(e.kind).or_default()] {
            c.0 += 1;
            c.1 += o.identified as usize;
            c.2 += o.correct as usize;
        }
    }
    Evaluation {
        by_form: CcReport::from_counts(by_form.into_iter().map(|(f, (a, b, c))| (f.as_str(), a, b, c))),
        by_kind: CcReport::from_counts(by_kind.into_iter().map(|(k, (a, b, c))| (k.as_str(), a, b, c))),
        outcomes,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Json,
    Csv,
}

fn pct(x: Option<f64>) -> String {
    x.map_or_else(|| "—".to_string(), |v| format!("{v:.2}"))
}

pub fn render_report(report: &CcReport, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Table => {
            out.push_str("Category  N  N_I  N_CI  CC-Re.  CC-Pr.  CC-F1\n");
            for r in &report.rows {
                let _ = writeln!(
                    out,
                    "{}  {}  {}  {}  {:.2}  {}  {}",
                    r.category,
                    r.n,
                    r.n_i,
                    r.n_ci,
                    r.recall,
                    pct(r.precision),
                    pct(r.f1)
                );
            }
        }
        ReportFormat::Csv => {
            out.push_str("category,n,n_i,n_ci,recall,precision,f1\n");
            for r in &report.rows {
                let opt = |x: Option<f64>| x.map(|v| format!("{v:.2}")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{:.2},{},{}",
                    r.category,
                    r.n,
                    r.n_i,
                    r.n_ci,
                    r.recall,
                    opt(r.precision),
                    opt(r.f1)
                );
            }
        }
        ReportFormat::Json => {
            out = serde_json::to_string_pretty(report).expect("report serializes");
            out.push('\n');
        }
    }
    out
}
