//! DL formalization of characterized queries.
//!
//! Rules are tried in a fixed order: compound splitting, then the
//! non-trivial rewrites (empty input, quantitative how, superlatives,
//! desire inclusion), then the complex extension rules and finally the base
//! rules. Every rule that fires is recorded by id in
//! [`TranslationResult::rules`].

mod modifiers;
mod naming;
mod rules;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dl::{Axiom, ConceptExpr, QueryForm, QueryMode};
use crate::hypernym::HypernymProvider;
use crate::qct::{InputSlot, Qct, SubQct};

pub use modifiers::{MeasurableModifier, ModifierLexicon, Polarity, Superlative};
pub use naming::{apply_modifier_rule, concept_name, reify, role_name};

/// How a named individual is rendered when a class is expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NominalMode {
    /// Replace the individual by its most specific parent class when the
    /// hypernym lexicon knows it, otherwise fall back to a nominal.
    #[default]
    PaperLiteral,
    /// Always emit the nominal `{I}`.
    NominalStrict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Combinator {
    Union,
    Intersection,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error("no translation rule applies: {0}")]
    TranslationFailure(String),
    #[error("temporal adverbial `{0}` requires negation")]
    UnsupportedAdverbial(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationResult {
    pub query: QueryForm,
    /// Weak dual emitted alongside strong T-Box forms.
    pub weak: Option<QueryForm>,
    pub support: Vec<Axiom>,
    pub rules: Vec<String>,
    pub sub: Vec<TranslationResult>,
    pub combinator: Option<Combinator>,
}

impl TranslationResult {
    /// Query axioms first (strong, then weak), then support axioms.
    pub fn axioms(&self) -> Vec<Axiom> {
        let mut out = vec![self.query.axiom()];
        out.extend(self.weak.iter().map(QueryForm::axiom));
        out.extend(self.support.iter().cloned());
        out
    }

    /// Every concept expression in this result and its sub-results.
    pub fn concepts(&self) -> Vec<ConceptExpr> {
        let mut out = vec![self.query.desire.clone()];
        for a in self.axioms() {
            out.extend(a.concepts().into_iter().cloned());
        }
        for s in &self.sub {
            out.extend(s.concepts());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("translation serializes")
    }
}

impl Serialize for TranslationResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TranslationResult", 6)?;
        st.serialize_field("mode", &self.query.mode)?;
        st.serialize_field("desire", &self.query.desire)?;
        st.serialize_field("axioms", &self.axioms())?;
        st.serialize_field("rules", &self.rules)?;
        st.serialize_field("sub", &self.sub)?;
        st.serialize_field("combinator", &self.combinator)?;
        st.end()
    }
}

/// Subqueries produced by splitting a compound query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompoundSplit {
    pub parts: Vec<SubQct>,
    pub combinator: Combinator,
    /// False when the query is kept whole (simple input, or desires that
    /// share a reciprocal relation).
    pub split: bool,
}

const RECIPROCAL: [&str; 2] = ["between", "among"];

/// Separates wh-subqueries and conjoined desires. A clause relating the
/// desires to each other ("between", "among") keeps them together.
pub fn split_compound(qct: &Qct) -> CompoundSplit {
    let mut parts = Vec::new();
    for sub in &qct.subqueries {
        if sub.desires.len() < 2 {
            parts.push(sub.clone());
            continue;
        }
        let reciprocal = sub.clauses.first().is_some_and(|c| c.rel.iter().any(|l| RECIPROCAL.contains(&l.as_str())));
        if reciprocal && qct.subqueries.len() == 1 {
            return CompoundSplit { parts: vec![sub.clone()], combinator: Combinator::Intersection, split: false };
        }
        for d in &sub.desires {
            parts.push(SubQct { desires: vec![d.clone()], dcc: vec![], ..sub.clone() });
        }
    }
    let split = parts.len() > 1;
    CompoundSplit { parts, combinator: Combinator::Union, split }
}

/// Rewrites input-less clauses. A copula followed by an adjective becomes a
/// plain conjunct; any other intransitive relation is reified into
/// `does . <Gerund>`.
pub fn reify_empty_input(sub: &SubQct) -> SubQct {
    let mut out = sub.clone();
    for c in out.clauses.iter_mut().filter(|c| c.inputs.is_empty() && !c.rel.is_empty()) {
        let slot =
            |head: Vec<String>| InputSlot { head, proper: false, modifiers: vec![], quantifiers: vec![], span: None };
        if c.rel.len() > 1 && naming::is_copula(&c.rel[0]) {
            c.inputs.push(slot(c.rel[1..].to_vec()));
            c.rel.clear();
        } else {
            let verb = c.rel.iter().rev().find(|l| !naming::TEMPORAL.contains(&l.as_str())).cloned();
            let verb = verb.unwrap_or_else(|| c.rel[0].clone());
            c.inputs.push(slot(vec![reify(&verb)]));
            c.rel = vec!["does".into()];
        }
        c.rel_after_input = false;
        c.rel_span = None;
    }
    out
}

pub struct Translator<'a> {
    pub lexicon: &'a dyn HypernymProvider,
    pub modifiers: &'a ModifierLexicon,
    pub nominal: NominalMode,
}

impl<'a> Translator<'a> {
    pub fn new(lexicon: &'a dyn HypernymProvider, modifiers: &'a ModifierLexicon, nominal: NominalMode) -> Self {
        Translator { lexicon, modifiers, nominal }
    }

    pub fn translate(&self, qct: &Qct) -> Result<TranslationResult, TranslationError> {
        let split = split_compound(qct);
        if !split.split {
            let sub = &split.parts[0];
            return if split.combinator == Combinator::Intersection {
                self.translate_not_split(sub)
            } else {
                self.translate_sub(sub)
            };
        }
        let subs = split.parts.iter().map(|s| self.translate_sub(s)).collect::<Result<Vec<_>, _>>()?;
        let first = subs[0].query.mode;
        let mode = if subs.iter().all(|s| s.query.mode == first) { first } else { QueryMode::ABoxRetrieval };
        let desire = ConceptExpr::or(subs.iter().map(|s| s.query.desire.clone()).collect());
        Ok(TranslationResult {
            query: QueryForm::new(mode, desire),
            weak: None,
            support: vec![],
            rules: vec!["compound-split".into()],
            sub: subs,
            combinator: Some(split.combinator),
        })
    }
}

/// Translation with the bundled modifier lexicon in paper-literal mode.
pub fn translate(qct: &Qct, lexicon: &dyn HypernymProvider) -> Result<TranslationResult, TranslationError> {
    let modifiers = ModifierLexicon::bundled();
    Translator::new(lexicon, &modifiers, NominalMode::PaperLiteral).translate(qct)
}
