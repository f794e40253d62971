#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use qct::dl::{ConceptExpr, Optimum, RoleExpr, TemporalMode};
use qct::hypernym::Lexicon;
use qct::qct::{characterize, Qct};
use qct::text::tag_tokens;
use qct::translate::{ModifierLexicon, NominalMode, TranslationResult, Translator};

pub fn crate_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

pub fn jsonl(rel: &str) -> Vec<serde_json::Value> {
    std::fs::read_to_string(crate_path(rel))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

pub fn characterized(query: &str) -> Qct {
    characterize(&tag_tokens(query).unwrap()).unwrap_or_else(|e| panic!("{query}: {e}"))
}

pub fn translated(query: &str, nominal: NominalMode) -> TranslationResult {
    let lexicon = Lexicon::bundled();
    let modifiers = ModifierLexicon::bundled();
    Translator::new(&lexicon, &modifiers, nominal)
        .translate(&characterized(query))
        .unwrap_or_else(|e| panic!("{query}: {e}"))
}

pub fn nominal_mode(tag: &str) -> NominalMode {
    match tag {
        "strict" => NominalMode::NominalStrict,
        _ => NominalMode::PaperLiteral,
    }
}

fn name(prefix: &'static str) -> impl Strategy<Value = String> {
    (0u32..40).prop_map(move |i| format!("{prefix}{i}"))
}

pub fn role() -> impl Strategy<Value = RoleExpr> {
    let base = prop_oneof![
        name("r").prop_map(RoleExpr::Atomic),
        (prop_oneof![Just(TemporalMode::Sometimes), Just(TemporalMode::Always)], name("r"))
            .prop_map(|(m, n)| RoleExpr::TemporalQualified(m, n)),
    ];
    (base, any::<bool>()).prop_map(|(r, inv)| if inv { r.inverse() } else { r })
}

/// Concept expressions of depth at most `depth`, with n-ary nodes of two to
/// four members.
pub fn concept(depth: u32) -> impl Strategy<Value = ConceptExpr> {
    let leaf = prop_oneof![
        4 => name("C").prop_map(ConceptExpr::Atomic),
        2 => name("i").prop_map(ConceptExpr::Nominal),
        1 => Just(ConceptExpr::Integer),
        1 => Just(ConceptExpr::CountConcept),
        1 => Just(ConceptExpr::Thing),
    ];
    leaf.prop_recursive(depth, 96, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..5).prop_map(ConceptExpr::Intersection),
            prop::collection::vec(inner.clone(), 2..5).prop_map(ConceptExpr::Union),
            (role(), inner.clone()).prop_map(|(r, c)| ConceptExpr::Exists(r, Box::new(c))),
            (role(), inner.clone()).prop_map(|(r, c)| ConceptExpr::ForAll(r, Box::new(c))),
            (any::<bool>(), inner).prop_map(|(max, c)| {
                ConceptExpr::Optimal(if max { Optimum::Max } else { Optimum::Min }, Box::new(c))
            }),
        ]
    })
}

pub fn depth(e: &ConceptExpr) -> u32 {
    match e {
        ConceptExpr::Intersection(xs) | ConceptExpr::Union(xs) => 1 + xs.iter().map(depth).max().unwrap_or(0),
        ConceptExpr::Exists(_, c) | ConceptExpr::ForAll(_, c) | ConceptExpr::Optimal(_, c) => 1 + depth(c),
        _ => 0,
    }
}

pub const ADJECTIVES: [&str; 12] =
    ["red", "tall", "big", "dangerous", "ancient", "small", "green", "wild", "rare", "heavy", "young", "famous"];
