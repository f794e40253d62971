//! Concept and role identifiers derived from lemmas, the gerund reifier and
//! the nested-modifier chain.

use crate::dl::{Axiom, ConceptExpr};
use crate::qct::InputSlot;

const COPULAS: [&str; 7] = ["is", "am", "are", "was", "were", "be", "been"];
pub(crate) const TEMPORAL: [&str; 5] = ["sometimes", "always", "often", "usually", "never"];

fn sanitize(part: &str) -> String {
    part.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

fn capitalize(part: &str) -> String {
    let mut cs = part.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => String::new(),
    }
}

/// `["3.2", "megapixel", "resolution"]` → `3_2_Megapixel_Resolution`.
pub fn concept_name<S: AsRef<str>>(lemmas: &[S]) -> String {
    lemmas.iter().map(|l| sanitize(&capitalize(l.as_ref()))).filter(|p| !p.is_empty()).collect::<Vec<_>>().join("_")
}

/// Relation lemmas joined by underscores, with temporal adverbs dropped and
/// a leading copula dropped when more tokens follow it.
pub fn role_name<S: AsRef<str>>(rel: &[S]) -> String {
    let mut parts: Vec<&str> = rel.iter().map(|s| s.as_ref()).filter(|l| !TEMPORAL.contains(l)).collect();
    if parts.len() > 1 && COPULAS.contains(&parts[0]) {
        parts.remove(0);
    }
    parts.iter().map(|p| sanitize(p)).collect::<Vec<_>>().join("_")
}

pub(crate) fn is_copula(lemma: &str) -> bool {
    COPULAS.contains(&lemma)
}

fn is_vowel(c: u8) -> bool {
    matches!(c, b'a' | b'e' | b'i' | b'o' | b'u')
}

/// Base form of an inflected verb lemma ("barks" → "bark", "stopped" → "stop").
pub(crate) fn verb_stem(verb: &str) -> String {
    let v = verb.to_ascii_lowercase();
    if let Some(s) = v.strip_suffix("ies").filter(|s| s.len() >= 2) {
        return format!("{s}y");
    }
    for suf in ["sses", "shes", "ches", "xes", "zes"] {
        if v.ends_with(suf) {
            return v[..v.len() - 2].to_string();
        }
    }
    if let Some(s) = v.strip_suffix('s').filter(|s| !s.ends_with('s') && s.len() >= 2) {
        return s.to_string();
    }
    if let Some(s) = v.strip_suffix("ed").filter(|s| s.len() >= 2) {
        let b = s.as_bytes();
        let n = b.len();
        if n >= 2 && b[n - 1] == b[n - 2] && !is_vowel(b[n - 1]) && !matches!(b[n - 1], b'l' | b's' | b'z') {
            return s[..n - 1].to_string();
        }
        return s.to_string();
    }
    v
}

/// Gerund reification: "bark" → "Barking", "run" → "Running", "make" → "Making".
pub fn reify(verb: &str) -> String {
    let stem = verb_stem(verb);
    let b = stem.as_bytes();
    let n = b.len();
    let gerund = if let Some(s) = stem.strip_suffix("ie") {
        format!("{s}ying")
    } else if n > 2 && stem.ends_with('e') && !stem.ends_with("ee") {
        format!("{}ing", &stem[..n - 1])
    } else if n >= 3
        && !is_vowel(b[n - 1])
        && !matches!(b[n - 1], b'w' | b'x' | b'y')
        && is_vowel(b[n - 2])
        && !is_vowel(b[n - 3])
        && vowel_groups(&stem) == 1
    {
        format!("{stem}{}ing", b[n - 1] as char)
    } else {
        format!("{stem}ing")
    };
    concept_name(&[gerund])
}

fn vowel_groups(word: &str) -> usize {
    let mut groups = 0;
    let mut prev = false;
    for &c in word.as_bytes() {
        let v = is_vowel(c);
        if v && !prev {
            groups += 1;
        }
        prev = v;
    }
    groups
}

/// Nested-modifier chain for `modifiers` (surface order) over `head`.
///
/// `[big, tall]` over `Student` yields `Tall_Student SubClassOf Student` and
/// `Big_Tall_Student SubClassOf Tall_Student`: one axiom per modifier, the
/// modifier nearest the head applied first.
pub fn apply_modifier_rule<S: AsRef<str>>(modifiers: &[S], head: &[S]) -> Vec<Axiom> {
    let head: Vec<&str> = head.iter().map(|s| s.as_ref()).collect();
    let mods: Vec<&str> = modifiers.iter().map(|s| s.as_ref()).collect();
    let mut axioms = Vec::with_capacity(mods.len());
    let mut inner = concept_name(&head);
    for k in (0..mods.len()).rev() {
        let outer: Vec<&str> = mods[k..].iter().chain(head.iter()).copied().collect();
        let outer = concept_name(&outer);
        axioms.push(Axiom::Subsumption(ConceptExpr::atomic(&outer), ConceptExpr::atomic(&inner)));
        inner = outer;
    }
    axioms
}

/// Name of a noun-phrase slot with its modifiers folded in.
pub(crate) fn slot_name(modifiers: &[String], head: &[String]) -> String {
    let all: Vec<&String> = modifiers.iter().chain(head.iter()).collect();
    concept_name(&all)
}

pub(crate) fn proper_name(slot: &InputSlot) -> String {
    slot.head.iter().map(|h| sanitize(h)).collect::<Vec<_>>().join("_")
}
