//! Flat chunking of the tokens after the wh-phrase into noun phrases,
//! relation runs, clause markers and connectives.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::text::{Pos, Token};

use super::Connective;

const AUX_TABLE: &str = include_str!("../../data/aux.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum AuxClass {
    Copula,
    Do,
    Modal,
    Have,
}

fn aux_table() -> &'static HashMap<String, AuxClass> {
    static TABLE: OnceLock<HashMap<String, AuxClass>> = OnceLock::new();
    TABLE.get_or_init(|| {
        AUX_TABLE
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .filter_map(|l| {
                let (class, word) = l.split_once('\t')?;
                let class = match class {
                    "copula" => AuxClass::Copula,
                    "do" => AuxClass::Do,
                    "modal" => AuxClass::Modal,
                    "have" => AuxClass::Have,
                    _ => return None,
                };
                Some((word.trim().to_string(), class))
            })
            .collect()
    })
}

pub(crate) fn aux_class(lemma: &str) -> Option<AuxClass> {
    aux_table().get(lemma).copied()
}

pub(crate) const TEMPORAL_ADVERBS: [&str; 5] = ["sometimes", "always", "often", "never", "usually"];
const FILLERS: [&str; 7] = ["also", "you", "we", "i", "please", "respectively", "exactly"];
pub(crate) const ANAPHORS: [&str; 4] = ["it", "they", "them", "ones"];
const CLAUSAL: [&str; 7] = ["which", "who", "that", "when", "where", "whose", "whom"];
const PARTITIVE: [&str; 8] = ["one", "some", "each", "all", "both", "many", "most", "none"];

#[derive(Debug, Clone)]
pub(crate) enum Unit {
    Np(Vec<Token>),
    Rel(Vec<Token>),
    /// Clause marker; partitive markers ("one of which") keep the wh-word.
    Cl(Token),
    Cc(Connective),
    Anaphor(Token),
    Poss(Token),
}

fn is_rel_token(tokens: &[Token], i: usize) -> bool {
    let t = &tokens[i];
    let prev = i.checked_sub(1).map(|j| &tokens[j]);
    let next = tokens.get(i + 1);
    match t.pos {
        p if p.is_verb() => true,
        Pos::IN => true,
        Pos::RB if TEMPORAL_ADVERBS.contains(&t.lemma.as_str()) => true,
        Pos::VBG => match prev {
            Some(p) if p.pos == Pos::IN => true,
            Some(p) if aux_class(&p.lemma).is_some() => !next.is_some_and(|n| n.pos.is_noun()),
            _ => false,
        },
        _ => false,
    }
}

fn is_np_token(t: &Token) -> bool {
    matches!(t.pos, Pos::DT | Pos::JJ | Pos::JJS | Pos::RB | Pos::VBG) || t.pos.is_noun()
}

fn push_token(units: &mut Vec<Unit>, t: &Token, rel: bool) {
    match (units.last_mut(), rel) {
        (Some(Unit::Rel(r)), true) => r.push(t.clone()),
        (Some(Unit::Np(n)), false) => n.push(t.clone()),
        (_, true) => units.push(Unit::Rel(vec![t.clone()])),
        (_, false) => units.push(Unit::Np(vec![t.clone()])),
    }
}

pub(crate) fn connective(lemma: &str) -> Connective {
    if lemma == "or" {
        Connective::Or
    } else {
        Connective::And
    }
}

pub(crate) fn chunk(tokens: &[Token]) -> Vec<Unit> {
    let mut units: Vec<Unit> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let t = &tokens[i];
        let lemma = t.lemma.as_str();
        if lemma == "as" && tokens.get(i + 1).is_some_and(|n| n.lemma == "well") {
            i += 2;
            continue;
        }
        if FILLERS.contains(&lemma) {
            i += 1;
            continue;
        }
        if PARTITIVE.contains(&lemma)
            && tokens.get(i + 1).is_some_and(|n| n.lemma == "of")
            && tokens.get(i + 2).is_some_and(|n| matches!(n.lemma.as_str(), "which" | "whom"))
        {
            units.push(Unit::Cl(tokens[i + 2].clone()));
            i += 3;
            continue;
        }
        match t.pos {
            Pos::CC => {
                let c = connective(lemma);
                match units.last_mut() {
                    Some(Unit::Cc(prev)) => {
                        if c == Connective::Or {
                            *prev = c;
                        }
                    }
                    _ => units.push(Unit::Cc(c)),
                }
            }
            _ if CLAUSAL.contains(&lemma) && t.pos.is_wh() => units.push(Unit::Cl(t.clone())),
            _ if ANAPHORS.contains(&lemma) => units.push(Unit::Anaphor(t.clone())),
            Pos::Other if lemma == "'s" => units.push(Unit::Poss(t.clone())),
            Pos::Other => {}
            _ if is_rel_token(tokens, i) => push_token(&mut units, t, true),
            _ if is_np_token(t) => push_token(&mut units, t, false),
            _ => {}
        }
        i += 1;
    }
    rewrite_possessives(units)
}

/// `X 's Y` is read as `Y of X`.
fn rewrite_possessives(units: Vec<Unit>) -> Vec<Unit> {
    let mut out: Vec<Unit> = Vec::with_capacity(units.len());
    let mut it = units.into_iter().peekable();
    while let Some(u) = it.next() {
        if let Unit::Poss(p) = &u {
            if let (Some(Unit::Np(_)), Some(Unit::Np(_))) = (out.last(), it.peek()) {
                let owner = out.pop().unwrap();
                let owned = it.next().unwrap();
                let mut of = Token::new("of", Pos::IN, p.index);
                of.lemma = "of".into();
                out.push(owned);
                out.push(Unit::Rel(vec![of]));
                out.push(owner);
                continue;
            }
        }
        out.push(u);
    }
    out
}
