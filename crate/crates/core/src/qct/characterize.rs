use serde::Serialize;
use thiserror::Error;

use crate::text::{Pos, Token, TokenSequence, WH_WORDS};

use super::chunk::{aux_class, chunk, AuxClass, Unit};
use super::{
    ClauseStructure, Connective, DesireMode, DesireSlot, Form, InputSlot, Qct, QueryKind, Span, SubQct, SubjectBinding,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterizeError {
    #[error("query has no wh-token")]
    NoWhToken,
    #[error("unsupported query kind: {0}")]
    UnsupportedKind(String),
    #[error("no template fits the query: {0}")]
    CharacterizationFailure(String),
}

fn fail<T>(reason: &str) -> Result<T, CharacterizeError> {
    Err(CharacterizeError::CharacterizationFailure(reason.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Dependency {
    DesireDependency,
    InputDependency,
    None,
}

const COMPUTATIONAL: [&str; 19] = [
    "far", "long", "fast", "old", "tall", "big", "high", "large", "deep", "wide", "short", "heavy", "often", "soon",
    "small", "early", "late", "hot", "cold",
];
const KIND_WORDS: [&str; 4] = ["kind", "type", "sort", "variety"];

fn is_wh_word(t: &Token) -> bool {
    WH_WORDS.contains(&t.lemma.as_str())
}

/// Kind of the wh-phrase starting at `k` and the number of tokens it spans.
fn kind_at(tokens: &[Token], k: usize) -> Result<(QueryKind, usize), CharacterizeError> {
    let next = tokens.get(k + 1).map(|t| t.lemma.as_str());
    let kind = match tokens[k].lemma.as_str() {
        "what" => QueryKind::What,
        "which" => QueryKind::Which,
        "who" | "whom" | "whose" => QueryKind::Who,
        "when" => QueryKind::When,
        "where" => QueryKind::Where,
        "why" => return Err(CharacterizeError::UnsupportedKind("why".into())),
        "how" => {
            return match next {
                Some("much" | "many") => Ok((QueryKind::HowQuantitative, 2)),
                Some(m) if COMPUTATIONAL.contains(&m) => Ok((QueryKind::HowComputational, 2)),
                Some(a) if aux_class(a).is_some() => {
                    let action = tokens[k + 2..]
                        .iter()
                        .any(|t| t.pos.is_verb() && t.pos != Pos::MD && aux_class(&t.lemma).is_none());
                    if action {
                        Err(CharacterizeError::UnsupportedKind("procedural how".into()))
                    } else {
                        Ok((QueryKind::HowState, 1))
                    }
                }
                _ => Err(CharacterizeError::UnsupportedKind("how".into())),
            }
        }
        other => return Err(CharacterizeError::UnsupportedKind(other.to_string())),
    };
    Ok((kind, 1))
}

pub fn classify_query_kind(seq: &TokenSequence) -> Result<QueryKind, CharacterizeError> {
    let k = seq.tokens.iter().position(is_wh_word).ok_or(CharacterizeError::NoWhToken)?;
    kind_at(&seq.tokens, k).map(|(kind, _)| kind)
}

struct Phrase {
    head: Vec<String>,
    modifiers: Vec<String>,
    quantifiers: Vec<String>,
    proper: bool,
    span: Span,
}

/// Splits a noun phrase into quantifiers (determiners), modifiers and the
/// trailing noun run that forms the head.
fn phrase(tokens: &[Token]) -> Option<Phrase> {
    let quantifiers = tokens.iter().filter(|t| t.pos == Pos::DT).map(|t| t.lemma.clone()).collect();
    let content: Vec<&Token> = tokens.iter().filter(|t| t.pos != Pos::DT).collect();
    let last = content.last()?;
    let nouns = content.iter().rev().take_while(|t| t.pos.is_noun()).count();
    let start = content.len() - nouns.max(1);
    let lemmas = |ts: &[&Token]| ts.iter().map(|t| t.lemma.clone()).collect::<Vec<_>>();
    Some(Phrase {
        head: lemmas(&content[start..]),
        modifiers: lemmas(&content[..start]),
        quantifiers,
        proper: last.pos.is_proper(),
        span: (content[start].index, last.index),
    })
}

fn desire_from(tokens: &[Token]) -> Result<DesireSlot, CharacterizeError> {
    let Some(p) = phrase(tokens) else { return fail("empty desire phrase") };
    Ok(DesireSlot {
        mode: DesireMode::Explicit,
        head: p.head,
        modifiers: p.modifiers,
        quantifiers: p.quantifiers,
        span: Some(p.span),
    })
}

fn input_from(tokens: &[Token]) -> Result<InputSlot, CharacterizeError> {
    let Some(p) = phrase(tokens) else { return fail("empty input phrase") };
    Ok(InputSlot {
        head: p.head,
        proper: p.proper,
        modifiers: p.modifiers,
        quantifiers: p.quantifiers,
        span: Some(p.span),
    })
}

/// The desire slot found between the end of R1 and the start of R2.
pub fn extract_explicit_desire(seq: &TokenSequence, r1: Span, r2: Span) -> DesireSlot {
    let between: Vec<Token> = seq.tokens.iter().filter(|t| t.index > r1.1 && t.index < r2.0).cloned().collect();
    desire_from(&between).unwrap_or_else(|_| DesireSlot::implicit(DesireMode::Explicit))
}

/// Desire slot for a subquery whose explicit desire may be missing.
pub fn detect_implicit_desire(partial: &SubQct) -> DesireSlot {
    match partial.kind {
        QueryKind::When => return DesireSlot::implicit(DesireMode::ImplicitTime),
        QueryKind::Where => return DesireSlot::implicit(DesireMode::ImplicitLocation),
        QueryKind::HowQuantitative => return DesireSlot::implicit(DesireMode::ImplicitCount),
        _ => {}
    }
    if let Some(d) = partial.desires.first().filter(|d| !d.head.is_empty()) {
        return d.clone();
    }
    let copular =
        partial.r1.as_deref().and_then(|r| r.split('_').next()).is_some_and(|r| aux_class(r) == Some(AuxClass::Copula));
    let definitional = matches!(partial.kind, QueryKind::What | QueryKind::Who)
        && copular
        && match partial.clauses.as_slice() {
            [c] => {
                c.rel.is_empty()
                    && matches!(c.inputs.as_slice(), [i] if !i.proper
                        && i.quantifiers.iter().all(|q| q == "a" || q == "an"))
            }
            _ => false,
        };
    DesireSlot::implicit(if definitional { DesireMode::ImplicitDefinition } else { DesireMode::Implicit })
}

/// Which side of the first clause's relation is its grammatical subject.
pub fn resolve_r2_subject(sub: &SubQct) -> SubjectBinding {
    let Some(c) = sub.clauses.first() else { return SubjectBinding::NoRelation };
    if c.rel.is_empty() {
        return SubjectBinding::NoRelation;
    }
    let input_end = c.inputs.first().and_then(|i| i.span).map(|s| s.1);
    let after = match (c.rel_span, input_end) {
        (Some(r), Some(i)) => r.1 > i,
        _ => c.rel_after_input,
    };
    if after {
        SubjectBinding::InputIsSubject
    } else {
        SubjectBinding::DesireIsSubject
    }
}

/// Whether clause `index` constrains the desire or the nearest preceding
/// input. A clause directly after the desire, or after a named individual,
/// is taken to constrain the desire.
pub fn detect_clause_dependency(sub: &SubQct, index: usize) -> Dependency {
    let Some(clause) = sub.clauses.get(index) else { return Dependency::None };
    if clause.cl.is_none() {
        return Dependency::None;
    }
    match sub.clauses[..index].iter().flat_map(|c| c.inputs.iter()).last() {
        None => Dependency::DesireDependency,
        Some(i) if i.proper => Dependency::DesireDependency,
        Some(_) => Dependency::InputDependency,
    }
}

struct Ctx<'a> {
    prev: Option<&'a SubQct>,
    /// Lemmas that can head an input-less relation (verbs and predicate adjectives).
    predicates: Vec<String>,
    pending_do: Vec<Token>,
    fronted: Vec<Token>,
}

fn lemmas(ts: &[Token]) -> Vec<String> {
    ts.iter().map(|t| t.lemma.clone()).collect()
}

fn span_of(ts: &[Token], base: Option<Span>) -> Option<Span> {
    ts.iter().fold(base, |s, t| match s {
        None => Some((t.index, t.index)),
        Some((a, b)) => Some((a.min(t.index), b.max(t.index))),
    })
}

fn set_rel(c: &mut ClauseStructure, rel: &[Token]) {
    c.rel = lemmas(rel);
    c.rel_span = span_of(rel, None);
}

fn extend_rel(c: &mut ClauseStructure, rel: &[Token]) {
    c.rel.extend(lemmas(rel));
    c.rel_span = span_of(rel, c.rel_span);
}

fn resolve_anaphor(t: &Token, prev: Option<&SubQct>) -> Result<InputSlot, CharacterizeError> {
    match (t.lemma.as_str(), prev.and_then(|p| p.inputs().next())) {
        ("it" | "they" | "them", Some(i)) => Ok(InputSlot { span: None, ..i.clone() }),
        _ => fail("unresolved pronoun"),
    }
}

type Split = Option<(usize, Connective)>;

/// Groups units into clause structures. Returns early with the offset of a
/// conjoined desire that carries its own relation.
fn parse_clauses(
    units: &[Unit],
    pre: Option<ClauseStructure>,
    ctx: &mut Ctx<'_>,
) -> Result<(Vec<ClauseStructure>, Split), CharacterizeError> {
    let mut done: Vec<ClauseStructure> = Vec::new();
    let mut cur = pre;
    let mut pending_cc: Option<Connective> = None;
    for (i, unit) in units.iter().enumerate() {
        match unit {
            Unit::Cl(t) => {
                pending_cc = None;
                done.extend(cur.take());
                cur = Some(ClauseStructure::new(Some(t.lemma.clone())));
            }
            Unit::Cc(c) => {
                if cur.as_ref().is_none_or(|c| c.inputs.is_empty()) {
                    return fail("connective without a preceding input");
                }
                pending_cc = Some(*c);
            }
            Unit::Rel(r) => {
                if pending_cc.is_some() {
                    return fail("connective before a relation");
                }
                let trailing = !matches!(units.get(i + 1), Some(Unit::Np(_) | Unit::Anaphor(_)));
                match cur.as_mut() {
                    None => {
                        let mut c = ClauseStructure::new(None);
                        set_rel(&mut c, r);
                        cur = Some(c);
                    }
                    Some(c) if c.rel.is_empty() && c.inputs.is_empty() => set_rel(c, r),
                    Some(_) if trailing => {
                        let mut rel = std::mem::take(&mut ctx.pending_do);
                        rel.extend(r.iter().cloned());
                        rel.extend(std::mem::take(&mut ctx.fronted));
                        let target =
                            done.iter_mut().chain(cur.iter_mut()).find(|c| c.rel.is_empty() && !c.inputs.is_empty());
                        if let Some(t) = target {
                            set_rel(t, &rel);
                            t.rel_after_input = true;
                        } else {
                            let c = cur.as_mut().unwrap();
                            let aux_only = c.rel.iter().all(|l| aux_class(l).is_some());
                            if c.rel.is_empty() || !(aux_only || r[0].lemma == "to") {
                                return fail("dangling relation");
                            }
                            extend_rel(c, &rel);
                            c.rel_after_input |= aux_only;
                        }
                    }
                    Some(_) => {
                        done.extend(cur.take());
                        let mut c = ClauseStructure::new(None);
                        set_rel(&mut c, r);
                        cur = Some(c);
                    }
                }
            }
            Unit::Np(_) | Unit::Anaphor(_) => {
                let slot = match unit {
                    Unit::Np(np) => input_from(np)?,
                    Unit::Anaphor(a) => resolve_anaphor(a, ctx.prev)?,
                    _ => unreachable!(),
                };
                if let Some(c) = pending_cc.take() {
                    let own_relation = matches!(unit, Unit::Np(_))
                        && matches!(units.get(i + 1), Some(Unit::Rel(_)))
                        && matches!(units.get(i + 2), Some(Unit::Np(_) | Unit::Anaphor(_)));
                    if own_relation && done.is_empty() && cur.as_ref().is_some_and(|c| c.cl.is_none()) {
                        done.extend(cur.take());
                        return Ok((done, Some((i, c))));
                    }
                    let clause = cur.as_mut().expect("connective follows an input");
                    clause.cc.push(c);
                    clause.inputs.push(slot);
                } else {
                    match cur.as_mut() {
                        None => {
                            let mut c = ClauseStructure::new(None);
                            c.inputs.push(slot);
                            cur = Some(c);
                        }
                        Some(c) if c.inputs.is_empty() => c.inputs.push(slot),
                        Some(_) => return fail("adjacent noun phrases"),
                    }
                }
            }
            Unit::Poss(_) => return fail("dangling possessive"),
        }
    }
    if pending_cc.is_some() {
        return fail("dangling connective");
    }
    done.extend(cur);
    Ok((done, None))
}

struct Head {
    kind: QueryKind,
    r1: Vec<Token>,
    measure: Option<String>,
}

fn finish(
    head: &Head,
    desires: Vec<DesireSlot>,
    dcc: Vec<Connective>,
    mut clauses: Vec<ClauseStructure>,
    wh_attached: bool,
    ctx: &mut Ctx<'_>,
) -> Result<SubQct, CharacterizeError> {
    if !ctx.pending_do.is_empty() {
        return fail("auxiliary without a main verb");
    }
    if !ctx.fronted.is_empty() {
        let Some(c) = clauses.first_mut() else { return fail("dangling preposition") };
        let fronted = std::mem::take(&mut ctx.fronted);
        extend_rel(c, &fronted);
    }
    if clauses.is_empty() {
        return fail("no relation or input");
    }
    if clauses.iter().any(|c| c.cl.is_some() && c.rel.is_empty()) {
        return fail("clause without a relation");
    }
    if clauses.iter().any(|c| c.inputs.is_empty() && !c.rel.iter().any(|l| ctx.predicates.contains(l))) {
        return fail("relation without an input");
    }
    let mut sub = SubQct {
        kind: head.kind,
        r1: (!head.r1.is_empty()).then(|| lemmas(&head.r1).join("_")),
        desires,
        dcc,
        clauses,
        subject: SubjectBinding::NoRelation,
        r1_span: head.r1.first().zip(head.r1.last()).map(|(a, b)| (a.index, b.index)),
        wh_attached,
    };
    match head.kind {
        QueryKind::When | QueryKind::Where | QueryKind::HowState => {
            let mode = match head.kind {
                QueryKind::When => DesireMode::ImplicitTime,
                QueryKind::Where => DesireMode::ImplicitLocation,
                _ => DesireMode::Implicit,
            };
            sub.desires = vec![DesireSlot::implicit(mode)];
            sub.dcc.clear();
        }
        QueryKind::HowQuantitative if !sub.desires.is_empty() => {
            sub.desires.iter_mut().for_each(|d| d.mode = DesireMode::ImplicitCount)
        }
        QueryKind::HowComputational => {
            let mut d = DesireSlot::implicit(DesireMode::ImplicitCount);
            d.modifiers.extend(head.measure.clone());
            sub.desires = vec![d];
            sub.dcc.clear();
        }
        _ if sub.desires.is_empty() => sub.desires = vec![detect_implicit_desire(&sub)],
        _ => {}
    }
    sub.subject = resolve_r2_subject(&sub);
    Ok(sub)
}

fn is_predicate_adjective(units: &[Unit]) -> bool {
    match units {
        [Unit::Rel(r), Unit::Np(adj)] => {
            r.iter().all(|t| aux_class(&t.lemma) == Some(AuxClass::Copula))
                && adj.iter().all(|t| matches!(t.pos, Pos::JJ | Pos::RB | Pos::VBN))
        }
        _ => false,
    }
}

fn parse_segment(tokens: &[Token], prev: Option<&SubQct>) -> Result<(Vec<SubQct>, Vec<Connective>), CharacterizeError> {
    let k = tokens.iter().position(is_wh_word).ok_or(CharacterizeError::NoWhToken)?;
    let fronted_len = tokens[..k].iter().rev().take_while(|t| t.pos == Pos::IN).count();
    let predicates = tokens
        .iter()
        .filter(|t| (t.pos.is_verb() && aux_class(&t.lemma).is_none()) || t.pos == Pos::JJ)
        .map(|t| t.lemma.clone())
        .collect();
    let mut ctx = Ctx { prev, predicates, pending_do: vec![], fronted: tokens[k - fronted_len..k].to_vec() };
    let (kind, plen) = kind_at(tokens, k)?;
    let mut head = Head { kind, r1: vec![], measure: (plen == 2).then(|| tokens[k + 1].lemma.clone()) };
    let mut units = chunk(&tokens[k + plen..]);
    let wh = tokens[k].lemma.as_str();

    let mut u = 0;
    let mut desires = Vec::new();
    let mut dcc = Vec::new();
    let mut wh_attached = false;
    let mut pre_clause = None;

    if matches!(wh, "what" | "which" | "whose") || kind == QueryKind::HowQuantitative {
        match units.first() {
            Some(Unit::Np(np)) => {
                let kind_word = np.iter().any(|t| KIND_WORDS.contains(&t.lemma.as_str()))
                    && np.iter().all(|t| t.pos == Pos::DT || KIND_WORDS.contains(&t.lemma.as_str()));
                match (units.get(1), units.get(2)) {
                    (Some(Unit::Rel(of)), Some(Unit::Np(inner)))
                        if kind_word && of.len() == 1 && of[0].lemma == "of" =>
                    {
                        head.r1 = np.iter().filter(|t| t.pos != Pos::DT).cloned().collect();
                        head.r1.push(of[0].clone());
                        desires.push(desire_from(inner)?);
                        u = 3;
                    }
                    _ => {
                        desires.push(desire_from(np)?);
                        u = 1;
                    }
                }
                wh_attached = true;
            }
            Some(Unit::Anaphor(a)) if matches!(a.lemma.as_str(), "ones" | "they") => {
                let Some(p) = prev else { return fail("unresolved pronoun") };
                desires = p.desires.iter().map(|d| DesireSlot { span: None, ..d.clone() }).collect();
                dcc = p.dcc.clone();
                u = 1;
                wh_attached = true;
            }
            _ => {}
        }
    }

    if wh_attached && head.r1.is_empty() && is_predicate_adjective(&units[u..]) {
        if let (Unit::Rel(r), Unit::Np(adj)) = (&units[u], &units[u + 1]) {
            let mut c = ClauseStructure::new(None);
            set_rel(&mut c, &[r.clone(), adj.clone()].concat());
            pre_clause = Some(c);
            u += 2;
        }
    }

    if head.r1.is_empty() && pre_clause.is_none() {
        if let Some(Unit::Rel(rel)) = units.get(u).cloned() {
            let mut n = rel.iter().take_while(|t| aux_class(&t.lemma).is_some()).count();
            if n == rel.len() && rel.iter().all(|t| aux_class(&t.lemma) == Some(AuxClass::Have)) {
                n = 0;
            }
            if n > 0 {
                if wh_attached && aux_class(&rel[0].lemma) == Some(AuxClass::Do) {
                    ctx.pending_do = rel[..n].to_vec();
                } else {
                    head.r1 = rel[..n].to_vec();
                }
                if n == rel.len() {
                    u += 1;
                } else {
                    units[u] = Unit::Rel(rel[n..].to_vec());
                }
            } else if kind == QueryKind::What
                && desires.is_empty()
                && rel.len() == 1
                && matches!(units.get(u + 1), Some(Unit::Cl(_)))
            {
                let mut d = DesireSlot::implicit(DesireMode::ImplicitActivity);
                d.head = vec![rel[0].lemma.clone()];
                desires.push(d);
                u += 1;
            }
        }
    }

    let copular_r1 = head.r1.first().is_some_and(|t| aux_class(&t.lemma) == Some(AuxClass::Copula));
    if desires.is_empty() && copular_r1 && matches!(kind, QueryKind::What | QueryKind::Which | QueryKind::Who) {
        let mut j = u;
        let mut chain = Vec::new();
        let mut ccs = Vec::new();
        while let Some(Unit::Np(np)) = units.get(j) {
            chain.push(np);
            j += 1;
            match (units.get(j), units.get(j + 1)) {
                (Some(Unit::Cc(c)), Some(Unit::Np(_))) => {
                    ccs.push(*c);
                    j += 1;
                }
                _ => break,
            }
        }
        if !chain.is_empty() && matches!(units.get(j), Some(Unit::Rel(_) | Unit::Cl(_))) {
            for np in chain {
                desires.push(desire_from(np)?);
            }
            dcc = ccs;
            u = j;
        }
    }

    let mut out = Vec::new();
    let mut conns = Vec::new();
    let mut start = u;
    loop {
        let (clauses, split) = parse_clauses(&units[start..], pre_clause.take(), &mut ctx)?;
        out.push(finish(&head, desires, dcc, clauses, wh_attached, &mut ctx)?);
        let Some((offset, c)) = split else { break };
        conns.push(c);
        let Unit::Np(np) = &units[start + offset] else { unreachable!() };
        desires = vec![desire_from(np)?];
        dcc = Vec::new();
        wh_attached = false;
        start += offset + 1;
    }
    Ok((out, conns))
}

/// Cuts the sequence before every connective that introduces a new wh-word
/// (optionally behind fronted prepositions).
fn segments(tokens: &[Token]) -> Vec<(&[Token], Option<Connective>)> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut conn = None;
    for i in 0..tokens.len() {
        if tokens[i].pos != Pos::CC || i == start {
            continue;
        }
        let after = tokens[i + 1..].iter().find(|t| t.pos != Pos::IN);
        if after.is_some_and(|t| is_wh_word(t) && t.lemma != "which") || which_opens_subquery(tokens, i) {
            out.push((&tokens[start..i], conn));
            conn = Some(super::chunk::connective(&tokens[i].lemma));
            start = i + 1;
        }
    }
    out.push((&tokens[start..], conn));
    out
}

/// "... and which ones are dormant": a `which` opens a new subquery when it
/// is followed by a noun phrase or pronoun rather than a relation.
fn which_opens_subquery(tokens: &[Token], cc: usize) -> bool {
    match (tokens.get(cc + 1), tokens.get(cc + 2)) {
        (Some(w), Some(n)) if w.lemma == "which" => {
            n.pos.is_noun() || matches!(n.pos, Pos::DT | Pos::JJ) || n.lemma == "ones"
        }
        _ => false,
    }
}

fn parse_all(seq: &TokenSequence) -> Result<Qct, CharacterizeError> {
    if !seq.tokens.iter().any(is_wh_word) {
        return Err(CharacterizeError::NoWhToken);
    }
    let mut subs: Vec<SubQct> = Vec::new();
    let mut cc = Vec::new();
    for (seg, conn) in segments(&seq.tokens) {
        let (parsed, inner) = parse_segment(seg, subs.last())?;
        cc.extend(conn);
        subs.extend(parsed);
        cc.extend(inner);
    }
    let Some(form) = Qct::derived_form(&subs) else { return fail("clausal structure with a single input") };
    Ok(Qct { form, subqueries: subs, cc })
}

fn with_form(seq: &TokenSequence, form: Form) -> Result<Qct, CharacterizeError> {
    let q = parse_all(seq)?;
    if q.form == form {
        Ok(q)
    } else {
        Err(CharacterizeError::CharacterizationFailure(format!("query is {}, not {}", q.form.as_str(), form.as_str())))
    }
}

pub fn characterize_simple(seq: &TokenSequence) -> Result<Qct, CharacterizeError> {
    with_form(seq, Form::Simple)
}

pub fn characterize_complex(seq: &TokenSequence) -> Result<Qct, CharacterizeError> {
    with_form(seq, Form::Complex)
}

pub fn characterize_compound(seq: &TokenSequence) -> Result<Qct, CharacterizeError> {
    with_form(seq, Form::Compound)
}

/// Fits the most specific template: compound, then complex, then simple.
pub fn characterize(seq: &TokenSequence) -> Result<Qct, CharacterizeError> {
    classify_query_kind(seq)?;
    let mut last = None;
    for f in [characterize_compound, characterize_complex, characterize_simple] {
        match f(seq) {
            Ok(q) => return Ok(q),
            Err(e @ CharacterizeError::CharacterizationFailure(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one template tried"))
}
