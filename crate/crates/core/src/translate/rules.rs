use crate::dl::{Axiom, ConceptExpr, Optimum, QueryForm, QueryMode, RoleExpr, TemporalMode};
use crate::hypernym::Msp;
use crate::qct::{
    detect_clause_dependency, Connective, Dependency, DesireMode, DesireSlot, InputSlot, QueryKind, SubQct,
    SubjectBinding,
};

use super::naming::{apply_modifier_rule, concept_name, is_copula, proper_name, reify, role_name, slot_name};
use super::{reify_empty_input, Combinator, NominalMode, TranslationError, TranslationResult, Translator};

const DEFINITE: [&str; 5] = ["the", "this", "that", "these", "those"];
const KIND_WORDS: [&str; 4] = ["kind", "type", "sort", "variety"];

fn failure<T>(reason: &str) -> Result<T, TranslationError> {
    Err(TranslationError::TranslationFailure(reason.to_string()))
}

#[derive(Default)]
struct Build {
    rules: Vec<String>,
    support: Vec<Axiom>,
}

impl Build {
    fn rule(&mut self, id: &str) {
        if !self.rules.iter().any(|r| r == id) {
            self.rules.push(id.to_string());
        }
    }

    fn axiom(&mut self, a: Axiom) {
        if !self.support.contains(&a) {
            self.support.push(a);
        }
    }

    fn finish(self, query: QueryForm, weak: bool) -> TranslationResult {
        TranslationResult {
            weak: if weak { query.dual() } else { None },
            query,
            support: self.support,
            rules: self.rules,
            sub: vec![],
            combinator: None,
        }
    }
}

/// Conjunction that splices nested conjunctions into one list.
fn conj(parts: Vec<ConceptExpr>) -> ConceptExpr {
    let mut flat = Vec::with_capacity(parts.len());
    for p in parts {
        match p {
            ConceptExpr::Intersection(xs) => flat.extend(xs),
            other => flat.push(other),
        }
    }
    ConceptExpr::and(flat)
}

struct Role {
    expr: RoleExpr,
    temporal: Option<(String, bool)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Desire,
    Input(usize),
}

struct Attach {
    target: Target,
    role: Option<RoleExpr>,
    temporal: Option<(String, bool)>,
    inputs: std::ops::Range<usize>,
    or: bool,
}

fn temporal_mode(lemma: &str) -> Option<TemporalMode> {
    match lemma {
        "sometimes" | "often" | "usually" => Some(TemporalMode::Sometimes),
        "always" => Some(TemporalMode::Always),
        _ => None,
    }
}

fn check_never(sub: &SubQct) -> Result<(), TranslationError> {
    match sub.clauses.iter().flat_map(|c| c.rel.iter()).find(|l| *l == "never") {
        Some(l) => Err(TranslationError::UnsupportedAdverbial(l.clone())),
        None => Ok(()),
    }
}

fn is_definite(slot: &InputSlot) -> bool {
    slot.quantifiers.iter().any(|q| DEFINITE.contains(&q.as_str()))
}

fn r1_is_copular(sub: &SubQct) -> bool {
    sub.r1.as_deref().is_some_and(|r| r == "kind_of" || r.split('_').next().is_some_and(is_copula))
}

impl Translator<'_> {
    fn named(&self, modifiers: &[String], head: &[String], b: &mut Build) -> ConceptExpr {
        if !modifiers.is_empty() {
            for a in apply_modifier_rule(modifiers, head) {
                b.axiom(a);
            }
            b.rule("modifier-chain");
        }
        ConceptExpr::atomic(slot_name(modifiers, head))
    }

    /// Filler for a named individual; the flag reports whether a nominal was used.
    fn proper_filler(&self, slot: &InputSlot) -> (ConceptExpr, bool) {
        let name = proper_name(slot);
        match self.nominal {
            NominalMode::NominalStrict => (ConceptExpr::nominal(name), true),
            NominalMode::PaperLiteral => match self.lexicon.get_msp(&name) {
                Msp::Found(msp) => (ConceptExpr::atomic(msp), false),
                Msp::NotFound => (ConceptExpr::nominal(name), true),
            },
        }
    }

    fn input_concept(&self, slot: &InputSlot, b: &mut Build) -> (ConceptExpr, bool) {
        if slot.proper {
            self.proper_filler(slot)
        } else {
            (self.named(&slot.modifiers, &slot.head, b), false)
        }
    }

    fn measure_attribute(&self, sub: &SubQct) -> Option<String> {
        let m = sub.desires.first()?.modifiers.first()?;
        Some(match self.modifiers.get(m) {
            Some(e) => e.attribute.clone(),
            None => concept_name(&[m]),
        })
    }

    /// Role linking an implicit desire to its input when the query states
    /// no relation ("Where is California?").
    fn implicit_role(&self, sub: &SubQct) -> Option<String> {
        let d = sub.desires.first()?;
        match (d.mode, sub.kind) {
            (DesireMode::ImplicitTime, _) => Some("hasTime".into()),
            (DesireMode::ImplicitLocation, _) => Some("hasLocation".into()),
            (_, QueryKind::HowState) => Some("hasState".into()),
            (_, QueryKind::HowComputational) => self.measure_attribute(sub).map(|a| format!("has{a}")),
            _ => None,
        }
    }

    fn desire_concept(&self, sub: &SubQct, d: &DesireSlot, b: &mut Build) -> Option<ConceptExpr> {
        match d.mode {
            DesireMode::Explicit => Some(self.named(&d.modifiers, &d.head, b)),
            DesireMode::ImplicitTime => Some(ConceptExpr::atomic("Time")),
            DesireMode::ImplicitLocation => Some(ConceptExpr::atomic("Location")),
            DesireMode::ImplicitActivity => d.head.first().map(|v| ConceptExpr::atomic(reify(v))),
            DesireMode::ImplicitCount if !d.head.is_empty() => Some(self.named(&d.modifiers, &d.head, b)),
            DesireMode::ImplicitCount if sub.kind == QueryKind::HowComputational => {
                self.measure_attribute(sub).map(ConceptExpr::atomic)
            }
            DesireMode::Implicit if sub.kind == QueryKind::HowState => Some(ConceptExpr::atomic("State")),
            _ => None,
        }
    }

    fn role(&self, rel: &[String], inverse: bool) -> Result<Role, TranslationError> {
        let name = role_name(rel);
        if name.is_empty() {
            return failure("empty relation");
        }
        let temporal = rel.iter().find_map(|l| temporal_mode(l));
        let base = match temporal {
            Some(m) => RoleExpr::TemporalQualified(m, name.clone()),
            None => RoleExpr::atomic(name.clone()),
        };
        Ok(Role { expr: if inverse { base.inverse() } else { base }, temporal: temporal.map(|_| (name, inverse)) })
    }

    fn temporal_axioms(&self, name: &str, inverse: bool, filler: &ConceptExpr, b: &mut Build) {
        let wrap = |r: RoleExpr| if inverse { r.inverse() } else { r };
        let some = ConceptExpr::exists(
            wrap(RoleExpr::TemporalQualified(TemporalMode::Sometimes, name.into())),
            filler.clone(),
        );
        let always =
            ConceptExpr::exists(wrap(RoleExpr::TemporalQualified(TemporalMode::Always, name.into())), filler.clone());
        let plain = ConceptExpr::exists(wrap(RoleExpr::atomic(name)), filler.clone());
        b.axiom(Axiom::Disjointness(some.clone(), always.clone()));
        b.axiom(Axiom::Subsumption(some, plain.clone()));
        b.axiom(Axiom::Subsumption(always, plain));
        b.rule("temporal-adverbial");
    }

    /// Attaches every clause to the desire or to an earlier input and folds
    /// the result into one concept.
    fn build(&self, sub: &SubQct, desire: Option<ConceptExpr>, b: &mut Build) -> Result<ConceptExpr, TranslationError> {
        let mut inputs = Vec::new();
        let mut ranges = Vec::new();
        let mut proper = Vec::new();
        let mut nominal = Vec::new();
        for c in &sub.clauses {
            let start = inputs.len();
            for i in &c.inputs {
                let (concept, nom) = self.input_concept(i, b);
                inputs.push(concept);
                proper.push(i.proper);
                nominal.push(nom);
            }
            ranges.push(start..inputs.len());
        }
        let constrained_desire = desire.is_some() && sub.desires.first().is_some_and(|d| d.is_explicit());
        let mut att = Vec::new();
        for (k, c) in sub.clauses.iter().enumerate() {
            let preceding = ranges[..k].iter().rev().find(|r| !r.is_empty()).map(|r| r.end - 1);
            let target = if k == 0 {
                Target::Desire
            } else if c.cl.is_some() {
                match (detect_clause_dependency(sub, k), preceding) {
                    (Dependency::InputDependency, Some(j)) => {
                        b.rule("ext-2");
                        Target::Input(j)
                    }
                    _ => {
                        b.rule("ext-3.1");
                        Target::Desire
                    }
                }
            } else if sub.r1.is_none() && constrained_desire && sub.clauses[0].cl.is_some() {
                b.rule("ext-3.2");
                Target::Desire
            } else if let Some(j) = preceding {
                b.rule("ext-2");
                Target::Input(j)
            } else {
                Target::Desire
            };
            let inverse = if k == 0 { sub.subject == SubjectBinding::InputIsSubject } else { c.rel_after_input };
            let (role, temporal) = if c.rel.is_empty() {
                match self.implicit_role(sub).filter(|_| k == 0) {
                    Some(r) => {
                        b.rule("implicit-role");
                        (Some(RoleExpr::atomic(r).inverse()), None)
                    }
                    None => {
                        b.rule("copular-conjunction");
                        (None, None)
                    }
                }
            } else {
                let r = self.role(&c.rel, inverse)?;
                if k == 0 && c.rel != ["does"] {
                    let range = ranges[0].clone();
                    let is_proper = range.clone().any(|i| proper[i]);
                    let nom = range.clone().any(|i| nominal[i]);
                    let id = match (is_proper, inverse, nom) {
                        (true, false, false) => "base-3.1",
                        (true, false, true) => "base-3.1-nominal",
                        (true, true, false) => "base-3.2",
                        (true, true, true) => "base-3.2-nominal",
                        (false, false, _) => "base-2.1",
                        (false, true, _) => "base-2.2",
                    };
                    b.rule(id);
                }
                (Some(r.expr), r.temporal)
            };
            att.push(Attach { target, role, temporal, inputs: ranges[k].clone(), or: c.cc.contains(&Connective::Or) });
        }
        let mut top: Vec<ConceptExpr> = desire.into_iter().collect();
        top.extend(self.compose(Target::Desire, &inputs, &att, b));
        if top.is_empty() {
            return failure("nothing to formalize");
        }
        Ok(conj(top))
    }

    fn compose(&self, target: Target, inputs: &[ConceptExpr], att: &[Attach], b: &mut Build) -> Vec<ConceptExpr> {
        let mut parts = Vec::new();
        for a in att.iter().filter(|a| a.target == target) {
            let nodes: Vec<ConceptExpr> = a
                .inputs
                .clone()
                .map(|i| {
                    let mut v = vec![inputs[i].clone()];
                    v.extend(self.compose(Target::Input(i), inputs, att, b));
                    conj(v)
                })
                .collect();
            let fillers = if a.or { vec![ConceptExpr::or(nodes)] } else { nodes };
            match &a.role {
                None => parts.extend(fillers),
                Some(r) => {
                    for f in fillers {
                        if let Some((name, inv)) = &a.temporal {
                            self.temporal_axioms(name, *inv, &f, b);
                        }
                        parts.push(ConceptExpr::exists(r.clone(), f));
                    }
                }
            }
        }
        parts
    }

    /// Single-input queries whose relation is empty or a bare copula: base
    /// rules 1.1 and 1.2 and desire inclusion.
    fn copular(&self, sub: &SubQct, b: &mut Build) -> Option<(QueryMode, ConceptExpr, bool)> {
        let [c] = sub.clauses.as_slice() else { return None };
        let [input] = c.inputs.as_slice() else { return None };
        if !c.rel.iter().all(|l| is_copula(l)) || self.implicit_role(sub).is_some() {
            return None;
        }
        let d = sub.desires.first()?;
        if matches!(d.mode, DesireMode::ImplicitCount | DesireMode::ImplicitActivity) {
            return None;
        }
        if d.is_explicit() {
            if input.proper || !r1_is_copular(sub) {
                return None;
            }
            b.rule("desire-inclusion");
            let dc = self.named(&d.modifiers, &d.head, b);
            let ic = self.named(&input.modifiers, &input.head, b);
            return Some((QueryMode::TBoxStrong, conj(vec![dc, ic]), false));
        }
        if input.proper {
            let (filler, nominal) = self.proper_filler(input);
            b.rule(if nominal { "base-1.2-nominal" } else { "base-1.2" });
            return Some((QueryMode::TBoxStrong, filler, true));
        }
        if is_definite(input) {
            b.rule("base-1.1-quantified-exception");
            let ic = self.named(&input.modifiers, &input.head, b);
            return Some((QueryMode::ABoxRetrieval, ic, false));
        }
        if sub.kind == QueryKind::Who && d.mode == DesireMode::ImplicitDefinition {
            b.rule("base-1.1");
            b.rule("ambiguous");
            let ic = self.named(&input.modifiers, &input.head, b);
            return Some((QueryMode::ABoxRetrieval, ic, false));
        }
        b.rule("base-1.1");
        let ic = self.named(&input.modifiers, &input.head, b);
        Some((QueryMode::TBoxStrong, ic, true))
    }

    fn ext1(&self, sub: &SubQct, b: &mut Build) -> Option<(QueryMode, ConceptExpr, bool)> {
        let d = sub.desires.first().filter(|d| d.is_explicit())?;
        let last = d.head.last()?;
        if !KIND_WORDS.contains(&last.as_str()) || sub.input_count() < 2 {
            return None;
        }
        b.rule("ext-1");
        let parts = sub.inputs().map(|i| self.input_concept(i, b).0).collect();
        Some((QueryMode::TBoxStrong, conj(parts), false))
    }

    fn quantitative(&self, sub: &SubQct, b: &mut Build) -> Result<(QueryMode, ConceptExpr, bool), TranslationError> {
        b.rule("quantitative-how");
        let d = sub.desires.first().and_then(|d| self.desire_concept(sub, d, b));
        let inner = self.build(sub, d.clone(), b)?;
        let counted = d.unwrap_or_else(|| inner.clone());
        b.axiom(Axiom::Subsumption(
            counted,
            ConceptExpr::exists(RoleExpr::atomic("hasCount"), ConceptExpr::CountConcept),
        ));
        let concept =
            conj(vec![ConceptExpr::CountConcept, ConceptExpr::exists(RoleExpr::atomic("hasCount").inverse(), inner)]);
        Ok((QueryMode::ABoxRetrieval, concept, false))
    }

    /// Removes a measurable superlative from the desire (or from the sole
    /// input of an implicit-desire query, which then becomes the desire).
    fn take_superlative(&self, sub: &mut SubQct, b: &mut Build) -> Option<(String, Optimum)> {
        let d = sub.desires.first()?;
        if d.is_explicit() {
            let s = self.modifiers.find_superlative(&d.modifiers)?;
            let Some(measure) = s.measure else {
                b.rule("superlative-fallback");
                return None;
            };
            let d = &mut sub.desires[0];
            d.modifiers = d
                .modifiers
                .iter()
                .enumerate()
                .filter(|(i, _)| !s.consumed.contains(i))
                .map(|(_, m)| m.clone())
                .collect();
            return Some(measure);
        }
        if !matches!(d.mode, DesireMode::Implicit | DesireMode::ImplicitDefinition) {
            return None;
        }
        let [c] = sub.clauses.as_slice() else { return None };
        let [input] = c.inputs.as_slice() else { return None };
        if !c.rel.is_empty() || input.proper {
            return None;
        }
        let s = self.modifiers.find_superlative(&input.modifiers)?;
        let Some(measure) = s.measure else {
            b.rule("superlative-fallback");
            return None;
        };
        let modifiers = input
            .modifiers
            .iter()
            .enumerate()
            .filter(|(i, _)| !s.consumed.contains(i))
            .map(|(_, m)| m.clone())
            .collect();
        sub.desires = vec![DesireSlot {
            mode: DesireMode::Explicit,
            head: input.head.clone(),
            modifiers,
            quantifiers: input.quantifiers.clone(),
            span: input.span,
        }];
        sub.clauses.clear();
        Some(measure)
    }

    pub(super) fn translate_with(
        &self,
        sub: &SubQct,
        desire_override: Option<ConceptExpr>,
    ) -> Result<TranslationResult, TranslationError> {
        check_never(sub)?;
        let mut b = Build::default();
        let mut sub = reify_empty_input(sub);
        if sub.clauses.iter().any(|c| c.rel == ["does"]) {
            b.rule("empty-input-reification");
        }
        let superlative = if desire_override.is_none() { self.take_superlative(&mut sub, &mut b) } else { None };
        if superlative.is_some() {
            b.rule("superlative");
        }
        let (mut mode, mut concept, mut weak) = if sub.kind == QueryKind::HowQuantitative {
            self.quantitative(&sub, &mut b)?
        } else if let Some(x) =
            desire_override.is_none().then(|| self.copular(&sub, &mut b).or_else(|| self.ext1(&sub, &mut b))).flatten()
        {
            x
        } else {
            let d = desire_override.or_else(|| sub.desires.first().and_then(|d| self.desire_concept(&sub, d, &mut b)));
            (QueryMode::ABoxRetrieval, self.build(&sub, d, &mut b)?, false)
        };
        if let Some((attribute, opt)) = superlative {
            let has = RoleExpr::atomic(format!("has{attribute}")).inverse();
            let value = conj(vec![ConceptExpr::atomic(&attribute), ConceptExpr::exists(has, concept)]);
            concept = ConceptExpr::Optimal(
                opt,
                Box::new(conj(vec![
                    ConceptExpr::Integer,
                    ConceptExpr::exists(RoleExpr::atomic("hasValue").inverse(), value),
                ])),
            );
            mode = QueryMode::ABoxRetrieval;
            weak = false;
        }
        Ok(b.finish(QueryForm::new(mode, concept), weak))
    }

    pub(super) fn translate_not_split(&self, sub: &SubQct) -> Result<TranslationResult, TranslationError> {
        let mut scratch = Build::default();
        let desires: Vec<ConceptExpr> =
            sub.desires.iter().filter_map(|d| self.desire_concept(sub, d, &mut scratch)).collect();
        if desires.is_empty() {
            return failure("compound desires without concepts");
        }
        let mut r = self.translate_with(sub, Some(conj(desires)))?;
        r.rules.insert(0, "compound-not-split".into());
        for a in scratch.support {
            if !r.support.contains(&a) {
                r.support.push(a);
            }
        }
        for id in scratch.rules {
            if !r.rules.contains(&id) {
                r.rules.push(id);
            }
        }
        r.combinator = Some(Combinator::Intersection);
        Ok(r)
    }

    pub fn translate_sub(&self, sub: &SubQct) -> Result<TranslationResult, TranslationError> {
        self.translate_with(sub, None)
    }

    /// Base rules 1.1 to 3.2 for a simple subquery.
    pub fn apply_base_rules(&self, sub: &SubQct) -> Result<TranslationResult, TranslationError> {
        if sub.desires.len() > 1 || sub.clauses.len() > 1 || sub.input_count() > 1 {
            return failure("not a simple subquery");
        }
        self.translate_sub(sub)
    }

    /// Extension rules for a subquery with at least two inputs.
    pub fn translate_complex(&self, sub: &SubQct) -> Result<TranslationResult, TranslationError> {
        if sub.input_count() < 2 {
            return failure("not a complex subquery");
        }
        self.translate_sub(sub)
    }

    fn fired(&self, sub: &SubQct, rule: &str) -> Result<Option<TranslationResult>, TranslationError> {
        let r = self.translate_sub(sub)?;
        Ok(r.rules.iter().any(|id| id == rule).then_some(r))
    }

    pub fn apply_desire_inclusion(&self, sub: &SubQct) -> Option<TranslationResult> {
        self.fired(sub, "desire-inclusion").ok().flatten()
    }

    pub fn apply_quantitative_how(&self, sub: &SubQct) -> Result<Option<TranslationResult>, TranslationError> {
        if sub.kind != QueryKind::HowQuantitative {
            return Ok(None);
        }
        self.translate_sub(sub).map(Some)
    }

    pub fn apply_temporal_adverbial(&self, sub: &SubQct) -> Result<Option<TranslationResult>, TranslationError> {
        check_never(sub)?;
        self.fired(sub, "temporal-adverbial")
    }

    pub fn apply_superlative(&self, sub: &SubQct) -> Result<Option<TranslationResult>, TranslationError> {
        self.fired(sub, "superlative")
    }
}
