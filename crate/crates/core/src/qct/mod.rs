//! Query characterization templates.
//!
//! A characterized query records its wh-token kind, the auxiliary relation
//! (`r1`), one or more desire slots and a list of clause structures, each
//! holding a relation and the inputs it links to. Complex queries have at
//! least two inputs; compound queries have at least two desires or two
//! wh-subqueries.

mod characterize;
mod chunk;

use serde::{Deserialize, Serialize};

pub use characterize::{
    characterize, characterize_complex, characterize_compound, characterize_simple, classify_query_kind,
    detect_clause_dependency, detect_implicit_desire, extract_explicit_desire, resolve_r2_subject, CharacterizeError,
    Dependency,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QueryKind {
    What,
    Which,
    Who,
    When,
    Where,
    HowQuantitative,
    HowState,
    HowComputational,
}

impl QueryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QueryKind::What => "What",
            QueryKind::Which => "Which",
            QueryKind::Who => "Who",
            QueryKind::When => "When",
            QueryKind::Where => "Where",
            QueryKind::HowQuantitative => "HowQuantitative",
            QueryKind::HowState => "HowState",
            QueryKind::HowComputational => "HowComputational",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DesireMode {
    Explicit,
    /// Desire left empty with no special reading ("What is converted into diamond?").
    Implicit,
    ImplicitDefinition,
    ImplicitTime,
    ImplicitLocation,
    ImplicitCount,
    /// Verb-headed desire of an intransitive wh-verb ("What happens when ...").
    ImplicitActivity,
}

/// Token index range `(first, last)` inside the original sequence.
pub type Span = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesireSlot {
    pub mode: DesireMode,
    #[serde(default)]
    pub head: Vec<String>,
    #[serde(default)]
    pub modifiers: Vec<String>,
    #[serde(default)]
    pub quantifiers: Vec<String>,
    #[serde(skip)]
    pub span: Option<Span>,
}

impl DesireSlot {
    pub fn implicit(mode: DesireMode) -> Self {
        DesireSlot { mode, head: vec![], modifiers: vec![], quantifiers: vec![], span: None }
    }

    pub fn is_explicit(&self) -> bool {
        self.mode == DesireMode::Explicit
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSlot {
    pub head: Vec<String>,
    #[serde(default)]
    pub proper: bool,
    #[serde(default)]
    pub modifiers: Vec<String>,
    #[serde(default)]
    pub quantifiers: Vec<String>,
    #[serde(skip)]
    pub span: Option<Span>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Connective {
    And,
    Or,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseStructure {
    #[serde(default)]
    pub cl: Option<String>,
    #[serde(default)]
    pub rel: Vec<String>,
    #[serde(default)]
    pub inputs: Vec<InputSlot>,
    #[serde(default)]
    pub cc: Vec<Connective>,
    #[serde(skip)]
    pub rel_span: Option<Span>,
    /// The relation's main verb comes after the clause's input.
    #[serde(skip)]
    pub rel_after_input: bool,
}

impl ClauseStructure {
    pub fn new(cl: Option<String>) -> Self {
        ClauseStructure { cl, rel: vec![], inputs: vec![], cc: vec![], rel_span: None, rel_after_input: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubjectBinding {
    DesireIsSubject,
    InputIsSubject,
    NoRelation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubQct {
    pub kind: QueryKind,
    #[serde(default)]
    pub r1: Option<String>,
    pub desires: Vec<DesireSlot>,
    #[serde(default)]
    pub dcc: Vec<Connective>,
    #[serde(default)]
    pub clauses: Vec<ClauseStructure>,
    pub subject: SubjectBinding,
    #[serde(skip)]
    pub r1_span: Option<Span>,
    /// The desire noun phrase directly follows the wh-token ("Which country ...").
    #[serde(skip)]
    pub wh_attached: bool,
}

impl SubQct {
    pub fn inputs(&self) -> impl Iterator<Item = &InputSlot> {
        self.clauses.iter().flat_map(|c| c.inputs.iter())
    }

    pub fn input_count(&self) -> usize {
        self.inputs().count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Form {
    Simple,
    Complex,
    Compound,
}

impl Form {
    pub fn as_str(self) -> &'static str {
        match self {
            Form::Simple => "Simple",
            Form::Complex => "Complex",
            Form::Compound => "Compound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Qct {
    pub form: Form,
    pub subqueries: Vec<SubQct>,
    #[serde(default)]
    pub cc: Vec<Connective>,
}

impl Qct {
    /// JSON value with the fixed field names; token spans are not included.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("QCT serializes")
    }

    /// Field-for-field comparison ignoring token positions.
    pub fn same_slots(&self, other: &Qct) -> bool {
        self.to_json() == other.to_json()
    }

    /// The form this structure's shape satisfies, or `None` when no template
    /// fits it.
    pub fn derived_form(subqueries: &[SubQct]) -> Option<Form> {
        if subqueries.len() >= 2 || subqueries.iter().any(|s| s.desires.len() >= 2) {
            return Some(Form::Compound);
        }
        let sub = subqueries.first()?;
        let inputs = sub.input_count();
        let clausal = sub.clauses.iter().any(|c| c.cl.is_some());
        if inputs >= 2 {
            Some(Form::Complex)
        } else if !clausal && sub.clauses.len() <= 1 {
            Some(Form::Simple)
        } else {
            None
        }
    }

    /// Checks the template invariants of this structure's declared form.
    pub fn is_well_formed(&self) -> bool {
        if Qct::derived_form(&self.subqueries) != Some(self.form) {
            return false;
        }
        if self.cc.len() + 1 != self.subqueries.len() {
            return false;
        }
        self.subqueries.iter().all(|s| {
            !s.desires.is_empty()
                && s.dcc.len() + 1 == s.desires.len()
                && s.desires.iter().all(|d| !d.is_explicit() || !d.head.is_empty())
                && s.clauses.iter().all(|c| {
                    (c.inputs.is_empty() || c.cc.len() + 1 == c.inputs.len())
                        && c.inputs.iter().all(|i| !i.head.is_empty())
                        && (!c.inputs.is_empty() || !c.rel.is_empty())
                })
                && match s.kind {
                    QueryKind::When => s.desires.iter().all(|d| d.mode == DesireMode::ImplicitTime),
                    QueryKind::Where => s.desires.iter().all(|d| d.mode == DesireMode::ImplicitLocation),
                    _ => true,
                }
        })
    }
}

#[cfg(test)]
mod tests;
