//! Concept and role expressions for the negation-free fragment
//! AL + union, full existentials, role hierarchy, inverses, nominals and
//! a datatype.
//!
//! Text form (one axiom per line):
//!
//! ```text
//! Concept := NAME | "{" NAME "}" | "(" Concept ("and" Concept)+ ")"
//!          | "(" Concept ("or" Concept)+ ")" | "(" "some" Role "." Concept ")"
//!          | "(" "all" Role "." Concept ")" | "max(" Concept ")" | "min(" Concept ")"
//!          | "Integer" | "Count" | "Thing"
//! Role    := NAME | "inv(" Role ")" | ("sometimes:" | "always:") NAME
//! Axiom   := Concept "SubClassOf" Concept | NAME "EquivalentTo" Concept
//!          | Concept "DisjointWith" Concept | NAME "SubRoleOf" NAME
//! ```
//!
//! There is deliberately no complement constructor: a negated concept cannot
//! be built.

mod normalize;
mod parse;

use std::fmt;

use serde::{Serialize, Serializer};

pub use normalize::{normalize, normalize_axiom, structurally_equal};
pub use parse::{parse_axiom, parse_concept, parse_dl, Dl, SyntaxError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemporalMode {
    Sometimes,
    Always,
}

impl TemporalMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TemporalMode::Sometimes => "sometimes",
            TemporalMode::Always => "always",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RoleExpr {
    Atomic(String),
    Inverse(Box<RoleExpr>),
    TemporalQualified(TemporalMode, String),
}

impl RoleExpr {
    pub fn atomic(name: impl Into<String>) -> Self {
        RoleExpr::Atomic(name.into())
    }

    /// The inverse of this role; inverting an inverse yields the original.
    pub fn inverse(self) -> Self {
        match self {
            RoleExpr::Inverse(inner) => *inner,
            other => RoleExpr::Inverse(Box::new(other)),
        }
    }

    pub fn is_inverse(&self) -> bool {
        matches!(self, RoleExpr::Inverse(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Optimum {
    Max,
    Min,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConceptExpr {
    Atomic(String),
    Nominal(String),
    Intersection(Vec<ConceptExpr>),
    Union(Vec<ConceptExpr>),
    Exists(RoleExpr, Box<ConceptExpr>),
    /// Value restriction. Parsed and printed, never produced by translation.
    ForAll(RoleExpr, Box<ConceptExpr>),
    /// The integer datatype.
    Integer,
    CountConcept,
    Thing,
    /// Optimality marker around an integer-valued concept. An annotation for
    /// downstream consumers rather than a logical constructor.
    Optimal(Optimum, Box<ConceptExpr>),
}

impl ConceptExpr {
    pub fn atomic(name: impl Into<String>) -> Self {
        ConceptExpr::Atomic(name.into())
    }

    pub fn nominal(name: impl Into<String>) -> Self {
        ConceptExpr::Nominal(name.into())
    }

    pub fn exists(role: RoleExpr, filler: ConceptExpr) -> Self {
        ConceptExpr::Exists(role, Box::new(filler))
    }

    /// Conjunction of `parts`; a single part is returned unchanged.
    pub fn and(parts: Vec<ConceptExpr>) -> Self {
        let mut parts = parts;
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            ConceptExpr::Intersection(parts)
        }
    }

    pub fn or(parts: Vec<ConceptExpr>) -> Self {
        let mut parts = parts;
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            ConceptExpr::Union(parts)
        }
    }

    /// Visits this expression and every sub-expression, outermost first.
    pub fn walk(&self, f: &mut impl FnMut(&ConceptExpr)) {
        f(self);
        match self {
            ConceptExpr::Intersection(xs) | ConceptExpr::Union(xs) => xs.iter().for_each(|x| x.walk(f)),
            ConceptExpr::Exists(_, c) | ConceptExpr::ForAll(_, c) | ConceptExpr::Optimal(_, c) => c.walk(f),
            _ => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Axiom {
    Subsumption(ConceptExpr, ConceptExpr),
    Definition(String, ConceptExpr),
    Disjointness(ConceptExpr, ConceptExpr),
    RoleSubsumption(String, String),
}

impl Axiom {
    pub fn concepts(&self) -> Vec<&ConceptExpr> {
        match self {
            Axiom::Subsumption(a, b) | Axiom::Disjointness(a, b) => vec![a, b],
            Axiom::Definition(_, c) => vec![c],
            Axiom::RoleSubsumption(..) => vec![],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QueryMode {
    TBoxStrong,
    TBoxWeak,
    ABoxRetrieval,
}

/// A formalized desire `D_F` together with how it is posed to a reasoner.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QueryForm {
    pub mode: QueryMode,
    pub desire: ConceptExpr,
}

impl QueryForm {
    pub const DESIRE_NAME: &'static str = "D_F";
    pub const RETRIEVAL_VARIABLE: &'static str = "?x";

    pub fn new(mode: QueryMode, desire: ConceptExpr) -> Self {
        QueryForm { mode, desire }
    }

    /// The axiom shape of this form: `D_F SubClassOf C` (strong),
    /// `C SubClassOf D_F` (weak) or `D_F EquivalentTo C` (retrieval of `D_F(?x)`).
    pub fn axiom(&self) -> Axiom {
        let df = ConceptExpr::atomic(Self::DESIRE_NAME);
        match self.mode {
            QueryMode::TBoxStrong => Axiom::Subsumption(df, self.desire.clone()),
            QueryMode::TBoxWeak => Axiom::Subsumption(self.desire.clone(), df),
            QueryMode::ABoxRetrieval => Axiom::Definition(Self::DESIRE_NAME.into(), self.desire.clone()),
        }
    }

    /// Strong and weak forms with the same concept, mirrored.
    pub fn dual(&self) -> Option<QueryForm> {
        let mode = match self.mode {
            QueryMode::TBoxStrong => QueryMode::TBoxWeak,
            QueryMode::TBoxWeak => QueryMode::TBoxStrong,
            QueryMode::ABoxRetrieval => return None,
        };
        Some(QueryForm::new(mode, self.desire.clone()))
    }
}

pub const RESERVED: [&str; 11] = [
    "and",
    "or",
    "some",
    "all",
    "Integer",
    "Count",
    "Thing",
    "SubClassOf",
    "EquivalentTo",
    "DisjointWith",
    "SubRoleOf",
];

pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && !RESERVED.contains(&name)
}

/// True when every constructor in `e` belongs to the supported fragment and
/// every name is a well-formed identifier.
///
/// Complement is unrepresentable, so this only has to police the shape of
/// what can be built: n-ary constructors with fewer than two members,
/// malformed names, and inverse roles wrapping inverse roles.
pub fn check_fragment(e: &ConceptExpr) -> bool {
    let mut ok = true;
    e.walk(&mut |c| {
        ok &= match c {
            ConceptExpr::Atomic(n) | ConceptExpr::Nominal(n) => is_valid_name(n),
            ConceptExpr::Intersection(xs) | ConceptExpr::Union(xs) => xs.len() >= 2,
            ConceptExpr::Exists(r, _) | ConceptExpr::ForAll(r, _) => role_ok(r),
            _ => true,
        }
    });
    ok
}

fn role_ok(r: &RoleExpr) -> bool {
    match r {
        RoleExpr::Atomic(n) | RoleExpr::TemporalQualified(_, n) => is_valid_name(n),
        RoleExpr::Inverse(inner) => !inner.is_inverse() && role_ok(inner),
    }
}

pub fn check_axiom(a: &Axiom) -> bool {
    match a {
        Axiom::Definition(n, _) if !is_valid_name(n) => false,
        Axiom::RoleSubsumption(a, b) => is_valid_name(a) && is_valid_name(b),
        _ => a.concepts().into_iter().all(check_fragment),
    }
}

impl fmt::Display for RoleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoleExpr::Atomic(n) => f.write_str(n),
            RoleExpr::Inverse(r) => write!(f, "inv({r})"),
            RoleExpr::TemporalQualified(m, n) => write!(f, "{}:{n}", m.as_str()),
        }
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, xs: &[ConceptExpr], op: &str) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, " {op} ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

impl fmt::Display for ConceptExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConceptExpr::Atomic(n) => f.write_str(n),
            ConceptExpr::Nominal(n) => write!(f, "{{{n}}}"),
            ConceptExpr::Intersection(xs) => write_joined(f, xs, "and"),
            ConceptExpr::Union(xs) => write_joined(f, xs, "or"),
            ConceptExpr::Exists(r, c) => write!(f, "(some {r} . {c})"),
            ConceptExpr::ForAll(r, c) => write!(f, "(all {r} . {c})"),
            ConceptExpr::Integer => f.write_str("Integer"),
            ConceptExpr::CountConcept => f.write_str("Count"),
            ConceptExpr::Thing => f.write_str("Thing"),
            ConceptExpr::Optimal(Optimum::Max, c) => write!(f, "max({c})"),
            ConceptExpr::Optimal(Optimum::Min, c) => write!(f, "min({c})"),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Subsumption(a, b) => write!(f, "{a} SubClassOf {b}"),
            Axiom::Definition(n, c) => write!(f, "{n} EquivalentTo {c}"),
            Axiom::Disjointness(a, b) => write!(f, "{a} DisjointWith {b}"),
            Axiom::RoleSubsumption(a, b) => write!(f, "{a} SubRoleOf {b}"),
        }
    }
}

impl Serialize for ConceptExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Axiom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> ConceptExpr {
        ConceptExpr::atomic(n)
    }

    #[test]
    fn serialize_examples() {
        let e = ConceptExpr::Intersection(vec![
            a("Capital"),
            ConceptExpr::exists(RoleExpr::atomic("of"), ConceptExpr::nominal("USA")),
        ]);
        assert_eq!(e.to_string(), "(Capital and (some of . {USA}))");

        let e = ConceptExpr::exists(RoleExpr::atomic("locatedIn").inverse(), ConceptExpr::nominal("California"));
        assert_eq!(e.to_string(), "(some inv(locatedIn) . {California})");

        let ax = Axiom::Subsumption(a("M1D"), a("D"));
        assert_eq!(ax.to_string(), "M1D SubClassOf D");
    }

    #[test]
    fn serialize_remaining_forms() {
        let temporal = RoleExpr::TemporalQualified(TemporalMode::Sometimes, "observedIn".into());
        assert_eq!(
            ConceptExpr::exists(temporal, a("MorningSky")).to_string(),
            "(some sometimes:observedIn . MorningSky)"
        );
        assert_eq!(ConceptExpr::Optimal(Optimum::Min, Box::new(ConceptExpr::Integer)).to_string(), "min(Integer)");
        assert_eq!(
            Axiom::Definition("D_F".into(), ConceptExpr::Union(vec![a("A"), ConceptExpr::CountConcept])).to_string(),
            "D_F EquivalentTo (A or Count)"
        );
        assert_eq!(Axiom::RoleSubsumption("r".into(), "s".into()).to_string(), "r SubRoleOf s");
        assert_eq!(Axiom::Disjointness(a("A"), ConceptExpr::Thing).to_string(), "A DisjointWith Thing");
    }

    #[test]
    fn query_form_axioms_mirror() {
        let q = QueryForm::new(QueryMode::TBoxStrong, a("Cat"));
        assert_eq!(q.axiom().to_string(), "D_F SubClassOf Cat");
        assert_eq!(q.dual().unwrap().axiom().to_string(), "Cat SubClassOf D_F");
        let r = QueryForm::new(QueryMode::ABoxRetrieval, a("Student"));
        assert_eq!(r.axiom().to_string(), "D_F EquivalentTo Student");
        assert_eq!(r.dual(), None);
    }

    #[test]
    fn double_inverse_collapses() {
        let r = RoleExpr::atomic("of").inverse().inverse();
        assert_eq!(r, RoleExpr::atomic("of"));
    }

    #[test]
    fn fragment_checks() {
        assert!(check_fragment(&ConceptExpr::Union(vec![a("A"), a("B")])));
        assert!(!check_fragment(&ConceptExpr::Intersection(vec![a("A")])));
        assert!(!check_fragment(&a("bad name")));
        assert!(!check_fragment(&a("and")));
        let nested = RoleExpr::Inverse(Box::new(RoleExpr::Inverse(Box::new(RoleExpr::atomic("r")))));
        assert!(!check_fragment(&ConceptExpr::exists(nested, a("A"))));
    }
}
