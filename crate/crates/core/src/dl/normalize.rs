use super::{Axiom, ConceptExpr, RoleExpr};

/// Canonical form: nested intersections and unions are flattened, members
/// are deduplicated and sorted by their printed form, singleton lists
/// collapse, and double inverses cancel.
pub fn normalize(e: &ConceptExpr) -> ConceptExpr {
    match e {
        ConceptExpr::Intersection(xs) => n_ary(xs, true),
        ConceptExpr::Union(xs) => n_ary(xs, false),
        ConceptExpr::Exists(r, c) => ConceptExpr::Exists(normalize_role(r), Box::new(normalize(c))),
        ConceptExpr::ForAll(r, c) => ConceptExpr::ForAll(normalize_role(r), Box::new(normalize(c))),
        ConceptExpr::Optimal(o, c) => ConceptExpr::Optimal(*o, Box::new(normalize(c))),
        other => other.clone(),
    }
}

fn normalize_role(r: &RoleExpr) -> RoleExpr {
    match r {
        RoleExpr::Inverse(inner) => match normalize_role(inner) {
            RoleExpr::Inverse(x) => *x,
            x => RoleExpr::Inverse(Box::new(x)),
        },
        other => other.clone(),
    }
}

fn n_ary(xs: &[ConceptExpr], conj: bool) -> ConceptExpr {
    let mut flat = Vec::with_capacity(xs.len());
    for x in xs {
        match (normalize(x), conj) {
            (ConceptExpr::Intersection(inner), true) | (ConceptExpr::Union(inner), false) => flat.extend(inner),
            (other, _) => flat.push(other),
        }
    }
    let mut keyed: Vec<(String, ConceptExpr)> = flat.into_iter().map(|c| (c.to_string(), c)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    let members: Vec<ConceptExpr> = keyed.into_iter().map(|(_, c)| c).collect();
    if conj {
        ConceptExpr::and(members)
    } else {
        ConceptExpr::or(members)
    }
}

pub fn normalize_axiom(a: &Axiom) -> Axiom {
    match a {
        Axiom::Subsumption(l, r) => Axiom::Subsumption(normalize(l), normalize(r)),
        Axiom::Disjointness(l, r) => Axiom::Disjointness(normalize(l), normalize(r)),
        Axiom::Definition(n, c) => Axiom::Definition(n.clone(), normalize(c)),
        Axiom::RoleSubsumption(..) => a.clone(),
    }
}

pub fn structurally_equal(a: &ConceptExpr, b: &ConceptExpr) -> bool {
    normalize(a) == normalize(b)
}
