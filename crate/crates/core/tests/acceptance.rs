//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails. Every tolerance is pinned below.

mod common;

use std::time::{Duration, Instant};

use common::{characterized, concept, crate_path, depth, jsonl, nominal_mode, translated, ADJECTIVES};
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use qct::dl::{
    check_axiom, check_fragment, normalize, parse_axiom, parse_concept, structurally_equal, ConceptExpr, RoleExpr,
};
use qct::eval::{evaluate, load_corpus, CcRow};
use qct::qct::QueryKind;
use qct::translate::{apply_modifier_rule, NominalMode};

const GOLDEN_SIZE: usize = 13;
const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const METRIC_TOLERANCE: f64 = 0.01;
const EXTENDED_MIN_SIZE: usize = 60;
const EXTENDED_MIN_RECALL: f64 = 90.0;
const REQUIRED_PRECISION: f64 = 100.0;
const MIN_ORACLES: usize = 15;
const ROUND_TRIP_CASES: u32 = 1000;
const MAX_DEPTH: u32 = 6;
const MIN_CHAIN_CASES: usize = 20;
const TEMPORAL_AXIOMS: usize = 3;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn golden_corpus() -> Outcome {
    let corpus = load_corpus(crate_path("data/golden.jsonl")).map_err(|e| e.to_string())?;
    if corpus.len() != GOLDEN_SIZE {
        return Err(format!("expected {GOLDEN_SIZE} entries, found {}", corpus.len()));
    }
    let start = Instant::now();
    let ev = evaluate(&corpus);
    let elapsed = start.elapsed();
    let total = ev.by_form.total().unwrap();
    let wrong: Vec<&str> = ev.outcomes.iter().filter(|o| !o.correct).map(|o| o.id.as_str()).collect();
    if !wrong.is_empty() {
        return Err(format!("gold mismatch on {wrong:?}"));
    }
    if total.precision != Some(REQUIRED_PRECISION) || elapsed >= GOLDEN_BUDGET {
        return Err(format!("precision {:?}, {elapsed:?}", total.precision));
    }
    Ok(format!("{}/{} exact, precision 100.00, {elapsed:?}", total.n_ci, total.n))
}

fn metric_arithmetic() -> Outcome {
    // (category, N, N_I, N_CI, recall, precision, f1) as published.
    let published = [
        ("Simple", 676, 642, 642, 94.97, 100.0, 97.42),
        ("Complex", 147, 140, 140, 95.23, 100.0, 97.55),
        ("Compound", 69, 64, 64, 92.75, 100.0, 96.23),
        ("Total", 892, 843, 843, 94.50, 100.0, 97.17),
    ];
    for (cat, n, ni, nci, re, pr, f1) in published {
        let row = CcRow::from_counts(cat, n, ni, nci);
        let close = |a: f64, b: f64| (a - b).abs() <= METRIC_TOLERANCE;
        let ok = close(row.recall, re)
            && row.precision.is_some_and(|p| close(p, pr))
            && row.f1.is_some_and(|f| close(f, f1));
        if !ok {
            return Err(format!("{cat}: got {row:?}"));
        }
    }
    let corpus = load_corpus(crate_path("data/extended.jsonl")).map_err(|e| e.to_string())?;
    if corpus.len() < EXTENDED_MIN_SIZE {
        return Err(format!("extended corpus has {} entries", corpus.len()));
    }
    let total = evaluate(&corpus).by_form.total().cloned().unwrap();
    if total.recall < EXTENDED_MIN_RECALL || total.precision != Some(REQUIRED_PRECISION) {
        return Err(format!("extended corpus recall {} precision {:?}", total.recall, total.precision));
    }
    Ok(format!(
        "{} published rows within ±{METRIC_TOLERANCE}; extended N={} recall {:.2} precision 100.00",
        published.len(),
        total.n,
        total.recall
    ))
}

fn translator_oracles() -> Outcome {
    let oracles = jsonl("tests/data/translator_oracles.jsonl");
    if oracles.len() < MIN_ORACLES {
        return Err(format!("only {} oracles", oracles.len()));
    }
    for o in &oracles {
        let q = o["query"].as_str().unwrap();
        let r = translated(q, nominal_mode(o["nominal"].as_str().unwrap()));
        let expected = parse_concept(o["desire"].as_str().unwrap()).map_err(|e| e.to_string())?;
        if !structurally_equal(&r.query.desire, &expected) {
            return Err(format!("{q}: {} != {expected}", r.query.desire));
        }
        if serde_json::to_value(r.query.mode).unwrap() != o["mode"] {
            return Err(format!("{q}: mode {:?}", r.query.mode));
        }
        let support: Vec<_> =
            o["support"].as_array().unwrap().iter().map(|a| parse_axiom(a.as_str().unwrap()).unwrap()).collect();
        if r.support != support {
            return Err(format!("{q}: support {:?}", r.support.iter().map(|a| a.to_string()).collect::<Vec<_>>()));
        }
        let rules: Vec<&str> = o["rules"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        if r.rules != rules {
            return Err(format!("{q}: rules {:?}", r.rules));
        }
    }
    Ok(format!("{} oracles structurally equal", oracles.len()))
}

fn fragment_closure() -> Outcome {
    let corpus = load_corpus(crate_path("data/extended.jsonl")).map_err(|e| e.to_string())?;
    let mut outputs = 0;
    for e in &corpus {
        for mode in [NominalMode::PaperLiteral, NominalMode::NominalStrict] {
            let r = translated(&e.query, mode);
            if !r.concepts().iter().all(check_fragment) || !r.axioms().iter().all(check_axiom) {
                return Err(format!("{}: outside the fragment", e.id));
            }
            outputs += 1;
        }
    }
    Ok(format!("{outputs}/{outputs} translations inside the fragment"))
}

fn dl_round_trip() -> Outcome {
    let mut runner =
        TestRunner::new(Config { cases: ROUND_TRIP_CASES, failure_persistence: None, ..Config::default() });
    runner
        .run(&concept(MAX_DEPTH), |e| {
            let back = parse_concept(&e.to_string()).map_err(|err| TestCaseError::fail(err.to_string()))?;
            if depth(&e) > MAX_DEPTH || !structurally_equal(&back, &e) {
                return Err(TestCaseError::fail(format!("{e}")));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{ROUND_TRIP_CASES} generated expressions (depth <= {MAX_DEPTH}) round-trip"))
}

fn is_count_shape(e: &ConceptExpr) -> bool {
    let ConceptExpr::Intersection(parts) = e else { return false };
    match parts.as_slice() {
        [ConceptExpr::CountConcept, ConceptExpr::Exists(RoleExpr::Inverse(r), _)] => {
            **r == RoleExpr::atomic("hasCount")
        }
        _ => false,
    }
}

fn structural_invariants() -> Outcome {
    // Modifier chain: one axiom per modifier, directly and through the translator.
    let mut cases = 0;
    for k in 0..ADJECTIVES.len() * 2 {
        let n = k % 5;
        let mods: Vec<&str> = (0..n).map(|i| ADJECTIVES[(k + 3 * i) % ADJECTIVES.len()]).collect();
        if apply_modifier_rule(&mods, &["mountain"]).len() != n {
            return Err(format!("chain over {mods:?}"));
        }
        cases += 1;
    }
    for adjs in [&["dangerous"][..], &["dangerous", "ancient"], &["famous", "dangerous", "ancient"]] {
        let q = format!("What are some {} plants?", adjs.join(" "));
        let qct = characterized(&q);
        let modifiers: usize = qct.subqueries[0].inputs().map(|i| i.modifiers.len()).sum();
        let r = translated(&q, NominalMode::PaperLiteral);
        if modifiers != adjs.len() || r.support.len() != modifiers {
            return Err(format!("{q}: {modifiers} modifiers, {} axioms", r.support.len()));
        }
        cases += 1;
    }
    if cases < MIN_CHAIN_CASES {
        return Err(format!("only {cases} chain cases"));
    }
    // Temporal adverbials: exactly three support axioms.
    let mut temporal = 0;
    for adv in ["sometimes", "always", "often", "usually"] {
        for (subject, rel, object) in
            [("What can be", "observed in", "the morning sky"), ("Which bird", "migrates to", "Africa")]
        {
            let q = format!("{subject} {adv} {rel} {object}?");
            let r = translated(&q, NominalMode::NominalStrict);
            if !r.rules.iter().any(|x| x == "temporal-adverbial") || r.support.len() != TEMPORAL_AXIOMS {
                return Err(format!("{q}: {:?}", r.support.iter().map(|a| a.to_string()).collect::<Vec<_>>()));
            }
            temporal += 1;
        }
    }
    // Quantitative how: Count and (some inv(hasCount) . ...).
    let corpus = load_corpus(crate_path("data/extended.jsonl")).map_err(|e| e.to_string())?;
    let mut quantitative = 0;
    for e in corpus.iter().filter(|e| e.kind == QueryKind::HowQuantitative) {
        let r = translated(&e.query, NominalMode::PaperLiteral);
        if !is_count_shape(&r.query.desire) {
            return Err(format!("{}: {}", e.id, r.query.desire));
        }
        quantitative += 1;
    }
    Ok(format!("{cases} chain cases, {temporal} temporal cases, {quantitative} count shapes"))
}

fn split_union() -> Outcome {
    let splits = jsonl("tests/data/splits.jsonl");
    for s in &splits {
        let q = s["compound"].as_str().unwrap();
        let whole = translated(q, NominalMode::NominalStrict);
        let parts: Vec<ConceptExpr> = s["parts"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| translated(p.as_str().unwrap(), NominalMode::NominalStrict).query.desire)
            .collect();
        if whole.sub.len() != parts.len() {
            return Err(format!("{q}: split into {} parts", whole.sub.len()));
        }
        let union = ConceptExpr::or(parts);
        if normalize(&whole.query.desire) != normalize(&union) {
            return Err(format!("{q}: {} != {union}", whole.query.desire));
        }
    }
    Ok(format!("{} compounds equal the union of their parts", splits.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 7] = [
        ("1 golden-corpus characterization", golden_corpus),
        ("2 metric arithmetic and extended recall", metric_arithmetic),
        ("3 translator oracle suite", translator_oracles),
        ("4 fragment closure", fragment_closure),
        ("5 DL round trip", dl_round_trip),
        ("6 structural invariants", structural_invariants),
        ("7 split/union equivalence", split_union),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                println!("FAIL  {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
