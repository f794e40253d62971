use super::*;
use crate::text::tag_tokens;

/// Compact rendering: `Form | kind r1 D[mode:q|m|head] C{cl:rel:inputs} ...`.
pub(crate) fn render(q: &Qct) -> String {
    let mut parts = vec![q.form.as_str().to_string()];
    for s in &q.subqueries {
        let mut p = format!("{} r1={}", s.kind.as_str(), s.r1.as_deref().unwrap_or("-"));
        for d in &s.desires {
            p +=
                &format!(" D[{:?}:{}|{}|{}]", d.mode, d.quantifiers.join(" "), d.modifiers.join(" "), d.head.join(" "));
        }
        for c in &s.clauses {
            let inputs: Vec<String> = c
                .inputs
                .iter()
                .map(|i| {
                    let mut x = i.modifiers.iter().chain(&i.head).cloned().collect::<Vec<_>>().join(" ");
                    if i.proper {
                        x.push('*');
                    }
                    x
                })
                .collect();
            p += &format!(" C{{{}:{}:{}}}", c.cl.as_deref().unwrap_or("-"), c.rel.join("_"), inputs.join(","));
        }
        p += &format!(" {:?}", s.subject);
        parts.push(p);
    }
    parts.join(" | ")
}

fn ch(q: &str) -> String {
    match characterize(&tag_tokens(q).unwrap()) {
        Ok(qct) => render(&qct),
        Err(e) => format!("ERR {e}"),
    }
}

fn check(q: &str, expected: &str) {
    assert_eq!(ch(q), expected, "{q}");
}

#[test]
fn simple_table_rows() {
    check(
        "What is the capital of Gujarat?",
        "Simple | What r1=is D[Explicit:the||capital] C{-:of:Gujarat*} DesireIsSubject",
    );
    check(
        "Which is the highest mountain in world?",
        "Simple | Which r1=is D[Explicit:the|highest|mountain] C{-:in:world} DesireIsSubject",
    );
    check(
        "How many legs does a millipede have?",
        "Simple | HowQuantitative r1=- D[ImplicitCount:||leg] C{-:does_have:millipede} InputIsSubject",
    );
    check("What are some dangerous plants?", "Simple | What r1=are D[Implicit:||] C{-::dangerous plant} NoRelation");
    check("Where is California?", "Simple | Where r1=is D[ImplicitLocation:||] C{-::California*} NoRelation");
}

#[test]
fn implicit_desires() {
    check(
        "What is converted into diamond?",
        "Simple | What r1=is D[Implicit:||] C{-:converted_into:diamond} DesireIsSubject",
    );
    check(
        "When is the next solar eclipse?",
        "Simple | When r1=is D[ImplicitTime:||] C{-::next solar eclipse} NoRelation",
    );
    check("What is a tomb?", "Simple | What r1=is D[ImplicitDefinition:||] C{-::tomb} NoRelation");
    check("Who barks?", "Simple | Who r1=- D[Implicit:||] C{-:barks:} DesireIsSubject");
}

#[test]
fn subject_binding() {
    check(
        "Which country is California located in?",
        "Simple | Which r1=is D[Explicit:||country] C{-:located_in:California*} InputIsSubject",
    );
    check(
        "Which animal is the zebra eaten by?",
        "Simple | Which r1=is D[Explicit:||animal] C{-:eaten_by:zebra} InputIsSubject",
    );
}

#[test]
fn complex_rows() {
    check(
        "What is most populous democracy in the Caribbean which is geographically the largest as well?",
        "Complex | What r1=is D[Explicit:|most populous|democracy] C{-:in:Caribbean*} \
         C{which:is:geographically largest} DesireIsSubject",
    );
    check(
        "What is the distance between Missouri and Texas?",
        "Complex | What r1=is D[Explicit:the||distance] C{-:between:Missouri*,Texas*} DesireIsSubject",
    );
    check(
        "In which country is the state capital of Missouri located?",
        "Complex | Which r1=is D[Explicit:||country] C{-:located_in:state capital} C{-:of:Missouri*} \
         InputIsSubject",
    );
    check(
        "Who was the British Prime Minister who was elected two times one of which was during World War II?",
        "Complex | Who r1=was D[Explicit:the||British_Prime_Minister] C{who:was_elected:two time} \
         C{which:was_during:World_War_II*} DesireIsSubject",
    );
}

#[test]
fn compound_rows() {
    check(
        "What is shape and size of baloon when air comes out?",
        "Compound | What r1=is D[Explicit:||shape] D[Explicit:||size] C{-:of:baloon} \
         C{when:comes_out:air} DesireIsSubject",
    );
    check(
        "Which volcanoes are active and which ones are dormant?",
        "Compound | Which r1=- D[Explicit:||volcano] C{-:are_active:} DesireIsSubject \
         | Which r1=- D[Explicit:||volcano] C{-:are_dormant:} DesireIsSubject",
    );
    check(
        "How long will an electric car run and how fast can it go?",
        "Compound | HowComputational r1=will D[ImplicitCount:|long|] C{-:run:electric car} InputIsSubject \
         | HowComputational r1=can D[ImplicitCount:|fast|] C{-:go:electric car} InputIsSubject",
    );
    check(
        "What is the travelling charge to Bombay and hotel_rent in Bombay?",
        "Compound | What r1=is D[Explicit:the|travelling|charge] C{-:to:Bombay*} DesireIsSubject \
         | What r1=is D[Explicit:||hotel_rent] C{-:in:Bombay*} DesireIsSubject",
    );
    check(
        "Where is Paris and when was it founded?",
        "Compound | Where r1=is D[ImplicitLocation:||] C{-::Paris*} NoRelation \
         | When r1=was D[ImplicitTime:||] C{-:founded:Paris*} InputIsSubject",
    );
}

#[test]
fn input_conjunction_is_complex() {
    check(
        "Who were the foremost authorities in discovering algebraic formulas, theorems, and/or expressions?",
        "Complex | Who r1=were D[Explicit:the|foremost|authority] \
         C{-:in_discovering:algebraic formula,theorem,expression} DesireIsSubject",
    );
    check(
        "What happens when you mix potassium permanganate and glycerin?",
        "Complex | What r1=- D[ImplicitActivity:||happens] C{when:mix:potassium permanganate,glycerin} \
         DesireIsSubject",
    );
}

#[test]
fn kinds() {
    let kind = |q: &str| classify_query_kind(&tag_tokens(q).unwrap());
    assert_eq!(kind("What is the capital of Gujarat?"), Ok(QueryKind::What));
    assert_eq!(kind("How many legs does a millipede have?"), Ok(QueryKind::HowQuantitative));
    assert_eq!(kind("How far is Tampa from Miami?"), Ok(QueryKind::HowComputational));
    assert_eq!(kind("How is Joe?"), Ok(QueryKind::HowState));
    assert!(matches!(kind("Why is the grass green?"), Err(CharacterizeError::UnsupportedKind(_))));
    assert!(matches!(kind("How is a cake made?"), Err(CharacterizeError::UnsupportedKind(_))));
    assert_eq!(kind("Name the capital of France."), Err(CharacterizeError::NoWhToken));
}

#[test]
fn dependency_examples() {
    let sub = |q: &str| characterize(&tag_tokens(q).unwrap()).unwrap().subqueries.remove(0);
    let bomb = sub("Which atomic bomb was dropped in Japan which had caused million people to die?");
    assert_eq!(detect_clause_dependency(&bomb, 1), Dependency::DesireDependency);
    let slr = sub("What is the price of SLR camera which has 3.2 megapixel resolution?");
    assert_eq!(detect_clause_dependency(&slr, 1), Dependency::InputDependency);
    let dist = sub("What is the distance between Missouri and Texas?");
    assert_eq!(detect_clause_dependency(&dist, 0), Dependency::None);
}

#[test]
fn explicit_desire_between_spans() {
    let seq = tag_tokens("What is the capital of USA?").unwrap();
    let d = extract_explicit_desire(&seq, (1, 1), (4, 4));
    assert_eq!(d.head, vec!["capital"]);
    assert_eq!(d.quantifiers, vec!["the"]);
    let empty = extract_explicit_desire(&seq, (1, 1), (2, 2));
    assert!(empty.is_explicit() && empty.head.is_empty());
    let seq = tag_tokens("Which is the highest mountain in world?").unwrap();
    let d = extract_explicit_desire(&seq, (1, 1), (5, 5));
    assert_eq!((d.head, d.modifiers), (vec!["mountain".to_string()], vec!["highest".to_string()]));
}

#[test]
fn simple_desire_lies_between_r1_and_r2() {
    for q in
        ["What is the capital of Gujarat?", "Which is the highest mountain in world?", "What is the color of grass?"]
    {
        let s = characterize(&tag_tokens(q).unwrap()).unwrap().subqueries.remove(0);
        let (r1, d, r2) = (s.r1_span.unwrap(), s.desires[0].span.unwrap(), s.clauses[0].rel_span.unwrap());
        assert!(r1.1 < d.0 && d.1 < r2.0, "{q}");
    }
}

#[test]
fn forms_are_checked() {
    let seq = tag_tokens("What is the distance between Missouri and Texas?").unwrap();
    assert!(characterize_complex(&seq).is_ok());
    assert!(matches!(characterize_simple(&seq), Err(CharacterizeError::CharacterizationFailure(_))));
    assert!(characterize(&seq).unwrap().is_well_formed());
}

#[test]
fn failures_are_total() {
    for q in ["What is?", "What the and?", "Which of?"] {
        let r = characterize(&tag_tokens(q).unwrap());
        assert!(matches!(r, Err(CharacterizeError::CharacterizationFailure(_))), "{q}: {r:?}");
    }
}

#[test]
fn json_round_trip_drops_spans() {
    let q = characterize(&tag_tokens("Which country is California located in?").unwrap()).unwrap();
    let back: Qct = serde_json::from_value(q.to_json()).unwrap();
    assert!(back.same_slots(&q));
    assert_eq!(back.subqueries[0].r1_span, None);
    assert_eq!(q.to_json()["subqueries"][0]["r1"], "is");
}
