mod common;

use common::{concept, depth, ADJECTIVES};
use proptest::prelude::*;
use qct::dl::{normalize, parse_concept, structurally_equal};
use qct::text::{parse_tagged_input, serialize_tsv, tag_tokens};
use qct::translate::apply_modifier_rule;

const WORDS: [&str; 14] = [
    "the",
    "capital",
    "of",
    "river",
    "is",
    "which",
    "flows",
    "Egypt",
    "a",
    "dangerous",
    "plant",
    "in",
    "Paris",
    "many",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dl_text_round_trip(e in concept(6)) {
        prop_assert!(depth(&e) <= 6);
        let back = parse_concept(&e.to_string()).unwrap();
        prop_assert!(structurally_equal(&back, &e));
    }

    #[test]
    fn normalize_is_idempotent(e in concept(6)) {
        let once = normalize(&e);
        prop_assert_eq!(normalize(&once), once);
    }

    #[test]
    fn tagged_text_round_trip(words in prop::collection::vec(prop::sample::select(&WORDS[..]), 1..12)) {
        let raw = format!("What {}?", words.join(" "));
        let seq = tag_tokens(&raw).unwrap();
        let back = parse_tagged_input(&serialize_tsv(&seq)).unwrap();
        prop_assert_eq!(back.tokens, seq.tokens);
    }

    #[test]
    fn one_chain_axiom_per_modifier(mods in prop::collection::vec(prop::sample::select(&ADJECTIVES[..]), 0..6)) {
        let axioms = apply_modifier_rule(&mods, &["mountain"]);
        prop_assert_eq!(axioms.len(), mods.len());
    }
}
