use std::collections::HashMap;
use std::sync::OnceLock;

use super::{merge_proper_nouns, IngestError, Pos, TokenSequence};

const BUNDLED_TABLE: &str = include_str!("../../data/tagger.tsv");

/// Lexicon-plus-suffix tagger used when input arrives untagged.
#[derive(Debug, Clone)]
pub struct Tagger {
    words: HashMap<String, Pos>,
    suffixes: Vec<(String, Pos)>,
}

impl Tagger {
    /// Parses a heuristic table. Malformed lines are reported with their
    /// 1-based line number.
    pub fn from_table(table: &str) -> Result<Self, IngestError> {
        let mut words = HashMap::new();
        let mut suffixes = Vec::new();
        for (n, line) in table.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, tag) = line
                .split_once('\t')
                .ok_or_else(|| IngestError::MalformedLine { line: n + 1, reason: "missing tab separator".into() })?;
            let pos: Pos = tag
                .parse()
                .map_err(|_| IngestError::MalformedLine { line: n + 1, reason: format!("unknown POS tag `{tag}`") })?;
            match key.strip_prefix('-') {
                Some(suffix) if !suffix.is_empty() => suffixes.push((suffix.to_string(), pos)),
                _ => {
                    words.insert(key.to_lowercase(), pos);
                }
            }
        }
        Ok(Tagger { words, suffixes })
    }

    pub fn bundled() -> &'static Tagger {
        static TAGGER: OnceLock<Tagger> = OnceLock::new();
        TAGGER.get_or_init(|| Tagger::from_table(BUNDLED_TABLE).expect("bundled tagger table is valid"))
    }

    /// Tags one word given the tags already assigned to the words before it.
    fn tag_word(&self, word: &str, before: &[Pos]) -> Pos {
        let position = before.len();
        let prev = before.last().copied();
        if word.starts_with(|c: char| c.is_ascii_digit()) {
            return Pos::JJ;
        }
        let lower = word.to_lowercase();
        if let Some(&pos) = self.words.get(&lower) {
            return pos;
        }
        if position > 0 && word.starts_with(|c: char| c.is_uppercase()) {
            return Pos::NNP;
        }
        let pos = self
            .suffixes
            .iter()
            .find(|(suffix, _)| suffix_applies(&lower, suffix))
            .map(|&(_, pos)| pos)
            .unwrap_or(Pos::NN);
        // "Who barks?": a bare -s word right after a wh-pronoun is a verb.
        if pos == Pos::NNS && prev == Some(Pos::WP) {
            return Pos::VBZ;
        }
        // "the country which borders": a relative pronoun after a noun
        // introduces a verb.
        if pos == Pos::NNS && prev == Some(Pos::WDT) && position >= 2 && before[position - 2].is_noun() {
            return Pos::VBZ;
        }
        // "the speed": a determiner cannot be followed by a participle.
        if matches!(pos, Pos::VBN | Pos::VBD) && matches!(prev, Some(Pos::DT) | Some(Pos::JJ)) {
            return Pos::NN;
        }
        // "always migrates": an unknown word right after an adverb is a verb.
        if prev == Some(Pos::RB) {
            match pos {
                Pos::NNS => return Pos::VBZ,
                Pos::NN => return Pos::VB,
                _ => {}
            }
        }
        pos
    }

    pub fn tag(&self, raw: &str) -> Result<TokenSequence, IngestError> {
        let words = split_words(raw);
        let mut tagged: Vec<(String, Pos)> = Vec::with_capacity(words.len());
        let mut terminal = false;
        let last = words.len().saturating_sub(1);
        for (i, word) in words.iter().enumerate() {
            match word.as_str() {
                "?" | "." | "!" if i == last => {
                    terminal = true;
                    continue;
                }
                "?" | "." | "!" | ";" | ":" => {
                    tagged.push((word.clone(), Pos::Other));
                    continue;
                }
                "," => {
                    tagged.push((word.clone(), Pos::CC));
                    continue;
                }
                _ => {}
            }
            let before: Vec<Pos> = tagged.iter().map(|(_, p)| *p).collect();
            let pos = self.tag_word(word, &before);
            tagged.push((word.clone(), pos));
        }
        if tagged.is_empty() {
            return Err(IngestError::EmptyInput);
        }
        retag_do_support(&mut tagged);
        Ok(TokenSequence { tokens: merge_proper_nouns(tagged), terminal })
    }
}

/// "When did World War II end?": after a do-auxiliary with no verb since, a
/// final common noun is the main verb.
fn retag_do_support(tagged: &mut [(String, Pos)]) {
    let Some(aux) = tagged.iter().position(|(w, _)| matches!(w.to_lowercase().as_str(), "do" | "does" | "did")) else {
        return;
    };
    let last = tagged.len() - 1;
    if last <= aux + 1 || tagged[aux + 1..last].iter().any(|(_, p)| p.is_verb()) {
        return;
    }
    let (_, pos) = &mut tagged[last];
    if *pos == Pos::NN {
        *pos = Pos::VB;
    }
}

fn suffix_applies(word: &str, suffix: &str) -> bool {
    if !word.ends_with(suffix) || word.len() < suffix.len() + 3 {
        return false;
    }
    // plural rule skips "glass", "bus", "analysis"
    !(suffix == "s" && (word.ends_with("ss") || word.ends_with("us") || word.ends_with("is")))
}

/// Whitespace tokenization with trailing punctuation and possessive `'s`
/// split off as separate words.
fn split_words(raw: &str) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in raw.split_whitespace() {
        let mut word = chunk;
        let mut trailing = Vec::new();
        while let Some(c) = word.chars().last() {
            if matches!(c, '?' | ',' | '.' | '!' | ';' | ':') && word.len() > 1 {
                trailing.push(c.to_string());
                word = &word[..word.len() - 1];
            } else {
                break;
            }
        }
        if let Some(stem) = word.strip_suffix("'s").filter(|s| !s.is_empty()) {
            out.push(stem.to_string());
            out.push("'s".to_string());
        } else {
            out.push(word.to_string());
        }
        out.extend(trailing.into_iter().rev());
    }
    out
}

/// Tags raw text with the bundled heuristic table.
pub fn tag_tokens(raw: &str) -> Result<TokenSequence, IngestError> {
    Tagger::bundled().tag(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tags(raw: &str) -> Vec<(String, Pos)> {
        tag_tokens(raw).unwrap().tokens.into_iter().map(|t| (t.surface, t.pos)).collect()
    }

    fn pairs(expected: &[(&str, Pos)]) -> Vec<(String, Pos)> {
        expected.iter().map(|(s, p)| (s.to_string(), *p)).collect()
    }

    #[test]
    fn who_barks() {
        let seq = tag_tokens("Who barks ?").unwrap();
        assert!(seq.terminal);
        assert_eq!(tags("Who barks ?"), pairs(&[("Who", Pos::WP), ("barks", Pos::VBZ)]));
    }

    #[test]
    fn where_is_california() {
        assert_eq!(
            tags("Where is California ?"),
            pairs(&[("Where", Pos::WRB), ("is", Pos::VBZ), ("California", Pos::NNP)])
        );
    }

    #[test]
    fn attached_question_mark() {
        let seq = tag_tokens("Where is California?").unwrap();
        assert!(seq.terminal);
        assert_eq!(seq.len(), 3);
    }

    #[test]
    fn empty() {
        assert_eq!(tag_tokens(""), Err(IngestError::EmptyInput));
        assert_eq!(tag_tokens("   "), Err(IngestError::EmptyInput));
    }

    #[test]
    fn suffix_heuristics() {
        assert_eq!(
            tags("what is the tallest mountain located quickly running dangerous plants"),
            pairs(&[
                ("what", Pos::WP),
                ("is", Pos::VBZ),
                ("the", Pos::DT),
                ("tallest", Pos::JJS),
                ("mountain", Pos::NN),
                ("located", Pos::VBN),
                ("quickly", Pos::RB),
                ("running", Pos::VBG),
                ("dangerous", Pos::JJ),
                ("plants", Pos::NNS),
            ])
        );
    }

    #[test]
    fn multiword_proper_noun() {
        let seq = tag_tokens("How many people live in New York?").unwrap();
        let last = seq.tokens.last().unwrap();
        assert_eq!(last.surface, "New York");
        assert_eq!(last.lemma, "New_York");
        assert_eq!(last.pos, Pos::NNP);
    }

    #[test]
    fn possessive_split() {
        let words = split_words("What is Orlando's location?");
        assert_eq!(words, vec!["What", "is", "Orlando", "'s", "location", "?"]);
    }

    #[test]
    fn numbers_are_adjectival() {
        let seq = tag_tokens("which has 3.2 megapixel resolution").unwrap();
        assert_eq!(seq.tokens[2].pos, Pos::JJ);
        assert_eq!(seq.tokens[2].surface, "3.2");
    }

    #[test]
    fn deterministic() {
        let q = "Which atomic bomb was dropped in Japan which had caused million people to die?";
        assert_eq!(tag_tokens(q), tag_tokens(q));
    }
}
