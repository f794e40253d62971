use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Part-of-speech tags understood by the characterizer.
///
/// This is a closed subset of the Penn Treebank tag set. Tags outside the
/// subset that carry the same role are folded in when parsing (`TO` and `RP`
/// become [`Pos::IN`], `CD` becomes [`Pos::JJ`], and so on).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pos {
    NN,
    NNS,
    NNP,
    NNPS,
    JJ,
    JJS,
    RB,
    VB,
    VBZ,
    VBD,
    VBG,
    VBN,
    /// Preposition; written `PP` in templates and `IN` in Penn Treebank.
    IN,
    DT,
    WDT,
    WP,
    WRB,
    CC,
    MD,
    Other,
}

impl Pos {
    pub fn as_str(self) -> &'static str {
        match self {
            Pos::NN => "NN",
            Pos::NNS => "NNS",
            Pos::NNP => "NNP",
            Pos::NNPS => "NNPS",
            Pos::JJ => "JJ",
            Pos::JJS => "JJS",
            Pos::RB => "RB",
            Pos::VB => "VB",
            Pos::VBZ => "VBZ",
            Pos::VBD => "VBD",
            Pos::VBG => "VBG",
            Pos::VBN => "VBN",
            Pos::IN => "IN",
            Pos::DT => "DT",
            Pos::WDT => "WDT",
            Pos::WP => "WP",
            Pos::WRB => "WRB",
            Pos::CC => "CC",
            Pos::MD => "MD",
            Pos::Other => "other",
        }
    }

    pub fn is_noun(self) -> bool {
        matches!(self, Pos::NN | Pos::NNS | Pos::NNP | Pos::NNPS)
    }

    pub fn is_proper(self) -> bool {
        matches!(self, Pos::NNP | Pos::NNPS)
    }

    pub fn is_verb(self) -> bool {
        matches!(self, Pos::VB | Pos::VBZ | Pos::VBD | Pos::VBN | Pos::MD)
    }

    pub fn is_wh(self) -> bool {
        matches!(self, Pos::WDT | Pos::WP | Pos::WRB)
    }

    pub const ALL: [Pos; 20] = [
        Pos::NN,
        Pos::NNS,
        Pos::NNP,
        Pos::NNPS,
        Pos::JJ,
        Pos::JJS,
        Pos::RB,
        Pos::VB,
        Pos::VBZ,
        Pos::VBD,
        Pos::VBG,
        Pos::VBN,
        Pos::IN,
        Pos::DT,
        Pos::WDT,
        Pos::WP,
        Pos::WRB,
        Pos::CC,
        Pos::MD,
        Pos::Other,
    ];
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTag(pub String);

impl FromStr for Pos {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let pos = match s {
            "NN" | "FW" => Pos::NN,
            "NNS" => Pos::NNS,
            "NNP" => Pos::NNP,
            "NNPS" => Pos::NNPS,
            "JJ" | "JJR" | "CD" => Pos::JJ,
            "JJS" => Pos::JJS,
            "RB" | "RBR" | "RBS" => Pos::RB,
            "VB" | "VBP" => Pos::VB,
            "VBZ" => Pos::VBZ,
            "VBD" => Pos::VBD,
            "VBG" => Pos::VBG,
            "VBN" => Pos::VBN,
            "IN" | "PP" | "TO" | "RP" => Pos::IN,
            "DT" | "PDT" => Pos::DT,
            "WDT" => Pos::WDT,
            "WP" | "WP$" => Pos::WP,
            "WRB" => Pos::WRB,
            "CC" | "," => Pos::CC,
            "MD" => Pos::MD,
            "other" | "PRP" | "PRP$" | "POS" | "EX" | "UH" | "SYM" | "LS" | ":" => Pos::Other,
            _ => return Err(UnknownTag(s.to_string())),
        };
        Ok(pos)
    }
}

/// One tagged and lemmatized token of a query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
    pub index: usize,
}

impl Token {
    /// Builds a token with its lemma already normalized.
    pub fn new(surface: impl Into<String>, pos: Pos, index: usize) -> Self {
        super::normalize(Token { surface: surface.into(), lemma: String::new(), pos, index })
    }
}

/// A tagged query. `terminal` records a trailing question mark.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSequence {
    pub tokens: Vec<Token>,
    pub terminal: bool,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn has_wh_token(&self) -> bool {
        self.tokens.iter().any(|t| super::WH_WORDS.contains(&t.lemma.as_str()))
    }

    /// Surface text joined with single spaces, with the terminal mark appended.
    pub fn text(&self) -> String {
        let mut s = self.tokens.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ");
        if self.terminal {
            s.push_str(" ?");
        }
        s
    }
}
