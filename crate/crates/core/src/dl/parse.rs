use thiserror::Error;

use super::{is_valid_name, Axiom, ConceptExpr, Optimum, RoleExpr, TemporalMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

/// Either kind of parsed line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dl {
    Concept(ConceptExpr),
    Axiom(Axiom),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    LBrace,
    RBrace,
    Dot,
    Colon,
    Word(String),
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    end: usize,
}

fn lex(text: &str) -> Result<Lexer, SyntaxError> {
    let mut toks = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '(' => Tok::Open,
            ')' => Tok::Close,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '.' => Tok::Dot,
            ':' => Tok::Colon,
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push((i, Tok::Word(word)));
                continue;
            }
            other => return Err(SyntaxError { offset: i, message: format!("unexpected character `{other}`") }),
        };
        chars.next();
        toks.push((i, tok));
    }
    Ok(Lexer { toks, end: text.len() })
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

const AXIOM_KEYWORDS: [&str; 4] = ["SubClassOf", "EquivalentTo", "DisjointWith", "SubRoleOf"];

impl Parser {
    fn new(text: &str) -> Result<Self, SyntaxError> {
        let Lexer { toks, end } = lex(text)?;
        Ok(Parser { toks, pos: 0, end })
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { offset: self.offset(), message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, ahead: usize) -> Option<&Tok> {
        self.toks.get(self.pos + ahead).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => self.err(format!("expected {what}")),
            None => self.err(format!("unexpected end of input, expected {what}")),
        }
    }

    fn name(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            Some(Tok::Word(w)) if is_valid_name(w) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            Some(Tok::Word(w)) => self.err(format!("`{w}` is reserved")),
            Some(_) => self.err("expected a name"),
            None => self.err("unexpected end of input, expected a name"),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn role(&mut self) -> Result<RoleExpr, SyntaxError> {
        match (self.peek(), self.peek_at(1)) {
            (Some(Tok::Word(w)), Some(Tok::Open)) if w == "inv" => {
                self.pos += 2;
                let inner = self.role()?;
                if inner.is_inverse() {
                    return self.err("nested inverse role");
                }
                self.expect(Tok::Close, "`)`")?;
                Ok(RoleExpr::Inverse(Box::new(inner)))
            }
            (Some(Tok::Word(w)), Some(Tok::Colon)) if w == "sometimes" || w == "always" => {
                let mode = if w == "sometimes" { TemporalMode::Sometimes } else { TemporalMode::Always };
                self.pos += 2;
                Ok(RoleExpr::TemporalQualified(mode, self.name()?))
            }
            _ => Ok(RoleExpr::Atomic(self.name()?)),
        }
    }

    fn concept(&mut self) -> Result<ConceptExpr, SyntaxError> {
        match self.peek().cloned() {
            None => self.err("unexpected end of input, expected a concept"),
            Some(Tok::LBrace) => {
                self.pos += 1;
                let n = self.name()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(ConceptExpr::Nominal(n))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                self.compound()
            }
            Some(Tok::Word(w)) => match (w.as_str(), self.peek_at(1)) {
                ("Integer", _) => {
                    self.pos += 1;
                    Ok(ConceptExpr::Integer)
                }
                ("Count", _) => {
                    self.pos += 1;
                    Ok(ConceptExpr::CountConcept)
                }
                ("Thing", _) => {
                    self.pos += 1;
                    Ok(ConceptExpr::Thing)
                }
                ("max" | "min", Some(Tok::Open)) => {
                    let opt = if w == "max" { Optimum::Max } else { Optimum::Min };
                    self.pos += 2;
                    let inner = self.concept()?;
                    self.expect(Tok::Close, "`)`")?;
                    Ok(ConceptExpr::Optimal(opt, Box::new(inner)))
                }
                _ => Ok(ConceptExpr::Atomic(self.name()?)),
            },
            Some(_) => self.err("expected a concept"),
        }
    }

    /// Body of a parenthesized form, after the opening parenthesis.
    fn compound(&mut self) -> Result<ConceptExpr, SyntaxError> {
        if let Some(Tok::Word(w)) = self.peek() {
            if (w == "some" || w == "all") && !matches!(self.peek_at(1), Some(Tok::Word(k)) if k == "and" || k == "or")
            {
                let universal = w == "all";
                self.pos += 1;
                let role = self.role()?;
                self.expect(Tok::Dot, "`.`")?;
                let filler = Box::new(self.concept()?);
                self.expect(Tok::Close, "`)`")?;
                return Ok(if universal {
                    ConceptExpr::ForAll(role, filler)
                } else {
                    ConceptExpr::Exists(role, filler)
                });
            }
        }
        let first = self.concept()?;
        let op = match self.next() {
            Some(Tok::Word(w)) if w == "and" || w == "or" => w,
            Some(_) => {
                self.pos -= 1;
                return self.err("expected `and` or `or`");
            }
            None => return self.err("unexpected end of input, expected `and` or `or`"),
        };
        let mut members = vec![first, self.concept()?];
        loop {
            match self.next() {
                Some(Tok::Close) => break,
                Some(Tok::Word(w)) if w == op => members.push(self.concept()?),
                Some(Tok::Word(w)) if w == "and" || w == "or" => {
                    self.pos -= 1;
                    return self.err("mixed `and`/`or` without parentheses");
                }
                Some(_) => {
                    self.pos -= 1;
                    return self.err(format!("expected `{op}` or `)`"));
                }
                None => return self.err("unexpected end of input, expected `)`"),
            }
        }
        Ok(if op == "and" { ConceptExpr::Intersection(members) } else { ConceptExpr::Union(members) })
    }

    fn keyword(&mut self) -> Option<String> {
        match self.peek() {
            Some(Tok::Word(w)) if AXIOM_KEYWORDS.contains(&w.as_str()) => {
                let w = w.clone();
                self.pos += 1;
                Some(w)
            }
            _ => None,
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }

    fn dl(&mut self) -> Result<Dl, SyntaxError> {
        if let (Some(Tok::Word(_)), Some(Tok::Word(k))) = (self.peek(), self.peek_at(1)) {
            if k == "SubRoleOf" {
                let lhs = self.name()?;
                self.pos += 1;
                let rhs = self.name()?;
                self.finish()?;
                return Ok(Dl::Axiom(Axiom::RoleSubsumption(lhs, rhs)));
            }
        }
        let lhs = self.concept()?;
        let Some(kw) = self.keyword() else {
            self.finish()?;
            return Ok(Dl::Concept(lhs));
        };
        let rhs = self.concept()?;
        self.finish()?;
        let axiom = match kw.as_str() {
            "SubClassOf" => Axiom::Subsumption(lhs, rhs),
            "DisjointWith" => Axiom::Disjointness(lhs, rhs),
            "EquivalentTo" => match lhs {
                ConceptExpr::Atomic(n) => Axiom::Definition(n, rhs),
                _ => return Err(SyntaxError { offset: 0, message: "definition needs a name on the left".into() }),
            },
            _ => return Err(SyntaxError { offset: 0, message: "role axiom needs names on both sides".into() }),
        };
        Ok(Dl::Axiom(axiom))
    }
}

/// Parses a concept or an axiom.
pub fn parse_dl(text: &str) -> Result<Dl, SyntaxError> {
    Parser::new(text)?.dl()
}

pub fn parse_concept(text: &str) -> Result<ConceptExpr, SyntaxError> {
    let mut p = Parser::new(text)?;
    let c = p.concept()?;
    p.finish()?;
    Ok(c)
}

pub fn parse_axiom(text: &str) -> Result<Axiom, SyntaxError> {
    match parse_dl(text)? {
        Dl::Axiom(a) => Ok(a),
        Dl::Concept(_) => Err(SyntaxError { offset: text.len(), message: "expected an axiom keyword".into() }),
    }
}
