//! Recursive-descent parser for the text syntax.
//!
//! ```text
//! formula := or ( "->" formula )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := ("!" | "[]" | "<>") unary | atom
//! atom    := IDENT | "true" | "false" | "(" formula ")"
//! ```
//!
//! Chains of `&` and `|` fold to the right; `a -> b` is read as `!a | b`.

use crate::error::{Error, Result};
use crate::formula::{Formula, RESERVED};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    Box,
    Dia,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Not => "`!`".into(),
            Tok::Box => "`[]`".into(),
            Tok::Dia => "`<>`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = bytes.get(i..i + 2);
        let (tok, len) = match c {
            b'!' => (Tok::Not, 1),
            b'&' => (Tok::And, 1),
            b'|' => (Tok::Or, 1),
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            _ if two == Some(b"[]") => (Tok::Box, 2),
            _ if two == Some(b"<>") => (Tok::Dia, 2),
            _ if two == Some(b"->") => (Tok::Arrow, 2),
            b'a'..=b'z' | b'_' => {
                let start = i;
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                (Tok::Ident(text[start..j].to_string()), j - start)
            }
            _ => {
                let found = text[i..].chars().next().unwrap_or(' ');
                return Err(Error::Syntax {
                    offset: i,
                    expected: vec!["a token".into()],
                    found: format!("`{found}`"),
                });
            }
        };
        out.push((tok, i));
        i += len;
    }
    out.push((Tok::End, bytes.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

const ATOM_START: [&str; 6] = ["identifier", "`!`", "`[]`", "`<>`", "`(`", "`true`/`false`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::or(Formula::not(lhs), rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut items = vec![self.and()?];
        while *self.peek() == Tok::Or {
            self.bump();
            items.push(self.and()?);
        }
        Ok(Formula::disj(items).expect("nonempty"))
    }

    fn and(&mut self) -> Result<Formula> {
        let mut items = vec![self.unary()?];
        while *self.peek() == Tok::And {
            self.bump();
            items.push(self.unary()?);
        }
        Ok(Formula::conj(items).expect("nonempty"))
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::Dia => {
                self.bump();
                Ok(Formula::dia(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "true" => Ok(Formula::verum()),
                    "false" => Ok(Formula::falsum()),
                    RESERVED => Err(Error::ReservedName { name, offset }),
                    _ => Ok(Formula::var(&name)),
                }
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return self.fail(&["`)`", "`&`", "`|`", "`->`"]);
                }
                self.bump();
                Ok(f)
            }
            _ => self.fail(&ATOM_START),
        }
    }
}

/// Parses one formula; the whole input must be consumed.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.fail(&["`&`", "`|`", "`->`", "end of input"]);
    }
    Ok(f)
}

/// Checks the identifier syntax for variables.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a'..='z' | '_'))
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(s, "true" | "false" | RESERVED)
}
