//! Text forms for words, polycyclic pairs, extension elements, product
//! expressions, and generator streams.
//!
//! Grammar:
//!
//! ```text
//! word   := '[' (letters | decimals) ']'      letters: 'a'..'z' (indices 0..25)
//!                                             decimals: '.'-separated indices
//! pelem  := '0' | '1' | word '^-1' word
//! elem   := '0' | '(' sref ',' pelem ')'      sref: 's' index | element name
//! expr   := elem ('*' elem)*
//! gens   := ('p' index | 'q' index)*          whitespace separated
//! ```
//!
//! Rendering is canonical (the identity pair prints as `1`, indices print
//! as `s<i>`), so parse-then-render is a fixpoint.

use thiserror::Error;

use crate::brx::{BrxContext, BrxElem};
use crate::polycyclic::{GenToken, PElem, PPair};
use crate::word::{Alphabet, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Self {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, expected: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(b) if b == expected => {
                self.pos += 1;
                Ok(())
            }
            found => Err(self.err(format!(
                "expected '{}'{}",
                expected as char,
                match found {
                    Some(b) => format!(", found '{}'", b as char),
                    None => ", found end of input".to_string(),
                }
            ))),
        }
    }

    fn eat_str(&mut self, expected: &str) -> Result<(), ParseError> {
        for &b in expected.as_bytes() {
            self.eat(b)?;
        }
        Ok(())
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a decimal number".to_string()));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digits are utf-8")
            .parse()
            .map_err(|_| ParseError {
                pos: start,
                message: "number out of range".to_string(),
            })
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("trailing input".to_string()));
        }
        Ok(())
    }

    fn err(&self, message: String) -> ParseError {
        ParseError {
            pos: self.pos,
            message,
        }
    }
}

fn word_inner(cur: &mut Cursor<'_>, alphabet: Alphabet) -> Result<Word, ParseError> {
    cur.eat(b'[')?;
    let mut letters: Vec<u32> = Vec::new();
    match cur.peek() {
        Some(b']') => {}
        Some(b) if b.is_ascii_lowercase() => {
            while matches!(cur.peek(), Some(b) if b.is_ascii_lowercase()) {
                letters.push((cur.bump().expect("peeked") - b'a') as u32);
            }
        }
        Some(b) if b.is_ascii_digit() => loop {
            let pos = cur.pos;
            let n = cur.number()?;
            let letter = u32::try_from(n).map_err(|_| ParseError {
                pos,
                message: "letter index out of range".to_string(),
            })?;
            letters.push(letter);
            if cur.peek() == Some(b'.') {
                cur.bump();
            } else {
                break;
            }
        },
        _ => return Err(cur.err("expected letters, indices, or ']'".to_string())),
    }
    let close = cur.pos;
    cur.eat(b']')?;
    alphabet.word(&letters).map_err(|e| ParseError {
        pos: close,
        message: e.to_string(),
    })
}

fn pelem_inner(cur: &mut Cursor<'_>, alphabet: Alphabet) -> Result<PElem, ParseError> {
    match cur.peek() {
        Some(b'0') => {
            cur.bump();
            Ok(PElem::zero(alphabet))
        }
        Some(b'1') => {
            cur.bump();
            Ok(PElem::one(alphabet))
        }
        Some(b'[') => {
            let up = word_inner(cur, alphabet)?;
            cur.eat_str("^-1")?;
            let down = word_inner(cur, alphabet)?;
            Ok(PElem::Pair(
                PPair::new(up, down).expect("same alphabet by construction"),
            ))
        }
        _ => Err(cur.err("expected '0', '1', or '[word]^-1[word]'".to_string())),
    }
}

fn sref_inner(cur: &mut Cursor<'_>, ctx: &BrxContext) -> Result<usize, ParseError> {
    let start = cur.pos;
    // "s<digits>" is an index; any other identifier is looked up in the
    // monoid's element names.
    if cur.peek() == Some(b's')
        && matches!(cur.bytes.get(cur.pos + 1), Some(b) if b.is_ascii_digit())
    {
        cur.bump();
        let index = cur.number()?;
        if index >= ctx.monoid().size() {
            return Err(ParseError {
                pos: start,
                message: format!(
                    "element index {index} out of range for size {}",
                    ctx.monoid().size()
                ),
            });
        }
        return Ok(index);
    }
    while matches!(cur.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
        cur.bump();
    }
    if cur.pos == start {
        return Err(cur.err("expected 's<index>' or an element name".to_string()));
    }
    let name = std::str::from_utf8(&cur.bytes[start..cur.pos]).expect("ascii");
    ctx.monoid()
        .element_names()
        .and_then(|names| names.iter().position(|n| n == name))
        .ok_or_else(|| ParseError {
            pos: start,
            message: format!("unknown element name '{name}'"),
        })
}

fn elem_inner(cur: &mut Cursor<'_>, ctx: &BrxContext) -> Result<BrxElem, ParseError> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'0') => {
            cur.bump();
            Ok(BrxElem::Zero)
        }
        Some(b'(') => {
            cur.bump();
            cur.skip_ws();
            let s = sref_inner(cur, ctx)?;
            cur.skip_ws();
            cur.eat(b',')?;
            cur.skip_ws();
            let ppos = cur.pos;
            let p = pelem_inner(cur, ctx.alphabet())?;
            cur.skip_ws();
            cur.eat(b')')?;
            match p {
                PElem::Zero(_) => Err(ParseError {
                    pos: ppos,
                    message: "the polycyclic zero cannot appear inside a pair; write '0'"
                        .to_string(),
                }),
                PElem::Pair(pair) => Ok(BrxElem::pair(s, pair)),
            }
        }
        _ => Err(cur.err("expected '0' or '(s<index>,pelem)'".to_string())),
    }
}

pub fn parse_word(input: &str, alphabet: Alphabet) -> Result<Word, ParseError> {
    let mut cur = Cursor::new(input);
    cur.skip_ws();
    let w = word_inner(&mut cur, alphabet)?;
    cur.expect_end()?;
    Ok(w)
}

pub fn parse_pelem(input: &str, alphabet: Alphabet) -> Result<PElem, ParseError> {
    let mut cur = Cursor::new(input);
    cur.skip_ws();
    let p = pelem_inner(&mut cur, alphabet)?;
    cur.expect_end()?;
    Ok(p)
}

pub fn parse_elem(input: &str, ctx: &BrxContext) -> Result<BrxElem, ParseError> {
    let mut cur = Cursor::new(input);
    let e = elem_inner(&mut cur, ctx)?;
    cur.expect_end()?;
    Ok(e)
}

/// A `*`-separated product of element literals, left to right.
pub fn parse_product(input: &str, ctx: &BrxContext) -> Result<Vec<BrxElem>, ParseError> {
    let mut cur = Cursor::new(input);
    let mut out = vec![elem_inner(&mut cur, ctx)?];
    loop {
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'*') => {
                cur.bump();
                out.push(elem_inner(&mut cur, ctx)?);
            }
            Some(b) => {
                return Err(cur.err(format!(
                    "expected '*' or end of input, found '{}'",
                    b as char
                )))
            }
        }
    }
    Ok(out)
}

/// Whitespace-separated generator tokens `p<i>` / `q<i>`.
pub fn parse_generators(input: &str) -> Result<Vec<GenToken>, ParseError> {
    let mut cur = Cursor::new(input);
    let mut out = Vec::new();
    loop {
        cur.skip_ws();
        let Some(b) = cur.peek() else { break };
        let tag = cur.pos;
        cur.bump();
        let index = cur.number()?;
        let index = u32::try_from(index).map_err(|_| ParseError {
            pos: tag,
            message: "generator index out of range".to_string(),
        })?;
        match b {
            b'p' => out.push(GenToken::Gen(index)),
            b'q' => out.push(GenToken::Inv(index)),
            other => {
                return Err(ParseError {
                    pos: tag,
                    message: format!("unknown token start '{}'", other as char),
                })
            }
        }
    }
    Ok(out)
}
