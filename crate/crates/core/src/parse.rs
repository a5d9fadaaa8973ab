//! Text syntax for elements.
//!
//! ```text
//! sum     := [+|-] product { (+|-) product }
//! product := factor { [*] factor }
//! factor  := atom [^ n]
//! atom    := n [/ n] | names | ( sum )
//! tensor  := [+|-] product (x) product { (+|-) product (x) product }
//! ```
//!
//! A run of identifier characters is split into generator names by longest
//! match, so `ab` is `a·b` and `x1x2` is `x1·x2`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::freealg::{free_add, free_mul, free_sub, Alphabet, FreeElement, Rational, Word};

/// `line` is 1-based; 0 means "no line context".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", if *line > 0 { format!("line {line}: ") } else { String::new() })]
pub struct ParseError {
    pub line: usize,
    pub message: String,
    /// Set when the failure is an identifier that names no generator.
    pub unknown_generator: Option<String>,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
            unknown_generator: None,
        }
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = line;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Tensor,
}

fn tokenize(text: &str, tensor_mode: bool) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if tensor_mode && chars[i..].starts_with(&['(', 'x', ')']) {
            out.push(Token::Tensor);
            i += 3;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Num(digits.parse().expect("digits")));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
            continue;
        }
        out.push(match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => return Err(ParseError::new(0, format!("unexpected character `{other}`"))),
        });
        i += 1;
    }
    Ok(out)
}

/// Splits an identifier run into generator indices, longest name first.
pub fn split_names(alphabet: &Alphabet, run: &str) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    let mut rest = run;
    while !rest.is_empty() {
        let best = alphabet
            .generators()
            .iter()
            .filter(|g| rest.starts_with(g.name.as_str()))
            .max_by_key(|g| g.name.len())
            .ok_or_else(|| ParseError {
                unknown_generator: Some(rest.to_string()),
                ..ParseError::new(0, format!("unknown generator in `{run}`"))
            })?;
        out.push(best.index);
        rest = &rest[best.name.len()..];
    }
    Ok(out)
}

struct Parser<'a> {
    alphabet: &'a Arc<Alphabet>,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::new(0, format!("unexpected {t:?}"))),
        }
    }

    fn scalar(&self, r: Rational) -> FreeElement {
        FreeElement::one(self.alphabet.clone()).scaled(&r)
    }

    fn mul(&self, x: &FreeElement, y: &FreeElement) -> FreeElement {
        free_mul(x, y).expect("one alphabet")
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(Token::Plus) => {
                self.pos += 1;
                Some(false)
            }
            Some(Token::Minus) => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<FreeElement, ParseError> {
        let negative = self.sign().unwrap_or(false);
        let mut acc = self.product()?;
        if negative {
            acc = acc.scaled(&-Rational::one());
        }
        while let Some(neg) = self.sign() {
            let p = self.product()?;
            acc = if neg { free_sub(&acc, &p) } else { free_add(&acc, &p) }.expect("one alphabet");
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::LParen)
        )
    }

    fn product(&mut self) -> Result<FreeElement, ParseError> {
        if !self.starts_factor() {
            return Err(ParseError::new(0, "expected a term"));
        }
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
                let f = self.factor()?;
                acc = self.mul(&acc, &f);
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = self.mul(&acc, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<FreeElement, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let n = match self.bump() {
            Some(Token::Num(n)) => u32::try_from(n)
                .map_err(|_| ParseError::new(0, "exponent too large"))?,
            _ => return Err(ParseError::new(0, "expected an exponent after `^`")),
        };
        let mut out = FreeElement::one(self.alphabet.clone());
        for _ in 0..n {
            out = self.mul(&out, &base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<FreeElement, ParseError> {
        match self.bump() {
            Some(Token::Num(p)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    let q = match self.bump() {
                        Some(Token::Num(q)) if !q.is_zero() => q,
                        _ => return Err(ParseError::new(0, "expected a nonzero denominator")),
                    };
                    Ok(self.scalar(Rational::new(p, q)))
                } else {
                    Ok(self.scalar(Rational::from_integer(p)))
                }
            }
            Some(Token::Ident(run)) => {
                let letters = split_names(self.alphabet, &run)?;
                let word: Word = self
                    .alphabet
                    .word(letters)
                    .map_err(|e| ParseError::new(0, e.to_string()))?;
                Ok(FreeElement::from_word(self.alphabet.clone(), word, Rational::one()))
            }
            Some(Token::LParen) => {
                let inner = self.sum()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(ParseError::new(0, "unbalanced parenthesis")),
                }
            }
            Some(t) => Err(ParseError::new(0, format!("unexpected {t:?}"))),
            None => Err(ParseError::new(0, "unexpected end of input")),
        }
    }
}

/// Parses an element of the free algebra.
pub fn parse_free(alphabet: &Arc<Alphabet>, text: &str) -> Result<FreeElement, ParseError> {
    let mut p = Parser {
        alphabet,
        tokens: tokenize(text, false)?,
        pos: 0,
    };
    let out = p.sum()?;
    p.expect_end()?;
    Ok(out)
}

/// One term `c · u (x) v` of a tensor expression, factors not yet reduced.
pub type TensorTerm = (Rational, FreeElement, FreeElement);

/// Parses `u (x) v + ...`. Inside tensor expressions `(x)` is always the
/// tensor sign.
pub fn parse_tensor(alphabet: &Arc<Alphabet>, text: &str) -> Result<Vec<TensorTerm>, ParseError> {
    let mut p = Parser {
        alphabet,
        tokens: tokenize(text, true)?,
        pos: 0,
    };
    let mut out = Vec::new();
    let mut first = true;
    loop {
        let negative = match p.sign() {
            Some(neg) => neg,
            None if first => false,
            None => break,
        };
        first = false;
        let left = p.product()?;
        if p.bump() != Some(Token::Tensor) {
            return Err(ParseError::new(0, "expected `(x)` in tensor term"));
        }
        let right = p.product()?;
        let c = if negative { -Rational::one() } else { Rational::one() };
        out.push((c, left, right));
    }
    p.expect_end()?;
    Ok(out)
}
