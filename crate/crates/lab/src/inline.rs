//! Inline polynomial expressions such as `x^2 y - (1+2i)/3 y^3`.
//!
//! Grammar, after all whitespace is removed:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | 'x' | 'y' | 'i' | '(' expr ')'
//! number := digits ('.' digits?)? | '.' digits
//! ```
//!
//! Coefficients are exact Gaussian rationals and the result must be a nonzero
//! homogeneous polynomial in `x` and `y`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;
use waring_core::oracle::{ExactForm, ExactScalar};

/// Largest total degree an expression may reach.
pub const MAX_DEGREE: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub message: String,
    /// Byte offset into the input with whitespace removed.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigRational),
    X,
    Y,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let start = i;
        let tok = match chars[i] {
            'x' => Token::X,
            'y' => Token::Y,
            'i' => Token::I,
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            c if c.is_ascii_digit() || c == '.' => {
                let mut int_part = String::new();
                let mut frac_part = String::new();
                let mut seen_dot = false;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    if chars[i] == '.' {
                        if seen_dot {
                            return Err(err("second decimal point in number", i));
                        }
                        seen_dot = true;
                    } else if seen_dot {
                        frac_part.push(chars[i]);
                    } else {
                        int_part.push(chars[i]);
                    }
                    i += 1;
                }
                if int_part.is_empty() && frac_part.is_empty() {
                    return Err(err("a lone '.' is not a number", start));
                }
                let digits = format!("{int_part}{frac_part}");
                let num: BigInt = digits.parse().expect("ascii digits");
                let den = BigInt::from(10u8).pow(frac_part.len() as u32);
                out.push((start, Token::Number(BigRational::new(num, den))));
                continue;
            }
            c => return Err(err(format!("unexpected character '{c}'"), i)),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

fn err(message: impl Into<String>, offset: usize) -> ParseError {
    ParseError {
        message: message.into(),
        offset,
    }
}

/// Sparse polynomial keyed by `(power of x, power of y)`.
#[derive(Debug, Clone, PartialEq)]
struct Poly(BTreeMap<(u32, u32), ExactScalar>);

impl Poly {
    fn constant(c: ExactScalar) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((0, 0), c);
        }
        Poly(m)
    }

    fn monomial(px: u32, py: u32) -> Self {
        Poly(BTreeMap::from([((px, py), ExactScalar::one())]))
    }

    fn degree(&self) -> u32 {
        self.0.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    fn as_constant(&self) -> Option<ExactScalar> {
        match self.0.len() {
            0 => Some(ExactScalar::zero()),
            1 => self.0.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn add(&self, other: &Poly, sign: bool) -> Poly {
        let mut m = self.0.clone();
        for (k, v) in &other.0 {
            let entry = m.entry(*k).or_insert_with(ExactScalar::zero);
            *entry = if sign { &*entry + v } else { &*entry - v };
            if entry.is_zero() {
                m.remove(k);
            }
        }
        Poly(m)
    }

    fn mul(&self, other: &Poly, offset: usize) -> Result<Poly, ParseError> {
        if self.degree() + other.degree() > MAX_DEGREE {
            return Err(err(format!("degree exceeds {MAX_DEGREE}"), offset));
        }
        let mut m: BTreeMap<(u32, u32), ExactScalar> = BTreeMap::new();
        for ((a1, b1), v1) in &self.0 {
            for ((a2, b2), v2) in &other.0 {
                let key = (a1 + a2, b1 + b2);
                let entry = m.entry(key).or_insert_with(ExactScalar::zero);
                *entry = &*entry + &(v1 * v2);
            }
        }
        m.retain(|_, v| !v.is_zero());
        Ok(Poly(m))
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(k, v)| (*k, -v)).collect())
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            let sign = match tok {
                Token::Plus => true,
                Token::Minus => false,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(&rhs, sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let offset = self.offset();
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs, offset)?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let rhs_offset = self.offset();
                    let rhs = self.unary()?;
                    let c = rhs
                        .as_constant()
                        .ok_or_else(|| err("division by a non-constant expression", rhs_offset))?;
                    let inv = ExactScalar::one()
                        .checked_div(&c)
                        .ok_or_else(|| err("division by zero", rhs_offset))?;
                    acc = acc.mul(&Poly::constant(inv), offset)?;
                }
                Some(Token::Number(_) | Token::X | Token::Y | Token::I | Token::LParen) => {
                    let rhs = self.power()?;
                    acc = acc.mul(&rhs, offset)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let offset = self.offset();
        let exponent = match self.peek() {
            Some(Token::Number(n)) if n.is_integer() => n.to_integer(),
            _ => return Err(err("exponent must be a non-negative integer literal", offset)),
        };
        self.pos += 1;
        let e: u32 = exponent
            .try_into()
            .ok()
            .filter(|&e| e <= MAX_DEGREE)
            .ok_or_else(|| err(format!("exponent exceeds {MAX_DEGREE}"), offset))?;
        if self.peek() == Some(&Token::Caret) {
            return Err(err("chained exponents are ambiguous; use parentheses", self.offset()));
        }
        let mut acc = Poly::constant(ExactScalar::one());
        for _ in 0..e {
            acc = acc.mul(&base, offset)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let offset = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(err("unexpected end of input", offset));
        };
        self.pos += 1;
        match tok {
            Token::Number(n) => Ok(Poly::constant(ExactScalar::new(n, BigRational::zero()))),
            Token::X => Ok(Poly::monomial(1, 0)),
            Token::Y => Ok(Poly::monomial(0, 1)),
            Token::I => Ok(Poly::constant(ExactScalar::i())),
            Token::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(err("missing ')'", self.offset()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Token::RParen => Err(err("unexpected ')'", offset)),
            _ => Err(err("expected a number, x, y, i or '('", offset)),
        }
    }
}

/// Parses a nonzero homogeneous polynomial in `x`, `y` into an exact form.
pub fn parse_form(src: &str) -> Result<ExactForm, ParseError> {
    let tokens = tokenize(src)?;
    let end = src.chars().filter(|c| !c.is_whitespace()).count();
    if tokens.is_empty() {
        return Err(err("empty expression", 0));
    }
    let mut parser = Parser { tokens, pos: 0, end };
    let poly = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(err("unexpected trailing input", parser.offset()));
    }
    if poly.0.is_empty() {
        return Err(err("the expression is identically zero", 0));
    }
    let n = poly.degree();
    if poly.0.keys().any(|(a, b)| a + b != n) {
        return Err(err(format!("the expression is not homogeneous (top degree {n})"), 0));
    }
    let mut coeffs = vec![ExactScalar::zero(); n as usize + 1];
    for ((a, _), v) in poly.0 {
        coeffs[a as usize] = v;
    }
    Ok(ExactForm::from_monomial_coeffs(coeffs).expect("nonempty coefficient list"))
}
