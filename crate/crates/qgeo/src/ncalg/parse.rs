//! Expression parser for algebra elements.
//!
//! Grammar (UTF-8 text): integer and rational literals; symbols x1..xn,
//! p1..pn, hbar, m, q, c, nu, kappa, u, beta; operators + - * / ^ with
//! integer exponents and parentheses. Juxtaposition is not multiplication.
//! Division only by scalar literals/symbols.

use super::element::{AlgebraElement, AlgebraSpec};
use crate::scalar::{Coefficient, Symbol};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {0}: {1}")]
    Syntax(usize, String),
    #[error("exponent at byte {0} must be a nonnegative integer")]
    BadExponent(usize),
    #[error("division at byte {0} only by scalar literals/symbols")]
    BadDivisor(usize),
    #[error("index out of range at byte {0}: {1}")]
    BadIndex(usize, String),
}

pub fn parse_expression(text: &str, spec: AlgebraSpec) -> Result<AlgebraElement, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        spec,
    };
    let e = p.expr()?;
    match p.peek() {
        Token::End => Ok(e),
        t => Err(ParseError::Syntax(p.offset(), format!("unexpected {:?}", t))),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(i128),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            b'/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            b'^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            b'(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s = &text[start..i];
                let v: i128 = s
                    .parse()
                    .map_err(|_| ParseError::Syntax(start, "integer overflow".into()))?;
                out.push((start, Token::Int(v)));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
            }
            _ => {
                return Err(ParseError::Syntax(
                    i,
                    format!("unexpected character {:?}", b as char),
                ))
            }
        }
    }
    out.push((bytes.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    spec: AlgebraSpec,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<AlgebraElement, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Token::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<AlgebraElement, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Token::Slash => {
                    let off = self.offset();
                    self.bump();
                    let rhs = self.unary()?;
                    let inv = scalar_inverse(&rhs).ok_or(ParseError::BadDivisor(off))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<AlgebraElement, ParseError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    // power := atom ('^' integer)?
    fn power(&mut self) -> Result<AlgebraElement, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Token::Caret {
            self.bump();
            let off = self.offset();
            match self.bump() {
                Token::Int(e) => {
                    if e < 0 {
                        return Err(ParseError::BadExponent(off));
                    }
                    Ok(base.pow(e as u32))
                }
                _ => Err(ParseError::BadExponent(off)),
            }
        } else {
            Ok(base)
        }
    }

    // atom := integer | ident | '(' expr ')'
    fn atom(&mut self) -> Result<AlgebraElement, ParseError> {
        let off = self.offset();
        match self.bump() {
            Token::Int(v) => Ok(AlgebraElement::from_coefficient(
                self.spec,
                Coefficient::from_int(v),
            )),
            Token::LParen => {
                let e = self.expr()?;
                let off2 = self.offset();
                match self.bump() {
                    Token::RParen => Ok(e),
                    t => Err(ParseError::Syntax(off2, format!("expected ')', got {:?}", t))),
                }
            }
            Token::Ident(name) => self.ident(off, &name),
            t => Err(ParseError::Syntax(off, format!("unexpected {:?}", t))),
        }
    }

    fn ident(&mut self, off: usize, name: &str) -> Result<AlgebraElement, ParseError> {
        // alpha is a numeric constant of the flow module, not part of the
        // expression grammar.
        if let Some(sym) = Symbol::from_name(name).filter(|s| *s != Symbol::Alpha) {
            return Ok(AlgebraElement::from_coefficient(
                self.spec,
                Coefficient::symbol(sym),
            ));
        }
        if let Some(rest) = name.strip_prefix('x') {
            if let Ok(a) = rest.parse::<u8>() {
                return self.coordinate(off, a);
            }
        }
        if let Some(rest) = name.strip_prefix('p') {
            if let Ok(a) = rest.parse::<u8>() {
                return self.momentum(off, a);
            }
        }
        Err(ParseError::Syntax(off, format!("unknown symbol '{}'", name)))
    }

    fn coordinate(&self, off: usize, a: u8) -> Result<AlgebraElement, ParseError> {
        if self.spec.indices().contains(&a) {
            Ok(AlgebraElement::coordinate(self.spec, a))
        } else {
            Err(ParseError::BadIndex(off, format!("x{}", a)))
        }
    }

    fn momentum(&self, off: usize, a: u8) -> Result<AlgebraElement, ParseError> {
        if self.spec.indices().contains(&a) {
            Ok(AlgebraElement::momentum(self.spec, a))
        } else {
            Err(ParseError::BadIndex(off, format!("p{}", a)))
        }
    }
}

/// Inverse of a pure scalar element (single term, no atoms, no momenta).
fn scalar_inverse(e: &AlgebraElement) -> Option<Coefficient> {
    let mut it = e.terms();
    let (key, coeff) = it.next()?;
    if it.next().is_some() || !key.position.is_empty() || !key.momenta.is_empty() {
        return None;
    }
    coeff.inv()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_half_square() {
        let s = AlgebraSpec::nonrel(1);
        let e = parse_expression("x1^2/2", s).unwrap();
        let x = AlgebraElement::coordinate(s, 1);
        assert_eq!(e, (&x * &x).scale(&Coefficient::from_ratio(1, 2)));
    }

    #[test]
    fn normal_orders_p_before_x() {
        // p1*x1 = x1 p1 - i hbar
        let s = AlgebraSpec::nonrel(1);
        let e = parse_expression("p1*x1", s).unwrap();
        let x = AlgebraElement::coordinate(s, 1);
        let p = AlgebraElement::momentum(s, 1);
        let expect = &x * &p - AlgebraElement::from_coefficient(s, Coefficient::i_hbar());
        assert_eq!(e, expect);
    }

    #[test]
    fn parses_sho_potential() {
        let s = AlgebraSpec::nonrel(2);
        let e = parse_expression("m*nu^2*(x1^2+x2^2)/2", s).unwrap();
        assert_eq!(e.num_terms(), 2);
    }

    #[test]
    fn rejects_bad_divisor() {
        let s = AlgebraSpec::nonrel(1);
        assert!(matches!(
            parse_expression("1/x1", s),
            Err(ParseError::BadDivisor(_))
        ));
    }

    #[test]
    fn reports_error_position() {
        let s = AlgebraSpec::nonrel(1);
        match parse_expression("x1 + $", s) {
            Err(ParseError::Syntax(pos, _)) => assert_eq!(pos, 5),
            other => panic!("expected syntax error, got {:?}", other),
        }
    }

    #[test]
    fn rejects_fractional_exponent() {
        let s = AlgebraSpec::nonrel(1);
        assert!(matches!(
            parse_expression("x1^(1/2)", s),
            Err(ParseError::BadExponent(_))
        ));
    }
}
