//! Text syntax for observables.
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := "-" factor | base ("^" uint)? ;
//! base   := number | ident | "(" expr ")" ;
//! ident  := "q1"|"q2"|"p1"|"p2"|"theta"|"hbar" ;
//! number := uint ("." digits)? ;
//! ```
//!
//! Parsing is exact: decimal literals become rationals (`0.25` is `1/4`).
//! [`format`] renders the canonical form, and `parse(&format(f)) == f`.

mod format;
mod lexer;

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

pub use format::{format, format_scalar};

use crate::symplectic::observable::{HBAR, P1, P2, Q1, Q2, THETA};
use crate::symplectic::{Observable, Rational};
use lexer::{Ident, Token, TokenKind};

/// Default bound on source length, in bytes.
pub const DEFAULT_MAX_LEN: usize = 64 * 1024;
/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;
/// Deepest parenthesis / unary-minus nesting accepted.
pub const MAX_DEPTH: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownIdentifier,
    MalformedNumber,
    UnexpectedCharacter,
    UnexpectedToken,
    UnbalancedParenthesis,
    ZeroDenominator,
    NonConstantDenominator,
    NonIntegerExponent,
    ExponentTooLarge,
    NestingTooDeep,
    InputTooLong,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset of the first offending token.
    pub offset: usize,
    pub kind: ParseErrorKind,
    /// What the parser expected at `offset`.
    pub expected: String,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(
        offset: usize,
        kind: ParseErrorKind,
        expected: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Self {
            offset,
            kind,
            expected: expected.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at offset {}: {} (expected {})",
            self.offset, self.message, self.expected
        )
    }
}

/// Parses with the default length bound.
pub fn parse(src: &str) -> Result<Observable, ParseError> {
    parse_with_limit(src, DEFAULT_MAX_LEN)
}

pub fn parse_with_limit(src: &str, max_len: usize) -> Result<Observable, ParseError> {
    if src.len() > max_len {
        return Err(ParseError::new(
            max_len,
            ParseErrorKind::InputTooLong,
            format!("at most {max_len} bytes"),
            format!("input is {} bytes long", src.len()),
        ));
    }
    let tokens = lexer::tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, depth: 0 };
    let value = p.expr()?;
    let tok = p.peek();
    match tok.kind {
        TokenKind::Eof => Ok(value),
        TokenKind::RParen => Err(ParseError::new(
            tok.offset,
            ParseErrorKind::UnbalancedParenthesis,
            "operator or end of input",
            "unmatched ')'",
        )),
        ref other => Err(ParseError::new(
            tok.offset,
            ParseErrorKind::UnexpectedToken,
            "operator or end of input",
            format!("unexpected {}", other.describe()),
        )),
    }
}

/// Parses a purely rational expression such as `-3/4` or `0.5`.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let f = parse(src)?;
    f.as_constant().ok_or_else(|| {
        ParseError::new(
            0,
            ParseErrorKind::UnexpectedToken,
            "a rational constant",
            format!("'{src}' is not a rational constant"),
        )
    })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if !matches!(t.kind, TokenKind::Eof) {
            self.pos += 1;
        }
        t
    }

    fn enter(&mut self, offset: usize) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::new(
                offset,
                ParseErrorKind::NestingTooDeep,
                format!("at most {MAX_DEPTH} nested levels"),
                "expression nested too deeply",
            ));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Observable, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    acc += self.term()?;
                }
                TokenKind::Minus => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Observable, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                TokenKind::Slash => {
                    self.bump();
                    let at = self.peek().offset;
                    let denom = self.factor()?;
                    let value = denom.as_constant().ok_or_else(|| {
                        ParseError::new(
                            at,
                            ParseErrorKind::NonConstantDenominator,
                            "numeric denominator",
                            "denominator must be a number",
                        )
                    })?;
                    if value.is_zero() {
                        return Err(ParseError::new(
                            at,
                            ParseErrorKind::ZeroDenominator,
                            "nonzero denominator",
                            "division by zero",
                        ));
                    }
                    acc = acc.scale(&(Rational::from_integer(1.into()) / value));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Observable, ParseError> {
        if matches!(self.peek().kind, TokenKind::Minus) {
            let t = self.bump();
            self.enter(t.offset)?;
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(-inner);
        }
        let base = self.base()?;
        if !matches!(self.peek().kind, TokenKind::Caret) {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.kind {
            TokenKind::Number { value, integer: true } => {
                let e = value.to_integer().to_u32().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| {
                    ParseError::new(
                        t.offset,
                        ParseErrorKind::ExponentTooLarge,
                        format!("exponent at most {MAX_EXPONENT}"),
                        "exponent too large",
                    )
                })?;
                Ok(base.pow(e))
            }
            other => Err(ParseError::new(
                t.offset,
                ParseErrorKind::NonIntegerExponent,
                "nonnegative integer exponent",
                format!("exponent must be a nonnegative integer, found {}", other.describe()),
            )),
        }
    }

    fn base(&mut self) -> Result<Observable, ParseError> {
        let t = self.bump();
        match t.kind {
            TokenKind::Number { value, .. } => Ok(Observable::constant(value)),
            TokenKind::Ident(id) => Ok(Observable::var(match id {
                Ident::Q1 => Q1,
                Ident::Q2 => Q2,
                Ident::P1 => P1,
                Ident::P2 => P2,
                Ident::Theta => THETA,
                Ident::Hbar => HBAR,
            })),
            TokenKind::LParen => {
                self.enter(t.offset)?;
                let inner = self.expr()?;
                self.depth -= 1;
                let close = self.peek().clone();
                match close.kind {
                    TokenKind::RParen => {
                        self.bump();
                        Ok(inner)
                    }
                    TokenKind::Eof => Err(ParseError::new(
                        t.offset,
                        ParseErrorKind::UnbalancedParenthesis,
                        "')'",
                        "unclosed '('",
                    )),
                    ref other => Err(ParseError::new(
                        close.offset,
                        ParseErrorKind::UnexpectedToken,
                        "')' or operator",
                        format!("unexpected {}", other.describe()),
                    )),
                }
            }
            TokenKind::RParen => Err(ParseError::new(
                t.offset,
                ParseErrorKind::UnbalancedParenthesis,
                "number, identifier or '('",
                "unmatched ')'",
            )),
            ref other => Err(ParseError::new(
                t.offset,
                ParseErrorKind::UnexpectedToken,
                "number, identifier or '('",
                format!("unexpected {}", other.describe()),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{bopp_shift, rational};

    fn q1() -> Observable {
        Observable::q1()
    }

    #[test]
    fn bopp_coordinate() {
        let f = parse("q1 - 1/2*theta*p2").unwrap();
        assert_eq!(f, bopp_shift(&q1()));
    }

    #[test]
    fn zero_forms() {
        assert!(parse("0").unwrap().is_zero());
        assert!(parse("q1 - q1").unwrap().is_zero());
    }

    #[test]
    fn binomial() {
        let f = parse("(q1 + p2)^2").unwrap();
        let p2 = Observable::p2();
        let expected = &(&q1() * &q1()) + &(&(&q1() * &p2).scale(&rational(2, 1)) + &(&p2 * &p2));
        assert_eq!(f, expected);
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse("q1+q2*p1").unwrap(), parse("q1+(q2*p1)").unwrap());
        assert_eq!(parse("q1-q2-p1").unwrap(), parse("(q1-q2)-p1").unwrap());
        assert_eq!(parse("8/2/2").unwrap(), Observable::from(2));
        assert_eq!(parse("-q1^2").unwrap(), -(&q1() * &q1()));
        assert_eq!(parse("2^3^0").unwrap_err().kind, ParseErrorKind::UnexpectedToken);
        assert_eq!(parse("0.5*hbar").unwrap(), Observable::hbar_param().scale(&rational(1, 2)));
        assert_eq!(parse("q1/(1+1)").unwrap(), q1().scale(&rational(1, 2)));
    }

    #[test]
    fn error_offsets() {
        let cases: &[(&str, usize, ParseErrorKind)] = &[
            ("q3 + 1", 0, ParseErrorKind::UnknownIdentifier),
            ("q1 + x", 5, ParseErrorKind::UnknownIdentifier),
            ("1..2", 0, ParseErrorKind::MalformedNumber),
            ("q1/0", 3, ParseErrorKind::ZeroDenominator),
            ("q1/(2-2)", 3, ParseErrorKind::ZeroDenominator),
            ("q1/p1", 3, ParseErrorKind::NonConstantDenominator),
            ("q1^2.5", 3, ParseErrorKind::NonIntegerExponent),
            ("q1^-1", 3, ParseErrorKind::NonIntegerExponent),
            ("(q1 + p1", 0, ParseErrorKind::UnbalancedParenthesis),
            ("q1 + p1)", 7, ParseErrorKind::UnbalancedParenthesis),
            ("q1 p1", 3, ParseErrorKind::UnexpectedToken),
            ("", 0, ParseErrorKind::UnexpectedToken),
            ("q1 +", 4, ParseErrorKind::UnexpectedToken),
            ("q1 # 2", 3, ParseErrorKind::UnexpectedCharacter),
            ("q1^100", 3, ParseErrorKind::ExponentTooLarge),
        ];
        for (src, offset, kind) in cases {
            let e = parse(src).unwrap_err();
            assert_eq!((e.offset, e.kind), (*offset, *kind), "{src}: {e}");
            assert!(e.offset <= src.len());
        }
    }

    #[test]
    fn length_and_depth_limits() {
        let long = "1+".repeat(10) + "1";
        assert_eq!(parse_with_limit(&long, 8).unwrap_err().kind, ParseErrorKind::InputTooLong);
        let deep = "(".repeat(MAX_DEPTH + 1) + "1" + &")".repeat(MAX_DEPTH + 1);
        assert_eq!(parse(&deep).unwrap_err().kind, ParseErrorKind::NestingTooDeep);
        let ok = "(".repeat(MAX_DEPTH) + "1" + &")".repeat(MAX_DEPTH);
        assert_eq!(parse(&ok).unwrap(), Observable::one());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/4").unwrap(), rational(-3, 4));
        assert_eq!(parse_rational("0.125").unwrap(), rational(1, 8));
        assert!(parse_rational("theta").is_err());
    }
}
