use num_bigint::BigInt;
use num_traits::pow;

use super::{ParseError, ParseErrorKind};
use crate::symplectic::Rational;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum TokenKind {
    /// Numeric literal; `integer` is false when a decimal point was present.
    Number { value: Rational, integer: bool },
    Ident(Ident),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Ident {
    Q1,
    Q2,
    P1,
    P2,
    Theta,
    Hbar,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub offset: usize,
}

impl TokenKind {
    pub fn describe(&self) -> &'static str {
        match self {
            TokenKind::Number { .. } => "number",
            TokenKind::Ident(_) => "identifier",
            TokenKind::Plus => "'+'",
            TokenKind::Minus => "'-'",
            TokenKind::Star => "'*'",
            TokenKind::Slash => "'/'",
            TokenKind::Caret => "'^'",
            TokenKind::LParen => "'('",
            TokenKind::RParen => "')'",
            TokenKind::Eof => "end of input",
        }
    }
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'/' => Some(TokenKind::Slash),
            b'^' => Some(TokenKind::Caret),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = simple {
            tokens.push(Token { kind, offset: start });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            let (kind, end) = lex_number(src, start)?;
            tokens.push(Token { kind, offset: start });
            i = end;
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let ident = match &src[start..i] {
                "q1" => Ident::Q1,
                "q2" => Ident::Q2,
                "p1" => Ident::P1,
                "p2" => Ident::P2,
                "theta" => Ident::Theta,
                "hbar" => Ident::Hbar,
                other => {
                    return Err(ParseError::new(
                        start,
                        ParseErrorKind::UnknownIdentifier,
                        "one of q1, q2, p1, p2, theta, hbar",
                        format!("unknown identifier '{other}'"),
                    ))
                }
            };
            tokens.push(Token {
                kind: TokenKind::Ident(ident),
                offset: start,
            });
        } else {
            let ch = src[start..].chars().next().expect("in bounds");
            return Err(ParseError::new(
                start,
                ParseErrorKind::UnexpectedCharacter,
                "number, identifier, operator or parenthesis",
                format!("unexpected character '{ch}'"),
            ));
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        offset: src.len(),
    });
    Ok(tokens)
}

/// `uint ("." digits)?`, converted exactly.
fn lex_number(src: &str, start: usize) -> Result<(TokenKind, usize), ParseError> {
    let bytes = src.as_bytes();
    let malformed = |msg: &str| {
        ParseError::new(
            start,
            ParseErrorKind::MalformedNumber,
            "digits, optionally followed by '.' and digits",
            msg.to_string(),
        )
    };
    let mut i = start;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == start {
        return Err(malformed("number must start with a digit"));
    }
    let int_part = &src[start..i];
    let mut frac_part = "";
    let mut integer = true;
    if i < bytes.len() && bytes[i] == b'.' {
        integer = false;
        let frac_start = i + 1;
        i = frac_start;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == frac_start {
            return Err(malformed("expected digits after decimal point"));
        }
        frac_part = &src[frac_start..i];
    }
    if i < bytes.len() && (bytes[i] == b'.' || bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
        return Err(malformed("unexpected character in numeric literal"));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| malformed("invalid digits"))?;
    let denom: BigInt = pow(BigInt::from(10), frac_part.len());
    let value = if frac_part.is_empty() {
        Rational::from_integer(numer)
    } else {
        Rational::new(numer, denom)
    };
    Ok((TokenKind::Number { value, integer }, i))
}
