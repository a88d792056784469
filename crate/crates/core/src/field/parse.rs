//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("+" | "-") unary | power
//! power  := base ("^" exponent)?
//! exponent := ["+" | "-"] integer | "(" ["+" | "-"] integer ")"
//! base   := number | identifier | "(" expr ")" | ("exp" | "sqrt") "(" expr ")"
//! ```
//!
//! Numbers are decimal literals read as exact rationals. The Unicode minus
//! sign, `×` and `÷` are accepted as aliases.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{raw, Constants, Expr, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnboundIdentifier(String),
    NonIntegerExponent,
}

/// Parse failure with a 1-based character column into the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at column {}: {}", self.column, msg),
            ParseErrorKind::UnboundIdentifier(name) => {
                write!(f, "unbound identifier `{}` at column {}", name, self.column)
            }
            ParseErrorKind::NonIntegerExponent => {
                write!(f, "exponent at column {} is not an integer literal", self.column)
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
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

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(s) => format!("number `{s}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{00d7}' | '\u{00b7}' => Tok::Star,
            '/' | '\u{00f7}' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(ParseError { kind: ParseErrorKind::Syntax(format!("unexpected character `{other}`")), column: col }),
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// Reads an unsigned decimal literal such as `12`, `0.25` or `.5`.
pub(crate) fn decimal_literal(text: &str) -> Option<BigRational> {
    if text.is_empty() || text == "." {
        return None;
    }
    let (int_part, frac_part) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let denom = num_traits::pow::pow(BigInt::from(10), frac_part.len());
    Some(BigRational::new(numer, denom))
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    constants: &'a Constants,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: String) -> Result<T, ParseError> {
        Err(ParseError { kind: ParseErrorKind::Syntax(msg), column: self.column() })
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {}, found {}", describe(&want), describe(self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Arc<Expr>, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => '+',
                Tok::Minus => '-',
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = raw::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Arc<Expr>, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => '*',
                Tok::Slash => '/',
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = raw::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Arc<Expr>, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(raw::neg(self.unary()?))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Arc<Expr>, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let n = self.exponent()?;
        if *self.peek() == Tok::Caret {
            return self.syntax("chained `^` needs parentheses".into());
        }
        Ok(raw::pow(base, n))
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        let parenthesized = *self.peek() == Tok::LParen;
        if parenthesized {
            self.bump();
        }
        let col = self.column();
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let n = match self.peek().clone() {
            Tok::Num(text) if text.chars().all(|c| c.is_ascii_digit()) => {
                self.bump();
                match text.parse::<i32>() {
                    Ok(n) => n,
                    Err(_) => return self.syntax(format!("exponent `{text}` is too large")),
                }
            }
            Tok::End => return self.syntax("expected exponent, found end of input".into()),
            _ => return Err(ParseError { kind: ParseErrorKind::NonIntegerExponent, column: col }),
        };
        if parenthesized {
            if *self.peek() != Tok::RParen {
                return Err(ParseError { kind: ParseErrorKind::NonIntegerExponent, column: col });
            }
            self.bump();
        }
        Ok(if negative { -n } else { n })
    }

    fn base(&mut self) -> Result<Arc<Expr>, ParseError> {
        let (tok, col) = self.bump();
        match tok {
            Tok::Num(text) => match decimal_literal(&text) {
                Some(r) => Ok(raw::num(r)),
                None => Err(ParseError { kind: ParseErrorKind::Syntax(format!("malformed number `{text}`")), column: col }),
            },
            Tok::Ident(name) => self.identifier(name, col),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(ParseError { kind: ParseErrorKind::Syntax(format!("expected operand, found {}", describe(&other))), column: col }),
        }
    }

    fn identifier(&mut self, name: String, col: usize) -> Result<Arc<Expr>, ParseError> {
        match name.as_str() {
            "x" => return Ok(Arc::new(Expr::Var(Var::X))),
            "y" => return Ok(Arc::new(Expr::Var(Var::Y))),
            "z" => return Ok(Arc::new(Expr::Var(Var::Z))),
            "exp" | "sqrt" if *self.peek() == Tok::LParen => {
                self.bump();
                let arg = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(Arc::new(if name == "exp" { Expr::Exp(arg) } else { Expr::Sqrt(arg) }));
            }
            "exp" | "sqrt" => {
                return self.syntax(format!("`{name}` must be followed by `(`"));
            }
            _ => {}
        }
        match self.constants.get(&name) {
            Some(v) => Ok(Arc::new(Expr::Const(Arc::from(name.as_str()), v.clone()))),
            None => Err(ParseError { kind: ParseErrorKind::UnboundIdentifier(name), column: col }),
        }
    }
}

pub(crate) fn parse(source: &str, constants: &Constants) -> Result<Arc<Expr>, ParseError> {
    let toks = tokenize(source)?;
    let mut p = Parser { toks, pos: 0, constants };
    if *p.peek() == Tok::End {
        return p.syntax("empty expression".into());
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax(format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}
