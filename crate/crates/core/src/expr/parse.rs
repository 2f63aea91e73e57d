//! Tokenizer and recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' ['-'] integer]
//! atom   := number | 'x' integer | func '(' expr {',' expr} ')' | '(' expr ')'
//! ```
//!
//! The parser is generic over a [`Builder`] so that the same grammar produces
//! both coefficient expressions and super elements (which add `t1t2…` atoms).

use thiserror::Error;

use super::{Func, SmoothExpr};
use crate::scalar::{parse_decimal, Rational};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("variable index {index} out of range 1..={arity} at {pos}")]
    VariableOutOfRange { pos: usize, index: usize, arity: usize },
    #[error("{msg} at {pos}")]
    Invalid { pos: usize, msg: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownIdentifier { pos, .. }
            | ParseError::VariableOutOfRange { pos, .. }
            | ParseError::Invalid { pos, .. } => *pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    Number(Rational),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match c {
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ',' => TokenKind::Comma,
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            '*' => TokenKind::Star,
            '/' => TokenKind::Slash,
            '^' => TokenKind::Caret,
            _ if c.is_ascii_digit() || c == '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // Exponent suffix only when followed by a (signed) digit.
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'-' || bytes[j] == b'+') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let lit = &text[start..i];
                let value = parse_decimal(lit.trim_start_matches('+')).ok_or_else(|| {
                    ParseError::Syntax { pos: start, msg: format!("bad number `{lit}`") }
                })?;
                out.push(Token { kind: TokenKind::Number(value), pos: start });
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token { kind: TokenKind::Ident(text[start..i].to_string()), pos: start });
                continue;
            }
            _ => {
                return Err(ParseError::Syntax { pos: start, msg: format!("unexpected `{c}`") })
            }
        };
        i += c.len_utf8();
        out.push(Token { kind, pos: start });
    }
    Ok(out)
}

/// Semantic actions for the grammar.
pub(crate) trait Builder {
    type Value: Clone;

    fn number(&self, c: Rational) -> Self::Value;
    fn ident(&self, name: &str, pos: usize) -> Result<Self::Value, ParseError>;
    fn apply(&self, f: Func, args: Vec<Self::Value>, pos: usize) -> Result<Self::Value, ParseError>;
    fn add(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn sub(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn mul(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn div(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    fn pow(&self, a: Self::Value, n: i32, pos: usize) -> Result<Self::Value, ParseError>;
    fn neg(&self, a: Self::Value, pos: usize) -> Result<Self::Value, ParseError>;
    /// Implicit first argument for the two-argument `bump(a, b)` shorthand.
    fn default_bump_arg(&self, pos: usize) -> Result<Self::Value, ParseError>;
}

pub(crate) struct ExprParser<'a, B> {
    tokens: Vec<Token>,
    at: usize,
    end: usize,
    builder: &'a B,
}

impl<'a, B: Builder> ExprParser<'a, B> {
    pub fn new(text: &str, builder: &'a B) -> Result<Self, ParseError> {
        Ok(ExprParser { tokens: tokenize(text)?, at: 0, end: text.len(), builder })
    }

    pub fn parse_all(mut self) -> Result<B::Value, ParseError> {
        if self.tokens.is_empty() {
            return Err(ParseError::Syntax { pos: 0, msg: "empty expression".into() });
        }
        let v = self.expr()?;
        if let Some(t) = self.tokens.get(self.at) {
            return Err(ParseError::Syntax { pos: t.pos, msg: "trailing input".into() });
        }
        Ok(v)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.at).map(|t| &t.kind)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == Some(kind) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<(), ParseError> {
        if self.eat(kind) {
            Ok(())
        } else {
            Err(ParseError::Syntax { pos: self.pos(), msg: format!("expected {what}") })
        }
    }

    fn expr(&mut self) -> Result<B::Value, ParseError> {
        let pos = self.pos();
        let negate = self.eat(&TokenKind::Minus);
        let mut acc = self.term()?;
        if negate {
            acc = self.builder.neg(acc, pos)?;
        }
        loop {
            let pos = self.pos();
            if self.eat(&TokenKind::Plus) {
                let rhs = self.term()?;
                acc = self.builder.add(acc, rhs, pos)?;
            } else if self.eat(&TokenKind::Minus) {
                let rhs = self.term()?;
                acc = self.builder.sub(acc, rhs, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<B::Value, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            if self.eat(&TokenKind::Star) {
                let rhs = self.factor()?;
                acc = self.builder.mul(acc, rhs, pos)?;
            } else if self.eat(&TokenKind::Slash) {
                let rhs = self.factor()?;
                acc = self.builder.div(acc, rhs, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<B::Value, ParseError> {
        let base = self.atom()?;
        let pos = self.pos();
        if !self.eat(&TokenKind::Caret) {
            return Ok(base);
        }
        let negative = self.eat(&TokenKind::Minus);
        let npos = self.pos();
        let n = match self.peek() {
            Some(TokenKind::Number(c)) if c.is_integer() => {
                let n: i32 = c.to_integer().try_into().map_err(|_| ParseError::Invalid {
                    pos: npos,
                    msg: "exponent too large".into(),
                })?;
                self.at += 1;
                n
            }
            _ => {
                return Err(ParseError::Syntax { pos: npos, msg: "expected integer exponent".into() })
            }
        };
        self.builder.pow(base, if negative { -n } else { n }, pos)
    }

    fn atom(&mut self) -> Result<B::Value, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(TokenKind::Number(c)) => {
                self.at += 1;
                Ok(self.builder.number(c))
            }
            Some(TokenKind::LParen) => {
                self.at += 1;
                let v = self.expr()?;
                self.expect(&TokenKind::RParen, "`)`")?;
                Ok(v)
            }
            Some(TokenKind::Ident(name)) => {
                self.at += 1;
                if let Some(f) = Func::from_name(&name) {
                    self.expect(&TokenKind::LParen, "`(` after function name")?;
                    let mut args = vec![self.expr()?];
                    while self.eat(&TokenKind::Comma) {
                        args.push(self.expr()?);
                    }
                    self.expect(&TokenKind::RParen, "`)`")?;
                    if f == Func::Bump && args.len() == 2 {
                        args.insert(0, self.builder.default_bump_arg(pos)?);
                    }
                    if args.len() != f.arity() {
                        return Err(ParseError::Invalid {
                            pos,
                            msg: format!("{} takes {} argument(s)", f.name(), f.arity()),
                        });
                    }
                    self.builder.apply(f, args, pos)
                } else {
                    self.builder.ident(&name, pos)
                }
            }
            _ => Err(ParseError::Syntax { pos, msg: "expected a number, variable, function or `(`".into() }),
        }
    }
}

/// Parse `x<k>` into its one-based index `k`, if the identifier has that shape.
pub(crate) fn parse_var_ident(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse::<usize>().ok()
}

pub(crate) struct TreeBuilder {
    pub arity: usize,
}

impl TreeBuilder {
    fn variable(&self, index: usize, pos: usize) -> Result<SmoothExpr, ParseError> {
        if index == 0 || index > self.arity {
            return Err(ParseError::VariableOutOfRange { pos, index, arity: self.arity });
        }
        Ok(SmoothExpr::var(index - 1))
    }
}

impl Builder for TreeBuilder {
    type Value = SmoothExpr;

    fn number(&self, c: Rational) -> SmoothExpr {
        SmoothExpr::constant(c)
    }

    fn ident(&self, name: &str, pos: usize) -> Result<SmoothExpr, ParseError> {
        match parse_var_ident(name, 'x') {
            Some(i) => self.variable(i, pos),
            None => Err(ParseError::UnknownIdentifier { pos, name: name.to_string() }),
        }
    }

    fn apply(&self, f: Func, args: Vec<SmoothExpr>, _pos: usize) -> Result<SmoothExpr, ParseError> {
        Ok(SmoothExpr::apply(f, args))
    }

    fn add(&self, a: SmoothExpr, b: SmoothExpr, _: usize) -> Result<SmoothExpr, ParseError> {
        Ok(SmoothExpr::add(vec![a, b]))
    }

    fn sub(&self, a: SmoothExpr, b: SmoothExpr, _: usize) -> Result<SmoothExpr, ParseError> {
        Ok(SmoothExpr::add(vec![a, SmoothExpr::neg(b)]))
    }

    fn mul(&self, a: SmoothExpr, b: SmoothExpr, _: usize) -> Result<SmoothExpr, ParseError> {
        Ok(SmoothExpr::mul(vec![a, b]))
    }

    fn div(&self, a: SmoothExpr, b: SmoothExpr, _: usize) -> Result<SmoothExpr, ParseError> {
        Ok(SmoothExpr::div(a, b))
    }

    fn pow(&self, a: SmoothExpr, n: i32, _: usize) -> Result<SmoothExpr, ParseError> {
        Ok(SmoothExpr::pow(a, n))
    }

    fn neg(&self, a: SmoothExpr, _: usize) -> Result<SmoothExpr, ParseError> {
        Ok(SmoothExpr::neg(a))
    }

    fn default_bump_arg(&self, pos: usize) -> Result<SmoothExpr, ParseError> {
        self.variable(1, pos)
    }
}

pub(crate) fn parse_expr(text: &str, arity: usize) -> Result<SmoothExpr, ParseError> {
    let builder = TreeBuilder { arity };
    ExprParser::new(text, &builder)?.parse_all()
}
