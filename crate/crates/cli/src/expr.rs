//! Expression syntax.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := '-' factor | atom ('^' nat)*
//! atom   := rational | ident | '(' expr ')' | '{' expr ',' expr '}'
//! ```
//!
//! Identifiers are `x`, `y`, `z1`…`z99`, `x1`…, `y1`…, jets `u(i,j,…)`, and the
//! built-ins `St4`, `St6`, `CustomaryMonomial(n)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use pf_core::scalar::{render, Scalar};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ident {
    X,
    Y,
    /// `z{i+1}`.
    Z(usize),
    /// `x{i+1}`.
    Xi(usize),
    /// `y{i+1}`.
    Yi(usize),
    Jet(Vec<u32>),
    St4,
    St6,
    CustomaryMonomial(usize),
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ident::X => write!(f, "x"),
            Ident::Y => write!(f, "y"),
            Ident::Z(i) => write!(f, "z{}", i + 1),
            Ident::Xi(i) => write!(f, "x{}", i + 1),
            Ident::Yi(i) => write!(f, "y{}", i + 1),
            Ident::Jet(a) => {
                let parts: Vec<String> = a.iter().map(u32::to_string).collect();
                write!(f, "u({})", parts.join(","))
            }
            Ident::St4 => write!(f, "St4"),
            Ident::St6 => write!(f, "St6"),
            Ident::CustomaryMonomial(n) => write!(f, "CustomaryMonomial({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(Scalar),
    Var(Ident),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Bracket(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    nodes: usize,
}

const MAX_DEPTH: usize = 200;
/// Long flat chains make left-nested trees as deep as they are long.
pub const MAX_NODES: usize = 20_000;

impl Parser {
    fn new(src: &str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            nodes: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn expect(&mut self, want: char, context: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.error(self.pos, format!("expected '{want}' {context}, found '{c}'")),
            None => self.error(self.pos, format!("expected '{want}' {context}, found end of input")),
        }
    }

    fn node(&mut self) -> Result<(), ParseError> {
        self.nodes += 1;
        if self.nodes > MAX_NODES {
            return self.error(self.pos, format!("expression has more than {MAX_NODES} operations"));
        }
        Ok(())
    }

    fn expr(&mut self, depth: usize) -> Result<Expr, ParseError> {
        if depth > MAX_DEPTH {
            return self.error(self.pos, "expression nested too deeply");
        }
        let mut acc = self.term(depth)?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    self.node()?;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term(depth)?));
                }
                Some('-') => {
                    self.pos += 1;
                    self.node()?;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term(depth)?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(c: char) -> bool {
        c.is_ascii_alphanumeric() || c == '(' || c == '{'
    }

    fn term(&mut self, depth: usize) -> Result<Expr, ParseError> {
        let mut acc = self.factor(depth)?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    self.node()?;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor(depth)?));
                }
                Some(c) if Self::starts_atom(c) => {
                    self.node()?;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor(depth)?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self, depth: usize) -> Result<Expr, ParseError> {
        if depth > MAX_DEPTH {
            return self.error(self.pos, "expression nested too deeply");
        }
        if self.peek() == Some('-') {
            self.pos += 1;
            self.node()?;
            return Ok(Expr::Neg(Box::new(self.factor(depth + 1)?)));
        }
        let mut acc = self.atom(depth)?;
        while self.peek() == Some('^') {
            self.pos += 1;
            self.node()?;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.error(start, "expected a nonnegative integer exponent after '^'");
            }
            let e: u32 = match digits.parse() {
                Ok(e) => e,
                Err(_) => return self.error(start, "exponent too large"),
            };
            acc = Expr::Pow(Box::new(acc), e);
        }
        Ok(acc)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.chars.get(self.pos).filter(|c| c.is_ascii_digit()) {
            s.push(*c);
            self.pos += 1;
        }
        s
    }

    fn index_list(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect('(', "after jet symbol u")?;
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let d = self.digits();
            if d.is_empty() {
                return self.error(start, "expected a nonnegative integer index");
            }
            out.push(match d.parse() {
                Ok(v) => v,
                Err(_) => return self.error(start, "index too large"),
            });
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.error(self.pos, "expected ',' or ')' in index list"),
            }
        }
    }

    fn atom(&mut self, depth: usize) -> Result<Expr, ParseError> {
        let start = match self.peek() {
            None => return self.error(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.chars[start];
        if c == '(' {
            self.pos += 1;
            let e = self.expr(depth + 1)?;
            self.expect(')', "to close '('")?;
            return Ok(e);
        }
        if c == '{' {
            self.pos += 1;
            let a = self.expr(depth + 1)?;
            self.expect(',', "between bracket arguments")?;
            let b = self.expr(depth + 1)?;
            self.expect('}', "to close '{'")?;
            return Ok(Expr::Bracket(Box::new(a), Box::new(b)));
        }
        if c.is_ascii_digit() {
            let num = self.digits();
            let mut value = Scalar::from_integer(num.parse::<BigInt>().expect("digits"));
            if self.chars.get(self.pos) == Some(&'/') {
                self.pos += 1;
                let dstart = self.pos;
                let den = self.digits();
                if den.is_empty() {
                    return self.error(dstart, "expected a denominator after '/'");
                }
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return self.error(dstart, "zero denominator");
                }
                value /= Scalar::from_integer(den);
            }
            return Ok(Expr::Num(value));
        }
        if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(ch) = self.chars.get(self.pos).filter(|c| c.is_ascii_alphanumeric()) {
                word.push(*ch);
                self.pos += 1;
            }
            return self.ident(&word, start).map(Expr::Var);
        }
        self.error(start, format!("unexpected character '{c}'"))
    }

    fn ident(&mut self, word: &str, start: usize) -> Result<Ident, ParseError> {
        let numbered = |prefix: char| -> Option<usize> {
            let rest = word.strip_prefix(prefix)?;
            if rest.is_empty() || rest.starts_with('0') || !rest.chars().all(|c| c.is_ascii_digit()) {
                return None;
            }
            rest.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1)
        };
        Ok(match word {
            "x" => Ident::X,
            "y" => Ident::Y,
            "u" => Ident::Jet(self.index_list()?),
            "St4" => Ident::St4,
            "St6" => Ident::St6,
            "CustomaryMonomial" => {
                self.expect('(', "after CustomaryMonomial")?;
                self.skip_ws();
                let nstart = self.pos;
                let d = self.digits();
                let n: usize = match d.parse() {
                    Ok(n) if n >= 1 => n,
                    _ => return self.error(nstart, "expected a positive integer"),
                };
                self.expect(')', "to close CustomaryMonomial(")?;
                Ident::CustomaryMonomial(n)
            }
            _ => {
                if let Some(i) = numbered('z').filter(|&i| i < 99) {
                    Ident::Z(i)
                } else if let Some(i) = numbered('x') {
                    Ident::Xi(i)
                } else if let Some(i) = numbered('y') {
                    Ident::Yi(i)
                } else {
                    return self.error(start, format!("unknown identifier '{word}'"));
                }
            }
        })
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src);
    let e = p.expr(0)?;
    match p.peek() {
        None => Ok(e),
        Some(c) => p.error(p.pos, format!("unexpected '{c}' after complete expression")),
    }
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(q) if !q.is_integer() => 3,
        Expr::Num(_) | Expr::Var(_) | Expr::Bracket(..) => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if prec(e) < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

/// Prints with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => write!(f, "{}", render(q)),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Add(a, b) => write!(f, "{} + {}", wrap(a, 1), wrap(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", wrap(a, 1), wrap(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", wrap(a, 2), wrap(b, 3)),
            Expr::Neg(a) => write!(f, "-{}", wrap(a, 3)),
            Expr::Pow(a, e) => write!(f, "{}^{e}", wrap(a, 4)),
            Expr::Bracket(a, b) => write!(f, "{{{a}, {b}}}"),
        }
    }
}

impl Expr {
    pub fn num(n: i64) -> Self {
        Expr::Num(Scalar::from_integer(n.into()))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Num(q) if q.is_one())
    }

    /// Identifiers in order of first occurrence.
    pub fn idents(&self) -> Vec<Ident> {
        fn walk(e: &Expr, out: &mut Vec<Ident>) {
            match e {
                Expr::Num(_) => {}
                Expr::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Expr::Neg(a) | Expr::Pow(a, _) => walk(a, out),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Bracket(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}
