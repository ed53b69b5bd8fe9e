//! Expression front-end: a recursive-descent parser for the polynomial /
//! Laurent / rational-function grammar, with line-and-column diagnostics,
//! and canonical printing that re-parses to the same value.
//!
//! Grammar:
//!   input  := expr (':' expr)?          (the second branch in ratfn mode)
//!   expr   := '-'? term (('+'|'-') term)*
//!   term   := factor ('*' factor)*
//!   factor := rational | var ('^' '-'? int)? | '(' expr ')'
//!   var    := ('t'|'x') digits          (1-based index)

use std::fmt;

use nambu_core::poly::{Poly, Rat};
use nambu_core::ratfn::RatFn;
use num::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    Poly,
    Laurent,
    RatFn,
}

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Abstract syntax for the expression language.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Rational(Rat),
    /// 0-based variable index.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Colon,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

type Spanned = (Tok, usize, usize);

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, line: 1, col: 1 }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col, message: message.into() }
    }

    fn tokenize(mut self) -> Result<Vec<Spanned>, ParseError> {
        let bytes = self.src.as_bytes();
        let mut out = Vec::new();
        while self.pos < bytes.len() {
            let c = bytes[self.pos] as char;
            let (line, col) = (self.line, self.col);
            match c {
                ' ' | '\t' => self.bump(1),
                '\n' => {
                    self.pos += 1;
                    self.line += 1;
                    self.col = 1;
                }
                '+' => {
                    out.push((Tok::Plus, line, col));
                    self.bump(1);
                }
                '-' => {
                    out.push((Tok::Minus, line, col));
                    self.bump(1);
                }
                '*' => {
                    out.push((Tok::Star, line, col));
                    self.bump(1);
                }
                '^' => {
                    out.push((Tok::Caret, line, col));
                    self.bump(1);
                }
                '/' => {
                    out.push((Tok::Slash, line, col));
                    self.bump(1);
                }
                ':' => {
                    out.push((Tok::Colon, line, col));
                    self.bump(1);
                }
                '(' => {
                    out.push((Tok::LParen, line, col));
                    self.bump(1);
                }
                ')' => {
                    out.push((Tok::RParen, line, col));
                    self.bump(1);
                }
                '0'..='9' => {
                    let start = self.pos;
                    while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                        self.bump(1);
                    }
                    let digits = &self.src[start..self.pos];
                    let value: BigInt = digits.parse().expect("digits parse as an integer");
                    out.push((Tok::Int(value), line, col));
                }
                't' | 'x' => {
                    self.bump(1);
                    let start = self.pos;
                    while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                        self.bump(1);
                    }
                    if start == self.pos {
                        return Err(ParseError {
                            line,
                            col,
                            message: format!("variable '{c}' needs a 1-based index"),
                        });
                    }
                    let idx: usize = self.src[start..self.pos].parse().map_err(|_| ParseError {
                        line,
                        col,
                        message: "variable index out of range".into(),
                    })?;
                    if idx == 0 {
                        return Err(ParseError {
                            line,
                            col,
                            message: "variable indices start at 1".into(),
                        });
                    }
                    out.push((Tok::Var(idx - 1), line, col));
                }
                other => {
                    return Err(self.error(format!("unexpected character '{other}'")));
                }
            }
        }
        Ok(out)
    }

    fn bump(&mut self, n: usize) {
        self.pos += n;
        self.col += n;
    }
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
    laurent: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.at)
            .or_else(|| self.toks.last())
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((1, 1))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, message: message.into() }
    }

    fn eat(&mut self, want: &Tok) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {want:?}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let negated = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negated {
            acc = Expr::Neg(Box::new(acc));
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    let rhs = self.term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    let rhs = self.term()?;
                    acc = Expr::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            let rhs = self.factor()?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                let mut value = Rat::from_integer(v);
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.at += 1;
                            if d == BigInt::from(0) {
                                return Err(self.error("zero denominator in a rational literal"));
                            }
                            value /= Rat::from_integer(d);
                        }
                        _ => return Err(self.error("expected an integer after '/'")),
                    }
                }
                Ok(Expr::Rational(value))
            }
            Some(Tok::Var(i)) => {
                self.at += 1;
                if self.peek() == Some(&Tok::Caret) {
                    self.at += 1;
                    let exp = self.signed_int()?;
                    if exp < 0 && !self.laurent {
                        return Err(self.error("negative exponent outside laurent mode"));
                    }
                    Ok(Expr::Pow(Box::new(Expr::Var(i)), exp))
                } else {
                    Ok(Expr::Var(i))
                }
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                self.eat(&Tok::RParen)?;
                if self.peek() == Some(&Tok::Caret) {
                    self.at += 1;
                    let exp = self.signed_int()?;
                    if exp < 0 {
                        return Err(self.error("negative exponent on a parenthesized expression"));
                    }
                    Ok(Expr::Pow(Box::new(inner), exp))
                } else {
                    Ok(inner)
                }
            }
            _ => Err(self.error("expected a rational, a variable, or '('")),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                let magnitude = i64::try_from(&v)
                    .map_err(|_| self.error("exponent does not fit a machine word"))?;
                Ok(if negative { -magnitude } else { magnitude })
            }
            _ => Err(self.error("expected an integer exponent")),
        }
    }
}

fn max_var(e: &Expr) -> usize {
    match e {
        Expr::Rational(_) => 0,
        Expr::Var(i) => i + 1,
        Expr::Neg(a) => max_var(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => max_var(a).max(max_var(b)),
        Expr::Pow(a, _) => max_var(a),
    }
}

fn lower(e: &Expr, nvars: usize, laurent: bool) -> Result<Poly, ParseError> {
    let fail = |m: &str| ParseError { line: 1, col: 1, message: m.into() };
    Ok(match e {
        Expr::Rational(c) => {
            let p = Poly::constant(nvars, c.clone());
            if laurent { p.into_laurent() } else { p }
        }
        Expr::Var(i) => {
            let p = Poly::var(nvars, *i);
            if laurent { p.into_laurent() } else { p }
        }
        Expr::Neg(a) => -&lower(a, nvars, laurent)?,
        Expr::Add(a, b) => &lower(a, nvars, laurent)? + &lower(b, nvars, laurent)?,
        Expr::Sub(a, b) => &lower(a, nvars, laurent)? - &lower(b, nvars, laurent)?,
        Expr::Mul(a, b) => &lower(a, nvars, laurent)? * &lower(b, nvars, laurent)?,
        Expr::Pow(a, k) => {
            if *k < 0 {
                match **a {
                    Expr::Var(i) => {
                        let mut exps = vec![0i64; nvars];
                        exps[i] = *k;
                        Poly::from_term(nvars, exps, num::One::one())
                    }
                    _ => return Err(fail("negative powers apply to variables only")),
                }
            } else {
                let base = lower(a, nvars, laurent)?;
                base.pow(u32::try_from(*k).map_err(|_| fail("exponent too large"))?)
            }
        }
    })
}

/// Parses one polynomial (or Laurent polynomial) expression.
pub fn parse_poly(
    text: &str,
    mode: ParseMode,
    nvars: Option<usize>,
) -> Result<Poly, ParseError> {
    let laurent = mode == ParseMode::Laurent;
    let toks = Lexer::new(text).tokenize()?;
    let mut parser = Parser { toks, at: 0, laurent };
    let ast = parser.expr()?;
    if parser.at != parser.toks.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    let needed = max_var(&ast);
    let nvars = match nvars {
        Some(n) if needed > n => {
            return Err(ParseError {
                line: 1,
                col: 1,
                message: format!("expression uses {needed} variables but only {n} are in scope"),
            })
        }
        Some(n) => n,
        None => needed.max(1),
    };
    lower(&ast, nvars, laurent)
}

/// Parses `num : den` (a bare expression means denominator one).
pub fn parse_ratfn(text: &str, nvars: Option<usize>) -> Result<RatFn, ParseError> {
    let toks = Lexer::new(text).tokenize()?;
    let split = toks.iter().position(|(t, _, _)| *t == Tok::Colon);
    match split {
        None => {
            let p = parse_poly(text, ParseMode::Poly, nvars)?;
            Ok(RatFn::from_poly(p))
        }
        Some(at) => {
            let (line, col) = (toks[at].1, toks[at].2);
            let num_toks = toks[..at].to_vec();
            let den_toks = toks[at + 1..].to_vec();
            let nvars = match nvars {
                Some(n) => n,
                None => {
                    // infer from both sides
                    let mut p1 = Parser { toks: num_toks.clone(), at: 0, laurent: false };
                    let mut p2 = Parser { toks: den_toks.clone(), at: 0, laurent: false };
                    let a = p1.expr()?;
                    let b = p2.expr()?;
                    max_var(&a).max(max_var(&b)).max(1)
                }
            };
            let run = |toks: Vec<Spanned>| -> Result<Poly, ParseError> {
                let mut parser = Parser { toks, at: 0, laurent: false };
                let ast = parser.expr()?;
                if parser.at != parser.toks.len() {
                    return Err(parser.error("unexpected trailing input"));
                }
                lower(&ast, nvars, false)
            };
            let num = run(num_toks)?;
            let den = run(den_toks)?;
            RatFn::new(num, den).map_err(|_| ParseError {
                line,
                col,
                message: "denominator is the zero polynomial".into(),
            })
        }
    }
}

/// A parsed expression in one of the three modes.
#[derive(Debug, Clone)]
pub enum Parsed {
    Poly(Poly),
    RatFn(RatFn),
}

/// Mode-dispatched entry point over the whole grammar.
pub fn parse_expression(
    text: &str,
    mode: ParseMode,
    nvars: Option<usize>,
) -> Result<Parsed, ParseError> {
    match mode {
        ParseMode::Poly | ParseMode::Laurent => parse_poly(text, mode, nvars).map(Parsed::Poly),
        ParseMode::RatFn => parse_ratfn(text, nvars).map(Parsed::RatFn),
    }
}

/// Canonical printing: `Display` on `Poly` already orders terms by
/// descending degree-lexicographic rank with explicit '*'.
pub fn print_poly(p: &Poly) -> String {
    format!("{p}")
}

pub fn print_ratfn(r: &RatFn) -> String {
    format!("{r}")
}
