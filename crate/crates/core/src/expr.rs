//! Text syntax for polynomials, rational functions, vector fields and
//! one-forms.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := base ('^' exponent)?
//! exponent := ('-' | '+')* base
//! base   := literal | var | '(' expr ')'
//! literal:= int ('/' int)? 'i'? | 'i'
//! ```
//!
//! Exponents must evaluate to integer constants. Multiplication is never
//! implicit: `2x` is rejected, while `2i` is a single literal. Fields are
//! written `<expr> d/dx + <expr> d/dy` and one-forms `<expr> dx + <expr> dy`
//! (with `u`, `v` in the covering chart).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{BiPoly, GaussianRational, RatFunc, UniPoly};
use crate::foliation::{Coords, OneForm2, VectorField2};

const MAX_EXPONENT: i64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("{line}:{col}: syntax error: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: exponent is not an integer")]
    NonIntegerExponent { line: usize, col: usize },
    #[error("{line}:{col}: unknown variable `{name}` (expected {expected})")]
    UnknownVariable {
        line: usize,
        col: usize,
        name: String,
        expected: String,
    },
    #[error("{line}:{col}: division by zero")]
    DivisionByZero { line: usize, col: usize },
    #[error("expression is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("expression is not univariate in x: {0}")]
    NotUnivariate(String),
}

fn syntax(pos: Pos, msg: impl Into<String>) -> ExprError {
    ExprError::SyntaxError {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    U,
    V,
}

impl Var {
    fn from_name(s: &str) -> Option<Self> {
        match s {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "u" => Some(Var::U),
            "v" => Some(Var::V),
            _ => None,
        }
    }

    pub fn chart(self) -> Coords {
        match self {
            Var::X | Var::Y => Coords::XY,
            Var::U | Var::V => Coords::UV,
        }
    }

    /// `true` for the first coordinate of its chart.
    fn is_first(self) -> bool {
        matches!(self, Var::X | Var::U)
    }

    fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::U => "u",
            Var::V => "v",
        }
    }
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(GaussianRational),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, i64),
}

impl Expr {
    /// The chart of the variables used, if any.
    pub fn chart(&self) -> Option<Coords> {
        match self {
            Expr::Const(_) => None,
            Expr::Var(v) => Some(v.chart()),
            Expr::Neg(a) | Expr::Pow(a, _) => a.chart(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => a.chart().or_else(|| b.chart()),
        }
    }

    /// Exact value; the variables of either chart map to the first and
    /// second slot of the result.
    pub fn to_ratfunc(&self) -> Result<RatFunc, ExprError> {
        Ok(match self {
            Expr::Const(c) => RatFunc::constant(c.clone()),
            Expr::Var(v) => RatFunc::from_poly(if v.is_first() { BiPoly::x() } else { BiPoly::y() }),
            Expr::Neg(a) => -&a.to_ratfunc()?,
            Expr::Add(a, b) => &a.to_ratfunc()? + &b.to_ratfunc()?,
            Expr::Sub(a, b) => &a.to_ratfunc()? - &b.to_ratfunc()?,
            Expr::Mul(a, b) => &a.to_ratfunc()? * &b.to_ratfunc()?,
            Expr::Div(a, b, pos) => {
                a.to_ratfunc()?
                    .checked_div(&b.to_ratfunc()?)
                    .map_err(|_| ExprError::DivisionByZero {
                        line: pos.line,
                        col: pos.col,
                    })?
            }
            Expr::Pow(a, e) => {
                let base = a.to_ratfunc()?;
                let (num, den) = (
                    base.num().pow(e.unsigned_abs() as u32),
                    base.den().pow(e.unsigned_abs() as u32),
                );
                let (num, den) = if *e >= 0 { (num, den) } else { (den, num) };
                RatFunc::new(num, den).map_err(|_| ExprError::DivisionByZero { line: 0, col: 0 })?
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(_) | Expr::Var(_) => 5,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => {
                let s = c.to_string();
                let plain = c.is_real() && c.re.is_integer() && !c.re.is_negative();
                if plain || s.starts_with('(') {
                    write!(f, "{s}")
                } else {
                    write!(f, "({s})")
                }
            }
            Expr::Var(v) => write!(f, "{}", v.name()),
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_operand(f, a, 4)
            }
            Expr::Add(a, b) => {
                write_operand(f, a, 1)?;
                write!(f, " + ")?;
                write_operand(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_operand(f, a, 1)?;
                write!(f, " - ")?;
                write_operand(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_operand(f, a, 2)?;
                write!(f, "*")?;
                write_operand(f, b, 3)
            }
            Expr::Div(a, b, _) => {
                write_operand(f, a, 2)?;
                write!(f, "/")?;
                write_operand(f, b, 4)
            }
            Expr::Pow(a, e) => {
                write_operand(f, a, 5)?;
                if *e < 0 {
                    write!(f, "^({e})")
                } else {
                    write!(f, "^{e}")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    /// `d/dx` and friends; holds the variable name.
    Deriv(String),
    /// `dx` and friends; holds the variable name.
    Diff(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
    /// Character offset just past the token.
    end: usize,
    start: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, col: &mut usize, k: usize| {
        *i += k;
        *col += k;
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let start = i;
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(&mut i, &mut col, 1);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j < chars.len() && chars[j] == '.' {
                return Err(syntax(
                    Pos { line, col: col + j - i },
                    "decimal literals are not supported; write a fraction",
                ));
            }
            let digits: String = chars[i..j].iter().collect();
            let k = j - i;
            advance(&mut i, &mut col, k);
            Tok::Int(digits.parse().expect("digit run"))
        } else if c.is_alphabetic() {
            let mut j = i;
            while j < chars.len() && chars[j].is_alphanumeric() {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            if word == "d" && j + 1 < chars.len() && chars[j] == '/' && chars[j + 1] == 'd' {
                let mut k = j + 2;
                while k < chars.len() && chars[k].is_alphanumeric() {
                    k += 1;
                }
                let var: String = chars[j + 2..k].iter().collect();
                if Var::from_name(&var).is_none() {
                    return Err(ExprError::UnknownVariable {
                        line,
                        col: col + j + 2 - i,
                        name: var,
                        expected: "x, y, u or v".into(),
                    });
                }
                let n = k - i;
                advance(&mut i, &mut col, n);
                Tok::Deriv(var)
            } else {
                let n = j - i;
                advance(&mut i, &mut col, n);
                match word.strip_prefix('d') {
                    Some(v) if Var::from_name(v).is_some() => Tok::Diff(v.to_string()),
                    _ => Tok::Ident(word),
                }
            }
        } else {
            let t = match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' | '·' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
            };
            advance(&mut i, &mut col, 1);
            t
        };
        out.push(Token {
            tok,
            pos,
            start,
            end: i,
        });
    }
    out.push(Token {
        tok: Tok::End,
        pos: Pos { line, col },
        start: chars.len(),
        end: chars.len(),
    });
    Ok(out)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Deriv(v) => format!("`d/d{v}`"),
        Tok::Diff(v) => format!("`d{v}`"),
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

struct Parser {
    toks: Vec<Token>,
    idx: usize,
    chart: Option<Coords>,
}

impl Parser {
    fn new(text: &str, chart: Option<Coords>) -> Result<Self, ExprError> {
        Ok(Self {
            toks: lex(text)?,
            idx: 0,
            chart,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.idx]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.idx].clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ExprError {
        let t = self.peek();
        syntax(t.pos, format!("expected {wanted}, found {}", describe(&t.tok)))
    }

    fn expect_end(&self) -> Result<(), ExprError> {
        match self.peek().tok {
            Tok::End => Ok(()),
            _ => Err(self.unexpected("an operator or end of input")),
        }
    }

    fn use_var(&mut self, name: &str, pos: Pos) -> Result<Var, ExprError> {
        let expected = match self.chart {
            Some(Coords::XY) => "x or y",
            Some(Coords::UV) => "u or v",
            None => "x, y, u or v",
        };
        let unknown = || ExprError::UnknownVariable {
            line: pos.line,
            col: pos.col,
            name: name.to_string(),
            expected: expected.to_string(),
        };
        let v = Var::from_name(name).ok_or_else(unknown)?;
        match self.chart {
            Some(c) if c != v.chart() => Err(unknown()),
            _ => {
                self.chart = Some(v.chart());
                Ok(v)
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let pos = self.bump().pos;
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?), pos);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.peek().pos;
        let exponent = self.exponent()?;
        let not_integer = ExprError::NonIntegerExponent {
            line: pos.line,
            col: pos.col,
        };
        let value = if exponent.chart().is_some() {
            return Err(not_integer);
        } else {
            exponent.to_ratfunc()?.as_constant().ok_or(not_integer.clone())?
        };
        if !value.is_real() || !value.re.is_integer() {
            return Err(not_integer);
        }
        let e = value
            .re
            .to_integer()
            .to_i64()
            .filter(|e| e.abs() <= MAX_EXPONENT)
            .ok_or_else(|| syntax(pos, format!("exponent exceeds {MAX_EXPONENT} in magnitude")))?;
        Ok(Expr::Pow(Box::new(base), e))
    }

    /// A signed base; exponents do not chain.
    fn exponent(&mut self) -> Result<Expr, ExprError> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.exponent()?)))
            }
            Tok::Plus => {
                self.bump();
                self.exponent()
            }
            _ => self.base(),
        }
    }

    /// Consumes an `i` written directly after the previous token.
    fn adjacent_i(&mut self) -> bool {
        let prev_end = self.toks[self.idx - 1].end;
        let t = self.peek();
        if t.tok == Tok::Ident("i".into()) && t.start == prev_end {
            self.bump();
            true
        } else {
            false
        }
    }

    fn literal(&mut self, n: BigInt) -> Result<Expr, ExprError> {
        let mut value = GaussianRational::from_rational(n.into());
        let next = &self.toks[self.idx];
        let after = &self.toks[(self.idx + 1).min(self.toks.len() - 1)];
        if next.tok == Tok::Slash && next.start == self.toks[self.idx - 1].end {
            if let Tok::Int(d) = &after.tok {
                if after.start == next.end {
                    let (d, pos) = (d.clone(), after.pos);
                    if d.is_zero() {
                        return Err(ExprError::DivisionByZero {
                            line: pos.line,
                            col: pos.col,
                        });
                    }
                    self.bump();
                    self.bump();
                    value = &value * &GaussianRational::from_rational(d.into()).inv().expect("nonzero");
                }
            }
        }
        if self.adjacent_i() {
            value = &value * &GaussianRational::i();
        }
        if let Tok::Ident(_) = self.peek().tok {
            return Err(self.implicit());
        }
        Ok(Expr::Const(value))
    }

    fn implicit(&self) -> ExprError {
        syntax(self.peek().pos, "implicit multiplication is not allowed; insert `*`")
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        let t = self.bump();
        let e = match t.tok {
            Tok::Int(n) => return self.literal(n),
            Tok::Ident(ref name) if name == "i" => Expr::Const(GaussianRational::i()),
            Tok::Ident(ref name) => Expr::Var(self.use_var(name, t.pos)?),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                inner
            }
            _ => {
                self.idx -= 1;
                return Err(self.unexpected("a number, variable or `(`"));
            }
        };
        if matches!(self.peek().tok, Tok::Ident(_) | Tok::Int(_) | Tok::LParen) {
            return Err(self.implicit());
        }
        Ok(e)
    }

    /// `±(coef) basis ± (coef) basis ...`, where `basis` is picked out by
    /// `pick` from a token. Returns the accumulated coefficients of the
    /// first and second basis element.
    fn combination(&mut self, pick: fn(&Tok) -> Option<&String>, what: &str) -> Result<(Expr, Expr), ExprError> {
        let zero = || Expr::Const(GaussianRational::zero());
        let (mut first, mut second) = (zero(), zero());
        let mut seen = false;
        loop {
            let mut negative = false;
            loop {
                match self.peek().tok {
                    Tok::Minus => negative = !negative,
                    Tok::Plus => {}
                    _ => break,
                }
                self.bump();
            }
            if seen && self.toks[self.idx - 1].tok != Tok::Plus && self.toks[self.idx - 1].tok != Tok::Minus {
                return Err(self.unexpected("`+` or `-`"));
            }
            let coef = if pick(&self.peek().tok).is_some() {
                Expr::Const(GaussianRational::one())
            } else {
                self.term()?
            };
            let t = self.peek().clone();
            let var_name = pick(&t.tok).ok_or_else(|| self.unexpected(what))?.clone();
            self.bump();
            let var = self.use_var(&var_name, t.pos)?;
            let coef = if negative { Expr::Neg(Box::new(coef)) } else { coef };
            let slot = if var.is_first() { &mut first } else { &mut second };
            *slot = Expr::Add(Box::new(std::mem::replace(slot, zero())), Box::new(coef));
            seen = true;
            if self.peek().tok == Tok::End {
                return Ok((first, second));
            }
        }
    }
}

/// Parses an expression into its tree. `chart` restricts the variables.
pub fn parse_expr(text: &str, chart: Option<Coords>) -> Result<Expr, ExprError> {
    let mut p = Parser::new(text, chart)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses a rational function; the chart is taken from the variables used,
/// then from `chart`, then defaults to `(x, y)`.
pub fn parse_ratfunc(text: &str, chart: Option<Coords>) -> Result<(RatFunc, Coords), ExprError> {
    let e = parse_expr(text, chart)?;
    let coords = e.chart().or(chart).unwrap_or(Coords::XY);
    Ok((e.to_ratfunc()?, coords))
}

pub fn parse_poly(text: &str, chart: Option<Coords>) -> Result<(BiPoly, Coords), ExprError> {
    let (f, coords) = parse_ratfunc(text, chart)?;
    f.as_poly()
        .map(|p| (p, coords))
        .ok_or_else(|| ExprError::NotPolynomial(text.to_string()))
}

/// A polynomial in `x` alone.
pub fn parse_univariate(text: &str) -> Result<UniPoly, ExprError> {
    let (p, _) = parse_poly(text, Some(Coords::XY))?;
    p.as_unipoly_x()
        .ok_or_else(|| ExprError::NotUnivariate(text.to_string()))
}

/// Parses `<expr> d/dx + <expr> d/dy`; repeated basis terms accumulate.
pub fn parse_field(text: &str, chart: Option<Coords>) -> Result<VectorField2, ExprError> {
    let mut p = Parser::new(text, chart)?;
    let (a, b) = p.combination(
        |t| match t {
            Tok::Deriv(v) => Some(v),
            _ => None,
        },
        "`d/dx` or `d/dy`",
    )?;
    let coords = p.chart.unwrap_or(Coords::XY);
    Ok(VectorField2::new(a.to_ratfunc()?, b.to_ratfunc()?, coords))
}

/// Parses `<expr> dx + <expr> dy`.
pub fn parse_form(text: &str, chart: Option<Coords>) -> Result<OneForm2, ExprError> {
    let mut p = Parser::new(text, chart)?;
    let (a, b) = p.combination(
        |t| match t {
            Tok::Diff(v) => Some(v),
            _ => None,
        },
        "`dx` or `dy`",
    )?;
    let coords = p.chart.unwrap_or(Coords::XY);
    Ok(OneForm2::new(a.to_ratfunc()?, b.to_ratfunc()?, coords))
}

/// Canonical text of a polynomial, accepted back by [`parse_poly`].
pub fn print_poly(p: &BiPoly, coords: Coords) -> String {
    let (vx, vy) = coords.names();
    p.display_with(vx, vy)
}

pub fn print_ratfunc(f: &RatFunc, coords: Coords) -> String {
    let (vx, vy) = coords.names();
    f.display_with(vx, vy)
}
