//! Expression grammar for scalars, log forms and log polyvectors.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/" | wedge) unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?          -- only for scalar atoms
//! atom   := integer | ident | "(" expr ")"
//!         | "d(" expr ")" | "dlog(" expr ")" | "D(" ident ")"
//! wedge  := "∧" | "/\" | "^"             -- "^" between non-scalars
//! ```
//!
//! `d(x)` is the differential, `dlog(f)` is `df/f` and `D(x)` is the
//! coordinate vector field `∂_x`. Rational literals are written `3/2`.

use num::BigInt;

use super::chart::ChartRef;
use super::forms::{LogForm, LogMultiVec};
use super::poly::{Poly, Q};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Wedge,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, co) = (line, col);
        let mut push = |tok: Tok| out.push(Token { tok, line: l, column: co });
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            push(Tok::Int(s.parse().unwrap()));
            col += i - start;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            push(Tok::Ident(chars[start..i].iter().collect()));
            col += i - start;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'\\') {
            push(Tok::Wedge);
            i += 2;
            col += 2;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '∧' => Tok::Wedge,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::ParseError { line, column: col, message: format!("unexpected character {c:?}") });
            }
        };
        push(tok);
        i += 1;
        col += 1;
    }
    out.push(Token { tok: Tok::End, line, column: col });
    Ok(out)
}

/// Parsed value: a function, a form of positive degree or a polyvector.
#[derive(Clone, Debug)]
enum Value {
    Scalar(RatFunc),
    Form(LogForm),
    Vector(LogMultiVec),
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    chart: &'a ChartRef,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at<T>(&self, t: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::ParseError { line: t.line, column: t.column, message: message.into() })
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        let t = self.bump();
        if t.tok == tok {
            Ok(())
        } else {
            self.err_at(&t, format!("expected {tok:?}"))
        }
    }

    fn nv(&self) -> usize {
        self.chart.dim()
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let t = self.peek().clone();
            let sign = match t.tok {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.term()?;
            let rhs = if sign < 0 { negate(rhs) } else { rhs };
            acc = match add(acc, rhs) {
                Some(v) => v,
                None => return self.err_at(&t, "cannot add terms of different type or degree"),
            };
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Star | Tok::Wedge => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = match product(acc, rhs) {
                        Some(v) => v,
                        None => return self.err_at(&t, "cannot multiply these operands"),
                    };
                }
                Tok::Caret if !matches!(acc, Value::Scalar(_)) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = match product(acc, rhs) {
                        Some(v) => v,
                        None => return self.err_at(&t, "cannot wedge these operands"),
                    };
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    let Value::Scalar(den) = rhs else {
                        return self.err_at(&t, "can only divide by a function");
                    };
                    let Some(inv) = den.recip() else {
                        return self.err_at(&t, "division by zero");
                    };
                    acc = scale(acc, &inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(negate(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            if let Value::Scalar(f) = &base {
                self.bump();
                let t = self.bump();
                let Tok::Int(e) = t.tok.clone() else {
                    return self.err_at(&t, "expected an integer exponent");
                };
                let e: u32 = match e.try_into() {
                    Ok(e) => e,
                    Err(_) => return self.err_at(&t, "exponent too large"),
                };
                let mut r = RatFunc::one(self.nv());
                for _ in 0..e {
                    r = &r * f;
                }
                return Ok(Value::Scalar(r));
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Value> {
        let t = self.bump();
        match t.tok.clone() {
            Tok::Int(n) => Ok(Value::Scalar(RatFunc::constant(self.nv(), Q::from_integer(n)))),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::Ident(name) if self.peek().tok == Tok::LParen && matches!(name.as_str(), "d" | "dlog" | "D") => {
                self.bump();
                let v = if name == "D" {
                    let arg = self.bump();
                    let Tok::Ident(var) = arg.tok.clone() else {
                        return self.err_at(&arg, "D() takes a coordinate name");
                    };
                    let Some(i) = self.chart.index_of(&var) else {
                        return self.err_at(&arg, format!("unknown variable {var}"));
                    };
                    let mut v = LogMultiVec::basis(self.chart, 1 << i);
                    if self.chart.is_divisorial(i) {
                        v = v.mul_func(&RatFunc::new(Poly::one(self.nv()), Poly::var(self.nv(), i)));
                    }
                    Value::Vector(v)
                } else {
                    let inner = self.expr()?;
                    match (name.as_str(), inner) {
                        ("d", Value::Scalar(f)) => Value::Form(LogForm::differential(self.chart, &f)),
                        ("d", Value::Form(w)) => Value::Form(w.d()),
                        ("dlog", Value::Scalar(f)) => {
                            let Some(inv) = f.recip() else {
                                return self.err_at(&t, "dlog of zero");
                            };
                            Value::Form(LogForm::differential(self.chart, &f).mul_func(&inv))
                        }
                        _ => return self.err_at(&t, format!("{name}() applied to an unsupported argument")),
                    }
                };
                self.expect(Tok::RParen)?;
                Ok(normalize(v))
            }
            Tok::Ident(name) => match self.chart.index_of(&name) {
                Some(i) => Ok(Value::Scalar(RatFunc::from_poly(Poly::var(self.nv(), i)))),
                None => self.err_at(&t, format!("unknown variable {name}")),
            },
            Tok::End => self.err_at(&t, "unexpected end of input"),
            other => self.err_at(&t, format!("unexpected {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::Wedge => "wedge",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        _ => "token",
    }
}

fn normalize(v: Value) -> Value {
    match v {
        Value::Form(w) if w.degree() == 0 => Value::Scalar(w.coeff(0)),
        Value::Vector(p) if p.degree() == 0 => Value::Scalar(p.coeff(0)),
        other => other,
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(-s),
        Value::Form(w) => Value::Form(w.neg()),
        Value::Vector(p) => Value::Vector(p.neg()),
    }
}

fn scale(v: Value, f: &RatFunc) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(&s * f),
        Value::Form(w) => Value::Form(w.mul_func(f)),
        Value::Vector(p) => Value::Vector(p.mul_func(f)),
    }
}

fn add(a: Value, b: Value) -> Option<Value> {
    let v = match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
        (Value::Form(x), Value::Form(y)) => Value::Form(x.add(&y).ok()?),
        (Value::Vector(x), Value::Vector(y)) => Value::Vector(x.add(&y).ok()?),
        (Value::Scalar(x), other) | (other, Value::Scalar(x)) if x.is_zero() => other,
        _ => return None,
    };
    Some(normalize(v))
}

fn product(a: Value, b: Value) -> Option<Value> {
    let v = match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
        (Value::Scalar(x), Value::Form(w)) | (Value::Form(w), Value::Scalar(x)) => Value::Form(w.mul_func(&x)),
        (Value::Scalar(x), Value::Vector(p)) | (Value::Vector(p), Value::Scalar(x)) => Value::Vector(p.mul_func(&x)),
        (Value::Form(x), Value::Form(y)) => Value::Form(x.wedge(&y).ok()?),
        (Value::Vector(x), Value::Vector(y)) => Value::Vector(x.wedge(&y).ok()?),
        _ => return None,
    };
    Some(normalize(v))
}

fn parse_value(chart: &ChartRef, text: &str) -> Result<Value> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, chart };
    let v = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err_at(&t, format!("unexpected {}", describe(&t.tok)));
    }
    Ok(v)
}

fn whole(text: &str) -> Error {
    let lines = text.lines().count().max(1);
    let col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    Error::ParseError { line: lines, column: col, message: "expression has the wrong type".into() }
}

/// Parse a function.
pub fn parse_scalar(chart: &ChartRef, text: &str) -> Result<RatFunc> {
    match parse_value(chart, text)? {
        Value::Scalar(f) => Ok(f),
        _ => Err(whole(text)),
    }
}

/// Parse a polynomial.
pub fn parse_poly(chart: &ChartRef, text: &str) -> Result<Poly> {
    let f = parse_scalar(chart, text)?;
    f.as_poly().cloned().ok_or_else(|| whole(text))
}

/// Parse a log form of the given degree.
pub fn parse_form(chart: &ChartRef, text: &str, degree: usize) -> Result<LogForm> {
    let w = match parse_value(chart, text)? {
        Value::Scalar(f) => LogForm::scalar(chart, f),
        Value::Form(w) => w,
        Value::Vector(_) => return Err(whole(text)),
    };
    if w.is_zero() {
        return Ok(LogForm::zero(chart, degree));
    }
    if w.degree() != degree {
        return Err(whole(text));
    }
    Ok(w)
}

/// Parse a polyvector of the given degree.
pub fn parse_multivec(chart: &ChartRef, text: &str, degree: usize) -> Result<LogMultiVec> {
    let p = match parse_value(chart, text)? {
        Value::Scalar(f) => LogMultiVec::scalar(chart, f),
        Value::Vector(p) => p,
        Value::Form(_) => return Err(whole(text)),
    };
    if p.is_zero() {
        return Ok(LogMultiVec::zero(chart, degree));
    }
    if p.degree() != degree {
        return Err(whole(text));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::chart::Chart;
    use crate::algebra_core::poly::q;

    #[test]
    fn log_basis_vector_term() {
        let c = Chart::new(&["x1", "y1"], &["x1"]).unwrap();
        let p = parse_multivec(&c, "x1*D(x1)^D(y1)", 2).unwrap();
        assert_eq!(p, LogMultiVec::basis(&c, 0b11));
    }

    #[test]
    fn malformed_reports_column() {
        let c = Chart::plain(&["x1"]).unwrap();
        match parse_scalar(&c, "x1*^") {
            Err(Error::ParseError { line: 1, column: 4, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rational_literals_and_powers() {
        let c = Chart::plain(&["x", "y"]).unwrap();
        let f = parse_poly(&c, "3/2*x^2 - y + 1").unwrap();
        assert_eq!(f.coeff(&crate::algebra_core::poly::Mono(vec![2, 0])), q(3, 2));
        assert_eq!(f.display_with(c.vars()), "3/2*x^2 - y + 1");
    }

    #[test]
    fn dlog_of_plain_variable() {
        let c = Chart::new(&["x", "y"], &["x"]).unwrap();
        let w = parse_form(&c, "x*dlog(y) + d(x)", 1).unwrap();
        // d(x) = x dlog x in the log basis
        assert_eq!(w.display(), "x*dlog(x) + (x/y)*d(y)".replace("(x/y)", "((x)/(y))"));
    }
}
