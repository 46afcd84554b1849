//! Text form of operators.
//!
//! ```text
//! operator := ["+"|"-"] product (("+"|"-") product)*
//! product  := factor ("*" factor)*
//! factor   := atom ["^" uint]
//! atom     := int ["/" int] | variable | "(" operator ")"
//! vector   := "[" operator ("," operator)* "]"
//! ```
//!
//! Products are evaluated left to right in the Weyl algebra, so `dt1*t1`
//! parses to `t1*dt1 + 1`.

use crate::coef::Coef;
use crate::error::{DmodError, Result};
use crate::mono;
use crate::operator::Operator;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> std::result::Result<Vec<(Tok, usize)>, (usize, String)> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let s = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                lx.toks.push((Tok::Int(lx.src[s..i].to_string()), s));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let s = i;
                while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                lx.toks.push((Tok::Ident(lx.src[s..i].to_string()), s));
            } else if "+-*^/()[],".contains(c) {
                lx.toks.push((Tok::Sym(c), i));
                i += 1;
            } else {
                return Err((i, format!("unexpected character `{c}`")));
            }
        }
        Ok(lx.toks)
    }
}

struct Parser<'r> {
    ring: &'r Ring,
    names: Vec<String>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

type PResult<T> = std::result::Result<T, (usize, String)>;

impl<'r> Parser<'r> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err((self.offset(), format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> PResult<Operator> {
        let mut acc = Operator::zero(self.ring, 1);
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let t = self.product()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> PResult<Operator> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn uint(&mut self) -> PResult<u32> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                s.parse().map_err(|_| (at, format!("exponent `{s}` too large")))
            }
            _ => Err((at, "expected a nonnegative integer".into())),
        }
    }

    fn factor(&mut self) -> PResult<Operator> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.uint()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> PResult<Operator> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let mut text = s;
                if self.peek() == Some(&Tok::Sym('/')) {
                    self.pos += 1;
                    let d_at = self.offset();
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.pos += 1;
                            text = format!("{text}/{d}");
                        }
                        _ => return Err((d_at, "expected denominator".into())),
                    }
                }
                let c: Coef = text.parse().map_err(|e: crate::coef::ParseCoefError| (at, e.to_string()))?;
                Ok(Operator::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.names.iter().position(|n| *n == name) {
                    Some(slot) => Ok(Operator::var(self.ring, slot)),
                    None => Err((at, format!("unknown variable `{name}`"))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err((at, "expected a number, variable or `(`".into())),
        }
    }
}

fn line_col(src: &str, offset: usize, origin: (usize, usize)) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let nl = before.matches('\n').count();
    if nl == 0 {
        (origin.0, origin.1 + before.chars().count())
    } else {
        let last = before.rfind('\n').unwrap();
        (origin.0 + nl, 1 + before[last + 1..].chars().count())
    }
}

fn run<T>(ring: &Ring, src: &str, origin: (usize, usize), f: impl FnOnce(&mut Parser) -> PResult<T>) -> Result<T> {
    let to_err = |(off, msg): (usize, String)| {
        let (line, col) = line_col(src, off, origin);
        DmodError::Parse { line, col, msg }
    };
    let toks = Lexer::run(src).map_err(to_err)?;
    let mut p = Parser { ring, names: ring.var_names(), toks, pos: 0, end: src.len() };
    let out = f(&mut p).map_err(to_err)?;
    if p.pos != p.toks.len() {
        return Err(to_err((p.offset(), "unexpected trailing input".into())));
    }
    Ok(out)
}

/// Parses a rank-1 operator.
pub fn parse(ring: &Ring, src: &str) -> Result<Operator> {
    parse_at(ring, src, (1, 1))
}

/// Parses a rank-1 operator, reporting errors relative to `origin` (line, column).
pub fn parse_at(ring: &Ring, src: &str, origin: (usize, usize)) -> Result<Operator> {
    run(ring, src, origin, |p| p.expr())
}

/// Parses `[op, op, ...]` into an element of a free module.
pub fn parse_vector(ring: &Ring, src: &str) -> Result<Operator> {
    parse_vector_at(ring, src, (1, 1))
}

pub fn parse_vector_at(ring: &Ring, src: &str, origin: (usize, usize)) -> Result<Operator> {
    run(ring, src, origin, |p| {
        p.expect('[')?;
        let mut comps = vec![p.expr()?];
        while p.eat(',') {
            comps.push(p.expr()?);
        }
        p.expect(']')?;
        Ok(Operator::from_components(p.ring, &comps))
    })
}

/// Renders a rank-1 operator, or a vector `[c1, c2, ...]` for higher rank.
pub fn render(op: &Operator) -> String {
    if op.rank == 1 {
        return render_component(op, 0);
    }
    let parts: Vec<String> = (0..op.rank).map(|i| render_component(op, i)).collect();
    format!("[{}]", parts.join(", "))
}

fn render_component(op: &Operator, comp: usize) -> String {
    let names = op.ring.var_names();
    let mut terms: Vec<(&mono::Mono, &Coef)> =
        op.iter().filter(|(c, _, _)| *c == comp).map(|(_, m, k)| (m, k)).collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by(|a, b| mono::degree(b.0).cmp(&mono::degree(a.0)).then_with(|| b.0.cmp(a.0)));
    let mut out = String::new();
    for (idx, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        for (slot, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[slot].clone()),
                _ => factors.push(format!("{}^{}", names[slot], e)),
            }
        }
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}
