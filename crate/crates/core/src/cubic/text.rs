//! Human-readable polynomial syntax for cubic forms.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := number ['i'] | 'i' | 'z1' | 'z2' | 'z3' | 'z4' | '(' expr ')'
//! ```
//!
//! Parenthesized sub-expressions are multiplied out, so both `(2+3i)*z1^3`
//! and `(z1+z2+z3+z4)^3` are accepted. The result must be a homogeneous cubic.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{exponent_index, CubicSurface, MONOMIALS};
use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};

type Poly = BTreeMap<[u8; 4], C64>;

fn constant(c: C64) -> Poly {
    let mut p = Poly::new();
    p.insert([0; 4], c);
    p
}

fn add(a: &mut Poly, b: Poly, sign: f64) {
    for (e, c) in b {
        *a.entry(e).or_insert(ZERO) += c * sign;
    }
}

fn mul(a: &Poly, b: &Poly) -> Result<Poly> {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut e = [0u8; 4];
            for k in 0..4 {
                e[k] = ea[k]
                    .checked_add(eb[k])
                    .filter(|d| *d <= 3)
                    .ok_or_else(|| Error::Parse("degree exceeds 3".into()))?;
            }
            *out.entry(e).or_insert(ZERO) += ca * cb;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at byte {}", self.pos)))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::new();
        let mut sign = 1.0;
        match self.peek() {
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                sign = -1.0;
                self.pos += 1;
            }
            _ => {}
        }
        add(&mut acc, self.term()?, sign);
        loop {
            match self.peek() {
                Some(b'+') => sign = 1.0,
                Some(b'-') => sign = -1.0,
                _ => return Ok(acc),
            }
            self.pos += 1;
            add(&mut acc, self.term()?, sign);
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.peek();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .ok()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("expected exponent at byte {start}")))?;
            let mut acc = constant(C64::new(1.0, 0.0));
            for _ in 0..n {
                acc = mul(&acc, &base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'z') => {
                self.pos += 1;
                match self.s.get(self.pos) {
                    Some(d @ b'1'..=b'4') => {
                        let mut e = [0u8; 4];
                        e[(d - b'1') as usize] = 1;
                        self.pos += 1;
                        let mut p = Poly::new();
                        p.insert(e, C64::new(1.0, 0.0));
                        Ok(p)
                    }
                    _ => self.err("expected variable z1..z4"),
                }
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(constant(C64::i()))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.s.len() {
                    let ch = self.s[self.pos];
                    let exp_sign = (ch == b'+' || ch == b'-') && matches!(self.s[self.pos - 1], b'e' | b'E');
                    if ch.is_ascii_digit() || ch == b'.' || ch == b'e' || ch == b'E' || exp_sign {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                let x: f64 = text.parse().map_err(|_| Error::Parse(format!("bad number {text:?}")))?;
                if self.s.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    Ok(constant(C64::new(0.0, x)))
                } else {
                    Ok(constant(C64::new(x, 0.0)))
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a homogeneous cubic such as `z1^3 + 2*z2*z3*z4 - (1+2i)*z4^3`.
pub fn parse_cubic(text: &str) -> Result<CubicSurface> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let mut coeffs = [ZERO; 20];
    for (e, c) in poly {
        if c == ZERO {
            continue;
        }
        match exponent_index(e) {
            Some(i) => coeffs[i] += c,
            None => return Err(Error::Parse("polynomial is not a homogeneous cubic".into())),
        }
    }
    CubicSurface::new(coeffs).map_err(|_| Error::Parse("polynomial is identically zero".into()))
}

fn monomial_text(e: &[u8; 4]) -> String {
    let mut parts = Vec::new();
    for (k, &p) in e.iter().enumerate() {
        match p {
            0 => {}
            1 => parts.push(format!("z{}", k + 1)),
            _ => parts.push(format!("z{}^{}", k + 1, p)),
        }
    }
    parts.join("*")
}

/// Prints a cubic in the syntax accepted by [`parse_cubic`]. Floating-point
/// values use Rust's shortest round-trip formatting, so parsing the output
/// reproduces the coefficients exactly.
pub fn format_cubic(c: &CubicSurface) -> String {
    let mut out = String::new();
    for (idx, coef) in c.coeffs().iter().enumerate() {
        if *coef == ZERO {
            continue;
        }
        let mono = monomial_text(&MONOMIALS[idx]);
        let first = out.is_empty();
        if coef.im == 0.0 {
            let (sign, mag) = if coef.re < 0.0 { ("-", -coef.re) } else { ("+", coef.re) };
            if first {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                write!(out, " {sign} ").unwrap();
            }
            if mag == 1.0 {
                out.push_str(&mono);
            } else {
                write!(out, "{mag:?}*{mono}").unwrap();
            }
        } else {
            if !first {
                out.push_str(" + ");
            }
            let im_sign = if coef.im < 0.0 || (coef.im == 0.0 && coef.im.is_sign_negative()) { '-' } else { '+' };
            write!(out, "({:?}{}{:?}i)*{}", coef.re, im_sign, coef.im.abs(), mono).unwrap();
        }
    }
    out
}
