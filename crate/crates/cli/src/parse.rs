//! Field expressions and point lists.
//!
//! Fields are written as polynomial expressions in `x`, `y` times basis
//! tokens `dx`, `dy`, e.g. `y*(y-1)*dy` or `(x^2 - 1/2)*dx^2 + x*dx*dy`.
//! Coefficients are exact rationals; decimal literals are rejected.

use std::fmt;

use symtangent::algebra::rational::{one, parse_rat, zero};
use symtangent::algebra::vars;
use symtangent::atlas::{w1_ring, Center};
use symtangent::{Chart, FnPoint, LaurentPoly, Rat, SymTensorField, Vars};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("basis-degree mismatch: expected degree {expected}, found a term of degree {found}")]
    DegreeMismatch { expected: usize, found: i64 },
    #[error("mixed basis degrees {0:?}")]
    MixedDegrees(Vec<i64>),
    #[error("negative power of a basis token")]
    NegativeBasisPower,
    #[error("invalid point `{text}`: {msg}")]
    Point { text: String, msg: String },
}

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: i32 = 64;

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, msg: msg.into() }
}

/// A parsed field together with its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldExpression {
    pub source: String,
    pub field: SymTensorField,
}

impl FieldExpression {
    pub fn render(&self) -> String {
        self.field.to_pretty()
    }
}

impl fmt::Display for FieldExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses a degree-`m` field on `W1`.
pub fn parse_field(text: &str, m: usize) -> Result<FieldExpression, ParseError> {
    let expr = parse_expression(text)?;
    build_field(text, &expr, Some(m))
}

/// Parses a field and takes its degree from the basis tokens. A zero field
/// needs an explicit degree.
pub fn parse_field_any(text: &str) -> Result<FieldExpression, ParseError> {
    let expr = parse_expression(text)?;
    build_field(text, &expr, None)
}

fn field_ring() -> Vars {
    vars(&["x", "y", "dx", "dy"])
}

fn build_field(text: &str, expr: &LaurentPoly, m: Option<usize>) -> Result<FieldExpression, ParseError> {
    let mut degrees: Vec<i64> = Vec::new();
    for (mono, _) in expr.terms() {
        let e = mono.exponents();
        if e[2] < 0 || e[3] < 0 {
            return Err(ParseError::NegativeBasisPower);
        }
        let d = (e[2] + e[3]) as i64;
        if !degrees.contains(&d) {
            degrees.push(d);
        }
    }
    let m = match (m, degrees.as_slice()) {
        (Some(m), _) => {
            if let Some(&d) = degrees.iter().find(|&&d| d != m as i64) {
                return Err(ParseError::DegreeMismatch { expected: m, found: d });
            }
            m
        }
        (None, [d]) => *d as usize,
        (None, []) => 0,
        (None, _) => {
            degrees.sort_unstable();
            return Err(ParseError::MixedDegrees(degrees));
        }
    };
    let ring = w1_ring();
    let mut slots = vec![LaurentPoly::zero(&ring); m + 1];
    for (mono, c) in expr.terms() {
        let e = mono.exponents();
        let k = e[2] as usize;
        slots[k] = &slots[k] + &LaurentPoly::term(&ring, &[e[0], e[1]], c.clone());
    }
    let field = SymTensorField::new(Chart::W1.id(), Chart::W1.coords(), slots).expect("slots share the W1 ring");
    Ok(FieldExpression { source: text.to_string(), field })
}

/// Parses a polynomial expression over `x, y, dx, dy`.
pub fn parse_expression(text: &str) -> Result<LaurentPoly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring: field_ring() };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(syntax(p.pos, format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: Vars,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = acc * rhs;
                continue;
            }
            let c = constant_of(&rhs).ok_or_else(|| syntax(at + 1, "division by a non-constant"))?;
            if c == zero() {
                return Err(syntax(at + 1, "division by zero"));
            }
            acc = acc.scale(&(one() / c));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPoly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let negative = self.src.get(self.pos) == Some(&b'-');
        if negative {
            self.pos += 1;
        }
        let digits = self.digits();
        if digits.is_empty() {
            return Err(syntax(self.pos, "expected an integer exponent"));
        }
        if self.src.get(self.pos) == Some(&b'.') {
            return Err(syntax(self.pos, "decimal literals are not accepted"));
        }
        let e: i32 = digits
            .parse()
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| syntax(start, format!("exponent above {MAX_EXPONENT}")))?;
        let e = if negative { -e } else { e };
        base.pow_i(e).map_err(|_| syntax(start, "negative power of a non-monomial"))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<LaurentPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(syntax(self.pos, format!("unclosed `(` opened at position {open}")));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.digits();
                if matches!(self.src.get(self.pos), Some(b'.' | b'e' | b'E')) {
                    return Err(syntax(start, "decimal literals are not accepted"));
                }
                let value = parse_rat(&digits).map_err(|e| syntax(start, e.to_string()))?;
                Ok(LaurentPoly::constant(&self.ring, value))
            }
            Some(b'.') => Err(syntax(self.pos, "decimal literals are not accepted")),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                LaurentPoly::var(&self.ring, name)
                    .map_err(|_| syntax(start, format!("unknown identifier `{name}` (expected x, y, dx or dy)")))
            }
            Some(c) => Err(syntax(self.pos, format!("unexpected `{}`", c as char))),
            None => Err(syntax(self.pos, "unexpected end of input")),
        }
    }
}

fn constant_of(p: &LaurentPoly) -> Option<Rat> {
    if p.is_zero() {
        return Some(zero());
    }
    match p.as_monomial() {
        Some((m, c)) if m.exponents().iter().all(|&e| e == 0) => Some(c.clone()),
        _ => None,
    }
}

/// One point, either `a/b,c/d` in `W1` or homogeneous `[p:q],[r:s:t]`.
pub fn parse_point(n: u32, text: &str) -> Result<FnPoint, ParseError> {
    let t = text.trim();
    let bad = |msg: &str| ParseError::Point { text: t.to_string(), msg: msg.to_string() };
    if t.starts_with('[') {
        let (base, fiber) = t.split_once("],[").ok_or_else(|| bad("expected `[p:q],[r:s:t]`"))?;
        let base = base.strip_prefix('[').ok_or_else(|| bad("expected `[`"))?;
        let fiber = fiber.strip_suffix(']').ok_or_else(|| bad("expected `]`"))?;
        let nums = |s: &str| -> Result<Vec<Rat>, ParseError> {
            s.split(':').map(|c| parse_rat(c).map_err(|e| bad(&e.to_string()))).collect()
        };
        let (b, f) = (nums(base)?, nums(fiber)?);
        let b: [Rat; 2] = b.try_into().map_err(|_| bad("base needs two coordinates"))?;
        let f: [Rat; 3] = f.try_into().map_err(|_| bad("fiber needs three coordinates"))?;
        return FnPoint::new(n, b, f).map_err(|e| bad(&e.to_string()));
    }
    let (x, y) = t.split_once(',').ok_or_else(|| bad("expected `x,y` or `[p:q],[r:s:t]`"))?;
    let x = parse_rat(x).map_err(|e| bad(&e.to_string()))?;
    let y = parse_rat(y).map_err(|e| bad(&e.to_string()))?;
    Ok(FnPoint::from_w1(n, x, y))
}

/// Points separated by `;`.
pub fn parse_points(n: u32, text: &str) -> Result<Vec<FnPoint>, ParseError> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(|s| parse_point(n, s)).collect()
}

/// Blow-up centers: points that must lie in `W1`.
pub fn parse_centers(n: u32, text: &str) -> Result<Vec<Center>, ParseError> {
    parse_points(n, text)?
        .into_iter()
        .map(|p| {
            p.to_w1().map(Center::from).ok_or_else(|| ParseError::Point {
                text: p.to_canonical(),
                msg: "centers must lie in the chart W1".into(),
            })
        })
        .collect()
}
