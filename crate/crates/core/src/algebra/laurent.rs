//! Multivariate Laurent polynomials with exact rational coefficients.
//!
//! A [`LaurentPoly`] lives in a ring described by an ordered list of variable
//! names. Exponents are signed, zero coefficients are never stored, and terms
//! are kept in graded-lexicographic order so that equality, hashing-free
//! iteration and text serialization are all deterministic.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{self, Rat};
use super::AlgebraError;

/// Ordered variable names of a polynomial ring.
pub type Vars = Arc<[String]>;

/// Builds a shared variable list.
pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// An exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically on the exponents in variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn new(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        Self::monomial(vars, Monomial::unit(vars.len()), c)
    }

    pub fn monomial(vars: &Vars, mono: Monomial, c: Rat) -> Self {
        assert_eq!(mono.0.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        LaurentPoly { vars: vars.clone(), terms }
    }

    /// `c * prod(var_i ^ exps_i)`.
    pub fn term(vars: &Vars, exps: &[i32], c: Rat) -> Self {
        Self::monomial(vars, Monomial(exps.to_vec()), c)
    }

    /// The variable `name` itself.
    pub fn var(vars: &Vars, name: &str) -> Result<Self, AlgebraError> {
        let idx = index_of(vars, name)?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Ok(Self::term(vars, &exps, Rat::one()))
    }

    /// `c * name^exp`, with a negative exponent allowed.
    pub fn var_pow(vars: &Vars, name: &str, exp: i32, c: Rat) -> Result<Self, AlgebraError> {
        let idx = index_of(vars, name)?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = exp;
        Ok(Self::term(vars, &exps, c))
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut out = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length");
            out.add_term(m, c);
        }
        out
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> Rat {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Rat::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.coefficient(&vec![0; self.vars.len()])
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(AlgebraError::VariableMismatch { left: self.vars.to_vec(), right: other.vars.to_vec() })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Multiplies by the monomial with exponent vector `exps`.
    pub fn shift(&self, exps: &[i32]) -> Self {
        let shift = Monomial(exps.to_vec());
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul(&shift), c.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents require an invertible (monomial) base.
    pub fn pow_i(&self, exp: i32) -> Result<Self, AlgebraError> {
        if exp >= 0 {
            return Ok(self.pow(exp as u32));
        }
        let inv = self.inverse().ok_or(AlgebraError::NonInvertible)?;
        Ok(inv.pow(exp.unsigned_abs()))
    }

    /// The single term, if this polynomial is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Inverse in the Laurent ring; exists only for nonzero monomials.
    pub fn inverse(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        Some(Self::monomial(&self.vars, m.inverse(), c.recip()))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| !m.has_negative())
    }

    /// Minimal exponent of `var` over all terms; `None` for the zero polynomial.
    pub fn min_exponent(&self, var: &str) -> Result<Option<i32>, AlgebraError> {
        let idx = index_of(&self.vars, var)?;
        Ok(self.terms.keys().map(|m| m.0[idx]).min())
    }

    pub fn max_exponent(&self, var: &str) -> Result<Option<i32>, AlgebraError> {
        let idx = index_of(&self.vars, var)?;
        Ok(self.terms.keys().map(|m| m.0[idx]).max())
    }

    /// Componentwise minimum exponent vector (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut out = vec![0; self.vars.len()];
        let mut first = true;
        for m in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(&m.0) {
                *o = if first { e } else { (*o).min(e) };
            }
            first = false;
        }
        out
    }

    /// `max(0, -min exponent of var)`; zero for the zero polynomial.
    pub fn pole_order(&self, var: &str) -> Result<u32, AlgebraError> {
        Ok(self.min_exponent(var)?.map_or(0, |e| if e < 0 { e.unsigned_abs() } else { 0 }))
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: &str) -> Result<Self, AlgebraError> {
        let idx = index_of(&self.vars, var)?;
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            out.add_term(Monomial(exps), c * Rat::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Re-expresses this polynomial in a ring whose variables are a superset
    /// (by name) of the variables actually used.
    pub fn embed(&self, target: &Vars) -> Result<Self, AlgebraError> {
        if same_vars(&self.vars, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for name in self.vars.iter() {
            map.push(target.iter().position(|t| t == name));
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => return Err(AlgebraError::UnmappedVariable(self.vars[i].clone())),
                }
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Ring-homomorphic substitution into the ring `target`.
    ///
    /// Each source variable is replaced by its image in `rules`; variables
    /// without a rule are carried over by name when `target` has them. A
    /// variable that occurs with a negative exponent must map to a nonzero
    /// monomial so that its inverse exists.
    pub fn substitute(&self, rules: &BTreeMap<String, LaurentPoly>, target: &Vars) -> Result<Self, AlgebraError> {
        let mut images = Vec::with_capacity(self.vars.len());
        for (idx, name) in self.vars.iter().enumerate() {
            let image = match rules.get(name) {
                Some(p) => p.embed(target)?,
                None if target.iter().any(|t| t == name) => LaurentPoly::var(target, name)?,
                None => {
                    // Unused variables need no image.
                    if self.terms.keys().all(|m| m.0[idx] == 0) {
                        LaurentPoly::zero(target)
                    } else {
                        return Err(AlgebraError::UnmappedVariable(name.clone()));
                    }
                }
            };
            images.push(image);
        }
        let mut cache: HashMap<(usize, i32), LaurentPoly> = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = match cache.entry((i, e)) {
                    Entry::Occupied(o) => o.into_mut(),
                    Entry::Vacant(v) => {
                        let p = if e > 0 {
                            images[i].pow(e as u32)
                        } else {
                            let inv = images[i].inverse().ok_or_else(|| {
                                AlgebraError::NonUnitImageForNegativePower { variable: self.vars[i].clone() }
                            })?;
                            inv.pow(e.unsigned_abs())
                        };
                        v.insert(p)
                    }
                };
                acc = &acc * &*p;
            }
            for (tm, tc) in acc.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Evaluates at a rational point given in variable order.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat, AlgebraError> {
        if point.len() != self.vars.len() {
            return Err(AlgebraError::DimensionMismatch { expected: self.vars.len(), found: point.len() });
        }
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e >= 0 {
                    v *= rational::pow(x, e as u32);
                } else {
                    if x.is_zero() {
                        return Err(AlgebraError::DivisionByZero);
                    }
                    v /= rational::pow(x, e.unsigned_abs());
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Evaluates only the named variables, leaving a polynomial in the rest.
    pub fn partial_evaluate(&self, values: &BTreeMap<String, Rat>) -> Result<Self, AlgebraError> {
        let mut rules = BTreeMap::new();
        for (name, v) in values {
            index_of(&self.vars, name)?;
            rules.insert(name.clone(), LaurentPoly::constant(&self.vars, v.clone()));
        }
        self.substitute(&rules, &self.vars.clone())
    }

    /// Leading term under pure lexicographic order.
    pub fn leading_lex(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Exact quotient of polynomials (no negative exponents), or `None` when
    /// `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || !same_vars(&self.vars, &divisor.vars) {
            return None;
        }
        if !self.is_polynomial() || !divisor.is_polynomial() {
            return None;
        }
        if let Some((m, c)) = divisor.as_monomial() {
            return Some(self.shift(&m.inverse().0).scale(&c.recip()));
        }
        let (dm, dc) = divisor.leading_lex().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading_lex().map(|(m, c)| (m.clone(), c.clone())) {
            let exps: Vec<i32> = rm.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect();
            if exps.iter().any(|&e| e < 0) {
                return None;
            }
            let t = Self::term(&self.vars, &exps, rc / &dc);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Canonical serialization: terms in descending graded-lex order,
    /// coefficients as `num/den`, factors as `v^k` joined by `*`.
    pub fn to_canonical(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let mut s = rational::to_canonical(c);
            for (name, &e) in self.vars.iter().zip(&m.0) {
                if e != 0 {
                    s.push_str(&format!("*{name}^{e}"));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }

    /// Parses the canonical serialization produced by [`Self::to_canonical`].
    pub fn parse_canonical(text: &str, vars: &Vars) -> Result<Self, AlgebraError> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero(vars));
        }
        let mut out = Self::zero(vars);
        for part in text.split(" + ") {
            let mut factors = part.split('*');
            let coeff = rational::parse_rat(factors.next().unwrap_or(""))?;
            let mut exps = vec![0; vars.len()];
            for f in factors {
                let (name, e) =
                    f.split_once('^').ok_or_else(|| AlgebraError::Parse(format!("expected `var^k`, got `{f}`")))?;
                let idx = index_of(vars, name)?;
                exps[idx] += e.parse::<i32>().map_err(|_| AlgebraError::Parse(format!("bad exponent `{e}`")))?;
            }
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }

    /// Readable rendering, e.g. `x^2*y - 1/2*y^-1 + 3`.
    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = rational::is_negative(c);
            let abs = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (name, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&rational::to_pretty(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&rational::to_pretty(&abs));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

pub(crate) fn index_of(vars: &Vars, name: &str) -> Result<usize, AlgebraError> {
    vars.iter().position(|v| v == name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
}

/// Sum with a variable-list check.
pub fn laurent_add(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
    p.checked_add(q)
}

/// Product with a variable-list check.
pub fn laurent_mul(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
    p.checked_mul(q)
}

// Operator impls panic on a variable mismatch; use the checked_* methods
// where the rings are not known to agree.
impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rat::one())
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn ring(names: &[&str]) -> Vars {
        vars(names)
    }

    #[test]
    fn cancellation_of_poles() {
        let r = ring(&["v"]);
        let p = LaurentPoly::var_pow(&r, "v", -3, int(1)).unwrap() + LaurentPoly::var_pow(&r, "v", -1, int(1)).unwrap();
        let q = LaurentPoly::var_pow(&r, "v", -3, int(-1)).unwrap();
        let sum = laurent_add(&p, &q).unwrap();
        assert_eq!(sum, LaurentPoly::var_pow(&r, "v", -1, int(1)).unwrap());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(&["x", "y"]);
        let x = LaurentPoly::var(&r, "x").unwrap();
        let y = LaurentPoly::var(&r, "y").unwrap();
        let prod = laurent_mul(&(&x + &y), &(&x - &y)).unwrap();
        assert_eq!(prod, &x.pow(2) - &y.pow(2));
    }

    #[test]
    fn unit_inverse() {
        let r = ring(&["v"]);
        for n in 0..5 {
            let a = LaurentPoly::var_pow(&r, "v", -n, int(1)).unwrap();
            let b = LaurentPoly::var_pow(&r, "v", n, int(1)).unwrap();
            assert_eq!(&a * &b, LaurentPoly::one(&r));
        }
    }

    #[test]
    fn mismatched_rings_error() {
        let p = LaurentPoly::one(&ring(&["x"]));
        let q = LaurentPoly::one(&ring(&["y"]));
        assert!(matches!(laurent_add(&p, &q), Err(AlgebraError::VariableMismatch { .. })));
        assert!(laurent_mul(&p, &q).is_err());
    }

    #[test]
    fn substitute_monomial_inversion() {
        let src = ring(&["y"]);
        let dst = ring(&["v"]);
        let y2 = LaurentPoly::var(&src, "y").unwrap().pow(2);
        let mut rules = BTreeMap::new();
        rules.insert("y".to_string(), LaurentPoly::var_pow(&dst, "v", -1, int(1)).unwrap());
        let out = y2.substitute(&rules, &dst).unwrap();
        assert_eq!(out, LaurentPoly::var_pow(&dst, "v", -2, int(1)).unwrap());
    }

    #[test]
    fn substitute_blowup_oracle() {
        // y(y-1) with y -> st + 1 is (st+1)(st), written out by hand.
        let src = ring(&["y"]);
        let dst = ring(&["s", "t"]);
        let y = LaurentPoly::var(&src, "y").unwrap();
        let p = &y * &(&y - &LaurentPoly::one(&src));
        let st = LaurentPoly::term(&dst, &[1, 1], int(1));
        let mut rules = BTreeMap::new();
        rules.insert("y".to_string(), &st + &LaurentPoly::one(&dst));
        let out = p.substitute(&rules, &dst).unwrap();
        let expected = LaurentPoly::term(&dst, &[2, 2], int(1)) + LaurentPoly::term(&dst, &[1, 1], int(1));
        assert_eq!(out, expected);
    }

    #[test]
    fn substitute_rejects_non_unit_image() {
        let src = ring(&["x"]);
        let dst = ring(&["s"]);
        let p = LaurentPoly::var_pow(&src, "x", -1, int(1)).unwrap();
        let mut rules = BTreeMap::new();
        rules.insert("x".to_string(), LaurentPoly::var(&dst, "s").unwrap() + LaurentPoly::one(&dst));
        assert!(matches!(p.substitute(&rules, &dst), Err(AlgebraError::NonUnitImageForNegativePower { .. })));
    }

    #[test]
    fn pole_orders() {
        let v = ring(&["v"]);
        let p = LaurentPoly::var_pow(&v, "v", -3, int(1)).unwrap() + LaurentPoly::var_pow(&v, "v", -1, int(1)).unwrap();
        assert_eq!(p.pole_order("v").unwrap(), 3);

        let xy = ring(&["x", "y"]);
        let q = LaurentPoly::var(&xy, "x").unwrap() + LaurentPoly::var(&xy, "y").unwrap().pow(2);
        assert_eq!(q.pole_order("y").unwrap(), 0);

        // t^2/s^2 + t/s: minimal s-exponent is -2.
        let st = ring(&["s", "t"]);
        let r = LaurentPoly::term(&st, &[-2, 2], int(1)) + LaurentPoly::term(&st, &[-1, 1], int(1));
        assert_eq!(r.pole_order("s").unwrap(), 2);

        assert_eq!(LaurentPoly::zero(&st).pole_order("s").unwrap(), 0);
        assert!(matches!(r.pole_order("w"), Err(AlgebraError::UnknownVariable(_))));
    }

    #[test]
    fn canonical_text_round_trip() {
        let r = ring(&["x", "y"]);
        let p = LaurentPoly::term(&r, &[2, -1], rat(-1, 2))
            + LaurentPoly::term(&r, &[0, 0], int(3))
            + LaurentPoly::term(&r, &[1, 3], int(7));
        let s = p.to_canonical();
        assert_eq!(s, "7/1*x^1*y^3 + -1/2*x^2*y^-1 + 3/1");
        assert_eq!(LaurentPoly::parse_canonical(&s, &r).unwrap(), p);
        assert_eq!(p.to_pretty(), "7*x*y^3 - 1/2*x^2*y^-1 + 3");
    }

    #[test]
    fn derivative_and_evaluation() {
        let r = ring(&["x", "y"]);
        let p = LaurentPoly::term(&r, &[3, -1], int(2)) + LaurentPoly::term(&r, &[0, 2], int(1));
        let dx = p.derivative("x").unwrap();
        assert_eq!(dx, LaurentPoly::term(&r, &[2, -1], int(6)));
        let dy = p.derivative("y").unwrap();
        assert_eq!(dy, LaurentPoly::term(&r, &[3, -2], int(-2)) + LaurentPoly::term(&r, &[0, 1], int(2)));
        assert_eq!(p.evaluate(&[int(1), int(2)]).unwrap(), int(5));
        assert!(p.evaluate(&[int(1), int(0)]).is_err());
    }

    #[test]
    fn exact_division() {
        let r = ring(&["x", "y"]);
        let x = LaurentPoly::var(&r, "x").unwrap();
        let y = LaurentPoly::var(&r, "y").unwrap();
        let f = &(&x + &y) * &(&(&x * &x) - &y);
        let g = &x + &y;
        assert_eq!(f.div_exact(&g).unwrap(), &(&x * &x) - &y);
        assert!((&f + &LaurentPoly::one(&r)).div_exact(&g).is_none());
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![0, 2]);
        let b = Monomial::new(vec![1, 0]);
        let c = Monomial::new(vec![2, 0]);
        assert!(b < a);
        assert!(a < c);
        assert!(Monomial::new(vec![-3, 0]) < Monomial::new(vec![0, -1]));
    }
}
