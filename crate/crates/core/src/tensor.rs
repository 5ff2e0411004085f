//! Chart-local symmetric tensor fields on surfaces.
//!
//! A section of `Sym^m T` on a chart with coordinates `(x1, x2)` is stored as
//! `m + 1` Laurent-polynomial coefficients; slot `k` multiplies
//! `(d/dx1)^k (d/dx2)^(m-k)`. The symmetric algebra is commutative, so a field
//! is a homogeneous polynomial in the two basis vector fields and the
//! symmetric product is coefficient convolution.
//!
//! Coordinate changes are [`ChartMap`]s: a scalar substitution expressing the
//! source coordinates in the target ones, plus the images of the two source
//! basis vector fields as degree-one fields in the target chart.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::rational::{self, Rat};
use crate::algebra::{vars, AlgebraError, LaurentPoly, Vars};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("chart mismatch: expected `{expected}`, found `{found}`")]
    ChartMismatch { expected: String, found: String },
    #[error("coordinate `{0}` is not a variable of the coefficient ring")]
    MissingCoordinate(String),
    #[error("a symmetric tensor field needs at least one coefficient")]
    NoCoefficients,
    #[error("frame image must be a degree-1 field in the target chart")]
    BadFrame,
    #[error("operation needs degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("d-coefficient index out of range: need 0 <= l <= p, got p={p}, l={l}")]
    IndexOutOfRange { p: i64, l: i64 },
}

/// Name of a coordinate chart.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChartId(pub String);

impl ChartId {
    pub fn new(name: impl Into<String>) -> Self {
        ChartId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensorField {
    chart: ChartId,
    coords: [String; 2],
    coeffs: Vec<LaurentPoly>,
}

impl SymTensorField {
    /// Builds a field of degree `coeffs.len() - 1`. The coefficient ring may
    /// carry extra parameter variables besides the two coordinates.
    pub fn new(chart: ChartId, coords: [&str; 2], coeffs: Vec<LaurentPoly>) -> Result<Self, TensorError> {
        let first = coeffs.first().ok_or(TensorError::NoCoefficients)?;
        let ring = first.vars().clone();
        for c in &coeffs[1..] {
            if c.vars()[..] != ring[..] {
                return Err(AlgebraError::VariableMismatch { left: ring.to_vec(), right: c.vars().to_vec() }.into());
            }
        }
        for name in coords {
            if !ring.iter().any(|v| v == name) {
                return Err(TensorError::MissingCoordinate(name.to_string()));
            }
        }
        Ok(SymTensorField { chart, coords: [coords[0].to_string(), coords[1].to_string()], coeffs })
    }

    pub fn zero(degree: usize, chart: ChartId, coords: [&str; 2], ring: &Vars) -> Result<Self, TensorError> {
        Self::new(chart, coords, vec![LaurentPoly::zero(ring); degree + 1])
    }

    /// `c * (d/dx1)^k (d/dx2)^(degree - k)`.
    pub fn basis_element(
        degree: usize,
        k: usize,
        chart: ChartId,
        coords: [&str; 2],
        c: LaurentPoly,
    ) -> Result<Self, TensorError> {
        if k > degree {
            return Err(TensorError::DegreeMismatch { expected: degree, found: k });
        }
        let mut coeffs = vec![LaurentPoly::zero(c.vars()); degree + 1];
        coeffs[k] = c;
        Self::new(chart, coords, coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn chart(&self) -> &ChartId {
        &self.chart
    }

    pub fn coords(&self) -> [&str; 2] {
        [&self.coords[0], &self.coords[1]]
    }

    pub fn ring(&self) -> &Vars {
        self.coeffs[0].vars()
    }

    /// Coefficient of `(d/dx1)^k (d/dx2)^(m-k)`.
    pub fn coefficient(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    /// True iff no coefficient has a negative exponent.
    pub fn is_holomorphic(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_polynomial)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), TensorError> {
        if self.chart != other.chart || self.coords != other.coords {
            return Err(TensorError::ChartMismatch { expected: self.chart.0.clone(), found: other.chart.0.clone() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_compatible(other)?;
        if self.degree() != other.degree() {
            return Err(TensorError::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.checked_add(b)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.with_coeffs(coeffs))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Multiplies every coefficient by a scalar function.
    pub fn mul_scalar(&self, f: &LaurentPoly) -> Result<Self, TensorError> {
        let coeffs = self.coeffs.iter().map(|p| p.checked_mul(f)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.with_coeffs(coeffs))
    }

    fn with_coeffs(&self, coeffs: Vec<LaurentPoly>) -> Self {
        SymTensorField { chart: self.chart.clone(), coords: self.coords.clone(), coeffs }
    }

    /// Pairing of a vector field with the differential of `g`:
    /// `c1 * dg/dx1 + c0 * dg/dx2`.
    pub fn apply_to(&self, g: &LaurentPoly) -> Result<LaurentPoly, TensorError> {
        if self.degree() != 1 {
            return Err(TensorError::DegreeMismatch { expected: 1, found: self.degree() });
        }
        let g1 = g.derivative(&self.coords[0])?;
        let g2 = g.derivative(&self.coords[1])?;
        Ok(self.coeffs[1].checked_mul(&g1)?.checked_add(&self.coeffs[0].checked_mul(&g2)?)?)
    }

    /// Re-expresses the coefficients in a larger ring.
    pub fn embed(&self, ring: &Vars) -> Result<Self, TensorError> {
        let coeffs = self.coeffs.iter().map(|p| p.embed(ring)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.with_coeffs(coeffs))
    }

    /// Renders as `(poly)*dx1^k*dx2^j + ...` in descending `k`, using canonical
    /// polynomial text. The output re-parses with the field grammar.
    pub fn to_canonical(&self) -> String {
        self.render(LaurentPoly::to_canonical)
    }

    pub fn to_pretty(&self) -> String {
        self.render(LaurentPoly::to_pretty)
    }

    fn render(&self, poly: impl Fn(&LaurentPoly) -> String) -> String {
        let m = self.degree();
        let mut parts = Vec::new();
        for k in (0..=m).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mut s = format!("({})", poly(c));
            for (name, e) in [(&self.coords[0], k), (&self.coords[1], m - k)] {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("*d{name}")),
                    _ => s.push_str(&format!("*d{name}^{e}")),
                }
            }
            parts.push(s);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for SymTensorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

/// Product in the symmetric algebra: degrees add, coefficients convolve.
pub fn symmetric_product(f: &SymTensorField, g: &SymTensorField) -> Result<SymTensorField, TensorError> {
    f.check_compatible(g)?;
    let coeffs = convolve(&f.coeffs, &g.coeffs)?;
    Ok(f.with_coeffs(coeffs))
}

fn convolve(a: &[LaurentPoly], b: &[LaurentPoly]) -> Result<Vec<LaurentPoly>, TensorError> {
    let ring = a[0].vars();
    let mut out = vec![LaurentPoly::zero(ring); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in b.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].checked_add(&p.checked_mul(q)?)?;
        }
    }
    Ok(out)
}

/// A coordinate change between two charts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartMap {
    source: ChartId,
    target: ChartId,
    source_coords: [String; 2],
    target_coords: [String; 2],
    target_ring: Vars,
    rules: BTreeMap<String, LaurentPoly>,
    frame: [SymTensorField; 2],
}

impl ChartMap {
    /// `rules` express each source coordinate in the target ring; `frame[i]`
    /// is the image of `d/d(source_coords[i])`.
    pub fn new(
        source: (ChartId, [&str; 2]),
        target: (ChartId, [&str; 2]),
        rules: BTreeMap<String, LaurentPoly>,
        frame: [SymTensorField; 2],
    ) -> Result<Self, TensorError> {
        let target_ring = frame[0].ring().clone();
        for f in &frame {
            if f.degree() != 1 || f.chart != target.0 || f.coords() != target.1 || f.ring()[..] != target_ring[..] {
                return Err(TensorError::BadFrame);
            }
        }
        for name in source.1 {
            let image = rules.get(name).ok_or_else(|| AlgebraError::UnmappedVariable(name.to_string()))?;
            image.embed(&target_ring)?;
        }
        Ok(ChartMap {
            source: source.0,
            target: target.0,
            source_coords: [source.1[0].to_string(), source.1[1].to_string()],
            target_coords: [target.1[0].to_string(), target.1[1].to_string()],
            target_ring,
            rules,
            frame,
        })
    }

    pub fn source(&self) -> &ChartId {
        &self.source
    }

    pub fn target(&self) -> &ChartId {
        &self.target
    }

    pub fn source_coords(&self) -> [&str; 2] {
        [&self.source_coords[0], &self.source_coords[1]]
    }

    pub fn target_coords(&self) -> [&str; 2] {
        [&self.target_coords[0], &self.target_coords[1]]
    }

    pub fn target_ring(&self) -> &Vars {
        &self.target_ring
    }

    pub fn rules(&self) -> &BTreeMap<String, LaurentPoly> {
        &self.rules
    }

    pub fn frame(&self) -> &[SymTensorField; 2] {
        &self.frame
    }

    /// Expresses a scalar function of the source chart in the target chart.
    pub fn pull_scalar(&self, f: &LaurentPoly) -> Result<LaurentPoly, TensorError> {
        let ring = self.extended_ring(f.vars());
        Ok(f.substitute(&self.rules, &ring)?)
    }

    /// Target ring plus any parameter variables of `source_ring` that are
    /// neither source coordinates nor already present; those are carried
    /// through unchanged.
    fn extended_ring(&self, source_ring: &Vars) -> Vars {
        let mut names: Vec<String> = self.target_ring.to_vec();
        for v in source_ring.iter() {
            if !self.source_coords.contains(v) && !names.contains(v) {
                names.push(v.clone());
            }
        }
        if names.len() == self.target_ring.len() {
            self.target_ring.clone()
        } else {
            vars(&names)
        }
    }

    /// Precomputes `frame[0]^k * frame[1]^(m-k)` for all `k`.
    pub fn expansion(&self, degree: usize, source_ring: &Vars) -> Result<FrameExpansion, TensorError> {
        let ring = self.extended_ring(source_ring);
        let f1 = self.frame[0].embed(&ring)?.coeffs;
        let f2 = self.frame[1].embed(&ring)?.coeffs;
        let one = vec![LaurentPoly::one(&ring)];
        let mut p1 = vec![one.clone()];
        let mut p2 = vec![one];
        for i in 1..=degree {
            p1.push(convolve(&p1[i - 1], &f1)?);
            p2.push(convolve(&p2[i - 1], &f2)?);
        }
        let products = (0..=degree).map(|k| convolve(&p1[k], &p2[degree - k])).collect::<Result<Vec<_>, _>>()?;
        Ok(FrameExpansion { degree, source_ring: source_ring.clone(), ring, products })
    }
}

/// Cached frame products for pushing many fields of one degree through a map.
#[derive(Clone, Debug)]
pub struct FrameExpansion {
    degree: usize,
    source_ring: Vars,
    ring: Vars,
    products: Vec<Vec<LaurentPoly>>,
}

/// Transports a field across a chart map: substitute the scalars, then expand
/// each basis monomial through the frame images in the symmetric algebra.
pub fn pushforward(field: &SymTensorField, map: &ChartMap) -> Result<SymTensorField, TensorError> {
    let expansion = map.expansion(field.degree(), field.ring())?;
    pushforward_with(field, map, &expansion)
}

pub fn pushforward_with(
    field: &SymTensorField,
    map: &ChartMap,
    expansion: &FrameExpansion,
) -> Result<SymTensorField, TensorError> {
    if field.chart != map.source || field.coords != map.source_coords {
        return Err(TensorError::ChartMismatch { expected: map.source.0.clone(), found: field.chart.0.clone() });
    }
    if field.degree() != expansion.degree || field.ring()[..] != expansion.source_ring[..] {
        return Err(TensorError::DegreeMismatch { expected: expansion.degree, found: field.degree() });
    }
    let ring = &expansion.ring;
    let m = field.degree();
    let mut out = vec![LaurentPoly::zero(ring); m + 1];
    for (k, c) in field.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c.substitute(&map.rules, ring)?;
        for (slot, e) in expansion.products[k].iter().enumerate() {
            if !e.is_zero() {
                out[slot] = out[slot].checked_add(&c.checked_mul(e)?)?;
            }
        }
    }
    SymTensorField::new(map.target.clone(), map.target_coords(), out)
}

/// A constant `d_{p,l} = (-n)^(p-l) * C(p, p-l)` of the elliptic expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DCoefficient {
    pub p: u32,
    pub l: u32,
    pub n: i64,
    pub value: Rat,
}

impl DCoefficient {
    pub fn new(p: i64, l: i64, n: i64) -> Result<Self, TensorError> {
        let value = d_coefficient(p, l, n)?;
        Ok(DCoefficient { p: p as u32, l: l as u32, n, value })
    }
}

pub fn d_coefficient(p: i64, l: i64, n: i64) -> Result<Rat, TensorError> {
    if l < 0 || l > p {
        return Err(TensorError::IndexOutOfRange { p, l });
    }
    let k = (p - l) as u32;
    let binom = Rat::from_integer(rational::binomial(p as u64, k as u64));
    Ok(rational::pow(&rational::int(-n), k) * binom)
}

/// Chart on the `U x P^1` side of the elliptic gluing.
pub const ELLIPTIC_U: &str = "U";
/// Chart on the `V x P^1` side of the elliptic gluing.
pub const ELLIPTIC_V: &str = "V";

/// Names of the opaque coefficient symbols `a_0 .. a_m`.
pub fn coefficient_symbols(m: usize) -> Vec<String> {
    (0..=m).map(|p| format!("a{p}")).collect()
}

/// The gluing `zeta = v^n eta`, `u = v` (local parameter centered at the
/// marked point) with frame `d/dzeta = v^-n d/deta`,
/// `d/du = d/dv - n eta/v d/deta`. Source coordinates are `(u, zeta)`,
/// target coordinates `(v, eta)`.
pub fn elliptic_gluing(n: i64) -> Result<ChartMap, TensorError> {
    let ring = vars(&["v", "eta"]);
    let v_chart = ChartId::new(ELLIPTIC_V);
    let coords = ["v", "eta"];
    let mut rules = BTreeMap::new();
    rules.insert("u".to_string(), LaurentPoly::var(&ring, "v")?);
    rules.insert("zeta".to_string(), LaurentPoly::term(&ring, &[n as i32, 1], Rat::one()));
    let d_u = SymTensorField::new(
        v_chart.clone(),
        coords,
        vec![LaurentPoly::term(&ring, &[-1, 1], rational::int(-n)), LaurentPoly::one(&ring)],
    )?;
    let d_zeta = SymTensorField::new(
        v_chart.clone(),
        coords,
        vec![LaurentPoly::term(&ring, &[-(n as i32), 0], Rat::one()), LaurentPoly::zero(&ring)],
    )?;
    ChartMap::new((ChartId::new(ELLIPTIC_U), ["u", "zeta"]), (v_chart, coords), rules, [d_u, d_zeta])
}

/// The general field `sum_p a_p (d/dzeta)^(m-p) (d/du)^p` on the `U` side,
/// with the `a_p` as opaque symbols.
pub fn elliptic_general_field(m: usize) -> Result<SymTensorField, TensorError> {
    let mut names = vec!["u".to_string(), "zeta".to_string()];
    names.extend(coefficient_symbols(m));
    let ring = vars(&names);
    let coeffs = (0..=m).map(|p| LaurentPoly::var(&ring, &format!("a{p}"))).collect::<Result<Vec<_>, _>>()?;
    SymTensorField::new(ChartId::new(ELLIPTIC_U), ["u", "zeta"], coeffs)
}

/// Closed form of the general field on the `V` side:
/// slot `l` (the coefficient of `(d/dv)^l (d/deta)^(m-l)`) is
/// `sum_{p>=l} d_{p,l} a_p eta^(p-l) / v^(n(m-p)+p-l)`.
pub fn expand_ten2(m: usize, n: i64) -> Result<SymTensorField, TensorError> {
    let mut names = vec!["v".to_string(), "eta".to_string()];
    names.extend(coefficient_symbols(m));
    let ring = vars(&names);
    let mut coeffs = Vec::with_capacity(m + 1);
    for l in 0..=m {
        let mut c = LaurentPoly::zero(&ring);
        for p in l..=m {
            let d = d_coefficient(p as i64, l as i64, n)?;
            if d.is_zero() {
                continue;
            }
            let mut exps = vec![0i32; ring.len()];
            exps[0] = -((n * (m - p) as i64) as i32 + (p - l) as i32);
            exps[1] = (p - l) as i32;
            exps[2 + p] = 1;
            c = c.checked_add(&LaurentPoly::term(&ring, &exps, d))?;
        }
        coeffs.push(c);
    }
    SymTensorField::new(ChartId::new(ELLIPTIC_V), ["v", "eta"], coeffs)
}
