//! Pole-order construction on the elliptic ruled surface `S_n`.
//!
//! Coefficients are Rat-combinations of formal symbols `1` and `P_k`
//! (`k >= 2`), where `P_k` is an elliptic function with a single pole of
//! order `k` at the marked point. Only the principal part `v^-k` of `P_k` is
//! known. Its regular tail (positive powers of `v`) is either left opaque
//! (symbolic mode) or instantiated with seeded rational coefficients
//! (randomized mode).
//!
//! In the restricted ansatz a section is a list `a[p]` of coefficients for
//! `p = 0..=m`, and the pole condition at row `q` concerns
//! `C_q = sum_{p <= q} d_{m-p, m-q} a[p] / v^(q-p)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::rational::{rat, to_canonical, to_pretty, Rat};
use crate::algebra::{vars, LaurentPoly, Vars};
use crate::tensor::{d_coefficient, TensorError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EllipticError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("{0}")]
    InvalidParameter(String),
    #[error("cannot cancel the order-{order} pole in row {q}: needs P_{order} beyond P_{limit}")]
    UnsolvableCancellation { q: usize, order: u32, limit: u32 },
}

fn v_ring() -> Vars {
    vars(&["v"])
}

/// Rat-linear combination of `1` (key 0) and `P_k` (key `k >= 2`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalEllipticFunction {
    terms: BTreeMap<u32, Rat>,
}

impl FormalEllipticFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut f = Self::zero();
        f.add_term(0, c);
        f
    }

    /// `c * P_k`. Panics for `k == 1`: no elliptic function has a single
    /// simple pole.
    pub fn p(k: u32, c: Rat) -> Self {
        assert!(k != 1, "P_1 does not exist on an elliptic curve");
        let mut f = Self::zero();
        f.add_term(k, c);
        f
    }

    fn add_term(&mut self, k: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Coefficient of `P_k` (or of `1` for `k = 0`).
    pub fn coefficient(&self, k: u32) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn checked_add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// Highest `k` with a nonzero `P_k`.
    pub fn max_symbol(&self) -> Option<u32> {
        self.terms.keys().rev().find(|&&k| k >= 2).copied()
    }

    /// Known part of `self / v^shift`: principal parts, plus the constant
    /// symbol, plus the instantiated tails in randomized mode.
    pub fn expand(&self, shift: i32, tails: &TailModel) -> LaurentPoly {
        let r = v_ring();
        let mut out = LaurentPoly::zero(&r);
        for (k, c) in &self.terms {
            let k = *k as i32;
            out = out + LaurentPoly::term(&r, &[-k - shift], c.clone());
            if k >= 2 {
                if let TailModel::Randomized { seed, truncation } = tails {
                    for (j, t) in tail_coefficients(*seed, k as u32, *truncation).into_iter().enumerate() {
                        out = out + LaurentPoly::term(&r, &[j as i32 + 1 - shift], c * t);
                    }
                }
            }
        }
        out
    }

    /// `(symbol, coefficient)` pairs with symbols `"1"`, `"P2"`, `"P3"`, ...
    pub fn symbols(&self) -> Vec<(String, Rat)> {
        self.terms.iter().map(|(k, c)| (symbol_name(*k), c.clone())).collect()
    }

    pub fn to_canonical(&self) -> String {
        self.render(to_canonical)
    }

    fn render(&self, num: impl Fn(&Rat) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms.iter().rev().map(|(k, c)| format!("{}*{}", num(c), symbol_name(*k))).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Display for FormalEllipticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(to_pretty))
    }
}

fn symbol_name(k: u32) -> String {
    if k == 0 {
        "1".to_string()
    } else {
        format!("P{k}")
    }
}

/// How the regular tails of the `P_k` are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailModel {
    /// Tails opaque: only principal parts are certified.
    Symbolic,
    /// `P_k = v^-k + sum_{j=1}^{truncation} r_{k,j} v^j` with seeded `r`.
    Randomized { seed: u64, truncation: u32 },
}

impl TailModel {
    pub fn name(&self) -> &'static str {
        match self {
            TailModel::Symbolic => "symbolic",
            TailModel::Randomized { .. } => "random",
        }
    }
}

/// Tail coefficients of `P_k`; the stream depends only on `(seed, k)`, so a
/// longer truncation extends a shorter one.
pub fn tail_coefficients(seed: u64, k: u32, truncation: u32) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    (0..truncation)
        .map(|_| {
            let num: i64 = rng.gen_range(-20..=20);
            let den: i64 = rng.gen_range(1..=7);
            rat(num, den)
        })
        .collect()
}

/// One section in the restricted ansatz: `coeffs[p]` times `zeta^p` is the
/// general-field coefficient `a_{m-p}` of `(d/dzeta)^p (d/du)^(m-p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticSection {
    pub n: u32,
    pub m: usize,
    /// Index of the first nonzero coefficient.
    pub start: usize,
    pub coeffs: Vec<FormalEllipticFunction>,
}

impl EllipticSection {
    pub fn zero(n: u32, m: usize) -> Self {
        EllipticSection { n, m, start: m + 1, coeffs: vec![FormalEllipticFunction::zero(); m + 1] }
    }

    /// `d_{m-p, m-q}` for this section's surface.
    fn d(&self, p: usize, q: usize) -> Result<Rat, EllipticError> {
        Ok(d_coefficient((self.m - p) as i64, (self.m - q) as i64, self.n as i64)?)
    }

    /// `C_q` expanded under the given tail model.
    pub fn row(&self, q: usize, tails: &TailModel) -> Result<LaurentPoly, EllipticError> {
        let mut out = LaurentPoly::zero(&v_ring());
        for p in 0..=q {
            if self.coeffs[p].is_zero() {
                continue;
            }
            let d = self.d(p, q)?;
            out = out + self.coeffs[p].expand((q - p) as i32, tails).scale(&d);
        }
        Ok(out)
    }
}

fn check_params(n: u32, m: usize) -> Result<(), EllipticError> {
    if n < 1 || m < 1 {
        return Err(EllipticError::InvalidParameter(format!("need n >= 1 and m >= 1, got n={n}, m={m}")));
    }
    Ok(())
}

/// `theta_0 .. theta_m` by principal-part cancellation.
pub fn construct_sn_sections(n: u32, m: usize) -> Result<Vec<EllipticSection>, EllipticError> {
    construct_with_tails(n, m, &TailModel::Symbolic)
}

/// The same recursion, cancelling against the full expansion under `tails`.
/// With randomized tails the result depends on the seed.
pub fn construct_with_tails(n: u32, m: usize, tails: &TailModel) -> Result<Vec<EllipticSection>, EllipticError> {
    check_params(n, m)?;
    (0..=m).map(|i| construct_one(n, m, i, tails)).collect()
}

fn construct_one(n: u32, m: usize, start: usize, tails: &TailModel) -> Result<EllipticSection, EllipticError> {
    let mut s = EllipticSection::zero(n, m);
    s.start = start;
    let lead = s.d(start, start)?;
    s.coeffs[start] = FormalEllipticFunction::p(2, Rat::one() / lead);
    for q in start + 1..=m {
        let partial = s.row(q, tails)?;
        let diag = s.d(q, q)?;
        let limit = (q - start + 2) as u32;
        let mut a = FormalEllipticFunction::zero();
        for (mono, c) in partial.terms().rev() {
            let order = -mono.exponents()[0];
            if order < 3 {
                continue;
            }
            let order = order as u32;
            if order > limit {
                return Err(EllipticError::UnsolvableCancellation { q, order, limit });
            }
            a.add_term(order, -c / &diag);
        }
        s.coeffs[q] = a;
    }
    Ok(s)
}

/// A tail whose contribution to row `q` could reach pole order
/// `potential_order > 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailFlag {
    pub q: usize,
    pub p: usize,
    pub potential_order: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    /// Certified orders are fine but some tail could still push a row past 2.
    Flagged,
    NotCertified,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::Flagged => "flagged",
            Verdict::NotCertified => "not-certified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleCertificate {
    pub n: u32,
    pub m: usize,
    pub mode: TailModel,
    pub per_q_orders: Vec<u32>,
    pub tail_flags: Vec<TailFlag>,
    pub verdict: Verdict,
}

impl PoleCertificate {
    pub fn max_order(&self) -> u32 {
        self.per_q_orders.iter().copied().max().unwrap_or(0)
    }
}

/// Pole orders of every row. In symbolic mode the orders come from
/// principal parts only, and each `P_k` in `a[p]` with `q - p - 1 > 2` is
/// flagged, since a tail starting at `v^1` divided by `v^(q-p)` can reach
/// order `q - p - 1`. In randomized mode the orders are exact for the
/// instantiated tails and nothing is flagged.
pub fn verify_ten3(section: &EllipticSection, mode: &TailModel) -> Result<PoleCertificate, EllipticError> {
    let mut orders = Vec::with_capacity(section.m + 1);
    let mut flags = Vec::new();
    for q in 0..=section.m {
        orders.push(section.row(q, mode)?.pole_order("v").expect("v is the ring variable"));
        if *mode == TailModel::Symbolic {
            for p in 0..q {
                if section.coeffs[p].max_symbol().is_none() {
                    continue;
                }
                let potential = (q - p - 1) as u32;
                if potential > 2 {
                    flags.push(TailFlag { q, p, potential_order: potential });
                }
            }
        }
    }
    let verdict = if orders.iter().any(|&o| o > 2) {
        Verdict::NotCertified
    } else if !flags.is_empty() {
        Verdict::Flagged
    } else {
        Verdict::Certified
    };
    Ok(PoleCertificate { n: section.n, m: section.m, mode: *mode, per_q_orders: orders, tail_flags: flags, verdict })
}

/// Leading coefficients `a[i]` of `theta_i` over `P_2`, as an
/// `(m+1) x (m+1)` matrix with rows indexed by section.
pub fn leading_matrix(sections: &[EllipticSection]) -> Vec<Vec<Rat>> {
    sections.iter().map(|s| s.coeffs.iter().map(|c| c.coefficient(2)).collect()).collect()
}

/// Row `i` vanishes before column `i` and has a nonzero entry there.
pub fn is_triangular(sections: &[EllipticSection]) -> bool {
    sections.iter().enumerate().all(|(i, s)| {
        s.coeffs.len() > i && s.coeffs[..i].iter().all(FormalEllipticFunction::is_zero) && !s.coeffs[i].is_zero()
    })
}

/// A line bundle on a smooth curve, described by degree; degree-zero bundles
/// also record whether they are trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineBundle {
    pub degree: i64,
    pub trivial: bool,
}

impl LineBundle {
    pub fn of_degree(degree: i64) -> Self {
        LineBundle { degree, trivial: degree == 0 }
    }

    pub fn trivial() -> Self {
        LineBundle { degree: 0, trivial: true }
    }

    pub fn nontrivial_degree_zero() -> Self {
        LineBundle { degree: 0, trivial: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBundleDegreeLedger {
    pub genus: u32,
    pub bundles: Vec<LineBundle>,
    pub h0: Vec<u64>,
}

/// `h^0` on `P^1` (genus 0) or an elliptic curve (genus 1).
pub fn h0(genus: u32, bundle: LineBundle) -> Result<u64, EllipticError> {
    let d = bundle.degree;
    match genus {
        0 => Ok((d + 1).max(0) as u64),
        1 => Ok(match d {
            d if d >= 1 => d as u64,
            0 if bundle.trivial => 1,
            _ => 0,
        }),
        g => Err(EllipticError::InvalidParameter(format!("genus {g} not supported"))),
    }
}

/// `h^1` by Serre duality: on `P^1`, `h^0(K - L)` with `deg K = -2`; on an
/// elliptic curve `K` is trivial.
pub fn h1(genus: u32, bundle: LineBundle) -> Result<u64, EllipticError> {
    let dual = LineBundle { degree: 2 * genus as i64 - 2 - bundle.degree, trivial: bundle.trivial };
    h0(genus, dual)
}

impl LineBundleDegreeLedger {
    pub fn new(genus: u32, bundles: Vec<LineBundle>) -> Result<Self, EllipticError> {
        let h0 = bundles.iter().map(|b| h0(genus, *b)).collect::<Result<_, _>>()?;
        Ok(LineBundleDegreeLedger { genus, bundles, h0 })
    }

    pub fn total(&self) -> u64 {
        self.h0.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Report {
    pub n: u32,
    /// `phi_* T_{X/C} = O(-np) + O + O(np)` on the base curve.
    pub relative: LineBundleDegreeLedger,
    pub h0_relative: u64,
    /// `h^0(phi^* T_C) = h^0(C, O_C)`.
    pub h0_base: u64,
    /// `h^0(T_X) = n + 1`, taken as input.
    pub h0_total_cited: u64,
}

impl H0Report {
    /// What a split tangent sequence would force `h^0(T_X)` to be.
    pub fn split_total(&self) -> u64 {
        self.h0_relative + self.h0_base
    }

    pub fn contradiction(&self) -> bool {
        self.split_total() != self.h0_total_cited
    }
}

pub fn h0_nonsplit_report(n: u32) -> Result<H0Report, EllipticError> {
    if n < 1 {
        return Err(EllipticError::InvalidParameter(format!("need n >= 1, got {n}")));
    }
    let d = n as i64;
    let relative = LineBundleDegreeLedger::new(
        1,
        vec![LineBundle::of_degree(-d), LineBundle::trivial(), LineBundle::of_degree(d)],
    )?;
    let h0_base = h0(1, LineBundle::trivial())?;
    Ok(H0Report { n, h0_relative: relative.total(), relative, h0_base, h0_total_cited: n as u64 + 1 })
}
