//! The group `G_n = P_n x| GL(2)` acting on `F_n`, and normalization of point
//! triples.
//!
//! Points of `F_n` are `([X1:X2], [Y0:Y1:Y2])` with `Y1 X2^n = Y2 X1^n`.
//! A binary form is stored by coefficient: `form[k]` multiplies
//! `X1^k X2^(n-k)`.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::AtlasError;
use crate::algebra::rational::{int, pow, rat, to_canonical, Rat};
use crate::algebra::LinearSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnPoint {
    pub base: [Rat; 2],
    pub fiber: [Rat; 3],
}

impl FnPoint {
    /// Checks homogeneity and the defining equation of `F_n`.
    pub fn new(n: u32, base: [Rat; 2], fiber: [Rat; 3]) -> Result<Self, AtlasError> {
        if base.iter().all(Zero::is_zero) || fiber.iter().all(Zero::is_zero) {
            return Err(AtlasError::InvalidPoint("all homogeneous coordinates vanish".into()));
        }
        if &fiber[1] * pow(&base[1], n) != &fiber[2] * pow(&base[0], n) {
            return Err(AtlasError::InvalidPoint(format!("Y1 X2^{n} != Y2 X1^{n}")));
        }
        Ok(FnPoint { base, fiber })
    }

    /// Image of `(x, y)` under the `W1` embedding `([1:x], [1 : y : x^n y])`.
    pub fn from_w1(n: u32, x: Rat, y: Rat) -> Self {
        let y2 = &y * pow(&x, n);
        FnPoint { base: [Rat::one(), x], fiber: [Rat::one(), y, y2] }
    }

    /// `W1` coordinates, when the point lies in that chart.
    pub fn to_w1(&self) -> Option<(Rat, Rat)> {
        if self.base[0].is_zero() || self.fiber[0].is_zero() {
            return None;
        }
        let x = &self.base[1] / &self.base[0];
        // With X1 = 1 the fiber is [Y0 : Y1 : x^n Y1] up to scale.
        Some((x, &self.fiber[1] / &self.fiber[0]))
    }

    /// Inside `U = {Y1 != 0 or Y2 != 0}`.
    pub fn in_u(&self) -> bool {
        !(self.fiber[1].is_zero() && self.fiber[2].is_zero())
    }

    /// Equality in `P^1 x P^2`.
    pub fn same_point(&self, other: &FnPoint) -> bool {
        proportional(&self.base, &other.base) && proportional(&self.fiber, &other.fiber)
    }

    /// Representative with the first nonzero coordinate of each factor equal
    /// to one.
    pub fn normalized(&self) -> FnPoint {
        FnPoint { base: scale_first(&self.base), fiber: scale_first(&self.fiber) }
    }

    pub fn to_canonical(&self) -> String {
        let p = self.normalized();
        let b: Vec<String> = p.base.iter().map(to_canonical).collect();
        let f: Vec<String> = p.fiber.iter().map(to_canonical).collect();
        format!("[{}],[{}]", b.join(":"), f.join(":"))
    }

    /// `Y0 / Y1`, the fiber coordinate of the representative with `X1 = 1`.
    /// `None` when `X1 = 0` or outside `U`.
    fn fiber_coordinate(&self) -> Option<Rat> {
        if self.base[0].is_zero() || self.fiber[1].is_zero() {
            return None;
        }
        Some(&self.fiber[0] / &self.fiber[1])
    }

    fn base_ratio(&self) -> Option<Rat> {
        (!self.base[0].is_zero()).then(|| &self.base[1] / &self.base[0])
    }
}

fn proportional<const N: usize>(a: &[Rat; N], b: &[Rat; N]) -> bool {
    (0..N).all(|i| (0..N).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

fn scale_first<const N: usize>(v: &[Rat; N]) -> [Rat; N] {
    let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Rat::one);
    v.clone().map(|c| c / &lead)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    X1,
    X2,
}

/// `(P, M)` with `P` a binary form of degree `n` and `M` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnElement {
    pub form: Vec<Rat>,
    pub matrix: [[Rat; 2]; 2],
}

impl GnElement {
    pub fn new(form: Vec<Rat>, matrix: [[Rat; 2]; 2]) -> Result<Self, AtlasError> {
        if form.is_empty() {
            return Err(AtlasError::InvalidElement("empty binary form".into()));
        }
        let det = &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0];
        if det.is_zero() {
            return Err(AtlasError::InvalidElement("singular matrix".into()));
        }
        Ok(GnElement { form, matrix })
    }

    pub fn identity(n: u32) -> Self {
        GnElement {
            form: vec![Rat::zero(); n as usize + 1],
            matrix: [[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]],
        }
    }

    pub fn n(&self) -> u32 {
        (self.form.len() - 1) as u32
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n())
    }

    fn apply_matrix(&self, x: &[Rat; 2]) -> [Rat; 2] {
        let m = &self.matrix;
        [&m[0][0] * &x[0] + &m[0][1] * &x[1], &m[1][0] * &x[0] + &m[1][1] * &x[1]]
    }

    /// `P(X1, X2)`.
    pub fn eval_form(&self, x: &[Rat; 2]) -> Rat {
        let n = self.n();
        self.form.iter().enumerate().map(|(k, c)| c * pow(&x[0], k as u32) * pow(&x[1], n - k as u32)).sum()
    }

    /// The bihomogeneous formula, on the `X1 != 0` branch when possible and
    /// the `X2 != 0` branch otherwise.
    pub fn act(&self, p: &FnPoint) -> Result<FnPoint, AtlasError> {
        let branch = if p.base[0].is_zero() { Branch::X2 } else { Branch::X1 };
        self.act_on_branch(p, branch)
    }

    pub fn act_on_branch(&self, p: &FnPoint, branch: Branch) -> Result<FnPoint, AtlasError> {
        let n = self.n();
        let x = &p.base;
        let (xi, yi) = match branch {
            Branch::X1 => (&x[0], &p.fiber[1]),
            Branch::X2 => (&x[1], &p.fiber[2]),
        };
        if xi.is_zero() {
            return Err(AtlasError::InvalidPoint(format!("{branch:?} branch needs a nonzero coordinate")));
        }
        let mx = self.apply_matrix(x);
        let fiber = [&p.fiber[0] * pow(xi, n) + yi * self.eval_form(x), yi * pow(&mx[0], n), yi * pow(&mx[1], n)];
        Ok(FnPoint { base: mx, fiber })
    }

    /// `self * other`, acting as `other` first.
    pub fn compose(&self, other: &GnElement) -> Result<GnElement, AtlasError> {
        if self.n() != other.n() {
            return Err(AtlasError::InvalidElement("degree mismatch".into()));
        }
        let pulled = self.form_after_matrix(&other.matrix);
        let form = other.form.iter().zip(pulled).map(|(a, b)| a + b).collect();
        let a = &self.matrix;
        let b = &other.matrix;
        let matrix = [
            [&a[0][0] * &b[0][0] + &a[0][1] * &b[1][0], &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1]],
            [&a[1][0] * &b[0][0] + &a[1][1] * &b[1][0], &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1]],
        ];
        GnElement::new(form, matrix)
    }

    /// Coefficients of `P(N X)`.
    fn form_after_matrix(&self, nmat: &[[Rat; 2]; 2]) -> Vec<Rat> {
        let n = self.n() as usize;
        // Linear forms (N X)_1 and (N X)_2 as [coef X2, coef X1].
        let l1 = [nmat[0][1].clone(), nmat[0][0].clone()];
        let l2 = [nmat[1][1].clone(), nmat[1][0].clone()];
        let mut out = vec![Rat::zero(); n + 1];
        for (k, c) in self.form.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut poly = vec![c.clone()];
            for _ in 0..k {
                poly = poly_mul(&poly, &l1);
            }
            for _ in 0..(n - k) {
                poly = poly_mul(&poly, &l2);
            }
            // poly[j] multiplies X1^j X2^(n-j).
            for (j, v) in poly.into_iter().enumerate() {
                out[j] += v;
            }
        }
        out
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Target configuration for [`normalize_three_points`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// `([1:0],[1:1:0]), ([1:1],[1:1:1]), ([1:-1],[1:1:(-1)^n])`, i.e. the
    /// `W1` points `(0,1), (1,1), (-1,1)`.
    Displayed,
    /// The `W1` points `(0,1), (1,1), (-1,-1)` used as blow-up centers.
    BlowupCenters,
}

impl NormalForm {
    pub fn targets(self, n: u32) -> [FnPoint; 3] {
        let third_y = match self {
            NormalForm::Displayed => int(1),
            NormalForm::BlowupCenters => int(-1),
        };
        [
            FnPoint::from_w1(n, int(0), int(1)),
            FnPoint::from_w1(n, int(1), int(1)),
            FnPoint::from_w1(n, int(-1), third_y),
        ]
    }
}

/// Finds `g` in `G_n` moving the triple onto `form`.
///
/// First a matrix sends the three base points to `[1:0], [1:1], [1:-1]`; then
/// a binary form (and for `n = 1` a scalar matrix) fixes the fiber
/// coordinates.
pub fn normalize_three_points(n: u32, points: &[FnPoint; 3], form: NormalForm) -> Result<GnElement, AtlasError> {
    let degenerate = |why: &str| AtlasError::DegenerateConfiguration(why.to_string());
    if n == 0 {
        return Err(degenerate("F_0 is not handled by the G_n action"));
    }
    for p in points {
        FnPoint::new(n, p.base.clone(), p.fiber.clone())?;
        if !p.in_u() {
            return Err(degenerate("point outside U"));
        }
    }
    let q: Vec<[Rat; 2]> = points.iter().map(|p| scale_first(&p.base)).collect();
    for i in 0..3 {
        for j in 0..i {
            if proportional(&q[i], &q[j]) {
                return Err(degenerate("two points share a fiber"));
            }
        }
    }
    // 2 l1 q1 - l2 q2 = q3.
    let det = &q[0][0] * &q[1][1] - &q[0][1] * &q[1][0];
    let two = int(2);
    let l1 = (&q[2][0] * &q[1][1] - &q[2][1] * &q[1][0]) / (&two * &det);
    let l2 = -(&q[0][0] * &q[2][1] - &q[0][1] * &q[2][0]) / &det;
    let c0 = [&l1 * &q[0][0], &l1 * &q[0][1]];
    let c1 = [&l2 * &q[1][0] - &c0[0], &l2 * &q[1][1] - &c0[1]];
    // N has columns c0, c1; M = N^-1.
    let ndet = &c0[0] * &c1[1] - &c1[0] * &c0[1];
    let m = [[&c1[1] / &ndet, -&c1[0] / &ndet], [-&c0[1] / &ndet, &c0[0] / &ndet]];
    let first = GnElement::new(vec![Rat::zero(); n as usize + 1], m)?;
    let moved: Vec<FnPoint> = points.iter().map(|p| first.act(p)).collect::<Result<_, _>>()?;
    let w: Vec<Rat> = moved
        .iter()
        .map(|p| p.fiber_coordinate().ok_or_else(|| degenerate("fiber coordinate undefined")))
        .collect::<Result<_, _>>()?;
    debug_assert!(moved.iter().zip([0, 1, -1]).all(|(p, t)| p.base_ratio() == Some(int(t))));
    let target: Vec<Rat> = form.targets(n).iter().map(|p| p.fiber_coordinate().expect("targets lie in U")).collect();

    let second = if n == 1 { fiber_step_n1(&w, &target)? } else { fiber_step(n, &w, &target) };
    second.compose(&first)
}

/// `n = 1`: after the base is fixed only scalar matrices remain, and
/// `(a0 X1 + a1 X2, aI)` sends `w` at `[1:t]` to `(w + a0 + a1 t) / a`.
fn fiber_step_n1(w: &[Rat], target: &[Rat]) -> Result<GnElement, AtlasError> {
    let degenerate = |why: &str| AtlasError::DegenerateConfiguration(why.to_string());
    let t = [int(0), int(1), int(-1)];
    // a0 + a1 t_k - a w*_k = -w_k in unknowns (a0, a1, a).
    let matrix: Vec<Vec<Rat>> = (0..3).map(|k| vec![Rat::one(), t[k].clone(), -target[k].clone()]).collect();
    let rhs: Vec<Rat> = w.iter().map(|v| -v).collect();
    let sol = solve_preferring_unit_scale(matrix, rhs)
        .ok_or_else(|| degenerate("fiber targets are not reachable for n = 1"))?;
    let [a0, a1, a] = sol;
    if a.is_zero() {
        return Err(degenerate("scalar part vanishes"));
    }
    GnElement::new(vec![a1, a0], [[a.clone(), Rat::zero()], [Rat::zero(), a]])
}

/// `n >= 2`: the identity matrix with a form supported on `X1^n`,
/// `X1^(n-1) X2` and `X1^(n-m) X2^m`, `m = 2 floor(n/2)`.
fn fiber_step(n: u32, w: &[Rat], target: &[Rat]) -> GnElement {
    let n = n as usize;
    let m = 2 * (n / 2);
    let d: Vec<Rat> = (0..3).map(|k| &target[k] - &w[k]).collect();
    let half = rat(1, 2);
    let lead = d[0].clone();
    let odd = (&d[1] - &d[2]) * &half;
    let even = (&d[1] + &d[2]) * &half - &lead;
    let mut form = vec![Rat::zero(); n + 1];
    form[n] = lead;
    form[n - 1] = odd;
    form[n - m] += even;
    GnElement::identity(n as u32).with_form(form)
}

impl GnElement {
    fn with_form(mut self, form: Vec<Rat>) -> Self {
        self.form = form;
        self
    }
}

/// Solves for `(a0, a1, a)`; when the solution is not unique, fixes `a = 1`.
fn solve_preferring_unit_scale(mut matrix: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<[Rat; 3]> {
    let full = LinearSystem::new(3, matrix.clone()).ok()?.rank() == 3;
    if !full {
        matrix.push(vec![Rat::zero(), Rat::zero(), Rat::one()]);
        rhs.push(Rat::one());
    }
    let x = LinearSystem::new(3, matrix).ok()?.with_rhs(rhs).ok()?.solve()?;
    Some([x[0].clone(), x[1].clone(), x[2].clone()])
}

/// The explicit `n = 1` normalizer for a triple already over
/// `[1:0], [1:1], [1:-1]` with fiber ratios `w_k = x_k / y_k`:
/// `a = w1 - w2/2 - w3/2`, form `a0 X1 + a1 X2` with `a0 = -w2/2 - w3/2`,
/// `a1 = w1 - w2`.
pub fn explicit_n1_normalizer(w: [Rat; 3]) -> Result<GnElement, AtlasError> {
    let half = rat(1, 2);
    let a = &w[0] - &w[1] * &half - &w[2] * &half;
    let a0 = -(&w[1] * &half) - &w[2] * &half;
    let a1 = &w[0] - &w[1];
    GnElement::new(vec![a1, a0], [[a.clone(), Rat::zero()], [Rat::zero(), a]])
}

/// Preconditions of the normalization: on the surface, in `U`, distinct
/// fibers, and for `n = 1` a nonzero scalar part of the explicit normalizer.
pub fn is_admissible(n: u32, points: &[FnPoint; 3]) -> bool {
    normalize_three_points(n, points, NormalForm::BlowupCenters).is_ok()
}

/// Seeded random admissible triples with small rational coordinates.
pub fn random_admissible_triples(n: u32, count: usize, seed: u64) -> Vec<[FnPoint; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let triple = [0, 1, 2].map(|_| random_point(n, &mut rng));
        if is_admissible(n, &triple) {
            out.push(triple);
        }
    }
    out
}

fn small_rat(rng: &mut impl Rng, nonzero: bool) -> Rat {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=5);
        if !(nonzero && num == 0) {
            return rat(num, den);
        }
    }
}

fn random_point(n: u32, rng: &mut impl Rng) -> FnPoint {
    let base = loop {
        let b = [small_rat(rng, false), small_rat(rng, false)];
        if !b.iter().all(Zero::is_zero) {
            break b;
        }
    };
    let mu = small_rat(rng, true);
    let y0 = small_rat(rng, false);
    let fiber = [y0, &mu * pow(&base[0], n), &mu * pow(&base[1], n)];
    FnPoint { base, fiber }
}
