//! Global sections of `Sym^m T` on `F_n`, lifting to blow-ups, and generic
//! global generation certificates.
//!
//! A global section is represented by its restriction to `W1`. The ansatz
//! fixes a box of monomials `x^i y^j` per coefficient slot; holomorphy on
//! `W2` and `W3` is a set of linear conditions (every negative-exponent
//! monomial of the transported field must cancel) whose kernel is the
//! section space.

mod cases;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::linalg::{nullspace, rank_at_point, rank_over_fraction_field, rref};
use crate::algebra::rational::{rat, Rat};
use crate::algebra::{AlgebraError, LaurentPoly, Monomial};
use crate::atlas::{AtlasError, BlowupChart, BlowupConfig, BlowupSide, Center, Chart, HirzebruchAtlas};
use crate::tensor::{pushforward, pushforward_with, ChartMap, SymTensorField, TensorError};

pub use cases::{
    paper_family_m1, paper_family_m2, paper_thetas, verify_paper_sections, PaperCase, PaperCaseReport, ThetaCheck,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SectionError {
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("field has negative exponents in W1; lifting needs polynomial coefficients")]
    NonPolynomialInput,
    #[error("field must live on W1 with coordinates (x, y), found chart `{0}`")]
    WrongChart(String),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("{0}")]
    InvalidCase(String),
}

impl From<AlgebraError> for SectionError {
    fn from(e: AlgebraError) -> Self {
        SectionError::Tensor(e.into())
    }
}

/// Monomial box for each coefficient slot of a degree-`m` field on `W1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectionAnsatz {
    pub m: usize,
    pub bound_x: u32,
    pub bound_y: u32,
}

impl SectionAnsatz {
    pub fn new(m: usize, bound_x: u32, bound_y: u32) -> Self {
        SectionAnsatz { m, bound_x, bound_y }
    }

    /// `deg_y <= 2m`, `deg_x <= 2m + n m`.
    pub fn default_for(n: u32, m: usize) -> Self {
        let m32 = m as u32;
        SectionAnsatz::new(m, 2 * m32 + n * m32, 2 * m32)
    }

    pub fn enlarged(&self) -> Self {
        SectionAnsatz::new(self.m, self.bound_x + 1, self.bound_y + 1)
    }

    /// Unknowns as `(slot, i, j)` for `x^i y^j` in slot `slot`, slots from
    /// `(d/dx)^m` down, then by `j`, then by `i`.
    pub fn unknowns(&self) -> Vec<(usize, u32, u32)> {
        let mut out = Vec::with_capacity(self.len());
        for slot in (0..=self.m).rev() {
            for j in 0..=self.bound_y {
                for i in 0..=self.bound_x {
                    out.push((slot, i, j));
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        (self.m + 1) * (self.bound_x as usize + 1) * (self.bound_y as usize + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn index(&self, slot: usize, i: u32, j: u32) -> usize {
        let per_slot = (self.bound_x as usize + 1) * (self.bound_y as usize + 1);
        (self.m - slot) * per_slot + j as usize * (self.bound_x as usize + 1) + i as usize
    }

    pub fn field_from_coords(&self, coords: &[Rat]) -> SymTensorField {
        let r = Chart::W1.ring();
        let mut terms: Vec<Vec<(Monomial, Rat)>> = vec![Vec::new(); self.m + 1];
        for ((slot, i, j), c) in self.unknowns().into_iter().zip(coords) {
            if !c.is_zero() {
                terms[slot].push((Monomial::new(vec![i as i32, j as i32]), c.clone()));
            }
        }
        let coeffs = terms.into_iter().map(|t| LaurentPoly::from_terms(&r, t)).collect();
        SymTensorField::new(Chart::W1.id(), Chart::W1.coords(), coeffs).expect("W1 ring")
    }

    /// Coordinates of a `W1` field in this ansatz; `None` when a monomial
    /// falls outside the box (or has a negative exponent).
    pub fn coords_of(&self, field: &SymTensorField) -> Option<Vec<Rat>> {
        if field.degree() != self.m || field.chart() != &Chart::W1.id() || field.ring().len() != 2 {
            return None;
        }
        let mut v = vec![Rat::zero(); self.len()];
        for (slot, c) in field.coefficients().iter().enumerate() {
            for (mono, coef) in c.terms() {
                let e = mono.exponents();
                let (i, j) = (e[0], e[1]);
                if i < 0 || j < 0 || i as u32 > self.bound_x || j as u32 > self.bound_y {
                    return None;
                }
                v[self.index(slot, i as u32, j as u32)] = coef.clone();
            }
        }
        Some(v)
    }
}

/// Basis of the global sections found inside an ansatz.
#[derive(Clone, Debug)]
pub struct SectionBasis {
    pub n: u32,
    pub ansatz: SectionAnsatz,
    /// Kernel vectors in ansatz coordinates, reduced row echelon.
    pub coords: Vec<Vec<Rat>>,
    pub basis: Vec<SymTensorField>,
    pub constraint_rows: usize,
    /// Set when enlarging both bounds by one does not grow the space.
    pub saturated: Option<bool>,
}

impl SectionBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn m(&self) -> usize {
        self.ansatz.m
    }

    /// Membership in the span, relative to the ansatz box.
    pub fn contains(&self, field: &SymTensorField) -> bool {
        let Some(mut v) = self.ansatz.coords_of(field) else {
            return false;
        };
        for row in &self.coords {
            let Some(p) = row.iter().position(|c| !c.is_zero()) else {
                continue;
            };
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone() / &row[p];
            for (a, b) in v.iter_mut().zip(row) {
                *a -= &f * b;
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

/// Collects one linear condition per negative-exponent monomial of the
/// transported fields. `columns[c]` is the field for unknown `c`.
fn pole_constraints(columns: &[SymTensorField], maps: &[&ChartMap]) -> Result<Vec<Vec<Rat>>, SectionError> {
    let mut index: BTreeMap<(usize, usize, Monomial), usize> = BTreeMap::new();
    let mut rows: Vec<Vec<(usize, Rat)>> = Vec::new();
    for (mi, map) in maps.iter().enumerate() {
        let Some(first) = columns.first() else {
            break;
        };
        let expansion = map.expansion(first.degree(), first.ring())?;
        for (col, field) in columns.iter().enumerate() {
            if field.is_zero() {
                continue;
            }
            let pushed = pushforward_with(field, map, &expansion)?;
            for (slot, c) in pushed.coefficients().iter().enumerate() {
                for (mono, coef) in c.terms() {
                    if !mono.has_negative() {
                        continue;
                    }
                    let key = (mi, slot, mono.clone());
                    let r = *index.entry(key).or_insert_with(|| {
                        rows.push(Vec::new());
                        rows.len() - 1
                    });
                    rows[r].push((col, coef.clone()));
                }
            }
        }
    }
    Ok(rows
        .into_iter()
        .map(|sparse| {
            let mut dense = vec![Rat::zero(); columns.len()];
            for (c, v) in sparse {
                dense[c] += v;
            }
            dense
        })
        .collect())
}

fn unit_fields(ansatz: &SectionAnsatz) -> Vec<SymTensorField> {
    let r = Chart::W1.ring();
    ansatz
        .unknowns()
        .into_iter()
        .map(|(slot, i, j)| {
            let mono = LaurentPoly::term(&r, &[i as i32, j as i32], Rat::one());
            SymTensorField::basis_element(ansatz.m, slot, Chart::W1.id(), Chart::W1.coords(), mono)
                .expect("slot within degree")
        })
        .collect()
}

/// Section space inside `ansatz`, without the saturation probe.
pub fn solve_sections(atlas: &HirzebruchAtlas, ansatz: SectionAnsatz) -> Result<SectionBasis, SectionError> {
    let columns = unit_fields(&ansatz);
    let rows = pole_constraints(&columns, &atlas.far_charts())?;
    let coords = nullspace(&rows, ansatz.len());
    let basis = coords.iter().map(|v| ansatz.field_from_coords(v)).collect();
    Ok(SectionBasis { n: atlas.n(), ansatz, coords, basis, constraint_rows: rows.len(), saturated: None })
}

/// Section space inside `ansatz`, with the saturation flag filled in.
pub fn global_sections(
    atlas: &HirzebruchAtlas,
    m: usize,
    ansatz: Option<SectionAnsatz>,
) -> Result<SectionBasis, SectionError> {
    let ansatz = ansatz.unwrap_or_else(|| SectionAnsatz::default_for(atlas.n(), m));
    let mut basis = solve_sections(atlas, SectionAnsatz { m, ..ansatz })?;
    let bigger = solve_sections(atlas, basis.ansatz.enlarged())?;
    basis.saturated = Some(bigger.dim() == basis.dim());
    Ok(basis)
}

/// True when the field is holomorphic on `W1`, `W2` and `W3`.
pub fn is_globally_holomorphic(atlas: &HirzebruchAtlas, field: &SymTensorField) -> Result<bool, SectionError> {
    if !field.is_holomorphic() {
        return Ok(false);
    }
    for map in atlas.far_charts() {
        if !pushforward(field, map)?.is_holomorphic() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Why a field fails to lift: the transported field and its first
/// non-holomorphic slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftWitness {
    pub side: BlowupSide,
    pub transported: SymTensorField,
    pub slot: usize,
    pub coefficient: LaurentPoly,
    pub pole_order_s: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Lifted(SymTensorField),
    Obstructed(LiftWitness),
}

impl LiftOutcome {
    pub fn is_lifted(&self) -> bool {
        matches!(self, LiftOutcome::Lifted(_))
    }
}

fn check_w1_polynomial(field: &SymTensorField) -> Result<(), SectionError> {
    if field.chart() != &Chart::W1.id() || field.coords() != Chart::W1.coords() || field.ring().len() != 2 {
        return Err(SectionError::WrongChart(field.chart().to_string()));
    }
    if !field.is_holomorphic() {
        return Err(SectionError::NonPolynomialInput);
    }
    Ok(())
}

pub fn lift_through(field: &SymTensorField, chart: &BlowupChart) -> Result<LiftOutcome, SectionError> {
    check_w1_polynomial(field)?;
    let pushed = pushforward(field, chart.map())?;
    for (slot, c) in pushed.coefficients().iter().enumerate() {
        if !c.is_polynomial() {
            return Ok(LiftOutcome::Obstructed(LiftWitness {
                side: chart.side(),
                slot,
                coefficient: c.clone(),
                pole_order_s: c.pole_order("s")?,
                transported: pushed,
            }));
        }
    }
    Ok(LiftOutcome::Lifted(pushed))
}

/// The lifting test at one center in the primary chart.
pub fn lift_to_blowup(field: &SymTensorField, center: &Center) -> Result<LiftOutcome, SectionError> {
    lift_through(field, &BlowupChart::new(center.clone(), BlowupSide::Primary)?)
}

/// Lifting at every center; with `double_chart` also in the symmetric charts.
/// Returns the first obstruction, or the primary-chart lifts.
pub fn lift_all(
    field: &SymTensorField,
    config: &BlowupConfig,
    double_chart: bool,
) -> Result<Vec<LiftOutcome>, SectionError> {
    let mut out = Vec::new();
    for chart in config.charts(double_chart) {
        out.push(lift_through(field, chart)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct GggOptions {
    pub ansatz: Option<SectionAnsatz>,
    pub double_chart: bool,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct GggCertificate {
    pub n: u32,
    pub m: usize,
    pub centers: Vec<Center>,
    pub basis_dim: usize,
    pub saturated: Option<bool>,
    pub lifted: Vec<SymTensorField>,
    pub generic_rank: usize,
    pub required_rank: usize,
    pub witnesses: Vec<SymTensorField>,
    /// Rank at a seeded random point, never above the generic rank.
    pub sampled_rank: usize,
}

impl GggCertificate {
    pub fn certified(&self) -> bool {
        self.generic_rank == self.required_rank
    }

    pub fn lifted_dim(&self) -> usize {
        self.lifted.len()
    }
}

/// Generic rank of the coefficient matrix of a family of `W1` fields.
pub fn generic_rank(fields: &[SymTensorField]) -> Result<usize, SectionError> {
    let rows: Vec<Vec<LaurentPoly>> = fields.iter().map(|f| f.coefficients().to_vec()).collect();
    Ok(rank_over_fraction_field(&rows)?)
}

/// First full-rank subfamily in order, up to `target` members.
pub fn greedy_witnesses(fields: &[SymTensorField], target: usize) -> Result<Vec<SymTensorField>, SectionError> {
    let mut chosen: Vec<SymTensorField> = Vec::new();
    for f in fields {
        if chosen.len() == target {
            break;
        }
        chosen.push(f.clone());
        if generic_rank(&chosen)? < chosen.len() {
            chosen.pop();
        }
    }
    Ok(chosen)
}

/// Subspace of `basis` whose members lift at every center of `config`.
pub fn lifted_subspace(
    basis: &SectionBasis,
    config: &BlowupConfig,
    double_chart: bool,
) -> Result<Vec<SymTensorField>, SectionError> {
    let charts = config.charts(double_chart);
    let maps: Vec<&ChartMap> = charts.iter().map(|c| c.map()).collect();
    let rows = pole_constraints(&basis.basis, &maps)?;
    let combos = nullspace(&rows, basis.dim());
    Ok(combos
        .iter()
        .map(|c| {
            let mut v = vec![Rat::zero(); basis.ansatz.len()];
            for (w, row) in c.iter().zip(&basis.coords) {
                if w.is_zero() {
                    continue;
                }
                for (a, b) in v.iter_mut().zip(row) {
                    *a += w * b;
                }
            }
            basis.ansatz.field_from_coords(&v)
        })
        .collect())
}

pub fn check_ggg(
    atlas: &HirzebruchAtlas,
    m: usize,
    centers: &[Center],
    options: &GggOptions,
) -> Result<GggCertificate, SectionError> {
    let config = BlowupConfig::new(atlas.clone(), centers)?;
    let ansatz =
        options.ansatz.map(|a| SectionAnsatz { m, ..a }).unwrap_or_else(|| SectionAnsatz::default_for(atlas.n(), m));
    let basis = solve_sections(atlas, ansatz)?;
    let lifted = lifted_subspace(&basis, &config, options.double_chart)?;
    let rank = generic_rank(&lifted)?;
    let witnesses = greedy_witnesses(&lifted, m + 1)?;
    let point = random_point(options.seed);
    let rows: Vec<Vec<LaurentPoly>> = lifted.iter().map(|f| f.coefficients().to_vec()).collect();
    let sampled_rank = if rows.is_empty() { 0 } else { rank_at_point(&rows, &point)? };
    Ok(GggCertificate {
        n: atlas.n(),
        m,
        centers: centers.to_vec(),
        basis_dim: basis.dim(),
        saturated: basis.saturated,
        lifted,
        generic_rank: rank,
        required_rank: m + 1,
        witnesses,
        sampled_rank,
    })
}

fn random_rat(rng: &mut impl Rng) -> Rat {
    rat(rng.gen_range(-50..=50), rng.gen_range(1..=13))
}

fn random_point(seed: u64) -> [Rat; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    [random_rat(&mut rng), random_rat(&mut rng)]
}

/// Seeded general points of `W1`: distinct `x`, distinct `y`, `y != 0`.
pub fn random_general_centers(count: usize, seed: u64) -> Vec<Center> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Center> = Vec::with_capacity(count);
    while out.len() < count {
        let c = Center::new(random_rat(&mut rng), random_rat(&mut rng));
        if c.y.is_zero() || out.iter().any(|o| o.x == c.x || o.y == c.y) {
            continue;
        }
        out.push(c);
    }
    out
}

/// Row-reduced copy of a family's ansatz coordinates; handy for comparing
/// spans.
pub fn span_rank(ansatz: &SectionAnsatz, fields: &[SymTensorField]) -> Option<usize> {
    let mut rows = fields.iter().map(|f| ansatz.coords_of(f)).collect::<Option<Vec<_>>>()?;
    Some(rref(&mut rows, ansatz.len()).len())
}
