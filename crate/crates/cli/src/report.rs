//! Report payloads. Field order in each struct is the JSON key order.

use std::fmt::Write;

use serde::Serialize;
use symtangent::algebra::rational::to_canonical;
use symtangent::{GnElement, SymTensorField};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FieldJson {
    pub canonical: String,
    pub pretty: String,
}

impl From<&SymTensorField> for FieldJson {
    fn from(f: &SymTensorField) -> Self {
        FieldJson { canonical: f.to_canonical(), pretty: f.to_pretty() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionsReport {
    pub surface: &'static str,
    pub n: u32,
    pub m: usize,
    pub bound_x: u32,
    pub bound_y: u32,
    pub unknowns: usize,
    pub constraint_rows: usize,
    pub dim: usize,
    pub saturated: Option<bool>,
    pub basis: Vec<FieldJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    pub slot: usize,
    pub pole_order_s: u32,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftEntry {
    pub center: String,
    pub side: &'static str,
    pub lifted: bool,
    pub obstruction: Option<Obstruction>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub n: Option<u32>,
    pub m: usize,
    pub field: FieldJson,
    pub holomorphic: Option<bool>,
    pub double_chart: bool,
    pub charts: Vec<LiftEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GggReport {
    pub surface: &'static str,
    pub n: u32,
    pub m: usize,
    pub centers: Vec<String>,
    pub seeded_centers: bool,
    pub seed: u64,
    pub double_chart: bool,
    pub basis_dim: usize,
    pub saturated: Option<bool>,
    pub lifted_dim: usize,
    pub generic_rank: usize,
    pub required_rank: usize,
    pub sampled_rank: usize,
    pub certified: bool,
    pub witnesses: Vec<FieldJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaJson {
    pub name: String,
    pub field: FieldJson,
    pub holomorphic: bool,
    pub in_solver_space: bool,
    pub lifts: Vec<bool>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PaperCaseJson {
    pub id: String,
    pub n: u32,
    pub m: usize,
    pub centers: Vec<String>,
    pub basis_dim: usize,
    pub lifted_dim: usize,
    pub generic_rank: usize,
    pub required_rank: usize,
    pub green: bool,
    pub thetas: Vec<ThetaJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagJson {
    pub q: usize,
    pub p: usize,
    pub potential_order: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub start: usize,
    pub coefficients: Vec<String>,
    pub per_q_orders: Vec<u32>,
    pub max_order: u32,
    pub tail_flags: Vec<FlagJson>,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct EllipticReport {
    pub n: u32,
    pub m: usize,
    pub tail_mode: &'static str,
    pub seed: Option<u64>,
    pub truncation: Option<u32>,
    pub tail_aware: bool,
    pub triangular: bool,
    pub sections: Vec<CertificateJson>,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct H0Json {
    pub n: u32,
    pub relative_degrees: Vec<i64>,
    pub relative_h0: Vec<u64>,
    pub h0_relative: u64,
    pub h0_base: u64,
    pub h0_total_cited: u64,
    pub split_total: u64,
    pub contradiction: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementJson {
    pub form: Vec<String>,
    pub matrix: [[String; 2]; 2],
}

impl From<&GnElement> for ElementJson {
    fn from(g: &GnElement) -> Self {
        ElementJson {
            form: g.form.iter().map(to_canonical).collect(),
            matrix: g.matrix.clone().map(|row| row.map(|c| to_canonical(&c))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizeReport {
    pub n: u32,
    pub form: &'static str,
    pub seeded_points: bool,
    pub seed: u64,
    pub points: Vec<String>,
    pub targets: Vec<String>,
    pub element: Option<ElementJson>,
    pub images: Vec<String>,
    pub exact: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Sections(SectionsReport),
    Lift(LiftReport),
    Ggg(GggReport),
    PaperCase(PaperCaseJson),
    Elliptic(EllipticReport),
    H0(H0Json),
    Normalize(NormalizeReport),
}

/// Top-level JSON document.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope<'a> {
    pub command: &'a str,
    pub status: &'static str,
    pub report: &'a Report,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt_bool(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Sections(r) => {
                let _ = writeln!(s, "surface: {} (n = {})", r.surface, r.n);
                let _ = writeln!(s, "degree m: {}", r.m);
                let _ = writeln!(
                    s,
                    "ansatz: deg_x <= {}, deg_y <= {} ({} unknowns, {} constraints)",
                    r.bound_x, r.bound_y, r.unknowns, r.constraint_rows
                );
                let _ = writeln!(s, "dimension: {}", r.dim);
                let _ = writeln!(s, "saturated: {}", opt_bool(r.saturated));
                for (i, f) in r.basis.iter().enumerate() {
                    let _ = writeln!(s, "  [{i}] {}", f.pretty);
                }
            }
            Report::Lift(r) => {
                let _ = writeln!(s, "field: {}", r.field.pretty);
                if let (Some(n), Some(h)) = (r.n, r.holomorphic) {
                    let _ = writeln!(s, "globally holomorphic on F_{n}: {}", yes(h));
                }
                for c in &r.charts {
                    match &c.obstruction {
                        None => {
                            let _ = writeln!(s, "center {} ({}): lifts", c.center, c.side);
                        }
                        Some(o) => {
                            let _ = writeln!(
                                s,
                                "center {} ({}): obstructed, slot {} has a pole of order {} in s: {}",
                                c.center, c.side, o.slot, o.pole_order_s, o.coefficient
                            );
                        }
                    }
                }
            }
            Report::Ggg(r) => {
                let _ = writeln!(s, "surface: {} (n = {}), m = {}", r.surface, r.n, r.m);
                let how = if r.seeded_centers { format!(" (seeded, seed {})", r.seed) } else { String::new() };
                let _ = writeln!(s, "centers: {}{how}", r.centers.join("; "));
                let _ = writeln!(s, "global sections: {} (saturated: {})", r.basis_dim, opt_bool(r.saturated));
                let _ = writeln!(s, "lifted sections: {}", r.lifted_dim);
                let _ = writeln!(
                    s,
                    "generic rank: {} of {} (sampled rank {})",
                    r.generic_rank, r.required_rank, r.sampled_rank
                );
                let _ = writeln!(s, "generically globally generated: {}", yes(r.certified));
                for (i, w) in r.witnesses.iter().enumerate() {
                    let _ = writeln!(s, "  witness {i}: {}", w.pretty);
                }
            }
            Report::PaperCase(r) => {
                let _ = writeln!(s, "case {} (n = {}, m = {})", r.id, r.n, r.m);
                let _ = writeln!(s, "centers: {}", r.centers.join("; "));
                for t in &r.thetas {
                    let lifts: Vec<&str> = t.lifts.iter().map(|&b| yes(b)).collect();
                    let _ = writeln!(
                        s,
                        "  {}: {} | holomorphic {} | in solver space {} | lifts [{}]",
                        t.name,
                        t.field.pretty,
                        yes(t.holomorphic),
                        yes(t.in_solver_space),
                        lifts.join(", ")
                    );
                }
                let _ = writeln!(s, "generic rank: {} (need {})", r.generic_rank, r.required_rank);
                let _ = writeln!(s, "solver: {} global sections, {} lift at every center", r.basis_dim, r.lifted_dim);
                let _ = writeln!(s, "verdict: {}", if r.green { "green" } else { "red" });
            }
            Report::Elliptic(r) => {
                let _ = write!(s, "n = {}, m = {}, tails: {}", r.n, r.m, r.tail_mode);
                if let (Some(seed), Some(t)) = (r.seed, r.truncation) {
                    let _ = write!(s, " (seed {seed}, truncation {t})");
                }
                if r.tail_aware {
                    s.push_str(", tail-aware construction");
                }
                s.push('\n');
                let _ = writeln!(s, "leading coefficients triangular: {}", yes(r.triangular));
                for c in &r.sections {
                    let _ = writeln!(s, "theta_{}: orders {:?} -> {}", c.start, c.per_q_orders, c.verdict);
                    for (p, a) in c.coefficients.iter().enumerate() {
                        let _ = writeln!(s, "    a[{p}] = {a}");
                    }
                    for f in &c.tail_flags {
                        let _ = writeln!(
                            s,
                            "    flag: row {} from a[{}], tail could reach order {}",
                            f.q, f.p, f.potential_order
                        );
                    }
                }
                let _ = writeln!(s, "verdict: {}", r.verdict);
            }
            Report::H0(r) => {
                let _ = writeln!(s, "n = {}", r.n);
                let _ = writeln!(s, "relative summands (degrees {:?}): h0 = {:?}", r.relative_degrees, r.relative_h0);
                let _ = writeln!(s, "h0 relative tangent: {}", r.h0_relative);
                let _ = writeln!(s, "h0 pulled-back base tangent: {}", r.h0_base);
                let _ = writeln!(s, "h0 if split: {}", r.split_total);
                let _ = writeln!(s, "h0 cited: {}", r.h0_total_cited);
                let _ = writeln!(s, "contradiction: {}", yes(r.contradiction));
            }
            Report::Normalize(r) => {
                let _ = writeln!(s, "n = {}, normal form: {}", r.n, r.form);
                let how = if r.seeded_points { format!(" (seeded, seed {})", r.seed) } else { String::new() };
                let _ = writeln!(s, "points: {}{how}", r.points.join("; "));
                let _ = writeln!(s, "targets: {}", r.targets.join("; "));
                if let Some(g) = &r.element {
                    let _ = writeln!(s, "form: [{}]", g.form.join(", "));
                    let _ = writeln!(s, "matrix: [[{}], [{}]]", g.matrix[0].join(", "), g.matrix[1].join(", "));
                    let _ = writeln!(s, "images: {}", r.images.join("; "));
                }
                if let Some(e) = &r.error {
                    let _ = writeln!(s, "error: {e}");
                }
                let _ = writeln!(s, "exact: {}", yes(r.exact));
            }
        }
        s
    }
}
