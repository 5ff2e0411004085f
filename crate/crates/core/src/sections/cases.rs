//! Hard-coded section families and the explicit fields chosen on `F_0` and
//! `F_n`, with the blow-up centers they are meant for.

use std::fmt;
use std::str::FromStr;

use super::{
    check_ggg, generic_rank, is_globally_holomorphic, lift_to_blowup, solve_sections, GggOptions, SectionAnsatz,
    SectionError,
};
use crate::algebra::rational::int;
use crate::algebra::LaurentPoly;
use crate::atlas::{w1_field_descending, w1_ring, Center, HirzebruchAtlas};
use crate::tensor::SymTensorField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PaperCase {
    /// `P^1 x P^1`, `Sym^1`, two centers.
    F0M1,
    /// `P^1 x P^1`, `Sym^2`, three centers.
    F0M2,
    /// `F_n`, `Sym^1`, two centers.
    FnM1,
    /// `F_n`, `Sym^2`, three centers; separate fields for `n = 1` and `n >= 2`.
    FnM2,
}

impl PaperCase {
    pub const ALL: [PaperCase; 4] = [PaperCase::F0M1, PaperCase::F0M2, PaperCase::FnM1, PaperCase::FnM2];

    pub fn id(self) -> &'static str {
        match self {
            PaperCase::F0M1 => "f0-m1",
            PaperCase::F0M2 => "f0-m2",
            PaperCase::FnM1 => "fn-m1",
            PaperCase::FnM2 => "fn-m2",
        }
    }

    pub fn m(self) -> usize {
        match self {
            PaperCase::F0M1 | PaperCase::FnM1 => 1,
            PaperCase::F0M2 | PaperCase::FnM2 => 2,
        }
    }

    pub fn takes_n(self) -> bool {
        matches!(self, PaperCase::FnM1 | PaperCase::FnM2)
    }

    /// Surface parameter for the case; `F_0` cases ignore `n`.
    pub fn surface_n(self, n: u32) -> Result<u32, SectionError> {
        if !self.takes_n() {
            return Ok(0);
        }
        if n == 0 {
            return Err(SectionError::InvalidCase(format!("case {} needs n >= 1", self.id())));
        }
        Ok(n)
    }

    pub fn centers(self) -> Vec<Center> {
        let pts: &[(i64, i64)] = match self {
            PaperCase::F0M1 => &[(0, 0), (1, 1)],
            PaperCase::F0M2 => &[(0, 0), (1, 1), (-1, -1)],
            PaperCase::FnM1 => &[(0, 1), (1, 1)],
            PaperCase::FnM2 => &[(0, 1), (1, 1), (-1, -1)],
        };
        pts.iter().map(|&(a, b)| Center::new(int(a), int(b))).collect()
    }
}

impl fmt::Display for PaperCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for PaperCase {
    type Err = SectionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PaperCase::ALL.into_iter().find(|c| c.id() == s).ok_or_else(|| SectionError::UnknownCase(s.to_string()))
    }
}

struct Poly;

impl Poly {
    fn x() -> LaurentPoly {
        LaurentPoly::var(&w1_ring(), "x").expect("x")
    }

    fn y() -> LaurentPoly {
        LaurentPoly::var(&w1_ring(), "y").expect("y")
    }

    fn k(c: i64) -> LaurentPoly {
        LaurentPoly::constant(&w1_ring(), int(c))
    }

    /// `c x^i y^j`.
    fn t(c: i64, i: i32, j: i32) -> LaurentPoly {
        LaurentPoly::term(&w1_ring(), &[i, j], int(c))
    }

    fn zero() -> LaurentPoly {
        LaurentPoly::zero(&w1_ring())
    }
}

fn field(coeffs: Vec<LaurentPoly>) -> SymTensorField {
    w1_field_descending(coeffs).expect("W1 field")
}

/// The explicit fields of a case, named `theta1`, `theta2`, ...
pub fn paper_thetas(case: PaperCase, n: u32) -> Result<Vec<(String, SymTensorField)>, SectionError> {
    let n = case.surface_n(n)? as i64;
    let (x, y, k, z) = (Poly::x, Poly::y, Poly::k, Poly::zero);
    let fields = match case {
        PaperCase::F0M1 => vec![field(vec![x() * x() - x(), z()]), field(vec![z(), y() * y() - y()])],
        PaperCase::F0M2 => vec![
            field(vec![z(), y() * y() * (x() * x() - k(1)), y() * y() * (y() * y() - k(1))]),
            field(vec![x() * x() * (x() * x() - k(1)), x() * x() * (y() * y() - k(1)), z()]),
            field(vec![z(), (x() - y()) * (x() - y()), z()]),
        ],
        PaperCase::FnM1 => {
            vec![field(vec![z(), y() * (y() - k(1))]), field(vec![x() * (x() - k(1)), k(n) * x() * y() * (y() - k(1))])]
        }
        PaperCase::FnM2 if n == 1 => vec![
            field(vec![
                x() * (x() * x() - k(1)),
                y() * (k(-3) * x() * x() + y() * (x() * x() * x() + x() * x() + x() - k(1)) + k(1)),
                y() * y() * (k(2) * x() + y() * y() * (x() * x() + k(1)) - y() * (x() + k(1)) * (x() + k(1))),
            ]),
            field(vec![
                x() * x() * (k(1) - x() * x()),
                k(2) * x() * x() * y() * (x() - y()),
                x() * x() * y() * y() * (y() * y() - k(1)),
            ]),
            field(vec![
                x() * (k(1) - x() * x()),
                y() * (k(3) * x() * x() + y() * (k(1) - x() * x() - k(2) * x()) - k(1)),
                y() * y() * (k(1) - k(2) * x() + y() * y() * (k(2) * x() - k(1))),
            ]),
        ],
        PaperCase::FnM2 => vec![
            field(vec![
                z(),
                x() * y() * y() * (x() * x() - k(1)),
                y() * y()
                    * y()
                    * (k(1) - k(3) * x() * x()
                        + y() * (k(-1) * x().pow(4) + k(2) * x().pow(3) + k(2) * x() * x() - k(1))),
            ]),
            field(vec![
                z(),
                x() * y() * y() * (x() * x() - k(1)),
                y() * y() * (x() * y() * y() * (x() + k(2)) - y() * (x() + k(1)) * (x() + k(1)) + k(1)),
            ]),
            field(vec![
                x() * (x().pow(3) - k(2) * x() * x() - x() + k(2)),
                y() * (k(-2 * n) * x().pow(3) + k(6) * x() * x() + k(2 * (n - 1)) * x() - k(2)
                    + y() * (k(n * (n - 6)) * x() + k(-n * n + 6 * n - 4) * x().pow(3) + k(2))),
                y() * y()
                    * (k(n) * x() * (k(n) * x() + k(2 * n - 6))
                        + k(2 * n + 1)
                        + y()
                            * (k(-n * n) * (x() + k(1)) * (x() + k(1))
                                + y() * (k(n * n) + k(6 * n) * x() - k(2 * n) - k(1)))),
            ]),
        ],
    };
    Ok(fields.into_iter().enumerate().map(|(i, f)| (format!("theta{}", i + 1), f)).collect())
}

/// Generators of the `Sym^1` family on `F_n`: `a = a0 + a1 x + a2 x^2`,
/// `b = (b0 - n a2 x) y + b1(x) y^2` with `deg b1 <= n`.
pub fn paper_family_m1(n: u32) -> Vec<SymTensorField> {
    let (t, z) = (Poly::t, Poly::zero);
    let n = n as i64;
    let mut out = vec![
        field(vec![t(1, 0, 0), z()]),
        field(vec![t(1, 1, 0), z()]),
        field(vec![t(1, 2, 0), t(-n, 1, 1)]),
        field(vec![z(), t(1, 0, 1)]),
    ];
    for i in 0..=n as i32 {
        out.push(field(vec![z(), t(1, i, 2)]));
    }
    out
}

/// Generators of the displayed `Sym^2` family on `F_n` (one per free
/// constant), slots `[a, b, c]` for `(d/dx)^2`, `d/dx d/dy`, `(d/dy)^2`.
pub fn paper_family_m2(n: u32) -> Vec<SymTensorField> {
    let (t, z) = (Poly::t, Poly::zero);
    let n = n as i64;
    let mut out = Vec::new();
    let mut push = |a: LaurentPoly, b: LaurentPoly, c: LaurentPoly| out.push(field(vec![a, b, c]));
    // a0 .. a4, with the couplings of a3 and a4.
    push(t(1, 0, 0), z(), z());
    push(t(1, 1, 0), z(), z());
    push(t(1, 2, 0), z(), z());
    push(t(1, 3, 0), z(), t(-n * n, 1, 2));
    push(t(1, 4, 0), t(-2 * n, 3, 1), t(n * n, 2, 2));
    // b0 .. b2 on y, b3 .. b6 on y^2.
    push(z(), t(1, 0, 1), z());
    push(z(), t(1, 1, 1), z());
    push(z(), t(1, 2, 1), t(-n, 1, 2));
    for i in 0..3 {
        push(z(), t(1, i, 2), z());
    }
    if n == 1 {
        push(z(), t(1, 3, 2), t(-1, 2, 3));
        // c0; c1, c2 on y^3; c3 .. c7 on y^4.
        push(z(), z(), t(1, 0, 2));
        push(z(), z(), t(1, 0, 3));
        push(z(), z(), t(1, 1, 3));
    } else {
        push(z(), t(1, 3, 2), z());
        // c0; c1 .. c3 on y^3; c4 .. c8 on y^4.
        push(z(), z(), t(1, 0, 2));
        for i in 0..3 {
            push(z(), z(), t(1, i, 3));
        }
    }
    for i in 0..5 {
        push(z(), z(), t(1, i, 4));
    }
    out
}

#[derive(Clone, Debug)]
pub struct ThetaCheck {
    pub name: String,
    pub field: SymTensorField,
    pub holomorphic: bool,
    pub in_solver_space: bool,
    pub lifts: Vec<bool>,
}

impl ThetaCheck {
    pub fn passed(&self) -> bool {
        self.holomorphic && self.lifts.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug)]
pub struct PaperCaseReport {
    pub case: PaperCase,
    pub n: u32,
    pub m: usize,
    pub centers: Vec<Center>,
    pub checks: Vec<ThetaCheck>,
    /// Generic rank of the explicit fields.
    pub generic_rank: usize,
    pub basis_dim: usize,
    pub lifted_dim: usize,
}

impl PaperCaseReport {
    pub fn green(&self) -> bool {
        self.checks.iter().all(ThetaCheck::passed) && self.generic_rank == self.m + 1
    }
}

/// Holomorphy, lifting and generic rank for the explicit fields of a case,
/// alongside the solver's section and lifted dimensions.
pub fn verify_paper_sections(case: PaperCase, n: u32) -> Result<PaperCaseReport, SectionError> {
    let sn = case.surface_n(n)?;
    let atlas = HirzebruchAtlas::new(sn)?;
    let m = case.m();
    let centers = case.centers();
    let basis = solve_sections(&atlas, SectionAnsatz::default_for(sn, m))?;
    let mut checks = Vec::new();
    for (name, f) in paper_thetas(case, n)? {
        let holomorphic = is_globally_holomorphic(&atlas, &f)?;
        let lifts =
            centers.iter().map(|c| lift_to_blowup(&f, c).map(|o| o.is_lifted())).collect::<Result<Vec<_>, _>>()?;
        checks.push(ThetaCheck { in_solver_space: basis.contains(&f), name, field: f, holomorphic, lifts });
    }
    let fields: Vec<SymTensorField> = checks.iter().map(|c| c.field.clone()).collect();
    let cert = check_ggg(&atlas, m, &centers, &GggOptions::default())?;
    Ok(PaperCaseReport {
        case,
        n: sn,
        m,
        centers,
        generic_rank: generic_rank(&fields)?,
        basis_dim: cert.basis_dim,
        lifted_dim: cert.lifted_dim(),
        checks,
    })
}
