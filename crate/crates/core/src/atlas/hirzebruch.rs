//! The three-chart atlas of `F_n`.
//!
//! `W1(x, y) -> ([1:x], [1 : y : x^n y])`, `W2(u, v) -> ([1:u], [v : 1 : u^n])`,
//! `W3(zeta, eta) -> ([zeta : 1], [1 : zeta^n eta : eta])`. `F_0` is the case
//! `n = 0`. Only the transitions through `W1` are stored.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::AtlasError;
use crate::algebra::rational::int;
use crate::algebra::{vars, LaurentPoly, Vars};
use crate::tensor::{ChartId, ChartMap, SymTensorField, TensorError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chart {
    W1,
    W2,
    W3,
}

impl Chart {
    pub const ALL: [Chart; 3] = [Chart::W1, Chart::W2, Chart::W3];

    pub fn id(self) -> ChartId {
        ChartId::new(self.name())
    }

    pub fn name(self) -> &'static str {
        match self {
            Chart::W1 => "W1",
            Chart::W2 => "W2",
            Chart::W3 => "W3",
        }
    }

    pub fn coords(self) -> [&'static str; 2] {
        match self {
            Chart::W1 => ["x", "y"],
            Chart::W2 => ["u", "v"],
            Chart::W3 => ["zeta", "eta"],
        }
    }

    pub fn ring(self) -> Vars {
        vars(&self.coords())
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Chart {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "W1" | "w1" => Ok(Chart::W1),
            "W2" | "w2" => Ok(Chart::W2),
            "W3" | "w3" => Ok(Chart::W3),
            _ => Err(AtlasError::UnknownChart(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HirzebruchAtlas {
    n: u32,
    maps: BTreeMap<(Chart, Chart), ChartMap>,
}

impl HirzebruchAtlas {
    pub fn new(n: u32) -> Result<Self, AtlasError> {
        let mut maps = BTreeMap::new();
        maps.insert((Chart::W1, Chart::W2), w1_to_w2()?);
        maps.insert((Chart::W2, Chart::W1), w2_to_w1()?);
        maps.insert((Chart::W1, Chart::W3), w1_to_w3(n)?);
        maps.insert((Chart::W3, Chart::W1), w3_to_w1(n)?);
        Ok(HirzebruchAtlas { n, maps })
    }

    /// `P^1 x P^1`.
    pub fn f0() -> Self {
        Self::new(0).expect("F_0 atlas is well formed")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn transition(&self, from: Chart, to: Chart) -> Result<&ChartMap, AtlasError> {
        self.maps.get(&(from, to)).ok_or(AtlasError::UnknownChartPair { from, to })
    }

    /// Charts other than `W1`, where holomorphy of a `W1` field is tested.
    pub fn far_charts(&self) -> [&ChartMap; 2] {
        [&self.maps[&(Chart::W1, Chart::W2)], &self.maps[&(Chart::W1, Chart::W3)]]
    }
}

fn frame(chart: Chart, a: [LaurentPoly; 2], b: [LaurentPoly; 2]) -> Result<[SymTensorField; 2], TensorError> {
    let [a0, a1] = a;
    let [b0, b1] = b;
    Ok([
        SymTensorField::new(chart.id(), chart.coords(), vec![a0, a1])?,
        SymTensorField::new(chart.id(), chart.coords(), vec![b0, b1])?,
    ])
}

fn chart_map(
    from: Chart,
    to: Chart,
    rules: [LaurentPoly; 2],
    frame: [SymTensorField; 2],
) -> Result<ChartMap, AtlasError> {
    let [r0, r1] = rules;
    let mut map = BTreeMap::new();
    map.insert(from.coords()[0].to_string(), r0);
    map.insert(from.coords()[1].to_string(), r1);
    Ok(ChartMap::new((from.id(), from.coords()), (to.id(), to.coords()), map, frame)?)
}

fn mono(ring: &Vars, exps: [i32; 2], c: i64) -> LaurentPoly {
    LaurentPoly::term(ring, &exps, int(c))
}

// Slot order in a degree-1 field is [coefficient of d/dx2, coefficient of d/dx1].

fn w1_to_w2() -> Result<ChartMap, AtlasError> {
    let r = Chart::W2.ring();
    let z = LaurentPoly::zero(&r);
    chart_map(
        Chart::W1,
        Chart::W2,
        [mono(&r, [1, 0], 1), mono(&r, [0, -1], 1)],
        frame(Chart::W2, [z.clone(), LaurentPoly::one(&r)], [mono(&r, [0, 2], -1), z])?,
    )
}

fn w2_to_w1() -> Result<ChartMap, AtlasError> {
    let r = Chart::W1.ring();
    let z = LaurentPoly::zero(&r);
    chart_map(
        Chart::W2,
        Chart::W1,
        [mono(&r, [1, 0], 1), mono(&r, [0, -1], 1)],
        frame(Chart::W1, [z.clone(), LaurentPoly::one(&r)], [mono(&r, [0, 2], -1), z])?,
    )
}

fn w1_to_w3(n: u32) -> Result<ChartMap, AtlasError> {
    let r = Chart::W3.ring();
    let n = n as i32;
    chart_map(
        Chart::W1,
        Chart::W3,
        [mono(&r, [-1, 0], 1), mono(&r, [n, 1], 1)],
        frame(
            Chart::W3,
            [mono(&r, [1, 1], n as i64), mono(&r, [2, 0], -1)],
            [mono(&r, [-n, 0], 1), LaurentPoly::zero(&r)],
        )?,
    )
}

fn w3_to_w1(n: u32) -> Result<ChartMap, AtlasError> {
    let r = Chart::W1.ring();
    let n = n as i32;
    chart_map(
        Chart::W3,
        Chart::W1,
        [mono(&r, [-1, 0], 1), mono(&r, [n, 1], 1)],
        frame(
            Chart::W1,
            [mono(&r, [1, 1], n as i64), mono(&r, [2, 0], -1)],
            [mono(&r, [-n, 0], 1), LaurentPoly::zero(&r)],
        )?,
    )
}

/// `a(x, y) d/dx + b(x, y) d/dy` on `W1`.
pub fn w1_vector_field(a: LaurentPoly, b: LaurentPoly) -> Result<SymTensorField, TensorError> {
    SymTensorField::new(Chart::W1.id(), Chart::W1.coords(), vec![b, a])
}

/// `W1` field from coefficients listed from `(d/dx)^m` down to `(d/dy)^m`.
pub fn w1_field_descending(coeffs: Vec<LaurentPoly>) -> Result<SymTensorField, TensorError> {
    let mut c = coeffs;
    c.reverse();
    SymTensorField::new(Chart::W1.id(), Chart::W1.coords(), c)
}

pub fn w1_ring() -> Vars {
    Chart::W1.ring()
}
