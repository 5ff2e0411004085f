//! Blow-up charts over `W1`.
//!
//! The primary chart at `(alpha, beta)` is `x = s + alpha`, `y = s t + beta`.
//! The symmetric chart swaps the roles of `x` and `y`; it covers the one
//! point of the exceptional curve the primary chart misses and is only used
//! as an optional double check.

use std::collections::BTreeMap;

use num_traits::One;

use super::{AtlasError, Chart, HirzebruchAtlas};
use crate::algebra::rational::{int, to_canonical, Rat};
use crate::algebra::{vars, LaurentPoly, Vars};
use crate::tensor::{ChartId, ChartMap, SymTensorField};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Center {
    pub x: Rat,
    pub y: Rat,
}

impl Center {
    pub fn new(x: Rat, y: Rat) -> Self {
        Center { x, y }
    }

    pub fn as_array(&self) -> [Rat; 2] {
        [self.x.clone(), self.y.clone()]
    }

    pub fn to_canonical(&self) -> String {
        format!("{},{}", to_canonical(&self.x), to_canonical(&self.y))
    }
}

impl From<(Rat, Rat)> for Center {
    fn from((x, y): (Rat, Rat)) -> Self {
        Center { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowupSide {
    /// `x = s + alpha`, `y = s t + beta`.
    Primary,
    /// `y = s + beta`, `x = s t + alpha`.
    Symmetric,
}

#[derive(Clone, Debug)]
pub struct BlowupChart {
    center: Center,
    side: BlowupSide,
    map: ChartMap,
}

pub fn blowup_ring() -> Vars {
    vars(&["s", "t"])
}

impl BlowupChart {
    pub fn new(center: Center, side: BlowupSide) -> Result<Self, AtlasError> {
        let r = blowup_ring();
        let s = LaurentPoly::var(&r, "s")?;
        let st = LaurentPoly::term(&r, &[1, 1], Rat::one());
        let alpha = LaurentPoly::constant(&r, center.x.clone());
        let beta = LaurentPoly::constant(&r, center.y.clone());
        let id = ChartId::new(match side {
            BlowupSide::Primary => format!("E[{}]", center.to_canonical()),
            BlowupSide::Symmetric => format!("E'[{}]", center.to_canonical()),
        });
        let coords = ["s", "t"];
        let z = LaurentPoly::zero(&r);
        // d/ds - (t/s) d/dt and (1/s) d/dt, in slot order [d/dt, d/ds].
        let along = SymTensorField::new(
            id.clone(),
            coords,
            vec![LaurentPoly::term(&r, &[-1, 1], int(-1)), LaurentPoly::one(&r)],
        )?;
        let across = SymTensorField::new(id.clone(), coords, vec![LaurentPoly::term(&r, &[-1, 0], int(1)), z])?;
        let (x_img, y_img, frame) = match side {
            BlowupSide::Primary => (&s + &alpha, &st + &beta, [along, across]),
            BlowupSide::Symmetric => (&st + &alpha, &s + &beta, [across, along]),
        };
        let mut rules = BTreeMap::new();
        rules.insert("x".to_string(), x_img);
        rules.insert("y".to_string(), y_img);
        let map = ChartMap::new((Chart::W1.id(), Chart::W1.coords()), (id, coords), rules, frame)?;
        Ok(BlowupChart { center, side, map })
    }

    pub fn center(&self) -> &Center {
        &self.center
    }

    pub fn side(&self) -> BlowupSide {
        self.side
    }

    pub fn map(&self) -> &ChartMap {
        &self.map
    }
}

/// A set of distinct centers in `W1`, each with its blow-up charts.
#[derive(Clone, Debug)]
pub struct BlowupConfig {
    atlas: HirzebruchAtlas,
    charts: Vec<(BlowupChart, BlowupChart)>,
}

impl BlowupConfig {
    pub fn new(atlas: HirzebruchAtlas, centers: &[Center]) -> Result<Self, AtlasError> {
        let mut charts = Vec::with_capacity(centers.len());
        for (i, c) in centers.iter().enumerate() {
            if centers[..i].contains(c) {
                return Err(AtlasError::DuplicateCenter(c.to_canonical()));
            }
            charts.push((
                BlowupChart::new(c.clone(), BlowupSide::Primary)?,
                BlowupChart::new(c.clone(), BlowupSide::Symmetric)?,
            ));
        }
        Ok(BlowupConfig { atlas, charts })
    }

    pub fn atlas(&self) -> &HirzebruchAtlas {
        &self.atlas
    }

    pub fn centers(&self) -> impl Iterator<Item = &Center> {
        self.charts.iter().map(|(p, _)| p.center())
    }

    pub fn len(&self) -> usize {
        self.charts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charts.is_empty()
    }

    /// Primary charts, plus the symmetric ones when `double_chart` is set.
    pub fn charts(&self, double_chart: bool) -> Vec<&BlowupChart> {
        let mut out = Vec::new();
        for (p, q) in &self.charts {
            out.push(p);
            if double_chart {
                out.push(q);
            }
        }
        out
    }
}
