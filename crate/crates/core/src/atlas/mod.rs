//! Chart atlases of Hirzebruch surfaces, blow-up charts, and the `G_n` action.

mod blowup;
mod group;
mod hirzebruch;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::tensor::TensorError;

pub use blowup::{blowup_ring, BlowupChart, BlowupConfig, BlowupSide, Center};
pub use group::{
    explicit_n1_normalizer, is_admissible, normalize_three_points, random_admissible_triples, Branch, FnPoint,
    GnElement, NormalForm,
};
pub use hirzebruch::{w1_field_descending, w1_ring, w1_vector_field, Chart, HirzebruchAtlas};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtlasError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("unknown chart `{0}`")]
    UnknownChart(String),
    #[error("no stored transition from {from} to {to}")]
    UnknownChartPair { from: Chart, to: Chart },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid group element: {0}")]
    InvalidElement(String),
    #[error("center {0} listed twice")]
    DuplicateCenter(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
}

impl From<AlgebraError> for AtlasError {
    fn from(e: AlgebraError) -> Self {
        AtlasError::Tensor(e.into())
    }
}
