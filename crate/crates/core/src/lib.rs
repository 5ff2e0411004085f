//! Exact symbolic calculus for sections of symmetric powers of tangent
//! bundles on Hirzebruch surfaces, their blow-ups, and elliptic ruled
//! surfaces.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: exact rationals, multivariate Laurent polynomials, and
//!   rational / fraction-field linear algebra.
//! * [`tensor`]: chart-local symmetric tensor fields and their transformation
//!   under coordinate changes.
//! * [`atlas`]: chart atlases of `F_n`, blow-up charts, and the
//!   automorphism group action used to normalize point configurations.
//! * [`sections`]: global sections of `Sym^m T`, lifting to blow-ups, and
//!   generic global generation certificates.
//! * [`elliptic`]: the pole-order construction on elliptic ruled surfaces and
//!   the `h^0` ledger.
//!
//! Nothing in the crate uses floating point.

pub mod algebra;
pub mod atlas;
pub mod elliptic;
pub mod sections;
pub mod tensor;

pub use algebra::{int, rat, LaurentPoly, Rat, Vars};
pub use atlas::{BlowupChart, BlowupConfig, Chart, FnPoint, GnElement, HirzebruchAtlas, NormalForm};
pub use elliptic::{EllipticSection, PoleCertificate, TailModel, Verdict};
pub use sections::{GggCertificate, SectionAnsatz, SectionBasis};
pub use tensor::{ChartId, ChartMap, SymTensorField};
