//! Time-series dissimilarity measures, agglomerative clustering and a
//! benchmark harness that ranks measures by how strongly they prefer a
//! time-shifted copy of a series over a time-warped one.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: the [`TimeSeries`] type, base/delayed/warped windows,
//!   perturbations, transforms and synthetic generators.
//! * [`measures`]: seventeen dissimilarity measures behind [`MeasureSpec`].
//! * [`matrix`]: labelled pairwise [`DistanceMatrix`].
//! * [`cluster`]: Lance–Williams agglomeration, tree cuts, merge stages,
//!   Newick and ASCII rendering.
//! * [`bench`]: the ratio grid and its rank statistics.

pub mod bench;
pub mod cluster;
mod error;
pub mod matrix;
pub mod measures;
pub mod series;

pub use error::{Error, Result};
pub use matrix::DistanceMatrix;
pub use measures::{MeasureId, MeasureParams, MeasureSpec};
pub use series::{Frequency, Perturbation, PerturbKind, TimeSeries, WarpDelayParams};
