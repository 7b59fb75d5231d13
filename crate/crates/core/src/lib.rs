//! Estimation of missing publication years from citation links, shared
//! authorship, or both.
//!
//! Load a corpus with [`ingest::load_graph`], hide or keep the missing years
//! through a [`MaskedGraph`], and run any of the nine estimators via
//! [`estimate`]. The [`eval`] module scores estimators by K-fold masking.

pub mod authorship;
pub mod citation;
pub mod cli;
pub mod dsu;
pub mod error;
pub mod estimate;
pub mod eval;
pub mod fixtures;
pub mod graph;
pub mod hetero;
pub mod ingest;
pub mod window;

pub use error::{Error, Result};
pub use estimate::{estimate, Algorithm, Diagnostics, Estimates, Gamma, Network, PaperEstimate};
pub use graph::{AcademicGraph, GraphBuilder, MaskedGraph, YearRange};
pub use window::{Bound, EstimationOutcome, WindowType, YearWindow};
