//! K-fold evaluation, the analytical coverage model and synthetic corpora.

pub mod coverage;
pub mod folds;
pub mod metrics;
pub mod synth;

pub use coverage::{
    expected_coverage, monte_carlo_coverage, project_citation, project_coauthor, project_combined,
    ComponentPartition, Projection,
};
pub use folds::{plan_folds, FoldPlan, ETA_PRESETS};
pub use metrics::{evaluate, evaluate_fold, EvalReport, FoldMetrics};
pub use synth::{generate_synthetic, SynthParams};
