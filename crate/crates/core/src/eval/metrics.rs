use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{estimate, Algorithm, Gamma, Network};
use crate::graph::{AcademicGraph, MaskedGraph};

use super::folds::plan_folds;

/// Metrics for one masked fold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldMetrics {
    pub fold: usize,
    pub n_missing: usize,
    pub n_covered: usize,
    /// `None` when nothing in the fold was covered.
    pub mae: Option<f64>,
    pub rmse: Option<f64>,
}

impl FoldMetrics {
    /// From `(estimate, true year)` pairs of the covered papers.
    pub fn from_pairs(fold: usize, n_missing: usize, pairs: &[(i32, i32)]) -> Self {
        let n = pairs.len();
        let (mae, rmse) = if n == 0 {
            (None, None)
        } else {
            let abs: f64 = pairs.iter().map(|&(e, t)| (e - t).abs() as f64).sum();
            let sq: f64 = pairs.iter().map(|&(e, t)| ((e - t) as f64).powi(2)).sum();
            (Some(abs / n as f64), Some((sq / n as f64).sqrt()))
        };
        FoldMetrics {
            fold,
            n_missing,
            n_covered: n,
            mae,
            rmse,
        }
    }

    pub fn coverage(&self) -> f64 {
        if self.n_missing == 0 {
            0.0
        } else {
            self.n_covered as f64 / self.n_missing as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub algorithm: Algorithm,
    pub network: Network,
    pub k: usize,
    pub seed: u64,
    pub gamma: f64,
    pub eta: f64,
    pub folds: Vec<FoldMetrics>,
    /// Unweighted mean of the per-fold coverages.
    pub coverage: f64,
    /// Means over the folds with at least one covered paper.
    pub mae: Option<f64>,
    pub rmse: Option<f64>,
    /// Folds left out of the MAE/RMSE means because nothing was covered.
    pub folds_without_coverage: usize,
}

impl EvalReport {
    pub fn from_folds(
        algorithm: Algorithm,
        k: usize,
        seed: u64,
        gamma: Gamma,
        folds: Vec<FoldMetrics>,
    ) -> Self {
        let coverage = folds.iter().map(FoldMetrics::coverage).sum::<f64>() / folds.len() as f64;
        let scored: Vec<&FoldMetrics> = folds.iter().filter(|f| f.n_covered > 0).collect();
        let mean = |get: fn(&FoldMetrics) -> Option<f64>| {
            (!scored.is_empty())
                .then(|| scored.iter().filter_map(|f| get(f)).sum::<f64>() / scored.len() as f64)
        };
        EvalReport {
            algorithm,
            network: algorithm.network(),
            k,
            seed,
            gamma: gamma.value(),
            eta: 1.0 / k as f64,
            coverage,
            mae: mean(|f| f.mae),
            rmse: mean(|f| f.rmse),
            folds_without_coverage: folds.len() - scored.len(),
            folds,
        }
    }

    pub const CSV_HEADER: &'static str = "algo,network,eta,K,seed,fold,coverage,mae,rmse";

    /// CSV rows (no header): one per fold and a final `aggregate` row.
    pub fn csv_rows(&self) -> String {
        fn num(x: Option<f64>) -> String {
            x.map_or_else(|| "NA".to_owned(), |v| format!("{v:.6}"))
        }
        let mut out = String::new();
        let prefix = format!(
            "{},{},{:.6},{},{}",
            self.algorithm.id(),
            self.network,
            self.eta,
            self.k,
            self.seed
        );
        for f in &self.folds {
            let _ = writeln!(
                out,
                "{prefix},{},{:.6},{},{}",
                f.fold,
                f.coverage(),
                num(f.mae),
                num(f.rmse)
            );
        }
        let _ = writeln!(
            out,
            "{prefix},aggregate,{:.6},{},{}",
            self.coverage,
            num(self.mae),
            num(self.rmse)
        );
        out
    }

    pub fn to_csv(&self) -> String {
        format!("{}\n{}", Self::CSV_HEADER, self.csv_rows())
    }
}

/// Runs one fold: hide `fold` and score the estimates of exactly those papers.
pub fn evaluate_fold(
    g: &AcademicGraph,
    algorithm: Algorithm,
    gamma: Gamma,
    fold_index: usize,
    fold: &[usize],
) -> Result<FoldMetrics> {
    let masked = MaskedGraph::with_hidden(g, fold.iter().copied())?;
    let est = estimate(&masked, algorithm, gamma);
    let pairs: Vec<(i32, i32)> = fold
        .iter()
        .filter_map(|&p| {
            let y = est.outcome(p)?.year()?;
            Some((y, masked.true_year(p)?))
        })
        .collect();
    Ok(FoldMetrics::from_pairs(fold_index, fold.len(), &pairs))
}

/// K-fold evaluation. Folds run on up to `jobs` threads; results are reduced
/// in fold order so the report does not depend on `jobs`.
pub fn evaluate(
    g: &AcademicGraph,
    algorithm: Algorithm,
    k: usize,
    seed: u64,
    gamma: Gamma,
    jobs: usize,
) -> Result<EvalReport> {
    let plan = plan_folds(g, k, seed)?;
    let run = || -> Result<Vec<FoldMetrics>> {
        plan.folds()
            .par_iter()
            .enumerate()
            .map(|(i, fold)| evaluate_fold(g, algorithm, gamma, i, fold))
            .collect()
    };
    let folds = if jobs <= 1 {
        plan.folds()
            .iter()
            .enumerate()
            .map(|(i, fold)| evaluate_fold(g, algorithm, gamma, i, fold))
            .collect::<Result<Vec<_>>>()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidFolds {
                k,
                reason: format!("thread pool: {e}"),
            })?
            .install(run)?
    };
    Ok(EvalReport::from_folds(algorithm, k, seed, gamma, folds))
}
