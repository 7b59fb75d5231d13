use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AcademicGraph;

/// Fold counts matching missing-year ratios 1/8, 1/5, 1/4, 1/3 and 1/2.
pub const ETA_PRESETS: [usize; 5] = [8, 5, 4, 3, 2];

/// Partition of the known-year papers into `k` folds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    folds: Vec<Vec<usize>>,
}

impl FoldPlan {
    pub fn fold(&self, i: usize) -> &[usize] {
        &self.folds[i]
    }

    pub fn folds(&self) -> &[Vec<usize>] {
        &self.folds
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        self.folds.iter().map(Vec::len).collect()
    }

    /// Fold of paper `p`, `None` for papers without a year.
    pub fn fold_of(&self, p: usize) -> Option<usize> {
        self.folds.iter().position(|f| f.contains(&p))
    }

    /// 1/K
    pub fn eta(&self) -> f64 {
        1.0 / self.k as f64
    }
}

/// Seeded Fisher-Yates shuffle of the known papers (sorted by id first),
/// then round-robin assignment so the first `n mod k` folds get one extra.
pub fn plan_folds(g: &AcademicGraph, k: usize, seed: u64) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::InvalidFolds {
            k,
            reason: "need at least 2 folds".into(),
        });
    }
    let mut known: Vec<usize> = g.known_papers().collect();
    if k > known.len() {
        return Err(Error::InvalidFolds {
            k,
            reason: format!("only {} papers have a known year", known.len()),
        });
    }
    known.sort_by(|&a, &b| g.paper_id(a).cmp(g.paper_id(b)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in (1..known.len()).rev() {
        let j = rng.random_range(0..=i as u64) as usize;
        known.swap(i, j);
    }
    let mut folds = vec![Vec::with_capacity(known.len() / k + 1); k];
    for (i, p) in known.into_iter().enumerate() {
        folds[i % k].push(p);
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(FoldPlan { k, seed, folds })
}
