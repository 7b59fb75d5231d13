//! Year windows from the author-paper bipartite graph.
//!
//! Each author gets an active window spanning the years of their papers.
//! A paper's window is then bounded by the latest window start and the
//! earliest window end among its authors (swapped when those cross). The
//! iterated variants feed each round's estimates back into the author
//! windows until nothing moves.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::estimate::{Diagnostics, Estimates, Gamma};
use crate::graph::{AcademicGraph, MaskedGraph};
use crate::window::{round_year, simple_year, Bound, EstimationOutcome, YearWindow};

/// Active publishing window of one author. Both ends exist or neither does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AuthorWindow {
    span: Option<(i32, i32)>,
}

impl AuthorWindow {
    pub const OPEN: AuthorWindow = AuthorWindow { span: None };

    pub fn closed(min: i32, max: i32) -> Self {
        AuthorWindow {
            span: Some((min.min(max), min.max(max))),
        }
    }

    pub fn span(&self) -> Option<(i32, i32)> {
        self.span
    }

    pub fn aw_min(&self) -> Bound {
        self.span.map(|s| s.0).into()
    }

    pub fn aw_max(&self) -> Bound {
        self.span.map(|s| s.1).into()
    }

    fn absorb(&mut self, y: i32) {
        self.span = Some(match self.span {
            None => (y, y),
            Some((lo, hi)) => (lo.min(y), hi.max(y)),
        });
    }
}

/// Author windows from known years plus the supplied estimates.
///
/// `estimates` is indexed by paper; entries for papers with a visible year are
/// ignored, and a short or empty slice means "no estimates".
pub fn author_windows(g: &MaskedGraph<'_>, estimates: &[Option<i32>]) -> Vec<AuthorWindow> {
    let base = g.base();
    let mut windows = vec![AuthorWindow::OPEN; base.num_authors()];
    for &(a, p) in base.authorships() {
        let y = g.year(p).or_else(|| estimates.get(p).copied().flatten());
        if let Some(y) = y {
            windows[a].absorb(y);
        }
    }
    windows
}

/// Paper window implied by its authors' windows. Open author windows are
/// skipped; no finite author window (or no author) gives an unbounded window.
pub fn paper_window_from_authors(
    g: &AcademicGraph,
    p: usize,
    windows: &[AuthorWindow],
) -> YearWindow {
    let mut max_min: Option<i32> = None;
    let mut min_max: Option<i32> = None;
    for &a in g.authors_of(p) {
        if let Some((lo, hi)) = windows[a].span {
            max_min = Some(max_min.map_or(lo, |m| m.max(lo)));
            min_max = Some(min_max.map_or(hi, |m| m.min(hi)));
        }
    }
    match (max_min, min_max) {
        (Some(a), Some(b)) => YearWindow::closed(a.min(b), a.max(b)),
        _ => YearWindow::UNBOUNDED,
    }
}

/// Consistent-coauthor pairs: papers sharing at least two authors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoauthorPairIndex {
    pairs: Vec<Vec<(usize, u32)>>,
}

impl CoauthorPairIndex {
    fn build_for(g: &AcademicGraph, papers: impl Iterator<Item = usize>) -> Self {
        let mut pairs = vec![Vec::new(); g.num_papers()];
        let mut counts: HashMap<usize, u32> = HashMap::new();
        for p in papers {
            counts.clear();
            for &a in g.authors_of(p) {
                for &q in g.papers_of(a) {
                    if q != p {
                        *counts.entry(q).or_default() += 1;
                    }
                }
            }
            let mut row: Vec<(usize, u32)> = counts
                .iter()
                .filter(|(_, &w)| w >= 2)
                .map(|(&q, &w)| (q, w))
                .collect();
            row.sort_unstable();
            pairs[p] = row;
        }
        CoauthorPairIndex { pairs }
    }

    /// Index over every paper of the graph.
    pub fn for_all_papers(g: &AcademicGraph) -> Self {
        Self::build_for(g, 0..g.num_papers())
    }

    /// Omega(p) as `(q, w(p, q))`, sorted by `q`.
    pub fn pairs(&self, p: usize) -> &[(usize, u32)] {
        self.pairs.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn weight(&self, p: usize, q: usize) -> u32 {
        self.pairs(p)
            .binary_search_by_key(&q, |&(q, _)| q)
            .map_or(0, |i| self.pairs(p)[i].1)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.iter().all(Vec::is_empty)
    }
}

/// Pair index for the papers without a visible year.
pub fn build_pair_index(g: &MaskedGraph<'_>) -> CoauthorPairIndex {
    CoauthorPairIndex::build_for(g.base(), g.missing_papers().into_iter())
}

fn weighted_mean(
    p: usize,
    idx: &CoauthorPairIndex,
    g: &MaskedGraph<'_>,
    gamma: Gamma,
    keep: impl Fn(i32) -> bool,
) -> Option<i32> {
    let mut num = 0.0;
    let mut den = 0.0;
    for &(q, w) in idx.pairs(p) {
        if let Some(y) = g.year(q).filter(|&y| keep(y)) {
            let wt = (w as f64).powf(gamma.value());
            num += wt * y as f64;
            den += wt;
        }
    }
    (den > 0.0).then(|| round_year(num / den))
}

/// gamma-weighted mean year over the known papers of Omega(p).
pub fn weighted_year(
    p: usize,
    idx: &CoauthorPairIndex,
    g: &MaskedGraph<'_>,
    gamma: Gamma,
) -> Option<i32> {
    weighted_mean(p, idx, g, gamma, |_| true)
}

/// [`weighted_year`] restricted to pair papers whose year lies in `[yl, yr]`.
pub fn weighted_year_windowed(
    p: usize,
    idx: &CoauthorPairIndex,
    g: &MaskedGraph<'_>,
    gamma: Gamma,
    yl: i32,
    yr: i32,
) -> Option<i32> {
    weighted_mean(p, idx, g, gamma, |y| (yl..=yr).contains(&y))
}

/// Result of one iterated run, with the final author windows.
#[derive(Debug, Clone)]
pub struct AuthorshipRun {
    pub estimates: Estimates,
    pub author_windows: Vec<AuthorWindow>,
}

/// Round cap for the iterated estimators.
pub(crate) fn round_cap(g: &MaskedGraph<'_>) -> usize {
    g.num_papers() + 1
}

/// Shared round loop. Each round recomputes author windows from known years
/// and the previous round's estimates, then asks `decide` for every missing
/// paper given its authorship window. Stops when a round leaves both the
/// estimates and the author windows unchanged, after one round when
/// `single_pass`, or at the round cap.
pub(crate) fn run_rounds(
    g: &MaskedGraph<'_>,
    single_pass: bool,
    mut decide: impl FnMut(usize, YearWindow) -> (EstimationOutcome, YearWindow),
) -> (
    Vec<(usize, EstimationOutcome, YearWindow)>,
    Vec<AuthorWindow>,
    Diagnostics,
) {
    let missing = g.missing_papers();
    let cap = round_cap(g);
    let mut estimates: Vec<Option<i32>> = vec![None; g.num_papers()];
    let mut prev_windows: Option<Vec<AuthorWindow>> = None;
    let mut diag = Diagnostics::default();
    let mut results = Vec::with_capacity(missing.len());
    loop {
        diag.rounds += 1;
        let windows = author_windows(g, &estimates);
        let mut next = vec![None; g.num_papers()];
        results.clear();
        for &p in &missing {
            let aw = paper_window_from_authors(g.base(), p, &windows);
            let (outcome, w) = decide(p, aw);
            next[p] = outcome.year();
            results.push((p, outcome, w));
        }
        let changed = next != estimates || prev_windows.as_ref() != Some(&windows);
        estimates = next;
        prev_windows = Some(windows);
        if single_pass || !changed {
            break;
        }
        if diag.rounds >= cap {
            diag.hit_round_cap = true;
            break;
        }
    }
    (results, prev_windows.unwrap_or_default(), diag)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AuthorshipVariant {
    Ba,
    Iter,
    AdvIter(Gamma),
}

pub fn run_authorship(g: &MaskedGraph<'_>, variant: AuthorshipVariant) -> AuthorshipRun {
    let (results, author_windows, diag) = match variant {
        AuthorshipVariant::Ba => run_rounds(g, true, |_, w| (simple_year(&w), w)),
        AuthorshipVariant::Iter => run_rounds(g, false, |_, w| (simple_year(&w), w)),
        AuthorshipVariant::AdvIter(gamma) => {
            let idx = build_pair_index(g);
            // Omega(p) and the visible years are fixed, so W(p) is too.
            let weighted: Vec<Option<i32>> = (0..g.num_papers())
                .map(|p| weighted_year(p, &idx, g, gamma))
                .collect();
            run_rounds(g, false, |p, w| match weighted[p] {
                Some(y) => (EstimationOutcome::Estimated(y), w),
                None => (simple_year(&w), w),
            })
        }
    };
    AuthorshipRun {
        estimates: Estimates::assemble(g, results, diag),
        author_windows,
    }
}

pub fn estimate_ba(g: &MaskedGraph<'_>) -> Estimates {
    run_authorship(g, AuthorshipVariant::Ba).estimates
}

pub fn estimate_iter(g: &MaskedGraph<'_>) -> Estimates {
    run_authorship(g, AuthorshipVariant::Iter).estimates
}

pub fn estimate_adviter(g: &MaskedGraph<'_>, gamma: Gamma) -> Estimates {
    run_authorship(g, AuthorshipVariant::AdvIter(gamma)).estimates
}
