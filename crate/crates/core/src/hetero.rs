//! Estimators over citations and authorships together.
//!
//! Every missing paper gets a citation window and an authorship window. When
//! both carry information they are intersected; when they are disjoint the
//! citation window wins.

use serde::{Deserialize, Serialize};

use crate::authorship::{build_pair_index, run_rounds, weighted_year, weighted_year_windowed};
use crate::citation::{
    derive_advanced_windows, derive_simple_windows, derive_windows_with_training, PaperWindows,
};
use crate::estimate::{Estimates, Gamma};
use crate::graph::MaskedGraph;
use crate::window::{simple_year, Bound, EstimationOutcome, WindowType, YearWindow};

/// Which of the two windows carried information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SourceCase {
    /// Neither.
    A,
    /// Authorship only.
    B,
    /// Citation only.
    C,
    /// Both.
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinedWindow {
    pub window: YearWindow,
    pub case: SourceCase,
}

/// Combines a citation window with an authorship window.
///
/// In the two-sided case the result is the intersection. Disjoint windows
/// fall back to the citation side: the whole window when it is two-sided,
/// or the point at its single bound when it is one-sided.
pub fn combine_windows(cw: &YearWindow, aw: &YearWindow) -> CombinedWindow {
    let (window, case) = match (cw.kind(), aw.kind()) {
        (WindowType::Type4, WindowType::Type4) => (YearWindow::UNBOUNDED, SourceCase::A),
        (WindowType::Type4, _) => (*aw, SourceCase::B),
        (_, WindowType::Type4) => (*cw, SourceCase::C),
        (kind, _) => {
            let w = cw
                .intersect(aw)
                .unwrap_or_else(|| match (kind, cw.lower(), cw.upper()) {
                    (WindowType::Type2, Bound::Finite(lo), _) => YearWindow::point(lo),
                    (WindowType::Type3, _, Bound::Finite(hi)) => YearWindow::point(hi),
                    _ => *cw,
                });
            (w, SourceCase::D)
        }
    };
    CombinedWindow { window, case }
}

fn iterate_combined(g: &MaskedGraph<'_>, cws: &PaperWindows, single_pass: bool) -> Estimates {
    let (results, _, mut diag) = run_rounds(g, single_pass, |p, aw| {
        let cw = cws.get(p).unwrap_or(YearWindow::UNBOUNDED);
        let comb = combine_windows(&cw, &aw);
        (simple_year(&comb.window), comb.window)
    });
    diag.swapped_windows += cws.swapped;
    Estimates::assemble(g, results, diag)
}

/// Simple citation windows combined with one authorship pass.
pub fn estimate_ssba(g: &MaskedGraph<'_>) -> Estimates {
    iterate_combined(g, &derive_simple_windows(g), true)
}

/// Propagated citation windows combined with iterated authorship windows.
pub fn estimate_asiter(g: &MaskedGraph<'_>) -> Estimates {
    iterate_combined(g, &derive_advanced_windows(g), false)
}

/// Fixed per-paper quantities for the combined calibrated estimator.
#[derive(Debug, Clone, Copy)]
struct Calibration {
    cw: YearWindow,
    /// Training mean for one-sided citation windows.
    d_result: Option<i32>,
    /// Pair-weighted year restricted to the window implied by the citation
    /// side (for one-sided windows: the bound and twice its distance to
    /// `d_result`).
    windowed: Option<i32>,
    /// Unrestricted pair-weighted year.
    weighted: Option<i32>,
}

/// `[bound, bound + 2 delta]` or `[bound - 2 delta, bound]`; collapses to the
/// bound itself when `delta <= 0`.
fn spread_window(bound: i32, d_result: i32, upward: bool) -> (i32, i32) {
    if upward {
        let delta = (d_result - bound).max(0);
        (bound, bound + 2 * delta)
    } else {
        let delta = (bound - d_result).max(0);
        (bound - 2 * delta, bound)
    }
}

/// Calibrated citation windows, coauthor-pair years and iterated authorship
/// windows.
pub fn estimate_g_adviter(g: &MaskedGraph<'_>, gamma: Gamma) -> Estimates {
    let derivation = derive_windows_with_training(g);
    let training = &derivation.training;
    let idx = build_pair_index(g);

    let calib: Vec<Option<Calibration>> = (0..g.num_papers())
        .map(|p| {
            let cw = derivation.windows.get(p)?;
            let weighted = weighted_year(p, &idx, g, gamma);
            let (d_result, windowed) = match (cw.kind(), cw.lower(), cw.upper()) {
                (WindowType::Type1, Bound::Finite(lo), Bound::Finite(hi)) => {
                    (None, weighted_year_windowed(p, &idx, g, gamma, lo, hi))
                }
                (WindowType::Type2, Bound::Finite(lo), _) => {
                    let d = training.lookup(WindowType::Type2, lo);
                    let w = d.and_then(|d| {
                        let (yl, yr) = spread_window(lo, d, true);
                        weighted_year_windowed(p, &idx, g, gamma, yl, yr)
                    });
                    (d, w)
                }
                (WindowType::Type3, _, Bound::Finite(hi)) => {
                    let d = training.lookup(WindowType::Type3, hi);
                    let w = d.and_then(|d| {
                        let (yl, yr) = spread_window(hi, d, false);
                        weighted_year_windowed(p, &idx, g, gamma, yl, yr)
                    });
                    (d, w)
                }
                _ => (None, None),
            };
            Some(Calibration {
                cw,
                d_result,
                windowed,
                weighted,
            })
        })
        .collect();

    let (results, _, mut diag) = run_rounds(g, false, |p, aw| {
        let c = calib[p].expect("calibration exists for every missing paper");
        let comb = combine_windows(&c.cw, &aw);
        let gw = comb.window;
        let outcome = match comb.case {
            SourceCase::A => EstimationOutcome::Uncovered,
            SourceCase::B => c
                .weighted
                .map_or_else(|| simple_year(&aw), EstimationOutcome::Estimated),
            SourceCase::C | SourceCase::D => match c.cw.kind() {
                WindowType::Type1 => c
                    .windowed
                    .map_or_else(|| simple_year(&gw), EstimationOutcome::Estimated),
                WindowType::Type2 | WindowType::Type3 => {
                    if let Some(y) = c.windowed {
                        EstimationOutcome::Estimated(y)
                    } else {
                        let disjoint = c.cw.intersect(&aw).is_none();
                        match c.d_result {
                            Some(d) if disjoint || gw.contains(d) => {
                                EstimationOutcome::Estimated(d)
                            }
                            _ => simple_year(&gw),
                        }
                    }
                }
                WindowType::Type4 => unreachable!("Type4 citation windows are cases A/B"),
            },
        };
        (outcome, gw)
    });
    diag.swapped_windows += derivation.windows.swapped;
    Estimates::assemble(g, results, diag)
}
