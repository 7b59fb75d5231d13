//! Year windows from citation edges.
//!
//! A citing paper is never older than the paper it cites, so every known
//! cited year is a lower bound for the citer and every known citer year an
//! upper bound for the cited paper. The advanced derivation also passes
//! bounds across edges between two papers without years, until a full pass
//! over the edges changes nothing.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::estimate::{Diagnostics, Estimates};
use crate::graph::MaskedGraph;
use crate::window::{simple_year, Bound, EstimationOutcome, WindowType, YearWindow};

/// Windows for the papers without a visible year, indexed by paper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperWindows {
    windows: Vec<Option<YearWindow>>,
    /// Windows whose bounds crossed and were swapped.
    pub swapped: usize,
    /// Updates counted in each propagation pass; empty for simple windows.
    pub updates_per_pass: Vec<usize>,
}

impl PaperWindows {
    pub fn get(&self, p: usize) -> Option<YearWindow> {
        self.windows.get(p).copied().flatten()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, YearWindow)> + '_ {
        self.windows
            .iter()
            .enumerate()
            .filter_map(|(p, w)| w.map(|w| (p, w)))
    }

    pub fn passes(&self) -> usize {
        self.updates_per_pass.len()
    }
}

/// One-hop windows: max known cited year below, min known citer year above.
pub fn derive_simple_windows(g: &MaskedGraph<'_>) -> PaperWindows {
    let base = g.base();
    let mut windows = vec![None; g.num_papers()];
    let mut swapped = 0;
    for p in g.missing_papers() {
        let lower = base
            .references(p)
            .iter()
            .filter_map(|&f| g.year(f))
            .max()
            .into();
        let upper = base
            .citers(p)
            .iter()
            .filter_map(|&t| g.year(t))
            .min()
            .into();
        let (w, s) = YearWindow::normalized(lower, upper);
        swapped += s as usize;
        windows[p] = Some(w);
    }
    PaperWindows {
        windows,
        swapped,
        updates_per_pass: Vec::new(),
    }
}

/// Raw bound arrays from the edge-pass fixpoint.
struct Propagation {
    lower: Vec<Bound>,
    upper: Vec<Bound>,
    updates_per_pass: Vec<usize>,
}

/// Runs edge passes until one pass makes no update.
///
/// With `train` set, bounds also flow toward papers with known years so that
/// each of them ends up with the window it would get if its year were absent.
/// Propagation into papers without years only ever reads known years, so
/// their windows do not depend on `train`.
fn propagate(g: &MaskedGraph<'_>, edges: &[(usize, usize)], train: bool) -> Propagation {
    let n = g.num_papers();
    let mut lower = vec![Bound::Open; n];
    let mut upper = vec![Bound::Open; n];
    let mut updates_per_pass = Vec::new();
    loop {
        let mut updates = 0usize;
        for &(t, f) in edges {
            let f_before = lower[f];
            let t_before = upper[t];
            match (g.year(t), g.year(f)) {
                (None, None) => {
                    lower[f] = lower[f].max_lower(lower[t]);
                    upper[t] = upper[t].min_upper(upper[f]);
                }
                (Some(yt), None) => {
                    lower[f] = lower[f].max_lower(Bound::Finite(yt));
                    if train {
                        upper[t] = upper[t].min_upper(upper[f]);
                    }
                }
                (None, Some(yf)) => {
                    if train {
                        lower[f] = lower[f].max_lower(lower[t]);
                    }
                    upper[t] = upper[t].min_upper(Bound::Finite(yf));
                }
                (Some(yt), Some(yf)) => {
                    if train {
                        lower[f] = lower[f].max_lower(Bound::Finite(yt));
                        upper[t] = upper[t].min_upper(Bound::Finite(yf));
                    }
                }
            }
            updates += (lower[f] != f_before) as usize + (upper[t] != t_before) as usize;
        }
        updates_per_pass.push(updates);
        if updates == 0 {
            break;
        }
    }
    Propagation {
        lower,
        upper,
        updates_per_pass,
    }
}

fn collect_windows(
    g: &MaskedGraph<'_>,
    prop: &Propagation,
    want: impl Fn(usize) -> bool,
) -> (Vec<Option<YearWindow>>, usize) {
    let mut windows = vec![None; g.num_papers()];
    let mut swapped = 0;
    for (p, slot) in windows.iter_mut().enumerate() {
        if want(p) {
            let (w, s) = YearWindow::normalized(prop.lower[p], prop.upper[p]);
            swapped += s as usize;
            *slot = Some(w);
        }
    }
    (windows, swapped)
}

/// Propagated windows, visiting edges in the graph's stable order.
pub fn derive_advanced_windows(g: &MaskedGraph<'_>) -> PaperWindows {
    derive_advanced_windows_in_order(g, g.base().citations())
}

/// Propagated windows with an explicit edge visiting order. The fixpoint does
/// not depend on the order; only the number of passes does.
pub fn derive_advanced_windows_in_order(
    g: &MaskedGraph<'_>,
    edges: &[(usize, usize)],
) -> PaperWindows {
    let prop = propagate(g, edges, false);
    let (windows, swapped) = collect_windows(g, &prop, |p| !g.is_known(p));
    PaperWindows {
        windows,
        swapped,
        updates_per_pass: prop.updates_per_pass,
    }
}

/// `(y, window type, bound value)` harvested from a known-year paper whose
/// pretend window is one-sided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrainingTuple {
    pub paper: usize,
    pub year: i32,
    pub kind: WindowType,
    pub bound: i32,
}

/// Calibration set for one-sided windows.
#[derive(Debug, Clone, Default)]
pub struct TrainingSet {
    tuples: Vec<TrainingTuple>,
    sums: HashMap<(WindowType, i32), (i64, i64)>,
}

impl TrainingSet {
    pub fn from_tuples(tuples: Vec<TrainingTuple>) -> Self {
        let mut sums: HashMap<(WindowType, i32), (i64, i64)> = HashMap::new();
        for t in &tuples {
            debug_assert!(matches!(t.kind, WindowType::Type2 | WindowType::Type3));
            let e = sums.entry((t.kind, t.bound)).or_default();
            e.0 += t.year as i64;
            e.1 += 1;
        }
        TrainingSet { tuples, sums }
    }

    pub fn tuples(&self) -> &[TrainingTuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Mean true year over tuples with exactly this window type and bound,
    /// rounded half up. `None` when nothing matches or `kind` is two-sided.
    pub fn lookup(&self, kind: WindowType, bound: i32) -> Option<i32> {
        if !matches!(kind, WindowType::Type2 | WindowType::Type3) {
            return None;
        }
        self.sums
            .get(&(kind, bound))
            .map(|&(sum, n)| (2 * sum + n).div_euclid(2 * n) as i32)
    }
}

/// Free-function form of [`TrainingSet::lookup`].
pub fn d_lookup(t: &TrainingSet, kind: WindowType, bound: i32) -> Option<i32> {
    t.lookup(kind, bound)
}

#[derive(Debug, Clone)]
pub struct TrainingDerivation {
    /// Same windows as [`derive_advanced_windows`].
    pub windows: PaperWindows,
    /// Windows of known-year papers derived as if their year were absent.
    pub pretend: Vec<Option<YearWindow>>,
    pub training: TrainingSet,
}

pub fn derive_windows_with_training(g: &MaskedGraph<'_>) -> TrainingDerivation {
    let prop = propagate(g, g.base().citations(), true);
    let (windows, swapped) = collect_windows(g, &prop, |p| !g.is_known(p));
    let (pretend, _) = collect_windows(g, &prop, |p| g.is_known(p));
    let tuples = pretend
        .iter()
        .enumerate()
        .filter_map(|(p, w)| {
            let w = (*w)?;
            let year = g.year(p)?;
            match (w.kind(), w.lower(), w.upper()) {
                (WindowType::Type2, Bound::Finite(b), _)
                | (WindowType::Type3, _, Bound::Finite(b)) => Some(TrainingTuple {
                    paper: p,
                    year,
                    kind: w.kind(),
                    bound: b,
                }),
                _ => None,
            }
        })
        .collect();
    TrainingDerivation {
        windows: PaperWindows {
            windows,
            swapped,
            updates_per_pass: prop.updates_per_pass,
        },
        pretend,
        training: TrainingSet::from_tuples(tuples),
    }
}

/// Calibrated year for one window: training mean for one-sided windows when
/// available, simple rule otherwise.
pub fn calibrated_year(w: &YearWindow, training: &TrainingSet) -> EstimationOutcome {
    let calibrated = match (w.kind(), w.lower(), w.upper()) {
        (WindowType::Type2, Bound::Finite(b), _) => training.lookup(WindowType::Type2, b),
        (WindowType::Type3, _, Bound::Finite(b)) => training.lookup(WindowType::Type3, b),
        _ => None,
    };
    calibrated.map_or_else(|| simple_year(w), EstimationOutcome::Estimated)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CitationVariant {
    Ss,
    As,
    Aa,
}

pub fn estimate_citation(g: &MaskedGraph<'_>, variant: CitationVariant) -> Estimates {
    let (windows, training) = match variant {
        CitationVariant::Ss => (derive_simple_windows(g), None),
        CitationVariant::As => (derive_advanced_windows(g), None),
        CitationVariant::Aa => {
            let d = derive_windows_with_training(g);
            (d.windows, Some(d.training))
        }
    };
    let diagnostics = Diagnostics {
        swapped_windows: windows.swapped,
        rounds: windows.passes(),
        ..Default::default()
    };
    let items = windows.iter().map(|(p, w)| {
        let outcome = match &training {
            Some(t) => calibrated_year(&w, t),
            None => simple_year(&w),
        };
        (p, outcome, w)
    });
    Estimates::assemble(g, items, diagnostics)
}

/// Real-valued mean used by the calibration lookup, exposed for callers that
/// want the unrounded value.
pub fn training_mean(t: &TrainingSet, kind: WindowType, bound: i32) -> Option<f64> {
    t.sums
        .get(&(kind, bound))
        .map(|&(sum, n)| sum as f64 / n as f64)
}
