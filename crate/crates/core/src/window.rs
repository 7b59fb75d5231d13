//! Year windows with open ends and the outcome of a year estimate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::YearRange;

/// One end of a year window. `Open` stands for -inf on a lower bound and
/// +inf on an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bound {
    Open,
    Finite(i32),
}

impl Bound {
    pub fn finite(self) -> Option<i32> {
        match self {
            Bound::Open => None,
            Bound::Finite(y) => Some(y),
        }
    }

    pub fn is_open(self) -> bool {
        matches!(self, Bound::Open)
    }

    /// Tightest of two lower bounds.
    #[inline]
    pub fn max_lower(self, other: Bound) -> Bound {
        match (self, other) {
            (Bound::Open, b) | (b, Bound::Open) => b,
            (Bound::Finite(a), Bound::Finite(b)) => Bound::Finite(a.max(b)),
        }
    }

    /// Tightest of two upper bounds.
    #[inline]
    pub fn min_upper(self, other: Bound) -> Bound {
        match (self, other) {
            (Bound::Open, b) | (b, Bound::Open) => b,
            (Bound::Finite(a), Bound::Finite(b)) => Bound::Finite(a.min(b)),
        }
    }

    fn fmt_side(self, f: &mut fmt::Formatter<'_>, open: &str) -> fmt::Result {
        match self {
            Bound::Open => f.write_str(open),
            Bound::Finite(y) => write!(f, "{y}"),
        }
    }
}

impl From<Option<i32>> for Bound {
    fn from(y: Option<i32>) -> Self {
        y.map_or(Bound::Open, Bound::Finite)
    }
}

/// Which ends of a window carry information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WindowType {
    /// `[lower, upper]`
    Type1,
    /// `[lower, +inf)`
    Type2,
    /// `(-inf, upper]`
    Type3,
    /// `(-inf, +inf)`, no information
    Type4,
}

impl WindowType {
    pub fn as_str(self) -> &'static str {
        match self {
            WindowType::Type1 => "Type1",
            WindowType::Type2 => "Type2",
            WindowType::Type3 => "Type3",
            WindowType::Type4 => "Type4",
        }
    }
}

impl fmt::Display for WindowType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A closed year interval whose ends may be open.
///
/// Finite windows are kept normalized (`lower <= upper`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YearWindow {
    lower: Bound,
    upper: Bound,
}

impl YearWindow {
    pub const UNBOUNDED: YearWindow = YearWindow {
        lower: Bound::Open,
        upper: Bound::Open,
    };

    /// Builds a window, swapping finite bounds that arrive inverted.
    pub fn new(lower: Bound, upper: Bound) -> Self {
        Self::normalized(lower, upper).0
    }

    /// Like [`YearWindow::new`] and also reports whether a swap happened.
    pub fn normalized(lower: Bound, upper: Bound) -> (Self, bool) {
        match (lower, upper) {
            (Bound::Finite(lo), Bound::Finite(hi)) if lo > hi => (
                YearWindow {
                    lower: Bound::Finite(hi),
                    upper: Bound::Finite(lo),
                },
                true,
            ),
            _ => (YearWindow { lower, upper }, false),
        }
    }

    pub fn closed(lo: i32, hi: i32) -> Self {
        Self::new(Bound::Finite(lo), Bound::Finite(hi))
    }

    pub fn point(y: i32) -> Self {
        Self::closed(y, y)
    }

    pub fn lower(&self) -> Bound {
        self.lower
    }

    pub fn upper(&self) -> Bound {
        self.upper
    }

    pub fn kind(&self) -> WindowType {
        match (self.lower, self.upper) {
            (Bound::Finite(_), Bound::Finite(_)) => WindowType::Type1,
            (Bound::Finite(_), Bound::Open) => WindowType::Type2,
            (Bound::Open, Bound::Finite(_)) => WindowType::Type3,
            (Bound::Open, Bound::Open) => WindowType::Type4,
        }
    }

    pub fn contains(&self, year: i32) -> bool {
        let above = match self.lower {
            Bound::Open => true,
            Bound::Finite(lo) => lo <= year,
        };
        let below = match self.upper {
            Bound::Open => true,
            Bound::Finite(hi) => year <= hi,
        };
        above && below
    }

    /// `self` is a subset of `other`.
    pub fn is_within(&self, other: &YearWindow) -> bool {
        let lo_ok = match (other.lower, self.lower) {
            (Bound::Open, _) => true,
            (Bound::Finite(_), Bound::Open) => false,
            (Bound::Finite(o), Bound::Finite(s)) => o <= s,
        };
        let hi_ok = match (other.upper, self.upper) {
            (Bound::Open, _) => true,
            (Bound::Finite(_), Bound::Open) => false,
            (Bound::Finite(o), Bound::Finite(s)) => s <= o,
        };
        lo_ok && hi_ok
    }

    /// Set intersection, or `None` when the windows are disjoint.
    pub fn intersect(&self, other: &YearWindow) -> Option<YearWindow> {
        let lower = self.lower.max_lower(other.lower);
        let upper = self.upper.min_upper(other.upper);
        match (lower, upper) {
            (Bound::Finite(lo), Bound::Finite(hi)) if lo > hi => None,
            _ => Some(YearWindow { lower, upper }),
        }
    }
}

impl fmt::Display for YearWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.lower.is_open() { "(" } else { "[" })?;
        self.lower.fmt_side(f, "-inf")?;
        f.write_str(", ")?;
        self.upper.fmt_side(f, "+inf")?;
        f.write_str(if self.upper.is_open() { ")" } else { "]" })
    }
}

/// Serialized form of a bound in TSV output.
pub fn bound_token(b: Bound, lower_side: bool) -> String {
    match (b, lower_side) {
        (Bound::Finite(y), _) => y.to_string(),
        (Bound::Open, true) => "-inf".to_owned(),
        (Bound::Open, false) => "+inf".to_owned(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EstimationOutcome {
    Estimated(i32),
    Uncovered,
}

impl EstimationOutcome {
    pub fn year(self) -> Option<i32> {
        match self {
            EstimationOutcome::Estimated(y) => Some(y),
            EstimationOutcome::Uncovered => None,
        }
    }

    pub fn is_covered(self) -> bool {
        matches!(self, EstimationOutcome::Estimated(_))
    }
}

impl From<Option<i32>> for EstimationOutcome {
    fn from(y: Option<i32>) -> Self {
        y.map_or(EstimationOutcome::Uncovered, EstimationOutcome::Estimated)
    }
}

/// Midpoint of two years, halves rounded up to the later year.
#[inline]
pub fn midpoint(lo: i32, hi: i32) -> i32 {
    (lo as i64 + hi as i64 + 1).div_euclid(2) as i32
}

/// Rounds a real-valued year half up.
#[inline]
pub fn round_year(y: f64) -> i32 {
    (y + 0.5).floor() as i32
}

/// Simple year value: midpoint for two-sided windows, the bound itself for
/// one-sided windows, nothing for an unbounded window.
pub fn simple_year(w: &YearWindow) -> EstimationOutcome {
    match (w.lower, w.upper) {
        (Bound::Finite(lo), Bound::Finite(hi)) => EstimationOutcome::Estimated(midpoint(lo, hi)),
        (Bound::Finite(lo), Bound::Open) => EstimationOutcome::Estimated(lo),
        (Bound::Open, Bound::Finite(hi)) => EstimationOutcome::Estimated(hi),
        (Bound::Open, Bound::Open) => EstimationOutcome::Uncovered,
    }
}

/// Clamp applied to every produced estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct EstimateClamp {
    lo: i32,
    hi: i32,
}

pub(crate) const CLAMP_MARGIN: i32 = 5;

impl EstimateClamp {
    pub(crate) fn new(range: YearRange) -> Self {
        EstimateClamp {
            lo: range.min - CLAMP_MARGIN,
            hi: range.max + CLAMP_MARGIN,
        }
    }

    /// Returns the clamped outcome and whether clamping changed it.
    pub(crate) fn apply(&self, o: EstimationOutcome) -> (EstimationOutcome, bool) {
        match o {
            EstimationOutcome::Estimated(y) => {
                let c = y.clamp(self.lo, self.hi);
                (EstimationOutcome::Estimated(c), c != y)
            }
            EstimationOutcome::Uncovered => (o, false),
        }
    }
}
