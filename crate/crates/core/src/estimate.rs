//! Algorithm selection and the shared result type of all estimators.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AcademicGraph, MaskedGraph};
use crate::window::{bound_token, EstimateClamp, EstimationOutcome, YearWindow};
use crate::{authorship, citation, hetero};

/// Weighting exponent for coauthor-pair averages. Zero means a plain mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gamma(f64);

impl Gamma {
    pub fn new(g: f64) -> Option<Self> {
        (g.is_finite() && g >= 0.0).then_some(Gamma(g))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Gamma {
    fn default() -> Self {
        Gamma(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Network {
    Citation,
    Authorship,
    Hetero,
}

impl Network {
    pub fn as_str(self) -> &'static str {
        match self {
            Network::Citation => "citation",
            Network::Authorship => "authorship",
            Network::Hetero => "hetero",
        }
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Network {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "citation" => Ok(Network::Citation),
            "authorship" => Ok(Network::Authorship),
            "hetero" => Ok(Network::Hetero),
            other => Err(Error::UnknownAlgorithm {
                network: other.to_owned(),
                algo: String::new(),
            }),
        }
    }
}

/// The nine estimators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    /// Citation network: simple windows, simple year.
    Ss,
    /// Citation network: propagated windows, simple year.
    As,
    /// Citation network: propagated windows, calibrated year.
    Aa,
    /// Authorship network: single pass.
    Ba,
    /// Authorship network: iterated to a fixpoint.
    Iter,
    /// Authorship network: iterated, coauthor-pair years first.
    AdvIter,
    /// Combined: simple citation windows with one authorship pass.
    SsBa,
    /// Combined: propagated citation windows with iterated authorship windows.
    AsIter,
    /// Combined: calibrated citation windows with coauthor-pair years.
    GAdvIter,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Ss,
        Algorithm::As,
        Algorithm::Aa,
        Algorithm::Ba,
        Algorithm::Iter,
        Algorithm::AdvIter,
        Algorithm::SsBa,
        Algorithm::AsIter,
        Algorithm::GAdvIter,
    ];

    pub fn network(self) -> Network {
        match self {
            Algorithm::Ss | Algorithm::As | Algorithm::Aa => Network::Citation,
            Algorithm::Ba | Algorithm::Iter | Algorithm::AdvIter => Network::Authorship,
            Algorithm::SsBa | Algorithm::AsIter | Algorithm::GAdvIter => Network::Hetero,
        }
    }

    /// Short id as used on the command line.
    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Ss => "ss",
            Algorithm::As => "as",
            Algorithm::Aa => "aa",
            Algorithm::Ba => "ba",
            Algorithm::Iter => "iter",
            Algorithm::AdvIter => "adviter",
            Algorithm::SsBa => "ssba",
            Algorithm::AsIter => "asiter",
            Algorithm::GAdvIter => "g-adviter",
        }
    }

    /// Resolves a `(network, algo)` pair. `adviter` under `hetero` selects the
    /// combined variant.
    pub fn from_parts(network: Network, algo: &str) -> Result<Self> {
        let a = match (network, algo) {
            (Network::Citation, "ss") => Algorithm::Ss,
            (Network::Citation, "as") => Algorithm::As,
            (Network::Citation, "aa") => Algorithm::Aa,
            (Network::Authorship, "ba") => Algorithm::Ba,
            (Network::Authorship, "iter") => Algorithm::Iter,
            (Network::Authorship, "adviter") => Algorithm::AdvIter,
            (Network::Hetero, "ssba") => Algorithm::SsBa,
            (Network::Hetero, "asiter") => Algorithm::AsIter,
            (Network::Hetero, "adviter" | "g-adviter") => Algorithm::GAdvIter,
            _ => {
                return Err(Error::UnknownAlgorithm {
                    network: network.to_string(),
                    algo: algo.to_owned(),
                })
            }
        };
        Ok(a)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Windows whose bounds crossed during derivation and were swapped.
    pub swapped_windows: usize,
    /// Estimates pulled back into the input window +-5 years.
    pub clamped_estimates: usize,
    /// Rounds (iterative estimators) or propagation passes (citation windows).
    pub rounds: usize,
    /// The iteration stopped at its round cap instead of converging.
    pub hit_round_cap: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperEstimate {
    pub outcome: EstimationOutcome,
    /// The window the estimate was derived from.
    pub window: YearWindow,
}

/// Estimates for every paper without a visible year, indexed by paper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimates {
    entries: Vec<Option<PaperEstimate>>,
    pub diagnostics: Diagnostics,
}

impl Estimates {
    /// Assembles the final map, clamping estimates to the graph's input window.
    pub(crate) fn assemble(
        g: &MaskedGraph<'_>,
        items: impl IntoIterator<Item = (usize, EstimationOutcome, YearWindow)>,
        mut diagnostics: Diagnostics,
    ) -> Self {
        let clamp = EstimateClamp::new(g.base().input_window());
        let mut entries = vec![None; g.num_papers()];
        for (p, outcome, window) in items {
            let (outcome, clamped) = clamp.apply(outcome);
            diagnostics.clamped_estimates += clamped as usize;
            entries[p] = Some(PaperEstimate { outcome, window });
        }
        Estimates {
            entries,
            diagnostics,
        }
    }

    pub fn get(&self, p: usize) -> Option<&PaperEstimate> {
        self.entries.get(p).and_then(Option::as_ref)
    }

    pub fn outcome(&self, p: usize) -> Option<EstimationOutcome> {
        self.get(p).map(|e| e.outcome)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &PaperEstimate)> {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(p, e)| e.as_ref().map(|e| (p, e)))
    }

    /// Number of estimated papers (covered or not).
    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn num_covered(&self) -> usize {
        self.iter().filter(|(_, e)| e.outcome.is_covered()).count()
    }

    /// Outcomes only; two runs agree on this when they agree on every estimate.
    pub fn outcomes(&self) -> Vec<Option<EstimationOutcome>> {
        self.entries.iter().map(|e| e.map(|e| e.outcome)).collect()
    }

    /// `paper_id  estimate|UNCOVERED  win_lower  win_upper  win_type`
    pub fn write_tsv<W: Write>(&self, g: &AcademicGraph, mut w: W) -> io::Result<()> {
        for (p, e) in self.iter() {
            let est = match e.outcome {
                EstimationOutcome::Estimated(y) => y.to_string(),
                EstimationOutcome::Uncovered => "UNCOVERED".to_owned(),
            };
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}",
                g.paper_id(p),
                est,
                bound_token(e.window.lower(), true),
                bound_token(e.window.upper(), false),
                e.window.kind()
            )?;
        }
        Ok(())
    }
}

/// Runs `algo` on every paper without a visible year.
pub fn estimate(g: &MaskedGraph<'_>, algo: Algorithm, gamma: Gamma) -> Estimates {
    use citation::CitationVariant;
    match algo {
        Algorithm::Ss => citation::estimate_citation(g, CitationVariant::Ss),
        Algorithm::As => citation::estimate_citation(g, CitationVariant::As),
        Algorithm::Aa => citation::estimate_citation(g, CitationVariant::Aa),
        Algorithm::Ba => authorship::estimate_ba(g),
        Algorithm::Iter => authorship::estimate_iter(g),
        Algorithm::AdvIter => authorship::estimate_adviter(g, gamma),
        Algorithm::SsBa => hetero::estimate_ssba(g),
        Algorithm::AsIter => hetero::estimate_asiter(g),
        Algorithm::GAdvIter => hetero::estimate_g_adviter(g, gamma),
    }
}
