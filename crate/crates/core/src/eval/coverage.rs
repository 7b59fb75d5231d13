use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSet;
use crate::error::Result;
use crate::estimate::{estimate, Algorithm, Gamma};
use crate::graph::{AcademicGraph, MaskedGraph};

/// Connected-component sizes of an undirected projection over all papers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPartition {
    sizes: Vec<usize>,
    total: usize,
}

impl ComponentPartition {
    /// Sizes are sorted largest first; zero sizes are dropped.
    pub fn from_sizes(mut sizes: Vec<usize>) -> Self {
        sizes.retain(|&s| s > 0);
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let total = sizes.iter().sum();
        ComponentPartition { sizes, total }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn num_components(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Projection {
    Citation,
    Coauthor,
    Combined,
}

impl Projection {
    pub const ALL: [Projection; 3] = [
        Projection::Citation,
        Projection::Coauthor,
        Projection::Combined,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Projection::Citation => "citation",
            Projection::Coauthor => "coauthor",
            Projection::Combined => "combined",
        }
    }

    pub fn partition(self, g: &AcademicGraph) -> ComponentPartition {
        match self {
            Projection::Citation => project_citation(g),
            Projection::Coauthor => project_coauthor(g),
            Projection::Combined => project_combined(g),
        }
    }
}

fn union_citations(g: &AcademicGraph, d: &mut DisjointSet) {
    for &(t, f) in g.citations() {
        d.union(t, f);
    }
}

// Chain each author's papers together: linear in the number of authorships.
fn union_coauthors(g: &AcademicGraph, d: &mut DisjointSet) {
    for a in 0..g.num_authors() {
        let papers = g.papers_of(a);
        if let Some((&first, rest)) = papers.split_first() {
            for &p in rest {
                d.union(first, p);
            }
        }
    }
}

pub fn project_citation(g: &AcademicGraph) -> ComponentPartition {
    let mut d = DisjointSet::new(g.num_papers());
    union_citations(g, &mut d);
    ComponentPartition::from_sizes(d.component_sizes())
}

pub fn project_coauthor(g: &AcademicGraph) -> ComponentPartition {
    let mut d = DisjointSet::new(g.num_papers());
    union_coauthors(g, &mut d);
    ComponentPartition::from_sizes(d.component_sizes())
}

pub fn project_combined(g: &AcademicGraph) -> ComponentPartition {
    let mut d = DisjointSet::new(g.num_papers());
    union_citations(g, &mut d);
    union_coauthors(g, &mut d);
    ComponentPartition::from_sizes(d.component_sizes())
}

/// Expected fraction of independently masked papers (each with probability
/// `eta`) that share a component with at least one unmasked paper.
///
/// An empty partition yields 0.
pub fn expected_coverage(parts: &ComponentPartition, eta: f64) -> f64 {
    if parts.total == 0 {
        return 0.0;
    }
    let lost: f64 = parts
        .sizes
        .iter()
        .map(|&s| eta.powi(s as i32) * s as f64)
        .sum();
    1.0 - lost / (eta * parts.total as f64)
}

/// Pooled Monte-Carlo coverage: every year-known paper is hidden independently
/// with probability `eta`, and the result is total covered over total hidden
/// across all trials.
pub fn monte_carlo_coverage(
    g: &AcademicGraph,
    algorithm: Algorithm,
    gamma: Gamma,
    eta: f64,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    let known: Vec<usize> = g.known_papers().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut hidden_total, mut covered_total) = (0usize, 0usize);
    for _ in 0..trials {
        let hidden: Vec<usize> = known
            .iter()
            .copied()
            .filter(|_| rng.random_bool(eta))
            .collect();
        if hidden.is_empty() {
            continue;
        }
        let masked = MaskedGraph::with_hidden(g, hidden.iter().copied())?;
        let est = estimate(&masked, algorithm, gamma);
        hidden_total += hidden.len();
        covered_total += hidden
            .iter()
            .filter(|&&p| est.outcome(p).is_some_and(|o| o.is_covered()))
            .count();
    }
    Ok(if hidden_total == 0 {
        0.0
    } else {
        covered_total as f64 / hidden_total as f64
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn hand_values() {
        let single = ComponentPartition::from_sizes(vec![1]);
        assert_eq!(expected_coverage(&single, 0.3), 0.0);
        let two_one = ComponentPartition::from_sizes(vec![2, 1]);
        assert!((expected_coverage(&two_one, 0.5) - 1.0 / 3.0).abs() < 1e-15);
        let big = ComponentPartition::from_sizes(vec![6]);
        assert!((expected_coverage(&big, 0.25) - (1.0 - 0.25f64.powi(5))).abs() < 1e-15);
        assert_eq!(
            expected_coverage(&ComponentPartition::from_sizes(vec![]), 0.5),
            0.0
        );
    }

    #[test]
    fn citation_example_components() {
        let g = fixtures::citation_example();
        assert_eq!(project_citation(&g).sizes(), &[11, 1]);
        assert_eq!(project_coauthor(&g).sizes(), &[1; 12]);
    }

    #[test]
    fn authorship_example_components() {
        let g = fixtures::authorship_example();
        let p = project_coauthor(&g);
        assert_eq!(p.sizes(), &[7, 1]);
        assert_eq!(p.total(), 8);
        assert_eq!(project_combined(&g), p);
    }

    #[test]
    fn empty_graph() {
        let g = crate::graph::GraphBuilder::new(Default::default())
            .build()
            .0;
        assert!(project_combined(&g).is_empty());
    }
}
