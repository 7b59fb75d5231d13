#![allow(dead_code)]

use std::collections::VecDeque;

use pubyear::eval::{generate_synthetic, SynthParams};
use pubyear::{AcademicGraph, GraphBuilder, MaskedGraph, YearRange};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Synthetic corpus whose size and density vary with `seed`; at most 500 papers.
pub fn varied_corpus(seed: u64) -> AcademicGraph {
    let n_papers = 20 + (seed as usize * 37) % 481;
    let params = SynthParams {
        n_papers,
        n_authors: (n_papers * 2 / 5).max(3),
        mean_citations: 1.0 + (seed % 5) as f64 * 0.8,
        mean_authors: 1.5 + (seed % 3) as f64 * 0.5,
        year_min: 1970,
        year_max: 2012,
    };
    generate_synthetic(&params, seed).expect("feasible parameters")
}

/// Hides every known paper independently with probability `eta`.
pub fn hide_independent(g: &AcademicGraph, eta: f64, seed: u64) -> MaskedGraph<'_> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hidden: Vec<usize> = g.known_papers().filter(|_| rng.random_bool(eta)).collect();
    MaskedGraph::with_hidden(g, hidden).expect("hidden papers are known")
}

/// Component label of every paper, by breadth-first search over an explicit
/// undirected edge list.
pub fn bfs_components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if label[v] == usize::MAX {
                    label[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    label
}

/// Undirected edges between every pair of papers that share an author.
pub fn coauthor_pairs(g: &AcademicGraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..g.num_authors() {
        let ps = g.papers_of(a);
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                out.push((ps[i], ps[j]));
            }
        }
    }
    out
}

pub fn citation_pairs(g: &AcademicGraph) -> Vec<(usize, usize)> {
    g.citations().to_vec()
}

/// Exact coverage under independent masking, by enumerating all 2^n masks:
/// one minus expected uncovered over expected hidden, where a hidden paper is
/// uncovered when its whole component is hidden.
pub fn enumerated_coverage(labels: &[usize], eta: f64) -> f64 {
    let n = labels.len();
    assert!(n <= 20, "enumeration is exponential");
    if n == 0 {
        return 0.0;
    }
    let n_labels = labels.iter().max().map_or(0, |m| m + 1);
    let (mut e_uncovered, mut e_hidden) = (0.0f64, 0.0f64);
    let mut visible = vec![false; n_labels];
    for mask in 0u32..(1u32 << n) {
        let hidden = mask.count_ones() as i32;
        let weight = eta.powi(hidden) * (1.0 - eta).powi(n as i32 - hidden);
        visible.iter_mut().for_each(|v| *v = false);
        for (p, &l) in labels.iter().enumerate() {
            if mask & (1 << p) == 0 {
                visible[l] = true;
            }
        }
        let uncovered = (0..n)
            .filter(|&p| mask & (1 << p) != 0 && !visible[labels[p]])
            .count();
        e_uncovered += weight * uncovered as f64;
        e_hidden += weight * hidden as f64;
    }
    1.0 - e_uncovered / e_hidden
}

/// Graph on `n` papers with the given (cited, citing) index pairs; years are
/// all known and consistent with the edges.
pub fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> AcademicGraph {
    let mut b = GraphBuilder::new(YearRange::default());
    for i in 0..n {
        b.add_paper(&format!("n{i:02}"), Some(1990 + i as i32));
    }
    for &(t, f) in edges {
        let (t, f) = (t.min(f), t.max(f));
        b.add_citation(&format!("n{t:02}"), &format!("n{f:02}"));
    }
    b.build().0
}

/// Returns a copy of `g` with every paper dated: the given true years for
/// `a` and `c` of a line topology, `b` keeps its year.
pub fn dated_line(g: &AcademicGraph) -> Option<AcademicGraph> {
    let b_year = g.year(g.paper_index("b")?)?;
    let ids = ["a", "b", "c"];
    for ya in b_year - 1..=b_year + 1 {
        for yc in b_year - 1..=b_year + 1 {
            let year_of = |id: &str| match id {
                "a" => ya,
                "c" => yc,
                _ => b_year,
            };
            let ok = g
                .citations()
                .iter()
                .all(|&(t, f)| year_of(g.paper_id(t)) <= year_of(g.paper_id(f)));
            if !ok {
                continue;
            }
            let mut b = GraphBuilder::new(YearRange::default());
            for id in ids {
                b.add_paper(id, Some(year_of(id)));
            }
            for &(t, f) in g.citations() {
                b.add_citation(g.paper_id(t), g.paper_id(f));
            }
            return Some(b.build().0);
        }
    }
    None
}
