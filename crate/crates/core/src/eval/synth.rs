use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AcademicGraph, GraphBuilder, YearRange};

/// Shape of a synthetic corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthParams {
    pub n_papers: usize,
    pub n_authors: usize,
    pub mean_citations: f64,
    pub mean_authors: f64,
    pub year_min: i32,
    pub year_max: i32,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            n_papers: 1000,
            n_authors: 1500,
            mean_citations: 1.0,
            mean_authors: 1.8,
            year_min: 1970,
            year_max: 2012,
        }
    }
}

const GROUP_SIZE: usize = 4;
const IN_GROUP_PROB: f64 = 0.6;
const MAX_CAREER: i32 = 15;
// Success probability of the year-gap distribution between citing and cited.
const GAP_P: f64 = 0.3;

impl SynthParams {
    fn validate(&self) -> Result<()> {
        let fail = |reason: &str| Err(Error::InfeasibleParams(reason.to_owned()));
        if self.year_min > self.year_max {
            return fail("year_min exceeds year_max");
        }
        if !(self.mean_citations.is_finite() && self.mean_citations >= 0.0) {
            return fail("mean_citations must be a finite non-negative number");
        }
        if !(self.mean_authors.is_finite() && self.mean_authors >= 0.0) {
            return fail("mean_authors must be a finite non-negative number");
        }
        if self.mean_authors > 0.0 && self.n_authors == 0 && self.n_papers > 0 {
            return fail("papers need authors but n_authors is 0");
        }
        if self.mean_authors > self.n_authors as f64 && self.n_papers > 0 {
            return fail("mean_authors exceeds n_authors");
        }
        Ok(())
    }
}

/// Generates a fully-dated corpus. Every citation points from a paper to one
/// that is no newer and earlier in generation order, so no edge violates the
/// publication-order assumption.
pub fn generate_synthetic(params: &SynthParams, seed: u64) -> Result<AcademicGraph> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (ymin, ymax) = (params.year_min, params.year_max);
    let span = (ymax - ymin) as usize + 1;
    let window = YearRange::new(
        ymin.min(YearRange::default().min),
        ymax.max(YearRange::default().max),
    )?;
    let mut b = GraphBuilder::new(window);

    let width = params.n_papers.max(1).to_string().len();
    let mut years: Vec<i32> = (0..params.n_papers)
        .map(|_| rng.random_range(ymin..=ymax))
        .collect();
    years.sort_unstable();
    let ids: Vec<String> = (0..params.n_papers)
        .map(|i| format!("p{i:0width$}"))
        .collect();
    for (id, &y) in ids.iter().zip(&years) {
        b.add_paper(id, Some(y));
    }

    // Papers are in (year, index) order, so position doubles as index here.
    let mut by_year: Vec<Vec<usize>> = vec![Vec::new(); span];
    for (p, &y) in years.iter().enumerate() {
        by_year[(y - ymin) as usize].push(p);
    }
    if params.mean_citations > 0.0 {
        let count = Poisson::new(params.mean_citations).expect("validated mean");
        let gap = Geometric::new(GAP_P).expect("valid probability");
        for p in 1..params.n_papers {
            let n: f64 = count.sample(&mut rng);
            for _ in 0..n as usize {
                let g = gap.sample(&mut rng).min(span as u64) as i32;
                let ty = (years[p] - g).max(ymin);
                let bucket = &by_year[(ty - ymin) as usize];
                let earlier = &bucket[..bucket.partition_point(|&q| q < p)];
                let target = match earlier.choose(&mut rng) {
                    Some(&q) => q,
                    None => rng.random_range(0..p),
                };
                b.add_citation(&ids[target], &ids[p]);
            }
        }
    }

    if params.mean_authors > 0.0 && params.n_authors > 0 {
        let careers: Vec<(i32, i32)> = (0..params.n_authors)
            .map(|_| {
                let start = rng.random_range(ymin - 3..=ymax);
                (start, start + rng.random_range(1..MAX_CAREER))
            })
            .collect();
        let mut active: Vec<Vec<usize>> = vec![Vec::new(); span];
        for (a, &(s, e)) in careers.iter().enumerate() {
            for y in s.max(ymin)..=e.min(ymax) {
                active[(y - ymin) as usize].push(a);
            }
        }
        let extra = Poisson::new((params.mean_authors - 1.0).max(1e-9)).expect("positive mean");
        let author_ids: Vec<String> = (0..params.n_authors).map(|a| format!("a{a}")).collect();
        for p in 0..params.n_papers {
            let k = if params.mean_authors < 1.0 {
                usize::from(rng.random_bool(params.mean_authors))
            } else {
                1 + extra.sample(&mut rng) as usize
            }
            .min(params.n_authors);
            if k == 0 {
                continue;
            }
            let now = &active[(years[p] - ymin) as usize];
            let lead = match now.choose(&mut rng) {
                Some(&a) => a,
                None => rng.random_range(0..params.n_authors),
            };
            let mut chosen = vec![lead];
            let group_lo = lead / GROUP_SIZE * GROUP_SIZE;
            let group_hi = (group_lo + GROUP_SIZE).min(params.n_authors);
            let mut attempts = 0;
            while chosen.len() < k && attempts < 16 * k {
                attempts += 1;
                let a = if rng.random_bool(IN_GROUP_PROB) {
                    let peers: Vec<usize> = (group_lo..group_hi)
                        .filter(|&a| careers[a].0 <= years[p] && years[p] <= careers[a].1)
                        .collect();
                    match peers.choose(&mut rng) {
                        Some(&a) => a,
                        None => rng.random_range(group_lo..group_hi),
                    }
                } else if let Some(&a) = now.choose(&mut rng) {
                    a
                } else {
                    rng.random_range(0..params.n_authors)
                };
                if !chosen.contains(&a) {
                    chosen.push(a);
                }
            }
            for a in chosen {
                b.add_authorship(&author_ids[a], &ids[p]);
            }
        }
    }
    Ok(b.build().0)
}
