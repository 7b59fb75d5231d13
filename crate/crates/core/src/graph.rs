//! Papers, authors and the two relations between them.
//!
//! Papers and authors are interned into dense indices at build time. Every
//! estimator works on those indices; string ids only matter at the I/O edges.
//! Citation edges are stored as `(cited, citing)` pairs, i.e. `(t, f)` where
//! `f` cites `t`, and are kept sorted by `(t id, f id)`.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inclusive range of calendar years accepted on input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct YearRange {
    pub min: i32,
    pub max: i32,
}

impl YearRange {
    pub fn new(min: i32, max: i32) -> Result<Self> {
        if min > max {
            return Err(Error::InvalidYearRange { min, max });
        }
        Ok(YearRange { min, max })
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.min..=self.max).contains(&year)
    }
}

impl Default for YearRange {
    fn default() -> Self {
        YearRange {
            min: 1900,
            max: 2013,
        }
    }
}

/// Compressed adjacency rows.
#[derive(Debug, Clone, Default)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Csr {
    fn from_pairs(n: usize, pairs: impl Iterator<Item = (usize, usize)> + Clone) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for (src, _) in pairs.clone() {
            offsets[src + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; offsets[n]];
        for (src, dst) in pairs {
            targets[fill[src]] = dst;
            fill[src] += 1;
        }
        Csr { offsets, targets }
    }

    fn row(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// Counters produced while assembling a graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildReport {
    pub duplicate_citations: usize,
    pub duplicate_authorships: usize,
    pub self_citations: usize,
    /// Papers created because an edge referenced an id with no paper record.
    pub dangling: usize,
}

/// Incremental constructor for [`AcademicGraph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    paper_ids: Vec<String>,
    paper_index: HashMap<String, usize>,
    years: Vec<Option<i32>>,
    author_ids: Vec<String>,
    author_index: HashMap<String, usize>,
    citations: HashSet<(usize, usize)>,
    authorships: HashSet<(usize, usize)>,
    report: BuildReport,
    window: YearRange,
}

impl GraphBuilder {
    pub fn new(window: YearRange) -> Self {
        GraphBuilder {
            window,
            ..Default::default()
        }
    }

    pub fn has_paper(&self, id: &str) -> bool {
        self.paper_index.contains_key(id)
    }

    /// Registers a paper record. Returns `false` if the id was already present.
    pub fn add_paper(&mut self, id: &str, year: Option<i32>) -> bool {
        if self.paper_index.contains_key(id) {
            return false;
        }
        self.insert_paper(id, year);
        true
    }

    fn insert_paper(&mut self, id: &str, year: Option<i32>) -> usize {
        let ix = self.paper_ids.len();
        self.paper_ids.push(id.to_owned());
        self.paper_index.insert(id.to_owned(), ix);
        self.years.push(year);
        ix
    }

    fn paper_or_dangling(&mut self, id: &str) -> usize {
        match self.paper_index.get(id) {
            Some(&ix) => ix,
            None => {
                self.report.dangling += 1;
                self.insert_paper(id, None)
            }
        }
    }

    fn author(&mut self, id: &str) -> usize {
        if let Some(&ix) = self.author_index.get(id) {
            return ix;
        }
        let ix = self.author_ids.len();
        self.author_ids.push(id.to_owned());
        self.author_index.insert(id.to_owned(), ix);
        ix
    }

    /// Adds the edge "`citing` cites `cited`".
    pub fn add_citation(&mut self, cited: &str, citing: &str) {
        if cited == citing {
            self.report.self_citations += 1;
            return;
        }
        let t = self.paper_or_dangling(cited);
        let f = self.paper_or_dangling(citing);
        if !self.citations.insert((t, f)) {
            self.report.duplicate_citations += 1;
        }
    }

    pub fn add_authorship(&mut self, author: &str, paper: &str) {
        let a = self.author(author);
        let p = self.paper_or_dangling(paper);
        if !self.authorships.insert((a, p)) {
            self.report.duplicate_authorships += 1;
        }
    }

    pub fn build(self) -> (AcademicGraph, BuildReport) {
        let GraphBuilder {
            paper_ids,
            paper_index,
            years,
            author_ids,
            author_index,
            citations,
            authorships,
            report,
            window,
        } = self;
        let mut citations: Vec<(usize, usize)> = citations.into_iter().collect();
        citations.sort_by(|a, b| {
            (&paper_ids[a.0], &paper_ids[a.1]).cmp(&(&paper_ids[b.0], &paper_ids[b.1]))
        });
        let mut authorships: Vec<(usize, usize)> = authorships.into_iter().collect();
        authorships.sort_by(|a, b| {
            (&author_ids[a.0], &paper_ids[a.1]).cmp(&(&author_ids[b.0], &paper_ids[b.1]))
        });
        let graph = AcademicGraph::from_parts(
            paper_ids,
            paper_index,
            years,
            author_ids,
            author_index,
            citations,
            authorships,
            window,
        );
        (graph, report)
    }
}

/// Papers with optional years, citation edges and author-paper edges.
///
/// Immutable once built; adjacency views are precomputed.
#[derive(Debug, Clone)]
pub struct AcademicGraph {
    paper_ids: Vec<String>,
    paper_index: HashMap<String, usize>,
    years: Vec<Option<i32>>,
    author_ids: Vec<String>,
    author_index: HashMap<String, usize>,
    citations: Vec<(usize, usize)>,
    authorships: Vec<(usize, usize)>,
    cited_by: Csr,
    cites: Csr,
    papers_of: Csr,
    authors_of: Csr,
    window: YearRange,
}

impl AcademicGraph {
    #[allow(clippy::too_many_arguments)]
    fn from_parts(
        paper_ids: Vec<String>,
        paper_index: HashMap<String, usize>,
        years: Vec<Option<i32>>,
        author_ids: Vec<String>,
        author_index: HashMap<String, usize>,
        citations: Vec<(usize, usize)>,
        authorships: Vec<(usize, usize)>,
        window: YearRange,
    ) -> Self {
        let np = paper_ids.len();
        let na = author_ids.len();
        let cited_by = Csr::from_pairs(np, citations.iter().copied());
        let cites = Csr::from_pairs(np, citations.iter().map(|&(t, f)| (f, t)));
        let papers_of = Csr::from_pairs(na, authorships.iter().copied());
        let authors_of = Csr::from_pairs(np, authorships.iter().map(|&(a, p)| (p, a)));
        AcademicGraph {
            paper_ids,
            paper_index,
            years,
            author_ids,
            author_index,
            citations,
            authorships,
            cited_by,
            cites,
            papers_of,
            authors_of,
            window,
        }
    }

    pub fn num_papers(&self) -> usize {
        self.paper_ids.len()
    }

    pub fn num_authors(&self) -> usize {
        self.author_ids.len()
    }

    pub fn num_citations(&self) -> usize {
        self.citations.len()
    }

    pub fn num_authorships(&self) -> usize {
        self.authorships.len()
    }

    pub fn input_window(&self) -> YearRange {
        self.window
    }

    pub fn paper_id(&self, p: usize) -> &str {
        &self.paper_ids[p]
    }

    pub fn paper_index(&self, id: &str) -> Option<usize> {
        self.paper_index.get(id).copied()
    }

    pub fn author_id(&self, a: usize) -> &str {
        &self.author_ids[a]
    }

    pub fn author_index(&self, id: &str) -> Option<usize> {
        self.author_index.get(id).copied()
    }

    pub fn year(&self, p: usize) -> Option<i32> {
        self.years[p]
    }

    pub fn known_papers(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_papers()).filter(|&p| self.years[p].is_some())
    }

    /// `(cited, citing)` pairs in stable `(t id, f id)` order.
    pub fn citations(&self) -> &[(usize, usize)] {
        &self.citations
    }

    /// `(author, paper)` pairs.
    pub fn authorships(&self) -> &[(usize, usize)] {
        &self.authorships
    }

    /// T(p): papers citing `p`.
    pub fn citers(&self, p: usize) -> &[usize] {
        self.cited_by.row(p)
    }

    /// F(p): papers cited by `p`.
    pub fn references(&self, p: usize) -> &[usize] {
        self.cites.row(p)
    }

    /// P(a)
    pub fn papers_of(&self, a: usize) -> &[usize] {
        self.papers_of.row(a)
    }

    /// A(p)
    pub fn authors_of(&self, p: usize) -> &[usize] {
        self.authors_of.row(p)
    }

    /// Rebuilds a graph keeping only the selected papers and the citation
    /// edges accepted by `keep_citation`. Authors left without papers are
    /// dropped. Paper order is preserved.
    pub(crate) fn filtered(
        &self,
        keep_paper: impl Fn(usize) -> bool,
        keep_citation: impl Fn(usize, usize) -> bool,
    ) -> AcademicGraph {
        let mut b = GraphBuilder::new(self.window);
        for p in 0..self.num_papers() {
            if keep_paper(p) {
                b.add_paper(&self.paper_ids[p], self.years[p]);
            }
        }
        for &(t, f) in &self.citations {
            if keep_paper(t) && keep_paper(f) && keep_citation(t, f) {
                b.add_citation(&self.paper_ids[t], &self.paper_ids[f]);
            }
        }
        for &(a, p) in &self.authorships {
            if keep_paper(p) {
                b.add_authorship(&self.author_ids[a], &self.paper_ids[p]);
            }
        }
        b.build().0
    }
}

/// An [`AcademicGraph`] with some known years hidden.
///
/// Hidden papers behave exactly like papers without a year; the true year is
/// only reachable through [`MaskedGraph::true_year`].
#[derive(Debug, Clone)]
pub struct MaskedGraph<'g> {
    base: &'g AcademicGraph,
    hidden: Vec<bool>,
    num_hidden: usize,
}

impl<'g> MaskedGraph<'g> {
    pub fn unmasked(base: &'g AcademicGraph) -> Self {
        MaskedGraph {
            base,
            hidden: vec![false; base.num_papers()],
            num_hidden: 0,
        }
    }

    /// Hides the years of the given paper indices.
    pub fn with_hidden(
        base: &'g AcademicGraph,
        hidden: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut m = MaskedGraph::unmasked(base);
        for p in hidden {
            if base.year(p).is_none() {
                return Err(Error::HideUnknown(base.paper_id(p).to_owned()));
            }
            if !m.hidden[p] {
                m.hidden[p] = true;
                m.num_hidden += 1;
            }
        }
        Ok(m)
    }

    /// Same as [`MaskedGraph::with_hidden`], addressed by paper id.
    pub fn with_hidden_ids<'a>(
        base: &'g AcademicGraph,
        ids: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self> {
        let idx = ids
            .into_iter()
            .map(|id| {
                base.paper_index(id)
                    .ok_or_else(|| Error::UnknownPaper(id.to_owned()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_hidden(base, idx)
    }

    pub fn base(&self) -> &'g AcademicGraph {
        self.base
    }

    pub fn clear(&mut self) {
        self.hidden.iter_mut().for_each(|h| *h = false);
        self.num_hidden = 0;
    }

    pub fn num_papers(&self) -> usize {
        self.base.num_papers()
    }

    pub fn num_hidden(&self) -> usize {
        self.num_hidden
    }

    pub fn is_hidden(&self, p: usize) -> bool {
        self.hidden[p]
    }

    /// Y(p) as seen by the estimators.
    #[inline]
    pub fn year(&self, p: usize) -> Option<i32> {
        if self.hidden[p] {
            None
        } else {
            self.base.year(p)
        }
    }

    #[inline]
    pub fn is_known(&self, p: usize) -> bool {
        self.year(p).is_some()
    }

    /// Validation-only access to the unmasked year.
    pub fn true_year(&self, p: usize) -> Option<i32> {
        self.base.year(p)
    }

    /// V_P^U: papers without a visible year, in index order.
    pub fn missing_papers(&self) -> Vec<usize> {
        (0..self.num_papers())
            .filter(|&p| !self.is_known(p))
            .collect()
    }

    pub fn hidden_papers(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_papers()).filter(|&p| self.hidden[p])
    }
}
