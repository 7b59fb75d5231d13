//! TSV ingestion, preprocessing and graph export.
//!
//! Formats (UTF-8, LF, `#` comments and blank lines skipped):
//!
//! * papers: `paper_id<TAB>year`, year empty when missing
//! * citations: `cited_id<TAB>citing_id`
//! * authorships: `author_id<TAB>paper_id`

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AcademicGraph, BuildReport, GraphBuilder, YearRange};

#[derive(Debug, Clone, Default)]
pub struct LoadConfig {
    pub window: YearRange,
}

/// Input locations. Citations and authorships are optional; an absent source
/// means the relation is empty.
#[derive(Debug, Clone)]
pub struct GraphSources {
    pub papers: PathBuf,
    pub citations: Option<PathBuf>,
    pub authorships: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadReport {
    pub papers: usize,
    pub missing_years: usize,
    pub authors: usize,
    pub citations: usize,
    pub authorships: usize,
    pub out_of_window: usize,
    #[serde(flatten)]
    pub build: BuildReport,
}

impl LoadReport {
    pub fn to_key_values(&self) -> String {
        format!(
            "papers={}\nmissing_years={}\nauthors={}\ncitations={}\nauthorships={}\n\
             out_of_window={}\ndangling={}\nduplicate_citations={}\n\
             duplicate_authorships={}\nself_citations={}\n",
            self.papers,
            self.missing_years,
            self.authors,
            self.citations,
            self.authorships,
            self.out_of_window,
            self.build.dangling,
            self.build.duplicate_citations,
            self.build.duplicate_authorships,
            self.build.self_citations,
        )
    }
}

impl fmt::Display for LoadReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "loaded papers={} missing_years={} authors={} citations={} authorships={} \
             out_of_window={} dangling={} duplicate_citations={} duplicate_authorships={} \
             self_citations={}",
            self.papers,
            self.missing_years,
            self.authors,
            self.citations,
            self.authorships,
            self.out_of_window,
            self.build.dangling,
            self.build.duplicate_citations,
            self.build.duplicate_authorships,
            self.build.self_citations,
        )
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Yields `(line_number, fields)` for every data line.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split('\t').collect()))
        }
    })
}

fn malformed(path: &Path, line: usize, reason: impl Into<String>) -> Error {
    Error::Malformed {
        path: path.to_owned(),
        line,
        reason: reason.into(),
    }
}

fn pair<'a>(path: &Path, line: usize, fields: &[&'a str]) -> Result<(&'a str, &'a str)> {
    match fields {
        [a, b] if !a.is_empty() && !b.is_empty() => Ok((a, b)),
        [_, _] => Err(malformed(path, line, "empty identifier")),
        _ => Err(malformed(
            path,
            line,
            format!("expected 2 tab-separated fields, found {}", fields.len()),
        )),
    }
}

pub fn load_graph(
    sources: &GraphSources,
    config: &LoadConfig,
) -> Result<(AcademicGraph, LoadReport)> {
    let mut b = GraphBuilder::new(config.window);
    let mut out_of_window = 0;

    let papers = read_text(&sources.papers)?;
    for (line, fields) in records(&papers) {
        let (id, year) = match fields.as_slice() {
            [id] => (*id, ""),
            [id, year] => (*id, *year),
            _ => {
                return Err(malformed(
                    &sources.papers,
                    line,
                    format!("expected 2 tab-separated fields, found {}", fields.len()),
                ))
            }
        };
        if id.is_empty() {
            return Err(malformed(&sources.papers, line, "empty paper id"));
        }
        let year = match year.trim() {
            "" => None,
            y => {
                let y: i32 = y
                    .parse()
                    .map_err(|_| malformed(&sources.papers, line, format!("bad year {y:?}")))?;
                if !config.window.contains(y) {
                    out_of_window += 1;
                    continue;
                }
                Some(y)
            }
        };
        if !b.add_paper(id, year) {
            return Err(malformed(
                &sources.papers,
                line,
                format!("duplicate paper id {id:?}"),
            ));
        }
    }

    if let Some(path) = &sources.citations {
        let text = read_text(path)?;
        for (line, fields) in records(&text) {
            let (cited, citing) = pair(path, line, &fields)?;
            b.add_citation(cited, citing);
        }
    }
    if let Some(path) = &sources.authorships {
        let text = read_text(path)?;
        for (line, fields) in records(&text) {
            let (author, paper) = pair(path, line, &fields)?;
            b.add_authorship(author, paper);
        }
    }

    let (graph, build) = b.build();
    let report = LoadReport {
        papers: graph.num_papers(),
        missing_years: graph.num_papers() - graph.known_papers().count(),
        authors: graph.num_authors(),
        citations: graph.num_citations(),
        authorships: graph.num_authorships(),
        out_of_window,
        build,
    };
    Ok((graph, report))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PreprocessOptions {
    /// Drop papers without a year and every edge touching them.
    pub strip_missing: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreprocessReport {
    /// Citation edges with both years known and Y(cited) > Y(citing).
    pub violations: usize,
    pub stripped_papers: usize,
    pub stripped_citations: usize,
    pub stripped_authorships: usize,
}

impl PreprocessReport {
    pub fn to_key_values(&self) -> String {
        format!(
            "violations={}\nstripped_papers={}\nstripped_citations={}\nstripped_authorships={}\n",
            self.violations,
            self.stripped_papers,
            self.stripped_citations,
            self.stripped_authorships
        )
    }
}

impl fmt::Display for PreprocessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "preprocess violations={} stripped_papers={} stripped_citations={} stripped_authorships={}",
            self.violations,
            self.stripped_papers,
            self.stripped_citations,
            self.stripped_authorships
        )
    }
}

/// Drops citation edges that run backwards in time (equal years are kept)
/// and optionally strips papers without a year.
pub fn preprocess(g: &AcademicGraph, opts: PreprocessOptions) -> (AcademicGraph, PreprocessReport) {
    let violates =
        |t: usize, f: usize| matches!((g.year(t), g.year(f)), (Some(yt), Some(yf)) if yt > yf);
    let keep_paper = |p: usize| !opts.strip_missing || g.year(p).is_some();

    let mut report = PreprocessReport::default();
    for &(t, f) in g.citations() {
        if !keep_paper(t) || !keep_paper(f) {
            report.stripped_citations += 1;
        } else if violates(t, f) {
            report.violations += 1;
        }
    }
    if opts.strip_missing {
        report.stripped_papers = (0..g.num_papers()).filter(|&p| !keep_paper(p)).count();
        report.stripped_authorships = g
            .authorships()
            .iter()
            .filter(|&&(_, p)| !keep_paper(p))
            .count();
    }
    let cleaned = g.filtered(keep_paper, |t, f| !violates(t, f));
    (cleaned, report)
}

pub fn write_papers<W: Write>(g: &AcademicGraph, mut w: W) -> io::Result<()> {
    for p in 0..g.num_papers() {
        match g.year(p) {
            Some(y) => writeln!(w, "{}\t{}", g.paper_id(p), y)?,
            None => writeln!(w, "{}\t", g.paper_id(p))?,
        }
    }
    Ok(())
}

pub fn write_citations<W: Write>(g: &AcademicGraph, mut w: W) -> io::Result<()> {
    for &(t, f) in g.citations() {
        writeln!(w, "{}\t{}", g.paper_id(t), g.paper_id(f))?;
    }
    Ok(())
}

pub fn write_authorships<W: Write>(g: &AcademicGraph, mut w: W) -> io::Result<()> {
    for &(a, p) in g.authorships() {
        writeln!(w, "{}\t{}", g.author_id(a), g.paper_id(p))?;
    }
    Ok(())
}

/// Writes `papers.tsv`, `citations.tsv` and `authorships.tsv` into `dir`.
pub fn write_graph_dir(g: &AcademicGraph, dir: &Path) -> Result<GraphSources> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let sources = GraphSources {
        papers: dir.join("papers.tsv"),
        citations: Some(dir.join("citations.tsv")),
        authorships: Some(dir.join("authorships.tsv")),
    };
    let create = |path: &Path| {
        fs::File::create(path)
            .map(io::BufWriter::new)
            .map_err(|e| Error::io(path, e))
    };
    let flush = |path: &Path, r: io::Result<()>| r.map_err(|e| Error::io(path, e));

    flush(&sources.papers, write_papers(g, create(&sources.papers)?))?;
    let cit = sources.citations.as_deref().unwrap();
    flush(cit, write_citations(g, create(cit)?))?;
    let auth = sources.authorships.as_deref().unwrap();
    flush(auth, write_authorships(g, create(auth)?))?;
    Ok(sources)
}
