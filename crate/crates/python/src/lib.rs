//! Python bindings: graph loading, the nine estimators, K-fold evaluation and
//! the expected-coverage model.

use std::path::PathBuf;

use pyo3::exceptions::{PyIOError, PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use pubyear::eval::{self, Projection, SynthParams};
use pubyear::ingest::{self, GraphSources, LoadConfig, PreprocessOptions};
use pubyear::window::bound_token;
use pubyear::{AcademicGraph, Algorithm, Error, Gamma, MaskedGraph, Network, YearRange};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        Error::UnknownPaper(_) | Error::HideUnknown(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn resolve(network: &str, algo: &str) -> PyResult<Algorithm> {
    let net: Network = network.parse().map_err(py_err)?;
    Algorithm::from_parts(net, algo).map_err(py_err)
}

fn gamma(g: f64) -> PyResult<Gamma> {
    Gamma::new(g).ok_or_else(|| PyValueError::new_err("gamma must be a non-negative number"))
}

fn projection(name: &str) -> PyResult<Projection> {
    Projection::ALL
        .into_iter()
        .find(|p| p.as_str() == name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown projection {name:?}")))
}

/// Immutable academic graph: papers with optional years, citations and
/// authorships.
#[pyclass(name = "Graph", module = "pubyear_py", frozen)]
struct PyGraph {
    inner: AcademicGraph,
}

#[pymethods]
impl PyGraph {
    /// Load TSV files (papers required; citations and authorships optional).
    #[staticmethod]
    #[pyo3(signature = (papers, citations=None, authorships=None, year_min=None, year_max=None))]
    fn load(
        papers: PathBuf,
        citations: Option<PathBuf>,
        authorships: Option<PathBuf>,
        year_min: Option<i32>,
        year_max: Option<i32>,
    ) -> PyResult<Self> {
        let d = YearRange::default();
        let window =
            YearRange::new(year_min.unwrap_or(d.min), year_max.unwrap_or(d.max)).map_err(py_err)?;
        let sources = GraphSources {
            papers,
            citations,
            authorships,
        };
        let (inner, _) = ingest::load_graph(&sources, &LoadConfig { window }).map_err(py_err)?;
        Ok(PyGraph { inner })
    }

    /// Built-in example: citation-example, authorship-example, line-1 .. line-7.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        pubyear::fixtures::by_name(name)
            .map(|inner| PyGraph { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown fixture {name:?}")))
    }

    #[staticmethod]
    #[pyo3(signature = (seed=0, n_papers=None, n_authors=None, mean_citations=None, mean_authors=None))]
    fn synthetic(
        seed: u64,
        n_papers: Option<usize>,
        n_authors: Option<usize>,
        mean_citations: Option<f64>,
        mean_authors: Option<f64>,
    ) -> PyResult<Self> {
        let d = SynthParams::default();
        let params = SynthParams {
            n_papers: n_papers.unwrap_or(d.n_papers),
            n_authors: n_authors.unwrap_or(d.n_authors),
            mean_citations: mean_citations.unwrap_or(d.mean_citations),
            mean_authors: mean_authors.unwrap_or(d.mean_authors),
            ..d
        };
        let inner = eval::generate_synthetic(&params, seed).map_err(py_err)?;
        Ok(PyGraph { inner })
    }

    #[getter]
    fn num_papers(&self) -> usize {
        self.inner.num_papers()
    }

    #[getter]
    fn num_authors(&self) -> usize {
        self.inner.num_authors()
    }

    #[getter]
    fn num_citations(&self) -> usize {
        self.inner.num_citations()
    }

    #[getter]
    fn num_authorships(&self) -> usize {
        self.inner.num_authorships()
    }

    fn paper_ids(&self) -> Vec<String> {
        (0..self.inner.num_papers())
            .map(|p| self.inner.paper_id(p).to_owned())
            .collect()
    }

    /// Year of a paper, `None` when missing. Raises KeyError for unknown ids.
    fn year(&self, paper_id: &str) -> PyResult<Option<i32>> {
        let p = self
            .inner
            .paper_index(paper_id)
            .ok_or_else(|| py_err(Error::UnknownPaper(paper_id.to_owned())))?;
        Ok(self.inner.year(p))
    }

    /// Returns the cleaned graph and the number of dropped violating edges.
    #[pyo3(signature = (strip_missing=false))]
    fn preprocess(&self, strip_missing: bool) -> (PyGraph, usize) {
        let (inner, report) = ingest::preprocess(&self.inner, PreprocessOptions { strip_missing });
        (PyGraph { inner }, report.violations)
    }

    /// Write papers.tsv, citations.tsv and authorships.tsv into `directory`.
    fn write(&self, directory: PathBuf) -> PyResult<()> {
        ingest::write_graph_dir(&self.inner, &directory).map_err(py_err)?;
        Ok(())
    }

    /// Component sizes of the citation, coauthor or combined projection.
    #[pyo3(signature = (projection_name="combined"))]
    fn component_sizes(&self, projection_name: &str) -> PyResult<Vec<usize>> {
        Ok(projection(projection_name)?
            .partition(&self.inner)
            .sizes()
            .to_vec())
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(papers={}, authors={}, citations={}, authorships={})",
            self.inner.num_papers(),
            self.inner.num_authors(),
            self.inner.num_citations(),
            self.inner.num_authorships()
        )
    }
}

/// Estimate missing years. Papers listed in `hidden` are treated as missing
/// too. Returns `{paper_id: (year or None, lower, upper, window_type)}` with
/// open bounds as `None`.
#[pyfunction]
#[pyo3(signature = (graph, network, algo, gamma=1.0, hidden=None))]
fn estimate<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    network: &str,
    algo: &str,
    gamma: f64,
    hidden: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyDict>> {
    let algorithm = resolve(network, algo)?;
    let g = &graph.inner;
    let masked = match &hidden {
        Some(ids) => {
            MaskedGraph::with_hidden_ids(g, ids.iter().map(String::as_str)).map_err(py_err)?
        }
        None => MaskedGraph::unmasked(g),
    };
    let est = pubyear::estimate(&masked, algorithm, self::gamma(gamma)?);
    let out = PyDict::new(py);
    for (p, e) in est.iter() {
        let kind = e.window.kind().as_str();
        out.set_item(
            g.paper_id(p),
            (
                e.outcome.year(),
                e.window.lower().finite(),
                e.window.upper().finite(),
                kind,
            ),
        )?;
    }
    Ok(out)
}

/// `(fold, n_missing, n_covered, mae, rmse)`
type FoldRow = (usize, usize, usize, Option<f64>, Option<f64>);

/// K-fold evaluation. Returns a dict with aggregate `coverage`, `mae`,
/// `rmse`, a per-fold list and the CSV text.
#[pyfunction]
#[pyo3(signature = (graph, network, algo, k=5, seed=0, gamma=1.0, jobs=1))]
#[allow(clippy::too_many_arguments)]
fn evaluate<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    network: &str,
    algo: &str,
    k: usize,
    seed: u64,
    gamma: f64,
    jobs: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let algorithm = resolve(network, algo)?;
    let g = &graph.inner;
    let gm = self::gamma(gamma)?;
    let report = py
        .detach(|| eval::evaluate(g, algorithm, k, seed, gm, jobs.max(1)))
        .map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("algo", report.algorithm.id())?;
    out.set_item("network", report.network.as_str())?;
    out.set_item("eta", report.eta)?;
    out.set_item("coverage", report.coverage)?;
    out.set_item("mae", report.mae)?;
    out.set_item("rmse", report.rmse)?;
    let folds: Vec<FoldRow> = report
        .folds
        .iter()
        .map(|f| (f.fold, f.n_missing, f.n_covered, f.mae, f.rmse))
        .collect();
    out.set_item("folds", folds)?;
    out.set_item("csv", report.to_csv())?;
    Ok(out)
}

/// Expected coverage under independent masking with ratio `eta`.
#[pyfunction]
#[pyo3(signature = (graph, eta, projection_name="combined"))]
fn expected_coverage(graph: &PyGraph, eta: f64, projection_name: &str) -> PyResult<f64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(PyValueError::new_err(
            "eta must lie strictly between 0 and 1",
        ));
    }
    let parts = projection(projection_name)?.partition(&graph.inner);
    Ok(eval::expected_coverage(&parts, eta))
}

/// `(network, algo)` pairs accepted by `estimate` and `evaluate`.
#[pyfunction]
fn algorithms() -> Vec<(&'static str, &'static str)> {
    Algorithm::ALL
        .iter()
        .map(|a| (a.network().as_str(), a.id()))
        .collect()
}

/// Text form of a window bound as used in estimate TSVs.
#[pyfunction]
#[pyo3(signature = (year, lower_side))]
fn format_bound(year: Option<i32>, lower_side: bool) -> String {
    bound_token(year.into(), lower_side)
}

#[pymodule]
fn pubyear_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(estimate, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(expected_coverage, m)?)?;
    m.add_function(wrap_pyfunction!(algorithms, m)?)?;
    m.add_function(wrap_pyfunction!(format_bound, m)?)?;
    Ok(())
}
