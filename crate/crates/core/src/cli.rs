//! Command-line front end. `main_with_args` returns the process exit code:
//! 0 on success, 1 on runtime failure, 2 on usage errors (including missing
//! input files).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::estimate::{estimate, Algorithm, Gamma, Network};
use crate::eval::{self, EvalReport, Projection, SynthParams};
use crate::fixtures;
use crate::graph::{AcademicGraph, MaskedGraph, YearRange};
use crate::ingest::{self, GraphSources, LoadConfig, PreprocessOptions};

#[derive(Debug, Parser)]
#[command(
    name = "pubyear",
    version,
    about = "Estimate missing publication years"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Drop time-inconsistent citations and write cleaned TSVs plus a report.
    Preprocess {
        #[command(flatten)]
        input: InputArgs,
        /// Also drop papers without a year, with their edges.
        #[arg(long)]
        strip_missing: bool,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate years of the papers that have none.
    Estimate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        /// Output TSV; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// K-fold evaluation; prints CSV.
    Evaluate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        /// Fold counts; several may be given, e.g. 8,5,4,3,2.
        #[arg(long, value_delimiter = ',', default_value = "5")]
        k: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads across folds.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Output CSV; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a JSON summary of every report.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Expected coverage under independent masking for each projection.
    CoverageModel {
        #[command(flatten)]
        input: InputArgs,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0.125,0.2,0.25,0.333,0.5"
        )]
        eta: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic, fully dated corpus as TSVs.
    Synth {
        #[arg(long, default_value_t = SynthParams::default().n_papers)]
        n_papers: usize,
        #[arg(long, default_value_t = SynthParams::default().n_authors)]
        n_authors: usize,
        #[arg(long, default_value_t = SynthParams::default().mean_citations)]
        mean_citations: f64,
        #[arg(long, default_value_t = SynthParams::default().mean_authors)]
        mean_authors: f64,
        #[arg(long, default_value_t = SynthParams::default().year_min)]
        first_year: i32,
        #[arg(long, default_value_t = SynthParams::default().year_max)]
        last_year: i32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Papers TSV: `id<TAB>year`, year empty when missing.
    #[arg(long, required_unless_present = "fixture")]
    papers: Option<PathBuf>,
    /// Citations TSV: `cited<TAB>citing`.
    #[arg(long)]
    citations: Option<PathBuf>,
    /// Authorships TSV: `author<TAB>paper`.
    #[arg(long)]
    authorships: Option<PathBuf>,
    /// Built-in example graph instead of files:
    /// citation-example, authorship-example, line-1 .. line-7.
    #[arg(long, conflicts_with_all = ["papers", "citations", "authorships"])]
    fixture: Option<String>,
    /// Earliest accepted year.
    #[arg(long, default_value_t = YearRange::default().min)]
    year_min: i32,
    /// Latest accepted year.
    #[arg(long, default_value_t = YearRange::default().max)]
    year_max: i32,
}

#[derive(Debug, Args)]
struct AlgoArgs {
    /// citation, authorship or hetero.
    #[arg(long)]
    network: String,
    /// citation: ss|as|aa; authorship: ba|iter|adviter; hetero: ssba|asiter|adviter.
    #[arg(long)]
    algo: String,
    /// Coauthor-pair weighting exponent (adviter only).
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
}

/// Fully resolved settings of a run, echoed to stderr as one JSON line.
#[derive(Debug, Default, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub network: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algo: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub k: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub eta: Vec<f64>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub papers: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citations: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub authorships: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub year_min: i32,
    pub year_max: i32,
}

impl RunConfig {
    fn with_input(command: &'static str, input: &InputArgs) -> Self {
        RunConfig {
            command,
            papers: input.papers.clone(),
            citations: input.citations.clone(),
            authorships: input.authorships.clone(),
            fixture: input.fixture.clone(),
            year_min: input.year_min,
            year_max: input.year_max,
            ..Default::default()
        }
    }

    fn with_algo(mut self, a: &AlgoArgs) -> Self {
        self.network = Some(a.network.clone());
        self.algo = Some(a.algo.clone());
        self.gamma = Some(a.gamma);
        self
    }

    fn announce(&self) {
        let json = serde_json::to_string(self).unwrap_or_default();
        eprintln!("run-config {json}");
    }
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Preprocess {
            input,
            strip_missing,
            out,
        } => {
            let mut cfg = RunConfig::with_input("preprocess", &input);
            cfg.output = Some(out.clone());
            cfg.announce();
            cmd_preprocess(&input, strip_missing, &out)
        }
        Command::Estimate { input, algo, out } => {
            let mut cfg = RunConfig::with_input("estimate", &input).with_algo(&algo);
            cfg.output = out.clone();
            cfg.announce();
            cmd_estimate(&input, &algo, out.as_deref())
        }
        Command::Evaluate {
            input,
            algo,
            k,
            seed,
            jobs,
            out,
            summary,
        } => {
            let mut cfg = RunConfig::with_input("evaluate", &input).with_algo(&algo);
            cfg.k = k.clone();
            cfg.seed = seed;
            cfg.jobs = Some(jobs);
            cfg.output = out.clone();
            cfg.announce();
            cmd_evaluate(
                &input,
                &algo,
                &k,
                seed,
                jobs,
                out.as_deref(),
                summary.as_deref(),
            )
        }
        Command::CoverageModel { input, eta, out } => {
            let mut cfg = RunConfig::with_input("coverage-model", &input);
            cfg.eta = eta.clone();
            cfg.output = out.clone();
            cfg.announce();
            cmd_coverage_model(&input, &eta, out.as_deref())
        }
        Command::Synth {
            n_papers,
            n_authors,
            mean_citations,
            mean_authors,
            first_year,
            last_year,
            seed,
            out,
        } => {
            let params = SynthParams {
                n_papers,
                n_authors,
                mean_citations,
                mean_authors,
                year_min: first_year,
                year_max: last_year,
            };
            let cfg = RunConfig {
                command: "synth",
                seed,
                output: Some(out.clone()),
                year_min: first_year,
                year_max: last_year,
                ..Default::default()
            };
            cfg.announce();
            eprintln!(
                "synth-params {}",
                serde_json::to_string(&params).unwrap_or_default()
            );
            let g = eval::generate_synthetic(&params, seed)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            write_dir(&g, &out)
        }
    }
}

fn load_input(input: &InputArgs) -> CliResult<AcademicGraph> {
    let window = match YearRange::new(input.year_min, input.year_max) {
        Ok(w) => w,
        Err(e) => return usage(e.to_string()),
    };
    if let Some(name) = &input.fixture {
        return match fixtures::by_name(name) {
            Some(g) => Ok(g),
            None => usage(format!("unknown fixture {name:?}")),
        };
    }
    let papers = input
        .papers
        .clone()
        .expect("clap enforces papers or fixture");
    for path in [
        Some(&papers),
        input.citations.as_ref(),
        input.authorships.as_ref(),
    ]
    .into_iter()
    .flatten()
    {
        if !path.is_file() {
            return usage(format!("input file not found: {}", path.display()));
        }
    }
    let sources = GraphSources {
        papers,
        citations: input.citations.clone(),
        authorships: input.authorships.clone(),
    };
    let (g, report) =
        ingest::load_graph(&sources, &LoadConfig { window }).map_err(anyhow::Error::from)?;
    eprintln!("{report}");
    Ok(g)
}

fn resolve_algo(a: &AlgoArgs) -> CliResult<(Algorithm, Gamma)> {
    let network: Network = match a.network.parse() {
        Ok(n) => n,
        Err(_) => return usage(format!("unknown network {:?}", a.network)),
    };
    let algo = match Algorithm::from_parts(network, &a.algo) {
        Ok(x) => x,
        Err(e) => return usage(e.to_string()),
    };
    let Some(gamma) = Gamma::new(a.gamma) else {
        return usage(format!(
            "gamma must be a non-negative number, got {}",
            a.gamma
        ));
    };
    Ok((algo, gamma))
}

fn open_output(out: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn write_dir(g: &AcademicGraph, dir: &Path) -> CliResult {
    ingest::write_graph_dir(g, dir).map_err(anyhow::Error::from)?;
    Ok(())
}

fn cmd_preprocess(input: &InputArgs, strip_missing: bool, out: &Path) -> CliResult {
    let g = load_input(input)?;
    let (clean, report) = ingest::preprocess(&g, PreprocessOptions { strip_missing });
    write_dir(&clean, out)?;
    let report_path = out.join("report.txt");
    fs::write(&report_path, report.to_key_values())
        .with_context(|| format!("writing {}", report_path.display()))?;
    print!("{}", report.to_key_values());
    Ok(())
}

fn cmd_estimate(input: &InputArgs, a: &AlgoArgs, out: Option<&Path>) -> CliResult {
    let (algo, gamma) = resolve_algo(a)?;
    let g = load_input(input)?;
    let est = estimate(&MaskedGraph::unmasked(&g), algo, gamma);
    let d = est.diagnostics;
    eprintln!(
        "diagnostics missing={} covered={} swapped_windows={} clamped_estimates={} rounds={} hit_round_cap={}",
        est.len(),
        est.num_covered(),
        d.swapped_windows,
        d.clamped_estimates,
        d.rounds,
        d.hit_round_cap
    );
    let mut w = open_output(out)?;
    let write = |w: &mut dyn Write| -> io::Result<()> {
        writeln!(w, "#paper_id\testimate\tlower\tupper\twindow_type")?;
        est.write_tsv(&g, &mut *w)?;
        w.flush()
    };
    write(&mut w).context("writing estimates")?;
    Ok(())
}

fn cmd_evaluate(
    input: &InputArgs,
    a: &AlgoArgs,
    ks: &[usize],
    seed: u64,
    jobs: usize,
    out: Option<&Path>,
    summary: Option<&Path>,
) -> CliResult {
    let (algo, gamma) = resolve_algo(a)?;
    if jobs == 0 {
        return usage("--jobs must be at least 1");
    }
    let g = load_input(input)?;
    let known = g.known_papers().count();
    if let Some(&bad) = ks.iter().find(|&&k| k < 2 || k > known) {
        return usage(format!(
            "K={bad} out of range: need 2 <= K <= {known} (papers with a known year)"
        ));
    }
    let mut reports: Vec<EvalReport> = Vec::with_capacity(ks.len());
    for &k in ks {
        reports.push(eval::evaluate(&g, algo, k, seed, gamma, jobs).map_err(anyhow::Error::from)?);
    }
    let mut csv = String::from(EvalReport::CSV_HEADER);
    csv.push('\n');
    for r in &reports {
        csv.push_str(&r.csv_rows());
    }
    let mut w = open_output(out)?;
    w.write_all(csv.as_bytes())
        .and_then(|_| w.flush())
        .context("writing report")?;
    if let Some(path) = summary {
        let json = serde_json::to_string_pretty(&reports).context("serialising summary")?;
        fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_coverage_model(input: &InputArgs, etas: &[f64], out: Option<&Path>) -> CliResult {
    if let Some(bad) = etas.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
        return usage(format!("eta must lie strictly between 0 and 1, got {bad}"));
    }
    let g = load_input(input)?;
    let mut w = open_output(out)?;
    let mut text = String::from("projection,eta,components,papers,expected_coverage\n");
    for proj in Projection::ALL {
        let parts = proj.partition(&g);
        for &eta in etas {
            text.push_str(&format!(
                "{},{eta},{},{},{:.6}\n",
                proj.as_str(),
                parts.num_components(),
                parts.total(),
                eval::expected_coverage(&parts, eta)
            ));
        }
    }
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .context("writing coverage table")?;
    Ok(())
}
