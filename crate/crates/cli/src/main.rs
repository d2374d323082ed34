//! `ftbfs`: generate graphs, build and verify fault-tolerant BFS structures,
//! check the structural lemmas, build +2 spanners and run scaling sweeps.
//!
//! Standard output carries exactly one JSON document per run and all logs go
//! to standard error. Exit codes: 0 success, 1 a verification or lemma check
//! failed (the report is still printed), 2 usage or input error (nothing is
//! written).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ftbfs_core::analysis::analyze_structure;
use ftbfs_core::builder::{build_ft_mbfs_with, size_bound, structure_stats, Exec, FtStructure};
use ftbfs_core::spanner::build_additive_spanner;
use ftbfs_core::verify::{verify_structure, Sampling};
use ftbfs_core::{gen_graph, parse_graph, serialize_graph, FailureMode, Graph, GraphModel};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "ftbfs", version, about = "Fault-tolerant BFS structures: build, verify, analyze")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen {
        #[arg(long, default_value = "gnp")]
        model: GraphModel,
        #[arg(long)]
        n: usize,
        /// Edge probability (gnp only).
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        directed: bool,
        #[arg(long)]
        output: PathBuf,
    },
    /// Build the structure; writes H and a `<output>.json` sidecar with the assignments.
    Build {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        output: PathBuf,
    },
    /// Check that a subgraph preserves BFS distances under every failure set.
    Verify {
        #[command(flatten)]
        params: Params,
        /// Edge list of the candidate subgraph H.
        #[arg(long)]
        subgraph: PathBuf,
        #[arg(long, default_value = "exhaustive")]
        sampling: Sampling,
    },
    /// Build (or load) a structure and run the structural checks on it.
    Analyze {
        #[command(flatten)]
        params: Params,
        /// Sidecar written by `build`; rebuilt from the graph when omitted.
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// Build a dual-failure +2 additive spanner.
    Spanner {
        #[arg(long)]
        input: PathBuf,
        /// Vertices of degree above ceil(n / sigma) are heavy; `auto` uses ceil(n^(1/4)).
        #[arg(long, default_value = "auto")]
        sigma: Sigma,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Size sweep over generated graphs; writes CSV to --output and JSON to stdout.
    Scale {
        /// Comma-separated ascending vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        trials: u64,
        #[arg(long, default_value = "gnp")]
        model: GraphModel,
        /// Edge probability; defaults to 2 ln n / n per size.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        k: u8,
        #[arg(long, default_value_t = FailureMode::Edge)]
        mode: FailureMode,
        /// Number of sources; sources are vertices 0..sigma.
        #[arg(long, default_value_t = 1)]
        sigma: usize,
        /// Base seed; trial t uses seed + t.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct Params {
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated source vertices.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    sources: Vec<usize>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    k: u8,
    #[arg(long, default_value_t = FailureMode::Edge)]
    mode: FailureMode,
}

#[derive(Clone, Copy)]
enum Sigma {
    Auto,
    Fixed(usize),
}

impl std::str::FromStr for Sigma {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Sigma::Auto),
            _ => s
                .parse()
                .map(Sigma::Fixed)
                .map_err(|_| format!("expected auto or a positive integer, got {s:?}")),
        }
    }
}

/// Error that aborts a run with exit code 2.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

/// What a successful run emits: files to write, then one JSON document.
struct Run {
    files: Vec<(PathBuf, String)>,
    report: serde_json::Value,
    passed: bool,
}

fn read_graph(path: &Path) -> Result<Graph, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> Result<serde_json::Value, Fail> {
    Ok(serde_json::to_value(value)?)
}

fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

fn build(params: &Params, g: &Graph) -> Result<FtStructure, Fail> {
    Ok(build_ft_mbfs_with(g, &params.sources, params.k.into(), params.mode, Exec::Parallel)?)
}

fn run(command: Command) -> Result<Run, Fail> {
    match command {
        Command::Gen { model, n, p, seed, directed, output } => {
            let g = gen_graph(model, n, p, seed, directed)?;
            eprintln!("generated {model:?} graph with {} vertices and {} edges", g.n(), g.m());
            let report = json!({
                "model": model, "n": g.n(), "m": g.m(), "directed": directed, "seed": seed,
                "output": output.display().to_string(),
            });
            Ok(Run { files: vec![(output, serialize_graph(&g))], report, passed: true })
        }
        Command::Build { params, output } => {
            let g = read_graph(&params.input)?;
            let st = build(&params, &g)?;
            let h = st.subgraph(&g)?;
            eprintln!("kept {} of {} edges", h.m(), g.m());
            let files = vec![
                (sidecar(&output), serde_json::to_string(&st)?),
                (output, serialize_graph(&h)),
            ];
            Ok(Run { files, report: to_json(&structure_stats(&st))?, passed: true })
        }
        Command::Verify { params, subgraph, sampling } => {
            let g = read_graph(&params.input)?;
            let h = read_graph(&subgraph)?;
            let report = verify_structure(&g, &h, &params.sources, params.k.into(), params.mode, sampling, Exec::Parallel)?;
            eprintln!("checked {} failure sets, {} witnesses", report.checked, report.witness_count);
            Ok(Run { files: Vec::new(), report: to_json(&report)?, passed: report.passed() })
        }
        Command::Analyze { params, structure } => {
            let g = read_graph(&params.input)?;
            let st = match structure {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
                    let st: FtStructure = serde_json::from_str(&text)?;
                    if st.n != g.n() {
                        return Err(Fail(format!("structure has {} vertices, graph has {}", st.n, g.n())));
                    }
                    st
                }
                None => build(&params, &g)?,
            };
            let report = analyze_structure(&g, &st, Exec::Parallel)?;
            eprintln!("analyzed {} targets", report.targets.len());
            Ok(Run { files: Vec::new(), report: to_json(&report)?, passed: report.all_pass })
        }
        Command::Spanner { input, sigma, seed, output } => {
            let g = read_graph(&input)?;
            let sigma = match sigma {
                Sigma::Auto => None,
                Sigma::Fixed(s) => Some(s),
            };
            let (h, plan, report) = build_additive_spanner(&g, sigma, seed, Exec::Parallel)?;
            eprintln!("spanner keeps {} of {} edges with {} sources", h.m(), g.m(), plan.sources.len());
            let report = json!({ "plan": plan, "report": report });
            Ok(Run { files: vec![(output, serialize_graph(&h))], report, passed: true })
        }
        Command::Scale { sizes, trials, model, p, k, mode, sigma, seed, output } => {
            scale(&sizes, trials, model, p, k.into(), mode, sigma, seed, output)
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ScaleRow {
    n: usize,
    trial: u64,
    seed: u64,
    m: usize,
    edges: usize,
    bound: f64,
    ratio: f64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ScaleSummary {
    n: usize,
    mean_ratio: f64,
    max_ratio: f64,
}

#[allow(clippy::too_many_arguments)]
fn scale(
    sizes: &[usize],
    trials: u64,
    model: GraphModel,
    p: Option<f64>,
    k: usize,
    mode: FailureMode,
    sigma: usize,
    seed: u64,
    output: PathBuf,
) -> Result<Run, Fail> {
    if !sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err(Fail("--sizes must be strictly ascending".into()));
    }
    if trials == 0 || sigma == 0 {
        return Err(Fail("--trials and --sigma must be at least 1".into()));
    }
    let sources: Vec<usize> = (0..sigma).collect();
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for &n in sizes {
        let p = match model {
            GraphModel::Gnp => Some(p.unwrap_or(2.0 * (n as f64).ln() / n as f64).min(1.0)),
            _ => None,
        };
        let start = rows.len();
        for trial in 0..trials {
            let g = gen_graph(model, n, p, seed + trial, false)?;
            let st = build_ft_mbfs_with(&g, &sources, k, mode, Exec::Parallel)?;
            let stats = structure_stats(&st);
            rows.push(ScaleRow {
                n,
                trial,
                seed: seed + trial,
                m: g.m(),
                edges: stats.edges,
                bound: size_bound(n, sigma, k),
                ratio: stats.ratio,
            });
        }
        let ratios: Vec<f64> = rows[start..].iter().map(|r| r.ratio).collect();
        let summary_row = ScaleSummary {
            n,
            mean_ratio: ratios.iter().sum::<f64>() / ratios.len() as f64,
            max_ratio: ratios.iter().cloned().fold(f64::MIN, f64::max),
        };
        eprintln!("n={n}: mean ratio {:.4}, max {:.4}", summary_row.mean_ratio, summary_row.max_ratio);
        summary.push(summary_row);
    }
    let mut csv = String::from("n,trial,seed,m,edges,bound,ratio\n");
    for r in &rows {
        csv.push_str(&format!("{},{},{},{},{},{},{}\n", r.n, r.trial, r.seed, r.m, r.edges, r.bound, r.ratio));
    }
    let report = json!({
        "k": k, "mode": mode, "sigma": sigma, "model": model, "rows": rows, "summary": summary,
    });
    Ok(Run { files: vec![(output, csv)], report, passed: true })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli.command).and_then(|run| {
        let text = serde_json::to_string_pretty(&run.report)?;
        for (path, contents) in &run.files {
            fs::write(path, contents).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
        }
        Ok((text, run.passed))
    });
    match outcome {
        Ok((text, passed)) => {
            // A closed pipe downstream is not an error of this run.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
