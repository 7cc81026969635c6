//! Command-line driver: build or load a start, mutate, explore, verify.

pub mod suites;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::lp::{exchange_graph, seed_from_json, seed_to_json, ExchangeGraph, LpSeed};
use crate::surface::{
    build_surface, parse_surface_name, principal_state, quasi_flip_graph, state_from_json, state_to_json,
    QuasiTriState,
};
use suites::{Check, SuiteReport};

#[derive(Debug, Parser)]
#[command(name = "lpsurf", version, about = "LP seeds and quasi-triangulation flips of bordered surfaces")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 42)]
    pub rand_seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a comma-separated mutation (or flip) sequence.
    Mutate(MutateArgs),
    /// Build the exchange or flip graph.
    Explore(ExploreArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Laurent,
    Involution,
    Rank,
    FlipLp,
    PaperExamples,
    Distinctness,
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Catalogue surface, e.g. `polygon`, `mobius(2)` or `annulus(1,1)`.
    #[arg(long)]
    pub surface: Option<String>,
    /// Surface parameters as `K=V`, repeated or comma-separated.
    #[arg(long = "params", value_name = "K=V")]
    pub params: Vec<String>,
    /// An LP seed file.
    #[arg(long, value_name = "PATH")]
    pub seed_file: Option<PathBuf>,
    /// A quiver or state file.
    #[arg(long, value_name = "PATH")]
    pub quiver_file: Option<PathBuf>,
    /// Lamination sign on arcs whose sign is not forced.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sign: i8,
    /// Do not attach a principal lamination to catalogue surfaces.
    #[arg(long)]
    pub unlaminated: bool,
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    #[command(flatten)]
    pub source: Source,
    /// Directions by name or index, e.g. `b,a,c`. Empty echoes the input.
    #[arg(default_value = "")]
    pub sequence: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = usize::MAX)]
    pub depth: usize,
    #[arg(long, default_value_t = 100_000)]
    pub max_nodes: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the graph here; otherwise it goes to stdout after the summary.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub source: Source,
    /// BFS depth; the laurent suite defaults to 24 so infinite graphs stop.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub max_nodes: Option<usize>,
    /// Sample count for the randomized suites.
    #[arg(long)]
    pub samples: Option<usize>,
}

/// A parsed start: an LP seed or a surface state.
pub enum Start {
    Seed(LpSeed),
    State(QuasiTriState),
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

impl Source {
    fn is_empty(&self) -> bool {
        self.surface.is_none() && self.seed_file.is_none() && self.quiver_file.is_none()
    }

    fn surface_label(&self) -> String {
        match &self.surface {
            Some(s) if self.params.is_empty() => s.clone(),
            Some(s) => format!("{s}({})", self.params.join(",")),
            None => String::new(),
        }
    }

    pub fn load(&self) -> Result<Start, String> {
        let given = [self.surface.is_some(), self.seed_file.is_some(), self.quiver_file.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err("give exactly one of --surface, --seed-file, --quiver-file".into());
        }
        if let Some(p) = &self.seed_file {
            let text = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            return seed_from_json(&text).map(Start::Seed).map_err(err);
        }
        if let Some(p) = &self.quiver_file {
            let text = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            return state_from_json(&text).map(Start::State).map_err(err);
        }
        let text = self.surface.as_deref().expect("checked above");
        let (name, mut params) = parse_surface_name(text).map_err(err)?;
        params.extend(parse_params(&self.params)?);
        let spec = build_surface(&name, &params).map_err(err)?;
        let state = if self.unlaminated {
            QuasiTriState::from_spec(&spec)
        } else {
            principal_state(&spec, self.sign)
        };
        state.map(Start::State).map_err(err)
    }
}

fn parse_params(items: &[String]) -> Result<BTreeMap<String, usize>, String> {
    items
        .iter()
        .flat_map(|s| s.split(','))
        .filter(|s| !s.is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| format!("expected K=V, got `{kv}`"))?;
            let v = v.trim().parse::<usize>().map_err(|_| format!("bad value in `{kv}`"))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

/// A slot by its current name, its name with primes dropped, or its index.
fn direction(names: &[String], token: &str) -> Result<usize, String> {
    names
        .iter()
        .position(|n| n == token)
        .or_else(|| names.iter().position(|n| n.trim_end_matches('\'') == token))
        .or_else(|| token.parse::<usize>().ok().filter(|&i| i < names.len()))
        .ok_or_else(|| format!("unknown direction `{token}`"))
}

fn seed_names(s: &LpSeed) -> Vec<String> {
    (0..s.rank()).map(|i| s.table().name(i).to_string()).collect()
}

pub fn cmd_mutate(args: &MutateArgs) -> Result<String, String> {
    let tokens: Vec<&str> = args.sequence.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    match args.source.load()? {
        Start::Seed(mut s) => {
            for t in tokens {
                let i = direction(&seed_names(&s), t)?;
                s = s.mutate(i).map_err(err)?;
            }
            Ok(match args.format {
                Format::Table => s.to_string(),
                _ => seed_to_json(&s),
            })
        }
        Start::State(mut s) => {
            for t in tokens {
                let names: Vec<String> = s.names()[..s.rank()].to_vec();
                let i = direction(&names, t)?;
                s = s.flip(i).map_err(err)?;
            }
            Ok(match args.format {
                Format::Table => s.lp_seed_raw().map_err(err)?.to_string(),
                _ => state_to_json(&s),
            })
        }
    }
}

fn render<N>(g: &ExchangeGraph<N>, format: Format, label: impl Fn(usize) -> String) -> String {
    match format {
        Format::Dot => g.to_dot(label),
        Format::Table => g.to_table(label),
        Format::Json => serde_json::to_string_pretty(&g.to_json()).expect("serializable"),
    }
}

/// Returns the summary and the rendered graph.
pub fn cmd_explore(args: &ExploreArgs, rand_seed: u64) -> Result<(serde_json::Value, String), String> {
    let (nodes, edges, closed, errors, body) = match args.source.load()? {
        Start::Seed(s) => {
            let g = exchange_graph(s, args.max_nodes, args.depth);
            let body = render(&g, args.format, |k| format!("{:?}", g.path_to(k)));
            (g.node_count(), g.edge_count(), g.closed, g.errors.len(), body)
        }
        Start::State(s) => {
            let g = quasi_flip_graph(s, args.max_nodes, args.depth);
            let body = render(&g, args.format, |k| format!("{:?}", g.path_to(k)));
            (g.node_count(), g.edge_count(), g.closed, g.errors.len(), body)
        }
    };
    let summary = json!({
        "nodes": nodes,
        "edges": edges,
        "closed": closed,
        "partial": !closed,
        "errors": errors,
        "rand_seed": rand_seed,
    });
    Ok((summary, body))
}

fn named_states(names: &[String], sign: i8, unlaminated: bool) -> Vec<Result<(String, QuasiTriState), Check>> {
    names
        .iter()
        .map(|n| {
            let spec = suites::surface(n).map_err(|e| Check::new(format!("build {n}"), false, e))?;
            let s = if unlaminated { QuasiTriState::from_spec(&spec) } else { principal_state(&spec, sign) };
            s.map(|s| (n.clone(), s)).map_err(|e| Check::new(format!("build {n}"), false, e.to_string()))
        })
        .collect()
}

pub fn cmd_verify(args: &VerifyArgs, rand_seed: u64) -> Result<SuiteReport, String> {
    let src = &args.source;
    let depth = args.depth.unwrap_or(usize::MAX);
    let max_nodes = args.max_nodes.unwrap_or(20_000);
    let mut checks = Vec::new();
    let starts = |default: Vec<String>, checks: &mut Vec<Check>| -> Result<Vec<(String, QuasiTriState)>, String> {
        if src.is_empty() {
            let mut out = Vec::new();
            for r in named_states(&default, src.sign, src.unlaminated) {
                match r {
                    Ok(s) => out.push(s),
                    Err(c) => checks.push(c),
                }
            }
            return Ok(out);
        }
        match src.load()? {
            Start::State(s) => Ok(vec![(src.surface_label(), s)]),
            Start::Seed(_) => Err("this suite needs a surface or a quiver file".into()),
        }
    };
    let suite = match args.suite {
        Suite::Laurent => {
            let seeds: Vec<(String, LpSeed)> = if src.is_empty() || src.seed_file.is_none() {
                starts(suites::default_surfaces(), &mut checks)?
                    .into_iter()
                    .filter_map(|(n, s)| match s.lp_seed() {
                        Ok(seed) => Some((n, seed)),
                        Err(e) => {
                            checks.push(Check::new(format!("seed {n}"), false, e.to_string()));
                            None
                        }
                    })
                    .collect()
            } else {
                match src.load()? {
                    Start::Seed(s) => vec![("seed".into(), s)],
                    Start::State(_) => unreachable!("seed file loads a seed"),
                }
            };
            checks.extend(suites::laurent(&seeds, max_nodes, args.depth.unwrap_or(24)));
            "laurent"
        }
        Suite::Involution => {
            checks.extend(suites::involution(args.samples.unwrap_or(500), rand_seed, src.sign));
            "involution"
        }
        Suite::Rank => {
            checks.extend(suites::rank_suite(args.samples.unwrap_or(1000), rand_seed));
            "rank"
        }
        Suite::FlipLp => {
            let s = starts(vec!["polygon(6)".into()], &mut checks)?;
            checks.extend(suites::flip_lp(&s, depth, max_nodes));
            "flip-lp"
        }
        Suite::PaperExamples => {
            checks.extend(suites::paper_examples());
            "paper-examples"
        }
        Suite::Distinctness => {
            let names = ["polygon(6)", "mobius(1)", "mobius(2)", "once-punctured-disk(3)"];
            let s = starts(names.iter().map(|s| s.to_string()).collect(), &mut checks)?;
            checks.extend(suites::distinctness(&s, max_nodes));
            "distinctness"
        }
    };
    Ok(SuiteReport::new(suite, rand_seed, checks))
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

pub fn run_config(cfg: RunConfig) -> Result<bool, String> {
    if cfg.jobs > 0 {
        // The global pool can only be set once per process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build_global();
    }
    match &cfg.command {
        Command::Mutate(a) => {
            emit(&cmd_mutate(a)?);
            Ok(true)
        }
        Command::Explore(a) => {
            let (summary, body) = cmd_explore(a, cfg.rand_seed)?;
            let summary_text = serde_json::to_string_pretty(&summary).expect("serializable");
            match &a.output {
                Some(p) => {
                    fs::write(p, body).map_err(|e| format!("{}: {e}", p.display()))?;
                    emit(&summary_text);
                }
                None => {
                    eprintln!("{summary_text}");
                    emit(&body);
                }
            }
            Ok(true)
        }
        Command::Verify(a) => {
            let report = cmd_verify(a, cfg.rand_seed)?;
            emit(&serde_json::to_string_pretty(&report).expect("serializable"));
            eprintln!("{}: {} checks, {} failed", report.suite, report.checks.len(), report.failures());
            Ok(report.passed)
        }
    }
}

pub fn run() -> ExitCode {
    match run_config(RunConfig::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
