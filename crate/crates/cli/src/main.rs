//! Batch front end for the chroma8 workbench. One process, one verb, plain
//! text out. Structured results are single lines of `tag: key=value ...` so
//! downstream scripts can grep them; bulk payloads (point lists, DIMACS)
//! are written bare.
//!
//! Exit codes: 0 success, 1 verification mismatch or replay divergence,
//! 2 unusable input, 3 budget exhausted before an answer.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use chroma8_core::augment::{
    augment, candidate_pool, replay, AugmentPolicy, BaseAlpha, CandidateOrder, Recheck,
    StepDecision,
};
use chroma8_core::catalog;
use chroma8_core::coloring::{dsatur, encode_kcoloring, improve_coloring, BoundReport, Coloring};
use chroma8_core::geometry::{export_dimacs, import_dimacs, AdjGraph};
use chroma8_core::mis_exact::{brute_force_mis, MisSolver, SearchBudget};
use chroma8_core::mis_heuristic::{heuristic_mis, verify_witness, HeuristicConfig};
use chroma8_core::notation;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn default_seed() -> u64 {
    HeuristicConfig::default().rng_seed
}

// =============================================================================
// argument surface
// =============================================================================

#[derive(Parser)]
#[command(
    name = "chroma8",
    version,
    about = "Workbench for unit-distance graphs in Z^8: catalog, solvers, bounds, augmentation"
)]
struct Cli {
    /// Worker threads for parallel search; 1 keeps every run sequential
    /// and node-for-node reproducible
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand a coordinate-shorthand expression into points
    Expand {
        /// Expression such as "±2^2 0^6", "e1^8" or "+3_1 o1^7"
        expr: String,
        /// Ambient dimension
        #[arg(long, default_value_t = 8)]
        dim: usize,
        /// Print one point per line (the default)
        #[arg(long, conflicts_with = "count")]
        list: bool,
        /// Print only the number of points
        #[arg(long)]
        count: bool,
    },
    /// Inspect the built-in graph catalog
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Independence number of a catalog graph or DIMACS file
    #[command(group(ArgGroup::new("mode").required(true).multiple(false)))]
    Alpha {
        /// Catalog name (e.g. G240) or path to a DIMACS edge file
        graph: String,
        /// Prove the exact value by branch and bound
        #[arg(long, group = "mode")]
        exact: bool,
        /// Search for a large independent set without a proof
        #[arg(long, group = "mode")]
        heuristic: bool,
        /// Abort the exact search after this many nodes
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Abort the exact search after this many milliseconds
        #[arg(long)]
        budget_ms: Option<u64>,
        /// RNG seed for the heuristic
        #[arg(long, default_value_t = default_seed())]
        seed: u64,
        /// Local-search iterations per heuristic restart
        #[arg(long, default_value_t = HeuristicConfig::default().iterations)]
        iterations: u64,
        /// Heuristic restarts
        #[arg(long, default_value_t = HeuristicConfig::default().restarts)]
        restarts: u32,
        /// Stop the heuristic early once a set of this size is found
        #[arg(long)]
        stop_at: Option<usize>,
    },
    /// Pigeonhole lower bound chi >= ceil(v / alpha)
    Bound {
        /// Catalog name or path to a DIMACS edge file
        graph: String,
        /// Independence number to use: an integer, or "auto" for the
        /// catalog's published value (files always need an integer)
        #[arg(long, default_value = "auto")]
        alpha: String,
    },
    /// k-coloring tools: CNF export or direct search
    #[command(group(ArgGroup::new("task").required(true).multiple(false)))]
    Color {
        /// Catalog name or path to a DIMACS edge file
        graph: String,
        /// Number of colors
        #[arg(long)]
        k: usize,
        /// Write a DIMACS CNF whose models are exactly the proper k-colorings
        #[arg(long, group = "task", value_name = "FILE")]
        encode_cnf: Option<PathBuf>,
        /// Look for a proper k-coloring (DSATUR, then min-conflicts)
        #[arg(long, group = "task")]
        search: bool,
        /// RNG seed for the min-conflicts repair
        #[arg(long, default_value_t = default_seed())]
        seed: u64,
        /// Step limit for the min-conflicts repair
        #[arg(long, default_value_t = 200_000)]
        max_steps: u64,
    },
    /// Grow a catalog graph by vertices that keep alpha within a cap
    #[command(group(ArgGroup::new("base_alpha").required(true).multiple(false)))]
    Augment {
        /// Catalog name of the base graph (replays rebuild it by name)
        base: String,
        /// Candidate pool expression; repeat the flag to union several
        #[arg(long, required = true)]
        pool_expr: Vec<String>,
        /// Largest tolerated independence number
        #[arg(long)]
        cap: usize,
        /// Candidate order: degree | lex | random:SEED
        #[arg(long, default_value = "degree")]
        order: String,
        /// Per-candidate check: exact | heuristic:SEED:ITERS
        /// (the heuristic only pre-rejects; acceptance is always exact)
        #[arg(long, default_value = "exact")]
        recheck: String,
        /// Abort each per-candidate decision after this many nodes
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Abort each per-candidate decision after this many milliseconds
        #[arg(long)]
        budget_ms: Option<u64>,
        /// Prove alpha(base) <= cap before the first step
        #[arg(long, group = "base_alpha")]
        verify_base: bool,
        /// Take alpha(base) on trust (see --provenance)
        #[arg(long, group = "base_alpha", value_name = "ALPHA")]
        trust_alpha: Option<usize>,
        /// Where the trusted alpha comes from; recorded in the audit log
        #[arg(long, default_value = "cli-flag")]
        provenance: String,
        /// Audit log output path
        #[arg(long, value_name = "FILE")]
        audit: PathBuf,
    },
    /// Re-run an audit log and compare every decision
    Replay {
        /// Audit log written by `augment`
        log: PathBuf,
    },
    /// Brute-force maximum independent set for oracle-sized graphs (n <= 30)
    Oracle {
        /// Catalog name or path to a DIMACS edge file
        graph: String,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Rebuild graphs and compare against their published parameters
    Verify {
        /// Catalog name; all reconstructible graphs when omitted
        name: Option<String>,
    },
    /// Rebuild a graph and print its measured parameters
    Build { name: String },
    /// Rebuild a graph and write it out
    Export {
        name: String,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dimacs)]
        format: ExportFormat,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List catalog names
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    /// DIMACS edge format, 1-based vertex ids
    Dimacs,
    /// One integer coordinate row per vertex
    Points,
}

// =============================================================================
// error plumbing
// =============================================================================

/// Anything that stops a verb before it can produce a result.
struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }

    fn mismatch(msg: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_MISMATCH,
            msg: msg.into(),
        }
    }
}

macro_rules! usage_from {
    ($($ty:ty),+) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> CliError {
                CliError::usage(e.to_string())
            }
        }
    )+};
}

usage_from!(
    std::io::Error,
    chroma8_core::notation::NotationError,
    chroma8_core::geometry::GeometryError,
    chroma8_core::geometry::DimacsError,
    chroma8_core::catalog::CatalogError
);

impl From<chroma8_core::augment::AugmentError> for CliError {
    fn from(e: chroma8_core::augment::AugmentError) -> CliError {
        use chroma8_core::augment::AugmentError::*;
        // a digest that contradicts the log is a verification failure, not
        // a malformed invocation
        match e {
            BaseDigestMismatch { .. } => CliError::mismatch(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

// =============================================================================
// run records
// =============================================================================

/// One line per solver invocation: what ran, on which input, how long, and
/// what came out. `digest` is the SHA-256 of the input adjacency structure.
struct RunRecord {
    command: &'static str,
    digest: String,
    elapsed: Duration,
    outputs: Vec<(String, String)>,
}

impl RunRecord {
    fn new(command: &'static str, digest: impl Into<String>, elapsed: Duration) -> RunRecord {
        RunRecord {
            command,
            digest: digest.into(),
            elapsed,
            outputs: Vec::new(),
        }
    }

    fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.outputs.push((key.to_string(), value.to_string()));
        self
    }

    fn print(&self) {
        let mut line = format!(
            "run: command={} digest={} ms={}",
            self.command,
            self.digest,
            self.elapsed.as_millis()
        );
        for (k, v) in &self.outputs {
            let _ = write!(line, " {k}={v}");
        }
        println!("{line}");
    }
}

fn join_indices(ix: &[usize]) -> String {
    let mut sorted = ix.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

// =============================================================================
// input loading
// =============================================================================

/// A graph named on the command line: a catalog entry or a bare adjacency
/// structure read from a DIMACS file.
struct Loaded {
    name: String,
    adj: AdjGraph,
}

fn load_graph(spec: &str) -> Result<Loaded, CliError> {
    if catalog::names().contains(&spec) {
        let g = catalog::build(spec)?;
        return Ok(Loaded {
            name: spec.to_string(),
            adj: g.adjacency().clone(),
        });
    }
    let path = Path::new(spec);
    if path.exists() {
        let adj = import_dimacs(&fs::read_to_string(path)?)?;
        return Ok(Loaded {
            name: spec.to_string(),
            adj,
        });
    }
    Err(CliError::usage(format!(
        "`{spec}` is neither a catalog graph ({}) nor a readable file",
        catalog::names().join(", ")
    )))
}

fn budget_from(nodes: Option<u64>, ms: Option<u64>) -> SearchBudget {
    let mut b = SearchBudget::unlimited();
    b.max_nodes = nodes;
    b.max_time = ms.map(Duration::from_millis);
    b
}

fn parse_order(text: &str) -> Result<CandidateOrder, CliError> {
    match text {
        "degree" => Ok(CandidateOrder::ByDegreeToCurrent),
        "lex" => Ok(CandidateOrder::Lexicographic),
        other => match other.strip_prefix("random:") {
            Some(seed) => seed
                .parse()
                .map(|seed| CandidateOrder::Random { seed })
                .map_err(|_| CliError::usage(format!("bad seed in --order {other}"))),
            None => Err(CliError::usage(format!(
                "--order must be degree, lex or random:SEED (got {other})"
            ))),
        },
    }
}

fn parse_recheck(text: &str) -> Result<Recheck, CliError> {
    if text == "exact" {
        return Ok(Recheck::Exact);
    }
    if let Some(rest) = text.strip_prefix("heuristic:") {
        if let Some((seed, iters)) = rest.split_once(':') {
            if let (Ok(seed), Ok(iterations)) = (seed.parse(), iters.parse()) {
                return Ok(Recheck::HeuristicThenExact { seed, iterations });
            }
        }
    }
    Err(CliError::usage(format!(
        "--recheck must be exact or heuristic:SEED:ITERS (got {text})"
    )))
}

// =============================================================================
// verbs
// =============================================================================

fn cmd_expand(expr: &str, dim: usize, count_only: bool) -> Result<u8, CliError> {
    let expr = notation::parse(expr, dim)?;
    if count_only {
        println!("{}", notation::count(&expr));
    } else {
        for p in notation::expand(&expr) {
            println!("{p}");
        }
    }
    Ok(0)
}

fn cmd_catalog(action: CatalogCmd) -> Result<u8, CliError> {
    match action {
        CatalogCmd::List => {
            for name in catalog::names() {
                let r = catalog::recipe(name)?;
                println!(
                    "name={} v={} reconstructible={}",
                    name, r.expected.v, r.buildable
                );
            }
            Ok(0)
        }
        CatalogCmd::Verify { name } => {
            let names: Vec<&str> = match &name {
                Some(n) => vec![n.as_str()],
                None => catalog::names()
                    .into_iter()
                    .filter(|n| catalog::recipe(n).map(|r| r.buildable).unwrap_or(false))
                    .collect(),
            };
            let mut all_ok = true;
            for n in names {
                let report = catalog::verify_recipe(n)?;
                println!("{report}");
                all_ok &= report.ok;
            }
            Ok(if all_ok { 0 } else { EXIT_MISMATCH })
        }
        CatalogCmd::Build { name } => {
            let g = catalog::build(&name)?;
            let s = g.stats();
            println!(
                "graph: name={} v={} e={} deg-min={} deg-max={} digest={}",
                name,
                s.v,
                s.e,
                s.deg_min,
                s.deg_max,
                g.adjacency().digest()
            );
            // label goes last: it contains spaces and runs to end of line
            for (class, count) in catalog::census(g.points())? {
                println!("class: count={} label={}", count, class.label());
            }
            Ok(0)
        }
        CatalogCmd::Export { name, format, out } => {
            let g = catalog::build(&name)?;
            let text = match format {
                ExportFormat::Dimacs => export_dimacs(g.adjacency()),
                ExportFormat::Points => {
                    let mut t = String::new();
                    for p in g.points() {
                        let _ = writeln!(t, "{p}");
                    }
                    t
                }
            };
            match out {
                Some(path) => {
                    fs::write(&path, &text)?;
                    println!("wrote: file={} bytes={}", path.display(), text.len());
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_alpha(
    graph: &str,
    exact: bool,
    budget: SearchBudget,
    threads: usize,
    seed: u64,
    iterations: u64,
    restarts: u32,
    stop_at: Option<usize>,
) -> Result<u8, CliError> {
    let loaded = load_graph(graph)?;
    let digest = loaded.adj.digest();
    if exact {
        let solver = MisSolver::new().budget(budget).threads(threads);
        let r = solver.max_independent_set(&loaded.adj);
        let mut rec = RunRecord::new("alpha", digest, r.elapsed);
        rec.push("graph", &loaded.name)
            .push("mode", "exact")
            .push("size", r.size)
            .push("proven", r.exact)
            .push("nodes", r.nodes_explored)
            .push("witness", join_indices(&r.witness));
        rec.print();
        Ok(if r.exact { 0 } else { EXIT_BUDGET })
    } else {
        let cfg = HeuristicConfig {
            rng_seed: seed,
            iterations,
            restarts,
            stop_at,
        };
        let r = heuristic_mis(&loaded.adj, &cfg);
        assert!(
            verify_witness(&loaded.adj, &r.witness),
            "heuristic returned a dependent set"
        );
        let mut rec = RunRecord::new("alpha", digest, r.elapsed);
        rec.push("graph", &loaded.name)
            .push("mode", "heuristic")
            .push("size", r.size)
            .push("proven", false)
            .push("best-restart", r.best_restart)
            .push("witness", join_indices(&r.witness));
        rec.print();
        Ok(0)
    }
}

fn cmd_bound(graph: &str, alpha_flag: &str) -> Result<u8, CliError> {
    let alpha_flag: Option<usize> = if alpha_flag == "auto" {
        None
    } else {
        Some(alpha_flag.parse().map_err(|_| {
            CliError::usage(format!("--alpha takes an integer or \"auto\", got {alpha_flag:?}"))
        })?)
    };
    // catalog rows answer from their published parameters, so bounds work
    // even for the one catalog entry that cannot be rebuilt
    if catalog::names().contains(&graph) {
        let r = catalog::recipe(graph)?;
        let alpha = alpha_flag.or(r.expected.alpha).ok_or_else(|| {
            CliError::usage(format!("{graph} has no recorded alpha; pass --alpha"))
        })?;
        let report = BoundReport::new(graph, r.expected.v, alpha, true, r.expected.chi_upper);
        println!("{report}");
        println!(
            "bound: graph={} v={} alpha={} alpha-source={} chi-lower={} chi-upper={}",
            graph,
            r.expected.v,
            alpha,
            if alpha_flag.is_some() {
                "flag"
            } else {
                "published"
            },
            report.chi_low,
            r.expected
                .chi_upper
                .map_or("-".to_string(), |c| c.to_string()),
        );
        return Ok(0);
    }
    let loaded = load_graph(graph)?;
    let alpha = alpha_flag.ok_or_else(|| {
        CliError::usage("file graphs carry no published alpha; pass --alpha".to_string())
    })?;
    let report = BoundReport::new(&loaded.name, loaded.adj.n(), alpha, true, None);
    println!("{report}");
    println!(
        "bound: graph={} v={} alpha={} alpha-source=flag chi-lower={} chi-upper=-",
        loaded.name,
        loaded.adj.n(),
        alpha,
        report.chi_low
    );
    Ok(0)
}

fn print_coloring(rec: &mut RunRecord, c: &Coloring) {
    rec.push("colors-used", c.colors_used());
    rec.print();
    let classes: Vec<String> = c.classes().iter().map(|x| x.to_string()).collect();
    println!("assignment: {}", classes.join(","));
}

fn cmd_color(
    graph: &str,
    k: usize,
    encode_cnf: Option<PathBuf>,
    seed: u64,
    max_steps: u64,
) -> Result<u8, CliError> {
    let loaded = load_graph(graph)?;
    let digest = loaded.adj.digest();
    if let Some(path) = encode_cnf {
        let started = Instant::now();
        let cnf = encode_kcoloring(&loaded.adj, k);
        fs::write(&path, cnf.to_dimacs())?;
        let mut rec = RunRecord::new("color", digest, started.elapsed());
        rec.push("graph", &loaded.name)
            .push("k", k)
            .push("task", "encode-cnf")
            .push("vars", cnf.num_vars)
            .push("clauses", cnf.clauses.len())
            .push("file", path.display());
        rec.print();
        return Ok(0);
    }

    let started = Instant::now();
    let greedy = dsatur(&loaded.adj);
    assert!(greedy.is_proper(&loaded.adj), "dsatur emitted a conflict");
    if greedy.colors_used() <= k {
        let mut rec = RunRecord::new("color", digest, started.elapsed());
        rec.push("graph", &loaded.name)
            .push("k", k)
            .push("task", "search")
            .push("found", true)
            .push("method", "dsatur");
        print_coloring(&mut rec, &greedy);
        return Ok(0);
    }
    match improve_coloring(&loaded.adj, k, seed, max_steps) {
        Some(c) => {
            assert!(c.is_proper(&loaded.adj), "repair emitted a conflict");
            let mut rec = RunRecord::new("color", digest, started.elapsed());
            rec.push("graph", &loaded.name)
                .push("k", k)
                .push("task", "search")
                .push("found", true)
                .push("method", "min-conflicts");
            print_coloring(&mut rec, &c);
            Ok(0)
        }
        None => {
            let mut rec = RunRecord::new("color", digest, started.elapsed());
            rec.push("graph", &loaded.name)
                .push("k", k)
                .push("task", "search")
                .push("found", false)
                .push("dsatur-colors", greedy.colors_used())
                .push("steps", max_steps);
            rec.print();
            Ok(EXIT_BUDGET)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_augment(
    base_name: &str,
    pool_exprs: &[String],
    cap: usize,
    order: &str,
    recheck: &str,
    budget: SearchBudget,
    verify_base: bool,
    trust_alpha: Option<usize>,
    provenance: &str,
    audit: &Path,
) -> Result<u8, CliError> {
    if !catalog::names().contains(&base_name) {
        return Err(CliError::usage(format!(
            "augment bases must be catalog graphs so replays can rebuild them (got {base_name})"
        )));
    }
    let base = catalog::build(base_name)?;
    let dim = base.points()[0].dim();
    let mut exprs = Vec::new();
    for text in pool_exprs {
        exprs.push(notation::parse(text, dim)?);
    }
    let pool = candidate_pool(&exprs, &[]);
    let policy = AugmentPolicy {
        alpha_cap: cap,
        order: parse_order(order)?,
        recheck: parse_recheck(recheck)?,
        budget_per_step: budget,
    };
    let base_alpha = if verify_base {
        BaseAlpha::Verify
    } else {
        BaseAlpha::Trusted {
            alpha: trust_alpha.expect("clap group guarantees one of the two"),
            provenance: provenance.to_string(),
        }
    };

    let started = Instant::now();
    let digest = base.adjacency().digest();
    let out = augment(&base, base_name, &pool, &policy, &base_alpha)?;
    fs::write(audit, &out.log)?;

    let skipped = out
        .steps
        .iter()
        .filter(|s| s.decision == StepDecision::AlreadyPresent)
        .count();
    let s = out.graph.stats();
    let mut rec = RunRecord::new("augment", digest, started.elapsed());
    rec.push("base", base_name)
        .push("pool", pool.len())
        .push("cap", cap)
        .push("accepted", out.accepted())
        .push("rejected", out.rejected())
        .push("undecided", out.undecided())
        .push("skipped", skipped)
        .push("v", s.v)
        .push("e", s.e)
        .push("result-digest", out.graph.adjacency().digest())
        .push("audit", audit.display());
    rec.print();
    Ok(if out.undecided() > 0 { EXIT_BUDGET } else { 0 })
}

fn cmd_replay(log_path: &Path) -> Result<u8, CliError> {
    let text = fs::read_to_string(log_path)?;
    let started = Instant::now();
    let report = replay(&text)?;
    println!("{report}");
    let mut rec = RunRecord::new("replay", "-", started.elapsed());
    rec.push("log", log_path.display())
        .push("base", &report.base)
        .push("steps", report.steps_compared)
        .push("match", report.matches());
    rec.print();
    Ok(if report.matches() { 0 } else { EXIT_MISMATCH })
}

fn cmd_oracle(graph: &str) -> Result<u8, CliError> {
    let loaded = load_graph(graph)?;
    if loaded.adj.n() > 30 {
        return Err(CliError::usage(format!(
            "the oracle enumerates all subsets; {} vertices is past its 30-vertex limit",
            loaded.adj.n()
        )));
    }
    let started = Instant::now();
    let (size, witness) = brute_force_mis(&loaded.adj);
    let mut rec = RunRecord::new("oracle", loaded.adj.digest(), started.elapsed());
    rec.push("graph", &loaded.name)
        .push("n", loaded.adj.n())
        .push("size", size)
        .push("witness", join_indices(&witness));
    rec.print();
    Ok(0)
}

// =============================================================================
// entry
// =============================================================================

fn dispatch(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Cmd::Expand {
            expr,
            dim,
            list: _,
            count,
        } => cmd_expand(&expr, dim, count),
        Cmd::Catalog { action } => cmd_catalog(action),
        Cmd::Alpha {
            graph,
            exact,
            heuristic: _,
            budget_nodes,
            budget_ms,
            seed,
            iterations,
            restarts,
            stop_at,
        } => cmd_alpha(
            &graph,
            exact,
            budget_from(budget_nodes, budget_ms),
            cli.threads,
            seed,
            iterations,
            restarts,
            stop_at,
        ),
        Cmd::Bound { graph, alpha } => cmd_bound(&graph, &alpha),
        Cmd::Color {
            graph,
            k,
            encode_cnf,
            search: _,
            seed,
            max_steps,
        } => cmd_color(&graph, k, encode_cnf, seed, max_steps),
        Cmd::Augment {
            base,
            pool_expr,
            cap,
            order,
            recheck,
            budget_nodes,
            budget_ms,
            verify_base,
            trust_alpha,
            provenance,
            audit,
        } => cmd_augment(
            &base,
            &pool_expr,
            cap,
            &order,
            &recheck,
            budget_from(budget_nodes, budget_ms),
            verify_base,
            trust_alpha,
            &provenance,
            &audit,
        ),
        Cmd::Replay { log } => cmd_replay(&log),
        Cmd::Oracle { graph } => cmd_oracle(&graph),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
