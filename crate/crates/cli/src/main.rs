use clap::{Args, Parser, Subcommand, ValueEnum};
use detour_core::detour::{longest_detour_decision, Construct};
use detour_core::exact_path::{exact_path_query, Method, DEFAULT_SEED};
use detour_core::graph::{enumerate_st_paths, format_graph, generators, parse_graph, relevant_part, shortest_path};
use detour_core::tetra::{builtin_certificate, gen_subdivided_k4, verify_certificate, Case, DualCertificate};
use detour_core::treewidth::{
    exact_treewidth_small, format_td, heuristic_decomposition, parse_td, treewidth_lower_bound, validate_decomposition,
    Strategy, DEFAULT_EXACT_BUDGET,
};
use detour_core::{
    search_to_decision, solve_exact_detour, solve_longest_detour, DetourInstance, Error, Graph, LongestDetourConfig,
    OracleConfig, Path, Problem, Vertex,
};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

/// Largest graph `--deterministic` accepts.
const DETERMINISTIC_LIMIT: usize = 20;

#[derive(Parser)]
#[command(name = "detour", version, about = "Longest and exact detour solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Is there an (s,t)-path of length at least d(s,t)+k?
    LongestDetour {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Build a witness when the large-treewidth branch answers.
        #[arg(long, value_enum, num_args = 0..=1, default_missing_value = "search")]
        construct: Option<ConstructArg>,
        /// Replace the 32k+2 treewidth threshold (unsound below it).
        #[arg(long, value_name = "W")]
        gate_override: Option<usize>,
        #[arg(long, value_enum, default_value = "min-fill")]
        strategy: StrategyArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Is there an (s,t)-path of length exactly d(s,t)+k?
    ExactDetour {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Construct a detour from decision answers only (edge deletion).
    FindPath {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Search for an exact detour instead (experimental).
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Is there an (s,t)-path with exactly LEN edges?
    ExactPath {
        graph: PathBuf,
        #[arg(long)]
        s: Vertex,
        #[arg(long)]
        t: Vertex,
        #[arg(long)]
        len: usize,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Vertices lying on some (s,t)-path.
    RelevantPart {
        graph: PathBuf,
        #[arg(long)]
        s: Vertex,
        #[arg(long)]
        t: Vertex,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Treewidth bounds and a decomposition.
    Treewidth {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "min-fill")]
        strategy: StrategyArg,
        /// Also compute the exact treewidth (small graphs only).
        #[arg(long)]
        exact: bool,
        /// Write the heuristic decomposition in .td format.
        #[arg(long, value_name = "FILE")]
        td_out: Option<PathBuf>,
        /// Check a given .td file against the graph instead.
        #[arg(long, value_name = "FILE")]
        validate: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write a generated graph file.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verify an LP dual certificate in exact arithmetic.
    VerifyCert {
        #[arg(long, value_enum, conflicts_with = "file", required_unless_present = "file")]
        case: Option<CaseArg>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Brute-force path enumeration for cross-checking.
    Oracle {
        #[command(flatten)]
        inst: OracleInstanceArgs,
        /// Give up beyond this many paths.
        #[arg(long, default_value_t = 1_000_000)]
        max_paths: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct InstanceArgs {
    graph: PathBuf,
    #[arg(long)]
    s: Vertex,
    #[arg(long)]
    t: Vertex,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct OracleInstanceArgs {
    graph: PathBuf,
    #[arg(long)]
    s: Vertex,
    #[arg(long)]
    t: Vertex,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct OracleArgs {
    /// Failure probability of the color-coding oracle.
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    #[arg(long, env = "DETOUR_SEED")]
    seed: Option<u64>,
    /// Answer every exact-path query by exhaustive search.
    #[arg(long)]
    deterministic: bool,
    /// Use color coding even on small inputs.
    #[arg(long, conflicts_with = "deterministic")]
    randomized: bool,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the result here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Subdivided K4 with six subdivision counts (edge order 12,13,14,23,24,34).
    K4 {
        #[arg(long, value_delimiter = ',', required = true)]
        counts: Vec<usize>,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    Complete {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructArg {
    Search,
    Tetra,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    MinFill,
    MinDegree,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::MinFill => Strategy::MinFill,
            StrategyArg::MinDegree => Strategy::MinDegree,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    A,
    B,
    C,
}

/// What a command produced: the document to print and the exit status.
struct Report {
    body: String,
    code: u8,
}

impl Report {
    fn json(value: Value, success: bool) -> Self {
        Report { body: serde_json::to_string_pretty(&value).unwrap() + "\n", code: if success { 0 } else { 1 } }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Consistency(_) => 3,
        _ => 2,
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| match e {
        Error::Parse { line, msg } => Error::Input(format!("{}:{line}: {msg}", path.display())),
        other => other,
    })
}

fn oracle_config(args: &OracleArgs, g: &Graph) -> Result<OracleConfig, Error> {
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let cfg = if args.deterministic {
        if g.n() > DETERMINISTIC_LIMIT {
            return Err(Error::Input(format!(
                "--deterministic refuses graphs with more than {DETERMINISTIC_LIMIT} vertices (got {})",
                g.n()
            )));
        }
        OracleConfig { seed, ..OracleConfig::deterministic() }
    } else if args.randomized {
        OracleConfig::randomized(args.delta, seed)
    } else {
        OracleConfig { delta: args.delta, seed, ..OracleConfig::default() }
    };
    cfg.validate()?;
    Ok(cfg)
}

fn witness_json(p: Option<&Path>) -> Value {
    json!(p.map(|p| p.vertices().to_vec()))
}

fn run(command: Command) -> Result<(Report, Option<PathBuf>), Error> {
    Ok(match command {
        Command::LongestDetour { inst, construct, gate_override, strategy, out } => {
            let g = read_graph(&inst.graph)?;
            let instance = DetourInstance::new(g.clone(), inst.s, inst.t, inst.k)?;
            let construct = match construct {
                None => Construct::None,
                Some(ConstructArg::Search) => Construct::SearchToDecision,
                Some(ConstructArg::Tetra) => Construct::Tetra,
            };
            let cfg = LongestDetourConfig { gate_override, construct, strategy: strategy.into() };
            let r = solve_longest_detour(&instance, &cfg)?;
            r.check_witness(&g, inst.s, inst.t)?;
            let mut doc = r.to_json();
            if gate_override.is_some() {
                doc["gate_override"] = json!(true);
            }
            (Report::json(doc, r.answer), out.output)
        }
        Command::ExactDetour { inst, oracle, out } => {
            let g = read_graph(&inst.graph)?;
            let cfg = oracle_config(&oracle, &g)?;
            let r = solve_exact_detour(&DetourInstance::new(g.clone(), inst.s, inst.t, inst.k)?, &cfg)?;
            r.check_witness(&g, inst.s, inst.t)?;
            (Report::json(r.to_json(), r.answer), out.output)
        }
        Command::FindPath { inst, exact, oracle, out } => {
            let g = read_graph(&inst.graph)?;
            let instance = DetourInstance::new(g.clone(), inst.s, inst.t, inst.k)?;
            let (problem, found) = if exact {
                let cfg = oracle_config(&oracle, &g)?;
                let decide = |h: &Graph, s, t, k| {
                    Ok(solve_exact_detour(&DetourInstance::new(h.clone(), s, t, k)?, &cfg)?.answer)
                };
                (Problem::ExactDetour, search_to_decision(&instance, Problem::ExactDetour, decide)?)
            } else {
                if g.is_directed() {
                    return Err(Error::Input("Longest Detour is only supported on undirected graphs".into()));
                }
                (Problem::LongestDetour, search_to_decision(&instance, Problem::LongestDetour, longest_detour_decision)?)
            };
            let d = shortest_path(&g, inst.s, inst.t).map(|p| p.len());
            if let (Some(p), Some(d)) = (&found.path, d) {
                p.validate_st(&g, inst.s, inst.t)?;
                if !problem.accepts(p.len(), d, inst.k) {
                    return Err(Error::Consistency(format!("constructed path has length {}", p.len())));
                }
            }
            let doc = json!({
                "schema": 1,
                "problem": problem,
                "answer": if found.path.is_some() { "yes" } else { "no" },
                "k": inst.k,
                "distance": d,
                "witness": witness_json(found.path.as_ref()),
                "stats": { "decision_calls": found.decision_calls, "edges": g.m(), "experimental": exact },
            });
            (Report::json(doc, found.path.is_some()), out.output)
        }
        Command::ExactPath { graph, s, t, len, oracle, out } => {
            let g = read_graph(&graph)?;
            let cfg = oracle_config(&oracle, &g)?;
            let start = std::time::Instant::now();
            let res = exact_path_query(&g, s, t, len, &cfg, 0)?;
            if let Some(p) = &res.path {
                p.validate_st(&g, s, t)?;
            }
            let (method, trials) = match res.method {
                Method::Trivial => ("trivial", 0),
                Method::Exhaustive => ("exhaustive", 0),
                Method::ColorCoding { trials_run, .. } => ("color-coding", trials_run),
            };
            let doc = json!({
                "schema": 1,
                "problem": "exact-path",
                "answer": if res.path.is_some() { "yes" } else { "no" },
                "len": len,
                "witness": witness_json(res.path.as_ref()),
                "stats": { "method": method, "trials": trials, "seed": cfg.seed, "delta": cfg.delta,
                           "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 },
            });
            (Report::json(doc, res.path.is_some()), out.output)
        }
        Command::RelevantPart { graph, s, t, out } => {
            let g = read_graph(&graph)?;
            let rel = relevant_part(&g, s, t)?;
            let edges: Vec<(Vertex, Vertex)> =
                rel.graph.edges().iter().map(|&(a, b)| (rel.host(a), rel.host(b))).collect();
            let doc = json!({ "schema": 1, "vertices": rel.to_host, "edges": edges });
            (Report::json(doc, true), out.output)
        }
        Command::Treewidth { graph, strategy, exact, td_out, validate, out } => {
            let g = read_graph(&graph)?;
            if let Some(file) = validate {
                let text = std::fs::read_to_string(&file).map_err(|e| Error::Input(format!("{}: {e}", file.display())))?;
                let (td, _) = parse_td(&text)?;
                let report = validate_decomposition(&g, &td)?;
                let doc = json!({
                    "schema": 1,
                    "valid": report.is_valid(),
                    "width": td.width(),
                    "uncovered_vertex": report.uncovered_vertex,
                    "uncovered_edge": report.uncovered_edge,
                    "disconnected_vertex": report.disconnected_vertex,
                });
                return Ok((Report::json(doc, report.is_valid()), out.output));
            }
            let td = heuristic_decomposition(&g, strategy.into());
            if let Some(file) = td_out {
                std::fs::write(&file, format_td(&td, g.n())).map_err(|e| Error::Input(format!("{}: {e}", file.display())))?;
            }
            let exact_width = if exact { Some(exact_treewidth_small(&g, DEFAULT_EXACT_BUDGET)?.width()) } else { None };
            let doc = json!({
                "schema": 1,
                "n": g.n(),
                "m": g.m(),
                "lower_bound": treewidth_lower_bound(&g),
                "upper_bound": td.width(),
                "exact": exact_width,
                "bags": td.node_count(),
            });
            (Report::json(doc, true), out.output)
        }
        Command::Gen { family, out } => {
            let g = match family {
                GenFamily::K4 { counts } => {
                    let counts: [usize; 6] = counts.try_into().map_err(|_| Error::Input("--counts needs six values".into()))?;
                    gen_subdivided_k4(counts).0
                }
                GenFamily::Cycle { n } => generators::cycle(n),
                GenFamily::Path { n } => generators::path_graph(n),
                GenFamily::Grid { rows, cols } => generators::grid(rows, cols),
                GenFamily::Complete { n } => generators::complete(n),
            };
            (Report { body: format_graph(&g), code: 0 }, out.output)
        }
        Command::VerifyCert { case, file, out } => {
            let cert = match (case, file) {
                (Some(c), _) => builtin_certificate(match c {
                    CaseArg::A => Case::A,
                    CaseArg::B => Case::B,
                    CaseArg::C => Case::C,
                }),
                (None, Some(f)) => {
                    let text = std::fs::read_to_string(&f).map_err(|e| Error::Input(format!("{}: {e}", f.display())))?;
                    DualCertificate::from_json(&text)?
                }
                (None, None) => return Err(Error::Input("give --case or --file".into())),
            };
            let report = verify_certificate(&cert)?;
            let residual: serde_json::Map<String, Value> =
                report.residual.iter().map(|(v, x)| (v.clone(), json!(x.to_string()))).collect();
            let doc = json!({
                "schema": 1,
                "case": report.case,
                "verified": report.verified(),
                "objective": report.objective.to_string(),
                "residual": residual,
                "nonnegative": report.nonnegative,
                "no_long_path_positive": report.no_long_path_positive,
            });
            if !report.verified() {
                eprintln!("certificate rejected; residual: {}", serde_json::to_string(&residual).unwrap());
            }
            (Report::json(doc, report.verified()), out.output)
        }
        Command::Oracle { inst, max_paths, out } => {
            let g = read_graph(&inst.graph)?;
            g.check_vertex(inst.s)?;
            g.check_vertex(inst.t)?;
            let paths = enumerate_st_paths(&g, inst.s, inst.t, max_paths)?;
            let mut lengths: Vec<usize> = paths.iter().map(Path::len).collect();
            lengths.sort_unstable();
            lengths.dedup();
            let d = lengths.first().copied();
            let longest = paths.iter().max_by_key(|p| p.len());
            let mut doc = json!({
                "schema": 1,
                "problem": "oracle",
                "distance": d,
                "paths": paths.len(),
                "lengths": lengths,
                "longest": witness_json(longest),
            });
            let mut success = d.is_some();
            if let (Some(k), Some(d)) = (inst.k, d) {
                let longest_ok = lengths.last().is_some_and(|&m| m >= d + k);
                let exact_ok = lengths.contains(&(d + k));
                doc["k"] = json!(k);
                doc["longest_detour"] = json!(if longest_ok { "yes" } else { "no" });
                doc["exact_detour"] = json!(if exact_ok { "yes" } else { "no" });
                success = longest_ok;
            } else if inst.k.is_some() {
                doc["longest_detour"] = json!("no");
                doc["exact_detour"] = json!("no");
            }
            (Report::json(doc, success), out.output)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok((report, target)) => {
            match target {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &report.body) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", report.body),
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
