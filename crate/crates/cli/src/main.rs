//! Command line front end: generate graphs, solve, verify, query the oracle.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use linforest::coloring::ListAssignment;
use linforest::families::{self, MarkedGraph};
use linforest::oracle::{self, Mode, Property, Query, SearchOptions};
use linforest::reducer::{solve_with, SolverOptions, MAX_PATH_LEN};
use linforest::{io, Error, PlanarGraph};

#[derive(Parser)]
#[command(
    name = "linforest",
    version,
    about = "Split planar graphs of girth 6 into two linear forests with short paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from one of the built-in families.
    Gen(GenArgs),
    /// Color one or more graphs from their lists.
    Solve(SolveArgs),
    /// Check a coloring and print its metrics.
    Verify(VerifyArgs),
    /// Exact search for a coloring with a property.
    Oracle(OracleArgs),
    /// Print structural statistics for graphs.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cycle,
    Hex,
    Random,
    Subdivided,
    /// Lower-bound graph built from gadgets.
    #[value(alias = "G")]
    G,
    GadgetA,
    GadgetB,
    Girth5,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write DOT instead of JSON.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct SolveArgs {
    /// Graph files.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// List file; lists {0,1} everywhere when absent.
    #[arg(long, conflicts_with = "random_lists")]
    lists: Option<PathBuf>,
    /// Random 2-subsets of {0,..,4}, seeded.
    #[arg(long)]
    random_lists: Option<u64>,
    /// Output file, or a directory when several inputs are given.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Re-check the result independently and print its metrics.
    #[arg(long)]
    verify: bool,
    /// Write one line per removal step to this file ("-" for standard error).
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    trace: Option<String>,
    /// Write the solver counters as JSON to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Components up to this size go to the exact search.
    #[arg(long, default_value_t = 14)]
    threshold: usize,
    #[arg(long)]
    budget: Option<u64>,
    /// Also write the colored graph as DOT next to the output.
    #[arg(long)]
    dot: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    coloring: PathBuf,
    #[arg(long)]
    lists: Option<PathBuf>,
    #[arg(long, default_value_t = MAX_PATH_LEN)]
    max_len: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    Good,
    PkFree,
    Fragmented,
    Defective,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exists,
    Forall,
}

#[derive(Args)]
struct OracleArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    property: PropertyArg,
    /// Path length bound for `good`, or k for the other properties.
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "exists")]
    mode: ModeArg,
    #[arg(long)]
    lists: Option<PathBuf>,
    #[arg(long)]
    budget: Option<u64>,
    /// Check complete colorings only, with no propagation.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Also solve with lists {0,1} and include the solver counters.
    #[arg(long)]
    solve: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// Error with the exit code it maps to.
struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn usage(msg: impl Into<String>) -> Fail {
        Fail {
            code: 64,
            msg: msg.into(),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match &e {
            Error::GirthTooSmall(_)
            | Error::InvalidLists(_)
            | Error::ListTooSmall(_)
            | Error::PreconditionViolated { .. }
            | Error::NotPlanar
            | Error::UncoloredVertex(_) => 2,
            Error::AssumptionViolated { .. } | Error::RuleDeadlock(_) => 3,
            Error::BudgetExceeded(_) => 4,
            Error::Format(_) | Error::InconsistentRotation(_) | Error::UnknownVertex(_) | Error::BadParameter(_) => 64,
            _ => 1,
        };
        let msg = match &e {
            Error::AssumptionViolated { stage, witness } => {
                json!({"format": io::FORMAT, "error": "assumption", "stage": stage, "witness": witness}).to_string()
            }
            _ => e.to_string(),
        };
        Fail { code, msg }
    }
}

type Run<T = ()> = Result<T, Fail>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Stats(a) => stats(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Run {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Fail::usage(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Fail {
                code: 1,
                msg: e.to_string(),
            })
        }
    }
}

fn load_graph(path: &Path) -> Run<MarkedGraph> {
    io::graph_from_json(&read(path)?).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn need(v: Option<usize>, name: &str) -> Run<usize> {
    v.ok_or_else(|| Fail::usage(format!("this family needs --{name}")))
}

fn gen(a: GenArgs) -> Run {
    let plain = |g: PlanarGraph| MarkedGraph {
        graph: g,
        marks: BTreeMap::new(),
    };
    let m = match a.family {
        Family::Cycle => plain(families::cycle(need(a.n, "n")?)?),
        Family::Hex => plain(families::hex_patch(need(a.rows, "rows")?, need(a.cols, "cols")?)?),
        Family::Random => plain(families::random_planar_girth6(need(a.n, "n")?, a.seed)?),
        Family::Subdivided => plain(families::random_subdivided(need(a.n, "n")?, a.seed)?),
        Family::G => plain(families::lower_bound_g(need(a.t, "t")?)?),
        Family::GadgetA => families::gadget_a(need(a.t, "t")?)?,
        Family::GadgetB => families::gadget_b(need(a.t, "t")?)?,
        Family::Girth5 => families::girth5_example()?,
    };
    eprintln!(
        "generated {} vertices, {} edges",
        m.graph.vertex_count(),
        m.graph.edge_count()
    );
    let text = if a.dot {
        io::to_dot(&m.graph, None)
    } else {
        io::graph_to_json(&m.graph, &m.marks)
    };
    write_out(a.out.as_deref(), &text)
}

fn load_lists(path: Option<&Path>, random: Option<u64>, g: &PlanarGraph) -> Run<ListAssignment> {
    Ok(match (path, random) {
        (Some(p), _) => io::lists_from_json(&read(p)?).map_err(|e| Fail::usage(format!("{}: {e}", p.display())))?,
        (None, Some(seed)) => families::random_lists(g, 5, seed)?,
        (None, None) => ListAssignment::uniform(g, &[0, 1]),
    })
}

fn solve(a: SolveArgs) -> Run {
    let many = a.inputs.len() > 1;
    if many {
        if let Some(dir) = &a.out {
            fs::create_dir_all(dir).map_err(|e| Fail::usage(format!("{}: {e}", dir.display())))?;
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.max(1))
        .build()
        .map_err(|e| Fail::usage(e.to_string()))?;
    let results: Vec<Run> = pool.install(|| a.inputs.par_iter().map(|input| solve_one(&a, input, many)).collect());
    let mut worst = None;
    for (input, r) in a.inputs.iter().zip(results) {
        if let Err(f) = r {
            if many {
                eprintln!("{}: {}", input.display(), f.msg);
            }
            worst = Some(worst.map_or(f.code, |c: u8| c.max(f.code)));
            if !many {
                return Err(f);
            }
        }
    }
    match worst {
        Some(code) => Err(Fail {
            code,
            msg: "some inputs failed".into(),
        }),
        None => Ok(()),
    }
}

fn solve_one(a: &SolveArgs, input: &Path, many: bool) -> Run {
    let m = load_graph(input)?;
    let g = &m.graph;
    let lists = load_lists(a.lists.as_deref(), a.random_lists, g)?;
    let mut opts = SolverOptions {
        threshold: a.threshold,
        trace: a.trace.is_some(),
        ..SolverOptions::default()
    };
    if let Some(b) = a.budget {
        opts.oracle_budget = b;
    }
    let started = std::time::Instant::now();
    let sol = solve_with(g, &lists, opts)?;
    eprintln!(
        "{}: {} vertices colored in {:.3}s",
        input.display(),
        g.vertex_count(),
        started.elapsed().as_secs_f64()
    );
    let out = match (&a.out, many) {
        (Some(dir), true) => {
            let stem = input
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Some(dir.join(format!("{stem}.coloring.json")))
        }
        (out, _) => out.clone(),
    };
    if let Some(t) = &a.trace {
        let lines: String = sol.trace.iter().map(|l| format!("{l}\n")).collect();
        match t.as_str() {
            "-" => eprint!("{lines}"),
            file if !many => fs::write(file, lines).map_err(|e| Fail::usage(format!("{file}: {e}")))?,
            file => {
                let stem = input
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                let path = Path::new(file).join(format!("{stem}.trace"));
                fs::create_dir_all(file)
                    .and_then(|_| fs::write(&path, lines))
                    .map_err(|e| Fail::usage(e.to_string()))?;
            }
        }
    }
    if let Some(p) = &a.report {
        let path = if many {
            p.join(format!(
                "{}.report.json",
                input.file_stem().unwrap_or_default().to_string_lossy()
            ))
        } else {
            p.clone()
        };
        if many {
            fs::create_dir_all(p).map_err(|e| Fail::usage(e.to_string()))?;
        }
        write_out(Some(&path), &io::to_json(&sol.report))?;
    }
    if a.dot {
        let dot = io::to_dot(g, Some(&sol.coloring));
        match &out {
            Some(p) => write_out(Some(&p.with_extension("dot")), &dot)?,
            None => eprint!("{dot}"),
        }
    }
    write_out(out.as_deref(), &io::coloring_to_json(&sol.coloring))?;
    if a.verify {
        let report = io::verify(g, &sol.coloring, Some(&lists), MAX_PATH_LEN)?;
        eprint!("{}", io::to_json(&report));
        if !report.good {
            return Err(Fail {
                code: 1,
                msg: format!("{}: verification failed", input.display()),
            });
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> Run {
    let m = load_graph(&a.graph)?;
    let c = io::coloring_from_json(&read(&a.coloring)?).map_err(|e| Fail::usage(e.to_string()))?;
    let lists = match &a.lists {
        Some(p) => Some(load_lists(Some(p), None, &m.graph)?),
        None => None,
    };
    let report = io::verify(&m.graph, &c, lists.as_ref(), a.max_len)?;
    write_out(None, &io::to_json(&report))?;
    if report.good {
        Ok(())
    } else {
        Err(Fail {
            code: 1,
            msg: "coloring is not good".into(),
        })
    }
}

fn run_oracle(a: OracleArgs) -> Run {
    let m = load_graph(&a.graph)?;
    let g = &m.graph;
    let lists = load_lists(a.lists.as_deref(), None, g)?;
    let property = match a.property {
        PropertyArg::Good => Property::Good { max_len: a.k },
        PropertyArg::PkFree => Property::PkFree { k: a.k },
        PropertyArg::Fragmented => Property::Fragmented { k: a.k },
        PropertyArg::Defective => Property::Defective { k: a.k },
    };
    let mode = match a.mode {
        ModeArg::Exists => Mode::Exists,
        ModeArg::Forall => Mode::Forall,
    };
    let mut opts = SearchOptions {
        unpruned: a.no_prune,
        ..SearchOptions::default()
    };
    if let Some(b) = a.budget {
        opts.budget = b;
    }
    let out = oracle::search(g, &lists, Query { property, mode }, opts)?;
    eprintln!("searched {} nodes", out.nodes);
    match &out.witness {
        Some(c) => write_out(None, &io::coloring_to_json(c)),
        None => write_out(None, &format!("UNSAT nodes={}\n", out.nodes)),
    }
}

fn stats(a: StatsArgs) -> Run {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.max(1))
        .build()
        .map_err(|e| Fail::usage(e.to_string()))?;
    let rows: Vec<Run<serde_json::Value>> =
        pool.install(|| a.inputs.par_iter().map(|p| stats_one(p, a.solve)).collect());
    let mut text = String::new();
    for row in rows {
        text.push_str(&row?.to_string());
        text.push('\n');
    }
    write_out(None, &text)
}

fn stats_one(path: &Path, solve: bool) -> Run<serde_json::Value> {
    let g = load_graph(path)?.graph;
    let mut faces: BTreeMap<usize, usize> = BTreeMap::new();
    for f in g.faces() {
        *faces.entry(f.len()).or_default() += 1;
    }
    let max_degree = g.vertices().map(|v| g.degree(v)).max();
    let mut row = json!({
        "file": path.display().to_string(),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "girth": g.girth(),
        "min_degree": g.min_degree(),
        "max_degree": max_degree,
        "components": g.components().len(),
        "face_lengths": faces,
    });
    if solve {
        let started = std::time::Instant::now();
        match solve_with(&g, &ListAssignment::uniform(&g, &[0, 1]), SolverOptions::default()) {
            Ok(sol) => {
                row["seconds"] = json!(started.elapsed().as_secs_f64());
                row["report"] = serde_json::to_value(&sol.report).expect("report serializes");
            }
            Err(e) => row["solve_error"] = json!(e.to_string()),
        }
    }
    Ok(row)
}
