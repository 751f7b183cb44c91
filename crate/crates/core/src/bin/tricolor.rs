//! Command-line front end: generators, solvers, verification, reduction,
//! graph stats, and a benchmark harness.
//!
//! Exit codes: 0 colorable / success, 20 uncolorable (or a K4 found by
//! `reduce`), 1 usage or failed verification, 2 I/O or parse failure,
//! 3 precondition violation, 5 deadline exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use tricolor::domset::greedy_dominating_set;
use tricolor::generators::{
    gen_g2, gen_gn, gen_gnm, gen_h1, gen_h2, gen_hphi, sample_random_instance, GeneratorLayout,
    SampleProfile,
};
use tricolor::graph::{connected_components, metrics, Graph};
use tricolor::io;
use tricolor::reduce::{irreducibility_violation, reduce_to_irreducible, ReduceOutcome};
use tricolor::solver::{
    find_articulation_neighborhood, oracle_3color, solve_articulation, solve_auto, solve_diam2,
    solve_diam3, solve_with_seed_set, verify_coloring, Answer, SolveError, SolveOpts, SolveReport,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_TIMEOUT: u8 = 5;
const EXIT_UNCOLORABLE: u8 = 20;

#[derive(Parser)]
#[command(name = "tricolor", version, about = "Exact 3-coloring toolkit for small-diameter graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph family instance as a DIMACS file.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Decide 3-colorability of a DIMACS graph and emit a coloring file.
    Solve {
        /// Input DIMACS graph.
        input: PathBuf,
        #[command(flatten)]
        run: RunOpts,
        /// Strategy; `auto` reduces first and dispatches by diameter.
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        /// Write the coloring file here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring file against a graph.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
    },
    /// Print structural stats of a graph.
    Stats { graph: PathBuf },
    /// Reduce a graph to its irreducible core, writing the trace.
    Reduce {
        input: PathBuf,
        /// Output DIMACS file for the reduced graph.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Output file for the reduction trace.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Sweep a generator family, solve each instance, write a CSV.
    Bench {
        #[arg(long, value_enum)]
        family: BenchFamily,
        /// Inclusive parameter range `lo..hi` (k for gn, m for gnm).
        #[arg(long)]
        range: Option<String>,
        /// Variable count for formula families.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Clause count for random formulas.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Number of random instances.
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ProfileArg::Small)]
        profile: ProfileArg,
        #[command(flatten)]
        run: RunOpts,
        /// Output CSV path.
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args, Clone, Copy)]
struct RunOpts {
    /// Worker threads for seed enumeration (1 = sequential).
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// Force sequential search order; output is byte-reproducible.
    #[arg(long)]
    deterministic: bool,
    /// Per-solve deadline in milliseconds.
    #[arg(long)]
    timeout_ms: Option<u64>,
}

impl RunOpts {
    fn solve_opts(&self) -> SolveOpts {
        SolveOpts {
            deterministic: self.deterministic,
            parallel: self.parallel,
            deadline: self
                .timeout_ms
                .map(|ms| Instant::now() + Duration::from_millis(ms)),
        }
    }
}

#[derive(Subcommand)]
enum GenFamily {
    /// Extremal diameter-2 family on 4k^2+1 vertices (k >= 3).
    Gn {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Formula-independent reduction skeleton.
    Gnm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Reduction graph of a 3-CNF formula (DIMACS CNF input).
    Hphi {
        #[arg(long)]
        cnf: PathBuf,
        #[command(flatten)]
        out: GenOut,
    },
    /// First amplification of the reduction graph (eps in [1/2, 1)).
    H1 {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        out: GenOut,
    },
    /// Block amplification of an arbitrary connected graph (eps in [0, 1/2)).
    G2 {
        /// Base graph in DIMACS format.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        out: GenOut,
    },
    /// Column-widened reduction graph (eps in [1/3, 1/2)).
    H2 {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        out: GenOut,
    },
    /// Seeded random test instance.
    Random {
        #[arg(long, value_enum, default_value_t = ProfileArg::Small)]
        profile: ProfileArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: GenOut,
    },
}

#[derive(Args)]
struct GenOut {
    /// Output DIMACS path (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the layout dump to `<output>.layout`.
    #[arg(long)]
    layout: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Diam2,
    Artic,
    Diam3,
    Seed,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Small,
    Diam2,
    Artic,
}

impl From<ProfileArg> for SampleProfile {
    fn from(p: ProfileArg) -> SampleProfile {
        match p {
            ProfileArg::Small => SampleProfile::Small,
            ProfileArg::Diam2 => SampleProfile::Diam2,
            ProfileArg::Artic => SampleProfile::Artic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFamily {
    Gn,
    Gnm,
    Hphi,
    Random,
}

/// Failure that already knows its exit code.
struct CmdError {
    code: u8,
    message: String,
}

impl CmdError {
    fn new(code: u8, message: impl Into<String>) -> CmdError {
        CmdError {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = Result<u8, CmdError>;

fn io_err(path: &Path, e: impl std::fmt::Display) -> CmdError {
    CmdError::new(EXIT_IO, format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<String, CmdError> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<(), CmdError> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn read_graph(path: &Path) -> Result<Graph, CmdError> {
    let text = read_file(path)?;
    let (graph, duplicates) = io::read_dimacs_graph(&text).map_err(|e| io_err(path, e))?;
    if duplicates > 0 {
        eprintln!(
            "warning: {} duplicate edge line(s) in {}",
            duplicates,
            path.display()
        );
    }
    Ok(graph)
}

fn solve_error(e: SolveError) -> CmdError {
    let code = match e {
        SolveError::Timeout => EXIT_TIMEOUT,
        _ => EXIT_PRECONDITION,
    };
    CmdError::new(code, e.to_string())
}

fn emit_generated(graph: &Graph, layout: Option<&GeneratorLayout>, out: &GenOut) -> CmdResult {
    let text = io::write_dimacs_graph(graph);
    match &out.output {
        Some(path) => {
            write_file(path, &text)?;
            if out.layout {
                match layout {
                    Some(l) => {
                        let mut layout_path = path.clone().into_os_string();
                        layout_path.push(".layout");
                        write_file(Path::new(&layout_path), &io::write_layout(l))?;
                    }
                    None => {
                        return Err(CmdError::new(
                            EXIT_USAGE,
                            "--layout is not available for this family",
                        ))
                    }
                }
            }
            println!(
                "wrote {} ({} vertices, {} edges)",
                path.display(),
                graph.vertex_count(),
                graph.edge_count()
            );
        }
        None => {
            if out.layout {
                return Err(CmdError::new(EXIT_USAGE, "--layout requires -o"));
            }
            print!("{text}");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_gen(family: GenFamily) -> CmdResult {
    let gen_err =
        |e: tricolor::generators::GenError| CmdError::new(EXIT_PRECONDITION, e.to_string());
    match family {
        GenFamily::Gn { k, out } => {
            let (g, layout) = gen_gn(k).map_err(gen_err)?;
            emit_generated(&g, Some(&layout), &out)
        }
        GenFamily::Gnm { n, m, out } => {
            if n == 0 || m == 0 {
                return Err(CmdError::new(
                    EXIT_PRECONDITION,
                    "gnm needs --n >= 1 and --m >= 1",
                ));
            }
            let (g, layout) = gen_gnm(n, m);
            emit_generated(&g, Some(&layout), &out)
        }
        GenFamily::Hphi { cnf, out } => {
            let text = read_file(&cnf)?;
            let f = io::read_dimacs_cnf(&text).map_err(|e| io_err(&cnf, e))?;
            let (g, layout) = gen_hphi(&f).map_err(gen_err)?;
            emit_generated(&g, Some(&layout), &out)
        }
        GenFamily::H1 { cnf, eps, out } => {
            let text = read_file(&cnf)?;
            let f = io::read_dimacs_cnf(&text).map_err(|e| io_err(&cnf, e))?;
            let (g, layout) = gen_h1(&f, eps).map_err(gen_err)?;
            emit_generated(&g, Some(&layout), &out)
        }
        GenFamily::G2 { graph, eps, out } => {
            let base = read_graph(&graph)?;
            let (g, layout) = gen_g2(&base, eps).map_err(gen_err)?;
            emit_generated(&g, Some(&layout), &out)
        }
        GenFamily::H2 { cnf, eps, out } => {
            let text = read_file(&cnf)?;
            let f = io::read_dimacs_cnf(&text).map_err(|e| io_err(&cnf, e))?;
            let (g, layout) = gen_h2(&f, eps).map_err(gen_err)?;
            emit_generated(&g, Some(&layout), &out)
        }
        GenFamily::Random { profile, seed, out } => {
            let g = sample_random_instance(seed, profile.into());
            emit_generated(&g, None, &out)
        }
    }
}

fn run_strategy(
    g: &Graph,
    strategy: StrategyArg,
    opts: &SolveOpts,
) -> Result<SolveReport, CmdError> {
    match strategy {
        StrategyArg::Auto => solve_auto(g, opts).map_err(solve_error),
        StrategyArg::Diam2 => solve_diam2(g, opts).map_err(solve_error),
        StrategyArg::Artic => {
            let v0 = find_articulation_neighborhood(g).ok_or_else(|| {
                CmdError::new(EXIT_PRECONDITION, "graph has no articulation neighborhood")
            })?;
            solve_articulation(g, v0, opts).map_err(solve_error)
        }
        StrategyArg::Diam3 => solve_diam3(g, opts).map_err(solve_error),
        StrategyArg::Seed => {
            let ds = greedy_dominating_set(g)
                .map_err(|e| CmdError::new(EXIT_PRECONDITION, e.to_string()))?;
            solve_with_seed_set(g, &ds, opts).map_err(solve_error)
        }
        StrategyArg::Oracle => {
            let start = Instant::now();
            let answer = match oracle_3color(g).map_err(solve_error)? {
                Some(c) => Answer::Colorable(c),
                None => Answer::NotColorable,
            };
            Ok(SolveReport {
                answer,
                strategy: tricolor::Strategy::Trivial,
                seed_size: 0,
                enumeration_count: 0,
                wall_time: start.elapsed(),
            })
        }
    }
}

fn cmd_solve(
    input: PathBuf,
    run: RunOpts,
    strategy: StrategyArg,
    output: Option<PathBuf>,
) -> CmdResult {
    let g = read_graph(&input)?;
    let report = run_strategy(&g, strategy, &run.solve_opts())?;
    let text = io::write_coloring_report(&report);
    match &output {
        Some(path) => {
            write_file(path, &text)?;
            println!(
                "{} strategy={} seed_size={} enumerations={} wall_ms={}",
                if report.answer.is_colorable() {
                    "COLORABLE"
                } else {
                    "UNCOLORABLE"
                },
                report.strategy,
                report.seed_size,
                report.enumeration_count,
                report.wall_time.as_millis()
            );
        }
        None => print!("{text}"),
    }
    Ok(if report.answer.is_colorable() {
        EXIT_OK
    } else {
        EXIT_UNCOLORABLE
    })
}

fn cmd_verify(graph: PathBuf, coloring: PathBuf) -> CmdResult {
    let g = read_graph(&graph)?;
    let text = read_file(&coloring)?;
    let parsed = io::read_coloring(&text).map_err(|e| io_err(&coloring, e))?;
    let Some(c) = parsed else {
        return Err(CmdError::new(
            EXIT_PRECONDITION,
            "coloring file declares UNCOLORABLE; nothing to verify",
        ));
    };
    if c.len() != g.vertex_count() {
        return Err(CmdError::new(
            EXIT_PRECONDITION,
            format!(
                "vertex count mismatch: graph has {}, coloring has {}",
                g.vertex_count(),
                c.len()
            ),
        ));
    }
    if verify_coloring(&g, &c) {
        println!("PROPER");
        Ok(EXIT_OK)
    } else {
        println!("IMPROPER");
        Ok(EXIT_USAGE)
    }
}

fn cmd_stats(graph: PathBuf) -> CmdResult {
    let g = read_graph(&graph)?;
    let m = metrics(&g);
    println!("vertices {}", g.vertex_count());
    println!("edges {}", g.edge_count());
    println!("components {}", connected_components(&g).len());
    match (m.diameter, m.radius) {
        (Some(d), Some(r)) => println!("diameter {d}\nradius {r}"),
        _ => println!("diameter inf\nradius inf"),
    }
    println!("min_degree {}", m.min_degree);
    println!("max_degree {}", m.max_degree);
    println!("triangle_free {}", tricolor::graph::is_triangle_free(&g));
    match irreducibility_violation(&g) {
        None => println!("irreducible true"),
        Some(reason) => println!("irreducible false ({reason})"),
    }
    match find_articulation_neighborhood(&g) {
        Some(v) => println!("articulation_neighborhood vertex {}", v + 1),
        None => println!("articulation_neighborhood none"),
    }
    Ok(EXIT_OK)
}

fn cmd_reduce(input: PathBuf, output: Option<PathBuf>, trace: Option<PathBuf>) -> CmdResult {
    let g = read_graph(&input)?;
    let (code, graph, events) = match reduce_to_irreducible(&g) {
        ReduceOutcome::Irreducible { graph, trace } => (EXIT_OK, Some(graph), trace.events),
        ReduceOutcome::K4Found { witness, trace } => {
            println!(
                "K4 on vertices {} {} {} {}",
                witness[0] + 1,
                witness[1] + 1,
                witness[2] + 1,
                witness[3] + 1
            );
            (EXIT_UNCOLORABLE, None, trace.events)
        }
    };
    if let Some(path) = &trace {
        write_file(path, &io::write_trace(&events))?;
    }
    if let Some(graph) = graph {
        let text = io::write_dimacs_graph(&graph);
        match &output {
            Some(path) => {
                write_file(path, &text)?;
                println!(
                    "reduced to {} vertices, {} edges ({} events)",
                    graph.vertex_count(),
                    graph.edge_count(),
                    events.len()
                );
            }
            None => print!("{text}"),
        }
    }
    Ok(code)
}

fn parse_range(range: &str) -> Result<(usize, usize), CmdError> {
    let parts: Vec<&str> = range.split("..").collect();
    if parts.len() == 2 {
        if let (Ok(lo), Ok(hi)) = (parts[0].parse(), parts[1].parse()) {
            if lo <= hi {
                return Ok((lo, hi));
            }
        }
    }
    Err(CmdError::new(
        EXIT_USAGE,
        format!("bad range '{range}'; expected 'lo..hi'"),
    ))
}

struct BenchRow {
    family: String,
    params: String,
    graph: Graph,
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    family: BenchFamily,
    range: Option<String>,
    n: usize,
    m: usize,
    count: usize,
    seed: u64,
    profile: ProfileArg,
    run: RunOpts,
    output: PathBuf,
) -> CmdResult {
    use rand::SeedableRng;
    let mut instances: Vec<BenchRow> = Vec::new();
    match family {
        BenchFamily::Gn => {
            let (lo, hi) = parse_range(range.as_deref().unwrap_or("3..6"))?;
            for k in lo..=hi {
                let (g, _) =
                    gen_gn(k).map_err(|e| CmdError::new(EXIT_PRECONDITION, e.to_string()))?;
                instances.push(BenchRow {
                    family: "gn".into(),
                    params: format!("k={k}"),
                    graph: g,
                });
            }
        }
        BenchFamily::Gnm => {
            let (lo, hi) = parse_range(range.as_deref().unwrap_or("1..3"))?;
            for mm in lo..=hi {
                let (g, _) = gen_gnm(n, mm);
                instances.push(BenchRow {
                    family: "gnm".into(),
                    params: format!("n={n};m={mm}"),
                    graph: g,
                });
            }
        }
        BenchFamily::Hphi => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for i in 0..count {
                let f = random_formula(&mut rng, n.max(3), m);
                let (g, _) =
                    gen_hphi(&f).map_err(|e| CmdError::new(EXIT_PRECONDITION, e.to_string()))?;
                instances.push(BenchRow {
                    family: "hphi".into(),
                    params: format!("n={};m={m};seed={seed};i={i}", n.max(3)),
                    graph: g,
                });
            }
        }
        BenchFamily::Random => {
            for i in 0..count {
                let g = sample_random_instance(seed.wrapping_add(i as u64), profile.into());
                instances.push(BenchRow {
                    family: "random".into(),
                    params: format!(
                        "profile={};seed={}",
                        match profile {
                            ProfileArg::Small => "small",
                            ProfileArg::Diam2 => "diam2",
                            ProfileArg::Artic => "artic",
                        },
                        seed.wrapping_add(i as u64)
                    ),
                    graph: g,
                });
            }
        }
    }

    let mut csv = String::from("# schema=1\n");
    csv.push_str(
        "family,params,n,m,delta,Delta,diameter,strategy,seed_size,enumeration_count,wall_ms,verdict\n",
    );
    for row in &instances {
        let met = metrics(&row.graph);
        let diameter = met
            .diameter
            .map(|d| d.to_string())
            .unwrap_or_else(|| "inf".into());
        let opts = run.solve_opts();
        let outcome = solve_auto(&row.graph, &opts);
        let (strategy, seed_size, enumerations, wall_ms, verdict) = match outcome {
            Ok(report) => (
                report.strategy.to_string(),
                report.seed_size.to_string(),
                report.enumeration_count.to_string(),
                if run.deterministic {
                    0
                } else {
                    report.wall_time.as_millis()
                },
                if report.answer.is_colorable() {
                    "COLORABLE"
                } else {
                    "UNCOLORABLE"
                }
                .to_string(),
            ),
            Err(SolveError::Timeout) => ("-".into(), "-".into(), "-".into(), 0, "TIMEOUT".into()),
            Err(e) => return Err(solve_error(e)),
        };
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            row.family,
            row.params,
            row.graph.vertex_count(),
            row.graph.edge_count(),
            met.min_degree,
            met.max_degree,
            diameter,
            strategy,
            seed_size,
            enumerations,
            wall_ms,
            verdict
        ));
    }
    write_file(&output, &csv)?;
    println!("wrote {} ({} rows)", output.display(), instances.len());
    Ok(EXIT_OK)
}

fn random_formula(
    rng: &mut rand_chacha::ChaCha8Rng,
    nvars: usize,
    m: usize,
) -> tricolor::sat::CnfFormula {
    use rand::Rng;
    use tricolor::sat::{CnfFormula, Literal};
    let mut clauses = Vec::new();
    for _ in 0..m {
        let mut vars: Vec<u32> = Vec::new();
        while vars.len() < 3 {
            let v = rng.gen_range(0..nvars as u32);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let lits: Vec<Literal> = vars
            .iter()
            .map(|&var| Literal {
                var,
                positive: rng.gen_bool(0.5),
            })
            .collect();
        clauses.push([lits[0], lits[1], lits[2]]);
    }
    CnfFormula::new(nvars, clauses)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            // Help and version requests are not usage errors.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Gen { family } => cmd_gen(family),
        Command::Solve {
            input,
            run,
            strategy,
            output,
        } => cmd_solve(input, run, strategy, output),
        Command::Verify { graph, coloring } => cmd_verify(graph, coloring),
        Command::Stats { graph } => cmd_stats(graph),
        Command::Reduce {
            input,
            output,
            trace,
        } => cmd_reduce(input, output, trace),
        Command::Bench {
            family,
            range,
            n,
            m,
            count,
            seed,
            profile,
            run,
            output,
        } => cmd_bench(family, range, n, m, count, seed, profile, run, output),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
