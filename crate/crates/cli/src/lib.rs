//! The `emptri` command line.
//!
//! Exit codes: 0 success or feasible, 1 infeasible or a failed check, 2
//! malformed input or usage error, 3 search budget exhausted.

pub mod render;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use emptri_core::format::{self, PointFile};
use emptri_core::random::{rng_from_seed, random_general_position};
use emptri_core::solver::{
    self, decide_hypergraph, parse_solver_output, Budget, ModelCheck, SearchConfig, SolverAnswer, Verdict,
};
use emptri_core::{
    build_hypergraph, check_cross_pairs, cyclic_coloring, generate, validate_general_position, verify_horton,
    Coloring, Error, GeneralPosition, PointSet, Scanner,
};

use render::{render, RenderSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "emptri", version, about = "Almost-empty monochromatic triangles in colored point sets")]
struct Cli {
    /// Print a JSON report on stdout instead of a human summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a point set.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Color a point set.
    #[command(subcommand)]
    Color(ColorCommand),
    /// List monochromatic triangles with few interior points.
    Scan(ScanArgs),
    /// Decide whether a coloring avoiding small monochromatic triangles exists.
    Solve(SolveArgs),
    /// Check a structural property of a point set.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Draw a point set as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Deterministic Horton set with x-coordinates 0..n.
    Horton {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform lattice points in general position (ChaCha8 PRNG).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        grid: i64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum ColorCommand {
    /// Cyclic coloring by x-rank; the input must be x-sorted.
    Cyclic {
        file: PathBuf,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct ScanArgs {
    file: PathBuf,
    #[arg(long)]
    s: u32,
    /// Standalone `index color` file; otherwise the third column is used.
    #[arg(long)]
    coloring: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long)]
    c: u32,
    #[arg(long)]
    s: u32,
    /// Time limit in seconds.
    #[arg(long)]
    budget: Option<f64>,
    /// Limit on branching nodes.
    #[arg(long)]
    nodes: Option<u64>,
    /// Write the instance as DIMACS CNF.
    #[arg(long)]
    export_cnf: Option<PathBuf>,
    /// Check an external solver's output instead of searching.
    #[arg(long)]
    check_model: Option<PathBuf>,
    /// Write the witness coloring as a colored point file.
    #[arg(long)]
    witness_out: Option<PathBuf>,
    /// Branch on the point with fewest remaining colors.
    #[arg(long)]
    dynamic_order: bool,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Recursive Horton certificate plus the cross-pair property.
    Horton { file: PathBuf },
    /// Lists every collinear triple.
    GeneralPosition { file: PathBuf },
}

#[derive(Debug, Args)]
struct RenderArgs {
    file: PathBuf,
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Outline the first monochromatic triangle with at most this many
    /// interior points.
    #[arg(long)]
    highlight_s: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
enum Report {
    Gen {
        kind: &'static str,
        n: usize,
        out: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        points: Option<Vec<[String; 2]>>,
    },
    Color {
        scheme: &'static str,
        n: usize,
        c: u32,
        colors: Vec<u32>,
        out: Option<String>,
    },
    Scan {
        n: usize,
        s: u32,
        found: bool,
        mono_count: u64,
        qualifying_count: u64,
        first_hit: Option<HitReport>,
        min_interior_mono: Option<u32>,
        per_color_min: std::collections::BTreeMap<String, u32>,
        elapsed_ms: f64,
    },
    Solve {
        n: usize,
        c: u32,
        s: u32,
        edges: usize,
        verdict: &'static str,
        nodes: u64,
        forced: u64,
        elapsed_ms: f64,
        witness: Option<Vec<u32>>,
        cnf: Option<CnfReport>,
    },
    CheckModel {
        n: usize,
        c: u32,
        s: u32,
        edges: usize,
        result: &'static str,
        detail: Option<String>,
        witness: Option<Vec<u32>>,
        cnf: Option<CnfReport>,
    },
    Verify {
        target: &'static str,
        n: usize,
        ok: bool,
        violations: Vec<String>,
    },
    Render {
        n: usize,
        highlighted: usize,
        out: Option<String>,
    },
    Error {
        message: String,
    },
}

#[derive(Debug, Serialize)]
struct HitReport {
    triangle: [usize; 3],
    interior: u32,
    color: u32,
}

#[derive(Debug, Serialize)]
struct CnfReport {
    path: String,
    vars: usize,
    clauses: usize,
}

struct Outcome {
    code: i32,
    report: Report,
    human: String,
    /// Payload for stdout when no JSON is requested and no --out was given.
    payload: Option<String>,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn display(path: &Option<PathBuf>) -> Option<String> {
    path.as_ref().map(|p| p.display().to_string())
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

fn load_set(path: &Path) -> Result<(PointSet, Option<Vec<u32>>), Error> {
    format::read_point_set(&read(path)?)
}

fn load_coloring(
    set: &PointSet,
    inline: Option<Vec<u32>>,
    file: &Option<PathBuf>,
) -> Result<Coloring, Error> {
    let colors = match file {
        Some(p) => format::parse_coloring(&read(p)?, set.len())?,
        None => inline.ok_or_else(|| {
            Error::InvalidArgument("no coloring: give --coloring or a third column".into())
        })?,
    };
    Coloring::from_colors(colors)
}

fn gen(cmd: GenCommand) -> Result<Outcome, Error> {
    let (kind, set, out) = match cmd {
        GenCommand::Horton { n, out } => ("horton", generate(n)?.into_point_set(), out),
        GenCommand::Random { n, grid, seed, out } => {
            ("random", random_general_position(n, grid, &mut rng_from_seed(seed))?, out)
        }
    };
    let text = format::write_points(&set);
    if let Some(p) = &out {
        write(p, &text)?;
    }
    let points = out.is_none().then(|| {
        set.points().iter().map(|p| [p.x.to_string(), p.y.to_string()]).collect()
    });
    Ok(Outcome {
        code: EXIT_OK,
        human: match &out {
            Some(p) => format!("wrote {} {kind} points to {}", set.len(), p.display()),
            None => String::new(),
        },
        payload: out.is_none().then_some(text),
        report: Report::Gen { kind, n: set.len(), out: display(&out), points },
    })
}

fn color(cmd: ColorCommand) -> Result<Outcome, Error> {
    let ColorCommand::Cyclic { file, c, out } = cmd;
    let (set, _) = load_set(&file)?;
    let pts = set.points();
    if let Some(i) = (1..pts.len()).find(|&i| pts[i - 1].x >= pts[i].x) {
        return Err(Error::NotXSorted(i));
    }
    let coloring = cyclic_coloring(set.len(), c)?;
    let text = format::write_colored_points(&set, &coloring)?;
    if let Some(p) = &out {
        write(p, &text)?;
    }
    Ok(Outcome {
        code: EXIT_OK,
        human: match &out {
            Some(p) => format!("wrote {}-colored points to {}", c, p.display()),
            None => String::new(),
        },
        payload: out.is_none().then_some(text),
        report: Report::Color {
            scheme: "cyclic",
            n: set.len(),
            c,
            colors: coloring.colors().to_vec(),
            out: display(&out),
        },
    })
}

fn scan(args: ScanArgs) -> Result<Outcome, Error> {
    let start = Instant::now();
    let (set, inline) = load_set(&args.file)?;
    let coloring = load_coloring(&set, inline, &args.coloring)?;
    let scanner = Scanner::new(&set);
    let report = scanner.scan(&coloring, args.s)?;
    let stats = scanner.min_interior_statistics(&coloring)?;
    let human = match &report.first_hit {
        Some(hit) => format!(
            "monochromatic triangle {} of color {} with {} interior point(s); {} such triangle(s) with ≤{} interior point(s)",
            hit.triangle,
            hit.mono_color.unwrap_or(0),
            hit.interior,
            report.qualifying_count,
            args.s
        ),
        None => format!(
            "no monochromatic triangle with ≤{} interior point{}",
            args.s,
            if args.s == 1 { "" } else { "s" }
        ),
    };
    Ok(Outcome {
        code: EXIT_OK,
        human,
        payload: None,
        report: Report::Scan {
            n: set.len(),
            s: args.s,
            found: report.found(),
            mono_count: report.mono_count,
            qualifying_count: report.qualifying_count,
            first_hit: report.first_hit.map(|h| HitReport {
                triangle: h.triangle.vertices(),
                interior: h.interior,
                color: h.mono_color.unwrap_or(0),
            }),
            min_interior_mono: report.min_interior_mono,
            per_color_min: stats.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            elapsed_ms: ms(start.elapsed()),
        },
    })
}

fn solve(args: SolveArgs) -> Result<Outcome, Error> {
    if args.c == 0 {
        return Err(Error::InvalidArgument("--c must be at least 1".into()));
    }
    let (set, _) = load_set(&args.file)?;
    let h = build_hypergraph(&set, args.s);
    let mut cnf_report = None;
    if let Some(path) = &args.export_cnf {
        let cnf = solver::export_cnf(&h, args.c);
        write(path, &cnf.to_dimacs())?;
        cnf_report = Some(CnfReport {
            path: path.display().to_string(),
            vars: cnf.num_vars,
            clauses: cnf.clauses.len(),
        });
    }
    let (n, c, s, edges) = (set.len(), args.c, args.s, h.edges().len());

    if let Some(path) = &args.check_model {
        let answer = parse_solver_output(&read(path)?, n * c as usize)?;
        let (code, result, detail, witness) = match answer {
            SolverAnswer::Unsatisfiable => (
                EXIT_NO,
                "unsat_claimed",
                Some("external solver reports UNSATISFIABLE (not certified here)".to_string()),
                None,
            ),
            SolverAnswer::Unknown => {
                (EXIT_ERROR, "unknown", Some("no status or model found".to_string()), None)
            }
            SolverAnswer::Model(values) => match solver::verify_model(&h, c, &values)? {
                ModelCheck::Ok(col) => (EXIT_OK, "ok", None, Some(col.colors().to_vec())),
                ModelCheck::NotExactlyOne { point } => (
                    EXIT_ERROR,
                    "not_exactly_one",
                    Some(format!("point {point} does not have exactly one color")),
                    None,
                ),
                ModelCheck::Violated(t) => (
                    EXIT_ERROR,
                    "violated",
                    Some(format!("edge {t} is monochromatic")),
                    None,
                ),
            },
        };
        let human = match &detail {
            Some(d) => format!("model check: {result}: {d}"),
            None => "model check: ok, the model is a valid coloring".to_string(),
        };
        return Ok(Outcome {
            code,
            human,
            payload: None,
            report: Report::CheckModel { n, c, s, edges, result, detail, witness, cnf: cnf_report },
        });
    }

    let budget = Budget {
        time: args.budget.map(Duration::from_secs_f64),
        nodes: args.nodes,
    };
    let config = SearchConfig { dynamic_order: args.dynamic_order, ..SearchConfig::default() };
    let outcome = decide_hypergraph(&h, c, budget, config)?;
    let witness = match &outcome.verdict {
        Verdict::Feasible(col) => {
            if let Some(p) = &args.witness_out {
                write(p, &format::write_colored_points(&set, col)?)?;
            }
            Some(col.colors().to_vec())
        }
        _ => None,
    };
    let human = match &outcome.verdict {
        Verdict::Feasible(_) => format!(
            "feasible: a {c}-coloring of {n} points avoids every monochromatic triangle with ≤{s} interior points"
        ),
        Verdict::Infeasible => format!(
            "infeasible: every {c}-coloring of {n} points has a monochromatic triangle with ≤{s} interior points"
        ),
        Verdict::BudgetExceeded => "budget exceeded: no verdict".to_string(),
    } + &format!(
        " ({} edges, {} nodes, {:.1} ms)",
        edges,
        outcome.stats.nodes,
        ms(outcome.stats.elapsed)
    );
    Ok(Outcome {
        code: outcome.verdict.exit_code(),
        human,
        payload: None,
        report: Report::Solve {
            n,
            c,
            s,
            edges,
            verdict: outcome.verdict.name(),
            nodes: outcome.stats.nodes,
            forced: outcome.stats.forced,
            elapsed_ms: ms(outcome.stats.elapsed),
            witness,
            cnf: cnf_report,
        },
    })
}

fn verify(cmd: VerifyCommand) -> Result<Outcome, Error> {
    let (target, n, violations) = match cmd {
        VerifyCommand::Horton { file } => {
            let (set, _) = load_set(&file)?;
            let mut v = Vec::new();
            if let Err(e) = verify_horton(&set) {
                v.push(e.to_string());
            }
            if let Err(e) = check_cross_pairs(&set) {
                v.push(format!(
                    "cross pair ({}, {}): point {} is on the wrong side",
                    e.i, e.j, e.k
                ));
            }
            ("horton", set.len(), v)
        }
        VerifyCommand::GeneralPosition { file } => {
            let PointFile { points, .. } = format::parse_points(&read(&file)?)?;
            let v = match validate_general_position(&points) {
                GeneralPosition::Ok => Vec::new(),
                GeneralPosition::Violation(triples) => triples
                    .iter()
                    .map(|(i, j, k)| format!("collinear ({i}, {j}, {k})"))
                    .collect(),
            };
            ("general_position", points.len(), v)
        }
    };
    let ok = violations.is_empty();
    let human = if ok {
        format!("ok: {n} points pass the {} check", target.replace('_', " "))
    } else {
        format!("violation:\n  {}", violations.join("\n  "))
    };
    Ok(Outcome {
        code: if ok { EXIT_OK } else { EXIT_NO },
        human,
        payload: None,
        report: Report::Verify { target, n, ok, violations },
    })
}

fn render_cmd(args: RenderArgs) -> Result<Outcome, Error> {
    let (set, inline) = load_set(&args.file)?;
    let coloring = match (&args.coloring, inline) {
        (None, None) => None,
        (file, inline) => Some(load_coloring(&set, inline, file)?),
    };
    let mut spec = RenderSpec::default();
    if let Some(s) = args.highlight_s {
        let col = coloring.as_ref().ok_or_else(|| {
            Error::InvalidArgument("--highlight-s needs a coloring".into())
        })?;
        if let Some(hit) = Scanner::new(&set).scan(col, s)?.first_hit {
            spec.highlights.push(hit.triangle);
        }
    }
    let svg = render(&set, coloring.as_ref(), &spec);
    if let Some(p) = &args.out {
        write(p, &svg)?;
    }
    Ok(Outcome {
        code: EXIT_OK,
        human: match &args.out {
            Some(p) => format!("wrote {}", p.display()),
            None => String::new(),
        },
        payload: args.out.is_none().then_some(svg),
        report: Report::Render { n: set.len(), highlighted: spec.highlights.len(), out: display(&args.out) },
    })
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{text}") } else { write!(stdout, "{text}") };
            return code;
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Gen(cmd) => gen(cmd),
        Command::Color(cmd) => color(cmd),
        Command::Scan(args) => scan(args),
        Command::Solve(args) => solve(args),
        Command::Verify(cmd) => verify(cmd),
        Command::Render(args) => render_cmd(args),
    };
    match result {
        Ok(outcome) => {
            if json {
                let _ = writeln!(stdout, "{}", serde_json::to_string(&outcome.report).unwrap());
            } else {
                if let Some(p) = &outcome.payload {
                    let _ = write!(stdout, "{p}");
                }
                if !outcome.human.is_empty() {
                    let _ = writeln!(stdout, "{}", outcome.human);
                }
            }
            outcome.code
        }
        Err(e) => {
            if json {
                let report = Report::Error { message: e.to_string() };
                let _ = writeln!(stdout, "{}", serde_json::to_string(&report).unwrap());
            }
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}
