//! Command-line front end: compute graph polynomials, verify the identity
//! suites, and run the quadratic-identity discovery search.
//!
//! Exit codes: 0 on success (all checks pass), 1 when a verification fails
//! or a discovery search is inconsistent, 2 on usage errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gpforest::discovery::{self, Ansatz};
use gpforest::forest::{self, ForestPattern};
use gpforest::graph::{self, Graph};
use gpforest::identities::{self, Suite, VerificationReport};
use gpforest::kirchhoff;
use gpforest::poly::Polynomial;

#[derive(Parser)]
#[command(name = "gpforest", version, about = "Exact Kirchhoff, Dodgson and spanning-forest polynomial toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Psi,
    Dodgson,
    Phi,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Print one graph polynomial on stdout
    Compute {
        /// Graph file in the text format
        #[arg(long, conflicts_with = "family")]
        graph: Option<PathBuf>,
        /// Built-in family name (k3..k7, w4..w6, c3.., rand-v<V>-e<E>-s<S>)
        #[arg(long)]
        family: Option<String>,
        /// Which polynomial to compute
        #[arg(long, value_enum)]
        what: What,
        /// Rows to remove (edge indices, comma separated), dodgson only
        #[arg(long = "I", value_delimiter = ',')]
        i: Vec<usize>,
        /// Columns to remove (edge indices), dodgson only
        #[arg(long = "J", value_delimiter = ',')]
        j: Vec<usize>,
        /// Edge variables to set to zero, dodgson only
        #[arg(long = "K", value_delimiter = ',')]
        k: Vec<usize>,
        /// Forest pattern such as 1,-,2,2 (phi only)
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Allow computations projected to run long
        #[arg(long)]
        slow: bool,
    },
    /// Run an identity verification suite; one PASS/FAIL line per check
    Verify {
        #[arg(long, conflicts_with = "family")]
        graph: Option<PathBuf>,
        #[arg(long)]
        family: Option<String>,
        /// all | dodgson | jacobi | ab | pai | main | discovery-membership
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for the randomized instances
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker count (default: GPFOREST_JOBS or 1)
        #[arg(long)]
        jobs: Option<usize>,
        /// Write a structured report (residuals for failures) to this file
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Solve the quadratic-identity search over one or more graphs
    Discover {
        /// Number of marked vertices
        #[arg(long)]
        marked: usize,
        /// Comma-separated family names or graph files; default kN,kN+1
        #[arg(long, value_delimiter = ',')]
        graphs: Vec<String>,
        /// Allow the larger searches (5 or more marked vertices)
        #[arg(long)]
        slow: bool,
        /// Write the machine-readable solution dump to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in graph families
    Families,
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: 2,
        }
    }

    fn failure(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gpforest: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Prints a line, exiting quietly when the consumer closed the pipe.
fn emit(line: impl std::fmt::Display) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("gpforest: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Compute {
            graph,
            family,
            what,
            i,
            j,
            k,
            pattern,
            format,
            slow,
        } => compute(graph, family, what, i, j, k, pattern, format, slow),
        Command::Verify {
            graph,
            family,
            suite,
            seed,
            jobs,
            report,
        } => verify(graph, family, &suite, seed, jobs, report),
        Command::Discover {
            marked,
            graphs,
            slow,
            out,
        } => discover(marked, graphs, slow, out),
        Command::Families => {
            for name in graph::family_names() {
                emit(name);
            }
            Ok(0)
        }
    }
}

fn load_graph(file: Option<PathBuf>, family: Option<String>) -> Result<Graph, CliError> {
    match (file, family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".into());
            Graph::parse(&text)
                .map(|g| g.with_label(label))
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
        }
        (None, Some(name)) => graph::family_by_name(&name)
            .ok_or_else(|| CliError::usage(format!("unknown family `{name}`"))),
        (None, None) => Err(CliError::usage("need --graph FILE or --family NAME")),
        (Some(_), Some(_)) => Err(CliError::usage("--graph and --family are exclusive")),
    }
}

/// Matrix size above which determinant computations want --slow.
const SLOW_MATRIX_DIM: usize = 18;
/// Edge count above which forest enumeration wants --slow.
const SLOW_ENUM_EDGES: usize = 21;

fn render(p: &Polynomial, format: Format) -> String {
    match format {
        Format::Text => format!("{p}"),
        Format::Structured => p.render_structured(),
    }
}

#[allow(clippy::too_many_arguments)]
fn compute(
    file: Option<PathBuf>,
    family: Option<String>,
    what: What,
    i: Vec<usize>,
    j: Vec<usize>,
    k: Vec<usize>,
    pattern: Option<String>,
    format: Format,
    slow: bool,
) -> Result<u8, CliError> {
    let g = load_graph(file, family)?;
    if what != What::Dodgson && (!i.is_empty() || !j.is_empty() || !k.is_empty()) {
        return Err(CliError::usage("--I/--J/--K apply to --what dodgson only"));
    }
    if what != What::Phi && pattern.is_some() {
        return Err(CliError::usage("--pattern applies to --what phi only"));
    }
    let matrix_dim = g.edge_count() + g.vertex_count() - 1;
    let poly = match what {
        What::Psi => {
            if matrix_dim > SLOW_MATRIX_DIM && !slow {
                return Err(CliError::usage(format!(
                    "matrix of size {matrix_dim} needs --slow"
                )));
            }
            kirchhoff::psi(&g)
        }
        What::Dodgson => {
            if matrix_dim > SLOW_MATRIX_DIM && !slow {
                return Err(CliError::usage(format!(
                    "matrix of size {matrix_dim} needs --slow"
                )));
            }
            kirchhoff::dodgson(&g, &i, &j, &k)
                .map_err(|e| CliError::usage(e.to_string()))?
        }
        What::Phi => {
            if g.edge_count() > SLOW_ENUM_EDGES && !slow {
                return Err(CliError::usage(format!(
                    "enumeration over {} edges needs --slow",
                    g.edge_count()
                )));
            }
            let text = pattern.ok_or_else(|| CliError::usage("--what phi needs --pattern"))?;
            let pat = ForestPattern::parse(&text)
                .map_err(|e| CliError::usage(e.to_string()))?;
            forest::phi_pattern(&g, &pat).map_err(|e| CliError::usage(e.to_string()))?
        }
    };
    emit(render(&poly, format));
    Ok(0)
}

fn verify(
    file: Option<PathBuf>,
    family: Option<String>,
    suite: &str,
    seed: u64,
    jobs: Option<usize>,
    report_path: Option<PathBuf>,
) -> Result<u8, CliError> {
    let g = load_graph(file, family)?;
    let suite = Suite::parse(suite)
        .ok_or_else(|| CliError::usage(format!("unknown suite `{suite}`")))?;
    let jobs = jobs
        .or_else(|| {
            std::env::var("GPFOREST_JOBS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1);
    let reports = identities::run_suite(&g, suite, seed, jobs)
        .map_err(|e| CliError::usage(e.to_string()))?;
    for r in &reports {
        emit(r.line());
    }
    if let Some(path) = report_path {
        std::fs::write(&path, structured_report(&reports))
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if reports.iter().all(|r| r.passed) {
        Ok(0)
    } else {
        Ok(1)
    }
}

fn structured_report(reports: &[VerificationReport]) -> String {
    let mut out = String::from("[");
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(
            out,
            "{{\"check\":\"{}\",\"graph\":\"{}\",\"pass\":{},\"ms\":{}",
            r.check, r.graph, r.passed, r.millis
        );
        if !r.passed {
            let _ = write!(out, ",\"residual\":\"{}\"", r.residual);
        }
        out.push('}');
    }
    out.push_str("]\n");
    out
}

fn discover(
    marked: usize,
    graph_names: Vec<String>,
    slow: bool,
    out: Option<PathBuf>,
) -> Result<u8, CliError> {
    if marked < 2 {
        return Err(CliError::usage("need at least 2 marked vertices"));
    }
    if marked >= 5 && !slow {
        return Err(CliError::usage(format!(
            "a search with {marked} marked vertices needs --slow"
        )));
    }
    let marks: Vec<usize> = (1..=marked).collect();
    let graphs: Vec<Graph> = if graph_names.is_empty() {
        discovery::default_graphs(marked).map_err(|e| CliError::usage(e.to_string()))?
    } else {
        let mut gs = Vec::new();
        for name in &graph_names {
            let g = match graph::family_by_name(name) {
                // Families are re-marked at their first `marked` vertices.
                Some(g) => g
                    .with_marked(marks.clone())
                    .map_err(|e| CliError::usage(format!("{name}: {e}")))?,
                None => {
                    let g = load_graph(Some(PathBuf::from(name)), None)?;
                    if g.marked().len() != marked {
                        return Err(CliError::usage(format!(
                            "{name}: carries {} marked vertices, need {marked}",
                            g.marked().len()
                        )));
                    }
                    g
                }
            };
            gs.push(g);
        }
        gs
    };
    if graphs.len() == 1 {
        eprintln!(
            "gpforest: warning: a single graph may leave spurious degrees of freedom; \
             consider adding a second graph"
        );
    }
    let ansatz = Ansatz::standard(marked).map_err(|e| CliError::usage(e.to_string()))?;
    let result = match discovery::discover(&graphs, &ansatz) {
        Ok(r) => r,
        Err(discovery::DiscoveryError::Inconsistent) => {
            return Err(CliError::failure(
                "the ansatz admits no identity on the given graphs",
            ))
        }
        Err(e) => return Err(CliError::usage(e.to_string())),
    };
    emit(format!("unknowns = {}", ansatz.unknown_count()));
    for (label, count) in result.graphs.iter().zip(&result.equations_per_graph) {
        emit(format!("equations[{label}] = {count}"));
    }
    emit(format!("dimension = {}", result.dimension()));
    emit(format!("identity: {}", result.render_identity()));
    if marked >= 5 {
        emit(format!(
            "note: pattern shapes for {marked} marked vertices follow the 4-vertex ansatz \
             (left: {}-part, right: 2-part partitions)",
            marked - 1
        ));
    }
    if let Some(path) = out {
        let mut dump = result.render_dump();
        dump.push('\n');
        std::fs::write(&path, dump)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(0)
}
