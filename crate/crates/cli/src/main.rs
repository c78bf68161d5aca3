use std::collections::HashSet;
use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use tft_core::flipgraph::{self, AntipodeKind, ExportFormat, MAX_GRAPH_N, MAX_SCAN_N};
use tft_core::verify::{self, Caps, Status, Suite};
use tft_core::{geometry, render, ColoredTriangulation, FlipGraph, PhiVector, RepVector, MAX_N};

const MAX_COUNT_N: usize = 14;
const MAX_BFS_DIAMETER_N: usize = 12;

#[derive(Parser)]
#[command(name = "tft", version, about = "Colored triangle-free triangulations and their flip graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count colored and uncolored triangle-free triangulations by enumeration.
    Count {
        #[arg(short)]
        n: usize,
    },
    /// Export the flip graph.
    Graph {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Distance between two representatives, e.g. `0,0,0,0`.
    Distance {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value = "formula")]
        method: Method,
    },
    /// Diameter of the flip graph.
    Diameter {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum)]
        verify: Option<DiameterCheck>,
    },
    /// A vertex at maximal distance from REP.
    Antipode {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        rep: String,
        #[arg(long, value_enum, default_value = "reverse")]
        kind: Kind,
    },
    /// Run invariant suites and print a table.
    Verify {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Raise every per-check cap to this value.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Draw the triangulation with the given phi vector, e.g. `0:000`.
    Render {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        phi: String,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Bfs,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiameterCheck {
    Bfs,
    FormulaScan,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Reverse,
    Rotate,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Geometry,
    Coxeter,
    Lattice,
    Graph,
}

/// Error classes mapped to exit codes.
enum Failure {
    Usage(String),
    Check(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_n(n: usize, lo: usize, hi: usize, what: &str) -> Outcome {
    if (lo..=hi).contains(&n) {
        Ok(())
    } else {
        Err(usage(format!("{what} needs {lo} <= n <= {hi}, got {n}")))
    }
}

fn parse_rep(n: usize, text: &str) -> Result<RepVector, Failure> {
    let r: RepVector = text.parse().map_err(|e| usage(format!("bad representative {text:?}: {e}")))?;
    if r.n() != n {
        return Err(usage(format!("{text:?} has {} entries, expected {}", r.n() + 1, n + 1)));
    }
    Ok(r)
}

fn color_enabled() -> bool {
    match std::env::var("TFT_COLOR").as_deref() {
        Ok("1") => true,
        Ok("0") => false,
        _ => std::io::stdout().is_terminal(),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Outcome {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn count(n: usize) -> Outcome {
    check_n(n, 1, MAX_COUNT_N, "count")?;
    let all = geometry::enumerate_ctft(n).context("enumerating")?;
    let shapes: HashSet<_> = all.iter().map(ColoredTriangulation::uncolored).collect();
    println!("CTFT={} TFT={}", all.len(), shapes.len());
    Ok(())
}

fn graph(n: usize, format: Format, out: Option<&PathBuf>) -> Outcome {
    check_n(n, 2, MAX_GRAPH_N, "graph")?;
    let g = FlipGraph::build(n).context("building graph")?;
    let format = match format {
        Format::Dot => ExportFormat::Dot,
        Format::Json => ExportFormat::Json,
    };
    emit(&g.export(format).context("exporting")?, out)
}

fn distance(n: usize, from: &str, to: &str, method: Method) -> Outcome {
    let method = if n == 2 { Method::Bfs } else { method };
    let hi = if method == Method::Formula { MAX_N } else { MAX_GRAPH_N };
    check_n(n, 2, hi, "distance")?;
    let (r, s) = (parse_rep(n, from)?, parse_rep(n, to)?);
    let formula = || flipgraph::distance_formula(&r, &s).context("distance formula");
    let bfs = || -> anyhow::Result<usize> {
        let g = FlipGraph::build(n)?;
        Ok(g.bfs_distance(&r, &s)?)
    };
    match method {
        Method::Formula => println!("{}", formula()?),
        Method::Bfs => println!("{}", bfs()?),
        Method::Both => {
            let (f, b) = (formula()?, bfs()?);
            if f != b {
                return Err(Failure::Check(format!("distance: formula={f} bfs={b}")));
            }
            println!("{f} (formula=bfs)");
        }
    }
    Ok(())
}

fn diameter(n: usize, check: Option<DiameterCheck>) -> Outcome {
    let hi = match check {
        None => MAX_N,
        Some(DiameterCheck::Bfs) => MAX_BFS_DIAMETER_N,
        Some(DiameterCheck::FormulaScan) => MAX_SCAN_N,
    };
    check_n(n, 2, hi, "diameter")?;
    let expect = flipgraph::diameter(n).context("diameter")?;
    let got = match check {
        None => {
            println!("{expect}");
            return Ok(());
        }
        Some(DiameterCheck::Bfs) => FlipGraph::build(n).context("building graph")?.diameter_bfs() as usize,
        Some(DiameterCheck::FormulaScan) => {
            check_n(n, 3, hi, "diameter --verify formula-scan")?;
            flipgraph::diameter_formula_scan(n).context("formula scan")?
        }
    };
    if got != expect {
        return Err(Failure::Check(format!("diameter: closed form {expect}, computed {got}")));
    }
    println!("{expect} verified");
    Ok(())
}

fn antipode(n: usize, rep: &str, kind: Kind) -> Outcome {
    check_n(n, 2, MAX_N, "antipode")?;
    let r = parse_rep(n, rep)?;
    let kind = match kind {
        Kind::Reverse => AntipodeKind::ColorReversal,
        Kind::Rotate => {
            if n % 2 == 1 {
                return Err(usage("--kind rotate needs even n"));
            }
            AntipodeKind::Rotation
        }
    };
    let a = flipgraph::antipode(&r, kind).map_err(|e| usage(e.to_string()))?;
    println!("{a}");
    Ok(())
}

fn run_verify(n: usize, suite: SuiteArg, max_n: Option<usize>) -> Outcome {
    check_n(n, 1, MAX_N, "verify")?;
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Geometry => vec![Suite::Geometry],
        SuiteArg::Coxeter => vec![Suite::Coxeter],
        SuiteArg::Lattice => vec![Suite::Lattice],
        SuiteArg::Graph => vec![Suite::Graph],
    };
    let caps = max_n.map(Caps::uniform).unwrap_or_default();
    let report = verify::run(n, &suites, &caps);
    let color = color_enabled();
    for c in &report.checks {
        let (tag, ansi, detail) = match &c.status {
            Status::Pass => ("PASS", "32", ""),
            Status::Fail(d) => ("FAIL", "31", d.as_str()),
            Status::Finding(d) => ("NOTE", "36", d.as_str()),
            Status::Skip(d) => ("SKIP", "33", d.as_str()),
        };
        let tag = if color {
            format!("\x1b[{ansi}m{tag:<4}\x1b[0m")
        } else {
            format!("{tag:<4}")
        };
        let sep = if detail.is_empty() { "" } else { ": " };
        println!("{tag}  {:<9} {}{sep}{detail}", c.suite.name(), c.name);
    }
    let passed = report.checks.iter().filter(|c| c.status == Status::Pass).count();
    println!("{passed}/{} checks passed for n={n}", report.checks.len());
    match report.first_failure() {
        Some(c) => Err(Failure::Check(format!("first failing invariant: {}", c.name))),
        None => Ok(()),
    }
}

fn render_cmd(n: usize, phi: &str, out: Option<&PathBuf>) -> Outcome {
    check_n(n, 1, MAX_N, "render")?;
    let v: PhiVector = phi.parse().map_err(|e| usage(format!("bad phi vector {phi:?}: {e}")))?;
    if v.n() != n {
        return Err(usage(format!("{phi:?} has {} bits, expected {n}", v.n())));
    }
    emit(&render::render_svg(&ColoredTriangulation::from_phi(&v)), out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count { n } => count(n),
        Command::Graph { n, format, o } => graph(n, format, o.as_ref()),
        Command::Distance { n, from, to, method } => distance(n, &from, &to, method),
        Command::Diameter { n, verify } => diameter(n, verify),
        Command::Antipode { n, rep, kind } => antipode(n, &rep, kind),
        Command::Verify { n, suite, max_n } => run_verify(n, suite, max_n),
        Command::Render { n, phi, o } => render_cmd(n, &phi, o.as_ref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
