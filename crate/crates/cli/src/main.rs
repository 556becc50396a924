//! Command-line front end: exact Lubell values, chain censuses, pattern
//! checks, extremal searches, and the verification suite.
//!
//! Exit codes: 0 when all requested checks pass, 1 on a verification
//! violation (or a non-exhaustive search when `--exhaustive` was
//! demanded), 2 on usage or IO errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use diamondlab::formats::{
    parse_family, parse_graph, parse_pattern, rational_str, structure_from_graph, write_family,
};
use diamondlab::report::{all_passed, render, OutputFormat, Report};
use diamondlab::runner::{self, CorpusMode};
use diamondlab_core::graphs::{extract_structure, f_value, max_bracket};
use diamondlab_core::lattice::{lubell, psi_census};
use diamondlab_core::patterns::{contains_pattern, make_pattern};
use diamondlab_core::rational::int;
use diamondlab_core::search::{la, lubell_star, Budget};

#[derive(Parser)]
#[command(name = "diamondlab", version, about = "Exact verification of diamond-free family bounds in the Boolean lattice")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for scan verifications (default: DIAMONDLAB_THREADS or 1).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact Lubell value of a family file.
    Lubell {
        #[arg(long)]
        family: PathBuf,
    },
    /// Full-chain census of a family file (n <= 10).
    Census {
        #[arg(long)]
        family: PathBuf,
    },
    /// Weak-subposet containment of a pattern in a family.
    Check {
        #[arg(long)]
        family: PathBuf,
        /// Pattern literal: diamond, P<k>, V<r>, D<k>.
        #[arg(long)]
        pattern: String,
    },
    /// Largest pattern-free family in dimension n (exhaustive / budgeted).
    SearchLa {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Largest Lubell value of a diamond-free family containing ∅.
    LubellStar {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// The bound value f(n,G,W) for a family or a graph/structure file.
    FValue {
        #[arg(long, conflicts_with_all = ["graph", "n"])]
        family: Option<PathBuf>,
        #[arg(long, requires = "n")]
        graph: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Fail (exit 1) unless the search provably explored everything.
    #[arg(long)]
    exhaustive: bool,
    /// DFS node budget; the search reports best-so-far when exceeded.
    #[arg(long)]
    node_budget: Option<u64>,
    /// Write the witness family to a file.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Census identity and structure bound on a diamond-free corpus.
    Lemma2 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The per-4-subgraph rewrite identity on random structures.
    Fh {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The two chain-count inequalities on a diamond-free corpus.
    PsiBounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Epsilon rows and per-class bounds on a grid.
    Epsilon {
        #[arg(long, default_value_t = 5)]
        n_min: u32,
        #[arg(long, default_value_t = 30)]
        n_max: u32,
    },
    /// Squared flag forms versus their per-subgraph expansion.
    SqIdentity {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 16)]
        v_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// d* rows against the edge-product bound in the few-vertices regime.
    Case1 {
        #[arg(long, default_value_t = 6)]
        n_min: u32,
        #[arg(long, default_value_t = 60)]
        n_max: u32,
    },
    /// Worst-case f over all small graphs against 1/4 + 1/(4(n-3)).
    Lemma3 {
        #[arg(long, default_value_t = 7)]
        v_max: u32,
        #[arg(long, default_value_t = 11)]
        n_min: u32,
        #[arg(long, default_value_t = 40)]
        n_max: u32,
    },
    /// Certificate tables: gmax, gamma-c, simplified, epsilon-rows, dstar.
    Tables {
        #[arg(long, default_value = "all")]
        which: String,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(cli_out: &Option<PathBuf>, format: OutputFormat, reports: &[Report]) -> Result<bool> {
    let text = render(reports, format);
    match cli_out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(all_passed(reports))
}

fn threads_from(cli: &Cli) -> usize {
    cli.threads
        .or_else(|| {
            std::env::var("DIAMONDLAB_THREADS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(1)
        .max(1)
}

// Demanding --exhaustive lifts the node cap; otherwise an unbudgeted run
// gets a default large enough for everything exhaustive through n = 5.
fn budget_from(args: &SearchArgs) -> Budget {
    match (args.node_budget, args.exhaustive) {
        (Some(limit), _) => Budget { node_limit: limit },
        (None, true) => Budget::default(),
        (None, false) => Budget {
            node_limit: 50_000_000,
        },
    }
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::Lubell { family } => {
            let fam = parse_family(&read(family)?)?;
            let mut report = Report::new("lubell");
            report.cases_checked = 1;
            report.columns = vec!["metric".into(), "value".into()];
            report.rows.push(vec!["n".into(), fam.n().to_string()]);
            report.rows.push(vec!["members".into(), fam.len().to_string()]);
            report
                .rows
                .push(vec!["lubell".into(), rational_str(&lubell(&fam))]);
            emit(&cli.out, cli.format, &[report])
        }
        Cmd::Census { family } => {
            let fam = parse_family(&read(family)?)?;
            let census = psi_census(&fam).map_err(|e| anyhow!("{e}"))?;
            let mut report = Report::new("census");
            report.columns = vec!["chains containing i members".into(), "count".into()];
            for (i, &c) in census.counts().iter().enumerate() {
                report.rows.push(vec![format!("i={i}"), c.to_string()]);
            }
            let direct = lubell(&fam);
            let from_census = census.lubell();
            report
                .rows
                .push(vec!["lubell (definition)".into(), rational_str(&direct)]);
            report
                .rows
                .push(vec!["lubell (census)".into(), rational_str(&from_census)]);
            report.cases_checked = 1;
            if direct != from_census {
                report
                    .violations
                    .push("census and definition disagree on the Lubell value".into());
            }
            emit(&cli.out, cli.format, &[report])
        }
        Cmd::Check { family, pattern } => {
            let fam = parse_family(&read(family)?)?;
            let kind = parse_pattern(pattern)?;
            let p = make_pattern(kind).map_err(|e| anyhow!("{e}"))?;
            let mut report = Report::new("pattern-check");
            report.cases_checked = 1;
            report.columns = vec!["metric".into(), "value".into()];
            match contains_pattern(&fam, &p) {
                Some(w) => {
                    report.rows.push(vec!["contains".into(), "true".into()]);
                    let images: Vec<String> =
                        w.mapping.iter().map(|s| s.to_string()).collect();
                    report
                        .rows
                        .push(vec!["witness".into(), images.join(" ")]);
                }
                None => {
                    report.rows.push(vec!["contains".into(), "false".into()]);
                }
            }
            emit(&cli.out, cli.format, &[report])
        }
        Cmd::SearchLa { n, pattern, search } => {
            let kind = parse_pattern(pattern)?;
            let p = make_pattern(kind).map_err(|e| anyhow!("{e}"))?;
            let result = la(*n, &p, budget_from(search)).map_err(|e| anyhow!("{e}"))?;
            let mut report = Report::new("search-la");
            report.cases_checked = result.nodes_explored;
            report.columns = vec!["metric".into(), "value".into()];
            report
                .rows
                .push(vec!["objective".into(), result.objective.to_string()]);
            report
                .rows
                .push(vec!["nodes explored".into(), result.nodes_explored.to_string()]);
            report
                .rows
                .push(vec!["exhaustive".into(), result.exhaustive.to_string()]);
            if let Some(path) = &search.witness_out {
                std::fs::write(path, write_family(&result.witness))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if search.exhaustive && !result.exhaustive {
                report
                    .violations
                    .push("node budget exhausted before the search completed".into());
            }
            emit(&cli.out, cli.format, &[report])
        }
        Cmd::LubellStar { n, search } => {
            let result = lubell_star(*n, budget_from(search)).map_err(|e| anyhow!("{e}"))?;
            let mut report = Report::new("lubell-star");
            report.cases_checked = result.nodes_explored;
            report.columns = vec!["metric".into(), "value".into()];
            report
                .rows
                .push(vec!["objective".into(), rational_str(&result.objective)]);
            report
                .rows
                .push(vec!["witness size".into(), result.witness.len().to_string()]);
            report
                .rows
                .push(vec!["nodes explored".into(), result.nodes_explored.to_string()]);
            report
                .rows
                .push(vec!["exhaustive".into(), result.exhaustive.to_string()]);
            if let Some(path) = &search.witness_out {
                std::fs::write(path, write_family(&result.witness))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if search.exhaustive && !result.exhaustive {
                report
                    .violations
                    .push("node budget exhausted before the search completed".into());
            }
            emit(&cli.out, cli.format, &[report])
        }
        Cmd::FValue { family, graph, n } => {
            let mut report = Report::new("f-value");
            report.columns = vec!["metric".into(), "value".into()];
            match (family, graph) {
                (Some(path), None) => {
                    let fam = parse_family(&read(path)?)?;
                    let s = extract_structure(&fam).map_err(|e| anyhow!("{e}"))?;
                    let f = f_value(fam.n(), &s).map_err(|e| anyhow!("{e}"))?;
                    let lam = lubell(&fam);
                    let bound = int(2) + f.clone();
                    report.cases_checked = 1;
                    report.rows.push(vec!["v".into(), s.graph.v().to_string()]);
                    report
                        .rows
                        .push(vec!["|W|".into(), s.parts.len().to_string()]);
                    report.rows.push(vec!["f".into(), rational_str(&f)]);
                    report.rows.push(vec!["lubell".into(), rational_str(&lam)]);
                    report
                        .rows
                        .push(vec!["2 + f".into(), rational_str(&bound)]);
                    if lam > bound {
                        report
                            .violations
                            .push("lubell value exceeds 2 + f".into());
                    }
                }
                (None, Some(path)) => {
                    let n = n.ok_or_else(|| anyhow!("--graph needs --n"))?;
                    let (g, x_masks) = parse_graph(&read(path)?)?;
                    let s = structure_from_graph(g, &x_masks);
                    let f = f_value(n, &s).map_err(|e| anyhow!("{e}"))?;
                    report.cases_checked = 1;
                    report.rows.push(vec!["v".into(), s.graph.v().to_string()]);
                    report
                        .rows
                        .push(vec!["|W|".into(), s.parts.len().to_string()]);
                    report.rows.push(vec!["f".into(), rational_str(&f)]);
                    let (best, part) = max_bracket(n, &s.graph).map_err(|e| anyhow!("{e}"))?;
                    report
                        .rows
                        .push(vec!["max bracket".into(), rational_str(&best)]);
                    report
                        .rows
                        .push(vec!["max bracket X mask".into(), format!("{:#b}", part.x())]);
                    let worst = f_value(
                        n,
                        &diamondlab_core::graphs::StructureW::new(
                            s.graph.clone(),
                            vec![part; (n as usize).saturating_sub(s.graph.v())],
                        ),
                    )
                    .map_err(|e| anyhow!("{e}"))?;
                    report.rows.push(vec![
                        format!("worst f over W (|W|={})", n as usize - s.graph.v()),
                        rational_str(&worst),
                    ]);
                }
                _ => bail!("f-value needs exactly one of --family or --graph (with --n)"),
            }
            emit(&cli.out, cli.format, &[report])
        }
        Cmd::Verify { what } => {
            let threads = threads_from(cli);
            let reports = match what {
                VerifyCmd::Lemma2 {
                    n,
                    exhaustive,
                    count,
                    seed,
                } => vec![runner::lemma2_report(*n, &mode(*exhaustive, *count, *seed))?],
                VerifyCmd::Fh { count, seed } => vec![runner::fh_report(*count, *seed)?],
                VerifyCmd::PsiBounds {
                    n,
                    exhaustive,
                    count,
                    seed,
                } => vec![runner::psi_bounds_report(*n, &mode(*exhaustive, *count, *seed))?],
                VerifyCmd::Epsilon { n_min, n_max } => {
                    vec![runner::epsilon_report(*n_min, *n_max)?]
                }
                VerifyCmd::SqIdentity { count, v_max, seed } => {
                    vec![runner::sq_report(*count, *v_max, *seed)?]
                }
                VerifyCmd::Case1 { n_min, n_max } => vec![runner::case1_report(*n_min, *n_max)?],
                VerifyCmd::Lemma3 {
                    v_max,
                    n_min,
                    n_max,
                } => vec![runner::lemma3_report(*v_max, *n_min, *n_max, threads)?],
                VerifyCmd::Tables { which } => runner::tables_reports(which)?,
            };
            emit(&cli.out, cli.format, &reports)
        }
    }
}

fn mode(exhaustive: bool, count: usize, seed: u64) -> CorpusMode {
    if exhaustive {
        CorpusMode::Exhaustive
    } else {
        CorpusMode::Random { count, seed }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
