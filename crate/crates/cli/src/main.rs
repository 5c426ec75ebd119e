//! `kgraph`: validate and query finitely presented k-graphs from the shell.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kgraph::boundary::TieBreak;
use kgraph::fixtures;
use kgraph::skew::SkewDoc;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use input::{CliError, CliResult};
use report::{Inputs, Outcome, Report, Verdict};

const DEFAULT_BUDGET: usize = 100_000;

#[derive(Parser, Debug)]
#[command(name = "kgraph", version, about = "Finitely presented k-graphs: validation, alignment, boundary paths, groupoids, skew products")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Skeleton JSON document; `-` or omitted reads standard input.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,

    /// Built-in graph instead of a document, e.g. "cycle 3" or "lambda1".
    #[arg(long, global = true)]
    fixture: Option<String>,

    /// Degree bound for searches, comma separated. Default (3,…,3).
    #[arg(long, global = true)]
    bound: Option<String>,

    /// Search budget in candidates examined.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Worker threads for per-vertex work; output order does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TieArg {
    Lex,
    InputOrder,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the document presents a k-graph.
    Validate,
    /// List paths of one degree, or of every degree up to --bound.
    Enumerate {
        #[arg(long)]
        degree: Option<String>,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Alignment query: inline JSON or a file, {"op": "min"|"vee"|"ext"|"exhaustive"|"aligned", ...}.
    Align {
        #[arg(long)]
        query: String,
    },
    /// Build and check boundary paths, or check `--prefix [--block]`.
    Boundary {
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long, value_enum, default_value_t = TieArg::Lex)]
        tie_break: TieArg,
        /// Comma-separated edge names (or a vertex name).
        #[arg(long)]
        prefix: Option<String>,
        /// Repeating block, comma-separated edge names.
        #[arg(long)]
        block: Option<String>,
    },
    /// Condition (A) per vertex plus the freeness probe.
    Aperiodicity {
        /// Probe window. Default (1,…,1).
        #[arg(long)]
        window: Option<String>,
    },
    /// Groupoid elements over a window with the groupoid laws checked.
    Groupoid {
        /// Degree window for λ and μ. Default (1,…,1).
        #[arg(long)]
        window: Option<String>,
    },
    /// Skew product by a finite group and its verification report.
    Skew {
        /// JSON document {"group": {"elements", "table"}, "labels": {edge: element}}.
        #[arg(long)]
        labels: PathBuf,
        /// Verification window. Default --bound.
        #[arg(long)]
        window: Option<String>,
    },
    /// Print a built-in graph as skeleton JSON; no name lists the catalogue.
    Fixtures { name: Option<String>, args: Vec<String> },
}

fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

fn fixtures_cmd(name: Option<&str>, args: &[String]) -> CliResult<String> {
    let Some(name) = name else {
        let list: Vec<Value> = fixtures::catalogue().into_iter().map(|(n, a)| json!({"name": n, "args": a})).collect();
        return Ok(serde_json::to_string_pretty(&list).expect("serializable"));
    };
    let g = fixtures::by_name(name, args).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(g.skeleton().to_json())
}

/// Runs a graph subcommand; returns the outcome plus the extra inputs to digest.
fn dispatch(cli: &Cli, g: &kgraph::KGraph) -> CliResult<(Outcome, Vec<String>, Value)> {
    let bound = input::degree_or(g, cli.bound.as_deref(), "--bound", 3)?;
    let mut extra = Vec::new();
    let (outcome, flags) = match &cli.command {
        Command::Validate => (commands::validate(g, cli.budget), json!({})),
        Command::Enumerate { degree, vertex } => {
            let d = degree.as_deref().map(|d| input::degree(g, d, "--degree")).transpose()?;
            if d.as_ref().is_some_and(|d| !d.is_finite()) {
                return Err(CliError::Usage("--degree must be finite".into()));
            }
            let v = vertex.as_deref().map(|v| input::vertex(g, v)).transpose()?;
            (commands::enumerate(g, d.as_ref(), &bound, v, cli.budget), json!({"degree": degree, "vertex": vertex}))
        }
        Command::Align { query } => {
            let text = if query.trim_start().starts_with('{') {
                query.clone()
            } else {
                input::read_text(std::path::Path::new(query))?
            };
            let q: Value =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("query: malformed JSON: {e}")))?;
            extra.push(text);
            (commands::align(g, &q, cli.budget)?, json!({}))
        }
        Command::Boundary { vertex, tie_break, prefix, block } => {
            let args = commands::BoundaryArgs {
                vertex: vertex.as_deref().map(|v| input::vertex(g, v)).transpose()?,
                tie: match tie_break {
                    TieArg::Lex => TieBreak::Lex,
                    TieArg::InputOrder => TieBreak::InputOrder,
                },
                prefix: prefix.as_deref().map(|p| input::path_list(g, p, "--prefix")).transpose()?,
                block: block.as_deref().map(|p| input::path_list(g, p, "--block")).transpose()?,
                bound: bound.clone(),
            };
            let flags = json!({"vertex": vertex, "tie_break": format!("{tie_break:?}"), "prefix": prefix, "block": block});
            (commands::boundary(g, &args)?, flags)
        }
        Command::Aperiodicity { window } => {
            let w = input::degree_or(g, window.as_deref(), "--window", 1)?;
            (commands::aperiodicity(g, &w, cli.budget)?, json!({"window": w}))
        }
        Command::Groupoid { window } => {
            let w = input::degree_or(g, window.as_deref(), "--window", 1)?;
            (commands::groupoid(g, &w, cli.budget)?, json!({"window": w}))
        }
        Command::Skew { labels, window } => {
            let text = input::read_text(labels)?;
            let doc: SkewDoc = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: malformed skew document: {e}", labels.display())))?;
            extra.push(text);
            let w = match window {
                Some(w) => input::degree(g, w, "--window")?,
                None => bound.clone(),
            };
            (commands::skew(g, &doc, &w)?, json!({"window": w}))
        }
        Command::Fixtures { .. } => unreachable!("handled before loading a graph"),
    };
    let flags = json!({"bound": bound, "budget": cli.budget, "command_flags": flags});
    Ok((outcome, extra, flags))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate => "validate",
        Command::Enumerate { .. } => "enumerate",
        Command::Align { .. } => "align",
        Command::Boundary { .. } => "boundary",
        Command::Aperiodicity { .. } => "aperiodicity",
        Command::Groupoid { .. } => "groupoid",
        Command::Skew { .. } => "skew",
        Command::Fixtures { .. } => "fixtures",
    }
}

fn emit(cli: &Cli, report: &Report, summary: &str) {
    match cli.format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("serializable"));
            eprintln!("{}: {}", report.command, serde_json::to_string(&report.verdict).expect("serializable").trim_matches('"'));
            if !summary.is_empty() {
                eprintln!("{summary}");
            }
            for d in &report.diagnostics {
                eprintln!("diagnostic: {d}");
            }
        }
        Format::Text => {
            println!("{}: {}", report.command, serde_json::to_string(&report.verdict).expect("serializable").trim_matches('"'));
            if !summary.is_empty() {
                println!("{summary}");
            }
            for d in &report.diagnostics {
                println!("diagnostic: {d}");
            }
        }
    }
}

fn run(cli: &Cli) -> ExitCode {
    if let Command::Fixtures { name, args } = &cli.command {
        return match fixtures_cmd(name.as_deref(), args) {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err(CliError::Usage(d) | CliError::Invalid(d)) => {
                eprintln!("error: {d}");
                ExitCode::from(2)
            }
        };
    }
    let command = command_name(&cli.command).to_string();
    let loaded = input::load_graph(cli.graph.as_deref(), cli.fixture.as_deref());
    let (outcome, inputs, code) = match loaded {
        Err(err) => {
            let (code, d) = match err {
                CliError::Usage(d) => (2, d),
                CliError::Invalid(d) => (1, d),
            };
            let label = cli.graph.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "stdin".into());
            let inputs = Inputs { digest: String::new(), graph: label, flags: Value::Null };
            (Outcome::fail(d), inputs, code)
        }
        Ok(lg) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build().expect("thread pool");
            match pool.install(|| dispatch(cli, &lg.graph)) {
                Ok((outcome, extra, flags)) => {
                    let flag_text = flags.to_string();
                    let mut parts: Vec<&str> = vec![&command, &lg.source, &flag_text];
                    parts.extend(extra.iter().map(String::as_str));
                    let inputs = Inputs { digest: digest(&parts), graph: lg.label, flags };
                    let code = outcome.verdict.exit_code();
                    (outcome, inputs, code)
                }
                Err(err) => {
                    let (code, d) = match err {
                        CliError::Usage(d) => (2, d),
                        CliError::Invalid(d) => (1, d),
                    };
                    let digest = digest(&[&command, &lg.source]);
                    (Outcome::fail(d), Inputs { digest, graph: lg.label, flags: Value::Null }, code)
                }
            }
        }
    };
    let report = Report {
        command,
        inputs,
        results: outcome.results,
        verdict: if code == 0 { outcome.verdict } else { Verdict::Fail },
        diagnostics: outcome.diagnostics,
    };
    emit(cli, &report, &outcome.summary);
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(&cli)
}
