//! The `gp2` command line.
//!
//! Exit codes: 0 success, 1 the program failed, 2 usage or syntax error,
//! 3 the fuel ran out, 4 runtime error or exhausted state space.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::casestudies::{harness, Case};
use crate::dot::to_dot;
use crate::graph::HostGraph;
use crate::interp::{self, outcomes_with_cap, ExecConfig, Outcome, DEFAULT_BRANCH_CAP};
use crate::lang::{load_program, parse_host_graph, print_host_graph, CoreProgram};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DIVERGE: i32 = 3;
pub const EXIT_ERROR: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "gp2", version, about = "Run and analyse graph programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Execute a program once and print the resulting graph.
    Run {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the result as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Enumerate every outcome up to isomorphism.
    Outcomes {
        #[command(flatten)]
        input: Input,
        /// Give up after exploring this many states.
        #[arg(long, default_value_t = DEFAULT_BRANCH_CAP)]
        branch_cap: usize,
    },
    /// Execute once and print every rule application.
    Trace {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One JSON object per line instead of text.
        #[arg(long)]
        json_trace: bool,
    },
    /// Run the built-in checks of a case study (or `all`).
    Verify { case: String },
    /// Render a host graph as DOT.
    ExportDot {
        graph: PathBuf,
        /// Output file; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Input {
    program: PathBuf,
    graph: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    fuel: u64,
}

/// A failure that ends the command with the given exit code.
struct Exit(i32, String);

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| Exit(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<HostGraph, Exit> {
    parse_host_graph(&read(path)?).map_err(|e| Exit(EXIT_USAGE, format!("{}:{e}", path.display())))
}

fn load(input: &Input) -> Result<(CoreProgram, HostGraph), Exit> {
    let p = load_program(&read(&input.program)?)
        .map_err(|e| Exit(EXIT_USAGE, format!("{}:{e}", input.program.display())))?;
    Ok((p, load_graph(&input.graph)?))
}

fn outcome_code(o: &Outcome) -> i32 {
    match o {
        Outcome::Success(_) => EXIT_SUCCESS,
        Outcome::Fail => EXIT_FAIL,
        Outcome::Diverge => EXIT_DIVERGE,
        Outcome::Error(_) => EXIT_ERROR,
    }
}

fn io(e: std::io::Error) -> Exit {
    Exit(EXIT_ERROR, e.to_string())
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    match cmd {
        Command::Run { input, seed, dot } => {
            let (p, g) = load(&input)?;
            let cfg = ExecConfig::seeded(seed).with_fuel(input.fuel);
            let r = interp::run(&p, &g, &cfg);
            match &r.outcome {
                Outcome::Success(h) => {
                    write!(out, "{}", print_host_graph(h)).map_err(io)?;
                    if let Some(path) = dot {
                        fs::write(&path, to_dot(h)).map_err(|e| Exit(EXIT_ERROR, format!("{}: {e}", path.display())))?;
                    }
                }
                Outcome::Error(e) => writeln!(err, "error: {e}").map_err(io)?,
                o => writeln!(out, "{o}").map_err(io)?,
            }
            writeln!(err, "steps: {}", r.steps).map_err(io)?;
            Ok(outcome_code(&r.outcome))
        }
        Command::Outcomes { input, branch_cap } => {
            let (p, g) = load(&input)?;
            let set = outcomes_with_cap(&p, &g, input.fuel, branch_cap).map_err(|e| Exit(EXIT_ERROR, e.to_string()))?;
            for (i, class) in set.successes.iter().enumerate() {
                let steps: Vec<String> = class.steps.iter().map(u64::to_string).collect();
                writeln!(out, "# success {} (steps {})", i + 1, steps.join(" ")).map_err(io)?;
                write!(out, "{}", print_host_graph(&class.key.to_graph())).map_err(io)?;
            }
            if set.fails() {
                let steps: Vec<String> = set.fail_steps.iter().map(u64::to_string).collect();
                writeln!(out, "# fail (steps {})", steps.join(" ")).map_err(io)?;
            }
            if set.diverges {
                writeln!(out, "# diverge").map_err(io)?;
            }
            for e in &set.errors {
                writeln!(out, "# error: {e}").map_err(io)?;
            }
            writeln!(
                out,
                "{} success classes, fail: {}, diverge: {}, errors: {}",
                set.successes.len(),
                if set.fails() { "yes" } else { "no" },
                if set.diverges { "yes" } else { "no" },
                set.errors.len()
            )
            .map_err(io)?;
            Ok(EXIT_SUCCESS)
        }
        Command::Trace { input, seed, json_trace } => {
            let (p, g) = load(&input)?;
            let cfg = ExecConfig::seeded(seed).with_fuel(input.fuel);
            let r = interp::trace(&p, &g, &cfg);
            for rec in &r.trace {
                if json_trace {
                    let line = serde_json::to_string(rec).map_err(|e| Exit(EXIT_ERROR, e.to_string()))?;
                    writeln!(out, "{line}").map_err(io)?;
                } else {
                    writeln!(out, "{rec}").map_err(io)?;
                }
            }
            let summary = match &r.outcome {
                Outcome::Success(h) => format!("success: {} nodes, {} edges", h.node_count(), h.edge_count()),
                o => o.to_string(),
            };
            writeln!(err, "{summary} after {} steps", r.steps).map_err(io)?;
            Ok(outcome_code(&r.outcome))
        }
        Command::Verify { case } => {
            let cases: Vec<Case> = if case == "all" {
                Case::ALL.to_vec()
            } else {
                let c = Case::from_name(&case).ok_or_else(|| {
                    let names: Vec<&str> = Case::ALL.iter().map(|c| c.name()).collect();
                    Exit(EXIT_USAGE, format!("unknown case `{case}` (expected all, {})", names.join(", ")))
                })?;
                vec![c]
            };
            let mut ok = true;
            for c in cases {
                for check in harness::verify(c) {
                    writeln!(out, "{check}").map_err(io)?;
                    for f in &check.failures {
                        writeln!(out, "  {f}").map_err(io)?;
                    }
                    ok &= check.passed();
                }
            }
            Ok(if ok { EXIT_SUCCESS } else { EXIT_FAIL })
        }
        Command::ExportDot { graph, output } => {
            let dot = to_dot(&load_graph(&graph)?);
            match output {
                Some(path) => fs::write(&path, dot).map_err(|e| Exit(EXIT_ERROR, format!("{}: {e}", path.display())))?,
                None => write!(out, "{dot}").map_err(io)?,
            }
            Ok(EXIT_SUCCESS)
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_SUCCESS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}
