//! Subcommands of the `extremal` binary.
//!
//! Exit codes: 0 success (or the checked claim holds), 1 the claim fails
//! (not extremal, not buildable, verification failure, invalid script step),
//! 2 input error.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::builder::{peel, random_build, reconstruct_script, BuildScript, Reconstruction};
use crate::error::{Error, Result};
use crate::format::{parse_set_text, parse_system, to_json, to_text};
use crate::graph::InclusionGraph;
use crate::oracle::{enumerate_extremal, verify_propositions, verify_theorem1, verify_theorem2};
use crate::report::AnalysisReport;
use crate::sets::{SetMask, SetSystem};
use crate::shattering::is_extremal;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "props")]
    Props,
}

#[derive(Debug, Parser)]
#[command(name = "extremal", version, about = "Shattering-extremal set systems toolkit")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report |F|, Sh, st, VC dimension, extremality and isometry.
    Analyze { input: PathBuf },
    /// Find a Step A/B build script for the system.
    Reconstruct {
        input: PathBuf,
        /// Member to flip onto the empty set, e.g. `1,2` or `-`.
        #[arg(long)]
        anchor: Option<String>,
    },
    /// Replay a build script and print the resulting system.
    Replay { script: PathBuf },
    /// Remove members one at a time while keeping the system extremal.
    Peel { input: PathBuf },
    /// Seeded random Step A/B build.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
    },
    /// List all extremal systems over [n] (n <= 4).
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        require_empty: bool,
        #[arg(long, default_value_t = 2)]
        vc_cap: usize,
    },
    /// Run a verification sweep.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the inclusion graph as DOT (or JSON with --format json).
    ExportDot { input: PathBuf },
}

/// What a command produced: primary output, diagnostics, and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn with_code(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn input_error(err: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: EXIT_INPUT_ERROR,
        }
    }
}

fn read_system(path: &PathBuf) -> Result<SetSystem> {
    parse_system(&std::fs::read_to_string(path)?)
}

fn render_system(system: &SetSystem, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(system) + "\n",
        OutputFormat::Text => to_text(system),
    }
}

fn render_script(script: &BuildScript, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => script.to_json() + "\n",
        OutputFormat::Text => script.to_text(),
    }
}

/// Runs a parsed command line. Writes `--out` when given.
pub fn run(cli: &Cli) -> Outcome {
    let format = if cli.json {
        OutputFormat::Json
    } else {
        cli.format
    };
    let outcome = match dispatch(&cli.command, format) {
        Ok(outcome) => outcome,
        Err(err) => return Outcome::input_error(&err),
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &outcome.stdout) {
            Ok(()) => Outcome {
                stdout: String::new(),
                ..outcome
            },
            Err(err) => Outcome::input_error(&Error::Io(err)),
        },
        None => outcome,
    }
}

fn dispatch(command: &Command, format: OutputFormat) -> Result<Outcome> {
    match command {
        Command::Analyze { input } => cmd_analyze(&read_system(input)?, format),
        Command::Reconstruct { input, anchor } => {
            let system = read_system(input)?;
            let anchor = anchor
                .as_deref()
                .map(|a| parse_set_text(system.n(), &a.replace(',', " "), 0))
                .transpose()?;
            cmd_reconstruct(&system, anchor, format)
        }
        Command::Replay { script } => {
            cmd_replay(&BuildScript::parse(&std::fs::read_to_string(script)?)?, format)
        }
        Command::Peel { input } => cmd_peel(&read_system(input)?, format),
        Command::Random { n, steps, seed } => cmd_random(*n, *steps, *seed, format),
        Command::Enumerate {
            n,
            require_empty,
            vc_cap,
        } => cmd_enumerate(*n, *require_empty, *vc_cap, format),
        Command::Verify {
            theorem,
            n,
            samples,
            seed,
        } => cmd_verify(*theorem, *n, *samples, *seed, format),
        Command::ExportDot { input } => cmd_export_dot(&read_system(input)?, format),
    }
}

pub fn cmd_analyze(system: &SetSystem, format: OutputFormat) -> Result<Outcome> {
    let report = AnalysisReport::analyze(system)?;
    let text = match format {
        OutputFormat::Json => serde_json::to_string(&report)? + "\n",
        OutputFormat::Text => report.to_text(),
    };
    let code = if report.extremal {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAILED
    };
    Ok(Outcome::with_code(text, code))
}

/// Flips `anchor` (default: first member when `∅` is absent) onto `∅`,
/// reconstructs, and records the flip in the script.
pub fn cmd_reconstruct(system: &SetSystem, anchor: Option<SetMask>, format: OutputFormat) -> Result<Outcome> {
    if system.is_empty() {
        return Err(Error::EmptySystem);
    }
    let anchor = match anchor {
        Some(a) => Some(a),
        None if !system.contains(SetMask::EMPTY) => Some(system.members()[0]),
        None => None,
    };
    let (target, flip) = match anchor {
        Some(a) if !a.is_empty() => {
            let (flipped, record) = system.flip_to_empty(a)?;
            (flipped, Some(record.mask))
        }
        Some(a) if !system.contains(a) => return Err(Error::NotAMember(a)),
        _ => (system.clone(), None),
    };
    let witness = match reconstruct_script(&target)? {
        Reconstruction::Script(mut script) => {
            script.flip = flip;
            return Ok(Outcome::ok(render_script(&script, format)));
        }
        Reconstruction::NotExtremal(report) => json!({
            "buildable": false,
            "reason": "not extremal",
            "size": report.size,
            "shattered": report.shattered,
            "strongly_shattered": report.strongly_shattered,
        }),
        Reconstruction::VcTooLarge {
            report,
            vc_dimension,
        } => json!({
            "buildable": false,
            "reason": "VC dimension above 2",
            "size": report.size,
            "vc_dimension": vc_dimension,
        }),
    };
    let text = match format {
        OutputFormat::Json => witness.to_string() + "\n",
        OutputFormat::Text => {
            let mut s = format!("not buildable: {}\n", witness["reason"].as_str().unwrap_or(""));
            if let Some(sh) = witness.get("shattered") {
                s += &format!("|F|={} |Sh|={} |st|={}\n", witness["size"], sh, witness["strongly_shattered"]);
            }
            if let Some(vc) = witness.get("vc_dimension") {
                s += &format!("VC dimension {vc}\n");
            }
            s
        }
    };
    Ok(Outcome::with_code(text, EXIT_CLAIM_FAILED))
}

pub fn cmd_replay(script: &BuildScript, format: OutputFormat) -> Result<Outcome> {
    match script.replay_original() {
        Ok(system) => Ok(Outcome::ok(render_system(&system, format))),
        Err(err @ Error::Replay { .. }) => Ok(Outcome {
            stdout: String::new(),
            stderr: format!("invalid script: {err}\n"),
            code: EXIT_CLAIM_FAILED,
        }),
        Err(err) => Err(err),
    }
}

pub fn cmd_peel(system: &SetSystem, format: OutputFormat) -> Result<Outcome> {
    let order = match peel(system) {
        Ok(order) => order,
        Err(err @ Error::NotExtremalVc2 { .. }) => {
            return Ok(Outcome {
                stdout: String::new(),
                stderr: format!("cannot peel: {err}\n"),
                code: EXIT_CLAIM_FAILED,
            })
        }
        Err(err) => return Err(err),
    };
    let mut current = system.clone();
    let mut rows = Vec::with_capacity(order.len());
    for removed in order {
        current = current.without_member(removed)?;
        rows.push((removed, is_extremal(&current)?.extremal));
    }
    let text = match format {
        OutputFormat::Json => {
            let removals: Vec<_> = rows
                .iter()
                .map(|(set, ok)| json!({"set": set, "extremal": ok}))
                .collect();
            json!({"removals": removals, "remaining": current}).to_string() + "\n"
        }
        OutputFormat::Text => rows
            .iter()
            .map(|(set, ok)| format!("remove {set}  still extremal: {}\n", if *ok { "yes" } else { "no" }))
            .collect(),
    };
    let code = if rows.iter().all(|(_, ok)| *ok) {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAILED
    };
    Ok(Outcome::with_code(text, code))
}

pub fn cmd_random(n: usize, steps: usize, seed: u64, format: OutputFormat) -> Result<Outcome> {
    let (script, system) = random_build(n, steps, seed)?;
    let text = match format {
        OutputFormat::Json => json!({"script": script, "system": system}).to_string() + "\n",
        OutputFormat::Text => format!("{}\n{}", script.to_text(), to_text(&system)),
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_enumerate(n: usize, require_empty: bool, vc_cap: usize, format: OutputFormat) -> Result<Outcome> {
    let systems = enumerate_extremal(n, require_empty, vc_cap)?;
    let text = match format {
        OutputFormat::Json => serde_json::to_string(&systems)? + "\n",
        OutputFormat::Text => {
            let mut s: String = systems.iter().map(|f| format!("{f}\n")).collect();
            s += &format!("# {} systems\n", systems.len());
            s
        }
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_verify(theorem: Theorem, n: usize, samples: usize, seed: u64, format: OutputFormat) -> Result<Outcome> {
    let report = match theorem {
        Theorem::One => verify_theorem1(n)?,
        Theorem::Two => verify_theorem2(n, samples, seed)?,
        Theorem::Props => verify_propositions(n, samples, seed)?,
    };
    let text = match format {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Text => report.summary(),
    };
    let code = if report.passed {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAILED
    };
    Ok(Outcome::with_code(text, code))
}

pub fn cmd_export_dot(system: &SetSystem, format: OutputFormat) -> Result<Outcome> {
    let graph = InclusionGraph::build(system);
    Ok(Outcome::ok(match format {
        OutputFormat::Json => graph.to_json() + "\n",
        OutputFormat::Text => graph.to_dot(),
    }))
}
