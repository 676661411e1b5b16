//! Command-line front end for the `stackable` library.
//!
//! Exit codes: 0 success or "yes", 1 "no", 2 bad input or violated
//! precondition, 3 budget or memory cap exhausted, 4 an internal validation
//! failed.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;
use stackable::builtin::{almost_convexity_check, ThompsonF};
use stackable::stacking::{schema_relators, stacking_reduce, verify_structure};
use stackable::vankampen::{export_diagram, validate_diagram, DiagramBuilder, ExportFormat};
use stackable::{
    Ball, BuildContext, Error, NormalFormOracle, StackingStructure, StructureRegistry, DEFAULT_BUDGET,
    DEFAULT_MEMORY_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "stackable", version, about = "Stackable structures on finitely generated groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Structure spec: bs1p:<p>, crs:<file>, shortlex-ac:<file>:<radius>:<k>
    #[arg(long, global = true)]
    pub structure: Option<String>,

    /// Whitespace-separated generator tokens
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub word: Option<String>,

    #[arg(long, global = true)]
    pub radius: Option<usize>,

    #[arg(long, global = true)]
    pub k: Option<usize>,

    /// Maximum number of rewriting or recursion steps
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,

    /// Maximum number of group elements in a Cayley ball
    #[arg(long, global = true, default_value_t = DEFAULT_MEMORY_CAP)]
    pub cap: usize,

    /// Word length up to which rewriting systems are checked for completeness
    #[arg(long, global = true, default_value_t = 6)]
    pub check_len: usize,

    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// json, dot or svg
    #[arg(long, global = true, default_value = "json")]
    pub format: String,

    /// Write the full JSON report here
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Normal form by stacking reduction
    Nf,
    /// Does the word represent the identity?
    Wp,
    /// Van Kampen diagram of a trivial word
    Vkd,
    /// Check the flow-function axioms on a ball
    Verify,
    /// Check almost convexity up to --radius with constant --k
    AcCheck,
    /// Membership in the normal-form language of Thompson's group F
    ThompsonNf,
    /// Dump a Cayley ball as JSON
    ExportBall,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::MemoryCap(_) => EXIT_BUDGET,
            Error::Structure(_) | Error::Glue(_) => EXIT_VALIDATION,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_PRECONDITION,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Failure>;

impl Cli {
    fn context(&self) -> BuildContext {
        BuildContext {
            budget: self.budget,
            check_len: self.check_len,
            cap: self.cap,
        }
    }

    fn structure(&self) -> Result<Box<dyn StackingStructure>, Error> {
        let registry = StructureRegistry::with_builtins();
        let spec = self.structure.as_deref().ok_or_else(|| {
            Error::Precondition(format!("--structure is required ({})", registry.usages().join(", ")))
        })?;
        registry.build(spec, &self.context())
    }

    fn word_text(&self) -> Result<&str, Failure> {
        self.word.as_deref().ok_or_else(|| usage("--word is required"))
    }

    fn radius(&self) -> Result<usize, Failure> {
        self.radius.ok_or_else(|| usage("--radius is required"))
    }
}

fn write_output(cli: &Cli, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_report(cli: &Cli, value: &serde_json::Value) -> Result<(), Failure> {
    if let Some(path) = &cli.report {
        let mut text = serde_json::to_string_pretty(value).map_err(Error::from)?;
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(())
}

/// Stacking normal form of `word` and the number of replacements made.
pub fn cmd_nf(s: &dyn StackingStructure, word: &str, budget: usize) -> Result<(String, usize), Error> {
    let w = s.alphabet().parse_word(word)?;
    let r = stacking_reduce(s, &w, budget)?;
    Ok((s.alphabet().render(&r.word), r.steps))
}

/// Whether `word` represents the identity.
pub fn cmd_wp(s: &dyn StackingStructure, word: &str, budget: usize) -> Result<bool, Error> {
    let w = s.alphabet().parse_word(word)?;
    Ok(stacking_reduce(s, &w, budget)?.word.is_empty())
}

fn nf(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let s = cli.structure()?;
    let (form, steps) = cmd_nf(s.as_ref(), cli.word_text()?, cli.budget)?;
    writeln!(out, "{form}")?;
    writeln!(out, "steps: {steps}")?;
    Ok(EXIT_OK)
}

fn wp(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let s = cli.structure()?;
    let trivial = cmd_wp(s.as_ref(), cli.word_text()?, cli.budget)?;
    writeln!(out, "{}", if trivial { "trivial" } else { "nontrivial" })?;
    Ok(if trivial { EXIT_OK } else { EXIT_FALSE })
}

fn vkd(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let format: ExportFormat = cli.format.parse()?;
    let s = cli.structure()?;
    let w = s.alphabet().parse_word(cli.word_text()?)?;
    let mut builder = DiagramBuilder::new(s.as_ref(), cli.budget);
    let d = builder.fill(&w)?;
    let relators = schema_relators(s.as_ref())
        .unwrap_or_else(|| s.alphabet().symmetric_closure(builder.relators_used()));
    let report = validate_diagram(&d, &relators, &w, s.as_ref());
    write_report(cli, &serde_json::to_value(&report).map_err(Error::from)?)?;
    if !report.passed() {
        write!(err, "{}", report.summary())?;
        return Ok(EXIT_VALIDATION);
    }
    write_output(cli, &export_diagram(&d, format), out)?;
    if cli.out.is_some() {
        writeln!(
            out,
            "area {}, {} vertices, {} edges",
            d.area(),
            d.vertices().len(),
            d.edges().len()
        )?;
    }
    Ok(EXIT_OK)
}

fn verify(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let radius = cli.radius()?;
    // Refuted input data (an incomplete rewriting system, a group that is
    // not almost convex) is a negative answer rather than bad input.
    let s = match cli.structure() {
        Err(e @ (Error::NotComplete(_) | Error::AlmostConvexityRefuted { .. })) => {
            writeln!(out, "FAIL structure: {e}")?;
            write_report(cli, &json!({ "passed": false, "error": e.to_string() }))?;
            return Ok(EXIT_FALSE);
        }
        other => other?,
    };
    let (flow, geodesic) = verify_structure(s.as_ref(), radius, cli.cap)?;
    writeln!(out, "{}", flow.summary())?;
    writeln!(out, "{}", geodesic.summary())?;
    write_report(
        cli,
        &json!({ "passed": flow.passed(), "flow": flow, "geodesic": geodesic }),
    )?;
    Ok(if flow.passed() { EXIT_OK } else { EXIT_FALSE })
}

fn ac_check(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let n = cli.radius()?;
    let k = cli.k.ok_or_else(|| usage("--k is required"))?;
    let s = cli.structure()?;
    let oracle: &dyn NormalFormOracle = s.as_ref();
    let report = almost_convexity_check(oracle, n, k, cli.cap)?;
    writeln!(out, "{}", report.summary())?;
    write_report(cli, &serde_json::to_value(&report).map_err(Error::from)?)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FALSE })
}

fn thompson_nf(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let f = ThompsonF::new();
    let w = f.parse_word(cli.word_text()?)?;
    let state = f.run(&w)?;
    let accepted = state.accepting();
    writeln!(
        out,
        "{} (x0 exponent sum {})",
        if accepted { "accepted" } else { "rejected" },
        f.expsum_x0(&w)?
    )?;
    Ok(if accepted { EXIT_OK } else { EXIT_FALSE })
}

fn export_ball(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let s = cli.structure()?;
    let ball = Ball::build(s.as_ref(), cli.radius()?, cli.cap)?;
    let mut text = serde_json::to_string_pretty(&ball.to_json()).map_err(Error::from)?;
    text.push('\n');
    write_output(cli, &text, out)?;
    Ok(EXIT_OK)
}

/// Runs one command and returns its exit code. Errors are printed to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Nf => nf(cli, out),
        Command::Wp => wp(cli, out),
        Command::Vkd => vkd(cli, out, err),
        Command::Verify => verify(cli, out),
        Command::AcCheck => ac_check(cli, out),
        Command::ThompsonNf => thompson_nf(cli, out),
        Command::ExportBall => export_ball(cli, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
