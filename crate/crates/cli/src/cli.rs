use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use orthocell::symmetric::MAX_DIM;
use orthocell::{AffineSignedIsometry, Rational, VerificationReport};
use serde::Serialize;

use crate::document::ComplexDocument;
use crate::error::{CliError, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use crate::export::DEFAULT_PRECISION;
use crate::params::{parse_generator, parse_sides, Fault, GroupKind, Params};
use crate::registry::Registry;

/// Caps the worker threads of parallel checks.
pub const THREADS_ENV: &str = "ORTHOCELL_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "orthocell",
    version,
    about = "Exact symmetric cell decompositions and Markov partitions of orthotopic Lattès maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a complex and write it as a JSON document.
    Build {
        /// Build kind (see `orthocell list`).
        kind: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Which quotient to build: 0 for D0, 1 for D1.
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and write a JSON report.
    Verify {
        /// Suite name (see `orthocell list`).
        suite: String,
        #[command(flatten)]
        params: ParamArgs,
        /// A complex document to check instead of a built one.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        inject_fault: Option<Fault>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a complex document to another format.
    Export {
        /// Output format (see `orthocell list`).
        format: String,
        /// Document to read; standard input when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Fractional digits of OFF coordinates.
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the registered build kinds, suites and formats.
    List,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=MAX_DIM as u64))]
    dim: u64,
    /// Subdivision level of K_{d,l}.
    #[arg(long = "l", default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    l: u64,
    /// Integer scale of the Lattès map x ↦ λx.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    lambda: u64,
    /// Comma-separated side lengths: half-sides of ∏[-a_i, a_i] for
    /// k, k-subdivided, cube and rec; lattice periods for groups.
    #[arg(long, value_parser = side_list)]
    sides: Option<SideList>,
    #[arg(long, value_enum, default_value_t = GroupKind::Tor)]
    group: GroupKind,
    /// Point generator such as `-x1,x2` or `x2,x1@1/2,0` (repeatable).
    #[arg(long = "generator", value_parser = parse_generator, allow_hyphen_values = true)]
    generators: Vec<AffineSignedIsometry>,
    /// Side lengths of the fundamental domain ∏[0, b_i].
    #[arg(long, value_parser = side_list)]
    domain: Option<SideList>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lattice shells searched by the fundamental domain check.
    #[arg(long, default_value_t = orthocell::crystal::DEFAULT_RADIUS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    radius: u64,
    /// Random interior points per cell in the stabilizer checks.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

/// One comma-separated flag value; a bare `Vec` would make clap expect
/// repeated values.
#[derive(Clone, Debug)]
struct SideList(Vec<Rational>);

fn side_list(s: &str) -> Result<SideList, CliError> {
    parse_sides(s).map(SideList)
}

impl ParamArgs {
    fn into_params(self) -> Params {
        Params {
            dim: self.dim as usize,
            l: self.l as usize,
            lambda: self.lambda as usize,
            sides: self.sides.map(|s| s.0),
            group: self.group,
            generators: self.generators,
            domain: self.domain.map(|s| s.0),
            seed: self.seed,
            radius: self.radius as usize,
            samples: self.samples,
            ..Params::default()
        }
    }
}

/// The JSON written by `verify`.
#[derive(Serialize)]
pub struct ReportDocument<'a> {
    pub suite: &'a str,
    pub parameters: std::collections::BTreeMap<String, String>,
    pub passed: bool,
    pub reports: &'a [VerificationReport],
}

fn write_output(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Applies `ORTHOCELL_THREADS` to the global pool. Only the first call in a
/// process has an effect.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(cli: Cli, registry: &Registry, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Build { kind, params, level, out } => {
            let mut p = params.into_params();
            p.level = level;
            let doc = registry.construction(&kind)?.build(&p)?;
            write_output(out.as_deref(), &(doc.to_json() + "\n"), stdout)?;
            writeln!(stderr, "built {kind}: {} cells", doc.cells.len())?;
            Ok(EXIT_PASS)
        }
        Command::Verify { suite, params, input, inject_fault, out } => {
            let s = registry.suite(&suite)?;
            let mut p = params.into_params();
            if inject_fault.is_some() && !s.accepts_fault() {
                return Err(CliError::Usage(format!("suite {suite} does not take --inject-fault")));
            }
            p.fault = inject_fault;
            if let Some(path) = &input {
                if !s.accepts_input() {
                    return Err(CliError::Usage(format!("suite {suite} does not take --input")));
                }
                p.input = Some(ComplexDocument::from_json(&read_input(Some(path))?)?);
            }
            let reports = s.run(&p)?;
            let passed = reports.iter().all(VerificationReport::passed);
            let doc = ReportDocument { suite: &suite, parameters: p.metadata(), passed, reports: &reports };
            let json = serde_json::to_string_pretty(&doc).expect("reports always serialize") + "\n";
            write_output(out.as_deref(), &json, stdout)?;
            for r in &reports {
                write!(stderr, "{r}")?;
            }
            writeln!(stderr, "{suite}: {}", if passed { "PASS" } else { "FAIL" })?;
            Ok(if passed { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Export { format, input, precision, out } => {
            let e = registry.exporter(&format)?;
            let doc = ComplexDocument::from_json(&read_input(input.as_deref())?)?;
            write_output(out.as_deref(), &e.export(&doc, precision)?, stdout)?;
            Ok(EXIT_PASS)
        }
        Command::List => {
            writeln!(stdout, "build kinds:")?;
            for c in registry.constructions() {
                writeln!(stdout, "  {:<14}{}", c.name(), c.describe())?;
            }
            writeln!(stdout, "verify suites:")?;
            for s in registry.suites() {
                writeln!(stdout, "  {:<14}{}", s.name(), s.describe())?;
            }
            writeln!(stdout, "export formats:")?;
            for e in registry.exporters() {
                writeln!(stdout, "  {:<14}{}", e.name(), e.describe())?;
            }
            Ok(EXIT_PASS)
        }
    }
}

/// Parses `args` (including the program name) and runs the command against
/// `registry`, returning the exit code.
pub fn run_with<I, T>(args: I, registry: &Registry, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{text}");
            return EXIT_PASS;
        }
    };
    let result = configure_threads().and_then(|()| execute(cli, registry, stdout, stderr));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// [`run_with`] against the built-in registry.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &Registry::with_defaults(), stdout, stderr)
}
