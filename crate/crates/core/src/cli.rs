//! The `polhom` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{FiniteAlgebra, ResourceBounds};
use crate::builtin::parse_builtin;
use crate::clone::{algebraic_closure, centralizer_closure};
use crate::decide::DecideOptions;
use crate::error::Error;
use crate::format::{parse_algebra, serialize_algebra};
use crate::monounary::{eliminate_quantifiers, MonoFormula};
use crate::relation::Relation;
use crate::report::{Report, SCHEMA_VERSION};
use crate::selftest;
use crate::verdict::Property;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_SELFTEST: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "polhom", version, about = "Homogeneity properties of finite algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide every property and cross-check the answers.
    Analyze(Common),
    /// Decide one property.
    Check {
        property: Property,
        #[command(flatten)]
        common: Common,
    },
    /// Algebraic or centralizer closure of a set of tuples.
    Closure {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        arity: usize,
        /// Comma-separated tuples such as `01,10` (or `0.1,1.0`).
        #[arg(long, default_value = "")]
        tuples: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Eliminate the quantifiers of a formula over a unary algebra.
    Qe {
        #[command(flatten)]
        input: Input,
        /// For example `Ey. f^2(y)=x1 & f(y)=x2`.
        #[arg(long)]
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Print an algebra in canonical file form.
    Show(Input),
    /// Run the built-in acceptance suite.
    Selftest,
}

#[derive(Debug, Args)]
struct Input {
    /// Algebra file.
    #[arg(conflicts_with = "builtin", required_unless_present = "builtin")]
    file: Option<PathBuf>,
    /// Builtin algebra such as `cyclic:4` or `monounary:1,0,0`.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Debug, Args)]
struct Common {
    #[command(flatten)]
    input: Input,
    /// Largest power `K` searched.
    #[arg(long, default_value_t = 2)]
    max_power: usize,
    /// Largest arity `N` searched (default 3 on two elements, else 2).
    #[arg(long)]
    max_arity: Option<usize>,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    max_cells: Option<usize>,
    /// Emit the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Write the report here as well.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Algebraic,
    Centralizer,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Mode as ValueEnum>::from_str(s, false)
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceBoundExceeded(_) => EXIT_RESOURCE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

impl Input {
    fn load(&self) -> Result<FiniteAlgebra, Failure> {
        match (&self.file, &self.builtin) {
            (_, Some(spec)) => Ok(parse_builtin(spec)?),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| input_failure(format!("{}: {e}", path.display())))?;
                parse_algebra(&text).map_err(|e| input_failure(format!("{}: {e}", path.display())))
            }
            (None, None) => Err(input_failure("no algebra given".into())),
        }
    }
}

impl Common {
    fn options(&self, alg: &FiniteAlgebra) -> DecideOptions {
        let mut opts = DecideOptions::defaults_for(alg);
        opts.max_power = self.max_power;
        if let Some(n) = self.max_arity {
            opts.max_arity = n;
        }
        let d = ResourceBounds::default();
        opts.resources = ResourceBounds {
            max_nodes: self.max_nodes.unwrap_or(d.max_nodes),
            max_cells: self.max_cells.unwrap_or(d.max_cells),
        };
        opts
    }

    fn emit(&self, report: &Report, out: &mut dyn Write) -> Result<(), Failure> {
        let json = report.to_json();
        if let Some(path) = &self.output {
            std::fs::write(path, format!("{json}\n"))
                .map_err(|e| input_failure(format!("{}: {e}", path.display())))?;
        }
        let text = if self.json { json + "\n" } else { report.render() };
        out.write_all(text.as_bytes()).map_err(|e| input_failure(e.to_string()))
    }
}

#[derive(Serialize)]
struct ClosureDoc<'a> {
    schema_version: u32,
    algebra: &'a str,
    mode: &'a str,
    arity: usize,
    input: &'a Relation,
    closure: &'a Relation,
}

#[derive(Serialize)]
struct QeDoc<'a> {
    schema_version: u32,
    algebra: &'a str,
    input: String,
    output: String,
    denotes_empty: bool,
}

fn write(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| input_failure(e.to_string()))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Analyze(common) => {
            let alg = common.input.load()?;
            let (report, err) = Report::analyze(&alg, &common.options(&alg));
            common.emit(&report, out)?;
            match err {
                Some(e) => Err(e.into()),
                None => Ok(EXIT_OK),
            }
        }
        Command::Check { property, common } => {
            let alg = common.input.load()?;
            let (report, err) = Report::single(&alg, property, &common.options(&alg));
            if let Some(e) = err {
                return Err(e.into());
            }
            common.emit(&report, out)?;
            Ok(EXIT_OK)
        }
        Command::Closure {
            input,
            arity,
            tuples,
            mode,
            json,
        } => {
            let alg = input.load()?;
            let s = Relation::parse_tuples(arity, alg.size(), &tuples)?;
            let bounds = ResourceBounds::default();
            let (name, closed) = match mode {
                Mode::Algebraic => ("algebraic", algebraic_closure(&alg, &s, &bounds)?),
                Mode::Centralizer => ("centralizer", centralizer_closure(&alg, &s, &bounds)?),
            };
            if json {
                let doc = ClosureDoc {
                    schema_version: SCHEMA_VERSION,
                    algebra: alg.name(),
                    mode: name,
                    arity,
                    input: &s,
                    closure: &closed,
                };
                write(out, &(serde_json::to_string_pretty(&doc).expect("serializes") + "\n"))?;
            } else {
                write(out, &format!("{}\n", closed.render()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Qe { input, formula, json } => {
            let alg = input.load()?;
            let phi = MonoFormula::parse(&formula)?;
            let result = eliminate_quantifiers(&alg, &phi)?;
            if json {
                let doc = QeDoc {
                    schema_version: SCHEMA_VERSION,
                    algebra: alg.name(),
                    input: phi.to_string(),
                    output: result.to_string(),
                    denotes_empty: result.denotes_empty,
                };
                write(out, &(serde_json::to_string_pretty(&doc).expect("serializes") + "\n"))?;
            } else {
                let note = if result.denotes_empty { "  (unsatisfiable)" } else { "" };
                write(out, &format!("{result}{note}\n"))?;
            }
            Ok(EXIT_OK)
        }
        Command::Show(input) => {
            let alg = input.load()?;
            write(out, &serialize_algebra(&alg))?;
            Ok(EXIT_OK)
        }
        Command::Selftest => {
            let mut ok = true;
            for outcome in selftest::run_all() {
                ok &= outcome.passed;
                write(out, &format!("{}\n", outcome.line()))?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_SELFTEST })
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "polhom: {}", f.message);
            f.code
        }
    }
}
