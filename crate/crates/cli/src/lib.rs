//! Command handling for the `ptolemy-cc` binary.
//!
//! [`run`] is a pure function of its configuration and input, returning the
//! exit status and output text; `main` only parses arguments and prints.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Number, Value};

use ptolemy_cc::fixtures::FIXTURES;
use ptolemy_cc::oracle::{count_subfunctors, OracleError};
use ptolemy_cc::ptolemy::{diagram_to_json, EnumerationError, ParseError};
use ptolemy_cc::{
    build_band, enumerate, parse_diagram, render, CcMap, Diagonal, Format, PolygonSize,
    PtolemyDiagram, RhoError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ptolemy-cc",
    version,
    about = "Caldero-Chapoton values and friezes of Ptolemy diagrams"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Ptolemy closure rule.
    Validate(InputArgs),
    /// Print rho of one diagonal.
    Rho {
        #[command(flatten)]
        input: InputArgs,
        /// Diagonal as `a,b`.
        #[arg(long, value_parser = parse_pair)]
        diagonal: (u32, u32),
    },
    /// Print rho of every diagonal.
    Table {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print the frieze band and its diamond determinants.
    Frieze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        periods: u32,
    },
    /// Compare the recursion with subfunctor counting on every diagonal.
    Oracle(InputArgs),
    /// Run the bundled worked examples.
    Examples,
    /// Print every Ptolemy diagram of an N-gon, one JSON object per line.
    Enumerate {
        #[arg(long = "n")]
        n: u32,
    },
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Diagram file, or `-` for stdin.
    #[arg(long, conflicts_with = "json", required_unless_present = "json")]
    pub input: Option<PathBuf>,
    /// Diagram given inline as JSON.
    #[arg(long)]
    pub json: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
        }
    }
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

/// Exit status plus the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn load(input: &InputArgs, stdin: &mut dyn Read) -> Result<PtolemyDiagram, Outcome> {
    let (origin, text) = match (&input.input, &input.json) {
        (_, Some(inline)) => ("--json".to_string(), inline.clone()),
        (Some(path), None) if path.as_os_str() == "-" => {
            let mut buf = String::new();
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| Outcome::fail(EXIT_PARSE, format!("stdin: {e}\n")))?;
            ("stdin".to_string(), buf)
        }
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Outcome::fail(EXIT_PARSE, format!("{}: {e}\n", path.display())))?;
            (path.display().to_string(), text)
        }
        (None, None) => return Err(Outcome::fail(EXIT_PARSE, "no input given\n".into())),
    };
    parse_diagram(&text).map_err(|e| {
        let msg = match &e {
            ParseError::Syntax {
                line,
                column,
                message,
            } => format!("{origin}:{line}:{column}: {message}\n"),
            _ => format!("{origin}: {e}\n"),
        };
        Outcome::fail(EXIT_PARSE, msg)
    })
}

fn rho_failure(e: RhoError) -> Outcome {
    Outcome::fail(EXIT_FAILURE, format!("error: {e}\n"))
}

fn number(v: &BigUint) -> Value {
    Value::Number(
        v.to_string()
            .parse::<Number>()
            .expect("decimal digits are a JSON number"),
    )
}

pub fn run(config: &RunConfig, stdin: &mut dyn Read) -> Outcome {
    match &config.command {
        Command::Validate(input) => {
            let diagram = match load(input, stdin) {
                Ok(d) => d,
                Err(o) => return o,
            };
            match diagram.validate() {
                Ok(()) => Outcome::ok("Ok\n".into()),
                Err(v) => Outcome {
                    code: EXIT_FAILURE,
                    stdout: format!(
                        "ClosureViolation: {} and {} cross; missing {}\n",
                        v.first, v.second, v.missing
                    ),
                    stderr: String::new(),
                },
            }
        }
        Command::Rho { input, diagonal } => {
            let diagram = match load(input, stdin) {
                Ok(d) => d,
                Err(o) => return o,
            };
            let d = match Diagonal::new(diagonal.0, diagonal.1, diagram.size()) {
                Ok(d) => d,
                Err(e) => return Outcome::fail(EXIT_PARSE, format!("--diagonal: {e}\n")),
            };
            match CcMap::new(&diagram).and_then(|mut map| map.rho(d)) {
                Ok(v) => Outcome::ok(format!("{v}\n")),
                Err(e) => rho_failure(e),
            }
        }
        Command::Table { input, format } => {
            let diagram = match load(input, stdin) {
                Ok(d) => d,
                Err(o) => return o,
            };
            let table = match CcMap::new(&diagram).and_then(|mut map| map.table()) {
                Ok(t) => t,
                Err(e) => return rho_failure(e),
            };
            let out = match format {
                OutputFormat::Text => table.to_string(),
                OutputFormat::Csv => {
                    let mut s = String::from("a,b,rho\n");
                    for (d, v) in table.iter() {
                        writeln!(s, "{},{},{v}", d.a(), d.b()).unwrap();
                    }
                    s
                }
                OutputFormat::Json => {
                    let rows: Vec<Value> = table
                        .iter()
                        .map(|(d, v)| json!([d.a(), d.b(), number(v)]))
                        .collect();
                    format!("{}\n", json!({"N": diagram.size().get(), "rho": rows}))
                }
            };
            Outcome::ok(out)
        }
        Command::Frieze {
            input,
            format,
            periods,
        } => {
            let diagram = match load(input, stdin) {
                Ok(d) => d,
                Err(o) => return o,
            };
            match CcMap::new(&diagram).and_then(|mut map| map.table()) {
                Ok(table) => Outcome::ok(render(&build_band(&table), (*format).into(), *periods)),
                Err(e) => rho_failure(e),
            }
        }
        Command::Oracle(input) => {
            let diagram = match load(input, stdin) {
                Ok(d) => d,
                Err(o) => return o,
            };
            oracle_report(&diagram)
        }
        Command::Examples => examples(),
        Command::Enumerate { n } => {
            let size = match PolygonSize::new(*n) {
                Ok(s) => s,
                Err(e) => return Outcome::fail(EXIT_PARSE, format!("--n: {e}\n")),
            };
            match enumerate(size) {
                Ok(diagrams) => {
                    let mut out = String::new();
                    for d in diagrams {
                        out.push_str(&diagram_to_json(&d));
                        out.push('\n');
                    }
                    Outcome::ok(out)
                }
                Err(e @ EnumerationError::TooLarge { .. }) => {
                    Outcome::fail(EXIT_GUARD, format!("error: {e}\n"))
                }
            }
        }
    }
}

/// One line per diagonal: `a,b recursion oracle`, with ` MISMATCH` appended
/// when they differ.
fn oracle_report(diagram: &PtolemyDiagram) -> Outcome {
    let mut map = match CcMap::new(diagram) {
        Ok(m) => m,
        Err(e) => return rho_failure(e),
    };
    let mut out = String::new();
    let mut mismatches = 0;
    for d in diagram.size().diagonals() {
        let recursion = match map.rho(d) {
            Ok(v) => v,
            Err(e) => return rho_failure(e),
        };
        let counted = match count_subfunctors(d, diagram) {
            Ok(v) => v,
            Err(e @ OracleError::SupportTooLarge { .. }) => {
                return Outcome::fail(EXIT_GUARD, format!("error: {e}\n"))
            }
            Err(e) => return Outcome::fail(EXIT_FAILURE, format!("error: {e}\n")),
        };
        write!(out, "{},{} {recursion} {counted}", d.a(), d.b()).unwrap();
        if recursion != counted {
            mismatches += 1;
            out.push_str(" MISMATCH");
        }
        out.push('\n');
    }
    Outcome {
        code: if mismatches == 0 {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
        stdout: out,
        stderr: if mismatches == 0 {
            String::new()
        } else {
            format!("{mismatches} mismatches\n")
        },
    }
}

fn examples() -> Outcome {
    let mut out = String::new();
    let mut failed = 0;
    for fixture in FIXTURES {
        let mut failures = fixture.check();
        let diagram = fixture.diagram();
        if let Ok(mut map) = CcMap::new(&diagram) {
            for d in diagram.size().diagonals() {
                let recursion = map.rho(d).ok();
                let counted = count_subfunctors(d, &diagram).ok();
                if recursion.is_none() || recursion != counted {
                    failures.push(format!("oracle disagrees on {d}"));
                }
            }
        }
        if failures.is_empty() {
            writeln!(out, "PASS {}", fixture.name).unwrap();
        } else {
            failed += 1;
            writeln!(out, "FAIL {}: {}", fixture.name, failures.join("; ")).unwrap();
        }
    }
    writeln!(out, "{} passed, {failed} failed", FIXTURES.len() - failed).unwrap();
    Outcome {
        code: if failed == 0 { EXIT_OK } else { EXIT_FAILURE },
        stdout: out,
        stderr: String::new(),
    }
}
