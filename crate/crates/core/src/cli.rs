//! The `nac` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse or validation error,
//! 3 budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::circuit::{parse_circuit, Circuit, Monomial};
use crate::densepoly::{expand, DenseError, DEFAULT_MAX_TERMS};
use crate::factor::{factor, is_irreducible, FactorError};
use crate::pit::pit;
use crate::transform::{coefficient, constant_term, homogenize, left_derivative, right_derivative};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nac", version, about = "Identity testing and factorization of nonassociative circuits")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the circuit computes zero.
    Pit { file: PathBuf },
    /// Factor into irreducibles, writing factor_NNN.circ and a manifest.
    Factor {
        file: PathBuf,
        #[arg(short, long, default_value = ".")]
        output: PathBuf,
    },
    /// Coefficient of a monomial; `1` names the constant term.
    Coeff { file: PathBuf, monomial: String },
    /// Left or right derivative by a monomial.
    Deriv {
        #[arg(long, value_enum)]
        side: SideArg,
        file: PathBuf,
        monomial: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Split into homogeneous parts, one file per nonzero degree.
    Homogenize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Dense expansion, refused above the term budget.
    Expand {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max_terms: usize,
    },
    /// Print IRREDUCIBLE or REDUCIBLE.
    Irreducible { file: PathBuf },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure { code: EXIT_INVALID, message: message.to_string() }
    }
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    parse_circuit(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn parse_monomial(text: &str) -> Result<Option<Monomial>, Failure> {
    if text.trim() == "1" {
        return Ok(None);
    }
    text.parse::<Monomial>().map(Some).map_err(|e| Failure::invalid(format!("monomial `{text}`: {e}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn create_dir(path: &Path) -> Result<(), Failure> {
    fs::create_dir_all(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn factor_error(e: FactorError) -> Failure {
    Failure::invalid(e)
}

/// Runs one command and returns its stdout text.
pub fn execute(config: &CliConfig) -> Result<String, Failure> {
    let mut out = String::new();
    match &config.command {
        Command::Pit { file } => {
            out = format!("{}\n", pit(&read_circuit(file)?));
        }
        Command::Factor { file, output } => {
            let c = read_circuit(file)?;
            let fz = factor(&c).map_err(factor_error)?;
            let check = fz.product(c.field(), c.num_vars()).minus(&c);
            if !pit(&check).is_zero() {
                return Err(Failure::invalid("factorization failed its identity check"));
            }
            create_dir(output)?;
            let mut manifest = format!("unit {}\n", fz.unit);
            if let Some(shape) = &fz.shape {
                manifest.push_str(&format!("shape {shape}\n"));
            }
            for (i, f) in fz.factors.iter().enumerate() {
                let name = format!("factor_{:03}.circ", i + 1);
                write_file(&output.join(&name), &f.simplified().to_string())?;
                manifest.push_str(&name);
                manifest.push('\n');
            }
            write_file(&output.join("manifest.txt"), &manifest)?;
            out = format!("FACTORS {}\n{manifest}", fz.factors.len());
        }
        Command::Coeff { file, monomial } => {
            let c = read_circuit(file)?;
            let s = match parse_monomial(monomial)? {
                Some(m) => coefficient(&c, &m),
                None => constant_term(&c),
            };
            out = format!("{s}\n");
        }
        Command::Deriv { side, file, monomial, output } => {
            let c = read_circuit(file)?;
            let m = parse_monomial(monomial)?.ok_or_else(|| Failure::invalid("derivative by the empty monomial"))?;
            let d = match side {
                SideArg::Left => left_derivative(&c, &m),
                SideArg::Right => right_derivative(&c, &m),
            }
            .map_err(Failure::invalid)?;
            let text = d.simplified().to_string();
            match output {
                Some(path) => write_file(path, &text)?,
                None => out = text,
            }
        }
        Command::Homogenize { file, output } => {
            let c = read_circuit(file)?;
            create_dir(output)?;
            for (j, part) in homogenize(&c).parts.iter().enumerate() {
                if let Some(part) = part {
                    let name = format!("part_{j:03}.circ");
                    write_file(&output.join(&name), &part.simplified().to_string())?;
                    out.push_str(&name);
                    out.push('\n');
                }
            }
        }
        Command::Expand { file, max_terms } => {
            let c = read_circuit(file)?;
            out = match expand(&c, *max_terms) {
                Ok(p) => p.to_string(),
                Err(e @ DenseError::TermBudgetExceeded { .. }) => {
                    return Err(Failure { code: EXIT_BUDGET, message: e.to_string() })
                }
                Err(e) => return Err(Failure::invalid(e)),
            };
        }
        Command::Irreducible { file } => {
            let irreducible = is_irreducible(&read_circuit(file)?).map_err(factor_error)?;
            out = if irreducible { "IRREDUCIBLE\n" } else { "REDUCIBLE\n" }.to_string();
        }
    }
    Ok(out)
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&config) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(stderr, "nac: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("nac").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&[]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["deriv", "--side", "up", "f", "x1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn missing_file_is_invalid() {
        let (code, _, err) = run_capture(&["pit", "/nonexistent/f.circ"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.starts_with("nac: "));
    }
}
