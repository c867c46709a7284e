//! Command-line front end. [`run`] parses arguments, writes to the given
//! streams and returns the process exit code:
//! 0 success, 1 usage or I/O, 2 spectral or parse validation, 3 enumeration
//! budget, 4 verification mismatch.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::dirichlet::{assemble, render_local_factor, zeta_string, DirichletTable};
use crate::error::{Error, Result};
use crate::localzeta::{delta, ValuationProfile};
use crate::oracle::{CubicRingSpec, Enumerator};
use crate::polyring::RenderStyle;
use crate::spectra::{analyze, parse_matrix, profiles_from_roots, InputFormat, SpectrumReport};
use crate::verify::{run_suite, Check, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SPECTRAL: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Largest index cross-checked by `ring --check`.
const CHECK_LIMIT: u64 = 60;

#[derive(Debug, Parser)]
#[command(
    name = "ideal-zeta",
    version,
    about = "Exact ideal zeta functions of Z[x]/x(x-α)(x-β)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Local factor δ_p for a valuation profile (p, a, c).
    Delta {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        c: u32,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
    },
    /// Zeta function and coefficient table of Z[x]/x(x-α)(x-β).
    Ring {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 100)]
        limit: u64,
        /// Recount a_n by enumeration for n <= min(limit, 60).
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        output: TableFormat,
    },
    /// Spectral analysis of an integer matrix, then its ring's zeta function.
    Graph {
        /// Input file, or "-" for standard input.
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Auto)]
        format: MatrixFormat,
        #[arg(long, default_value_t = 100)]
        limit: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        output: TableFormat,
    },
    /// Brute-force ideal counts by Hermite normal form enumeration.
    Oracle {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, conflicts_with = "index", required_unless_present = "index")]
        p: Option<u64>,
        #[arg(long, default_value_t = 6, conflicts_with = "index")]
        kmax: u32,
        /// Count all ideals of this index.
        #[arg(long)]
        index: Option<u64>,
        /// One line per ideal type (r1,r2,r3).
        #[arg(long, conflicts_with = "index")]
        per_type: bool,
    },
    /// Built-in self-checks.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Largest index exponent enumerated by the oracle suite.
        #[arg(long, default_value_t = 6)]
        kmax: u32,
        /// Print a JSON summary instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct RingArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: BigInt,
    #[arg(long, allow_negative_numbers = true)]
    beta: BigInt,
}

impl RingArgs {
    fn spec(&self) -> Result<CubicRingSpec> {
        CubicRingSpec::new(self.alpha.clone(), self.beta.clone())
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolyFormat {
    Text,
    Latex,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Auto,
    Matrix,
    Graph6,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Golden,
    Oracle,
    Regions,
    Structure,
    All,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::InvalidProfile(_) | Error::Io(_) => EXIT_USAGE,
        Error::Parse(_)
        | Error::NotThreeEigenvalues(_)
        | Error::NonIntegralSpectrum(_)
        | Error::RepeatedEigenvalue(_) => EXIT_SPECTRAL,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Internal(_) => EXIT_MISMATCH,
    }
}

/// A failure after output may already have been written.
enum Failure {
    Lib(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        // downstream closed early, e.g. `| head`
        Err(Failure::Lib(Error::Io(e))) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "mismatch: {msg}");
            EXIT_MISMATCH
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Delta { p, a, c, format } => cmd_delta(p, a, c, format, out),
        Command::Ring {
            ring,
            limit,
            check,
            output,
        } => cmd_ring(&ring, limit, check, output, out),
        Command::Graph {
            file,
            format,
            limit,
            output,
        } => cmd_graph(&file, format, limit, output, out),
        Command::Oracle {
            ring,
            p,
            kmax,
            index,
            per_type,
        } => cmd_oracle(&ring, p, kmax, index, per_type, out),
        Command::Verify { suite, kmax, json } => cmd_verify(suite, kmax, json, out),
    }
}

fn cmd_delta(p: u64, a: u32, c: u32, format: PolyFormat, out: &mut dyn Write) -> CmdResult {
    let d = delta(&ValuationProfile::new(p, a, c)?)?;
    let style = match format {
        PolyFormat::Text => RenderStyle::Text,
        PolyFormat::Latex => RenderStyle::Latex,
        PolyFormat::Json => RenderStyle::Json,
    };
    writeln!(out, "{}", d.render(style))?;
    Ok(())
}

fn profile_lines(profiles: &BTreeMap<u64, ValuationProfile>) -> Result<Vec<String>> {
    profiles
        .iter()
        .map(|(&p, prof)| {
            let d = delta(prof)?;
            Ok(format!(
                "p={p} a={} c={} delta={} factor={}",
                prof.a(),
                prof.c(),
                d,
                render_local_factor(p, &d, false)
            ))
        })
        .collect()
}

fn write_table(
    table: &DirichletTable,
    header: &[String],
    extra_json: Option<(&str, Value)>,
    output: TableFormat,
    out: &mut dyn Write,
) -> CmdResult {
    match output {
        TableFormat::Text => {
            for line in header {
                writeln!(out, "{line}")?;
            }
            write!(out, "{}", table.to_text())?;
        }
        TableFormat::Csv => write!(out, "{}", table.to_csv())?,
        TableFormat::Json => {
            let mut v: Value =
                serde_json::from_str(&table.to_json()).map_err(|e| Error::Internal(format!("table JSON: {e}")))?;
            if let Some((key, extra)) = extra_json {
                v[key] = extra;
            }
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}

fn cmd_ring(ring: &RingArgs, limit: u64, check: bool, output: TableFormat, out: &mut dyn Write) -> CmdResult {
    let spec = ring.spec()?;
    let profiles = profiles_from_roots(&[BigInt::from(0), spec.alpha().clone(), spec.beta().clone()])?;
    let table = assemble(&profiles, limit)?;
    let mut header = vec![format!("ring: Z[x]/x{}{}", linear(spec.alpha()), linear(spec.beta()))];
    header.extend(profile_lines(&profiles)?);
    header.push(format!("zeta: {}", zeta_string(&profiles, RenderStyle::Text)?));
    write_table(&table, &header, None, output, out)?;
    if check {
        let enumerator = Enumerator::from_env(spec)?;
        let upto = limit.min(CHECK_LIMIT);
        for n in 1..=upto {
            let counted = enumerator.global_count(n)?;
            let formula = table.get(n).expect("n <= limit");
            if &BigInt::from(counted) != formula {
                return Err(Failure::Mismatch(format!(
                    "a_{n}: closed form {formula}, enumeration {counted}"
                )));
            }
        }
        if let TableFormat::Text = output {
            writeln!(out, "check: a_1..a_{upto} agree with enumeration")?;
        }
    }
    Ok(())
}

/// `(x-r)` with the sign folded in.
fn linear(r: &BigInt) -> String {
    if r.sign() == num_bigint::Sign::Minus {
        format!("(x+{})", -r)
    } else {
        format!("(x-{r})")
    }
}

fn read_input(file: &PathBuf) -> Result<String> {
    if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", file.display())))
    }
}

fn report_lines(r: &SpectrumReport) -> Vec<String> {
    let eig: Vec<String> = r.eigenvalues.iter().map(|e| e.to_string()).collect();
    let primes: Vec<String> = r.bad_primes.iter().map(|p| p.to_string()).collect();
    vec![
        format!("characteristic polynomial: {}", r.char_poly),
        format!("minimal polynomial: {}", r.min_poly),
        format!("eigenvalues: {}", eig.join(" ")),
        format!("shifted pair: alpha={} beta={}", r.shifted_pair.0, r.shifted_pair.1),
        format!("bad primes: {}", primes.join(" ")),
    ]
}

fn cmd_graph(file: &PathBuf, format: MatrixFormat, limit: u64, output: TableFormat, out: &mut dyn Write) -> CmdResult {
    let input = read_input(file)?;
    let format = match format {
        MatrixFormat::Auto => InputFormat::Auto,
        MatrixFormat::Matrix => InputFormat::Matrix,
        MatrixFormat::Graph6 => InputFormat::Graph6,
    };
    let matrix = parse_matrix(&input, format)?;
    let report = analyze(&matrix)?;
    let table = assemble(&report.profiles, limit)?;
    let mut header = vec![format!(
        "matrix: {n}x{n}{}",
        if matrix.is_simple_graph() {
            " (simple graph)"
        } else {
            ""
        },
        n = matrix.dim()
    )];
    header.extend(report_lines(&report));
    header.extend(profile_lines(&report.profiles)?);
    header.push(format!("zeta: {}", zeta_string(&report.profiles, RenderStyle::Text)?));
    header.push(format!(
        "zeta (latex): {}",
        zeta_string(&report.profiles, RenderStyle::Latex)?
    ));
    let extra = json!({
        "eigenvalues": report.eigenvalues.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "char_poly": report.char_poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "min_poly": report.min_poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "profiles": report.profiles.iter()
            .map(|(p, prof)| (p.to_string(), json!([prof.a(), prof.c()])))
            .collect::<serde_json::Map<_, _>>(),
    });
    write_table(&table, &header, Some(("spectrum", extra)), output, out)
}

fn cmd_oracle(
    ring: &RingArgs,
    p: Option<u64>,
    kmax: u32,
    index: Option<u64>,
    per_type: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let enumerator = Enumerator::from_env(ring.spec()?)?;
    if let Some(n) = index {
        writeln!(out, "{}", enumerator.global_count(n)?)?;
        return Ok(());
    }
    let p = p.expect("clap requires --p without --index");
    if per_type {
        for (t, n) in enumerator.per_type_counts(p, kmax)? {
            writeln!(out, "{t} {n}")?;
        }
    } else {
        for (k, n) in enumerator.local_counts(p, kmax)?.into_iter().enumerate() {
            writeln!(out, "{p}^{k} {n}")?;
        }
    }
    Ok(())
}

fn cmd_verify(suite: SuiteArg, kmax: u32, as_json: bool, out: &mut dyn Write) -> CmdResult {
    let suites: Vec<Suite> = match suite {
        SuiteArg::Golden => vec![Suite::Golden],
        SuiteArg::Oracle => vec![Suite::Oracle],
        SuiteArg::Regions => vec![Suite::Regions],
        SuiteArg::Structure => vec![Suite::Structure],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut checks: Vec<Check> = Vec::new();
    for s in suites {
        checks.extend(run_suite(s, kmax)?);
    }
    if as_json {
        let list: Vec<Value> = checks
            .iter()
            .map(|c| json!({"suite": c.suite.name(), "name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        let passed = checks.iter().all(|c| c.passed);
        writeln!(out, "{}", json!({"passed": passed, "checks": list}))?;
    } else {
        for c in &checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{tag} [{}] {}: {}", c.suite.name(), c.name, c.detail)?;
        }
    }
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(Failure::Mismatch(format!("{}: {}", c.name, c.detail))),
        None => Ok(()),
    }
}
