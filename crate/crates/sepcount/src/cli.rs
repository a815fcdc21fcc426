//! The `sepcount` command line.
//!
//! Every command streams JSON-lines [`OutputRecord`]s to stdout, except
//! `table`, which writes CSV by default. Exit status: 0 on success, 1 on a
//! usage error (including malformed polynomials), 2 on a domain error (bad modulus, non-monic input, budget
//! exceeded), 3 when a verification finds a mismatch.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use sepcount_core::census::{self, CountMode, CountResult};
use sepcount_core::{septest, Modulus, PolyZn};

use crate::oracle::{EnumerationQuery, Oracle, OracleError, Status, DEFAULT_BUDGET};
use crate::record::{rational_string, Factor, OutputRecord, Provenance, TableRow, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sepcount",
    version,
    about = "Separable polynomials over Z/n: tests, discriminants and exact counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ModulusArg {
    /// The modulus n (|n| >= 2)
    #[arg(short = 'n', allow_negative_numbers = true)]
    n: i128,
}

#[derive(Debug, Args)]
struct PolyArgs {
    #[command(flatten)]
    modulus: ModulusArg,
    /// Polynomial, e.g. "3x^2+x+5" or ascending coefficients "5,1,3"
    #[arg(short = 'f', allow_hyphen_values = true)]
    poly: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Monic polynomials of degree exactly d
    Monic,
    /// All polynomials of degree at most d
    Leq,
    /// Polynomials whose x^d coefficient is nonzero
    Exact,
}

impl From<ModeArg> for CountMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Monic => CountMode::MonicExact,
            ModeArg::Leq => CountMode::AllLeq,
            ModeArg::Exact => CountMode::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableMode {
    All,
    Monic,
    Leq,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Maximum number of coefficient tuples to enumerate
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    workers: Option<usize>,
}

impl OracleArgs {
    fn oracle(&self) -> Oracle {
        let oracle = Oracle::new().with_budget(self.budget);
        match self.workers {
            Some(w) => oracle.with_workers(w),
            None => oracle,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Prime factorization of n
    Factor(ModulusArg),
    /// Decide whether f is separable over Z/n
    Check(PolyArgs),
    /// Discriminant of a monic f (determinant of its trace form)
    Disc(PolyArgs),
    /// Trace form tr(x^(i+j)) of a monic f
    TraceForm(PolyArgs),
    /// Closed-form count of separable polynomials
    Count {
        #[arg(long, value_enum, default_value_t = ModeArg::Leq)]
        mode: ModeArg,
        #[command(flatten)]
        modulus: ModulusArg,
        #[arg(short = 'd')]
        degree: u32,
        /// Also enumerate and report provenance "both"
        #[arg(long)]
        cross_check: bool,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Add an approximate decimal rendering with this many digits
        #[arg(long)]
        decimal: Option<usize>,
    },
    /// Exact proportion of separable polynomials
    Proportion {
        #[arg(long, value_enum, default_value_t = ModeArg::Monic)]
        mode: ModeArg,
        #[command(flatten)]
        modulus: ModulusArg,
        #[arg(short = 'd', default_value_t = 2)]
        degree: u32,
        #[arg(long)]
        decimal: Option<usize>,
    },
    /// Count separable polynomials by exhaustive enumeration
    Enumerate {
        #[arg(long, value_enum, default_value_t = ModeArg::Leq)]
        mode: ModeArg,
        #[command(flatten)]
        modulus: ModulusArg,
        #[arg(short = 'd')]
        degree: u32,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Enumerate each prime-power component separately and combine
        #[arg(long)]
        crt: bool,
        #[arg(long)]
        decimal: Option<usize>,
    },
    /// Compare enumeration with the closed forms for every d <= d-max and mode
    Verify {
        #[command(flatten)]
        modulus: ModulusArg,
        #[arg(long = "d-max")]
        d_max: u32,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Closed-form counts over ranges of n and d
    Table {
        /// Moduli: "LO..HI" (inclusive) or a comma list
        #[arg(short = 'n', long = "n")]
        n: String,
        /// Degrees: "LO..HI" (inclusive) or a comma list
        #[arg(short = 'd', long = "d")]
        d: String,
        #[arg(long, value_enum, default_value_t = TableMode::All)]
        mode: TableMode,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    Mismatch,
    Io(std::io::Error),
}

impl From<sepcount_core::Error> for Failure {
    fn from(e: sepcount_core::Error) -> Self {
        match e {
            sepcount_core::Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Mismatch) => {
            let _ = writeln!(err, "error: enumeration disagrees with the closed form");
            EXIT_MISMATCH
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn modulus(arg: &ModulusArg) -> Result<Modulus, Failure> {
    Ok(Modulus::from_signed(arg.n)?)
}

fn parse_poly(args: &PolyArgs) -> Result<(Modulus, PolyZn), Failure> {
    let m = modulus(&args.modulus)?;
    let f = PolyZn::parse(&args.poly, &m)?;
    Ok((m, f))
}

fn poly_record(command: &str, m: &Modulus, f: &PolyZn, value: Value) -> OutputRecord {
    OutputRecord::new(command, value, Provenance::Formula)
        .input("n", m.n())
        .input("f", f)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Factor(arg) => {
            let m = modulus(&arg)?;
            let factors = m
                .factors()
                .iter()
                .map(|pp| Factor {
                    prime: pp.prime,
                    exponent: pp.exponent,
                })
                .collect();
            OutputRecord::new("factor", Value::Factors(factors), Provenance::Formula)
                .input("n", m.n())
                .write_line(out)?;
        }
        Command::Check(args) => {
            let (m, f) = parse_poly(&args)?;
            let separable = septest::is_separable(&f);
            poly_record("check", &m, &f, Value::Bool(separable)).write_line(out)?;
        }
        Command::Disc(args) => {
            let (m, f) = parse_poly(&args)?;
            let disc = septest::discriminant(&f)?;
            let value = Value::Residue {
                value: disc.value(),
                modulus: m.n(),
            };
            poly_record("disc", &m, &f, value).write_line(out)?;
        }
        Command::TraceForm(args) => {
            let (m, f) = parse_poly(&args)?;
            let form = septest::trace_form(&f)?;
            poly_record("trace-form", &m, &f, Value::Matrix(form.rows())).write_line(out)?;
        }
        Command::Count {
            mode,
            modulus: n,
            degree,
            cross_check,
            oracle,
            decimal,
        } => {
            let m = modulus(&n)?;
            let mode = CountMode::from(mode);
            let result = census::count(&m, degree, mode);
            let mut provenance = Provenance::Formula;
            if cross_check {
                let query = EnumerationQuery::new(&m, degree, mode);
                let enumerated = oracle.oracle().crt_product_count(&query)?;
                if enumerated != result.count {
                    return Err(Failure::Mismatch);
                }
                provenance = Provenance::Both;
            }
            OutputRecord::new("count", Value::count(&result, decimal), provenance)
                .input("n", m.n())
                .input("d", degree)
                .input("mode", mode)
                .write_line(out)?;
        }
        Command::Proportion {
            mode,
            modulus: n,
            degree,
            decimal,
        } => {
            let m = modulus(&n)?;
            let mode = CountMode::from(mode);
            let ratio = match mode {
                CountMode::MonicExact => census::proportion_monic_separable(&m, degree)?,
                _ => census::count(&m, degree, mode).proportion,
            };
            OutputRecord::new("proportion", Value::rational(&ratio, decimal), Provenance::Formula)
                .input("n", m.n())
                .input("d", degree)
                .input("mode", mode)
                .write_line(out)?;
        }
        Command::Enumerate {
            mode,
            modulus: n,
            degree,
            oracle,
            crt,
            decimal,
        } => {
            let m = modulus(&n)?;
            let mode = CountMode::from(mode);
            let query = EnumerationQuery::new(&m, degree, mode);
            let oracle = oracle.oracle();
            let count = if crt {
                oracle.crt_product_count(&query)?
            } else {
                oracle.enumerate_count(&query)?
            };
            let result = census::CountResult::new(count, query.size());
            OutputRecord::new("enumerate", Value::count(&result, decimal), Provenance::Enumeration)
                .input("n", m.n())
                .input("d", degree)
                .input("mode", mode)
                .input("method", if crt { "crt" } else { "full" })
                .write_line(out)?;
        }
        Command::Verify {
            modulus: n,
            d_max,
            oracle,
        } => {
            let m = modulus(&n)?;
            let reports = oracle.oracle().verify(&m, d_max);
            let mut mismatch = false;
            for report in &reports {
                let status = report.status();
                mismatch |= status == Status::Mismatch;
                let provenance = match status {
                    Status::Skipped => Provenance::Formula,
                    _ => Provenance::Both,
                };
                let value = Value::Verification {
                    degree: report.query.degree,
                    mode: report.query.mode.to_string(),
                    formula: report.formula_count.to_string(),
                    oracle: report.oracle_count.as_ref().map(BigUint::to_string),
                    status: status.as_str().to_owned(),
                    elapsed_us: report.elapsed.as_micros() as u64,
                };
                OutputRecord::new("verify", value, provenance)
                    .input("n", m.n())
                    .input("d_max", d_max)
                    .write_line(out)?;
            }
            if mismatch {
                return Err(Failure::Mismatch);
            }
        }
        Command::Table { n, d, mode, format } => {
            let moduli = parse_range(&n, "n")?;
            let degrees = parse_range(&d, "d")?;
            let modes: Vec<CountMode> = match mode {
                TableMode::All => CountMode::ALL.to_vec(),
                TableMode::Monic => vec![CountMode::MonicExact],
                TableMode::Leq => vec![CountMode::AllLeq],
                TableMode::Exact => vec![CountMode::Exact],
            };
            let mut rows = Vec::new();
            for &n in &moduli {
                let m = Modulus::new(n)?;
                for &d in &degrees {
                    let d = u32::try_from(d)
                        .map_err(|_| Failure::Usage(format!("degree {d} is too large")))?;
                    for &mode in &modes {
                        rows.push((n, d, mode, census::count(&m, d, mode)));
                    }
                }
            }
            write_table(&rows, format, out)?;
        }
    }
    Ok(())
}

type Row = (u64, u32, CountMode, CountResult);

fn write_table(rows: &[Row], format: TableFormat, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for (n, d, mode, r) in rows {
                w.serialize(TableRow {
                    n: *n,
                    d: *d,
                    mode: mode.to_string(),
                    count: r.count.to_string(),
                    proportion: rational_string(&r.proportion),
                })?;
            }
            if rows.is_empty() {
                w.write_record(["n", "d", "mode", "count", "proportion"])?;
            }
            w.flush()?;
        }
        TableFormat::Jsonl => {
            for (n, d, mode, r) in rows {
                OutputRecord::new("table", Value::count(r, None), Provenance::Formula)
                    .input("n", n)
                    .input("d", d)
                    .input("mode", mode)
                    .write_line(out)?;
            }
        }
    }
    Ok(())
}

/// `"LO..HI"` (inclusive), a comma list, or a single number.
fn parse_range(text: &str, what: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::Usage(format!("invalid {what} range {text:?}"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(num).collect()
}
