//! The `rotwords` command line.
//!
//! Exit codes: 0 success, 1 verification mismatch (or internal failure),
//! 2 usage error, 3 resource guard. Failures print a single
//! `error: <kind>: <message>` line on stderr.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::counting::{rotation_word_count, CountReport, Method};
use crate::error::Error;
use crate::rationals::{interval_starting_at, Fraction, SlopeRange};
use crate::rotation::{enumerate_rotation_words, enumerate_via_pairs, rotation_words_via_pairs, EnumerateOptions};
use crate::sturmian::st_language;
use crate::verify::verify_all;
use crate::word::{BinaryWord, MAX_LEN};

pub const DEFAULT_GUARD: u64 = 40;

#[derive(Debug, Parser)]
#[command(name = "rotwords", version, about = "Count and enumerate binary rotation words")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for the enumeration oracles (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub parallelism: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest word length the enumeration oracles accept.
    #[arg(long = "max-n", global = true, default_value_t = DEFAULT_GUARD)]
    pub max_n: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print f(N), the number of rotation words of length N.
    Count {
        n: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Print n, f(n) and the ratio 4π²f(n)/(3n⁴) for a comma-separated list.
    Table {
        #[arg(value_delimiter = ',', required = true)]
        ns: Vec<u64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Print every rotation word of length N, sorted.
    Enumerate {
        n: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Geometric)]
        method: MethodArg,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Cross-check the closed form, both oracles and the census laws.
    Verify {
        #[arg(long)]
        max: u64,
    },
    /// Print word, multiplicity, class and predicted multiplicity.
    Census { n: u64 },
    /// Print the Sturmian language of length N for the Farey interval
    /// starting at q/p, and its left special word.
    Sturmian {
        n: u64,
        #[arg(long)]
        interval: String,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OracleArgs {
    /// Skip the slopes sitting exactly on Farey fractions (geometric method).
    #[arg(long)]
    pub no_endpoints: bool,
    #[arg(long, value_enum, default_value_t = RangeArg::Full)]
    pub slope_range: RangeArg,
}

impl OracleArgs {
    fn options(self) -> EnumerateOptions {
        EnumerateOptions {
            slope_range: match self.slope_range {
                RangeArg::Full => SlopeRange::Full,
                RangeArg::BelowHalf => SlopeRange::BelowHalf,
            },
            include_farey_endpoints: !self.no_endpoints,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Geometric,
    Pairs,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Closed => Method::Closed,
            MethodArg::Geometric => Method::Geometric,
            MethodArg::Pairs => Method::Pairs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RangeArg {
    Full,
    BelowHalf,
}

#[derive(Debug)]
enum Failure {
    Mismatch(String),
    Usage(String),
    Guard(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) | Failure::Internal(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Guard(_) => 3,
        }
    }

    fn line(&self) -> String {
        let (kind, msg) = match self {
            Failure::Mismatch(m) => ("verification", m),
            Failure::Usage(m) => ("usage", m),
            Failure::Guard(m) => ("guard", m),
            Failure::Internal(m) => ("internal", m),
        };
        format!("error: {kind}: {}", msg.replace('\n', " "))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::ParseFraction(_) | Error::ParseWord(_) => Failure::Usage(e.to_string()),
            Error::WordTooLong(_) => Failure::Guard(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            let _ = writeln!(err, "{}", Failure::Usage(first).line());
            return 2;
        }
    };
    // Output is buffered and written once the computation is done.
    let mut buffer = Vec::new();
    let result = match config.parallelism {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads as usize).build() {
            Ok(pool) => pool.install(|| execute(&config, &mut buffer)),
            Err(e) => Err(Failure::Internal(e.to_string())),
        },
        None => execute(&config, &mut buffer),
    };
    let written = out.write_all(&buffer).and_then(|()| out.flush());
    match result.and(written.map_err(Failure::from)) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "{}", f.line());
            f.code()
        }
    }
}

fn guard(config: &RunConfig, n: u64) -> Outcome {
    if n > config.max_n {
        return Err(Failure::Guard(format!(
            "n = {n} exceeds the resource guard {}; raise it with --max-n",
            config.max_n
        )));
    }
    if n > MAX_LEN as u64 {
        return Err(Failure::Guard(format!("n = {n} exceeds the {MAX_LEN}-symbol word cap")));
    }
    Ok(())
}

fn positive(n: u64) -> Outcome {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    Ok(())
}

fn oracle_words(
    config: &RunConfig,
    n: u64,
    method: MethodArg,
    oracle: OracleArgs,
) -> Result<BTreeSet<BinaryWord>, Failure> {
    positive(n)?;
    guard(config, n)?;
    match method {
        MethodArg::Geometric => Ok(enumerate_rotation_words(n as usize, oracle.options())?),
        MethodArg::Pairs if n >= 2 => Ok(rotation_words_via_pairs(n as usize - 1)?),
        MethodArg::Pairs => Err(Failure::Usage("the pairs method needs n >= 2".into())),
        MethodArg::Closed => Err(Failure::Usage("the closed method counts but does not enumerate".into())),
    }
}

fn count(config: &RunConfig, n: u64, method: MethodArg, oracle: OracleArgs) -> Result<CountReport, Failure> {
    positive(n)?;
    let f = match method {
        MethodArg::Closed => rotation_word_count(n)?,
        _ => oracle_words(config, n, method, oracle)?.len() as u64,
    };
    Ok(CountReport::new(n, f, method.into()))
}

fn write_reports(out: &mut dyn Write, format: Format, reports: &[CountReport], bare_count: bool) -> Outcome {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, reports).map_err(|e| Failure::Internal(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "n,f,ratio")?;
            for r in reports {
                writeln!(out, "{},{},{:.2}", r.n, r.f, r.ratio)?;
            }
        }
        Format::Text if bare_count => {
            for r in reports {
                writeln!(out, "{}", r.f)?;
            }
        }
        Format::Text => {
            writeln!(out, "{:>5} {:>12} {:>6}", "n", "f", "ratio")?;
            for r in reports {
                writeln!(out, "{:>5} {:>12} {:>6.2}", r.n, r.f, r.ratio)?;
            }
        }
    }
    Ok(())
}

fn parse_canonical_fraction(s: &str) -> Result<Fraction, Failure> {
    let f: Fraction = s.parse()?;
    if f.to_string() != s.trim() {
        return Err(Failure::Usage(format!("fraction {s:?} is not written as reduced q/p")));
    }
    Ok(f)
}

fn execute(config: &RunConfig, out: &mut Vec<u8>) -> Outcome {
    match config.command {
        Command::Count { n, method, oracle } => {
            let report = count(config, n, method, oracle)?;
            write_reports(out, config.format, &[report], true)
        }
        Command::Table { ref ns, method, oracle } => {
            let reports = ns
                .iter()
                .map(|&n| count(config, n, method, oracle))
                .collect::<Result<Vec<_>, _>>()?;
            write_reports(out, config.format, &reports, false)
        }
        Command::Enumerate { n, method, oracle } => {
            for w in oracle_words(config, n, method, oracle)? {
                writeln!(out, "{w}")?;
            }
            Ok(())
        }
        Command::Verify { max } => {
            positive(max)?;
            guard(config, max)?;
            let report = verify_all(max as usize)?;
            for check in &report.checks {
                writeln!(out, "{check}")?;
            }
            let failed = report.failures().count();
            writeln!(out, "verify: {} checks, {failed} failed", report.checks.len())?;
            if failed > 0 {
                return Err(Failure::Mismatch(format!(
                    "{failed} of {} checks failed",
                    report.checks.len()
                )));
            }
            Ok(())
        }
        Command::Census { n } => {
            if n < 2 {
                return Err(Failure::Usage("census needs word length N >= 2".into()));
            }
            guard(config, n)?;
            let census = enumerate_via_pairs(n as usize - 1)?;
            census.export(out)?;
            Ok(())
        }
        Command::Sturmian { n, ref interval } => {
            positive(n)?;
            guard(config, n)?;
            let left = parse_canonical_fraction(interval)?;
            let iv = interval_starting_at(n, left)?;
            let lang = st_language(n as usize, iv)?;
            writeln!(out, "interval\t{iv}")?;
            for w in &lang.words {
                writeln!(out, "{w}")?;
            }
            let special = lang.left_special().map(|w| w.to_string()).unwrap_or_default();
            writeln!(out, "left_special\t{special}")?;
            Ok(())
        }
    }
}
