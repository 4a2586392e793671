//! Command-line surface: encode/decode, sampling, gap tables, series export,
//! Monte Carlo runs, codebook dumps, and the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 I/O
//! failure.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use shortlex::analysis::{gap_table, monte_carlo_length};
use shortlex::codec::{brute_force_codebook, decode, encode};
use shortlex::decimal::{decimal_string, DEFAULT_SIG_DIGITS};
use shortlex::series::{series, SeriesKind};
use shortlex::source::{sample_block, AdmissibleString};
use shortlex::verify::{run_suite, Depth, Suite};
use shortlex::BinaryWord;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INVALID_INPUT: u8 = 2;
const EXIT_IO_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "shortlex",
    about = "Shortlex injective source code for the four-symbol constrained Markov source",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode an admissible source string (argument or stdin) to its codeword.
    Encode {
        /// Source string over A, B, C, D; read from stdin when omitted.
        input: Option<String>,
    },
    /// Decode a binary codeword (argument or stdin) to its source string.
    Decode {
        /// Bit string; read from stdin when omitted.
        input: Option<String>,
    },
    /// Draw blocks from the exact source law.
    Sample {
        /// Block length.
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of blocks to emit, one per line.
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Emit the per-blocklength saving/benchmark table.
    Table {
        /// Largest blocklength.
        n_max: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Pretty)]
        format: TableFormat,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suites.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value_t = DepthArg::Default)]
        depth: DepthArg,
    },
    /// Expand one of the named generating functions.
    Series {
        /// Series name: C, D, B, T, P, or X.
        which: String,
        /// Truncation order.
        #[arg(long)]
        order: u64,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Csv)]
        format: SeriesFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the mean code length.
    Mc {
        /// Block length.
        n: u64,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = McFormat::Pretty)]
        format: McFormat,
    },
    /// Dump the enumeration codebook as SOURCE<TAB>CODEWORD lines.
    Codebook {
        #[arg(long)]
        max_cost: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesFormat {
    Csv,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum McFormat {
    Json,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Identities,
    Codec,
    Analysis,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DepthArg {
    Default,
    Deep,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_IO_FAILED)
        }
    }
}

fn run(command: Command) -> io::Result<ExitCode> {
    match command {
        Command::Encode { input } => {
            let text = read_input(input)?;
            match text.parse::<AdmissibleString>() {
                Ok(block) => {
                    println!("{}", encode(&block));
                    Ok(ExitCode::SUCCESS)
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    Ok(ExitCode::from(EXIT_INVALID_INPUT))
                }
            }
        }
        Command::Decode { input } => {
            let text = read_input(input)?;
            match text.parse::<BinaryWord>() {
                Ok(word) => {
                    println!("{}", decode(&word));
                    Ok(ExitCode::SUCCESS)
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    Ok(ExitCode::from(EXIT_INVALID_INPUT))
                }
            }
        }
        Command::Sample { n, seed, count } => {
            if n == 0 {
                eprintln!("error: block length must be positive");
                return Ok(ExitCode::from(EXIT_INVALID_INPUT));
            }
            for i in 0..count {
                println!("{}", sample_block(n, seed.wrapping_add(i)));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { n_max, format, out } => {
            if n_max == 0 {
                eprintln!("error: n_max must be positive");
                return Ok(ExitCode::from(EXIT_INVALID_INPUT));
            }
            let reports = gap_table(n_max);
            write_output(out, |w| match format {
                TableFormat::Csv => write_table_csv(w, &reports),
                TableFormat::Json => write_table_json(w, &reports),
                TableFormat::Pretty => write_table_pretty(w, &reports),
            })
        }
        Command::Verify { suite, depth } => {
            let depth = match depth {
                DepthArg::Default => Depth::standard(),
                DepthArg::Deep => Depth::deep(),
            };
            let suite = match suite {
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Codec => Suite::Codec,
                SuiteArg::Analysis => Suite::Analysis,
                SuiteArg::All => Suite::All,
            };
            let outcomes = run_suite(suite, depth);
            let mut failures = 0usize;
            for outcome in &outcomes {
                let tag = if outcome.passed { "PASS" } else { "FAIL" };
                match &outcome.detail {
                    Some(detail) => println!("[{tag}] {} -- {detail}", outcome.name),
                    None => println!("[{tag}] {}", outcome.name),
                }
                if !outcome.passed {
                    failures += 1;
                }
            }
            println!("{} checks, {} failed", outcomes.len(), failures);
            Ok(if failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY_FAILED)
            })
        }
        Command::Series {
            which,
            order,
            format,
            out,
        } => {
            let kind: SeriesKind = match which.parse() {
                Ok(kind) => kind,
                Err(err) => {
                    eprintln!("error: {err}");
                    return Ok(ExitCode::from(EXIT_INVALID_INPUT));
                }
            };
            if order == 0 {
                eprintln!("error: order must be positive");
                return Ok(ExitCode::from(EXIT_INVALID_INPUT));
            }
            let expansion = series(kind, order);
            write_output(out, |w| {
                match format {
                    SeriesFormat::Csv => {
                        writeln!(w, "index,value")?;
                        for (t, c) in expansion.coefficients().iter().enumerate() {
                            writeln!(w, "{t},{c}")?;
                        }
                    }
                    SeriesFormat::Pretty => {
                        writeln!(w, "{kind}(z) up to order {order}:")?;
                        for (t, c) in expansion.coefficients().iter().enumerate() {
                            writeln!(w, "  z^{t}: {c}")?;
                        }
                    }
                }
                Ok(())
            })
        }
        Command::Mc {
            n,
            samples,
            seed,
            format,
        } => {
            if n == 0 || samples == 0 {
                eprintln!("error: n and --samples must be positive");
                return Ok(ExitCode::from(EXIT_INVALID_INPUT));
            }
            let estimate = monte_carlo_length(n, samples, seed);
            match format {
                McFormat::Json => println!("{}", serde_json::to_string(&estimate)?),
                McFormat::Pretty => {
                    println!(
                        "n={} samples={} seed={} mean={:.6} std_error={:.6}",
                        estimate.n, estimate.samples, estimate.seed, estimate.mean, estimate.std_error
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Codebook { max_cost, out } => {
            if !(2..=30).contains(&max_cost) {
                eprintln!("error: --max-cost must lie in 2..=30");
                return Ok(ExitCode::from(EXIT_INVALID_INPUT));
            }
            let codebook = brute_force_codebook(max_cost);
            write_output(out, |w| codebook.write_tsv(w))
        }
    }
}

fn read_input(arg: Option<String>) -> io::Result<String> {
    match arg {
        Some(text) => Ok(text.trim().to_string()),
        None => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf)?;
            Ok(buf.trim().to_string())
        }
    }
}

/// Route output to `--out PATH` or stdout; path failures map to exit 3.
fn write_output<F>(out: Option<PathBuf>, body: F) -> io::Result<ExitCode>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match out {
        Some(path) => {
            let file = match File::create(&path) {
                Ok(file) => file,
                Err(err) => {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return Ok(ExitCode::from(EXIT_IO_FAILED));
                }
            };
            let mut writer = BufWriter::new(file);
            body(&mut writer)?;
            writer.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[derive(Serialize)]
struct TableRow {
    n: u64,
    saving_prob: String,
    expected_length: String,
    benchmark: String,
    gap: String,
    gap_times_sqrt_n: String,
}

fn table_row(report: &shortlex::SavingReport) -> TableRow {
    TableRow {
        n: report.n,
        saving_prob: report.saving_prob.to_string(),
        expected_length: report.expected_length.to_string(),
        benchmark: report.benchmark.to_string(),
        gap: report.gap.to_string(),
        gap_times_sqrt_n: format_f64(report.gap_times_sqrt_n()),
    }
}

/// Positional rendering of a double with the default significant digits.
fn format_f64(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let exponent = value.abs().log10().floor() as i32;
    let decimals = (DEFAULT_SIG_DIGITS as i32 - 1 - exponent).max(0) as usize;
    format!("{value:.decimals$}")
}

fn write_table_csv(w: &mut dyn Write, reports: &[shortlex::SavingReport]) -> io::Result<()> {
    writeln!(w, "n,saving_prob,expected_length,benchmark,gap,gap_times_sqrt_n")?;
    for report in reports {
        let row = table_row(report);
        writeln!(
            w,
            "{},{},{},{},{},{}",
            row.n, row.saving_prob, row.expected_length, row.benchmark, row.gap, row.gap_times_sqrt_n
        )?;
    }
    Ok(())
}

fn write_table_json(w: &mut dyn Write, reports: &[shortlex::SavingReport]) -> io::Result<()> {
    let rows: Vec<TableRow> = reports.iter().map(table_row).collect();
    writeln!(w, "{}", serde_json::to_string_pretty(&rows)?)?;
    Ok(())
}

fn write_table_pretty(w: &mut dyn Write, reports: &[shortlex::SavingReport]) -> io::Result<()> {
    writeln!(
        w,
        "{:>6}  {:>16} {:>14}  {:>12} {:>14}  {:>16}",
        "n", "E[L_n]", "(dec)", "P(I_n=1)", "gap", "gap*sqrt(n)"
    )?;
    for report in reports {
        writeln!(
            w,
            "{:>6}  {:>16} {:>14}  {:>12} {:>14}  {:>16}",
            report.n,
            report.expected_length.to_string(),
            decimal_string(&report.expected_length, DEFAULT_SIG_DIGITS),
            report.saving_prob.to_string(),
            report.gap.to_string(),
            format_f64(report.gap_times_sqrt_n()),
        )?;
    }
    Ok(())
}
