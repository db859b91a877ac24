//! `bsort` — sort, verify, benchmark, and trace the in-place binary radix
//! sort from the command line.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 parse/usage error,
//! 3 I/O error.

use bsort::scheme::WordScheme;
use bsort::{
    checksum, emit_csv, emit_plot, generate, random_check, run_bench_prepared, sort_raws_native,
    trace_sort, Algo, BenchError, DatasetSpec, Distribution, PlotError, PreparedDataset, Trace,
};
use bsort_cli::{fmt_bin, fmt_text};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::{Read, Write};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "bsort",
    version,
    about = "In-place binary radix sorting for unsigned, signed, and float words",
    after_help = "Scheme codes: u8 u16 u32 u64 i8 i16 i32 i64 f32 f64, plus the toy \
                  schemes f6 (1+3+2-bit float), u3, i4.\n\
                  The default random seed is 42; the BSORT_SEED environment variable \
                  overrides it and --seed overrides both."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sort values from a file or stdin to a file or stdout.
    Sort(SortArgs),
    /// Check the sort against the comparison oracle on random inputs.
    Verify(VerifyArgs),
    /// Time the sort against baselines; emit CSV records and SVG plots.
    Bench(BenchArgs),
    /// Print the level-by-level partition trace for a list of values.
    Trace(TraceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    Asc,
    Desc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Whitespace-separated decimal values.
    Text,
    /// The BSRT bit-exact container.
    Binary,
}

fn parse_scheme(code: &str) -> Result<WordScheme, String> {
    fmt_bin::cli_scheme(code)
}

fn parse_algo(code: &str) -> Result<Algo, String> {
    code.parse()
}

/// Element counts: plain integers or scientific notation like `1e6`.
fn parse_size(text: &str) -> Result<u64, String> {
    if let Ok(n) = text.parse::<u64>() {
        return Ok(n);
    }
    let err = || format!("{text:?} is not an element count (use e.g. 100000 or 1e5)");
    let v: f64 = text.parse().map_err(|_| err())?;
    if v.fract() != 0.0 || !(0.0..=2f64.powi(53)).contains(&v) {
        return Err(err());
    }
    Ok(v as u64)
}

#[derive(Args)]
struct SortArgs {
    /// Scheme code for the values.
    #[arg(long = "type", value_name = "SCHEME", value_parser = parse_scheme)]
    scheme: WordScheme,
    #[arg(long, value_enum, default_value_t = Order::Asc)]
    order: Order,
    /// Input path (stdin when omitted).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Value format for both input and output.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to one scheme (all schemes when omitted).
    #[arg(long = "type", value_name = "SCHEME", value_parser = parse_scheme)]
    scheme: Option<WordScheme>,
    /// Random inputs per scheme; each is checked in both directions.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Array lengths are drawn uniformly from 0..=max-len.
    #[arg(long = "max-len", default_value_t = 256)]
    max_len: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct BenchArgs {
    /// Scheme codes to benchmark (comma-separated).
    #[arg(
        long = "type",
        value_name = "SCHEME",
        value_parser = parse_scheme,
        value_delimiter = ',',
        default_value = "u32"
    )]
    schemes: Vec<WordScheme>,
    /// Element counts (comma-separated; scientific notation accepted).
    #[arg(long, value_parser = parse_size, value_delimiter = ',', default_value = "10000,100000,1000000")]
    sizes: Vec<u64>,
    /// Algorithms to time: bsort, platform-sort, oracle.
    #[arg(long, value_parser = parse_algo, value_delimiter = ',', default_value = "bsort,platform-sort")]
    algos: Vec<Algo>,
    /// Timed repeats per (dataset, algorithm); at least 3.
    #[arg(long, default_value_t = 5)]
    repeats: u32,
    #[arg(long)]
    seed: Option<u64>,
    /// Benchmark a dataset from a BSRT file instead of generating
    /// (--type and --sizes are ignored).
    #[arg(long)]
    input: Option<PathBuf>,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Directory for one SVG plot per scheme (skipped when omitted).
    #[arg(long = "plot-dir")]
    plot_dir: Option<PathBuf>,
}

#[derive(Args)]
struct TraceArgs {
    /// Scheme code for the values.
    #[arg(long = "type", value_name = "SCHEME", value_parser = parse_scheme)]
    scheme: WordScheme,
    #[arg(long, value_enum, default_value_t = Order::Asc)]
    order: Order,
    /// The values to trace (space- or comma-separated); put flags before
    /// them so negative values are not read as options.
    #[arg(value_name = "VALUES", required = true, allow_hyphen_values = true)]
    values: Vec<String>,
}

/// Failures mapped to exit codes: mismatch 1, parse 2, I/O 3.
enum CliError {
    Mismatch(String),
    Parse(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Mismatch(m) | CliError::Parse(m) | CliError::Io(m) => m,
        }
    }
}

fn io_err(context: &str, e: std::io::Error) -> CliError {
    // A consumer like `bsort ... | head` closing the pipe early is not a
    // failure; stop quietly instead of reporting a write error.
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    CliError::Io(format!("{context}: {e}"))
}

fn main() {
    // Clap itself exits with code 2 on usage errors, matching the contract.
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sort(args) => cmd_sort(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Trace(args) => cmd_trace(args),
    };
    if let Err(e) = result {
        eprintln!("bsort: {}", e.message());
        std::process::exit(e.code());
    }
}

/// --seed beats BSORT_SEED beats the default 42.
fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("BSORT_SEED") {
        Ok(text) => text.trim().parse().map_err(|_| {
            CliError::Parse(format!("BSORT_SEED {text:?} is not a 64-bit unsigned integer"))
        }),
        Err(_) => Ok(42),
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<Vec<u8>, CliError> {
    match path {
        Some(p) => std::fs::read(p).map_err(|e| io_err(&format!("reading {}", p.display()), e)),
        None => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).map_err(|e| io_err("reading stdin", e))?;
            Ok(buf)
        }
    }
}

fn write_output(path: &Option<PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, bytes).map_err(|e| io_err(&format!("writing {}", p.display()), e))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).and_then(|()| out.flush()).map_err(|e| io_err("writing stdout", e))
        }
    }
}

fn cmd_sort(args: SortArgs) -> Result<(), CliError> {
    let asc = args.order == Order::Asc;
    let bytes = read_input(&args.input)?;
    let mut words = match args.format {
        Format::Text => {
            let text = String::from_utf8(bytes)
                .map_err(|_| CliError::Parse("input is not valid UTF-8 text".to_string()))?;
            fmt_text::parse_text(&text, &args.scheme).map_err(CliError::Parse)?
        }
        Format::Binary => {
            let (file_scheme, words) = fmt_bin::read_bsrt(&bytes).map_err(CliError::Parse)?;
            if file_scheme != args.scheme {
                return Err(CliError::Parse(format!(
                    "file carries scheme {}, but --type says {}",
                    file_scheme.code(),
                    args.scheme.code()
                )));
            }
            words
        }
    };
    sort_raws_native(&mut words, &args.scheme, asc).expect("registry schemes fit their containers");
    let out = match args.format {
        Format::Text => {
            let mut text = fmt_text::format_words(&words, &args.scheme);
            text.push('\n');
            text.into_bytes()
        }
        Format::Binary => fmt_bin::write_bsrt(&args.scheme, &words),
    };
    write_output(&args.output, &out)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed)?;
    let schemes = match args.scheme {
        Some(s) => vec![s],
        None => fmt_bin::all_schemes(),
    };
    let mut out = std::io::stdout().lock();
    let stdout_err = |e| io_err("writing stdout", e);
    let mut total_cases = 0;
    let mut first_failure = None;
    let mut failed_schemes = 0;
    for (i, scheme) in schemes.iter().enumerate() {
        let report = random_check(scheme, args.trials, args.max_len, seed.wrapping_add(i as u64));
        writeln!(
            out,
            "{:>4}: {} cases, {} mismatches, {} bound violations",
            scheme.code(),
            report.cases,
            report.mismatches,
            report.bound_violations
        )
        .map_err(stdout_err)?;
        total_cases += report.cases;
        if !report.passed() {
            failed_schemes += 1;
            if first_failure.is_none() {
                first_failure = report.first_failure;
            }
        }
    }
    match first_failure {
        None => {
            writeln!(out, "verify: all {total_cases} cases passed (seed {seed})")
                .map_err(stdout_err)?;
            Ok(())
        }
        Some(case) => {
            eprintln!("{case}");
            Err(CliError::Mismatch(format!(
                "{failed_schemes} scheme(s) failed verification (seed {seed})"
            )))
        }
    }
}

fn bench_error(e: BenchError) -> CliError {
    match e {
        BenchError::VerificationFailed { .. } => CliError::Mismatch(e.to_string()),
        other => CliError::Parse(other.to_string()),
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed)?;
    let sets = match &args.input {
        Some(path) => {
            let bytes = std::fs::read(path)
                .map_err(|e| io_err(&format!("reading {}", path.display()), e))?;
            let (scheme, data) = fmt_bin::read_bsrt(&bytes).map_err(CliError::Parse)?;
            eprintln!(
                "dataset scheme={} size={} source=file checksum={:#018x}",
                scheme.code(),
                data.len(),
                checksum(&data)
            );
            vec![PreparedDataset { scheme, distribution: "file".to_string(), data }]
        }
        None => {
            let mut sets = Vec::new();
            for scheme in &args.schemes {
                for &size in &args.sizes {
                    let spec = DatasetSpec {
                        scheme: *scheme,
                        size: size as usize,
                        distribution: Distribution::UniformBits,
                        seed,
                    };
                    let data = generate(&spec).map_err(|e| CliError::Parse(e.to_string()))?;
                    eprintln!(
                        "dataset scheme={} size={size} distribution=uniform-bits seed={seed} checksum={:#018x}",
                        scheme.code(),
                        checksum(&data)
                    );
                    sets.push(PreparedDataset {
                        scheme: *scheme,
                        distribution: spec.distribution.to_string(),
                        data,
                    });
                }
            }
            sets
        }
    };
    let records = run_bench_prepared(&sets, &args.algos, args.repeats).map_err(bench_error)?;
    match &args.csv {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| io_err(&format!("creating {}", path.display()), e))?;
            emit_csv(&records, &mut file)
                .map_err(|e| io_err(&format!("writing {}", path.display()), e))?;
            eprintln!("wrote {} records to {}", records.len(), path.display());
        }
        None => {
            emit_csv(&records, &mut std::io::stdout().lock())
                .map_err(|e| io_err("writing stdout", e))?;
        }
    }
    if let Some(dir) = &args.plot_dir {
        let paths = emit_plot(&records, dir).map_err(|e| match e {
            PlotError::Io(io) => io_err(&format!("writing plots under {}", dir.display()), io),
            other => CliError::Parse(other.to_string()),
        })?;
        for path in paths {
            eprintln!("wrote plot {}", path.display());
        }
    }
    Ok(())
}

fn cmd_trace(args: TraceArgs) -> Result<(), CliError> {
    let asc = args.order == Order::Asc;
    let tokens: Vec<&str> = args
        .values
        .iter()
        .flat_map(|v| v.split(','))
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    let text = tokens.join(" ");
    let words = fmt_text::parse_text(&text, &args.scheme).map_err(CliError::Parse)?;
    let trace = trace_sort(&words, &args.scheme, asc);
    let mut rendered = render_trace(&trace);
    rendered.push('\n');
    write_output(&None, rendered.as_bytes())
}

/// One line per level: the mask about to be used, the array in binary with
/// `|` at every partition boundary found so far, and the partition indices
/// the previous level produced.
fn render_trace(trace: &Trace) -> String {
    let scheme = &trace.scheme;
    let w = scheme.width() as usize;
    let mut out = format!(
        "scheme {}, {}, {} value(s)",
        scheme.code(),
        if trace.ascending { "ascending" } else { "descending" },
        trace.sorted_words().len()
    );
    for row in &trace.rows {
        let mut line = format!("\nm={:0w$b}  ", row.mask.value(), w = w);
        for (i, &word) in row.words.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            if row.boundaries.binary_search(&i).is_ok() {
                line.push_str("| ");
            }
            line.push_str(&format!("{word:0w$b}", w = w));
        }
        if !row.new_boundaries.is_empty() {
            let ks: Vec<String> = row.new_boundaries.iter().map(|k| k.to_string()).collect();
            line.push_str(&format!("  k={}", ks.join(",")));
        }
        out.push_str(&line);
    }
    out.push_str(&format!("\nsorted: {}", fmt_text::format_words(trace.sorted_words(), scheme)));
    out
}
