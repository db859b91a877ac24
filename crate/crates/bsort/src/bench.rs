//! Benchmark harness: timed runs, CSV records, SVG plots.
//!
//! The timed region contains exactly one sort of one pre-built native buffer.
//! Dataset generation, the per-repeat clone into the native container, the
//! conversion back and the verification against the oracle all happen outside
//! it, and a verification mismatch aborts the whole run rather than producing
//! a row for a wrong sort.

use crate::gen::{generate, DatasetSpec, GenError};
use crate::oracle::oracle_sort;
use crate::scheme::{SchemeKind, WordScheme};
use crate::sort::{sort_words, RawWord};
use crate::stats::SortStats;
use std::error::Error;
use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Algorithms the harness can time.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Algo {
    /// The in-place binary radix sort.
    Bsort,
    /// The standard library's comparison sort on the native type
    /// (`sort_unstable`, floats by `total_cmp`).
    PlatformSort,
    /// The key-transform oracle sort (allocates keys; informational).
    Oracle,
}

impl Algo {
    pub const ALL: [Algo; 3] = [Algo::Bsort, Algo::PlatformSort, Algo::Oracle];

    pub fn code(self) -> &'static str {
        match self {
            Algo::Bsort => "bsort",
            Algo::PlatformSort => "platform-sort",
            Algo::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Algo, String> {
        Algo::ALL
            .into_iter()
            .find(|a| a.code() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// The counter totals a benchmark row carries for bsort runs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StatsSummary {
    pub inspections: u64,
    pub swaps: u64,
    pub max_depth: u32,
}

impl From<&SortStats> for StatsSummary {
    fn from(stats: &SortStats) -> StatsSummary {
        StatsSummary {
            inspections: stats.total_inspections(),
            swaps: stats.swaps,
            max_depth: stats.max_depth,
        }
    }
}

/// One timed sort: one algorithm, one dataset, one repeat.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BenchRecord {
    pub algo: Algo,
    /// Scheme code, e.g. `u32`.
    pub scheme: String,
    pub size: u64,
    /// Distribution code, e.g. `uniform-bits`, or `file` for loaded datasets.
    pub distribution: String,
    /// Repeat index, `0..repeats`.
    pub repeat: u32,
    /// Wall time of the timed region, always positive.
    pub ns: u64,
    /// Counter totals; bsort rows only.
    pub stats: Option<StatsSummary>,
}

/// A dataset ready to benchmark: raw words plus their identity labels.
#[derive(Clone, PartialEq, Debug)]
pub struct PreparedDataset {
    pub scheme: WordScheme,
    /// Distribution label for the CSV rows.
    pub distribution: String,
    pub data: Vec<u64>,
}

/// Errors from the benchmark harness.
#[derive(Debug)]
pub enum BenchError {
    InvalidParameter(String),
    Gen(GenError),
    /// The algorithm cannot run this scheme (platform sort on a toy float).
    Unsupported {
        algo: String,
        scheme: String,
    },
    /// A sorted output differed from the oracle; the run aborts.
    VerificationFailed {
        algo: String,
        scheme: String,
        size: u64,
        repeat: u32,
    },
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            BenchError::Gen(e) => write!(f, "dataset generation failed: {e}"),
            BenchError::Unsupported { algo, scheme } => {
                write!(f, "algorithm {algo} does not support scheme {scheme}")
            }
            BenchError::VerificationFailed { algo, scheme, size, repeat } => {
                write!(f, "verification failed: {algo} on {scheme}, size {size}, repeat {repeat}")
            }
        }
    }
}

impl Error for BenchError {}

impl From<GenError> for BenchError {
    fn from(e: GenError) -> BenchError {
        BenchError::Gen(e)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum ProbePhase {
    Prepared,
    TimedStart,
    TimedEnd,
    Verified,
}

fn clamp_ns(d: std::time::Duration) -> u64 {
    (d.as_nanos().min(u64::MAX as u128) as u64).max(1)
}

fn sign_extend(raw: u64, width: u32) -> i64 {
    ((raw << (64 - width)) as i64) >> (64 - width)
}

/// Sorts a clone of `data` with `algo`, timing only the sort of the native
/// buffer. Returns the sorted raw words, the wall time, and bsort's counters.
fn run_timed(
    algo: Algo,
    data: &[u64],
    scheme: &WordScheme,
    probe: &mut dyn FnMut(ProbePhase),
) -> Result<(Vec<u64>, u64, Option<StatsSummary>), BenchError> {
    fn timed<B, R>(
        probe: &mut dyn FnMut(ProbePhase),
        mut buf: B,
        run: impl FnOnce(&mut B) -> R,
        back: impl FnOnce(B) -> Vec<u64>,
    ) -> (Vec<u64>, u64, R) {
        probe(ProbePhase::Prepared);
        probe(ProbePhase::TimedStart);
        let t = Instant::now();
        let extra = run(&mut buf);
        let ns = clamp_ns(t.elapsed());
        probe(ProbePhase::TimedEnd);
        (back(buf), ns, extra)
    }

    fn bsort_native<W: RawWord>(
        data: &[u64],
        scheme: &WordScheme,
        probe: &mut dyn FnMut(ProbePhase),
    ) -> (Vec<u64>, u64, Option<StatsSummary>) {
        let buf: Vec<W> = data.iter().map(|&w| W::from_u64(w)).collect();
        let (out, ns, stats) = timed(
            probe,
            buf,
            |b| sort_words(b, scheme, true).expect("native container fits"),
            |b| b.iter().map(|w| w.to_u64()).collect(),
        );
        (out, ns, Some(StatsSummary::from(&stats)))
    }

    let unsupported =
        || BenchError::Unsupported { algo: algo.code().into(), scheme: scheme.code() };
    let width = scheme.width();
    match algo {
        Algo::Bsort => Ok(match width {
            1..=8 => bsort_native::<u8>(data, scheme, probe),
            9..=16 => bsort_native::<u16>(data, scheme, probe),
            17..=32 => bsort_native::<u32>(data, scheme, probe),
            _ => bsort_native::<u64>(data, scheme, probe),
        }),
        Algo::PlatformSort => {
            macro_rules! unsigned_native {
                ($t:ty) => {{
                    let buf: Vec<$t> = data.iter().map(|&w| w as $t).collect();
                    let (out, ns, ()) = timed(
                        probe,
                        buf,
                        |b| b.sort_unstable(),
                        |b| b.iter().map(|&v| v as u64).collect(),
                    );
                    (out, ns, None)
                }};
            }
            macro_rules! signed_native {
                ($t:ty, $u:ty) => {{
                    let buf: Vec<$t> = data.iter().map(|&w| sign_extend(w, width) as $t).collect();
                    let (out, ns, ()) = timed(
                        probe,
                        buf,
                        |b| b.sort_unstable(),
                        |b| b.iter().map(|&v| (v as $u as u64) & scheme.max_raw()).collect(),
                    );
                    (out, ns, None)
                }};
            }
            Ok(match scheme.kind() {
                SchemeKind::Unsigned => match width {
                    1..=8 => unsigned_native!(u8),
                    9..=16 => unsigned_native!(u16),
                    17..=32 => unsigned_native!(u32),
                    _ => unsigned_native!(u64),
                },
                SchemeKind::Signed => match width {
                    1..=8 => signed_native!(i8, u8),
                    9..=16 => signed_native!(i16, u16),
                    17..=32 => signed_native!(i32, u32),
                    _ => signed_native!(i64, u64),
                },
                SchemeKind::Float if *scheme == WordScheme::F32 => {
                    let buf: Vec<f32> = data.iter().map(|&w| f32::from_bits(w as u32)).collect();
                    let (out, ns, ()) = timed(
                        probe,
                        buf,
                        |b| b.sort_unstable_by(|x, y| x.total_cmp(y)),
                        |b| b.iter().map(|v| v.to_bits() as u64).collect(),
                    );
                    (out, ns, None)
                }
                SchemeKind::Float if *scheme == WordScheme::F64 => {
                    let buf: Vec<f64> = data.iter().map(|&w| f64::from_bits(w)).collect();
                    let (out, ns, ()) = timed(
                        probe,
                        buf,
                        |b| b.sort_unstable_by(|x, y| x.total_cmp(y)),
                        |b| b.iter().map(|v| v.to_bits()).collect(),
                    );
                    (out, ns, None)
                }
                SchemeKind::Float => return Err(unsupported()),
            })
        }
        Algo::Oracle => {
            let buf: Vec<u64> = data.to_vec();
            let scheme = *scheme;
            let (out, ns, sorted) =
                timed(probe, buf, move |b| oracle_sort(b, &scheme, true), |_| Vec::new());
            let _ = out;
            Ok((sorted, ns, None))
        }
    }
}

fn run_prepared_probed(
    sets: &[PreparedDataset],
    algos: &[Algo],
    repeats: u32,
    probe: &mut dyn FnMut(Algo, u32, ProbePhase),
) -> Result<Vec<BenchRecord>, BenchError> {
    if sets.is_empty() {
        return Err(BenchError::InvalidParameter("no datasets".into()));
    }
    if algos.is_empty() {
        return Err(BenchError::InvalidParameter("no algorithms".into()));
    }
    if repeats < 3 {
        return Err(BenchError::InvalidParameter(format!("repeats {repeats} < 3")));
    }
    let mut records = Vec::new();
    for set in sets {
        let expected = oracle_sort(&set.data, &set.scheme, true);
        for &algo in algos {
            for repeat in 0..repeats {
                let mut phase_probe = |phase| probe(algo, repeat, phase);
                let (sorted, ns, stats) =
                    run_timed(algo, &set.data, &set.scheme, &mut phase_probe)?;
                if sorted != expected {
                    return Err(BenchError::VerificationFailed {
                        algo: algo.code().into(),
                        scheme: set.scheme.code(),
                        size: set.data.len() as u64,
                        repeat,
                    });
                }
                probe(algo, repeat, ProbePhase::Verified);
                records.push(BenchRecord {
                    algo,
                    scheme: set.scheme.code(),
                    size: set.data.len() as u64,
                    distribution: set.distribution.clone(),
                    repeat,
                    ns,
                    stats,
                });
            }
        }
    }
    Ok(records)
}

/// Benchmarks `algos` over already-built datasets: `repeats` timed sorts per
/// (dataset, algorithm) pair, every output verified against the oracle.
///
/// Requires at least one dataset, at least one algorithm, and `repeats >= 3`.
pub fn run_bench_prepared(
    sets: &[PreparedDataset],
    algos: &[Algo],
    repeats: u32,
) -> Result<Vec<BenchRecord>, BenchError> {
    run_prepared_probed(sets, algos, repeats, &mut |_, _, _| {})
}

/// Generates each spec's dataset and benchmarks `algos` over them; see
/// [`run_bench_prepared`].
pub fn run_bench(
    specs: &[DatasetSpec],
    algos: &[Algo],
    repeats: u32,
) -> Result<Vec<BenchRecord>, BenchError> {
    let sets: Result<Vec<PreparedDataset>, GenError> = specs
        .iter()
        .map(|spec| {
            Ok(PreparedDataset {
                scheme: spec.scheme,
                distribution: spec.distribution.to_string(),
                data: generate(spec)?,
            })
        })
        .collect();
    run_bench_prepared(&sets?, algos, repeats)
}

/// Median of the `ns` column over the repeats of one (algo, scheme, size)
/// group; `None` if the group is absent.
pub fn median_ns(records: &[BenchRecord], algo: Algo, scheme: &str, size: u64) -> Option<u64> {
    let mut ns: Vec<u64> = records
        .iter()
        .filter(|r| r.algo == algo && r.scheme == scheme && r.size == size)
        .map(|r| r.ns)
        .collect();
    if ns.is_empty() {
        return None;
    }
    ns.sort_unstable();
    let mid = ns.len() / 2;
    Some(if ns.len() % 2 == 1 { ns[mid] } else { (ns[mid - 1] + ns[mid]) / 2 })
}

const CSV_HEADER: &str = "algo,scheme,size,distribution,repeat,ns,inspections,swaps,max_depth";

/// Writes records as CSV: a fixed header, one row per record, stats columns
/// empty for non-bsort rows. No field ever contains a comma or quote, so the
/// format needs no quoting.
pub fn emit_csv(records: &[BenchRecord], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        let stats = match &r.stats {
            Some(s) => format!("{},{},{}", s.inspections, s.swaps, s.max_depth),
            None => ",,".to_string(),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.algo.code(),
            r.scheme,
            r.size,
            r.distribution,
            r.repeat,
            r.ns,
            stats
        )?;
    }
    Ok(())
}

/// A malformed CSV line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CsvError {
    /// 1-based line number.
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for CsvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CSV line {}: {}", self.line, self.reason)
    }
}

impl Error for CsvError {}

/// Parses CSV produced by [`emit_csv`] back into records (exact inverse).
pub fn parse_csv(input: &str) -> Result<Vec<BenchRecord>, CsvError> {
    let err = |line: usize, reason: &str| CsvError { line, reason: reason.to_string() };
    let mut lines = input.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, header)) => return Err(err(1, &format!("unexpected header {header:?}"))),
        None => return Err(err(1, "empty input")),
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(err(lineno, &format!("expected 9 fields, got {}", fields.len())));
        }
        let algo: Algo = fields[0].parse().map_err(|e: String| err(lineno, &e))?;
        let size: u64 = fields[2].parse().map_err(|_| err(lineno, "bad size"))?;
        let repeat: u32 = fields[4].parse().map_err(|_| err(lineno, "bad repeat"))?;
        let ns: u64 = fields[5].parse().map_err(|_| err(lineno, "bad ns"))?;
        let stats = match (fields[6], fields[7], fields[8]) {
            ("", "", "") => None,
            (i, s, d) => Some(StatsSummary {
                inspections: i.parse().map_err(|_| err(lineno, "bad inspections"))?,
                swaps: s.parse().map_err(|_| err(lineno, "bad swaps"))?,
                max_depth: d.parse().map_err(|_| err(lineno, "bad max_depth"))?,
            }),
        };
        records.push(BenchRecord {
            algo,
            scheme: fields[1].to_string(),
            size,
            distribution: fields[3].to_string(),
            repeat,
            ns,
            stats,
        });
    }
    Ok(records)
}

/// Errors from plot emission.
#[derive(Debug)]
pub enum PlotError {
    NoRecords,
    /// A scheme has fewer than two distinct sizes; a line plot needs two.
    TooFewSizes {
        scheme: String,
    },
    Io(io::Error),
}

impl fmt::Display for PlotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlotError::NoRecords => write!(f, "no records to plot"),
            PlotError::TooFewSizes { scheme } => {
                write!(f, "scheme {scheme} has fewer than two sizes")
            }
            PlotError::Io(e) => write!(f, "plot I/O failed: {e}"),
        }
    }
}

impl Error for PlotError {}

impl From<io::Error> for PlotError {
    fn from(e: io::Error) -> PlotError {
        PlotError::Io(e)
    }
}

fn algo_color(algo: Algo) -> &'static str {
    match algo {
        Algo::Bsort => "#1f77b4",
        Algo::PlatformSort => "#d62728",
        Algo::Oracle => "#2ca02c",
    }
}

/// Writes one `bench-{scheme}.svg` per scheme into `dir`: median wall time
/// against input size on log-log axes, one line per algorithm. Returns the
/// paths written. Size-zero records are skipped (log scale).
pub fn emit_plot(records: &[BenchRecord], dir: &Path) -> Result<Vec<PathBuf>, PlotError> {
    use std::collections::BTreeMap;
    if records.is_empty() {
        return Err(PlotError::NoRecords);
    }
    // scheme -> algo -> size -> ns samples
    let mut by_scheme: BTreeMap<&str, BTreeMap<&'static str, BTreeMap<u64, Vec<u64>>>> =
        BTreeMap::new();
    let mut algo_of_code: BTreeMap<&'static str, Algo> = BTreeMap::new();
    for r in records {
        if r.size == 0 {
            continue;
        }
        algo_of_code.insert(r.algo.code(), r.algo);
        by_scheme
            .entry(&r.scheme)
            .or_default()
            .entry(r.algo.code())
            .or_default()
            .entry(r.size)
            .or_default()
            .push(r.ns);
    }
    if by_scheme.is_empty() {
        return Err(PlotError::NoRecords);
    }

    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for (scheme, by_algo) in &by_scheme {
        let mut sizes: Vec<u64> = by_algo.values().flat_map(|m| m.keys().copied()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        if sizes.len() < 2 {
            return Err(PlotError::TooFewSizes { scheme: scheme.to_string() });
        }
        let medians: BTreeMap<&'static str, Vec<(u64, u64)>> = by_algo
            .iter()
            .map(|(&code, by_size)| {
                let pts = by_size
                    .iter()
                    .map(|(&size, ns)| {
                        let mut ns = ns.clone();
                        ns.sort_unstable();
                        let mid = ns.len() / 2;
                        let med =
                            if ns.len() % 2 == 1 { ns[mid] } else { (ns[mid - 1] + ns[mid]) / 2 };
                        (size, med)
                    })
                    .collect();
                (code, pts)
            })
            .collect();
        let path = dir.join(format!("bench-{scheme}.svg"));
        let svg = render_svg(scheme, &medians);
        std::fs::write(&path, svg)?;
        paths.push(path);
    }
    Ok(paths)
}

fn render_svg(
    scheme: &str,
    medians: &std::collections::BTreeMap<&'static str, Vec<(u64, u64)>>,
) -> String {
    const W: f64 = 800.0;
    const H: f64 = 520.0;
    const L: f64 = 80.0;
    const R: f64 = 640.0;
    const T: f64 = 50.0;
    const B: f64 = 460.0;

    let log = |v: u64| (v as f64).log10();
    let all_points = medians.values().flatten();
    let (mut x_min, mut x_max, mut y_min, mut y_max) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(size, ns) in all_points {
        x_min = x_min.min(log(size));
        x_max = x_max.max(log(size));
        y_min = y_min.min(log(ns));
        y_max = y_max.max(log(ns));
    }
    // Pad degenerate axes so the mapping stays finite.
    if (x_max - x_min).abs() < 1e-9 {
        x_max += 1.0;
    }
    if (y_max - y_min).abs() < 1e-9 {
        y_max += 1.0;
    }
    let x_of = |v: f64| L + (v - x_min) / (x_max - x_min) * (R - L);
    let y_of = |v: f64| B - (v - y_min) / (y_max - y_min) * (B - T);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"13\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n<text x=\"{}\" y=\"28\" \
         text-anchor=\"middle\" font-size=\"17\">bsort benchmark: {scheme}</text>\n",
        (L + R) / 2.0
    ));

    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{L}\" y1=\"{B}\" x2=\"{R}\" y2=\"{B}\" stroke=\"black\"/>\n\
         <line x1=\"{L}\" y1=\"{T}\" x2=\"{L}\" y2=\"{B}\" stroke=\"black\"/>\n"
    ));
    for d in (x_min.floor() as i64)..=(x_max.ceil() as i64) {
        let v = d as f64;
        if v < x_min - 1e-9 || v > x_max + 1e-9 {
            continue;
        }
        let x = x_of(v);
        svg.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{T}\" x2=\"{x:.1}\" y2=\"{B}\" stroke=\"#ddd\"/>\n\
             <text x=\"{x:.1}\" y=\"{}\" text-anchor=\"middle\">1e{d}</text>\n",
            B + 20.0
        ));
    }
    for d in (y_min.floor() as i64)..=(y_max.ceil() as i64) {
        let v = d as f64;
        if v < y_min - 1e-9 || v > y_max + 1e-9 {
            continue;
        }
        let y = y_of(v);
        svg.push_str(&format!(
            "<line x1=\"{L}\" y1=\"{y:.1}\" x2=\"{R}\" y2=\"{y:.1}\" stroke=\"#ddd\"/>\n\
             <text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\">1e{d}</text>\n",
            L - 8.0,
            y + 4.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">input size (words)</text>\n\
         <text x=\"22\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 22 {})\">\
         median wall time (ns)</text>\n",
        (L + R) / 2.0,
        B + 45.0,
        (T + B) / 2.0,
        (T + B) / 2.0
    ));

    // One polyline plus markers per algorithm, legend on the right.
    let mut legend_y = T + 10.0;
    for (code, points) in medians {
        let algo: Algo = code.parse().expect("codes come from Algo::code");
        let color = algo_color(algo);
        let coords: Vec<String> = points
            .iter()
            .map(|&(size, ns)| format!("{:.1},{:.1}", x_of(log(size)), y_of(log(ns))))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            coords.join(" ")
        ));
        for &(size, ns) in points {
            svg.push_str(&format!(
                "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3.5\" fill=\"{color}\"/>\n",
                x_of(log(size)),
                y_of(log(ns))
            ));
        }
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{legend_y:.1}\" x2=\"{}\" y2=\"{legend_y:.1}\" \
             stroke=\"{color}\" stroke-width=\"2\"/>\n<text x=\"{}\" y=\"{:.1}\">{code}</text>\n",
            R + 14.0,
            R + 44.0,
            R + 52.0,
            legend_y + 4.0
        ));
        legend_y += 22.0;
    }
    svg.push_str("</svg>\n");
    svg
}
