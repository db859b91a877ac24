//! In-place binary radix sorting for machine words.
//!
//! `bsort` sorts unsigned integers, two's-complement signed integers, and
//! sign/exponent/mantissa floating-point values without comparing elements:
//! it partitions the array on one bit at a time, most significant bit first,
//! using a single forward sweep per pass. Signed and floating-point orders
//! fall out of the same partition primitive by choosing, per bit, which side
//! comes first — no key transformation and no extra memory beyond the
//! recursion stack.
//!
//! The crate is organized around a few small pieces:
//!
//! - [`WordScheme`](scheme::WordScheme) names a bit layout — kind, width, and
//!   for floats the exponent/mantissa split. Toy widths (a 6-bit float, a
//!   3-bit unsigned) are first-class, which keeps exhaustive testing cheap.
//! - [`sort_words`](sort::sort_words) sorts a slice of raw words under a
//!   scheme, in either direction, and returns pass-by-pass counters
//!   ([`SortStats`](stats::SortStats)). Native-type wrappers
//!   ([`sort_u32`](sort::sort_u32), [`sort_f64`](sort::sort_f64), …) cover
//!   the common cases.
//! - [`total_order_key`](scheme::total_order_key) maps a raw word to an
//!   unsigned key whose `<` equals the scheme's order — the comparison-based
//!   oracle the sort is verified against ([`oracle`]).
//! - [`decompose_finite_fraction`](decompose::decompose_finite_fraction)
//!   splits a positional fraction into sign, digit string, and scale — the
//!   significance hierarchy the bit-level sort exploits.
//! - [`gen`] builds reproducible datasets from a pinned SplitMix64 stream;
//!   [`bench`] times the sort against the platform sort and emits CSV and
//!   SVG; [`trace`] records level-by-level snapshots for visualization.
//!
//! # Example
//!
//! ```
//! use bsort::{sort_i32, sort_f32};
//!
//! let mut ints = [3i32, -1, 2, -40, 7];
//! sort_i32(&mut ints, true);
//! assert_eq!(ints, [-40, -1, 2, 3, 7]);
//!
//! let mut floats = [0.5f32, -0.0, 3.25, f32::NEG_INFINITY, 0.0];
//! sort_f32(&mut floats, true);
//! assert_eq!(floats[0], f32::NEG_INFINITY);
//! assert!(floats[1].is_sign_negative() && floats[1] == 0.0);
//! assert_eq!(floats[4], 3.25);
//! ```

pub mod bench;
pub mod decompose;
pub mod gen;
pub mod oracle;
pub mod scheme;
pub mod sort;
pub mod stats;
pub mod trace;

pub use bench::{
    emit_csv, emit_plot, median_ns, parse_csv, run_bench, run_bench_prepared, Algo, BenchError,
    BenchRecord, PlotError, PreparedDataset, StatsSummary,
};
pub use decompose::{decompose_finite_fraction, DecomposeError, Decomposition};
pub use gen::{checksum, generate, DatasetSpec, Distribution, GenError, SplitMix64};
pub use oracle::{exhaustive_check, oracle_sort, random_check, CheckReport, FailureCase};
pub use scheme::{
    decode_f64, encode_f64, total_order_key, EncodeError, Mask, SchemeError, SchemeKind, WordScheme,
};
pub use sort::{
    binary_quicksort, bsort_float, bsort_signed, bsort_unsigned, single_pass_partition, sort_f32,
    sort_f64, sort_i16, sort_i32, sort_i64, sort_i8, sort_raws_native, sort_u16, sort_u32,
    sort_u64, sort_u8, sort_words, RawWord, SortError,
};
pub use stats::SortStats;
pub use trace::{trace_sort, Trace, TraceRow};
