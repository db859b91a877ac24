//! Reference order and differential verification.
//!
//! The oracle sorts by materializing the monotone key of every word and
//! comparing keys, an implementation with nothing in common with the radix
//! passes. The check drivers run the real sorts against it on exhaustive or
//! randomized inputs, verify the instrumentation invariants on every case,
//! and dump a reproducible counterexample on the first failure.

use crate::gen::SplitMix64;
use crate::scheme::{total_order_key, SchemeKind, WordScheme};
use crate::sort::sort_raws_native;
use crate::stats::SortStats;
use std::fmt;

/// Sorts raw words by their [`total_order_key`], ascending or descending.
///
/// Keys are a bijection on raw patterns, so the result is unique: equal
/// elements are equal words.
pub fn oracle_sort(a: &[u64], scheme: &WordScheme, asc: bool) -> Vec<u64> {
    let mut out = a.to_vec();
    out.sort_unstable_by_key(|&w| total_order_key(w, scheme));
    if !asc {
        out.reverse();
    }
    out
}

/// A failed verification case, with everything needed to replay it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FailureCase {
    pub scheme_code: String,
    pub ascending: bool,
    /// Seed the whole check run started from.
    pub seed: u64,
    /// Index of the case within the run.
    pub case_index: u64,
    pub input: Vec<u64>,
    pub got: Vec<u64>,
    pub expected: Vec<u64>,
    pub note: String,
}

impl fmt::Display for FailureCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "case {} (scheme {}, {}, run seed {:#x}): {}",
            self.case_index,
            self.scheme_code,
            if self.ascending { "ascending" } else { "descending" },
            self.seed,
            self.note,
        )?;
        writeln!(f, "  input:    {}", hex_words(&self.input))?;
        writeln!(f, "  got:      {}", hex_words(&self.got))?;
        write!(f, "  expected: {}", hex_words(&self.expected))
    }
}

fn hex_words(words: &[u64]) -> String {
    let body: Vec<String> = words.iter().map(|w| format!("{w:#x}")).collect();
    format!("[{}]", body.join(", "))
}

/// Outcome of a verification run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    /// Sort invocations checked (each input counts once per direction).
    pub cases: u64,
    /// Cases whose output differed from the oracle.
    pub mismatches: u64,
    /// Cases whose counters broke an instrumentation invariant.
    pub bound_violations: u64,
    /// First failing case, if any.
    pub first_failure: Option<FailureCase>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.bound_violations == 0
    }

    fn new() -> CheckReport {
        CheckReport { cases: 0, mismatches: 0, bound_violations: 0, first_failure: None }
    }

    fn record(
        &mut self,
        scheme: &WordScheme,
        asc: bool,
        seed: u64,
        input: &[u64],
        got: &[u64],
        stats: &SortStats,
    ) {
        let case_index = self.cases;
        self.cases += 1;
        let expected = oracle_sort(input, scheme, asc);
        let mut note = None;
        if got != expected {
            self.mismatches += 1;
            note = Some("output differs from oracle".to_string());
        } else if let Some(violation) = stats.bounds_violation(input.len(), scheme.width()) {
            self.bound_violations += 1;
            note = Some(format!("instrumentation bound violated: {violation}"));
        }
        if let Some(note) = note {
            if self.first_failure.is_none() {
                self.first_failure = Some(FailureCase {
                    scheme_code: scheme.code(),
                    ascending: asc,
                    seed,
                    case_index,
                    input: input.to_vec(),
                    got: got.to_vec(),
                    expected,
                    note,
                });
            }
        }
    }
}

fn run_both_directions(report: &mut CheckReport, scheme: &WordScheme, seed: u64, input: &[u64]) {
    for asc in [true, false] {
        let mut got = input.to_vec();
        let stats = sort_raws_native(&mut got, scheme, asc).expect("scheme fits its container");
        report.record(scheme, asc, seed, input, &got, &stats);
    }
}

/// Differential check against the oracle for a small scheme, drawing random
/// multisets (and full-universe shuffles) from all `2^width` patterns.
///
/// Each of the `shuffles` inputs is sorted in both directions, so the report
/// counts `2 * shuffles` cases. Panics if the scheme is wider than 12 bits.
pub fn exhaustive_check(scheme: &WordScheme, shuffles: u64, seed: u64) -> CheckReport {
    assert!(scheme.width() <= 12, "exhaustive check is for schemes up to 12 bits");
    let universe = 1u64 << scheme.width();
    let mut rng = SplitMix64::new(seed);
    let mut report = CheckReport::new();
    for round in 0..shuffles {
        let input: Vec<u64> = if round % 8 == 0 {
            // Full-universe permutation: every pattern exactly once.
            let mut all: Vec<u64> = (0..universe).collect();
            for i in (1..all.len()).rev() {
                all.swap(i, rng.next_below(i as u64 + 1) as usize);
            }
            all
        } else {
            let len = rng.next_below(2 * universe + 1) as usize;
            (0..len).map(|_| rng.next_below(universe)).collect()
        };
        run_both_directions(&mut report, scheme, seed, &input);
    }
    report
}

/// Differential check against the oracle on random inputs of length up to
/// `max_len`, in both directions per input.
///
/// For float schemes, a quarter of the inputs get special values (signed
/// zeros, infinities, NaN patterns with random payloads and signs) splattered
/// over random positions, since uniform bits underrepresent them for wide
/// words.
pub fn random_check(scheme: &WordScheme, inputs: u64, max_len: usize, seed: u64) -> CheckReport {
    let mut rng = SplitMix64::new(seed);
    let mut report = CheckReport::new();
    for _ in 0..inputs {
        let len = rng.next_below(max_len as u64 + 1) as usize;
        let mut input: Vec<u64> = (0..len).map(|_| rng.next_u64() & scheme.max_raw()).collect();
        if scheme.kind() == SchemeKind::Float && rng.next_below(4) == 0 {
            for slot in input.iter_mut() {
                if rng.next_below(8) == 0 {
                    *slot = random_special(&mut rng, scheme);
                }
            }
        }
        run_both_directions(&mut report, scheme, seed, &input);
    }
    report
}

/// One of the float special patterns: signed zero, infinity, or NaN with a
/// random payload and sign (the canonical quiet payload included).
fn random_special(rng: &mut SplitMix64, scheme: &WordScheme) -> u64 {
    let t = scheme.mant_bits();
    let sign = if rng.next_below(2) == 0 { 0 } else { 1u64 << (scheme.width() - 1) };
    let exp_all_ones = ((1u64 << scheme.exp_bits()) - 1) << t;
    match rng.next_below(4) {
        0 => sign,                                 // +-0
        1 => sign | exp_all_ones,                  // +-inf
        2 => sign | exp_all_ones | (1 << (t - 1)), // +-quiet NaN, zero payload
        _ => {
            let payload = rng.next_below((1u64 << t) - 1) + 1; // nonzero
            sign | exp_all_ones | payload
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_matches_native_comparison_sorts() {
        let mut rng = SplitMix64::new(99);
        let raws: Vec<u64> = (0..300).map(|_| rng.next_u64() & 0xFF).collect();
        let by_oracle = oracle_sort(&raws, &WordScheme::U8, true);
        let mut native: Vec<u8> = raws.iter().map(|&w| w as u8).collect();
        native.sort_unstable();
        assert_eq!(by_oracle, native.iter().map(|&b| b as u64).collect::<Vec<u64>>());

        let by_oracle = oracle_sort(&raws, &WordScheme::I8, true);
        let mut native: Vec<i8> = raws.iter().map(|&w| w as u8 as i8).collect();
        native.sort_unstable();
        assert_eq!(by_oracle, native.iter().map(|&b| (b as u8) as u64).collect::<Vec<u64>>());
    }

    #[test]
    fn oracle_float_order_is_total_order() {
        let values: Vec<f64> = vec![
            f64::NAN,
            f64::NEG_INFINITY,
            -1.5,
            -0.0,
            0.0,
            5e-324,
            2.0,
            f64::INFINITY,
            -f64::NAN,
        ];
        let raws: Vec<u64> = values.iter().map(|v| v.to_bits()).collect();
        let sorted = oracle_sort(&raws, &WordScheme::F64, true);
        let mut by_total_cmp = values.clone();
        by_total_cmp.sort_by(|a, b| a.total_cmp(b));
        assert_eq!(sorted, by_total_cmp.iter().map(|v| v.to_bits()).collect::<Vec<u64>>());
    }

    #[test]
    fn oracle_is_idempotent_and_reversible() {
        let mut rng = SplitMix64::new(5);
        let raws: Vec<u64> = (0..100).map(|_| rng.next_u64() & 0x3F).collect();
        let asc = oracle_sort(&raws, &WordScheme::F6, true);
        assert_eq!(oracle_sort(&asc, &WordScheme::F6, true), asc);
        let mut desc = oracle_sort(&raws, &WordScheme::F6, false);
        desc.reverse();
        assert_eq!(desc, asc);
    }

    #[test]
    fn exhaustive_check_small_schemes() {
        for scheme in
            [WordScheme::unsigned(3).unwrap(), WordScheme::signed(4).unwrap(), WordScheme::F6]
        {
            let report = exhaustive_check(&scheme, 50, 1);
            assert_eq!(report.cases, 100);
            assert!(report.passed(), "{:?}", report.first_failure);
        }
    }

    #[test]
    #[should_panic(expected = "up to 12 bits")]
    fn exhaustive_check_rejects_wide_schemes() {
        exhaustive_check(&WordScheme::U16, 1, 0);
    }

    #[test]
    fn random_check_passes_on_the_real_sorts() {
        for scheme in [WordScheme::U64, WordScheme::I16, WordScheme::F32] {
            let report = random_check(&scheme, 40, 64, 2);
            assert_eq!(report.cases, 80);
            assert!(report.passed(), "{:?}", report.first_failure);
        }
    }

    #[test]
    fn report_flags_wrong_outputs() {
        // Feed the report a corrupted output: it must count a mismatch and
        // keep a full counterexample dump.
        let scheme = WordScheme::U8;
        let input = vec![3u64, 1, 2];
        let wrong = vec![3u64, 1, 2];
        let mut report = CheckReport::new();
        report.record(&scheme, true, 77, &input, &wrong, &SortStats::new());
        assert_eq!(report.mismatches, 1);
        let failure = report.first_failure.expect("failure dump");
        assert_eq!(failure.expected, vec![1, 2, 3]);
        assert_eq!(failure.seed, 77);
        assert_eq!(failure.scheme_code, "u8");
        let rendered = failure.to_string();
        assert!(rendered.contains("0x3"), "{rendered}");
    }

    #[test]
    fn report_flags_bound_violations() {
        let scheme = WordScheme::U8;
        let input = vec![1u64, 2];
        let sorted = vec![1u64, 2];
        let mut bogus = SortStats::new();
        bogus.record_pass(7, 1000, 0, 1); // way more inspections than n
        let mut report = CheckReport::new();
        report.record(&scheme, true, 0, &input, &sorted, &bogus);
        assert_eq!(report.mismatches, 0);
        assert_eq!(report.bound_violations, 1);
        assert!(report.first_failure.unwrap().note.contains("bound"));
    }

    #[test]
    fn specials_are_valid_floats() {
        let scheme = WordScheme::F6;
        let mut rng = SplitMix64::new(1);
        for _ in 0..200 {
            let raw = random_special(&mut rng, &scheme);
            assert!(scheme.contains_raw(raw), "{raw:#x}");
            let v = crate::scheme::decode_f64(raw, &scheme).unwrap();
            assert!(v.is_nan() || v.is_infinite() || v == 0.0, "{v}");
        }
    }
}
