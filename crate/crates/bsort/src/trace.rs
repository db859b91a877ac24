//! Level-by-level partition traces.
//!
//! A trace replays a sort the way a step-by-step visualization draws it: all
//! passes of one bit position (one *level*) execute together, then the array
//! state is snapshotted with the partition boundaries accumulated so far and
//! the mask shifted to the next level. The final row's words are exactly what the
//! in-place sort produces for the same input, because the passes are the
//! same; only their schedule differs (breadth-first here, depth-first in the
//! sort), and passes at the same level touch disjoint ranges.

use crate::scheme::{Mask, SchemeKind, WordScheme};
use crate::sort::single_pass_partition;

/// One snapshot row of a [`Trace`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceRow {
    /// Mask for the *next* level (the initial row carries the MSB mask);
    /// exhausted when every bit position has been processed.
    pub mask: Mask,
    /// Array state after the row's level.
    pub words: Vec<u64>,
    /// All interior partition boundaries accumulated so far, ascending.
    pub boundaries: Vec<usize>,
    /// Partition indices returned by the row's passes, in range order;
    /// empty on the initial row.
    pub new_boundaries: Vec<usize>,
}

/// A level-by-level replay of one sort invocation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trace {
    pub scheme: WordScheme,
    pub ascending: bool,
    /// Initial state plus one row per level at which at least one pass ran.
    pub rows: Vec<TraceRow>,
}

impl Trace {
    /// Words of the last row: the fully sorted array.
    pub fn sorted_words(&self) -> &[u64] {
        &self.rows.last().expect("a trace always has the initial row").words
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Phase {
    /// The sign pass of signed and float sorts (first level only).
    Sign,
    /// Float exponent descent, still above the last exponent bit.
    Exp,
    /// Plain lexicographic bits.
    Plain,
}

#[derive(Clone, Copy)]
struct Segment {
    start: usize,
    end: usize,
    dir: bool,
    phase: Phase,
}

/// Traces the scheme-appropriate sort of `input`, one row per level.
pub fn trace_sort(input: &[u64], scheme: &WordScheme, asc: bool) -> Trace {
    debug_assert!(input.iter().all(|&w| scheme.contains_raw(w)));
    let mut words = input.to_vec();
    let n = words.len();
    let mut mask = Mask::msb(scheme);
    let mut rows = vec![TraceRow {
        mask,
        words: words.clone(),
        boundaries: Vec::new(),
        new_boundaries: Vec::new(),
    }];

    let mut segments: Vec<Segment> = Vec::new();
    if n >= 2 {
        let phase = match scheme.kind() {
            SchemeKind::Unsigned => Phase::Plain,
            SchemeKind::Signed | SchemeKind::Float => Phase::Sign,
        };
        let dir = if phase == Phase::Sign { !asc } else { asc };
        segments.push(Segment { start: 0, end: n, dir, phase });
    }

    let last_exp = match scheme.kind() {
        SchemeKind::Float => Mask::last_exponent(scheme).expect("float scheme").value(),
        _ => 0,
    };
    let mut boundaries: Vec<usize> = Vec::new();

    while !mask.is_exhausted() && !segments.is_empty() {
        if mask.value() == last_exp {
            // From the last exponent bit down, exponent and mantissa order
            // lexicographically as one block.
            for seg in segments.iter_mut() {
                if seg.phase == Phase::Exp {
                    seg.phase = Phase::Plain;
                }
            }
        }
        let m = mask.value();
        let mut new_boundaries = Vec::new();
        let mut next_segments = Vec::new();
        for seg in &segments {
            let k = single_pass_partition(&mut words, m, seg.start..seg.end, seg.dir, None);
            new_boundaries.push(k);
            // The front group holds the clear bits when the pass direction is
            // ascending, the set bits otherwise.
            let (front_dir, back_dir, child_phase) = match seg.phase {
                Phase::Sign if scheme.kind() == SchemeKind::Float => {
                    // Negatives (set sign) continue inverted, positives as
                    // requested.
                    let (set_dir, clear_dir) = (!asc, asc);
                    if seg.dir {
                        (clear_dir, set_dir, Phase::Exp)
                    } else {
                        (set_dir, clear_dir, Phase::Exp)
                    }
                }
                Phase::Sign => (asc, asc, Phase::Plain),
                phase => (seg.dir, seg.dir, phase),
            };
            if k - seg.start >= 2 {
                next_segments.push(Segment {
                    start: seg.start,
                    end: k,
                    dir: front_dir,
                    phase: child_phase,
                });
            }
            if seg.end - k >= 2 {
                next_segments.push(Segment {
                    start: k,
                    end: seg.end,
                    dir: back_dir,
                    phase: child_phase,
                });
            }
            if k > 0 && k < n && !boundaries.contains(&k) {
                boundaries.push(k);
            }
        }
        boundaries.sort_unstable();
        mask = mask.shift_right();
        rows.push(TraceRow {
            mask,
            words: words.clone(),
            boundaries: boundaries.clone(),
            new_boundaries,
        });
        segments = next_segments;
    }

    Trace { scheme: *scheme, ascending: asc, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sort::sort_raws_native;

    #[test]
    fn three_bit_unsigned_trace() {
        let scheme = WordScheme::unsigned(3).unwrap();
        let trace = trace_sort(&[5, 7, 1, 6, 3, 4, 0], &scheme, true);
        // Initial row plus one row per level (bits 2, 1, 0).
        assert_eq!(trace.rows.len(), 4);
        assert_eq!(trace.rows[0].mask.value(), 0b100);
        assert_eq!(trace.rows[0].words, vec![5, 7, 1, 6, 3, 4, 0]);
        assert_eq!(trace.rows[1].mask.value(), 0b010);
        assert_eq!(trace.rows[1].words, vec![1, 3, 0, 6, 7, 4, 5]);
        assert_eq!(trace.rows[1].new_boundaries, vec![3]);
        assert!(trace.rows.last().unwrap().mask.is_exhausted());
        assert_eq!(trace.sorted_words(), &[0, 1, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn four_bit_signed_trace() {
        let scheme = WordScheme::signed(4).unwrap();
        let raws: Vec<u64> = vec![0b1000, 0b1111, 0b0011, 0b1001, 0b0010, 0b0110, 0b0011];
        let trace = trace_sort(&raws, &scheme, true);
        assert_eq!(trace.rows.len(), 5);
        // Sign pass first: negatives to the front, boundary at 3.
        assert_eq!(trace.rows[1].new_boundaries, vec![3]);
        assert_eq!(trace.sorted_words(), &[0b1000, 0b1001, 0b1111, 0b0010, 0b0011, 0b0011, 0b0110]);
    }

    #[test]
    fn six_bit_float_trace() {
        // [1.75, 1.25, -2.5, -inf] ascending: six rows (initial plus bits
        // 5..=1; nothing is left to do at bit 0).
        let raws: Vec<u64> = vec![0b001111, 0b001101, 0b110001, 0b111100];
        let trace = trace_sort(&raws, &WordScheme::F6, true);
        assert_eq!(trace.rows.len(), 6);
        assert_eq!(trace.rows[0].mask.value(), 0b100000);
        assert_eq!(trace.rows[1].new_boundaries, vec![2]);
        assert_eq!(trace.rows.last().unwrap().mask.value(), 0b000001);
        assert_eq!(trace.sorted_words(), &[0b111100, 0b110001, 0b001101, 0b001111]);
    }

    #[test]
    fn single_word_trace_is_just_the_initial_row() {
        let trace = trace_sort(&[9], &WordScheme::U8, true);
        assert_eq!(trace.rows.len(), 1);
        assert_eq!(trace.sorted_words(), &[9]);
        let trace = trace_sort(&[], &WordScheme::U8, false);
        assert_eq!(trace.rows.len(), 1);
        assert_eq!(trace.sorted_words(), &[] as &[u64]);
    }

    #[test]
    fn boundaries_accumulate_and_stay_sorted() {
        let scheme = WordScheme::U8;
        let raws: Vec<u64> = vec![200, 3, 150, 77, 12, 255, 0, 128];
        let trace = trace_sort(&raws, &scheme, true);
        for row in &trace.rows {
            assert!(row.boundaries.windows(2).all(|p| p[0] < p[1]));
            assert!(row.boundaries.iter().all(|&b| b > 0 && b < raws.len()));
        }
        let mut cumulative = 0;
        for row in &trace.rows {
            assert!(row.boundaries.len() >= cumulative);
            cumulative = row.boundaries.len();
        }
    }

    #[test]
    fn trace_matches_the_sort_for_every_kind_and_direction() {
        let mut rng = crate::gen::SplitMix64::new(31);
        for scheme in [
            WordScheme::U8,
            WordScheme::unsigned(3).unwrap(),
            WordScheme::signed(4).unwrap(),
            WordScheme::I16,
            WordScheme::F6,
            WordScheme::F32,
        ] {
            for asc in [true, false] {
                let len = rng.next_below(40) as usize;
                let raws: Vec<u64> = (0..len).map(|_| rng.next_u64() & scheme.max_raw()).collect();
                let trace = trace_sort(&raws, &scheme, asc);
                let mut sorted = raws.clone();
                sort_raws_native(&mut sorted, &scheme, asc).unwrap();
                assert_eq!(trace.sorted_words(), &sorted[..], "{} asc={asc}", scheme.code());
            }
        }
    }
}
