//! Operation counters collected by a sort invocation.

use std::fmt;

/// Counters for one sort invocation.
///
/// A *pass* is one partition sweep over a range; it inspects every element of
/// the range once at a single bit position. The invariants these counters
/// must satisfy for any sort over `n` words of a width-`w` scheme:
///
/// * `inspections_per_level[p] <= n` for every bit position `p`,
/// * `total_inspections() <= w * n`,
/// * `max_depth <= w` and `levels <= w`,
/// * no inspections at positions `>= w`.
#[derive(Clone, PartialEq, Eq)]
pub struct SortStats {
    /// Elements inspected per bit position (index 0 = least significant bit).
    pub inspections_per_level: [u64; 64],
    /// Swaps executed.
    pub swaps: u64,
    /// Deepest recursion level reached; the first pass is level 1, and 0
    /// means nothing was inspected.
    pub max_depth: u32,
    /// Distinct bit positions at which at least one element was inspected.
    pub levels: u32,
}

impl SortStats {
    pub fn new() -> SortStats {
        SortStats { inspections_per_level: [0; 64], swaps: 0, max_depth: 0, levels: 0 }
    }

    /// Records one partition pass: `inspected` elements probed at
    /// `bit_position`, `swaps` of them moved, at recursion depth `depth`.
    pub fn record_pass(&mut self, bit_position: u32, inspected: u64, swaps: u64, depth: u32) {
        let slot = &mut self.inspections_per_level[bit_position as usize];
        if *slot == 0 && inspected > 0 {
            self.levels += 1;
        }
        *slot += inspected;
        self.swaps += swaps;
        self.max_depth = self.max_depth.max(depth);
    }

    /// Sum of inspections over all bit positions.
    pub fn total_inspections(&self) -> u64 {
        self.inspections_per_level.iter().sum()
    }

    /// Checks the counter invariants for a sort of `n` words of width
    /// `width`; returns a description of the first violation, if any.
    pub fn bounds_violation(&self, n: usize, width: u32) -> Option<String> {
        let n = n as u64;
        for (pos, &count) in self.inspections_per_level.iter().enumerate() {
            if count > n {
                return Some(format!("bit position {pos}: {count} inspections > n = {n}"));
            }
            if pos as u32 >= width && count > 0 {
                return Some(format!("bit position {pos} inspected but width is {width}"));
            }
        }
        let total = self.total_inspections();
        if total > u64::from(width) * n {
            return Some(format!(
                "total inspections {total} > width * n = {}",
                u64::from(width) * n
            ));
        }
        if self.max_depth > width {
            return Some(format!("max depth {} > width {width}", self.max_depth));
        }
        if self.levels > width {
            return Some(format!("{} levels > width {width}", self.levels));
        }
        None
    }
}

impl Default for SortStats {
    fn default() -> SortStats {
        SortStats::new()
    }
}

impl fmt::Debug for SortStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let per_level: Vec<(usize, u64)> = self
            .inspections_per_level
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(p, &c)| (p, c))
            .collect();
        f.debug_struct("SortStats")
            .field("total_inspections", &self.total_inspections())
            .field("swaps", &self.swaps)
            .field("max_depth", &self.max_depth)
            .field("levels", &self.levels)
            .field("per_level(bit,count)", &per_level)
            .finish()
    }
}
