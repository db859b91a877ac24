//! The in-place MSB binary radix sorts.
//!
//! One primitive does all the work: [`single_pass_partition`] sweeps a range
//! once and splits it on a single bit. [`binary_quicksort`] recurses that
//! primitive from a starting bit down to bit 0, which sorts unsigned words
//! outright. Signed and float words need only a different traversal order of
//! the same passes: a sign pass in the opposite direction first
//! ([`bsort_signed`], [`bsort_float`]), and for floats the negative partition
//! descends with the direction inverted for all remaining bits so that bigger
//! magnitudes come out first.
//!
//! No comparisons between elements, no extra buffers; inspected bits only.
//! Runtime is `O(width * n)` and recursion depth is at most `width`.

use std::fmt;
use std::ops::Range;

use crate::scheme::{SchemeKind, WordScheme};
use crate::stats::SortStats;

mod sealed {
    pub trait Sealed {}
    impl Sealed for u8 {}
    impl Sealed for u16 {}
    impl Sealed for u32 {}
    impl Sealed for u64 {}
}

/// Unsigned container the sorts operate on directly.
///
/// Implemented for `u8`, `u16`, `u32` and `u64`; a scheme of width `w` needs
/// a container with at least `w` bits, and words are stored zero-extended.
pub trait RawWord: sealed::Sealed + Copy + Eq + fmt::Debug {
    const BITS: u32;
    const ZERO: Self;
    /// Truncating conversion from a 64-bit raw word.
    fn from_u64(bits: u64) -> Self;
    /// Zero-extending conversion to a 64-bit raw word.
    fn to_u64(self) -> u64;
    /// Bitwise and.
    fn and(self, m: Self) -> Self;
    /// Logical shift right by one.
    fn shr1(self) -> Self;
    /// Single-bit word `1 << position`; `position` must be below `BITS`.
    fn bit(position: u32) -> Self;
}

macro_rules! impl_raw_word {
    ($($t:ty),*) => {$(
        impl RawWord for $t {
            const BITS: u32 = <$t>::BITS;
            const ZERO: Self = 0;
            #[inline(always)]
            fn from_u64(bits: u64) -> Self { bits as $t }
            #[inline(always)]
            fn to_u64(self) -> u64 { self as u64 }
            #[inline(always)]
            fn and(self, m: Self) -> Self { self & m }
            #[inline(always)]
            fn shr1(self) -> Self { self >> 1 }
            #[inline(always)]
            fn bit(position: u32) -> Self { 1 << position }
        }
    )*};
}

impl_raw_word!(u8, u16, u32, u64);

/// Errors from the scheme-driven sort entry points.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SortError {
    /// The entry point does not handle the scheme's kind.
    KindMismatch { expected: SchemeKind, found: SchemeKind },
    /// The scheme is wider than the word container.
    WidthExceedsContainer { width: u32, container_bits: u32 },
}

impl fmt::Display for SortError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SortError::KindMismatch { expected, found } => {
                write!(f, "scheme kind mismatch: expected {expected}, got {found}")
            }
            SortError::WidthExceedsContainer { width, container_bits } => {
                write!(f, "scheme width {width} exceeds {container_bits}-bit container")
            }
        }
    }
}

impl std::error::Error for SortError {}

#[inline]
fn check_range(len: usize, range: &Range<usize>) {
    assert!(
        range.start <= range.end && range.end <= len,
        "range {}..{} out of bounds for length {len}",
        range.start,
        range.end,
    );
}

#[inline]
fn check_single_bit<W: RawWord>(m: W) {
    assert!(m.to_u64().count_ones() == 1, "mask {:#x} is not a single bit", m.to_u64());
}

/// One partition pass: stable sweep moving the elements whose `m`-bit
/// belongs in front to the front of the range.
#[inline]
fn partition_pass<W: RawWord>(
    a: &mut [W],
    m: W,
    start: usize,
    end: usize,
    asc: bool,
    depth: u32,
    stats: &mut SortStats,
) -> usize {
    debug_assert!(m.to_u64().count_ones() == 1);
    let mut k = start;
    for i in start..end {
        // Ascending passes move clear bits to the front, descending passes
        // set bits; elements that stay keep their relative order.
        let bit_set = a[i].and(m) != W::ZERO;
        if bit_set != asc {
            a.swap(i, k);
            k += 1;
        }
    }
    // Every swap advanced k exactly once.
    stats.record_pass(m.to_u64().trailing_zeros(), (end - start) as u64, (k - start) as u64, depth);
    k
}

fn binary_quicksort_rec<W: RawWord>(
    a: &mut [W],
    m: W,
    start: usize,
    end: usize,
    asc: bool,
    depth: u32,
    stats: &mut SortStats,
) {
    // Callers guarantee end - start >= 2 and m a single bit.
    let k = partition_pass(a, m, start, end, asc, depth, stats);
    let m = m.shr1();
    if m == W::ZERO {
        return;
    }
    if k - start >= 2 {
        binary_quicksort_rec(a, m, start, k, asc, depth + 1, stats);
    }
    if end - k >= 2 {
        binary_quicksort_rec(a, m, k, end, asc, depth + 1, stats);
    }
}

/// Partitions `a[range]` on the single-bit mask `m` in one forward sweep.
///
/// Ascending moves the elements whose `m`-bit is clear to the front,
/// descending the elements whose bit is set; within each side the relative
/// order of unmoved elements is preserved. Returns the boundary index `k`:
/// after the call the front group is `range.start..k` and the back group
/// `k..range.end`. An empty range returns `range.start`.
///
/// Panics if `m` is not a single bit or the range is out of bounds.
pub fn single_pass_partition<W: RawWord>(
    a: &mut [W],
    m: W,
    range: Range<usize>,
    asc: bool,
    stats: Option<&mut SortStats>,
) -> usize {
    check_range(a.len(), &range);
    check_single_bit(m);
    let mut scratch = SortStats::new();
    let stats = stats.unwrap_or(&mut scratch);
    partition_pass(a, m, range.start, range.end, asc, 1, stats)
}

/// Sorts `a[range]` by the plain binary magnitude of the bits from `m` down
/// to bit 0, ascending or descending.
///
/// Bits above `m` are never inspected, so a caller that has already grouped
/// the array on higher bits can sort each group's subrange without
/// disturbing the grouping. Ranges of fewer than two elements return
/// immediately.
///
/// Panics if `m` is not a single bit or the range is out of bounds.
pub fn binary_quicksort<W: RawWord>(
    a: &mut [W],
    m: W,
    range: Range<usize>,
    asc: bool,
    stats: Option<&mut SortStats>,
) {
    check_range(a.len(), &range);
    check_single_bit(m);
    if range.len() < 2 {
        return;
    }
    let mut scratch = SortStats::new();
    let stats = stats.unwrap_or(&mut scratch);
    binary_quicksort_rec(a, m, range.start, range.end, asc, 1, stats);
}

fn check_scheme<W: RawWord>(
    a: &[W],
    scheme: &WordScheme,
    expected: SchemeKind,
) -> Result<(), SortError> {
    if scheme.kind() != expected {
        return Err(SortError::KindMismatch { expected, found: scheme.kind() });
    }
    if scheme.width() > W::BITS {
        return Err(SortError::WidthExceedsContainer {
            width: scheme.width(),
            container_bits: W::BITS,
        });
    }
    debug_assert!(
        a.iter().all(|w| scheme.contains_raw(w.to_u64())),
        "raw word exceeds scheme width {}",
        scheme.width()
    );
    Ok(())
}

/// Sorts unsigned words of the scheme's width in place.
pub fn bsort_unsigned<W: RawWord>(
    a: &mut [W],
    scheme: &WordScheme,
    asc: bool,
) -> Result<SortStats, SortError> {
    check_scheme(a, scheme, SchemeKind::Unsigned)?;
    let mut stats = SortStats::new();
    if a.len() >= 2 {
        let msb = W::bit(scheme.width() - 1);
        binary_quicksort_rec(a, msb, 0, a.len(), asc, 1, &mut stats);
    }
    Ok(stats)
}

/// Sorts two's-complement words of the scheme's width in place.
///
/// One sign pass in the inverted direction puts negative words first (for
/// ascending), then the two sign groups sort as plain binary magnitudes.
pub fn bsort_signed<W: RawWord>(
    a: &mut [W],
    scheme: &WordScheme,
    asc: bool,
) -> Result<SortStats, SortError> {
    check_scheme(a, scheme, SchemeKind::Signed)?;
    let mut stats = SortStats::new();
    let n = a.len();
    if n >= 2 {
        let sign = W::bit(scheme.width() - 1);
        let k = partition_pass(a, sign, 0, n, !asc, 1, &mut stats);
        let m = sign.shr1();
        if m != W::ZERO {
            if k >= 2 {
                binary_quicksort_rec(a, m, 0, k, asc, 2, &mut stats);
            }
            if n - k >= 2 {
                binary_quicksort_rec(a, m, k, n, asc, 2, &mut stats);
            }
        }
    }
    Ok(stats)
}

#[allow(clippy::too_many_arguments)]
fn bsort_float_rec<W: RawWord>(
    a: &mut [W],
    m: W,
    start: usize,
    end: usize,
    dir: bool,
    last_exp: W,
    depth: u32,
    stats: &mut SortStats,
) {
    // Callers guarantee end - start >= 2 and m an exponent-field bit at or
    // above last_exp.
    if m == last_exp {
        // From the last exponent bit down, exponent and mantissa order
        // lexicographically as one block.
        binary_quicksort_rec(a, m, start, end, dir, depth, stats);
        return;
    }
    let k = partition_pass(a, m, start, end, dir, depth, stats);
    let m = m.shr1();
    if k - start >= 2 {
        bsort_float_rec(a, m, start, k, dir, last_exp, depth + 1, stats);
    }
    if end - k >= 2 {
        bsort_float_rec(a, m, k, end, dir, last_exp, depth + 1, stats);
    }
}

/// Sorts sign/exponent/mantissa words of the scheme's layout in place, in
/// IEEE-754 `totalOrder`: negative NaNs, negative values down to `-0`, `+0`
/// up through `+inf`, positive NaNs.
///
/// One sign pass in the inverted direction separates the sign groups; the
/// positive group then sorts in the requested direction and the negative
/// group in the inverted direction, because for negative words bigger bit
/// patterns mean smaller values throughout exponent and mantissa alike.
pub fn bsort_float<W: RawWord>(
    a: &mut [W],
    scheme: &WordScheme,
    asc: bool,
) -> Result<SortStats, SortError> {
    check_scheme(a, scheme, SchemeKind::Float)?;
    let mut stats = SortStats::new();
    let n = a.len();
    if n >= 2 {
        let sign = W::bit(scheme.width() - 1);
        let k = partition_pass(a, sign, 0, n, !asc, 1, &mut stats);
        // The inverted sign pass puts the set sign bits (negatives) first
        // when ascending, last when descending.
        let (neg, pos) = if asc { ((0, k), (k, n)) } else { ((k, n), (0, k)) };
        let m = sign.shr1();
        let last_exp = W::bit(scheme.mant_bits());
        if neg.1 - neg.0 >= 2 {
            bsort_float_rec(a, m, neg.0, neg.1, !asc, last_exp, 2, &mut stats);
        }
        if pos.1 - pos.0 >= 2 {
            bsort_float_rec(a, m, pos.0, pos.1, asc, last_exp, 2, &mut stats);
        }
    }
    Ok(stats)
}

/// Sorts raw words in place, dispatching on the scheme's kind.
pub fn sort_words<W: RawWord>(
    a: &mut [W],
    scheme: &WordScheme,
    asc: bool,
) -> Result<SortStats, SortError> {
    match scheme.kind() {
        SchemeKind::Unsigned => bsort_unsigned(a, scheme, asc),
        SchemeKind::Signed => bsort_signed(a, scheme, asc),
        SchemeKind::Float => bsort_float(a, scheme, asc),
    }
}

/// Sorts zero-extended raw words held in `u64` containers, moving each word
/// into the narrowest fitting container first so the passes run at native
/// width. The words in `a` are replaced by the sorted sequence.
pub fn sort_raws_native(
    a: &mut [u64],
    scheme: &WordScheme,
    asc: bool,
) -> Result<SortStats, SortError> {
    fn via<W: RawWord>(
        a: &mut [u64],
        scheme: &WordScheme,
        asc: bool,
    ) -> Result<SortStats, SortError> {
        let mut buf: Vec<W> = a.iter().map(|&w| W::from_u64(w)).collect();
        let stats = sort_words(&mut buf, scheme, asc)?;
        for (dst, src) in a.iter_mut().zip(&buf) {
            *dst = src.to_u64();
        }
        Ok(stats)
    }
    match scheme.width() {
        1..=8 => via::<u8>(a, scheme, asc),
        9..=16 => via::<u16>(a, scheme, asc),
        17..=32 => via::<u32>(a, scheme, asc),
        _ => sort_words(a, scheme, asc),
    }
}

macro_rules! native_unsigned_sorts {
    ($($(#[$doc:meta])* $name:ident: $t:ty => $scheme:ident;)*) => {$(
        $(#[$doc])*
        pub fn $name(a: &mut [$t], asc: bool) -> SortStats {
            bsort_unsigned(a, &WordScheme::$scheme, asc).expect("native width always fits")
        }
    )*};
}

macro_rules! native_cast_sorts {
    ($($(#[$doc:meta])* $name:ident: $t:ty as $raw:ty => $scheme:ident via $sorter:ident;)*) => {$(
        $(#[$doc])*
        pub fn $name(a: &mut [$t], asc: bool) -> SortStats {
            // Same size and alignment, and every bit pattern is valid for
            // both element types, so the slice reinterpretation is sound.
            let raw = unsafe { &mut *(a as *mut [$t] as *mut [$raw]) };
            $sorter(raw, &WordScheme::$scheme, asc).expect("native width always fits")
        }
    )*};
}

native_unsigned_sorts! {
    /// Sorts a `u8` slice in place.
    sort_u8: u8 => U8;
    /// Sorts a `u16` slice in place.
    sort_u16: u16 => U16;
    /// Sorts a `u32` slice in place.
    sort_u32: u32 => U32;
    /// Sorts a `u64` slice in place.
    sort_u64: u64 => U64;
}

native_cast_sorts! {
    /// Sorts an `i8` slice in place.
    sort_i8: i8 as u8 => I8 via bsort_signed;
    /// Sorts an `i16` slice in place.
    sort_i16: i16 as u16 => I16 via bsort_signed;
    /// Sorts an `i32` slice in place.
    sort_i32: i32 as u32 => I32 via bsort_signed;
    /// Sorts an `i64` slice in place.
    sort_i64: i64 as u64 => I64 via bsort_signed;
    /// Sorts an `f32` slice in place in IEEE-754 `totalOrder`.
    sort_f32: f32 as u32 => F32 via bsort_float;
    /// Sorts an `f64` slice in place in IEEE-754 `totalOrder`.
    sort_f64: f64 as u64 => F64 via bsort_float;
}
