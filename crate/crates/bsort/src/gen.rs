//! Deterministic dataset generation.
//!
//! Datasets are identified by (scheme, size, distribution, seed) and must be
//! bit-reproducible across runs, platforms and versions; that identity is
//! part of the benchmark format contract. The generator is therefore pinned
//! to a specific PRNG with a specific stream rather than any library default.

use crate::oracle::oracle_sort;
use crate::scheme::WordScheme;
use std::error::Error;
use std::fmt;

/// SplitMix64 generator (Steele, Lea & Flood), pinned constants.
///
/// The stream for a given seed is frozen: increment `0x9E3779B97F4A7C15`,
/// finalizer multiplies `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB` with
/// shifts 30/27/31.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value below `bound` (`bound > 0`) by modulo reduction.
    ///
    /// The modulo bias is below `bound / 2^64`, irrelevant here; what matters
    /// is that the mapping is frozen.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Uniform `f64` in the half-open unit interval `[0, 1)`.
    pub fn next_unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Input arrangement of a generated dataset.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Distribution {
    /// Independent uniform bits in the scheme's width; for float schemes this
    /// includes infinities and NaN payloads at their natural density.
    UniformBits,
    /// Uniform bits, pre-sorted ascending in the scheme's order.
    Sorted,
    /// Uniform bits, pre-sorted descending.
    ReverseSorted,
    /// Uniform draws from a pool of at most `k` distinct words.
    FewUnique(u32),
    /// Standard normal values; `f32`/`f64` schemes only, always finite.
    GaussianFloat,
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::UniformBits => f.write_str("uniform-bits"),
            Distribution::Sorted => f.write_str("sorted"),
            Distribution::ReverseSorted => f.write_str("reverse-sorted"),
            Distribution::FewUnique(k) => write!(f, "few-unique({k})"),
            Distribution::GaussianFloat => f.write_str("gaussian-float"),
        }
    }
}

impl std::str::FromStr for Distribution {
    type Err = String;

    fn from_str(s: &str) -> Result<Distribution, String> {
        match s {
            "uniform-bits" => Ok(Distribution::UniformBits),
            "sorted" => Ok(Distribution::Sorted),
            "reverse-sorted" => Ok(Distribution::ReverseSorted),
            "gaussian-float" => Ok(Distribution::GaussianFloat),
            _ => {
                let inner = s
                    .strip_prefix("few-unique(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .ok_or_else(|| format!("unknown distribution {s:?}"))?;
                let k: u32 =
                    inner.parse().map_err(|_| format!("bad few-unique count {inner:?}"))?;
                Ok(Distribution::FewUnique(k))
            }
        }
    }
}

/// Errors from dataset generation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GenError {
    /// The distribution is not defined for the scheme.
    UnsupportedDistribution { distribution: String, scheme: String },
    /// A distribution parameter is out of range.
    InvalidParameter(String),
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::UnsupportedDistribution { distribution, scheme } => {
                write!(f, "distribution {distribution} is not defined for scheme {scheme}")
            }
            GenError::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl Error for GenError {}

/// Full identity of a generated dataset.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct DatasetSpec {
    pub scheme: WordScheme,
    pub size: usize,
    pub distribution: Distribution,
    pub seed: u64,
}

/// Generates the dataset a [`DatasetSpec`] names: `size` zero-extended raw
/// words, byte-identical for identical specs.
pub fn generate(spec: &DatasetSpec) -> Result<Vec<u64>, GenError> {
    let mut rng = SplitMix64::new(spec.seed);
    let scheme = &spec.scheme;
    let uniform = |rng: &mut SplitMix64| rng.next_u64() & scheme.max_raw();
    match spec.distribution {
        Distribution::UniformBits => Ok((0..spec.size).map(|_| uniform(&mut rng)).collect()),
        Distribution::Sorted => {
            let data: Vec<u64> = (0..spec.size).map(|_| uniform(&mut rng)).collect();
            Ok(oracle_sort(&data, scheme, true))
        }
        Distribution::ReverseSorted => {
            let data: Vec<u64> = (0..spec.size).map(|_| uniform(&mut rng)).collect();
            Ok(oracle_sort(&data, scheme, false))
        }
        Distribution::FewUnique(k) => {
            if k == 0 {
                return Err(GenError::InvalidParameter(
                    "few-unique pool size must be positive".into(),
                ));
            }
            let pool: Vec<u64> = (0..k).map(|_| uniform(&mut rng)).collect();
            Ok((0..spec.size).map(|_| pool[rng.next_below(k as u64) as usize]).collect())
        }
        Distribution::GaussianFloat => {
            let to_raw: fn(f64) -> u64 = if *scheme == WordScheme::F32 {
                |v| (v as f32).to_bits() as u64
            } else if *scheme == WordScheme::F64 {
                f64::to_bits
            } else {
                return Err(GenError::UnsupportedDistribution {
                    distribution: spec.distribution.to_string(),
                    scheme: scheme.code(),
                });
            };
            Ok((0..spec.size).map(|_| to_raw(gaussian(&mut rng))).collect())
        }
    }
}

/// Standard normal deviate by Box-Muller; always finite (the log argument is
/// bounded away from zero).
fn gaussian(rng: &mut SplitMix64) -> f64 {
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64); // (0, 1]
    let u2 = rng.next_unit_f64(); // [0, 1)
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// FNV-1a checksum of the words' little-endian bytes; used to confirm
/// dataset reproducibility cheaply.
pub fn checksum(words: &[u64]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for w in words {
        for b in w.to_le_bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    hash
}
