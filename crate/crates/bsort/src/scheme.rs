//! Word schemes: bit-level layouts that give raw words an order.
//!
//! A *raw word* is a bit pattern of up to 64 bits, stored zero-extended in an
//! unsigned container. A [`WordScheme`] describes how those bits encode a
//! value: plain binary magnitude, two's complement, or sign/exponent/mantissa.
//! Everything else in this crate (the sorts, the oracle, the generators) is
//! defined in terms of a scheme.

use std::error::Error;
use std::fmt;

/// How the bits of a word encode a value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SchemeKind {
    /// Plain binary magnitude.
    Unsigned,
    /// Two's complement.
    Signed,
    /// Sign bit, biased exponent, mantissa (IEEE-754 style, any field widths).
    Float,
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeKind::Unsigned => "unsigned",
            SchemeKind::Signed => "signed",
            SchemeKind::Float => "float",
        })
    }
}

/// Errors from constructing or interrogating a [`WordScheme`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SchemeError {
    /// Word width outside `1..=64`.
    InvalidWidth(u32),
    /// Float field widths must each be at least 1 and leave room for the
    /// sign bit within 64 bits.
    InvalidFloatLayout { exp_bits: u32, mant_bits: u32 },
    /// The operation is only defined for float schemes.
    NotFloat(SchemeKind),
    /// Unknown scheme code string.
    UnknownCode(String),
}

impl fmt::Display for SchemeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeError::InvalidWidth(w) => write!(f, "word width {w} outside 1..=64"),
            SchemeError::InvalidFloatLayout { exp_bits, mant_bits } => write!(
                f,
                "float layout with {exp_bits} exponent and {mant_bits} mantissa bits is invalid"
            ),
            SchemeError::NotFloat(kind) => {
                write!(f, "operation requires a float scheme, got {kind}")
            }
            SchemeError::UnknownCode(code) => write!(f, "unknown scheme code {code:?}"),
        }
    }
}

impl Error for SchemeError {}

/// Bit-level layout of a word type: kind, total width, and for floats the
/// exponent and mantissa field widths.
///
/// Raw words of width `w` travel zero-extended in unsigned containers; the
/// scheme's only job is to say what order those `2^w` bit patterns carry.
/// Use [`total_order_key`] for the order as a monotone bit transform, or the
/// sorts in [`crate::sort`] to arrange words without materializing keys.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WordScheme {
    kind: SchemeKind,
    width: u32,
    exp_bits: u32,
    mant_bits: u32,
}

impl WordScheme {
    /// 8-bit unsigned.
    pub const U8: WordScheme =
        WordScheme { kind: SchemeKind::Unsigned, width: 8, exp_bits: 0, mant_bits: 0 };
    /// 16-bit unsigned.
    pub const U16: WordScheme =
        WordScheme { kind: SchemeKind::Unsigned, width: 16, exp_bits: 0, mant_bits: 0 };
    /// 32-bit unsigned.
    pub const U32: WordScheme =
        WordScheme { kind: SchemeKind::Unsigned, width: 32, exp_bits: 0, mant_bits: 0 };
    /// 64-bit unsigned.
    pub const U64: WordScheme =
        WordScheme { kind: SchemeKind::Unsigned, width: 64, exp_bits: 0, mant_bits: 0 };
    /// 8-bit two's complement.
    pub const I8: WordScheme =
        WordScheme { kind: SchemeKind::Signed, width: 8, exp_bits: 0, mant_bits: 0 };
    /// 16-bit two's complement.
    pub const I16: WordScheme =
        WordScheme { kind: SchemeKind::Signed, width: 16, exp_bits: 0, mant_bits: 0 };
    /// 32-bit two's complement.
    pub const I32: WordScheme =
        WordScheme { kind: SchemeKind::Signed, width: 32, exp_bits: 0, mant_bits: 0 };
    /// 64-bit two's complement.
    pub const I64: WordScheme =
        WordScheme { kind: SchemeKind::Signed, width: 64, exp_bits: 0, mant_bits: 0 };
    /// IEEE-754 binary32: 8 exponent bits, 23 mantissa bits.
    pub const F32: WordScheme =
        WordScheme { kind: SchemeKind::Float, width: 32, exp_bits: 8, mant_bits: 23 };
    /// IEEE-754 binary64: 11 exponent bits, 52 mantissa bits.
    pub const F64: WordScheme =
        WordScheme { kind: SchemeKind::Float, width: 64, exp_bits: 11, mant_bits: 52 };
    /// Six-bit teaching float: 3 exponent bits, 2 mantissa bits.
    pub const F6: WordScheme =
        WordScheme { kind: SchemeKind::Float, width: 6, exp_bits: 3, mant_bits: 2 };

    /// Unsigned scheme of the given width.
    pub fn unsigned(width: u32) -> Result<WordScheme, SchemeError> {
        check_width(width)?;
        Ok(WordScheme { kind: SchemeKind::Unsigned, width, exp_bits: 0, mant_bits: 0 })
    }

    /// Two's-complement scheme of the given width.
    pub fn signed(width: u32) -> Result<WordScheme, SchemeError> {
        check_width(width)?;
        Ok(WordScheme { kind: SchemeKind::Signed, width, exp_bits: 0, mant_bits: 0 })
    }

    /// Float scheme with the given field widths; total width is
    /// `1 + exp_bits + mant_bits`.
    pub fn float(exp_bits: u32, mant_bits: u32) -> Result<WordScheme, SchemeError> {
        if exp_bits == 0 || mant_bits == 0 {
            return Err(SchemeError::InvalidFloatLayout { exp_bits, mant_bits });
        }
        let width = 1u32
            .checked_add(exp_bits)
            .and_then(|w| w.checked_add(mant_bits))
            .ok_or(SchemeError::InvalidFloatLayout { exp_bits, mant_bits })?;
        check_width(width)?;
        Ok(WordScheme { kind: SchemeKind::Float, width, exp_bits, mant_bits })
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    /// Total word width in bits, `1..=64`.
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Exponent field width; zero for non-float schemes.
    pub fn exp_bits(&self) -> u32 {
        self.exp_bits
    }

    /// Mantissa field width; zero for non-float schemes.
    pub fn mant_bits(&self) -> u32 {
        self.mant_bits
    }

    /// Largest raw word of this width (all `width` bits set).
    pub fn max_raw(&self) -> u64 {
        if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        }
    }

    /// Whether `raw` is a valid zero-extended word of this scheme.
    pub fn contains_raw(&self, raw: u64) -> bool {
        raw <= self.max_raw()
    }

    /// Short code naming the scheme: `u32`, `i4`, `f6`, ...
    ///
    /// Unsigned and signed widths map to `u{w}`/`i{w}`. The three built-in
    /// float layouts map to `f6`/`f32`/`f64`; other float layouts get the
    /// unambiguous `f{w}e{e}m{t}` form, which [`WordScheme::from_code`] does
    /// not parse back.
    pub fn code(&self) -> String {
        match self.kind {
            SchemeKind::Unsigned => format!("u{}", self.width),
            SchemeKind::Signed => format!("i{}", self.width),
            SchemeKind::Float => {
                if *self == Self::F6 || *self == Self::F32 || *self == Self::F64 {
                    format!("f{}", self.width)
                } else {
                    format!("f{}e{}m{}", self.width, self.exp_bits, self.mant_bits)
                }
            }
        }
    }

    /// Parses a scheme code: `u{w}` and `i{w}` for any width `1..=64`, plus
    /// the built-in float codes `f6`, `f32`, `f64`.
    pub fn from_code(code: &str) -> Result<WordScheme, SchemeError> {
        let unknown = || SchemeError::UnknownCode(code.to_string());
        match code {
            "f6" => return Ok(Self::F6),
            "f32" => return Ok(Self::F32),
            "f64" => return Ok(Self::F64),
            _ => {}
        }
        let (head, digits) = code.split_at(code.len().min(1));
        let width: u32 = digits.parse().map_err(|_| unknown())?;
        let scheme = match head {
            "u" => Self::unsigned(width),
            "i" => Self::signed(width),
            _ => return Err(unknown()),
        };
        scheme.map_err(|_| unknown())
    }

    fn sign_bit(&self) -> u64 {
        1u64 << (self.width - 1)
    }
}

fn check_width(width: u32) -> Result<(), SchemeError> {
    if (1..=64).contains(&width) {
        Ok(())
    } else {
        Err(SchemeError::InvalidWidth(width))
    }
}

/// A single-bit probe mask over raw words, or the exhausted sentinel (zero)
/// once every bit position has been consumed.
///
/// Masks enumerate a scheme's bit positions from most to least significant:
/// start at [`Mask::msb`] and apply [`Mask::shift_right`] until exhausted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mask(u64);

impl Mask {
    /// Mask probing the most significant bit of the scheme's words.
    pub fn msb(scheme: &WordScheme) -> Mask {
        Mask(scheme.sign_bit())
    }

    /// Mask probing the least significant exponent bit of a float scheme.
    ///
    /// When the enumeration reaches this mask, the remaining exponent and
    /// mantissa bits order lexicographically as one block.
    pub fn last_exponent(scheme: &WordScheme) -> Result<Mask, SchemeError> {
        match scheme.kind {
            SchemeKind::Float => Ok(Mask(1u64 << scheme.mant_bits)),
            other => Err(SchemeError::NotFloat(other)),
        }
    }

    /// Mask probing a specific bit position (0 = least significant).
    ///
    /// Panics if `position >= 64`.
    pub fn at(position: u32) -> Mask {
        assert!(position < 64, "bit position {position} out of range");
        Mask(1u64 << position)
    }

    /// Next mask in most-to-least significant order; exhausted after bit 0.
    pub fn shift_right(self) -> Mask {
        Mask(self.0 >> 1)
    }

    /// Raw mask value: a power of two, or zero when exhausted.
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_exhausted(self) -> bool {
        self.0 == 0
    }

    /// Bit position probed by this mask; `None` when exhausted.
    pub fn bit_position(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros())
        }
    }
}

/// Monotone key transform: `total_order_key(a, s) < total_order_key(b, s)`
/// exactly when word `a` orders before word `b` under scheme `s`.
///
/// The transform is a bijection on the scheme's `2^width` raw patterns, so
/// ordinary unsigned comparison of keys is a total order with no ties between
/// distinct patterns. For floats this is the IEEE-754 `totalOrder` relation:
/// negative NaNs first, then negative values down to `-0`, then `+0` up
/// through `+inf`, then positive NaNs, with NaN payloads ordered by magnitude.
///
/// | kind     | transform                                   |
/// |----------|---------------------------------------------|
/// | unsigned | identity                                    |
/// | signed   | flip the sign bit                           |
/// | float    | sign set: complement all `width` bits; sign clear: set the sign bit |
pub fn total_order_key(raw: u64, scheme: &WordScheme) -> u64 {
    debug_assert!(scheme.contains_raw(raw), "raw word {raw:#x} exceeds width {}", scheme.width());
    let sign = scheme.sign_bit();
    match scheme.kind {
        SchemeKind::Unsigned => raw,
        SchemeKind::Signed => raw ^ sign,
        SchemeKind::Float => {
            if raw & sign != 0 {
                !raw & scheme.max_raw()
            } else {
                raw | sign
            }
        }
    }
}

/// Errors from encoding a numeric value into a float scheme's bit pattern.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum EncodeError {
    /// The value is not exactly representable in the target layout (rounding
    /// would be required, or the magnitude overflows to the infinity range).
    Inexact(f64),
    /// The scheme is not a float scheme.
    NotFloat,
}

impl fmt::Display for EncodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncodeError::Inexact(v) => write!(f, "{v} is not exactly representable"),
            EncodeError::NotFloat => write!(f, "encoding requires a float scheme"),
        }
    }
}

impl Error for EncodeError {}

/// Encodes an `f64` value into a float scheme's raw bit pattern, exactly.
///
/// Finite values must be representable without rounding, or the call fails
/// with [`EncodeError::Inexact`]; infinities map to the infinity patterns and
/// any NaN maps to the scheme's canonical quiet NaN (positive sign, zero
/// payload below the quiet bit). For [`WordScheme::F64`] the finite encoding
/// is exactly `f64::to_bits`.
pub fn encode_f64(value: f64, scheme: &WordScheme) -> Result<u64, EncodeError> {
    if scheme.kind != SchemeKind::Float {
        return Err(EncodeError::NotFloat);
    }
    let (e, t) = (scheme.exp_bits, scheme.mant_bits);
    let sign = if value.is_sign_negative() { scheme.sign_bit() } else { 0 };
    let exp_all_ones = ((1u64 << e) - 1) << t;
    if value.is_nan() {
        return Ok(exp_all_ones | (1u64 << (t - 1)));
    }
    if value.is_infinite() {
        return Ok(sign | exp_all_ones);
    }
    if value == 0.0 {
        return Ok(sign);
    }

    // Finite nonzero: take |value| = m * 2^q with m odd, then place it.
    let bits = value.abs().to_bits();
    let exp_field = (bits >> 52) as i64 & 0x7FF;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut m, mut q) =
        if exp_field == 0 { (frac, -1074i64) } else { (frac | (1u64 << 52), exp_field - 1075) };
    while m & 1 == 0 {
        m >>= 1;
        q += 1;
    }

    let bias = (1i64 << (e - 1)) - 1;
    let emin = 1 - bias;
    let emax = bias;
    let top = 63 - m.leading_zeros() as i64; // position of the leading 1 of m
    let real_exp = q + top;

    if real_exp > emax {
        return Err(EncodeError::Inexact(value));
    }
    if real_exp >= emin {
        // Normal: 1.f * 2^real_exp needs the bits of m below its leading 1
        // to fit in t mantissa bits.
        if top > t as i64 {
            return Err(EncodeError::Inexact(value));
        }
        let fracbits = (m ^ (1u64 << top)) << (t as i64 - top);
        let exp_field = (real_exp + bias) as u64;
        Ok(sign | (exp_field << t) | fracbits)
    } else {
        // Subnormal: f * 2^(emin - t); m must shift left, never right.
        let shift = q - (emin - t as i64);
        if shift < 0 || top + shift >= t as i64 {
            return Err(EncodeError::Inexact(value));
        }
        Ok(sign | (m << shift))
    }
}

/// Decodes a float scheme's raw bit pattern to `f64`, exactly.
///
/// Requires `exp_bits <= 11` and `mant_bits <= 52` so every finite value of
/// the scheme is an `f64`. NaN patterns decode to `f64::NAN` (payload and
/// sign are not preserved). For [`WordScheme::F64`] this is `f64::from_bits`
/// except for that NaN canonicalization.
pub fn decode_f64(raw: u64, scheme: &WordScheme) -> Result<f64, SchemeError> {
    if scheme.kind != SchemeKind::Float {
        return Err(SchemeError::NotFloat(scheme.kind));
    }
    if scheme.exp_bits > 11 || scheme.mant_bits > 52 {
        return Err(SchemeError::InvalidFloatLayout {
            exp_bits: scheme.exp_bits,
            mant_bits: scheme.mant_bits,
        });
    }
    debug_assert!(scheme.contains_raw(raw));
    let (e, t) = (scheme.exp_bits, scheme.mant_bits);
    let negative = raw & scheme.sign_bit() != 0;
    let exp_field = (raw >> t) & ((1u64 << e) - 1);
    let frac = raw & ((1u64 << t) - 1);
    let bias = (1i32 << (e - 1)) - 1;

    // significand * 2^k, exact for every valid encoding. Scaling happens in
    // two steps because a single 2^k factor can itself over/underflow (k
    // reaches -1074 for the 64-bit layout) even though the product is
    // representable.
    fn scale_pow2(significand: u64, k: i32) -> f64 {
        let mut v = significand as f64;
        let mut k = k;
        while k < -900 {
            v *= 2f64.powi(-900);
            k += 900;
        }
        v * 2f64.powi(k)
    }

    let magnitude = if exp_field == (1u64 << e) - 1 {
        if frac == 0 {
            f64::INFINITY
        } else {
            return Ok(f64::NAN);
        }
    } else if exp_field == 0 {
        // Subnormal: f * 2^(1 - bias - t).
        scale_pow2(frac, 1 - bias - t as i32)
    } else {
        scale_pow2((1u64 << t) | frac, exp_field as i32 - bias - t as i32)
    };
    Ok(if negative { -magnitude } else { magnitude })
}
