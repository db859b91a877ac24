//! Exact decomposition of finite positional fractions.
//!
//! Any finite base-`b` digit string `±a.c` (integer digits `a`, fraction
//! digits `c`, `q` of them) factors exactly as `s * m * b^p` with integer
//! mantissa `m = a * b^q + c` and power `p = -q <= 0`. The decomposition keeps
//! the written digits intact (no normalization), so it reconstructs the input
//! digit for digit, and it separates the three fields a hierarchical order on
//! such numbers has to weigh: sign, then power, then mantissa.

use std::error::Error;
use std::fmt;

/// Errors from building a [`Decomposition`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DecomposeError {
    /// Base must be at least 2 (and at most 36 for digit-string parsing).
    InvalidBase(u32),
    /// A digit value at or above the base.
    InvalidDigit { digit: u32, base: u32 },
    /// No digits at all.
    Empty,
    /// A character that is neither a digit, a sign, nor the radix point.
    InvalidChar(char),
    /// The mantissa does not fit in 128 bits.
    Overflow,
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::InvalidBase(b) => write!(f, "invalid base {b}"),
            DecomposeError::InvalidDigit { digit, base } => {
                write!(f, "digit {digit} is not below base {base}")
            }
            DecomposeError::Empty => write!(f, "no digits"),
            DecomposeError::InvalidChar(c) => write!(f, "invalid character {c:?}"),
            DecomposeError::Overflow => write!(f, "mantissa exceeds 128 bits"),
        }
    }
}

impl Error for DecomposeError {}

/// A finite positional fraction factored as `sign * mantissa * base^power`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Decomposition {
    /// True for negative inputs (including a written `-0`).
    pub negative: bool,
    /// Integer mantissa: the input digits read as one base-`base` integer.
    pub mantissa: u128,
    /// Power of the base; `-(number of fraction digits)`, never positive.
    pub power: i32,
    /// Positional base, at least 2.
    pub base: u32,
}

impl Decomposition {
    /// Sign as `-1` or `+1`.
    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// Renders the exact value back as a digit string in `self.base`.
    ///
    /// Exact rational evaluation of `sign * mantissa * base^power`: the
    /// integer part is `mantissa / base^-power` and the fraction digits are
    /// the remainder, left-padded with zeros to `-power` digits. Inverse of
    /// [`Decomposition::from_digit_str`] up to leading integer zeros.
    pub fn to_digit_string(&self) -> String {
        let scale = (self.base as u128).pow((-self.power) as u32);
        let int_part = self.mantissa / scale;
        let frac_part = self.mantissa % scale;
        let mut out = String::new();
        if self.negative {
            out.push('-');
        }
        out.push_str(&render_digits(int_part, self.base, 1));
        if self.power < 0 {
            out.push('.');
            out.push_str(&render_digits(frac_part, self.base, (-self.power) as usize));
        }
        out
    }
}

fn render_digits(mut value: u128, base: u32, min_len: usize) -> String {
    let mut digits = Vec::new();
    while value > 0 {
        digits.push(char::from_digit((value % base as u128) as u32, base).unwrap());
        value /= base as u128;
    }
    while digits.len() < min_len {
        digits.push('0');
    }
    digits.iter().rev().collect()
}

/// Decomposes sign + integer digits + fraction digits in base `base` into
/// [`Decomposition`] form: `m = a * base^q + c`, `p = -q` where `q` is the
/// number of fraction digits.
///
/// Digits are numeric values (most significant first) and must be below the
/// base. Any base from 2 up is accepted.
pub fn decompose_finite_fraction(
    negative: bool,
    int_digits: &[u32],
    frac_digits: &[u32],
    base: u32,
) -> Result<Decomposition, DecomposeError> {
    if base < 2 {
        return Err(DecomposeError::InvalidBase(base));
    }
    if int_digits.is_empty() && frac_digits.is_empty() {
        return Err(DecomposeError::Empty);
    }
    let mut mantissa: u128 = 0;
    for &d in int_digits.iter().chain(frac_digits) {
        if d >= base {
            return Err(DecomposeError::InvalidDigit { digit: d, base });
        }
        mantissa = mantissa
            .checked_mul(base as u128)
            .and_then(|m| m.checked_add(d as u128))
            .ok_or(DecomposeError::Overflow)?;
    }
    Ok(Decomposition { negative, mantissa, power: -(frac_digits.len() as i32), base })
}

impl Decomposition {
    /// Parses a digit string like `-101.1` (optional sign, optional radix
    /// point) in the given base, `2..=36`, and decomposes it.
    pub fn from_digit_str(s: &str, base: u32) -> Result<Decomposition, DecomposeError> {
        if !(2..=36).contains(&base) {
            return Err(DecomposeError::InvalidBase(base));
        }
        let (negative, rest) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let mut int_digits = Vec::new();
        let mut frac_digits = Vec::new();
        let mut in_fraction = false;
        for c in rest.chars() {
            if c == '.' {
                if in_fraction {
                    return Err(DecomposeError::InvalidChar(c));
                }
                in_fraction = true;
            } else {
                let d = c.to_digit(base).ok_or(DecomposeError::InvalidChar(c))?;
                if in_fraction { &mut frac_digits } else { &mut int_digits }.push(d);
            }
        }
        decompose_finite_fraction(negative, &int_digits, &frac_digits, base)
    }
}
