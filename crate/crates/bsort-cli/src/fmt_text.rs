//! Whitespace-separated decimal text format.
//!
//! Tokens are split on any whitespace; parse errors carry 1-based line
//! numbers. Floats accept `inf`, `-inf`, and `nan`; a `nan` token always maps
//! to the positive quiet-NaN pattern with zero payload, and formatting maps
//! every NaN back to `nan` — NaN signs and payloads only survive the binary
//! format. Toy float schemes (like `f6`) reject values they cannot represent
//! exactly rather than rounding silently.

use bsort::scheme::{decode_f64, encode_f64, EncodeError, SchemeKind, WordScheme};

/// Parses whitespace-separated values for `scheme` into raw words.
pub fn parse_text(input: &str, scheme: &WordScheme) -> Result<Vec<u64>, String> {
    let mut words = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        for token in line.split_whitespace() {
            let word =
                parse_token(token, scheme).map_err(|msg| format!("line {}: {msg}", idx + 1))?;
            words.push(word);
        }
    }
    Ok(words)
}

/// Parses one token into a raw word for `scheme`.
pub fn parse_token(token: &str, scheme: &WordScheme) -> Result<u64, String> {
    let w = scheme.width();
    match scheme.kind() {
        SchemeKind::Unsigned => {
            let v: u64 =
                token.parse().map_err(|_| format!("{token:?} is not an unsigned integer"))?;
            if v > scheme.max_raw() {
                return Err(format!("{v} does not fit in {} ({w}-bit unsigned)", scheme.code()));
            }
            Ok(v)
        }
        SchemeKind::Signed => {
            let v: i64 = token.parse().map_err(|_| format!("{token:?} is not an integer"))?;
            if w < 64 {
                let lo = -(1i64 << (w - 1));
                let hi = (1i64 << (w - 1)) - 1;
                if v < lo || v > hi {
                    return Err(format!(
                        "{v} does not fit in {} (range {lo}..={hi})",
                        scheme.code()
                    ));
                }
            }
            Ok((v as u64) & scheme.max_raw())
        }
        SchemeKind::Float => {
            let v: f64 = token.parse().map_err(|_| format!("{token:?} is not a number"))?;
            if *scheme == WordScheme::F32 {
                // Reparse natively so rounding happens at 32 bits.
                let v32: f32 = token.parse().unwrap();
                return Ok(if v32.is_nan() { 0x7FC0_0000 } else { v32.to_bits() as u64 });
            }
            if *scheme == WordScheme::F64 {
                return Ok(if v.is_nan() { 0x7FF8_0000_0000_0000 } else { v.to_bits() });
            }
            // Toy layouts encode exactly or not at all.
            encode_f64(v, scheme).map_err(|e| match e {
                EncodeError::Inexact(x) => {
                    format!("{x} has no exact {} representation", scheme.code())
                }
                EncodeError::NotFloat => format!("{} is not a float scheme", scheme.code()),
            })
        }
    }
}

/// Formats one raw word as a text token that parses back to the same word
/// (NaN payloads and signs excepted; they all render as `nan`).
pub fn format_word(raw: u64, scheme: &WordScheme) -> String {
    let w = scheme.width();
    match scheme.kind() {
        SchemeKind::Unsigned => raw.to_string(),
        SchemeKind::Signed => (((raw << (64 - w)) as i64) >> (64 - w)).to_string(),
        SchemeKind::Float => {
            if *scheme == WordScheme::F32 {
                let v = f32::from_bits(raw as u32);
                return if v.is_nan() { "nan".to_string() } else { v.to_string() };
            }
            let v = decode_f64(raw, scheme).expect("registry float layouts decode");
            if v.is_nan() {
                "nan".to_string()
            } else {
                v.to_string()
            }
        }
    }
}

/// Formats words space-separated on one line, without a trailing newline.
pub fn format_words(words: &[u64], scheme: &WordScheme) -> String {
    words.iter().map(|&raw| format_word(raw, scheme)).collect::<Vec<_>>().join(" ")
}
