//! BSRT binary container: bit-exact word arrays.
//!
//! Layout: magic `BSRT`, version byte `0x01`, scheme code byte, reserved
//! byte `0x00`, element count as 8-byte little-endian, then each raw word
//! little-endian in `ceil(width/8)` bytes. Bits above the scheme width must
//! be zero, so NaN payloads and signed zeros survive round-trips and
//! malformed words are rejected on read.

use bsort::scheme::WordScheme;

/// Scheme codes the CLI accepts, in scheme-byte order (byte = index + 1).
pub const SCHEME_CODES: [&str; 13] =
    ["u8", "u16", "u32", "u64", "i8", "i16", "i32", "i64", "f32", "f64", "f6", "u3", "i4"];

const MAGIC: &[u8; 4] = b"BSRT";
const VERSION: u8 = 0x01;
const HEADER_LEN: usize = 15;

/// Resolves a CLI scheme code; errors list the registry.
pub fn cli_scheme(code: &str) -> Result<WordScheme, String> {
    if !SCHEME_CODES.contains(&code) {
        return Err(format!(
            "unknown scheme {code:?} (expected one of: {})",
            SCHEME_CODES.join(", ")
        ));
    }
    WordScheme::from_code(code).map_err(|e| e.to_string())
}

/// Every scheme the CLI knows, in registry order.
pub fn all_schemes() -> Vec<WordScheme> {
    SCHEME_CODES.iter().map(|code| cli_scheme(code).expect("registry codes parse")).collect()
}

fn scheme_byte(scheme: &WordScheme) -> u8 {
    let code = scheme.code();
    let idx = SCHEME_CODES
        .iter()
        .position(|&c| c == code)
        .expect("only registry schemes reach the binary writer");
    (idx + 1) as u8
}

fn scheme_from_byte(byte: u8) -> Option<WordScheme> {
    let idx = (byte as usize).checked_sub(1)?;
    SCHEME_CODES.get(idx).map(|code| cli_scheme(code).expect("registry codes parse"))
}

fn bytes_per_word(scheme: &WordScheme) -> usize {
    scheme.width().div_ceil(8) as usize
}

/// Serializes words under `scheme` into the BSRT container.
pub fn write_bsrt(scheme: &WordScheme, words: &[u64]) -> Vec<u8> {
    let bpw = bytes_per_word(scheme);
    let mut out = Vec::with_capacity(HEADER_LEN + words.len() * bpw);
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(scheme_byte(scheme));
    out.push(0x00);
    out.extend_from_slice(&(words.len() as u64).to_le_bytes());
    for &word in words {
        debug_assert!(scheme.contains_raw(word));
        out.extend_from_slice(&word.to_le_bytes()[..bpw]);
    }
    out
}

/// Parses a BSRT container, validating the header, the payload length, and
/// that no word carries bits above the scheme width.
pub fn read_bsrt(bytes: &[u8]) -> Result<(WordScheme, Vec<u64>), String> {
    if bytes.len() < HEADER_LEN {
        return Err(format!(
            "file is {} bytes, shorter than the {HEADER_LEN}-byte BSRT header",
            bytes.len()
        ));
    }
    if &bytes[0..4] != MAGIC {
        return Err("missing BSRT magic; not a bsort binary file".to_string());
    }
    if bytes[4] != VERSION {
        return Err(format!("unsupported format version {:#04x}", bytes[4]));
    }
    let scheme = scheme_from_byte(bytes[5])
        .ok_or_else(|| format!("unknown scheme byte {:#04x}", bytes[5]))?;
    if bytes[6] != 0 {
        return Err(format!("reserved header byte is {:#04x}, expected 0x00", bytes[6]));
    }
    let count = u64::from_le_bytes(bytes[7..HEADER_LEN].try_into().unwrap());
    let bpw = bytes_per_word(&scheme);
    let body = &bytes[HEADER_LEN..];
    if count.checked_mul(bpw as u64) != Some(body.len() as u64) {
        return Err(format!(
            "payload is {} bytes but the header declares {count} {bpw}-byte words",
            body.len()
        ));
    }
    let mut words = Vec::with_capacity(count as usize);
    for chunk in body.chunks_exact(bpw) {
        let mut buf = [0u8; 8];
        buf[..bpw].copy_from_slice(chunk);
        let word = u64::from_le_bytes(buf);
        if !scheme.contains_raw(word) {
            return Err(format!(
                "word {word:#x} has bits set above the {}-bit width of {}",
                scheme.width(),
                scheme.code()
            ));
        }
        words.push(word);
    }
    Ok((scheme, words))
}
