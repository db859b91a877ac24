//! Support library for the `bsort` command-line tool: the scheme registry
//! and the text and binary value formats the commands share.

pub mod fmt_bin;
pub mod fmt_text;
