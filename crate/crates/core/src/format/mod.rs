//! Program input and output formats.

mod aspif;
mod native;

pub use aspif::{emit_aspif, parse_aspif, parse_aspif_with_warnings, AspifWarning};
pub use native::{externalize_facts, parse_program};
