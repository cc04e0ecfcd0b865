//! File formats, reports, cache persistence and the `mdk` front end for
//! `modkit-core`.

pub mod cache;
pub mod cli;
pub mod datum_file;
pub mod explore;
pub mod report;

pub use datum_file::{load_datum, parse_datum, render_datum, save_datum, FormatError};
