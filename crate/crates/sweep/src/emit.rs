//! CSV / JSON encodings of sweep results.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

pub use dicke_core::report::format_number;
use dicke_core::{Measure, MeasureReport};

use crate::error::{Result, SweepError};
use crate::fit::{CriticalExponents, ScalingFit};
use crate::sweep::PointError;

/// Fits attached to a JSON document; absent fits are omitted.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Fits {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy_scaling: Option<ScalingFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical: Option<CriticalExponents>,
}

#[derive(Serialize)]
struct Document<'a> {
    reports: &'a [MeasureReport],
    fits: &'a Fits,
    errors: &'a [PointError],
}

/// Header plus one line per report, newline-terminated.
pub fn to_csv(reports: &[MeasureReport], extras: &[Measure]) -> String {
    let mut out = MeasureReport::csv_header(extras);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row(extras));
        out.push('\n');
    }
    out
}

pub fn to_json(reports: &[MeasureReport], fits: &Fits, errors: &[PointError]) -> String {
    let mut text = serde_json::to_string_pretty(&Document { reports, fits, errors }).expect("serializable document");
    text.push('\n');
    text
}

/// Writes `contents` to `path`, or standard output for `None`.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, contents).map_err(|source| SweepError::Io { path: p.to_path_buf(), source }),
        None => std::io::stdout()
            .lock()
            .write_all(contents.as_bytes())
            .map_err(|source| SweepError::Io { path: "<stdout>".into(), source }),
    }
}
