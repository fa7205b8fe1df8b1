//! Sweeps over the tight construction, tabulated as CSV.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::colorers::run;
use crate::generators::{gen_tight, GenError, TightParams};
use crate::model::Algorithm;
use crate::verify::{check, VerificationReport, VerifyError};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("x={x}: {algorithm} failed verification: {report}")]
    Failed {
        x: u64,
        algorithm: Algorithm,
        report: String,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// One x of a sweep. Columns for algorithms that were not run stay empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentRow {
    pub x: u64,
    pub n: usize,
    pub omega: usize,
    pub kt_colors: Option<usize>,
    pub ff_colors: Option<usize>,
    pub opt_colors: Option<usize>,
    /// `max(1, 3 omega - 3)`.
    pub kt_bound: usize,
    /// Whether Kierstead-Trotter used exactly `3x - 3` colors.
    pub kt_tight: Option<bool>,
}

fn row_for(x: u64, algorithms: &[Algorithm]) -> Result<ExperimentRow, ExperimentError> {
    let instance = gen_tight(TightParams::new(x)?);
    let mut row = ExperimentRow {
        x,
        n: instance.len(),
        omega: 0,
        kt_colors: None,
        ff_colors: None,
        opt_colors: None,
        kt_bound: 0,
        kt_tight: None,
    };
    let mut omega = None;
    for &algorithm in algorithms {
        let result = run(algorithm, &instance);
        let report: VerificationReport = check(&instance, &result)?;
        if !report.all_ok() {
            return Err(ExperimentError::Failed {
                x,
                algorithm,
                report: report.to_json(),
            });
        }
        omega = Some(report.omega);
        let colors = Some(report.distinct_colors);
        match algorithm {
            Algorithm::Kt => {
                row.kt_colors = colors;
                row.kt_tight = Some(report.distinct_colors as u64 == 3 * x - 3);
            }
            Algorithm::FirstFit => row.ff_colors = colors,
            Algorithm::OfflineOptimal => row.opt_colors = colors,
        }
    }
    row.omega = omega.unwrap_or_else(|| crate::clique::omega(&instance).size);
    row.kt_bound = (3 * row.omega).saturating_sub(3).max(1);
    Ok(row)
}

/// Runs every algorithm on the tight instance for each x, in parallel,
/// returning rows in ascending x.
pub fn sweep_tight(
    xs: RangeInclusive<u64>,
    algorithms: &[Algorithm],
) -> Result<Vec<ExperimentRow>, ExperimentError> {
    let xs: Vec<u64> = xs.collect();
    xs.into_par_iter().map(|x| row_for(x, algorithms)).collect()
}

pub fn rows_to_csv(rows: &[ExperimentRow]) -> Result<String, ExperimentError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record([
        "x",
        "n",
        "omega",
        "kt_colors",
        "ff_colors",
        "opt_colors",
        "kt_bound",
        "kt_tight",
    ])?;
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}
