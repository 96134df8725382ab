//! Result documents: the per-brick outcome of one analysis.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::solver::SolveStatus;
use crate::stability::{StabilityReport, Timings, Verdict};

pub const RESULT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub verdict: Verdict,
    pub status: SolveStatus,
    pub bricks: Vec<BrickResult>,
    /// 1-based indices of bricks scoring 1.
    pub failing: Vec<usize>,
    /// 1-based indices of bricks attaining the highest score.
    pub weakest: Vec<usize>,
    /// Seconds.
    pub timings: Timings,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BrickResult {
    pub index: usize,
    pub score: f64,
    #[serde(rename = "dmax_N")]
    pub dmax_n: f64,
    #[serde(rename = "residual_force_N")]
    pub residual_force_n: f64,
    #[serde(rename = "residual_torque_Nmm")]
    pub residual_torque_nmm: f64,
}

#[derive(Debug, Error)]
pub enum ResultError {
    #[error("malformed result document at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported result schema version {0} (expected {RESULT_SCHEMA_VERSION})")]
    Version(u64),
}

impl ResultError {
    fn syntax(e: serde_json::Error) -> Self {
        ResultError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

impl From<&StabilityReport> for ResultDocument {
    fn from(r: &StabilityReport) -> Self {
        Self {
            schema_version: RESULT_SCHEMA_VERSION,
            verdict: r.verdict,
            status: r.status,
            bricks: r
                .per_brick_score
                .iter()
                .enumerate()
                .map(|(slot, &score)| BrickResult {
                    index: slot + 1,
                    score,
                    dmax_n: r.d_max[slot],
                    residual_force_n: r.residuals[slot].force,
                    residual_torque_nmm: r.residuals[slot].torque,
                })
                .collect(),
            failing: r.failing_bricks.iter().map(|b| b.0).collect(),
            weakest: r.weakest_bricks.iter().map(|b| b.0).collect(),
            timings: r.timings,
        }
    }
}

pub fn write_result(doc: &ResultDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("result documents always serialize");
    s.push('\n');
    s
}

pub fn read_result(bytes: &[u8]) -> Result<ResultDocument, ResultError> {
    #[derive(Deserialize)]
    struct Probe {
        schema_version: u64,
    }
    let probe: Probe = serde_json::from_slice(bytes).map_err(ResultError::syntax)?;
    if probe.schema_version != u64::from(RESULT_SCHEMA_VERSION) {
        return Err(ResultError::Version(probe.schema_version));
    }
    serde_json::from_slice(bytes).map_err(ResultError::syntax)
}
