//! Per-brick stability scores and the overall verdict.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::{Assembly, BrickId, StructuralError};
use crate::forcemodel::build_force_model;
use crate::program::{assemble_program, ProgramError, Residual, SolverWeights};
use crate::solver::{solve, SolveError, SolveOptions, SolveResult, SolveStatus};

/// Residual magnitudes above which a brick counts as out of equilibrium.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Newtons.
    pub eps_force: f64,
    /// Newton-millimeters.
    pub eps_torque: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            eps_force: 1e-6,
            eps_torque: 1e-3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Stable,
    Unstable,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub build: f64,
    pub assemble: f64,
    pub solve: f64,
}

impl Timings {
    pub fn total(&self) -> f64 {
        self.build + self.assemble + self.solve
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    /// `V_i` per brick slot, in `[0, 1]`.
    pub per_brick_score: Vec<f64>,
    pub verdict: Verdict,
    /// Bricks with `V_i = 1`.
    pub failing_bricks: Vec<BrickId>,
    /// Bricks attaining the maximum score.
    pub weakest_bricks: Vec<BrickId>,
    pub residuals: Vec<Residual>,
    pub d_max: Vec<f64>,
    /// Largest force residual over bricks, newtons.
    pub max_residual_force: f64,
    /// Largest torque residual over bricks, newton-millimeters.
    pub max_residual_torque: f64,
    pub max_d_max: f64,
    pub status: SolveStatus,
    pub timings: Timings,
}

impl StabilityReport {
    pub fn score(&self, brick: BrickId) -> f64 {
        self.per_brick_score[brick.slot()]
    }

    pub fn max_score(&self) -> f64 {
        self.per_brick_score.iter().copied().fold(0.0, f64::max)
    }

    pub fn is_stable(&self) -> bool {
        self.verdict == Verdict::Stable
    }
}

/// Turns solved forces into scores.
///
/// A brick scores 1 when its force or torque residual exceeds the
/// thresholds, or when any of its friction forces exceeds the capacity.
/// Otherwise its score is the capacity utilization `d_max / T` of its
/// largest drag force.
pub fn score_bricks(
    result: &SolveResult,
    weights: &SolverWeights,
    thresholds: &Thresholds,
) -> StabilityReport {
    let t = weights.capacity;
    let per_brick_score: Vec<f64> = result
        .per_brick_residuals
        .iter()
        .zip(&result.d_max)
        .zip(&result.friction_max)
        .map(|((r, &d_max), &friction)| {
            if r.force > thresholds.eps_force || r.torque > thresholds.eps_torque || friction > t {
                1.0
            } else {
                (d_max / t).clamp(0.0, 1.0)
            }
        })
        .collect();

    let failing_bricks: Vec<BrickId> = per_brick_score
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= 1.0)
        .map(|(slot, _)| BrickId::from_slot(slot))
        .collect();
    let top = per_brick_score.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weakest_bricks = per_brick_score
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == top)
        .map(|(slot, _)| BrickId::from_slot(slot))
        .collect();
    let verdict = if failing_bricks.is_empty() {
        Verdict::Stable
    } else {
        Verdict::Unstable
    };
    let fold = |f: fn(&Residual) -> f64| result.per_brick_residuals.iter().map(f).fold(0.0, f64::max);

    StabilityReport {
        verdict,
        failing_bricks,
        weakest_bricks,
        max_residual_force: fold(|r| r.force),
        max_residual_torque: fold(|r| r.torque),
        max_d_max: result.d_max.iter().copied().fold(0.0, f64::max),
        residuals: result.per_brick_residuals.clone(),
        d_max: result.d_max.clone(),
        per_brick_score,
        status: result.status,
        timings: Timings {
            solve: result.solve_time,
            ..Timings::default()
        },
    }
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("invalid assembly: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<StructuralError>),
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Force model, program, solve and scoring in one call, with default thresholds.
pub fn analyze(
    assembly: &Assembly,
    weights: &SolverWeights,
    options: &SolveOptions,
) -> Result<StabilityReport, AnalysisError> {
    analyze_with(assembly, weights, options, &Thresholds::default())
}

pub fn analyze_with(
    assembly: &Assembly,
    weights: &SolverWeights,
    options: &SolveOptions,
    thresholds: &Thresholds,
) -> Result<StabilityReport, AnalysisError> {
    Ok(analyze_detailed(assembly, weights, options, thresholds)?.report)
}

/// Everything produced along the way, for callers that need forces.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub model: crate::forcemodel::ForceModel,
    pub program: crate::program::StabilityProgram,
    pub result: SolveResult,
    pub report: StabilityReport,
}

pub fn analyze_detailed(
    assembly: &Assembly,
    weights: &SolverWeights,
    options: &SolveOptions,
    thresholds: &Thresholds,
) -> Result<Analysis, AnalysisError> {
    let errors = assembly.validate();
    if !errors.is_empty() {
        return Err(AnalysisError::Invalid(errors));
    }
    let t0 = Instant::now();
    let model = build_force_model(assembly);
    let t1 = Instant::now();
    let program = assemble_program(&model, weights)?;
    let t2 = Instant::now();
    let result = solve(&program, options)?;
    let mut report = score_bricks(&result, weights, thresholds);
    report.timings = Timings {
        build: (t1 - t0).as_secs_f64(),
        assemble: (t2 - t1).as_secs_f64(),
        solve: result.solve_time,
    };
    Ok(Analysis {
        model,
        program,
        result,
        report,
    })
}
