//! Static stability analysis for assemblies of interlocking blocks.
//!
//! A structure is an [`Assembly`] of cuboid bricks on a unit grid. The
//! engine enumerates every contact force the bricks can exert on each other
//! ([`forcemodel`]), writes per-brick equilibrium as a linear program with
//! complementarity constraints ([`program`]), solves it ([`solver`]) and
//! turns the forces into per-brick scores in `[0, 1]` ([`stability`]).
//!
//! ```
//! use stackstab::{analyze, Assembly, Catalog, Orientation, SolveOptions, SolverWeights};
//!
//! let mut tower = Assembly::new(Catalog::standard());
//! tower.place("2x4", 0, 0, 0, Orientation::AxisX);
//! tower.place("2x2", 1, 0, 1, Orientation::AxisX);
//! let report = analyze(&tower, &SolverWeights::default(), &SolveOptions::default())?;
//! assert!(report.is_stable());
//! # Ok::<(), stackstab::AnalysisError>(())
//! ```
//!
//! Units: millimeters, kilograms, newtons.

pub mod assembly;
pub mod forcemodel;
pub mod io;
pub mod program;
pub mod solver;
pub mod stability;

#[cfg(doctest)]
pub mod guide;

pub use assembly::{
    Assembly, BrickId, BrickInstance, BrickType, Catalog, Cell, Mode, Orientation, StructuralError,
};
pub use program::SolverWeights;
pub use solver::{SolveOptions, SolveStatus};
pub use stability::{analyze, analyze_detailed, analyze_with, AnalysisError, StabilityReport, Thresholds, Verdict};
