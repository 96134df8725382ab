//! The equilibrium program: a sparse linear program over force magnitudes.
//!
//! Per brick there are six equilibrium rows (three force axes, three torque
//! axes). Each row is split into a positive and a negative residual
//! variable, so the objective carries the L1 norm of the residual. Torque
//! rows are divided by the grid pitch to keep them commensurate with the
//! force rows. A per-brick `d_max` variable bounds every drag force of the
//! brick from above and is weighted by `alpha`; the drag forces themselves
//! are weighted by `beta`.
//!
//! Non-coexistence of co-located compression and tension is not linear; the
//! pairs are recorded in [`StabilityProgram::complementarity_pairs`] and
//! enforced by the solver.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::BrickId;
use crate::forcemodel::{cross, ForceKind, ForceModel, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverWeights {
    /// Weight of the per-brick maximum drag.
    pub alpha: f64,
    /// Weight of the total drag.
    pub beta: f64,
    /// Friction capacity of a single contact, newtons.
    pub capacity: f64,
}

impl Default for SolverWeights {
    fn default() -> Self {
        Self {
            alpha: 1e-3,
            beta: 1e-6,
            capacity: 0.98,
        }
    }
}

impl SolverWeights {
    pub fn is_valid(&self) -> bool {
        self.alpha > 0.0
            && self.beta >= 0.0
            && self.capacity > 0.0
            && self.alpha.is_finite()
            && self.beta.is_finite()
            && self.capacity.is_finite()
    }
}

/// Residual component of a brick's equilibrium.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    ForceX,
    ForceY,
    ForceZ,
    TorqueX,
    TorqueY,
    TorqueZ,
}

impl Axis {
    pub const ALL: [Axis; 6] = [
        Axis::ForceX,
        Axis::ForceY,
        Axis::ForceZ,
        Axis::TorqueX,
        Axis::TorqueY,
        Axis::TorqueZ,
    ];

    pub fn is_torque(self) -> bool {
        matches!(self, Axis::TorqueX | Axis::TorqueY | Axis::TorqueZ)
    }

    fn component(self) -> usize {
        self as usize % 3
    }
}

/// What a program variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarRole {
    /// Magnitude of force-model variable `id` (same index).
    Force { kind: ForceKind },
    ResidualPos { brick: BrickId, axis: Axis },
    ResidualNeg { brick: BrickId, axis: Axis },
    MaxDrag { brick: BrickId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Eq,
    /// Row activity is at least the right-hand side.
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowOrigin {
    Equilibrium { brick: BrickId, axis: Axis },
    MaxDrag { brick: BrickId, drag: usize },
}

/// `Σ coeffs · x  (= | ≥)  rhs`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearRow {
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
    pub origin: RowOrigin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityProgram {
    pub num_vars: usize,
    /// Variables `0..force_vars` are force magnitudes, indexed like the
    /// force model's variables.
    pub force_vars: usize,
    /// Sparse objective, sorted by variable.
    pub objective: Vec<(usize, f64)>,
    pub rows: Vec<LinearRow>,
    /// `(compression, tension)` pairs that must satisfy `a · b = 0`.
    pub complementarity_pairs: Vec<(usize, usize)>,
    pub roles: Vec<VarRole>,
    pub brick_count: usize,
    /// Drag variables per brick slot (the brick is the upper side).
    pub drag_vars: Vec<Vec<usize>>,
    /// Pull variables per brick slot (the brick is the lower side).
    pub pull_vars: Vec<Vec<usize>>,
    /// Residual scale per axis: 1 for forces, the grid pitch for torques.
    pub torque_scale: f64,
    pub weights: SolverWeights,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProgramError {
    #[error("variable {variable} pairs candidates at different points or with non-opposite directions")]
    InconsistentPair { variable: usize },
    #[error("variable {variable} is shared by more than two candidates")]
    OverShared { variable: usize },
    #[error("solver weights must satisfy alpha > 0, beta >= 0, T > 0")]
    BadWeights,
}

const PAIR_TOL: f64 = 1e-9;

fn check_pairs(model: &ForceModel) -> Result<(), ProgramError> {
    let mut first: Vec<Option<usize>> = vec![None; model.variable_count];
    let mut seen = vec![0u8; model.variable_count];
    for (i, c) in model.candidates.iter().enumerate() {
        seen[c.variable] += 1;
        if seen[c.variable] > 2 {
            return Err(ProgramError::OverShared {
                variable: c.variable,
            });
        }
        match first[c.variable] {
            None => first[c.variable] = Some(i),
            Some(j) => {
                let other = &model.candidates[j];
                let same_point = (0..3).all(|k| (c.point[k] - other.point[k]).abs() <= PAIR_TOL);
                let opposite =
                    (0..3).all(|k| (c.direction[k] + other.direction[k]).abs() <= PAIR_TOL);
                if !same_point || !opposite || c.brick == other.brick {
                    return Err(ProgramError::InconsistentPair {
                        variable: c.variable,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Assembles the equilibrium program for a force model.
pub fn assemble_program(
    model: &ForceModel,
    weights: &SolverWeights,
) -> Result<StabilityProgram, ProgramError> {
    if !weights.is_valid() {
        return Err(ProgramError::BadWeights);
    }
    check_pairs(model)?;

    let n_bricks = model.brick_count();
    let force_vars = model.variable_count;
    let pitch = model.geometry.pitch;

    let mut roles: Vec<VarRole> = vec![
        VarRole::Force {
            kind: ForceKind::Support
        };
        force_vars
    ];
    // Role of a shared variable is taken from the upper/first candidate.
    let mut assigned = vec![false; force_vars];
    let mut drag_vars = vec![Vec::new(); n_bricks];
    let mut pull_vars = vec![Vec::new(); n_bricks];
    // [brick][axis] -> coefficients of force variables
    let mut acc: Vec<[Vec<(usize, f64)>; 6]> = (0..n_bricks).map(|_| Default::default()).collect();

    for c in &model.candidates {
        if !assigned[c.variable] {
            roles[c.variable] = VarRole::Force { kind: c.kind };
            assigned[c.variable] = true;
        }
        match c.kind {
            ForceKind::Drag => drag_vars[c.brick.slot()].push(c.variable),
            ForceKind::Pull => pull_vars[c.brick.slot()].push(c.variable),
            _ => {}
        }
        let torque = cross(model.lever(c), c.direction);
        let rows = &mut acc[c.brick.slot()];
        for axis in Axis::ALL {
            let k = axis.component();
            let coeff = if axis.is_torque() {
                torque[k] / pitch
            } else {
                c.direction[k]
            };
            if coeff != 0.0 {
                rows[axis as usize].push((c.variable, coeff));
            }
        }
    }

    let mut objective: Vec<(usize, f64)> = Vec::new();
    let mut rows = Vec::with_capacity(6 * n_bricks);
    let mut next = force_vars;
    for (slot, brick_rows) in acc.into_iter().enumerate() {
        let brick = BrickId::from_slot(slot);
        let g: Vec3 = model.gravity_load[slot];
        // Gravity acts at the center of mass, so it adds no torque.
        let constant = [g[0], g[1], g[2], 0.0, 0.0, 0.0];
        for (axis, mut coeffs) in Axis::ALL.into_iter().zip(brick_rows) {
            let (pos, neg) = (next, next + 1);
            next += 2;
            roles.push(VarRole::ResidualPos { brick, axis });
            roles.push(VarRole::ResidualNeg { brick, axis });
            objective.push((pos, 1.0));
            objective.push((neg, 1.0));
            coeffs.push((pos, -1.0));
            coeffs.push((neg, 1.0));
            rows.push(LinearRow {
                coeffs,
                sense: Sense::Eq,
                rhs: -constant[axis as usize],
                origin: RowOrigin::Equilibrium { brick, axis },
            });
        }
    }

    for (slot, drags) in drag_vars.iter().enumerate() {
        let brick = BrickId::from_slot(slot);
        let dmax = next;
        next += 1;
        roles.push(VarRole::MaxDrag { brick });
        objective.push((dmax, weights.alpha));
        for &d in drags {
            rows.push(LinearRow {
                coeffs: vec![(dmax, 1.0), (d, -1.0)],
                sense: Sense::Ge,
                rhs: 0.0,
                origin: RowOrigin::MaxDrag { brick, drag: d },
            });
        }
    }
    if weights.beta > 0.0 {
        for drags in &drag_vars {
            for &d in drags {
                objective.push((d, weights.beta));
            }
        }
    }
    objective.sort_by_key(|&(v, _)| v);

    Ok(StabilityProgram {
        num_vars: next,
        force_vars,
        objective,
        rows,
        complementarity_pairs: model.contact_pairs.clone(),
        roles,
        brick_count: n_bricks,
        drag_vars,
        pull_vars,
        torque_scale: pitch,
        weights: *weights,
    })
}

/// Per-brick equilibrium residual in physical units.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    /// L1 norm of the net force, newtons.
    pub force: f64,
    /// L1 norm of the net torque, newton-millimeters.
    pub torque: f64,
}

impl StabilityProgram {
    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().map(|&(v, c)| c * values[v]).sum()
    }

    /// Net force and torque on each brick for given force magnitudes,
    /// computed directly from the equilibrium rows.
    pub fn residuals(&self, force_values: &[f64]) -> Vec<Residual> {
        let mut out = vec![Residual::default(); self.brick_count];
        for row in &self.rows {
            let RowOrigin::Equilibrium { brick, axis } = row.origin else {
                continue;
            };
            let activity: f64 = row
                .coeffs
                .iter()
                .filter(|&&(v, _)| v < self.force_vars)
                .map(|&(v, c)| c * force_values[v])
                .sum();
            let r = (activity - row.rhs).abs();
            let slot = &mut out[brick.slot()];
            if axis.is_torque() {
                slot.torque += r * self.torque_scale;
            } else {
                slot.force += r;
            }
        }
        out
    }

    /// Largest drag magnitude per brick.
    pub fn max_drag(&self, force_values: &[f64]) -> Vec<f64> {
        self.drag_vars
            .iter()
            .map(|vars| vars.iter().map(|&v| force_values[v]).fold(0.0, f64::max))
            .collect()
    }

    /// Largest friction magnitude (drag or pull) per brick.
    pub fn max_friction(&self, force_values: &[f64]) -> Vec<f64> {
        self.drag_vars
            .iter()
            .zip(&self.pull_vars)
            .map(|(d, u)| {
                d.iter()
                    .chain(u)
                    .map(|&v| force_values[v])
                    .fold(0.0, f64::max)
            })
            .collect()
    }

    pub fn equality_count(&self) -> usize {
        self.rows.iter().filter(|r| r.sense == Sense::Eq).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{Assembly, Catalog, Orientation};
    use crate::forcemodel::build_force_model;

    fn program(a: &Assembly) -> StabilityProgram {
        assemble_program(&build_force_model(a), &SolverWeights::default()).unwrap()
    }

    #[test]
    fn empty_assembly_gives_empty_program() {
        let p = program(&Assembly::new(Catalog::standard()));
        assert_eq!(p.num_vars, 0);
        assert!(p.rows.is_empty());
        assert_eq!(p.objective_value(&[]), 0.0);
    }

    #[test]
    fn floating_brick_program() {
        let mut a = Assembly::new(Catalog::standard());
        a.place("1x1", 0, 0, 3, Orientation::AxisX);
        let p = program(&a);
        assert_eq!(p.force_vars, 0);
        // 6 residual pairs + d_max
        assert_eq!(p.num_vars, 13);
        assert_eq!(p.equality_count(), 6);
        let weight = 0.43e-3 * 9.8;
        let z_row = &p.rows[Axis::ForceZ as usize];
        assert!((z_row.rhs - weight).abs() < 1e-15);
        // Optimum: r- on the Z row absorbs the weight.
        let mut x = vec![0.0; p.num_vars];
        x[1 + 2 * Axis::ForceZ as usize] = weight;
        assert!((p.objective_value(&x) - 4.214e-3).abs() < 1e-12);
        assert!((p.residuals(&[])[0].force - weight).abs() < 1e-15);
    }

    #[test]
    fn unit_brick_on_baseplate_balances_with_support_only() {
        let mut a = Assembly::new(Catalog::standard());
        a.place("1x1", 0, 0, 0, Orientation::AxisX);
        let m = build_force_model(&a);
        let p = assemble_program(&m, &SolverWeights::default()).unwrap();
        let weight = 0.43e-3 * 9.8;
        let mut f = vec![0.0; p.force_vars];
        for c in m.of_kind(BrickId(1), ForceKind::Support) {
            f[c.variable] = weight / 4.0;
        }
        let r = p.residuals(&f);
        assert!(r[0].force < 1e-15 && r[0].torque < 1e-15);
        assert_eq!(p.drag_vars[0].len(), 4);
        assert_eq!(p.complementarity_pairs.len(), 4);
        // Z row: ΣS − ΣD − r⁺ + r⁻ = G
        let z_row = &p.rows[Axis::ForceZ as usize];
        for &(v, c) in &z_row.coeffs {
            if v < p.force_vars {
                let expect = match p.roles[v] {
                    VarRole::Force {
                        kind: ForceKind::Support,
                    } => 1.0,
                    VarRole::Force {
                        kind: ForceKind::Drag,
                    } => -1.0,
                    other => panic!("unexpected {other:?}"),
                };
                assert_eq!(c, expect);
            }
        }
    }

    #[test]
    fn row_and_objective_structure() {
        let mut a = Assembly::new(Catalog::standard());
        a.place("1x2", 0, 0, 0, Orientation::AxisX);
        a.place("1x2", 1, 0, 1, Orientation::AxisX);
        let p = program(&a);
        let drags: usize = p.drag_vars.iter().map(Vec::len).sum();
        assert_eq!(p.rows.len(), 6 * 2 + drags);
        for (v, role) in p.roles.iter().enumerate() {
            let c = p
                .objective
                .iter()
                .find(|&&(i, _)| i == v)
                .map(|&(_, c)| c)
                .unwrap_or(0.0);
            match role {
                VarRole::ResidualPos { .. } | VarRole::ResidualNeg { .. } => assert_eq!(c, 1.0),
                VarRole::MaxDrag { .. } => assert_eq!(c, 1e-3),
                VarRole::Force {
                    kind: ForceKind::Drag,
                } => assert_eq!(c, 1e-6),
                VarRole::Force { .. } => assert_eq!(c, 0.0),
            }
        }
    }

    #[test]
    fn mismatched_pairs_are_rejected() {
        let mut a = Assembly::new(Catalog::standard());
        a.place("1x1", 0, 0, 0, Orientation::AxisX);
        a.place("1x1", 0, 0, 1, Orientation::AxisX);
        let mut m = build_force_model(&a);
        let i = m.candidates.iter().position(|c| c.kind == ForceKind::Press).unwrap();
        m.candidates[i].point[0] += 1.0;
        assert!(matches!(
            assemble_program(&m, &SolverWeights::default()),
            Err(ProgramError::InconsistentPair { .. })
        ));
    }

    #[test]
    fn bad_weights_are_rejected() {
        let m = build_force_model(&Assembly::new(Catalog::standard()));
        let w = SolverWeights {
            alpha: 0.0,
            ..Default::default()
        };
        assert_eq!(assemble_program(&m, &w), Err(ProgramError::BadWeights));
    }
}
