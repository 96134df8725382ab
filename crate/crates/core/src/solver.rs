//! Solving the equilibrium program.
//!
//! The linear relaxation (complementarity dropped) is solved first. When a
//! compression/tension pair is active on both sides, the search branches on
//! the pair with the largest product, fixing the tension side to zero in one
//! child and the compression side in the other. Open nodes are explored
//! best-first by their relaxation bound.
//!
//! The relaxation is always feasible because residual variables absorb any
//! imbalance, so a result is produced for every program.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use microlp::{ComparisonOp, OptimizationDirection, Problem, SolveOutcome, Variable};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::program::{Residual, Sense, StabilityProgram};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Newtons.
    pub feasibility_tol: f64,
    /// Newtons squared; largest admissible compression × tension product.
    pub complementarity_tol: f64,
    pub max_branch_nodes: usize,
    pub time_limit: Duration,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            feasibility_tol: 1e-9,
            complementarity_tol: 1e-9,
            max_branch_nodes: 10_000,
            time_limit: Duration::from_secs(60),
        }
    }
}

impl SolveOptions {
    pub fn is_valid(&self) -> bool {
        self.feasibility_tol > 0.0
            && self.complementarity_tol > 0.0
            && self.max_branch_nodes > 0
            && !self.time_limit.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolveStatus {
    Optimal,
    NodeLimit,
    TimeLimit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Magnitude per force variable, newtons.
    pub force_values: Vec<f64>,
    pub objective: f64,
    /// Objective of the root relaxation, a lower bound on `objective`.
    pub relaxation_objective: f64,
    /// Per brick slot.
    pub per_brick_residuals: Vec<Residual>,
    /// Largest drag per brick slot, newtons.
    pub d_max: Vec<f64>,
    /// Largest drag or pull per brick slot, newtons.
    pub friction_max: Vec<f64>,
    /// Seconds.
    pub solve_time: f64,
    pub nodes_explored: usize,
    /// False only when a limit stopped the search before any
    /// complementarity-satisfying point was found.
    pub complementarity_satisfied: bool,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid solve options")]
    BadOptions,
    #[error("LP backend failure: {0}")]
    Backend(String),
}

impl From<microlp::Error> for SolveError {
    fn from(e: microlp::Error) -> Self {
        SolveError::Backend(e.to_string())
    }
}

/// A pair that violates non-coexistence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairViolation {
    pub compression: usize,
    pub tension: usize,
    pub product: f64,
}

/// Pairs whose value product exceeds `tol`, largest product first; ties go
/// to the lower variable id.
pub fn check_complementarity(
    result: &SolveResult,
    program: &StabilityProgram,
    tol: f64,
) -> Vec<PairViolation> {
    violations(&result.force_values, program, tol)
}

fn violations(values: &[f64], program: &StabilityProgram, tol: f64) -> Vec<PairViolation> {
    let mut out: Vec<PairViolation> = program
        .complementarity_pairs
        .iter()
        .map(|&(c, t)| PairViolation {
            compression: c,
            tension: t,
            product: values[c] * values[t],
        })
        .filter(|v| v.product > tol)
        .collect();
    out.sort_by(|a, b| {
        b.product
            .total_cmp(&a.product)
            .then(a.compression.min(a.tension).cmp(&b.compression.min(b.tension)))
    });
    out
}

struct Node {
    bound: f64,
    seq: u64,
    solution: microlp::Solution,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    // BinaryHeap is a max-heap: the smallest bound, then the oldest node,
    // must compare greatest.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then(other.seq.cmp(&self.seq))
    }
}

fn build_problem(program: &StabilityProgram) -> (Problem, Vec<Variable>) {
    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let mut cost = vec![0.0; program.num_vars];
    for &(v, c) in &program.objective {
        cost[v] += c;
    }
    let vars: Vec<Variable> = cost
        .iter()
        .map(|&c| problem.add_var(c, (0.0, f64::INFINITY)))
        .collect();
    for row in &program.rows {
        let op = match row.sense {
            Sense::Eq => ComparisonOp::Eq,
            Sense::Ge => ComparisonOp::Ge,
        };
        problem.add_constraint(
            row.coeffs.iter().map(|&(v, c)| (vars[v], c)).collect::<Vec<_>>(),
            op,
            row.rhs,
        );
    }
    (problem, vars)
}

fn values_of(solution: &microlp::Solution, vars: &[Variable]) -> Vec<f64> {
    vars.iter()
        .map(|&v| solution.var_value_raw(v).max(0.0))
        .collect()
}

fn lp_options(remaining: Duration) -> microlp::SolveOptions {
    let mut options = microlp::SolveOptions::default();
    options.time_limit = Some(remaining);
    options
}

/// Minimizes the program's objective subject to its rows, nonnegativity and
/// complementarity.
pub fn solve(program: &StabilityProgram, options: &SolveOptions) -> Result<SolveResult, SolveError> {
    if !options.is_valid() {
        return Err(SolveError::BadOptions);
    }
    let started = Instant::now();
    let deadline = started + options.time_limit;
    let remaining = || deadline.saturating_duration_since(Instant::now());

    if program.num_vars == 0 {
        return Ok(finish(
            program,
            vec![],
            0.0,
            SolveStatus::Optimal,
            0,
            true,
            started,
        ));
    }

    let (problem, vars) = build_problem(program);
    let root = match problem.solve_with(lp_options(remaining()))? {
        SolveOutcome::Solution(s) => s,
        SolveOutcome::Interrupted(_) => {
            // Not even the relaxation finished: report the all-zero force
            // vector, whose residuals are exactly the loads.
            let mut values = vec![0.0; program.num_vars];
            set_residual_slacks(program, &mut values);
            let objective = program.objective_value(&values);
            return Ok(finish(
                program,
                values,
                objective,
                SolveStatus::TimeLimit,
                0,
                false,
                started,
            ));
        }
    };

    let relaxation_values = values_of(&root, &vars);
    let relaxation_objective = root.objective();

    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(Node {
        bound: relaxation_objective,
        seq,
        solution: root,
    });

    let mut incumbent: Option<(f64, Vec<f64>)> = None;
    let mut nodes = 0usize;
    let mut status = SolveStatus::Optimal;

    while let Some(node) = heap.pop() {
        if let Some((best, _)) = &incumbent {
            if node.bound >= best - options.feasibility_tol {
                // Best-first: every remaining node is at least as bad.
                break;
            }
        }
        if nodes >= options.max_branch_nodes {
            status = SolveStatus::NodeLimit;
            break;
        }
        if Instant::now() >= deadline {
            status = SolveStatus::TimeLimit;
            break;
        }
        nodes += 1;

        let values = values_of(&node.solution, &vars);
        let violated = violations(&values, program, options.complementarity_tol);
        let Some(worst) = violated.first() else {
            if incumbent.as_ref().is_none_or(|(best, _)| node.bound < *best) {
                incumbent = Some((node.bound, values));
            }
            continue;
        };

        // Tension side first: friction is penalized, so that child tends to win.
        for fixed in [worst.tension, worst.compression] {
            let child = node.solution.clone();
            match child.fix_var(vars[fixed], 0.0) {
                Ok(SolveOutcome::Solution(s)) => {
                    seq += 1;
                    heap.push(Node {
                        bound: s.objective(),
                        seq,
                        solution: s,
                    });
                }
                Ok(SolveOutcome::Interrupted(_)) => status = SolveStatus::TimeLimit,
                // A fixing can never make the program infeasible; treat any
                // backend refusal as a pruned child.
                Err(microlp::Error::Infeasible) => {}
                Err(e) => return Err(e.into()),
            }
        }
        if status == SolveStatus::TimeLimit {
            break;
        }
    }

    let (values, objective, satisfied) = match incumbent {
        Some((objective, values)) => (values, objective, true),
        None => {
            let objective = program.objective_value(&relaxation_values);
            (relaxation_values, objective, false)
        }
    };
    let mut result = finish(program, values, objective, status, nodes, satisfied, started);
    result.relaxation_objective = relaxation_objective;
    Ok(result)
}

fn set_residual_slacks(program: &StabilityProgram, values: &mut [f64]) {
    for row in &program.rows {
        if let crate::program::RowOrigin::Equilibrium { .. } = row.origin {
            // Row: Σ a·F − r⁺ + r⁻ = rhs with F = 0.
            let (pos, neg) = (row.coeffs[row.coeffs.len() - 2].0, row.coeffs[row.coeffs.len() - 1].0);
            if row.rhs >= 0.0 {
                values[neg] = row.rhs;
            } else {
                values[pos] = -row.rhs;
            }
        }
    }
}

fn finish(
    program: &StabilityProgram,
    values: Vec<f64>,
    objective: f64,
    status: SolveStatus,
    nodes_explored: usize,
    complementarity_satisfied: bool,
    started: Instant,
) -> SolveResult {
    let mut force_values = values;
    force_values.truncate(program.force_vars);
    let per_brick_residuals = program.residuals(&force_values);
    let d_max = program.max_drag(&force_values);
    let friction_max = program.max_friction(&force_values);
    SolveResult {
        status,
        objective,
        relaxation_objective: objective,
        per_brick_residuals,
        d_max,
        friction_max,
        solve_time: started.elapsed().as_secs_f64(),
        nodes_explored,
        complementarity_satisfied,
        force_values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{Assembly, BrickId, Catalog, Orientation};
    use crate::forcemodel::{build_force_model, ForceKind};
    use crate::program::{assemble_program, SolverWeights};

    const W11: f64 = 0.43e-3 * 9.8;

    fn run(a: &Assembly) -> (StabilityProgram, SolveResult) {
        let m = build_force_model(a);
        let p = assemble_program(&m, &SolverWeights::default()).unwrap();
        let r = solve(&p, &SolveOptions::default()).unwrap();
        (p, r)
    }

    #[test]
    fn empty_program() {
        let (_, r) = run(&Assembly::new(Catalog::standard()));
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_eq!(r.objective, 0.0);
        assert!(r.force_values.is_empty());
    }

    #[test]
    fn floating_unit_brick() {
        let mut a = Assembly::new(Catalog::standard());
        a.place("1x1", 0, 0, 4, Orientation::AxisX);
        let (_, r) = run(&a);
        assert_eq!(r.status, SolveStatus::Optimal);
        assert!((r.objective - 4.214e-3).abs() < 1e-9);
        assert!((r.per_brick_residuals[0].force - W11).abs() < 1e-12);
        assert!(r.per_brick_residuals[0].torque < 1e-12);
    }

    #[test]
    fn unit_brick_on_baseplate() {
        let mut a = Assembly::new(Catalog::standard());
        a.place("1x1", 0, 0, 0, Orientation::AxisX);
        let (_, r) = run(&a);
        let m = build_force_model(&a);
        assert_eq!(r.status, SolveStatus::Optimal);
        assert!(r.objective.abs() < 1e-9);
        let support: f64 = m
            .of_kind(BrickId(1), ForceKind::Support)
            .map(|c| r.force_values[c.variable])
            .sum();
        assert!((support - W11).abs() < 1e-9);
        assert!(m
            .of_kind(BrickId(1), ForceKind::Drag)
            .all(|c| r.force_values[c.variable] == 0.0));
    }

    #[test]
    fn two_brick_tower_passes_the_weight_down() {
        let mut a = Assembly::new(Catalog::standard());
        a.place("1x1", 0, 0, 0, Orientation::AxisX);
        a.place("1x1", 0, 0, 1, Orientation::AxisX);
        let (p, r) = run(&a);
        let m = build_force_model(&a);
        let press: f64 = m
            .of_kind(BrickId(1), ForceKind::Press)
            .map(|c| r.force_values[c.variable])
            .sum();
        assert!((press - W11).abs() < 1e-9);
        assert!(check_complementarity(&r, &p, 1e-9).is_empty());
    }

    #[test]
    fn violations_are_sorted() {
        let mut a = Assembly::new(Catalog::standard());
        a.place("1x1", 0, 0, 0, Orientation::AxisX);
        let (p, mut r) = run(&a);
        assert!(check_complementarity(&r, &p, 1e-9).is_empty());
        r.force_values.iter_mut().for_each(|v| *v = 0.0);
        assert!(check_complementarity(&r, &p, 1e-9).is_empty());
        let (c0, t0) = p.complementarity_pairs[0];
        let (c1, t1) = p.complementarity_pairs[1];
        r.force_values[c0] = 0.5;
        r.force_values[t0] = 0.5;
        r.force_values[c1] = 1.0;
        r.force_values[t1] = 1.0;
        let v = check_complementarity(&r, &p, 1e-9);
        assert_eq!(v.len(), 2);
        assert_eq!((v[0].compression, v[0].product), (c1, 1.0));
        assert_eq!((v[1].compression, v[1].product), (c0, 0.25));
    }

    #[test]
    fn bad_options_are_rejected() {
        let p = assemble_program(
            &build_force_model(&Assembly::new(Catalog::standard())),
            &SolverWeights::default(),
        )
        .unwrap();
        let o = SolveOptions {
            max_branch_nodes: 0,
            ..Default::default()
        };
        assert!(matches!(solve(&p, &o), Err(SolveError::BadOptions)));
    }
}
