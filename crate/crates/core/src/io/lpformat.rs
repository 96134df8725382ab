//! Writes a [`StabilityProgram`] in CPLEX LP text format, for inspection or
//! cross-checking with external MILP solvers. Complementarity pairs become
//! SOS1 sets.

use std::fmt::Write;

use crate::program::{Axis, RowOrigin, Sense, StabilityProgram, VarRole};

const TERMS_PER_LINE: usize = 6;

fn axis_tag(axis: Axis) -> &'static str {
    match axis {
        Axis::ForceX => "fx",
        Axis::ForceY => "fy",
        Axis::ForceZ => "fz",
        Axis::TorqueX => "tx",
        Axis::TorqueY => "ty",
        Axis::TorqueZ => "tz",
    }
}

/// Column name for variable `v`.
pub fn var_name(program: &StabilityProgram, v: usize) -> String {
    match program.roles[v] {
        VarRole::Force { kind } => format!("{}{v}", kind.symbol()),
        VarRole::ResidualPos { brick, axis } => format!("rp_{}_{}", brick.0, axis_tag(axis)),
        VarRole::ResidualNeg { brick, axis } => format!("rn_{}_{}", brick.0, axis_tag(axis)),
        VarRole::MaxDrag { brick } => format!("dmax_{}", brick.0),
    }
}

fn row_name(origin: &RowOrigin) -> String {
    match *origin {
        RowOrigin::Equilibrium { brick, axis } => format!("eq_{}_{}", brick.0, axis_tag(axis)),
        RowOrigin::MaxDrag { brick, drag } => format!("md_{}_{drag}", brick.0),
    }
}

fn write_terms(out: &mut String, program: &StabilityProgram, terms: &[(usize, f64)]) {
    if terms.is_empty() {
        out.push_str(" 0");
    }
    for (i, &(v, c)) in terms.iter().enumerate() {
        if i > 0 && i % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if c < 0.0 { '-' } else { '+' };
        let _ = write!(out, " {sign} {} {}", c.abs(), var_name(program, v));
    }
}

pub fn write_lp(program: &StabilityProgram) -> String {
    let mut out = String::from("\\ stability program\nMinimize\n obj:");
    write_terms(&mut out, program, &program.objective);
    out.push_str("\nSubject To\n");
    for row in &program.rows {
        let _ = write!(out, " {}:", row_name(&row.origin));
        write_terms(&mut out, program, &row.coeffs);
        let op = match row.sense {
            Sense::Eq => "=",
            Sense::Ge => ">=",
        };
        let rhs = if row.rhs == 0.0 { 0.0 } else { row.rhs };
        let _ = writeln!(out, " {op} {rhs}");
    }
    // Every column is non-negative, which is the format's default bound.
    if !program.complementarity_pairs.is_empty() {
        out.push_str("SOS\n");
        for (i, &(a, b)) in program.complementarity_pairs.iter().enumerate() {
            let _ = writeln!(
                out,
                " c{i}: S1:: {}:1 {}:2",
                var_name(program, a),
                var_name(program, b)
            );
        }
    }
    out.push_str("End\n");
    out
}
