//! Brute-force reference solver.
//!
//! Builds the equilibrium program straight from a force model's candidate
//! list, then solves one dense LP per complementarity fixing (each pair has
//! either its compression or its tension variable pinned to zero) and keeps
//! the best. Shares no code with the engine's program assembly or solver.

use stackstab::forcemodel::{ForceKind, ForceModel};

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-10;

/// `min c·x` subject to rows `a·x = b` or `a·x >= b`, and `x >= 0`.
pub struct DenseLp {
    pub c: Vec<f64>,
    pub rows: Vec<(Vec<f64>, bool, f64)>,
}

struct Tableau {
    t: Vec<Vec<f64>>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.t[r][col];
        for v in self.t[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r && row[col] != 0.0 {
                let f = row[col];
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        let f = self.obj[col];
        if f != 0.0 {
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
        }
        self.basis[r] = col;
    }

    /// Bland's rule simplex on the current objective row.
    fn run(&mut self, allowed: &dyn Fn(usize) -> bool) {
        let rhs = self.width;
        loop {
            let Some(col) = (0..self.width).find(|&j| allowed(j) && self.obj[j] < -COST_EPS) else {
                return;
            };
            let mut best: Option<(f64, usize, usize)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if row[col] > PIVOT_EPS {
                    let ratio = row[rhs] / row[col];
                    let better = match best {
                        None => true,
                        Some((r, _, b)) => ratio < r - 1e-12 || (ratio <= r + 1e-12 && self.basis[i] < b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            let (_, r, _) = best.expect("program is bounded below");
            self.pivot(r, col);
        }
    }
}

/// Optimal value and point, or `None` when infeasible.
pub fn solve_dense(lp: &DenseLp, banned: &[bool]) -> Option<(f64, Vec<f64>)> {
    let n = lp.c.len();
    let m = lp.rows.len();
    let surplus: Vec<usize> = (0..m).filter(|&i| lp.rows[i].1).collect();
    let n_struct = n + surplus.len();
    let width = n_struct + m;
    let mut t = vec![vec![0.0; width + 1]; m];
    let mut s = n;
    for (i, (a, ge, b)) in lp.rows.iter().enumerate() {
        t[i][..n].copy_from_slice(a);
        if *ge {
            t[i][s] = -1.0;
            s += 1;
        }
        t[i][width] = *b;
        if *b < 0.0 {
            for v in t[i].iter_mut() {
                *v = -*v;
            }
        }
        t[i][n_struct + i] = 1.0;
    }
    let mut obj = vec![0.0; width + 1];
    for row in &t {
        for j in 0..n_struct {
            obj[j] -= row[j];
        }
        obj[width] -= row[width];
    }
    let mut tab = Tableau {
        t,
        obj,
        basis: (n_struct..width).collect(),
        width,
    };
    let open = |j: usize| j >= n || !banned[j];
    tab.run(&|j| j < n_struct && open(j));
    if -tab.obj[width] > 1e-9 {
        return None;
    }
    // Drive remaining artificials out of the basis or drop their rows.
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= n_struct {
            match (0..n_struct).find(|&j| open(j) && tab.t[i][j].abs() > PIVOT_EPS) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut cost = vec![0.0; width + 1];
    cost[..n].copy_from_slice(&lp.c);
    tab.obj = cost.clone();
    for (i, &b) in tab.basis.clone().iter().enumerate() {
        if cost[b] != 0.0 {
            let row = tab.t[i].clone();
            for (v, rv) in tab.obj.iter_mut().zip(&row) {
                *v -= cost[b] * rv;
            }
        }
    }
    tab.run(&|j| j < n_struct && open(j));
    let mut x = vec![0.0; n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.t[i][width];
        }
    }
    let value = lp.c.iter().zip(&x).map(|(c, v)| c * v).sum();
    Some((value, x))
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub struct OracleSolution {
    pub objective: f64,
    pub force: Vec<f64>,
    /// Per brick: (L1 net force N, L1 net torque N·mm, max drag, max drag-or-pull).
    pub per_brick: Vec<(f64, f64, f64, f64)>,
    pub fixings: usize,
}

/// Exhaustive minimum over all `2^k` fixings of the model's contact pairs.
pub fn brute_force(model: &ForceModel, alpha: f64, beta: f64) -> OracleSolution {
    let nf = model.variable_count;
    let nb = model.brick_count();
    let pitch = model.geometry.pitch;
    let res0 = nf;
    let dmax0 = nf + 12 * nb;
    let n = dmax0 + nb;

    let mut c = vec![0.0; n];
    c[res0..dmax0].fill(1.0);
    c[dmax0..n].fill(alpha);
    let mut rows: Vec<(Vec<f64>, bool, f64)> = Vec::new();
    for b in 0..nb {
        let mut eq = vec![vec![0.0; n]; 6];
        for cand in model.candidates.iter().filter(|c| c.brick.0 == b + 1) {
            let lever = [
                cand.point[0] - model.centers[b][0],
                cand.point[1] - model.centers[b][1],
                cand.point[2] - model.centers[b][2],
            ];
            let tau = cross(lever, cand.direction);
            for k in 0..3 {
                eq[k][cand.variable] += cand.direction[k];
                eq[3 + k][cand.variable] += tau[k] / pitch;
            }
        }
        for (axis, mut row) in eq.into_iter().enumerate() {
            row[res0 + 12 * b + 2 * axis] = -1.0;
            row[res0 + 12 * b + 2 * axis + 1] = 1.0;
            let rhs = if axis < 3 { -model.gravity_load[b][axis] } else { 0.0 };
            rows.push((row, false, rhs));
        }
    }
    let mut drags_of = vec![Vec::new(); nb];
    let mut pulls_of = vec![Vec::new(); nb];
    for cand in &model.candidates {
        let b = cand.brick.0 - 1;
        match cand.kind {
            ForceKind::Drag => drags_of[b].push(cand.variable),
            ForceKind::Pull => pulls_of[b].push(cand.variable),
            _ => {}
        }
    }
    let mut seen = vec![false; nf];
    for (b, drags) in drags_of.iter().enumerate() {
        for &d in drags {
            let mut row = vec![0.0; n];
            row[dmax0 + b] = 1.0;
            row[d] = -1.0;
            rows.push((row, true, 0.0));
            if !seen[d] {
                seen[d] = true;
                c[d] += beta;
            }
        }
    }
    let lp = DenseLp { c, rows };

    let pairs = &model.contact_pairs;
    assert!(pairs.len() <= 16, "too many pairs for enumeration: {}", pairs.len());
    let mut best: Option<(f64, Vec<f64>)> = None;
    let total = 1usize << pairs.len();
    for mask in 0..total {
        let mut banned = vec![false; n];
        for (i, &(comp, ten)) in pairs.iter().enumerate() {
            banned[if mask >> i & 1 == 1 { ten } else { comp }] = true;
        }
        if let Some((v, x)) = solve_dense(&lp, &banned) {
            if best.as_ref().is_none_or(|(bv, _)| v < *bv - 1e-12) {
                best = Some((v, x));
            }
        }
    }
    let (objective, x) = best.expect("residual slacks keep every fixing feasible");
    let per_brick = (0..nb)
        .map(|b| {
            let r = |axis: usize| (x[res0 + 12 * b + 2 * axis] - x[res0 + 12 * b + 2 * axis + 1]).abs();
            let force = (0..3).map(r).sum();
            let torque = (3..6).map(r).sum::<f64>() * pitch;
            let dmax = drags_of[b].iter().map(|&v| x[v]).fold(0.0, f64::max);
            let fric = drags_of[b].iter().chain(&pulls_of[b]).map(|&v| x[v]).fold(0.0, f64::max);
            (force, torque, dmax, fric)
        })
        .collect();
    OracleSolution {
        objective,
        force: x[..nf].to_vec(),
        per_brick,
        fixings: total,
    }
}

#[allow(dead_code)]
pub fn self_check() {
    // min x + y  s.t.  x + 2y >= 2,  x - y = 0.5  ->  x = 1, y = 0.5
    let lp = DenseLp {
        c: vec![1.0, 1.0],
        rows: vec![(vec![1.0, 2.0], true, 2.0), (vec![1.0, -1.0], false, 0.5)],
    };
    let (v, x) = solve_dense(&lp, &[false, false]).unwrap();
    assert!((v - 1.5).abs() < 1e-12 && (x[0] - 1.0).abs() < 1e-12);
    assert!(solve_dense(&lp, &[true, false]).is_none());
}
