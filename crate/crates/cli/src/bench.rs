//! Timing sweep over solid cuboids of 1×1 bricks.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Result};
use stackstab::{analyze_with, Assembly, Orientation, Verdict};

use crate::commands::{write_file, EXIT_STABLE};
use crate::config::RunConfig;

/// `n × n × n` cube of unit bricks on the baseplate.
pub fn unit_cuboid(cfg: &RunConfig, n: u32) -> Assembly {
    let mut a = Assembly::new(cfg.catalog.clone());
    let n = n as i32;
    for z in 0..n {
        for x in 0..n {
            for y in 0..n {
                a.place("1x1", x, y, z, Orientation::AxisX);
            }
        }
    }
    cfg.apply(&mut a);
    a
}

/// Linear-interpolated percentile of a sorted sample, `q` in `[0, 1]`.
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub fn run(cfg: &RunConfig, max_side: u32, repeats: usize, out: Option<PathBuf>) -> Result<u8> {
    if max_side == 0 || repeats == 0 {
        bail!("--max-side and --repeats must be at least 1");
    }
    if cfg.catalog.get("1x1").is_none() {
        bail!("the catalog has no 1x1 brick");
    }
    let mut table = String::from(
        "side,bricks,assemble_s,solve_s,total_s,solve_p25_s,solve_p50_s,solve_p75_s,verdict\n",
    );
    for side in 1..=max_side {
        let assembly = unit_cuboid(cfg, side);
        let (mut prep, mut solve, mut total) = (Vec::new(), Vec::new(), Vec::new());
        let mut verdict = Verdict::Stable;
        for _ in 0..repeats {
            let r = analyze_with(&assembly, &cfg.weights, &cfg.options, &cfg.thresholds)?;
            prep.push(r.timings.build + r.timings.assemble);
            solve.push(r.timings.solve);
            total.push(r.timings.total());
            verdict = r.verdict;
        }
        for v in [&mut prep, &mut solve, &mut total] {
            v.sort_by(f64::total_cmp);
        }
        let verdict = match verdict {
            Verdict::Stable => "STABLE",
            Verdict::Unstable => "UNSTABLE",
        };
        let _ = writeln!(
            table,
            "{side},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{verdict}",
            assembly.len(),
            percentile(&prep, 0.5),
            percentile(&solve, 0.5),
            percentile(&total, 0.5),
            percentile(&solve, 0.25),
            percentile(&solve, 0.5),
            percentile(&solve, 0.75),
        );
    }
    match out {
        Some(p) => write_file(&p, table)?,
        None => print!("{table}"),
    }
    Ok(EXIT_STABLE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentiles() {
        let s = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(percentile(&s, 0.25), 2.0);
        assert_eq!(percentile(&s, 0.5), 3.0);
        assert_eq!(percentile(&[1.0, 2.0], 0.5), 1.5);
        assert_eq!(percentile(&[7.0], 0.75), 7.0);
    }
}
