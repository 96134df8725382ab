//! Heatmap export as an ASCII PLY mesh with one colored cuboid per brick.
//!
//! A score of 0 is black, scores strictly between 0 and 1 ramp linearly
//! from black to pure red, and a score of 1 is white.

use std::fmt::Write;

use crate::assembly::Assembly;
use crate::stability::StabilityReport;

pub type Rgb = [u8; 3];

pub fn score_color(v: f64) -> Rgb {
    if v >= 1.0 {
        [255, 255, 255]
    } else if v > 0.0 {
        [(255.0 * v).round() as u8, 0, 0]
    } else {
        [0, 0, 0]
    }
}

/// Corner order: bit 0 selects x, bit 1 selects y, bit 2 selects z.
const FACES: [[usize; 4]; 6] = [
    [0, 2, 3, 1], // bottom
    [4, 5, 7, 6], // top
    [0, 1, 5, 4], // y min
    [2, 6, 7, 3], // y max
    [0, 4, 6, 2], // x min
    [1, 3, 7, 5], // x max
];

/// Renders the assembly colored by `report`; the output depends only on
/// the inputs.
///
/// # Panics
/// If `report` covers a different number of bricks than `assembly`.
pub fn export_heatmap_mesh(assembly: &Assembly, report: &StabilityReport) -> Vec<u8> {
    assert_eq!(
        assembly.len(),
        report.per_brick_score.len(),
        "report does not belong to this assembly"
    );
    let n = assembly.len();
    let g = &assembly.geometry;
    let mut out = String::new();
    out.push_str("ply\nformat ascii 1.0\ncomment stability heatmap\n");
    let _ = writeln!(out, "element vertex {}", 8 * n);
    out.push_str("property float x\nproperty float y\nproperty float z\n");
    let _ = writeln!(out, "element face {}", 6 * n);
    out.push_str("property list uchar int vertex_indices\n");
    out.push_str("property uchar red\nproperty uchar green\nproperty uchar blue\nend_header\n");

    for id in assembly.ids() {
        let f = assembly
            .footprint(id)
            .expect("assembly must be validated before export");
        let xs = [f.x0 as f64 * g.pitch, (f.x0 + f.nx) as f64 * g.pitch];
        let ys = [f.y0 as f64 * g.pitch, (f.y0 + f.ny) as f64 * g.pitch];
        let zs = [f.z as f64 * g.brick_height, (f.z + 1) as f64 * g.brick_height];
        for corner in 0..8 {
            let _ = writeln!(
                out,
                "{:.4} {:.4} {:.4}",
                xs[corner & 1],
                ys[(corner >> 1) & 1],
                zs[corner >> 2]
            );
        }
    }
    for (slot, &v) in report.per_brick_score.iter().enumerate() {
        let [r, gr, b] = score_color(v);
        for face in FACES {
            let base = 8 * slot;
            let _ = writeln!(
                out,
                "4 {} {} {} {} {r} {gr} {b}",
                base + face[0],
                base + face[1],
                base + face[2],
                base + face[3]
            );
        }
    }
    out.into_bytes()
}
