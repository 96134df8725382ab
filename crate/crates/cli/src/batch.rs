//! Directory-wide annotation.
//!
//! Each `*.json` file directly inside the input directory is analyzed on
//! its own; a failure is recorded and the batch moves on. The manifest
//! lists structures in file-name order and holds no timing data, so it is
//! identical across reruns and worker counts. Wall-clock figures go to a
//! separate `timings.csv`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use stackstab::{SolveStatus, StabilityReport, Verdict};

use crate::commands::{self, EXIT_STABLE};
use crate::config::RunConfig;

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub structures: Vec<Entry>,
}

#[derive(Debug, Serialize)]
pub struct Entry {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<SolveStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bricks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_score: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

struct Outcome {
    entry: Entry,
    /// `(build, assemble, solve)` seconds.
    timings: Option<[f64; 3]>,
}

fn list_layouts(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for item in std::fs::read_dir(dir).with_context(|| format!("cannot read directory {}", dir.display()))? {
        let path = item.with_context(|| format!("cannot read directory {}", dir.display()))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn process(cfg: &RunConfig, path: &Path, out_dir: &Path, mesh_dir: Option<&Path>) -> Outcome {
    let file = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
    let stem = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
    let attempt = || -> Result<(StabilityReport, usize, String)> {
        let assembly = commands::load_layout(cfg, path)?;
        let report = commands::evaluate(cfg, &assembly)?.report;
        let result_name = format!("{stem}.result.json");
        let doc = stackstab::io::ResultDocument::from(&report);
        commands::write_file(&out_dir.join(&result_name), stackstab::io::write_result(&doc))?;
        if let Some(dir) = mesh_dir {
            commands::write_file(
                &dir.join(format!("{stem}.ply")),
                stackstab::io::export_heatmap_mesh(&assembly, &report),
            )?;
        }
        Ok((report, assembly.len(), result_name))
    };
    match attempt() {
        Ok((report, bricks, result)) => Outcome {
            timings: Some([report.timings.build, report.timings.assemble, report.timings.solve]),
            entry: Entry {
                file,
                verdict: Some(report.verdict),
                status: Some(report.status),
                bricks: Some(bricks),
                max_score: Some(report.max_score()),
                failing: Some(report.failing_bricks.iter().map(|b| b.0).collect()),
                result: Some(result),
                error: None,
            },
        },
        Err(e) => Outcome {
            timings: None,
            entry: Entry {
                file,
                verdict: None,
                status: None,
                bricks: None,
                max_score: None,
                failing: None,
                result: None,
                // Strip the directory so the manifest does not depend on
                // where the batch was launched from.
                error: Some(format!("{e:#}").replace(&path.display().to_string(), &path_name(path))),
            },
        },
    }
}

fn path_name(path: &Path) -> String {
    path.file_name().unwrap_or_default().to_string_lossy().into_owned()
}

pub fn write_manifest(entries: Vec<Entry>) -> String {
    let manifest = Manifest {
        schema_version: MANIFEST_SCHEMA_VERSION,
        structures: entries,
    };
    let mut s = serde_json::to_string_pretty(&manifest).expect("manifests always serialize");
    s.push('\n');
    s
}

pub fn run(cfg: &RunConfig, dir: &Path, out_dir: Option<PathBuf>, mesh_out: Option<PathBuf>) -> Result<u8> {
    let files = list_layouts(dir)?;
    let out_dir = out_dir.unwrap_or_else(|| dir.join("results"));
    std::fs::create_dir_all(&out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .context("cannot start worker pool")?;
    let outcomes: Vec<Outcome> = pool.install(|| {
        files
            .par_iter()
            .map(|p| process(cfg, p, &out_dir, mesh_out.as_deref()))
            .collect()
    });

    let mut csv = String::from("file,build_s,assemble_s,solve_s,total_s\n");
    for o in &outcomes {
        if let Some([b, a, s]) = o.timings {
            let _ = writeln!(csv, "{},{b:.6},{a:.6},{s:.6},{:.6}", o.entry.file, b + a + s);
        }
    }
    let (mut stable, mut unstable, mut failed) = (0, 0, 0);
    for o in &outcomes {
        match o.entry.verdict {
            Some(Verdict::Stable) => stable += 1,
            Some(Verdict::Unstable) => unstable += 1,
            None => failed += 1,
        }
    }
    commands::write_file(&out_dir.join("timings.csv"), csv)?;
    commands::write_file(
        &out_dir.join("manifest.json"),
        write_manifest(outcomes.into_iter().map(|o| o.entry).collect()),
    )?;
    println!(
        "{} structures: {stable} stable, {unstable} unstable, {failed} errors; results in {}",
        stable + unstable + failed,
        out_dir.display()
    );
    // Unstable or broken structures do not fail the batch itself.
    Ok(EXIT_STABLE)
}
