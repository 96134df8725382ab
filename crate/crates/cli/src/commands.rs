//! Single-structure commands.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use stackstab::io::{
    export_heatmap_mesh, generate_layout, parse_layout, parse_voxels, write_layout, write_lp,
    write_result, ResultDocument,
};
use stackstab::stability::Analysis;
use stackstab::{analyze_detailed, Assembly, BrickType, StabilityReport, Verdict};

use crate::config::RunConfig;

pub const EXIT_STABLE: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_UNSTABLE: u8 = 2;

pub fn exit_code(report: &StabilityReport) -> u8 {
    match report.verdict {
        Verdict::Stable => EXIT_STABLE,
        Verdict::Unstable => EXIT_UNSTABLE,
    }
}

/// `STABLE`, or `UNSTABLE brick=<i> V=<v>` naming the first failing brick.
pub fn verdict_line(report: &StabilityReport) -> String {
    match report.failing_bricks.first() {
        None => "STABLE".to_string(),
        Some(&b) => format!("UNSTABLE brick={} V={}", b.0, report.score(b)),
    }
}

pub fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("cannot create directory {}", dir.display()))?;
    }
    std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

pub fn load_layout(cfg: &RunConfig, path: &Path) -> Result<Assembly> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut assembly =
        parse_layout(&bytes, &cfg.catalog).with_context(|| format!("invalid layout {}", path.display()))?;
    cfg.apply(&mut assembly);
    Ok(assembly)
}

pub fn evaluate(cfg: &RunConfig, assembly: &Assembly) -> Result<Analysis> {
    Ok(analyze_detailed(assembly, &cfg.weights, &cfg.options, &cfg.thresholds)?)
}

fn write_outputs(
    assembly: &Assembly,
    report: &StabilityReport,
    result_path: &Path,
    mesh_out: Option<&Path>,
) -> Result<()> {
    write_file(result_path, write_result(&ResultDocument::from(report)))?;
    if let Some(mesh) = mesh_out {
        write_file(mesh, export_heatmap_mesh(assembly, report))?;
    }
    Ok(())
}

pub fn analyze(
    cfg: &RunConfig,
    layout: &Path,
    out: Option<PathBuf>,
    mesh_out: Option<PathBuf>,
    lp_out: Option<PathBuf>,
) -> Result<u8> {
    let assembly = load_layout(cfg, layout)?;
    let Analysis {
        program, report, ..
    } = evaluate(cfg, &assembly)?;
    let out = out.unwrap_or_else(|| layout.with_extension("result.json"));
    write_outputs(&assembly, &report, &out, mesh_out.as_deref())?;
    if let Some(p) = lp_out {
        write_file(&p, write_lp(&program))?;
    }
    println!("{}", verdict_line(&report));
    Ok(exit_code(&report))
}

fn allowed_types(cfg: &RunConfig, ids: Option<Vec<String>>) -> Result<Vec<BrickType>> {
    match ids {
        None => Ok(cfg.catalog.iter().cloned().collect()),
        Some(ids) => ids
            .iter()
            .map(|id| {
                cfg.catalog
                    .get(id.trim())
                    .cloned()
                    .with_context(|| format!("unknown brick type `{}`", id.trim()))
            })
            .collect(),
    }
}

pub fn generate(
    cfg: &RunConfig,
    grid_path: &Path,
    out: Option<PathBuf>,
    types: Option<Vec<String>>,
    analyze: bool,
    result_out: Option<PathBuf>,
    mesh_out: Option<PathBuf>,
) -> Result<u8> {
    if !analyze && (result_out.is_some() || mesh_out.is_some()) {
        bail!("--result-out and --mesh-out require --analyze");
    }
    let bytes =
        std::fs::read(grid_path).with_context(|| format!("cannot read {}", grid_path.display()))?;
    let grid =
        parse_voxels(&bytes).with_context(|| format!("invalid voxel grid {}", grid_path.display()))?;
    let allowed = allowed_types(cfg, types)?;
    let mut assembly = generate_layout(&grid, &allowed)?;
    cfg.apply(&mut assembly);
    let out = out.unwrap_or_else(|| grid_path.with_extension("layout.json"));
    write_file(&out, write_layout(&assembly))?;
    println!("wrote {} bricks to {}", assembly.len(), out.display());
    if !analyze {
        return Ok(EXIT_STABLE);
    }
    let report = evaluate(cfg, &assembly)?.report;
    let result_path = result_out.unwrap_or_else(|| grid_path.with_extension("result.json"));
    write_outputs(&assembly, &report, &result_path, mesh_out.as_deref())?;
    println!("{}", verdict_line(&report));
    Ok(exit_code(&report))
}
