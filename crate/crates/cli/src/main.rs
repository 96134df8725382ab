//! `stackstab`: analyze, batch-annotate, generate and benchmark brick structures.
//!
//! Exit status: 0 when every analyzed structure is stable, 2 when one is
//! unstable, 1 on any input or runtime error.

mod batch;
mod bench;
mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CommonFlags, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "stackstab", version, about = "Static stability analysis for brick structures")]
struct Cli {
    #[command(flatten)]
    flags: CommonFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze one layout file and write its result document.
    Analyze {
        layout: PathBuf,
        /// Result document path [default: <layout>.result.json]
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a PLY heatmap of the scores.
        #[arg(long)]
        mesh_out: Option<PathBuf>,
        /// Also dump the optimization program in LP format.
        #[arg(long)]
        lp_out: Option<PathBuf>,
    },
    /// Analyze every `*.json` layout in a directory.
    Batch {
        dir: PathBuf,
        /// Output directory [default: <dir>/results]
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Directory for per-structure PLY heatmaps.
        #[arg(long)]
        mesh_out: Option<PathBuf>,
    },
    /// Time the analysis of unit-brick cuboids of growing size.
    Bench {
        /// Largest cuboid edge, in bricks.
        #[arg(long, default_value_t = 10)]
        max_side: u32,
        /// Timed runs per size.
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Write the CSV table here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a voxel grid into a brick layout.
    Generate {
        grid: PathBuf,
        /// Layout path [default: <grid>.layout.json]
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated brick type ids [default: the whole catalog]
        #[arg(long, value_delimiter = ',')]
        types: Option<Vec<String>>,
        /// Analyze the generated layout right away.
        #[arg(long)]
        analyze: bool,
        /// Result document path when analyzing [default: <grid>.result.json]
        #[arg(long)]
        result_out: Option<PathBuf>,
        /// Write a PLY heatmap when analyzing.
        #[arg(long)]
        mesh_out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let cfg = RunConfig::resolve(&cli.flags)?;
    match cli.command {
        Command::Analyze {
            layout,
            out,
            mesh_out,
            lp_out,
        } => commands::analyze(&cfg, &layout, out, mesh_out, lp_out),
        Command::Batch {
            dir,
            out_dir,
            mesh_out,
        } => batch::run(&cfg, &dir, out_dir, mesh_out),
        Command::Bench {
            max_side,
            repeats,
            out,
        } => bench::run(&cfg, max_side, repeats, out),
        Command::Generate {
            grid,
            out,
            types,
            analyze,
            result_out,
            mesh_out,
        } => commands::generate(&cfg, &grid, out, types, analyze, result_out, mesh_out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_ERROR)
        }
    }
}
