//! Occupancy grids of unit voxels, the input to layout generation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::Cell;

pub const VOXEL_FORMAT_VERSION: u32 = 1;

/// Edge length of the default cubic grid.
pub const DEFAULT_DIM: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoxelGrid {
    #[serde(default = "default_version")]
    pub format_version: u32,
    #[serde(default = "default_dims")]
    pub dims: [u32; 3],
    /// Occupied cells as `[x, y, z]` triples.
    #[serde(with = "cell_set")]
    pub occupied: BTreeSet<Cell>,
}

fn default_version() -> u32 {
    VOXEL_FORMAT_VERSION
}

fn default_dims() -> [u32; 3] {
    [DEFAULT_DIM; 3]
}

impl Default for VoxelGrid {
    fn default() -> Self {
        Self::new(default_dims())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum VoxelError {
    #[error("malformed voxel grid at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported voxel grid format version {0} (expected {VOXEL_FORMAT_VERSION})")]
    Version(u32),
    #[error("grid dimensions must be positive, got {0:?}")]
    BadDims([u32; 3]),
    #[error("cell {cell} lies outside the {}x{}x{} grid", .dims[0], .dims[1], .dims[2])]
    OutOfBounds { cell: Cell, dims: [u32; 3] },
}

impl VoxelGrid {
    pub fn new(dims: [u32; 3]) -> Self {
        Self {
            format_version: VOXEL_FORMAT_VERSION,
            dims,
            occupied: BTreeSet::new(),
        }
    }

    /// Solid box of `nx × ny × nz` voxels filling a grid of the same size.
    pub fn solid(nx: u32, ny: u32, nz: u32) -> Self {
        let mut g = Self::new([nx, ny, nz]);
        for x in 0..nx as i32 {
            for y in 0..ny as i32 {
                for z in 0..nz as i32 {
                    g.occupied.insert(Cell::new(x, y, z));
                }
            }
        }
        g
    }

    pub fn with(mut self, cells: impl IntoIterator<Item = Cell>) -> Self {
        self.occupied.extend(cells);
        self
    }

    pub fn in_bounds(&self, c: Cell) -> bool {
        let d = self.dims;
        (0..d[0] as i64).contains(&(c.x as i64))
            && (0..d[1] as i64).contains(&(c.y as i64))
            && (0..d[2] as i64).contains(&(c.z as i64))
    }

    pub fn is_occupied(&self, c: Cell) -> bool {
        self.occupied.contains(&c)
    }

    pub fn validate(&self) -> Result<(), VoxelError> {
        if self.format_version != VOXEL_FORMAT_VERSION {
            return Err(VoxelError::Version(self.format_version));
        }
        if self.dims.contains(&0) {
            return Err(VoxelError::BadDims(self.dims));
        }
        match self.occupied.iter().find(|&&c| !self.in_bounds(c)) {
            Some(&cell) => Err(VoxelError::OutOfBounds {
                cell,
                dims: self.dims,
            }),
            None => Ok(()),
        }
    }
}

pub fn parse_voxels(bytes: &[u8]) -> Result<VoxelGrid, VoxelError> {
    let grid: VoxelGrid = serde_json::from_slice(bytes).map_err(|e| VoxelError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    grid.validate()?;
    Ok(grid)
}

pub fn write_voxels(grid: &VoxelGrid) -> String {
    let mut s = serde_json::to_string(grid).expect("voxel grids always serialize");
    s.push('\n');
    s
}

mod cell_set {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(set: &BTreeSet<Cell>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(set.iter().map(|c| [c.x, c.y, c.z]))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeSet<Cell>, D::Error> {
        let raw: Vec<[i32; 3]> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|[x, y, z]| Cell::new(x, y, z)).collect())
    }
}
