//! File formats and the voxel-to-layout generator.
//!
//! All documents are JSON with an explicit version field.

pub mod catalog;
pub mod generate;
pub mod layout;
pub mod lpformat;
pub mod mesh;
pub mod result;
pub mod voxel;

pub use catalog::{parse_catalog, write_catalog, CatalogFileError};
pub use generate::{generate_layout, GenerateError};
pub use layout::{parse_layout, write_layout, LayoutDocument, LayoutError};
pub use lpformat::write_lp;
pub use mesh::{export_heatmap_mesh, score_color};
pub use result::{read_result, write_result, BrickResult, ResultDocument, ResultError};
pub use voxel::{parse_voxels, write_voxels, VoxelError, VoxelGrid};
