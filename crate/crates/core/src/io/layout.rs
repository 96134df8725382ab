//! Layout documents: a versioned JSON description of a placed structure.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "mode": "interlocking",
//!   "ground_knobs": true,
//!   "bricks": [
//!     { "type": "2x4", "position": [0, 0, 0], "orientation": "x" },
//!     { "type": "1x2", "position": [0, 0, 1], "orientation": "y", "extra_mass_g": 200.0 }
//!   ]
//! }
//! ```
//!
//! Brick types are resolved against a [`Catalog`]; masses in files are grams.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::{
    Assembly, BrickInstance, Catalog, Cell, Mode, Orientation, StructuralError, GRAMS,
};

pub const LAYOUT_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutDocument {
    pub format_version: u32,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default = "default_ground")]
    pub ground_knobs: bool,
    pub bricks: Vec<LayoutBrick>,
}

fn default_ground() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutBrick {
    #[serde(rename = "type")]
    pub type_id: String,
    pub position: [i32; 3],
    #[serde(default)]
    pub orientation: Orientation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_mass_g: Option<f64>,
}

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error("malformed layout at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported layout format version {0} (expected {LAYOUT_FORMAT_VERSION})")]
    Version(u32),
    #[error("brick {index} (`bricks[{}]`) uses unknown type `{type_id}`", index - 1)]
    UnknownType { index: usize, type_id: String },
    #[error("invalid structure: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Structural(Vec<StructuralError>),
}

impl From<serde_json::Error> for LayoutError {
    fn from(e: serde_json::Error) -> Self {
        LayoutError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

impl LayoutDocument {
    pub fn from_assembly(assembly: &Assembly) -> Self {
        Self {
            format_version: LAYOUT_FORMAT_VERSION,
            mode: assembly.mode,
            ground_knobs: assembly.ground_knobs,
            bricks: assembly
                .bricks
                .iter()
                .map(|b| LayoutBrick {
                    type_id: b.type_id.clone(),
                    position: [b.position.x, b.position.y, b.position.z],
                    orientation: b.orientation,
                    extra_mass_g: (b.extra_mass != 0.0).then_some(b.extra_mass * GRAMS),
                })
                .collect(),
        }
    }

    /// Resolves the document against a catalog and validates the result.
    pub fn into_assembly(self, catalog: &Catalog) -> Result<Assembly, LayoutError> {
        if self.format_version != LAYOUT_FORMAT_VERSION {
            return Err(LayoutError::Version(self.format_version));
        }
        let mut assembly = Assembly::new(catalog.clone())
            .with_mode(self.mode)
            .with_ground(self.ground_knobs);
        for (i, b) in self.bricks.into_iter().enumerate() {
            if catalog.get(&b.type_id).is_none() {
                return Err(LayoutError::UnknownType {
                    index: i + 1,
                    type_id: b.type_id,
                });
            }
            let [x, y, z] = b.position;
            assembly.push(
                BrickInstance::new(b.type_id, Cell::new(x, y, z), b.orientation)
                    .with_extra_mass(b.extra_mass_g.unwrap_or(0.0) / GRAMS),
            );
        }
        let errors = assembly.validate();
        if !errors.is_empty() {
            return Err(LayoutError::Structural(errors));
        }
        Ok(assembly)
    }
}

/// Parses and validates a layout document.
pub fn parse_layout(bytes: &[u8], catalog: &Catalog) -> Result<Assembly, LayoutError> {
    let doc: LayoutDocument = serde_json::from_slice(bytes)?;
    doc.into_assembly(catalog)
}

/// Pretty-printed layout document for an assembly.
pub fn write_layout(assembly: &Assembly) -> String {
    let mut s = serde_json::to_string_pretty(&LayoutDocument::from_assembly(assembly))
        .expect("layout documents always serialize");
    s.push('\n');
    s
}
