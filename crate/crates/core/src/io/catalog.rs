//! Brick catalog files.
//!
//! ```json
//! { "format_version": 1,
//!   "types": [ { "id": "1x3", "width_units": 1, "length_units": 3, "mass_g": 1.2 } ] }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::{BrickType, Catalog, CatalogError, GRAMS};

pub const CATALOG_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDocument {
    pub format_version: u32,
    pub types: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: String,
    pub width_units: u32,
    pub length_units: u32,
    pub mass_g: f64,
}

#[derive(Debug, Error)]
pub enum CatalogFileError {
    #[error("malformed catalog at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported catalog format version {0} (expected {CATALOG_FORMAT_VERSION})")]
    Version(u32),
    #[error(transparent)]
    Entry(#[from] CatalogError),
}

pub fn parse_catalog(bytes: &[u8]) -> Result<Catalog, CatalogFileError> {
    let doc: CatalogDocument =
        serde_json::from_slice(bytes).map_err(|e| CatalogFileError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    if doc.format_version != CATALOG_FORMAT_VERSION {
        return Err(CatalogFileError::Version(doc.format_version));
    }
    let mut catalog = Catalog::empty();
    for e in doc.types {
        catalog.insert(BrickType::new(e.id, e.width_units, e.length_units, e.mass_g / GRAMS)?)?;
    }
    Ok(catalog)
}

pub fn write_catalog(catalog: &Catalog) -> String {
    let doc = CatalogDocument {
        format_version: CATALOG_FORMAT_VERSION,
        types: catalog
            .iter()
            .map(|t| CatalogEntry {
                id: t.id.clone(),
                width_units: t.width_units,
                length_units: t.length_units,
                mass_g: t.mass * GRAMS,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("catalogs always serialize");
    s.push('\n');
    s
}
