//! Brick catalogs, placed structures on the unit grid, and the two contact
//! relations derived from them: vertical knob-to-cavity connections and
//! lateral face adjacencies.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Catalog entry for a cuboid brick with a `width_units × length_units` footprint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BrickType {
    pub id: String,
    pub width_units: u32,
    pub length_units: u32,
    /// Kilograms.
    pub mass: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("brick type `{0}` must have 1 <= width <= length")]
    BadFootprint(String),
    #[error("brick type `{0}` must have a positive mass")]
    BadMass(String),
    #[error("brick type `{0}` is defined twice")]
    Duplicate(String),
}

impl BrickType {
    pub fn new(
        id: impl Into<String>,
        width_units: u32,
        length_units: u32,
        mass: f64,
    ) -> Result<Self, CatalogError> {
        let id = id.into();
        if width_units == 0 || length_units < width_units {
            return Err(CatalogError::BadFootprint(id));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(CatalogError::BadMass(id));
        }
        Ok(Self {
            id,
            width_units,
            length_units,
            mass,
        })
    }

    /// Number of contact points for a connected cavity of this brick, when
    /// it sits on top of the connection.
    ///
    /// `on_border` tells whether the cavity cell lies on the footprint border.
    pub fn contact_count(&self, on_border: bool) -> u8 {
        match self.width_units {
            1 => 4,
            2 => 3,
            _ if on_border => 3,
            _ => 4,
        }
    }
}

/// A set of brick types keyed by id.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Catalog {
    types: BTreeMap<String, BrickType>,
}

/// Grams per kilogram; files carry grams.
pub(crate) const GRAMS: f64 = 1000.0;

impl Catalog {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The six commonly used interlocking bricks with their measured masses:
    /// 1×1, 1×2, 1×4, 2×2, 2×4 and 2×6.
    pub fn standard() -> Self {
        let entries = [
            ("1x1", 1, 1, 0.43),
            ("1x2", 1, 2, 0.81),
            ("1x4", 1, 4, 1.57),
            ("2x2", 2, 2, 1.15),
            ("2x4", 2, 4, 2.16),
            ("2x6", 2, 6, 3.23),
        ];
        Self::from_grams(&entries)
    }

    /// [`Catalog::standard`] plus the less common 1×6 and 1×8 bricks.
    pub fn extended() -> Self {
        let mut catalog = Self::standard();
        for t in Self::from_grams(&[("1x6", 1, 6, 2.28), ("1x8", 1, 8, 3.03)]).iter() {
            catalog.types.insert(t.id.clone(), t.clone());
        }
        catalog
    }

    fn from_grams(entries: &[(&str, u32, u32, f64)]) -> Self {
        let types = entries
            .iter()
            .map(|&(id, w, l, g)| {
                let t = BrickType::new(id, w, l, g / GRAMS).expect("built-in catalog entry");
                (t.id.clone(), t)
            })
            .collect();
        Self { types }
    }

    pub fn insert(&mut self, brick_type: BrickType) -> Result<(), CatalogError> {
        if self.types.contains_key(&brick_type.id) {
            return Err(CatalogError::Duplicate(brick_type.id));
        }
        self.types.insert(brick_type.id.clone(), brick_type);
        Ok(())
    }

    pub fn with(mut self, brick_type: BrickType) -> Result<Self, CatalogError> {
        self.insert(brick_type)?;
        Ok(self)
    }

    pub fn get(&self, id: &str) -> Option<&BrickType> {
        self.types.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BrickType> {
        self.types.values()
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

/// Physical dimensions of the grid unit. Lengths in millimeters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitGeometry {
    /// Knob-to-knob spacing.
    pub pitch: f64,
    pub brick_height: f64,
    pub knob_radius: f64,
    pub knob_height: f64,
    /// Newtons per kilogram.
    pub gravity: f64,
}

impl Default for UnitGeometry {
    fn default() -> Self {
        Self {
            pitch: 8.0,
            brick_height: 9.6,
            knob_radius: 2.4,
            knob_height: 1.8,
            gravity: 9.8,
        }
    }
}

impl UnitGeometry {
    fn is_valid(&self) -> bool {
        [
            self.pitch,
            self.brick_height,
            self.knob_radius,
            self.knob_height,
            self.gravity,
        ]
        .iter()
        .all(|v| *v > 0.0 && v.is_finite())
            && 2.0 * self.knob_radius < self.pitch
    }
}

/// Integer unit-voxel coordinate; `z` is the layer index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32, z: i32) -> Self {
        Self { x, y, z }
    }

    pub fn offset(self, dx: i32, dy: i32, dz: i32) -> Self {
        Self::new(self.x + dx, self.y + dy, self.z + dz)
    }

    pub fn step(self, dir: Direction) -> Self {
        let (dx, dy) = dir.grid_step();
        self.offset(dx, dy, 0)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Horizontal compass direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    PosX,
    PosY,
    NegX,
    NegY,
}

impl Direction {
    /// Compass order used for contact points.
    pub const ALL: [Direction; 4] = [
        Direction::PosX,
        Direction::PosY,
        Direction::NegX,
        Direction::NegY,
    ];

    /// Preference when one of several interior-facing sides must be picked.
    pub const TIE_ORDER: [Direction; 4] = [
        Direction::PosX,
        Direction::NegX,
        Direction::PosY,
        Direction::NegY,
    ];

    pub fn grid_step(self) -> (i32, i32) {
        match self {
            Direction::PosX => (1, 0),
            Direction::NegX => (-1, 0),
            Direction::PosY => (0, 1),
            Direction::NegY => (0, -1),
        }
    }

    pub fn unit(self) -> [f64; 3] {
        let (dx, dy) = self.grid_step();
        [dx as f64, dy as f64, 0.0]
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::PosX => Direction::NegX,
            Direction::NegX => Direction::PosX,
            Direction::PosY => Direction::NegY,
            Direction::NegY => Direction::PosY,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    /// Long side along X.
    #[default]
    #[serde(rename = "x")]
    AxisX,
    /// Long side along Y.
    #[serde(rename = "y")]
    AxisY,
}

/// 1-based brick index, as used in reports and files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BrickId(pub usize);

impl BrickId {
    pub fn from_slot(slot: usize) -> Self {
        BrickId(slot + 1)
    }

    /// 0-based position in [`Assembly::bricks`].
    pub fn slot(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for BrickId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// What sits underneath a connection or beside a contact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Support {
    Ground,
    Brick(BrickId),
}

impl Support {
    pub fn brick(self) -> Option<BrickId> {
        match self {
            Support::Ground => None,
            Support::Brick(b) => Some(b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BrickInstance {
    pub type_id: String,
    /// Minimum corner of the footprint.
    pub position: Cell,
    pub orientation: Orientation,
    /// Additional load carried by the brick, kilograms.
    pub extra_mass: f64,
}

impl BrickInstance {
    pub fn new(type_id: impl Into<String>, position: Cell, orientation: Orientation) -> Self {
        Self {
            type_id: type_id.into(),
            position,
            orientation,
            extra_mass: 0.0,
        }
    }

    pub fn with_extra_mass(mut self, kg: f64) -> Self {
        self.extra_mass = kg;
        self
    }
}

/// Axis-aligned footprint rectangle of a placed brick, in cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Footprint {
    pub x0: i32,
    pub y0: i32,
    /// Extent along X in cells.
    pub nx: i32,
    /// Extent along Y in cells.
    pub ny: i32,
    pub z: i32,
}

impl Footprint {
    pub fn of(brick_type: &BrickType, position: Cell, orientation: Orientation) -> Self {
        let (w, l) = (brick_type.width_units as i32, brick_type.length_units as i32);
        let (nx, ny) = match orientation {
            Orientation::AxisX => (l, w),
            Orientation::AxisY => (w, l),
        };
        Self {
            x0: position.x,
            y0: position.y,
            nx,
            ny,
            z: position.z,
        }
    }

    pub fn contains(&self, x: i32, y: i32) -> bool {
        x >= self.x0 && x < self.x0 + self.nx && y >= self.y0 && y < self.y0 + self.ny
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (self.x0..self.x0 + self.nx)
            .flat_map(move |x| (self.y0..self.y0 + self.ny).map(move |y| Cell::new(x, y, self.z)))
    }

    pub fn area(&self) -> i32 {
        self.nx * self.ny
    }

    /// Whether the neighbor of `(x, y)` in direction `dir` is still inside.
    fn continues(&self, x: i32, y: i32, dir: Direction) -> bool {
        let (dx, dy) = dir.grid_step();
        self.contains(x + dx, y + dy)
    }

    fn on_border(&self, x: i32, y: i32) -> bool {
        Direction::ALL.iter().any(|&d| !self.continues(x, y, d))
    }

    /// Intersection with another footprint, ignoring `z`.
    pub fn overlap(&self, other: &Footprint) -> Option<(i32, i32, i32, i32)> {
        let x0 = self.x0.max(other.x0);
        let x1 = (self.x0 + self.nx).min(other.x0 + other.nx);
        let y0 = self.y0.max(other.y0);
        let y1 = (self.y0 + self.ny).min(other.y0 + other.ny);
        (x0 < x1 && y0 < y1).then_some((x0, y0, x1, y1))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Knob-and-cavity bricks held together by friction.
    #[default]
    Interlocking,
    /// Plain blocks resting on each other without friction.
    Smooth,
}

/// A structure under analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct Assembly {
    pub catalog: Catalog,
    pub bricks: Vec<BrickInstance>,
    pub geometry: UnitGeometry,
    /// Whether bricks in layer 0 rest on a baseplate (or, in smooth mode, a table).
    pub ground_knobs: bool,
    pub mode: Mode,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructuralError {
    #[error("bricks {a} and {b} both occupy cell {cell}")]
    Overlap { a: BrickId, b: BrickId, cell: Cell },
    #[error("brick {brick} uses unknown type `{type_id}`")]
    UnknownType { brick: BrickId, type_id: String },
    #[error("brick {brick} has a footprint cell with a negative coordinate")]
    NegativeCoordinate { brick: BrickId },
    #[error("brick {brick} has invalid extra mass {extra_mass}")]
    BadExtraMass { brick: BrickId, extra_mass: f64 },
    #[error("brick {brick} uses type `{type_id}` with an invalid definition")]
    BadType { brick: BrickId, type_id: String },
    #[error("unit geometry must be finite, positive, and fit two knob radii within one pitch")]
    BadGeometry,
}

impl StructuralError {
    /// Indices of the offending bricks, if any.
    pub fn bricks(&self) -> Vec<BrickId> {
        match self {
            StructuralError::Overlap { a, b, .. } => vec![*a, *b],
            StructuralError::UnknownType { brick, .. }
            | StructuralError::NegativeCoordinate { brick }
            | StructuralError::BadExtraMass { brick, .. }
            | StructuralError::BadType { brick, .. } => vec![*brick],
            StructuralError::BadGeometry => vec![],
        }
    }
}

/// Knob-to-cavity connection between a lower support and an upper brick.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Connection {
    pub lower: Support,
    pub upper: BrickId,
    /// Cell holding the knob; `z = -1` for the baseplate.
    pub cell: Cell,
    pub contact_count: u8,
    /// Compass point left out when `contact_count == 3`.
    pub omitted: Option<Direction>,
}

impl Connection {
    /// Height of the interface plane in layers.
    pub fn interface_layer(&self) -> i32 {
        self.cell.z + 1
    }
}

/// Unit side face shared by two laterally touching bricks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedFace {
    /// Cell of `brick_a` that owns the face.
    pub cell: Cell,
    /// Outward normal as seen from `brick_a`.
    pub normal: Direction,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Adjacency {
    pub brick_a: BrickId,
    pub brick_b: BrickId,
    pub shared_faces: Vec<SharedFace>,
}

/// Rectangular overlap between vertically adjacent faces, used for smooth blocks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportPatch {
    pub lower: Support,
    pub upper: BrickId,
    /// Half-open cell rectangle `[x0, x1) × [y0, y1)`.
    pub x0: i32,
    pub y0: i32,
    pub x1: i32,
    pub y1: i32,
    pub interface_layer: i32,
}

impl Assembly {
    pub fn new(catalog: Catalog) -> Self {
        Self {
            catalog,
            bricks: Vec::new(),
            geometry: UnitGeometry::default(),
            ground_knobs: true,
            mode: Mode::Interlocking,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_ground(mut self, ground_knobs: bool) -> Self {
        self.ground_knobs = ground_knobs;
        self
    }

    /// Appends a brick and returns its index.
    pub fn push(&mut self, brick: BrickInstance) -> BrickId {
        self.bricks.push(brick);
        BrickId(self.bricks.len())
    }

    pub fn place(
        &mut self,
        type_id: &str,
        x: i32,
        y: i32,
        z: i32,
        orientation: Orientation,
    ) -> BrickId {
        self.push(BrickInstance::new(type_id, Cell::new(x, y, z), orientation))
    }

    pub fn len(&self) -> usize {
        self.bricks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bricks.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = BrickId> {
        (1..=self.bricks.len()).map(BrickId)
    }

    pub fn brick(&self, id: BrickId) -> &BrickInstance {
        &self.bricks[id.slot()]
    }

    pub fn brick_type(&self, id: BrickId) -> Option<&BrickType> {
        self.catalog.get(&self.brick(id).type_id)
    }

    /// Footprint of a brick whose type is known to the catalog.
    pub fn footprint(&self, id: BrickId) -> Option<Footprint> {
        let b = self.brick(id);
        self.brick_type(id)
            .map(|t| Footprint::of(t, b.position, b.orientation))
    }

    pub(crate) fn footprints(&self) -> Vec<Footprint> {
        self.ids()
            .map(|id| {
                self.footprint(id)
                    .expect("assembly must be validated before enumeration")
            })
            .collect()
    }

    /// Total mass of a brick including its extra load, kilograms.
    pub fn total_mass(&self, id: BrickId) -> f64 {
        let t = self
            .brick_type(id)
            .expect("assembly must be validated before use");
        t.mass + self.brick(id).extra_mass
    }

    /// Geometric center of the brick's cuboid in millimeters.
    pub fn center_of_mass(&self, id: BrickId) -> [f64; 3] {
        let f = self
            .footprint(id)
            .expect("assembly must be validated before use");
        let g = &self.geometry;
        [
            (f.x0 as f64 + f.nx as f64 / 2.0) * g.pitch,
            (f.y0 as f64 + f.ny as f64 / 2.0) * g.pitch,
            (f.z as f64 + 0.5) * g.brick_height,
        ]
    }

    /// Shifts every brick by whole cells.
    pub fn translated(&self, dx: i32, dy: i32, dz: i32) -> Assembly {
        let mut out = self.clone();
        for b in &mut out.bricks {
            b.position = b.position.offset(dx, dy, dz);
        }
        out
    }

    /// Mirror image about the plane `y = y_max / 2` (the XZ plane through the
    /// structure). Brick order is preserved.
    pub fn mirrored_y(&self) -> Assembly {
        let prints = self.footprints();
        let y_max = prints.iter().map(|f| f.y0 + f.ny).max().unwrap_or(0);
        let mut out = self.clone();
        for (b, f) in out.bricks.iter_mut().zip(&prints) {
            b.position.y = y_max - (f.y0 + f.ny);
        }
        out
    }

    /// Mirror image about the YZ plane through the structure.
    pub fn mirrored_x(&self) -> Assembly {
        let prints = self.footprints();
        let x_max = prints.iter().map(|f| f.x0 + f.nx).max().unwrap_or(0);
        let mut out = self.clone();
        for (b, f) in out.bricks.iter_mut().zip(&prints) {
            b.position.x = x_max - (f.x0 + f.nx);
        }
        out
    }

    /// Checks every structural invariant; an empty list means the assembly
    /// can be analyzed.
    pub fn validate(&self) -> Vec<StructuralError> {
        let mut errors = Vec::new();
        if !self.geometry.is_valid() {
            errors.push(StructuralError::BadGeometry);
        }
        let mut occupied: HashMap<Cell, BrickId> = HashMap::new();
        for id in self.ids() {
            let b = self.brick(id);
            if !(b.extra_mass >= 0.0 && b.extra_mass.is_finite()) {
                errors.push(StructuralError::BadExtraMass {
                    brick: id,
                    extra_mass: b.extra_mass,
                });
            }
            let Some(t) = self.brick_type(id) else {
                errors.push(StructuralError::UnknownType {
                    brick: id,
                    type_id: b.type_id.clone(),
                });
                continue;
            };
            if BrickType::new(t.id.clone(), t.width_units, t.length_units, t.mass).is_err() {
                errors.push(StructuralError::BadType {
                    brick: id,
                    type_id: t.id.clone(),
                });
                continue;
            }
            let f = Footprint::of(t, b.position, b.orientation);
            if f.x0 < 0 || f.y0 < 0 || f.z < 0 {
                errors.push(StructuralError::NegativeCoordinate { brick: id });
            }
            let mut reported = Vec::new();
            for cell in f.cells() {
                if let Some(&other) = occupied.get(&cell) {
                    if !reported.contains(&other) {
                        reported.push(other);
                        errors.push(StructuralError::Overlap {
                            a: other,
                            b: id,
                            cell,
                        });
                    }
                } else {
                    occupied.insert(cell, id);
                }
            }
        }
        errors
    }

    fn occupancy(&self, prints: &[Footprint]) -> HashMap<Cell, BrickId> {
        let mut occupied = HashMap::with_capacity(prints.iter().map(|f| f.area() as usize).sum());
        for (slot, f) in prints.iter().enumerate() {
            for cell in f.cells() {
                occupied.insert(cell, BrickId::from_slot(slot));
            }
        }
        occupied
    }

    /// One connection per vertically stacked cell pair, plus one per layer-0
    /// cell when the baseplate is present. Ordered by upper brick, then cell.
    pub fn enumerate_connections(&self) -> Vec<Connection> {
        let prints = self.footprints();
        let occupied = self.occupancy(&prints);
        let mut out = Vec::new();
        for (slot, f) in prints.iter().enumerate() {
            let upper = BrickId::from_slot(slot);
            let t = self.brick_type(upper).expect("validated");
            for cell in f.cells() {
                let below = cell.offset(0, 0, -1);
                let lower = if cell.z == 0 {
                    if !self.ground_knobs {
                        continue;
                    }
                    Support::Ground
                } else {
                    match occupied.get(&below) {
                        Some(&b) => Support::Brick(b),
                        None => continue,
                    }
                };
                let on_border = f.on_border(cell.x, cell.y);
                let contact_count = t.contact_count(on_border);
                let omitted = (contact_count == 3).then(|| {
                    // Interior-facing sides are those opposite a border side.
                    // At corners the X-axis side wins, which keeps the rule
                    // unchanged under mirroring about either vertical plane.
                    let interior = Direction::TIE_ORDER
                        .into_iter()
                        .filter(|&d| !f.continues(cell.x, cell.y, d.opposite()))
                        .find(|&d| f.continues(cell.x, cell.y, d));
                    interior.unwrap_or(Direction::PosX)
                });
                out.push(Connection {
                    lower,
                    upper,
                    cell: below,
                    contact_count,
                    omitted,
                });
            }
        }
        out
    }

    /// Pairs of bricks touching side by side in the same layer, each pair
    /// listed once with the lower index first.
    pub fn enumerate_adjacencies(&self) -> Vec<Adjacency> {
        let prints = self.footprints();
        let occupied = self.occupancy(&prints);
        let mut pairs: BTreeMap<(BrickId, BrickId), Vec<SharedFace>> = BTreeMap::new();
        for (slot, f) in prints.iter().enumerate() {
            let a = BrickId::from_slot(slot);
            for cell in f.cells() {
                for dir in Direction::ALL {
                    let Some(&b) = occupied.get(&cell.step(dir)) else {
                        continue;
                    };
                    if b > a {
                        pairs.entry((a, b)).or_default().push(SharedFace {
                            cell,
                            normal: dir,
                        });
                    }
                }
            }
        }
        pairs
            .into_iter()
            .map(|((brick_a, brick_b), shared_faces)| Adjacency {
                brick_a,
                brick_b,
                shared_faces,
            })
            .collect()
    }

    /// Rectangular contact patches between vertically adjacent bricks (and
    /// the ground, when present).
    pub fn enumerate_support_patches(&self) -> Vec<SupportPatch> {
        let prints = self.footprints();
        let mut by_layer: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (slot, f) in prints.iter().enumerate() {
            by_layer.entry(f.z).or_default().push(slot);
        }
        let mut out = Vec::new();
        for (slot, f) in prints.iter().enumerate() {
            let upper = BrickId::from_slot(slot);
            if f.z == 0 {
                if self.ground_knobs {
                    out.push(SupportPatch {
                        lower: Support::Ground,
                        upper,
                        x0: f.x0,
                        y0: f.y0,
                        x1: f.x0 + f.nx,
                        y1: f.y0 + f.ny,
                        interface_layer: 0,
                    });
                }
                continue;
            }
            for &other in by_layer.get(&(f.z - 1)).map(Vec::as_slice).unwrap_or(&[]) {
                if let Some((x0, y0, x1, y1)) = f.overlap(&prints[other]) {
                    out.push(SupportPatch {
                        lower: Support::Brick(BrickId::from_slot(other)),
                        upper,
                        x0,
                        y0,
                        x1,
                        y1,
                        interface_layer: f.z,
                    });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(type_id: &str, x: i32, y: i32, z: i32) -> Assembly {
        let mut a = Assembly::new(Catalog::standard());
        a.place(type_id, x, y, z, Orientation::AxisX);
        a
    }

    #[test]
    fn overlap_names_both_bricks() {
        let mut a = one("1x1", 0, 0, 0);
        a.place("1x1", 0, 0, 0, Orientation::AxisX);
        let errors = a.validate();
        assert_eq!(errors.len(), 1);
        assert_eq!(errors[0].bricks(), vec![BrickId(1), BrickId(2)]);
    }

    #[test]
    fn single_brick_is_valid() {
        assert!(one("2x4", 0, 0, 0).validate().is_empty());
    }

    #[test]
    fn unknown_type_is_reported() {
        let errors = one("9x9", 0, 0, 0).validate();
        assert!(matches!(
            &errors[..],
            [StructuralError::UnknownType { brick: BrickId(1), type_id }] if type_id == "9x9"
        ));
    }

    #[test]
    fn negative_cells_and_masses_are_rejected() {
        let mut a = one("1x2", -1, 0, 0);
        a.push(BrickInstance::new("1x1", Cell::new(5, 5, 0), Orientation::AxisX).with_extra_mass(-1.0));
        let errors = a.validate();
        assert_eq!(errors.len(), 2);
        assert!(matches!(errors[0], StructuralError::NegativeCoordinate { .. }));
        assert!(matches!(errors[1], StructuralError::BadExtraMass { .. }));
    }

    #[test]
    fn catalog_rejects_bad_types() {
        assert!(BrickType::new("0x1", 0, 1, 1.0).is_err());
        assert!(BrickType::new("3x2", 3, 2, 1.0).is_err());
        assert!(BrickType::new("1x1", 1, 1, 0.0).is_err());
        let t = BrickType::new("1x1", 1, 1, 1.0).unwrap();
        assert!(Catalog::standard().with(t).is_err());
    }

    #[test]
    fn one_by_two_on_two_by_two_has_four_contacts() {
        let mut a = one("2x2", 0, 0, 0);
        a.place("1x2", 0, 0, 1, Orientation::AxisX);
        let c: Vec<_> = a
            .enumerate_connections()
            .into_iter()
            .filter(|c| c.upper == BrickId(2))
            .collect();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|c| c.contact_count == 4 && c.omitted.is_none()));
        assert!(c.iter().all(|c| c.lower == Support::Brick(BrickId(1))));
    }

    #[test]
    fn two_by_four_on_full_base_has_three_contacts() {
        let mut a = one("2x4", 0, 0, 0);
        a.place("2x4", 0, 0, 1, Orientation::AxisX);
        let c: Vec<_> = a
            .enumerate_connections()
            .into_iter()
            .filter(|c| c.upper == BrickId(2))
            .collect();
        assert_eq!(c.len(), 8);
        assert!(c.iter().all(|c| c.contact_count == 3));
    }

    #[test]
    fn three_by_four_splits_border_and_interior() {
        let catalog = Catalog::standard()
            .with(BrickType::new("3x4", 3, 4, 3.0e-3).unwrap())
            .unwrap();
        let mut a = Assembly::new(catalog);
        a.place("3x4", 0, 0, 0, Orientation::AxisX);
        let c = a.enumerate_connections();
        assert_eq!(c.len(), 12);
        assert_eq!(c.iter().filter(|c| c.contact_count == 3).count(), 10);
        assert_eq!(c.iter().filter(|c| c.contact_count == 4).count(), 2);
    }

    #[test]
    fn omitted_point_faces_the_interior() {
        // 2x4 laid along Y: x in {0, 1}, so the x = 0 column is the -X border.
        let mut a = Assembly::new(Catalog::standard());
        a.place("2x4", 0, 0, 0, Orientation::AxisY);
        let c = a.enumerate_connections();
        let mid = c.iter().find(|c| c.cell == Cell::new(0, 1, -1)).unwrap();
        assert_eq!(mid.omitted, Some(Direction::PosX));
        let right = c.iter().find(|c| c.cell == Cell::new(1, 2, -1)).unwrap();
        assert_eq!(right.omitted, Some(Direction::NegX));
        // Corner: +X and +Y both face inward; +X wins.
        let corner = c.iter().find(|c| c.cell == Cell::new(0, 0, -1)).unwrap();
        assert_eq!(corner.omitted, Some(Direction::PosX));
        let top_right = c.iter().find(|c| c.cell == Cell::new(1, 3, -1)).unwrap();
        assert_eq!(top_right.omitted, Some(Direction::NegX));
    }

    #[test]
    fn no_ground_means_no_ground_connections() {
        let a = one("1x4", 0, 0, 0).with_ground(false);
        assert!(a.enumerate_connections().is_empty());
    }

    #[test]
    fn side_by_side_unit_bricks_share_one_face() {
        let mut a = one("1x1", 0, 0, 0);
        a.place("1x1", 1, 0, 0, Orientation::AxisX);
        let adj = a.enumerate_adjacencies();
        assert_eq!(adj.len(), 1);
        assert_eq!(adj[0].brick_a, BrickId(1));
        assert_eq!(adj[0].brick_b, BrickId(2));
        assert_eq!(
            adj[0].shared_faces,
            vec![SharedFace {
                cell: Cell::new(0, 0, 0),
                normal: Direction::PosX
            }]
        );
    }

    #[test]
    fn different_layers_are_not_adjacent() {
        let mut a = one("1x1", 0, 0, 0);
        a.place("1x1", 1, 0, 1, Orientation::AxisX);
        assert!(a.enumerate_adjacencies().is_empty());
    }

    #[test]
    fn long_sides_share_four_faces() {
        let mut a = one("1x4", 0, 0, 0);
        a.place("1x4", 0, 1, 0, Orientation::AxisX);
        let adj = a.enumerate_adjacencies();
        assert_eq!(adj.len(), 1);
        assert_eq!(adj[0].shared_faces.len(), 4);
        assert!(adj[0].shared_faces.iter().all(|f| f.normal == Direction::PosY));
    }

    #[test]
    fn support_patches_are_overlap_rectangles() {
        let mut a = one("1x4", 0, 0, 0);
        a.place("1x4", 2, 0, 1, Orientation::AxisX);
        let p = a.enumerate_support_patches();
        assert_eq!(p.len(), 2);
        assert_eq!((p[1].x0, p[1].x1, p[1].y0, p[1].y1), (2, 4, 0, 1));
        assert_eq!(p[1].interface_layer, 1);
    }

    #[test]
    fn mirrors_keep_cells_in_range() {
        let mut a = one("1x4", 0, 0, 0);
        a.place("2x2", 3, 1, 1, Orientation::AxisX);
        let m = a.mirrored_y();
        assert!(m.validate().is_empty());
        assert_eq!(m.brick(BrickId(1)).position, Cell::new(0, 2, 0));
        assert_eq!(m.brick(BrickId(2)).position, Cell::new(3, 0, 1));
        let m = a.mirrored_x();
        assert_eq!(m.brick(BrickId(1)).position, Cell::new(1, 0, 0));
        assert_eq!(m.brick(BrickId(2)).position, Cell::new(0, 1, 1));
    }
}
