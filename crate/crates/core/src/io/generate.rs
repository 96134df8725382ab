//! Greedy conversion of a voxel grid into a brick layout.
//!
//! Layers are processed bottom-up. Within a layer, cells with nothing
//! beneath them are merged first, each into the best footprint that
//! contains it and fits the remaining occupancy. A footprint that also
//! covers a supported cell always beats one that does not; after that the
//! larger area wins, then the smaller `(x0, y0)`, then `x` before `y`
//! orientation, then the type id. Every cell still uncovered is then
//! handled in `(x, y)` order with the largest fitting footprint.
//!
//! Bricks appear in the output in placement order.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::assembly::{Assembly, BrickInstance, BrickType, Catalog, Cell, Footprint, Orientation};

use super::voxel::{VoxelError, VoxelGrid};

#[derive(Debug, Error, PartialEq)]
pub enum GenerateError {
    #[error("allowed brick types must include a 1x1 footprint")]
    NoUnitType,
    #[error(transparent)]
    Grid(#[from] VoxelError),
    #[error("brick type `{0}` is listed twice")]
    DuplicateType(String),
}

struct Shape<'a> {
    brick_type: &'a BrickType,
    orientation: Orientation,
    nx: i32,
    ny: i32,
}

fn shapes(allowed: &[BrickType]) -> Vec<Shape<'_>> {
    let mut out = Vec::new();
    for t in allowed {
        for orientation in [Orientation::AxisX, Orientation::AxisY] {
            let f = Footprint::of(t, Cell::new(0, 0, 0), orientation);
            if orientation == Orientation::AxisY && f.nx == f.ny {
                continue;
            }
            out.push(Shape {
                brick_type: t,
                orientation,
                nx: f.nx,
                ny: f.ny,
            });
        }
    }
    out
}

/// Ranking key; smaller is better.
type Rank<'a> = (bool, i32, i32, i32, Orientation, &'a str);

struct Placement<'a> {
    rank: Rank<'a>,
    shape: usize,
    x0: i32,
    y0: i32,
}

/// Best footprint containing `(x, y)` that lies inside `free`.
fn best_fit<'a>(
    shapes: &'a [Shape<'a>],
    free: &BTreeSet<(i32, i32)>,
    supported: &BTreeSet<(i32, i32)>,
    x: i32,
    y: i32,
    prefer_support: bool,
) -> Placement<'a> {
    let mut best: Option<Placement<'a>> = None;
    for (i, s) in shapes.iter().enumerate() {
        for x0 in x - s.nx + 1..=x {
            for y0 in y - s.ny + 1..=y {
                let cells = || (x0..x0 + s.nx).flat_map(move |cx| (y0..y0 + s.ny).map(move |cy| (cx, cy)));
                if !cells().all(|c| free.contains(&c)) {
                    continue;
                }
                let touches_support = prefer_support && cells().any(|c| supported.contains(&c));
                let rank = (
                    !touches_support,
                    -(s.nx * s.ny),
                    x0,
                    y0,
                    s.orientation,
                    s.brick_type.id.as_str(),
                );
                if best.as_ref().is_none_or(|b| rank < b.rank) {
                    best = Some(Placement { rank, shape: i, x0, y0 });
                }
            }
        }
    }
    best.expect("a 1x1 footprint always fits a free cell")
}

/// Covers every occupied voxel with exactly one brick.
///
/// The returned assembly uses a catalog made of `allowed`, interlocking
/// mode and a baseplate under layer 0.
pub fn generate_layout(grid: &VoxelGrid, allowed: &[BrickType]) -> Result<Assembly, GenerateError> {
    grid.validate()?;
    let mut catalog = Catalog::empty();
    for t in allowed {
        if catalog.get(&t.id).is_some() {
            return Err(GenerateError::DuplicateType(t.id.clone()));
        }
        catalog
            .insert(t.clone())
            .map_err(|_| GenerateError::DuplicateType(t.id.clone()))?;
    }
    if !allowed.iter().any(|t| t.width_units == 1 && t.length_units == 1) {
        return Err(GenerateError::NoUnitType);
    }
    let shapes = shapes(allowed);
    let mut assembly = Assembly::new(catalog);

    let layers: BTreeSet<i32> = grid.occupied.iter().map(|c| c.z).collect();
    for z in layers {
        let mut free: BTreeSet<(i32, i32)> = grid
            .occupied
            .iter()
            .filter(|c| c.z == z)
            .map(|c| (c.x, c.y))
            .collect();
        let supported: BTreeSet<(i32, i32)> = free
            .iter()
            .copied()
            .filter(|&(x, y)| z == 0 || grid.is_occupied(Cell::new(x, y, z - 1)))
            .collect();
        let seeds: Vec<(i32, i32)> = free.difference(&supported).copied().collect();

        let mut place = |x: i32, y: i32, prefer_support: bool, free: &mut BTreeSet<(i32, i32)>| {
            let p = best_fit(&shapes, free, &supported, x, y, prefer_support);
            let s = &shapes[p.shape];
            for cx in p.x0..p.x0 + s.nx {
                for cy in p.y0..p.y0 + s.ny {
                    free.remove(&(cx, cy));
                }
            }
            assembly.push(BrickInstance::new(
                s.brick_type.id.clone(),
                Cell::new(p.x0, p.y0, z),
                s.orientation,
            ));
        };

        for (x, y) in seeds {
            if free.contains(&(x, y)) {
                place(x, y, true, &mut free);
            }
        }
        while let Some(&(x, y)) = free.first() {
            place(x, y, false, &mut free);
        }
    }
    Ok(assembly)
}
