//! Structure generators shared by the integration tests.
#![allow(dead_code)]

pub mod oracle;

use rand::rngs::StdRng;
use rand::Rng;
use stackstab::io::{generate_layout, VoxelGrid};
use stackstab::{Assembly, BrickInstance, BrickType, Catalog, Cell, Orientation};

pub fn standard_types() -> Vec<BrickType> {
    Catalog::standard().iter().cloned().collect()
}

/// Random skyline with overhangs: columns of random height, then empty
/// cells next to occupied ones (with nothing beneath) filled at random.
pub fn random_grid(rng: &mut StdRng, side: u32, height: u32, density: f64, overhang: f64) -> VoxelGrid {
    let mut grid = VoxelGrid::new([side, side, height]);
    for x in 0..side as i32 {
        for y in 0..side as i32 {
            if rng.random_bool(density) {
                let h = rng.random_range(1..=height as i32);
                grid.occupied.extend((0..h).map(|z| Cell::new(x, y, z)));
            }
        }
    }
    for z in 1..height as i32 {
        for x in 0..side as i32 {
            for y in 0..side as i32 {
                let c = Cell::new(x, y, z);
                if grid.is_occupied(c) || grid.is_occupied(Cell::new(x, y, z - 1)) {
                    continue;
                }
                let touches = [(1, 0), (-1, 0), (0, 1), (0, -1)]
                    .iter()
                    .any(|&(dx, dy)| grid.is_occupied(c.offset(dx, dy, 0)));
                if touches && rng.random_bool(overhang) {
                    grid.occupied.insert(c);
                }
            }
        }
    }
    grid
}

pub fn random_layout(rng: &mut StdRng, side: u32, height: u32) -> Assembly {
    let density = rng.random_range(0.3..0.9);
    let overhang = rng.random_range(0.0..0.4);
    let grid = random_grid(rng, side, height, density, overhang);
    generate_layout(&grid, &standard_types()).expect("standard types include 1x1")
}

fn top_layer(a: &Assembly) -> i32 {
    a.bricks.iter().map(|b| b.position.z).max().unwrap_or(-1)
}

/// Adds `count` bricks hovering well above everything else.
pub fn add_floating(rng: &mut StdRng, a: &mut Assembly, count: usize, side: i32) {
    let ids = ["1x1", "1x2", "2x2", "2x4"];
    let base = top_layer(a) + 2;
    for i in 0..count {
        let id = ids[rng.random_range(0..ids.len())];
        let o = if rng.random_bool(0.5) { Orientation::AxisX } else { Orientation::AxisY };
        let (x, y) = (rng.random_range(0..side), rng.random_range(0..side));
        a.push(BrickInstance::new(id, Cell::new(x, y, base + 2 * i as i32), o));
    }
}

/// Solid `nx × ny × nz` block of 1x1 bricks.
pub fn unit_cuboid(nx: i32, ny: i32, nz: i32) -> Assembly {
    let mut a = Assembly::new(Catalog::standard());
    for z in 0..nz {
        for x in 0..nx {
            for y in 0..ny {
                a.place("1x1", x, y, z, Orientation::AxisX);
            }
        }
    }
    a
}

/// `levels` bricks of `type_id`, each shifted `step` cells along +x from
/// the one below.
pub fn offset_stairs(type_id: &str, step: i32, levels: usize) -> Assembly {
    let mut a = Assembly::new(Catalog::standard());
    for z in 0..levels as i32 {
        a.place(type_id, z * step, 0, z, Orientation::AxisX);
    }
    a
}

/// Random assembly of 1 to `max_bricks` bricks inside a small box; may be
/// invalid, floating or disconnected.
pub fn random_small(rng: &mut StdRng, max_bricks: usize) -> Assembly {
    let ids = ["1x1", "1x2", "1x4", "2x2"];
    let mut a = Assembly::new(Catalog::standard());
    let n = rng.random_range(1..=max_bricks);
    for _ in 0..n {
        let id = ids[rng.random_range(0..ids.len())];
        let o = if rng.random_bool(0.5) { Orientation::AxisX } else { Orientation::AxisY };
        let cell = Cell::new(rng.random_range(0..3), rng.random_range(0..3), rng.random_range(0..3));
        let extra = if rng.random_bool(0.3) { rng.random_range(0.0..0.3) } else { 0.0 };
        a.push(BrickInstance::new(id, cell, o).with_extra_mass(extra));
    }
    a
}
