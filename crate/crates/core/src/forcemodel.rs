//! Candidate forces acting on every brick.
//!
//! Each candidate is a potential force with a fixed application point and
//! direction whose magnitude is a nonnegative unknown. Action and reaction
//! between two bricks are the same unknown seen from both sides, so they
//! share a variable id and Newton's third law holds exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::assembly::{Assembly, BrickId, Connection, Direction, Mode, Support, UnitGeometry};

pub type Vec3 = [f64; 3];

/// The six candidate force families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ForceKind {
    /// `S`: upward support on a brick's cavity from the brick (or ground) below.
    Support,
    /// `P`: downward press on a knob from the brick above.
    Press,
    /// `D`: downward drag on a cavity, friction holding the brick down.
    Drag,
    /// `U`: upward pull on a knob, friction from the brick above.
    Pull,
    /// `H`: horizontal press from a laterally touching brick.
    Lateral,
    /// `K`: horizontal press inside a knob connection.
    Knob,
}

impl ForceKind {
    pub const ALL: [ForceKind; 6] = [
        ForceKind::Support,
        ForceKind::Press,
        ForceKind::Drag,
        ForceKind::Pull,
        ForceKind::Lateral,
        ForceKind::Knob,
    ];

    pub fn symbol(self) -> char {
        match self {
            ForceKind::Support => 'S',
            ForceKind::Press => 'P',
            ForceKind::Drag => 'D',
            ForceKind::Pull => 'U',
            ForceKind::Lateral => 'H',
            ForceKind::Knob => 'K',
        }
    }

    /// Friction forces are limited by the knob capacity.
    pub fn is_friction(self) -> bool {
        matches!(self, ForceKind::Drag | ForceKind::Pull)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MagnitudeBound {
    /// Compressive force, any nonnegative magnitude.
    Unbounded,
    /// Friction force limited by the knob capacity; checked after solving.
    Capacity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForceCandidate {
    pub variable: usize,
    pub kind: ForceKind,
    pub brick: BrickId,
    pub partner: Support,
    /// World frame, millimeters.
    pub point: Vec3,
    pub direction: Vec3,
    pub bound: MagnitudeBound,
    /// `point` minus the center of mass of `brick`, computed in a frame
    /// anchored at the structure so it does not change under translation.
    pub lever: Vec3,
}

/// All candidate forces of an assembly together with per-brick loads.
#[derive(Clone, Debug, PartialEq)]
pub struct ForceModel {
    pub candidates: Vec<ForceCandidate>,
    /// Candidate indices per brick slot, grouped by kind.
    pub per_brick: Vec<BTreeMap<ForceKind, Vec<usize>>>,
    /// Weight vector per brick slot in newtons.
    pub gravity_load: Vec<Vec3>,
    /// Center of mass per brick slot in millimeters.
    pub centers: Vec<Vec3>,
    pub variable_count: usize,
    /// `(compression, tension)` variable pairs that may not both be active.
    pub contact_pairs: Vec<(usize, usize)>,
    pub geometry: UnitGeometry,
}

impl ForceModel {
    pub fn brick_count(&self) -> usize {
        self.gravity_load.len()
    }

    pub fn of_kind(&self, brick: BrickId, kind: ForceKind) -> impl Iterator<Item = &ForceCandidate> {
        self.per_brick[brick.slot()]
            .get(&kind)
            .into_iter()
            .flatten()
            .map(|&i| &self.candidates[i])
    }

    pub fn count(&self, brick: BrickId, kind: ForceKind) -> usize {
        self.per_brick[brick.slot()].get(&kind).map_or(0, Vec::len)
    }

    /// `point − center_of_mass` for a candidate of this model.
    pub fn lever(&self, candidate: &ForceCandidate) -> Vec3 {
        candidate.lever
    }
}

/// Lever arm of a candidate force about the center of mass of the brick it acts on.
pub fn lever_arm(candidate: &ForceCandidate, assembly: &Assembly) -> Vec3 {
    sub(candidate.point, assembly.center_of_mass(candidate.brick))
}

pub(crate) fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

const UP: Vec3 = [0.0, 0.0, 1.0];
const DOWN: Vec3 = [0.0, 0.0, -1.0];

fn neg(v: Vec3) -> Vec3 {
    [-v[0], -v[1], -v[2]]
}

/// Contact points of a knob connection, in millimeters.
///
/// Points sit on the knob circle at the compass positions, in the plane
/// where the upper brick's cavity meets the knob. A three-point connection
/// leaves out [`Connection::omitted`].
pub fn contact_points(connection: &Connection, geometry: &UnitGeometry) -> Vec<Vec3> {
    let [cx, cy] = cell_center(connection, geometry);
    let z = connection.interface_layer() as f64 * geometry.brick_height;
    Direction::ALL
        .into_iter()
        .filter(|&d| connection.contact_count == 4 || Some(d) != connection.omitted)
        .map(|d| {
            let u = d.unit();
            [cx + u[0] * geometry.knob_radius, cy + u[1] * geometry.knob_radius, z]
        })
        .collect()
}

fn cell_center(connection: &Connection, geometry: &UnitGeometry) -> [f64; 2] {
    [
        (connection.cell.x as f64 + 0.5) * geometry.pitch,
        (connection.cell.y as f64 + 0.5) * geometry.pitch,
    ]
}

struct Builder {
    candidates: Vec<ForceCandidate>,
    variable_count: usize,
    contact_pairs: Vec<(usize, usize)>,
}

impl Builder {
    fn variable(&mut self) -> usize {
        self.variable_count += 1;
        self.variable_count - 1
    }

    /// Emits the candidate on `brick` and, if `partner` is a brick, its
    /// reaction on the partner, both bound to one fresh variable.
    #[allow(clippy::too_many_arguments)]
    fn pair(
        &mut self,
        brick: BrickId,
        kind: ForceKind,
        partner: Support,
        partner_kind: ForceKind,
        point: Vec3,
        direction: Vec3,
    ) -> usize {
        let variable = self.variable();
        let bound = if kind.is_friction() {
            MagnitudeBound::Capacity
        } else {
            MagnitudeBound::Unbounded
        };
        self.candidates.push(ForceCandidate {
            variable,
            kind,
            brick,
            partner,
            point,
            direction,
            bound,
            lever: [0.0; 3],
        });
        if let Support::Brick(other) = partner {
            self.candidates.push(ForceCandidate {
                variable,
                kind: partner_kind,
                brick: other,
                partner: Support::Brick(brick),
                point,
                direction: neg(direction),
                bound,
                lever: [0.0; 3],
            });
        }
        variable
    }
}

/// Builds every candidate force of a validated assembly.
pub fn build_force_model(assembly: &Assembly) -> ForceModel {
    let prints = assembly.footprints();
    let ox = prints.iter().map(|f| f.x0).min().unwrap_or(0);
    let oy = prints.iter().map(|f| f.y0).min().unwrap_or(0);
    let mut model = build_local(&assembly.translated(-ox, -oy, 0));
    let shift = [ox as f64 * model.geometry.pitch, oy as f64 * model.geometry.pitch, 0.0];
    if ox != 0 || oy != 0 {
        for v in model.candidates.iter_mut().map(|c| &mut c.point).chain(&mut model.centers) {
            v[0] += shift[0];
            v[1] += shift[1];
        }
    }
    model
}

/// Model of an assembly whose footprints start at the origin.
fn build_local(assembly: &Assembly) -> ForceModel {
    let geometry = assembly.geometry;
    let mut b = Builder {
        candidates: Vec::new(),
        variable_count: 0,
        contact_pairs: Vec::new(),
    };

    match assembly.mode {
        Mode::Interlocking => {
            for connection in assembly.enumerate_connections() {
                let upper = connection.upper;
                let lower = connection.lower;
                for point in contact_points(&connection, &geometry) {
                    let compression =
                        b.pair(upper, ForceKind::Support, lower, ForceKind::Press, point, UP);
                    let tension = b.pair(upper, ForceKind::Drag, lower, ForceKind::Pull, point, DOWN);
                    b.contact_pairs.push((compression, tension));
                }
                let [cx, cy] = cell_center(&connection, &geometry);
                let z = connection.interface_layer() as f64 * geometry.brick_height
                    + geometry.knob_height / 2.0;
                for dir in Direction::ALL {
                    b.pair(upper, ForceKind::Knob, lower, ForceKind::Knob, [cx, cy, z], dir.unit());
                }
            }
        }
        Mode::Smooth => {
            for patch in assembly.enumerate_support_patches() {
                let z = patch.interface_layer as f64 * geometry.brick_height;
                let p = geometry.pitch;
                for (x, y) in [
                    (patch.x0, patch.y0),
                    (patch.x1, patch.y0),
                    (patch.x0, patch.y1),
                    (patch.x1, patch.y1),
                ] {
                    let point = [x as f64 * p, y as f64 * p, z];
                    b.pair(patch.upper, ForceKind::Support, patch.lower, ForceKind::Press, point, UP);
                }
            }
        }
    }

    for adjacency in assembly.enumerate_adjacencies() {
        for face in &adjacency.shared_faces {
            let n = face.normal.unit();
            let half = geometry.pitch / 2.0;
            let point = [
                (face.cell.x as f64 + 0.5) * geometry.pitch + n[0] * half,
                (face.cell.y as f64 + 0.5) * geometry.pitch + n[1] * half,
                (face.cell.z as f64 + 0.5) * geometry.brick_height,
            ];
            // Pushes brick_a away from brick_b, and brick_b the other way.
            b.pair(
                adjacency.brick_a,
                ForceKind::Lateral,
                Support::Brick(adjacency.brick_b),
                ForceKind::Lateral,
                point,
                neg(n),
            );
        }
    }

    let mut per_brick = vec![BTreeMap::<ForceKind, Vec<usize>>::new(); assembly.len()];
    for (i, c) in b.candidates.iter().enumerate() {
        per_brick[c.brick.slot()].entry(c.kind).or_default().push(i);
    }
    let gravity_load = assembly
        .ids()
        .map(|id| [0.0, 0.0, -assembly.total_mass(id) * geometry.gravity])
        .collect();
    let centers: Vec<Vec3> = assembly.ids().map(|id| assembly.center_of_mass(id)).collect();
    for c in &mut b.candidates {
        c.lever = sub(c.point, centers[c.brick.slot()]);
    }

    ForceModel {
        candidates: b.candidates,
        per_brick,
        gravity_load,
        centers,
        variable_count: b.variable_count,
        contact_pairs: b.contact_pairs,
        geometry,
    }
}
