use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{GeometryError, Result};
use crate::geometry::{HyperplaneSet, OrientedHyperplane, VectorN};

/// The five regular convex polyhedra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlatonicSolid {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl PlatonicSolid {
    pub const ALL: [PlatonicSolid; 5] = [
        PlatonicSolid::Tetrahedron,
        PlatonicSolid::Cube,
        PlatonicSolid::Octahedron,
        PlatonicSolid::Dodecahedron,
        PlatonicSolid::Icosahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlatonicSolid::Tetrahedron => "tetrahedron",
            PlatonicSolid::Cube => "cube",
            PlatonicSolid::Octahedron => "octahedron",
            PlatonicSolid::Dodecahedron => "dodecahedron",
            PlatonicSolid::Icosahedron => "icosahedron",
        }
    }

    pub fn face_count(self) -> usize {
        match self {
            PlatonicSolid::Tetrahedron => 4,
            PlatonicSolid::Cube => 6,
            PlatonicSolid::Octahedron => 8,
            PlatonicSolid::Dodecahedron => 12,
            PlatonicSolid::Icosahedron => 20,
        }
    }

    pub fn dual(self) -> PlatonicSolid {
        match self {
            PlatonicSolid::Tetrahedron => PlatonicSolid::Tetrahedron,
            PlatonicSolid::Cube => PlatonicSolid::Octahedron,
            PlatonicSolid::Octahedron => PlatonicSolid::Cube,
            PlatonicSolid::Dodecahedron => PlatonicSolid::Icosahedron,
            PlatonicSolid::Icosahedron => PlatonicSolid::Dodecahedron,
        }
    }

    /// Vertices on the unit sphere. The cube is axis-aligned; the tetrahedron
    /// uses alternate cube corners; dodecahedron and icosahedron use the
    /// golden-ratio coordinates.
    pub fn vertices(self) -> Vec<VectorN> {
        raw_vertices(self).into_iter().map(unit).collect()
    }

    /// Outward unit face normals, one per face.
    ///
    /// Face normals point at the vertices of the dual solid; the tetrahedron
    /// is self-dual up to a central inversion.
    pub fn face_normals(self) -> Vec<VectorN> {
        match self {
            PlatonicSolid::Tetrahedron => self.vertices().iter().map(|v| -v).collect(),
            other => other.dual().vertices(),
        }
    }

    /// Face hyperplanes with outward normals; each offset is the largest
    /// projection of a vertex onto its normal.
    pub fn hyperplanes(self) -> HyperplaneSet {
        let vertices = self.vertices();
        let planes = self
            .face_normals()
            .into_iter()
            .map(|n| {
                let offset = vertices
                    .iter()
                    .map(|v| n.dot(v))
                    .fold(f64::NEG_INFINITY, f64::max);
                OrientedHyperplane::new(n, offset).expect("normals are unit")
            })
            .collect();
        HyperplaneSet::new(planes).expect("solids have faces")
    }
}

impl fmt::Display for PlatonicSolid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlatonicSolid {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        PlatonicSolid::ALL
            .into_iter()
            .find(|solid| solid.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| GeometryError::UnknownSolid(s.to_string()))
    }
}

fn unit(v: [f64; 3]) -> VectorN {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    VectorN::from_vec_unchecked(vec![v[0] / n, v[1] / n, v[2] / n])
}

fn sign_combos() -> [(f64, f64); 4] {
    [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
}

/// Cyclic permutations of `(0, ±a, ±b)`.
fn cyclic_zero_pairs(a: f64, b: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(12);
    for (sa, sb) in sign_combos() {
        let (x, y) = (sa * a, sb * b);
        out.push([0.0, x, y]);
        out.push([x, y, 0.0]);
        out.push([y, 0.0, x]);
    }
    out
}

fn cube_corners() -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(8);
    for sx in [1.0, -1.0] {
        for (sy, sz) in sign_combos() {
            out.push([sx, sy, sz]);
        }
    }
    out
}

fn raw_vertices(solid: PlatonicSolid) -> Vec<[f64; 3]> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    match solid {
        PlatonicSolid::Tetrahedron => vec![
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ],
        PlatonicSolid::Cube => cube_corners(),
        PlatonicSolid::Octahedron => vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ],
        PlatonicSolid::Dodecahedron => {
            let mut v = cube_corners();
            v.extend(cyclic_zero_pairs(phi, 1.0 / phi));
            v
        }
        PlatonicSolid::Icosahedron => cyclic_zero_pairs(1.0, phi),
    }
}

/// Face hyperplanes of the named solid (unit circumradius, centered at the
/// origin).
pub fn platonic_solid_normals(name: &str) -> Result<HyperplaneSet> {
    Ok(name.parse::<PlatonicSolid>()?.hyperplanes())
}

/// The one-parameter family of irregular tetrahedra with cancelling face
/// normals, for `0 < t < pi`. Every face is tangent to the unit sphere
/// (offset 1), so `v` is identically 4.
pub fn example5_tetrahedron(t: f64) -> Result<HyperplaneSet> {
    if !(t > 0.0 && t < PI) {
        return Err(GeometryError::DomainError {
            value: t,
            lo: 0.0,
            hi: PI,
        });
    }
    let (half_c, s, c) = ((t / 2.0).cos(), t.sin(), t.cos());
    let normals = [
        [half_c, s / 2.0, (1.0 - c) / 2.0],
        [-half_c, s / 2.0, (1.0 - c) / 2.0],
        [0.0, -s, c],
        [0.0, 0.0, -1.0],
    ];
    let planes = normals
        .into_iter()
        .map(|n| OrientedHyperplane::new(VectorN::from_vec_unchecked(n.to_vec()), 1.0))
        .collect::<Result<Vec<_>>>()?;
    HyperplaneSet::new(planes)
}
