//! Convex polygons and polytopes as outward-oriented hyperplane sets, and
//! generators for the classical families whose facet normals cancel:
//! equilateral triangles, parallelograms, equiangular polygons, the Platonic
//! solids and a one-parameter family of irregular tetrahedra.

mod halfspace;
mod polygon;
mod solids;

pub use halfspace::ConvexPolytopeH;
pub(crate) use polygon::max_pairwise_distance;
pub use polygon::{
    classify_quadrilateral, classify_triangle, is_viviani_polygon, make_equiangular_polygon,
    polygon_to_hyperplanes, ConvexPolygon, QuadrilateralClass, RegularPolygon, TriangleClass,
    DEFAULT_SHAPE_TOL,
};
pub use solids::{example5_tetrahedron, platonic_solid_normals, PlatonicSolid};

use crate::error::Result;
use crate::geometry::{HyperplaneSet, VectorN};

/// Sum of unsigned distances from `point` to the planes of `set`.
pub fn unsigned_distance_sum(point: &VectorN, set: &HyperplaneSet) -> Result<f64> {
    set.unsigned_distance_sum(point)
}
