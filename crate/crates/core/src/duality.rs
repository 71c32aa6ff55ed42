//! Passing between Fermat configurations and hyperplane sets with cancelling
//! normals.
//!
//! A Fermat point `P` distinct from the inputs `P_i` has unit directions
//! `(P_i - P)/|P_i - P|` that sum to zero, so the hyperplanes through the
//! `P_i` with those normals form a Viviani set. Conversely, projecting a point
//! that lies on one side of every plane of a Viviani set gives points whose
//! Fermat point it is: the total distance from `P` equals `|v(P)|`, and `v`
//! takes the same value everywhere while the total distance from any other
//! point is at least `|v|`.

use crate::error::{GeometryError, Result};
use crate::fermat::{geometric_median, MedianOptions, PointSet, COINCIDENCE_EPS};
use crate::geometry::{HyperplaneSet, OrientedHyperplane, VectorN, DEFAULT_VIVIANI_TOL};
use crate::polytope::RegularPolygon;

/// Per-point bound on `|direction_sum_at(P)|` accepted as a Fermat point.
pub const FERMAT_CERTIFICATE_TOL: f64 = 1e-6;

/// Slack admitted by the one-sidedness test.
pub const ONE_SIDED_SLACK: f64 = 1e-12;

/// Orthogonal projection of `point` onto `plane`.
pub fn project_onto(point: &VectorN, plane: &OrientedHyperplane) -> Result<VectorN> {
    plane.project(point)
}

/// Hyperplanes through each input point with unit normal pointing away from
/// the Fermat point `fermat`.
pub fn fermat_to_viviani(points: &PointSet, fermat: &VectorN) -> Result<HyperplaneSet> {
    let directions = points.direction_sum_at(fermat)?;
    let bound = points.len() as f64 * FERMAT_CERTIFICATE_TOL;
    let residual = directions.norm();
    if residual > bound {
        return Err(GeometryError::NotAFermatPoint { residual, bound });
    }
    let planes = points
        .points()
        .iter()
        .map(|p| OrientedHyperplane::from_anchor(&(p - fermat), p))
        .collect::<Result<Vec<_>>>()?;
    HyperplaneSet::new(planes)
}

/// Projections of `point` onto every plane of a Viviani set, at the default
/// Viviani tolerance.
pub fn viviani_to_fermat(set: &HyperplaneSet, point: &VectorN) -> Result<PointSet> {
    viviani_to_fermat_with_tol(set, point, DEFAULT_VIVIANI_TOL)
}

/// [`viviani_to_fermat`] with an explicit tolerance on the defect.
pub fn viviani_to_fermat_with_tol(
    set: &HyperplaneSet,
    point: &VectorN,
    tol: f64,
) -> Result<PointSet> {
    let defect = set.viviani_defect();
    if defect > tol {
        return Err(GeometryError::NotViviani { defect, tol });
    }
    let distances = set.signed_distances(point)?;
    let positive = distances.iter().position(|&d| d > ONE_SIDED_SLACK);
    let negative = distances.iter().position(|&d| d < -ONE_SIDED_SLACK);
    if let (Some(positive), Some(negative)) = (positive, negative) {
        return Err(GeometryError::MixedSigns { positive, negative });
    }
    let projections = set
        .iter()
        .zip(distances)
        .map(|(plane, d)| point.add_scaled(d, plane.normal()))
        .collect();
    PointSet::new(projections)
}

/// Checks that the center of a regular polygon is the Fermat point of points
/// taken one on each center-to-vertex segment.
///
/// `spokes[i]` must lie on the segment from the center to vertex `i`,
/// excluding the center itself.
pub fn spoke_points_median_check(polygon: &RegularPolygon, spokes: &[VectorN]) -> Result<bool> {
    let vertices = polygon.vertices();
    if spokes.len() != vertices.len() {
        return Err(GeometryError::VertexCount {
            expected: vertices.len(),
            found: spokes.len(),
        });
    }
    let center = polygon.center();
    let radius = polygon.circumradius();
    for (i, (b, a)) in spokes.iter().zip(&vertices).enumerate() {
        center.check_dim(b)?;
        let spoke = a - center;
        let offset = b - center;
        let s = offset.dot(&spoke) / spoke.norm_squared();
        let off_line = offset.add_scaled(-s, &spoke).norm();
        if off_line > 1e-9 * radius || s <= COINCIDENCE_EPS || s > 1.0 + 1e-9 {
            return Err(GeometryError::SpokeViolation(i));
        }
    }
    let result = geometric_median(&PointSet::new(spokes.to_vec())?, MedianOptions::default());
    Ok(result.point.distance(center) <= 1e-6 * radius)
}
