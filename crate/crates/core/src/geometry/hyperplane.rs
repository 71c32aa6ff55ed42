use crate::error::{GeometryError, Result};
use crate::geometry::VectorN;

/// Largest allowed deviation of a stored normal from unit length.
pub const UNIT_NORMAL_TOL: f64 = 1e-9;

/// Normals shorter than this cannot be normalized.
pub const MIN_NORMAL_LENGTH: f64 = 1e-12;

/// Default absolute tolerance on the Viviani defect.
pub const DEFAULT_VIVIANI_TOL: f64 = 1e-9;

/// The hyperplane `{x : normal . x = offset}` together with the side its unit
/// normal points to.
///
/// Signed distances are positive on the side the normal points away from and
/// negative on the side it points into.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientedHyperplane {
    normal: VectorN,
    offset: f64,
}

impl OrientedHyperplane {
    /// Builds a hyperplane from an already-unit normal. Normals off unit
    /// length by more than [`UNIT_NORMAL_TOL`] are rejected, not normalized.
    pub fn new(normal: VectorN, offset: f64) -> Result<Self> {
        if !offset.is_finite() {
            return Err(GeometryError::NonFiniteOffset(offset));
        }
        let norm = normal.norm();
        if (norm - 1.0).abs() > UNIT_NORMAL_TOL {
            return Err(GeometryError::NonUnitNormal { norm });
        }
        Ok(Self { normal, offset })
    }

    /// The hyperplane through `anchor` with normal `normal_raw / |normal_raw|`.
    pub fn from_anchor(normal_raw: &VectorN, anchor: &VectorN) -> Result<Self> {
        normal_raw.check_dim(anchor)?;
        let norm = normal_raw.norm();
        let normal = normal_raw
            .normalized(MIN_NORMAL_LENGTH)
            .ok_or(GeometryError::ZeroNormal { norm })?;
        let offset = normal.dot(anchor);
        Ok(Self { normal, offset })
    }

    pub fn normal(&self) -> &VectorN {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// Same normal, different offset.
    pub fn with_offset(&self, offset: f64) -> Result<Self> {
        Self::new(self.normal.clone(), offset)
    }

    /// `offset - normal . point`: negative exactly when `point` lies in the
    /// open half-space the normal points into.
    pub fn signed_distance(&self, point: &VectorN) -> Result<f64> {
        self.normal.check_dim(point)?;
        Ok(self.offset - self.normal.dot(point))
    }

    /// Orthogonal projection of `point` onto the hyperplane.
    pub fn project(&self, point: &VectorN) -> Result<VectorN> {
        let d = self.signed_distance(point)?;
        Ok(point.add_scaled(d, &self.normal))
    }
}

/// Convenience wrapper for [`OrientedHyperplane::from_anchor`].
pub fn make_hyperplane_from_anchor(
    normal_raw: &VectorN,
    anchor: &VectorN,
) -> Result<OrientedHyperplane> {
    OrientedHyperplane::from_anchor(normal_raw, anchor)
}

/// Convenience wrapper for [`OrientedHyperplane::signed_distance`].
pub fn signed_distance(point: &VectorN, plane: &OrientedHyperplane) -> Result<f64> {
    plane.signed_distance(point)
}

/// A nonempty ordered multiset of oriented hyperplanes of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneSet {
    planes: Vec<OrientedHyperplane>,
}

impl HyperplaneSet {
    pub fn new(planes: Vec<OrientedHyperplane>) -> Result<Self> {
        let first = planes
            .first()
            .ok_or(GeometryError::Empty("hyperplane set"))?;
        let dim = first.dim();
        if let Some(bad) = planes.iter().find(|p| p.dim() != dim) {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self { planes })
    }

    pub fn planes(&self) -> &[OrientedHyperplane] {
        &self.planes
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.planes[0].dim()
    }

    pub fn iter(&self) -> impl Iterator<Item = &OrientedHyperplane> {
        self.planes.iter()
    }

    fn check_point(&self, point: &VectorN) -> Result<()> {
        if point.dim() == self.dim() {
            Ok(())
        } else {
            Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: point.dim(),
            })
        }
    }

    /// Signed distances from `point` to every plane, in order.
    pub fn signed_distances(&self, point: &VectorN) -> Result<Vec<f64>> {
        self.check_point(point)?;
        Ok(self
            .planes
            .iter()
            .map(|p| p.offset - p.normal.dot(point))
            .collect())
    }

    /// The signed-distance sum `v(point)`.
    pub fn viviani_value(&self, point: &VectorN) -> Result<f64> {
        Ok(self.signed_distances(point)?.into_iter().sum())
    }

    /// Sum of absolute distances from `point` to the planes.
    pub fn unsigned_distance_sum(&self, point: &VectorN) -> Result<f64> {
        Ok(self
            .signed_distances(point)?
            .into_iter()
            .map(f64::abs)
            .sum())
    }

    pub fn normal_sum(&self) -> VectorN {
        VectorN::sum(self.planes.iter().map(|p| &p.normal)).expect("set is nonempty")
    }

    /// Length of the normal sum; zero exactly when `v` is constant.
    pub fn viviani_defect(&self) -> f64 {
        self.normal_sum().norm()
    }

    /// Defect test at [`DEFAULT_VIVIANI_TOL`].
    pub fn is_viviani(&self) -> bool {
        self.is_viviani_with_tol(DEFAULT_VIVIANI_TOL)
    }

    /// `tol` must be positive.
    pub fn is_viviani_with_tol(&self, tol: f64) -> bool {
        debug_assert!(tol > 0.0, "Viviani tolerance must be positive");
        self.viviani_defect() <= tol
    }

    /// Gradient of the affine function `v`, i.e. minus the normal sum.
    pub fn viviani_gradient(&self) -> VectorN {
        -&self.normal_sum()
    }

    /// Unit direction along which `v` decreases at unit rate per unit defect,
    /// or `None` for a Viviani set. Level sets of `v` are orthogonal to it.
    pub fn level_set_direction(&self) -> Option<VectorN> {
        if self.is_viviani() {
            return None;
        }
        self.normal_sum().normalized(0.0)
    }

    /// Replaces every offset, keeping normals and order.
    pub fn with_offsets(&self, offsets: &[f64]) -> Result<Self> {
        if offsets.len() != self.len() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.len(),
                found: offsets.len(),
            });
        }
        let planes = self
            .planes
            .iter()
            .zip(offsets)
            .map(|(p, &c)| p.with_offset(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(planes)
    }
}

impl<'a> IntoIterator for &'a HyperplaneSet {
    type Item = &'a OrientedHyperplane;
    type IntoIter = std::slice::Iter<'a, OrientedHyperplane>;

    fn into_iter(self) -> Self::IntoIter {
        self.planes.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(c: &[f64]) -> VectorN {
        VectorN::from_slice(c).unwrap()
    }

    fn plane(n: &[f64], c: f64) -> OrientedHyperplane {
        OrientedHyperplane::new(v(n), c).unwrap()
    }

    #[test]
    fn anchor_constructor_normalizes() {
        let p = make_hyperplane_from_anchor(&v(&[2.0, 0.0]), &v(&[1.0, 5.0])).unwrap();
        assert_eq!(p.normal().coords(), &[1.0, 0.0]);
        assert_eq!(p.offset(), 1.0);

        let p = make_hyperplane_from_anchor(&v(&[0.0, 0.0, 3.0]), &v(&[1.0, 1.0, -2.0])).unwrap();
        assert_eq!(p.normal().coords(), &[0.0, 0.0, 1.0]);
        assert_eq!(p.offset(), -2.0);
        assert_eq!(p.signed_distance(&v(&[1.0, 1.0, -2.0])).unwrap(), 0.0);
    }

    #[test]
    fn anchor_constructor_errors() {
        assert!(matches!(
            make_hyperplane_from_anchor(&v(&[0.0, 0.0]), &v(&[0.0, 0.0])),
            Err(GeometryError::ZeroNormal { .. })
        ));
        assert!(matches!(
            make_hyperplane_from_anchor(&v(&[1.0, 0.0]), &v(&[0.0, 0.0, 0.0])),
            Err(GeometryError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn plain_constructor_rejects_non_unit() {
        assert!(matches!(
            OrientedHyperplane::new(v(&[2.0, 0.0]), 1.0),
            Err(GeometryError::NonUnitNormal { .. })
        ));
        assert!(OrientedHyperplane::new(v(&[1.0 + 1e-10, 0.0]), 1.0).is_ok());
        assert!(OrientedHyperplane::new(v(&[1.0, 0.0]), f64::NAN).is_err());
    }

    #[test]
    fn signed_distance_convention() {
        let p = plane(&[1.0, 0.0], 1.0);
        assert_eq!(signed_distance(&v(&[0.0, 0.0]), &p).unwrap(), 1.0);
        assert_eq!(signed_distance(&v(&[3.0, 0.0]), &p).unwrap(), -2.0);
        assert_eq!(signed_distance(&v(&[1.0, 7.0]), &p).unwrap(), 0.0);
        assert!(signed_distance(&v(&[1.0]), &p).is_err());
    }

    #[test]
    fn antiparallel_pair_is_constant() {
        let s =
            HyperplaneSet::new(vec![plane(&[-1.0, 0.0], 0.0), plane(&[1.0, 0.0], 1.0)]).unwrap();
        for p in [[0.0, 0.0], [5.0, -3.0], [-100.0, 2.5]] {
            assert_abs_diff_eq!(s.viviani_value(&v(&p)).unwrap(), 1.0, epsilon = 1e-12);
        }
        assert!(s.is_viviani());
        assert!(s.level_set_direction().is_none());
    }

    #[test]
    fn single_plane_gradient_and_level_direction() {
        let s = HyperplaneSet::new(vec![plane(&[0.0, 1.0], 0.5)]).unwrap();
        assert_eq!(s.normal_sum().coords(), &[0.0, 1.0]);
        assert_eq!(s.viviani_defect(), 1.0);
        assert_eq!(s.viviani_gradient().coords(), &[-0.0, -1.0]);
        let u = s.level_set_direction().unwrap();
        assert_eq!(u.coords(), &[0.0, 1.0]);
        let p = v(&[0.3, -2.0]);
        let t = 1.75;
        let moved = p.add_scaled(t, &u);
        assert_abs_diff_eq!(
            s.viviani_value(&moved).unwrap() - s.viviani_value(&p).unwrap(),
            -t,
            epsilon = 1e-12
        );
    }

    #[test]
    fn duplicates_are_allowed() {
        let p = plane(&[0.0, 1.0], 2.0);
        let s = HyperplaneSet::new(vec![p.clone(), p]).unwrap();
        assert_eq!(s.viviani_gradient().coords(), &[-0.0, -2.0]);
    }

    #[test]
    fn two_orthogonal_planes_direction() {
        let s = HyperplaneSet::new(vec![plane(&[1.0, 0.0], 0.0), plane(&[0.0, 1.0], 0.0)]).unwrap();
        let u = s.level_set_direction().unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(u[0], h, epsilon = 1e-15);
        assert_abs_diff_eq!(u[1], h, epsilon = 1e-15);
    }

    #[test]
    fn unit_cube_value_is_three() {
        let mut planes = Vec::new();
        for axis in 0..3 {
            let e = VectorN::basis(3, axis).unwrap();
            planes.push(OrientedHyperplane::new(e.clone(), 1.0).unwrap());
            planes.push(OrientedHyperplane::new(-&e, 0.0).unwrap());
        }
        let cube = HyperplaneSet::new(planes).unwrap();
        assert!(cube.normal_sum().is_zero());
        assert_eq!(cube.viviani_defect(), 0.0);
        for p in [[0.5, 0.5, 0.5], [0.1, 0.9, 0.3], [7.0, -2.0, 11.0]] {
            assert_abs_diff_eq!(cube.viviani_value(&v(&p)).unwrap(), 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn set_rejects_empty_and_mixed_dimensions() {
        assert!(matches!(
            HyperplaneSet::new(vec![]),
            Err(GeometryError::Empty(_))
        ));
        assert!(matches!(
            HyperplaneSet::new(vec![plane(&[1.0, 0.0], 0.0), plane(&[1.0, 0.0, 0.0], 0.0)]),
            Err(GeometryError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn offsets_do_not_affect_verdict() {
        let s = HyperplaneSet::new(vec![
            plane(&[1.0, 0.0], 0.0),
            plane(&[-0.5, 3f64.sqrt() / 2.0], 0.0),
            plane(&[-0.5, -(3f64.sqrt()) / 2.0], 0.0),
        ])
        .unwrap();
        let shifted = s.with_offsets(&[3.0, -7.5, 1e3]).unwrap();
        assert_eq!(s.viviani_defect(), shifted.viviani_defect());
        assert!(shifted.is_viviani());
    }
}
