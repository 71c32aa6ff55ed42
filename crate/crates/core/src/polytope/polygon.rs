use std::f64::consts::TAU;

use crate::error::{GeometryError, Result};
use crate::geometry::{HyperplaneSet, OrientedHyperplane, VectorN};

/// Relative tolerance used by the polygon validity checks.
const POLYGON_EPS: f64 = 1e-12;

/// Default relative tolerance of the triangle and quadrilateral classifiers.
pub const DEFAULT_SHAPE_TOL: f64 = 1e-9;

/// A strictly convex planar polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<VectorN>,
    diameter: f64,
}

fn cross(a: &VectorN, b: &VectorN) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

impl ConvexPolygon {
    /// Validates and stores the vertices. Clockwise input is reversed to
    /// counterclockwise, keeping the first vertex in place.
    pub fn new(mut vertices: Vec<VectorN>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        if let Some(bad) = vertices.iter().find(|v| v.dim() != 2) {
            return Err(GeometryError::DimensionMismatch {
                expected: 2,
                found: bad.dim(),
            });
        }
        let k = vertices.len();
        let diameter = max_pairwise_distance(&vertices);
        for i in 0..k {
            for j in i + 1..k {
                if vertices[i].distance(&vertices[j]) <= POLYGON_EPS * diameter {
                    return Err(GeometryError::RepeatedVertex {
                        first: i,
                        second: j,
                    });
                }
            }
        }

        if signed_area(&vertices) < 0.0 {
            vertices[1..].reverse();
        }

        let edges = edge_vectors(&vertices);
        let min_cross = POLYGON_EPS * diameter * diameter;
        let mut turning = 0.0;
        for i in 0..k {
            let (a, b) = (&edges[i], &edges[(i + 1) % k]);
            let c = cross(a, b);
            if c <= min_cross {
                return Err(GeometryError::NotConvex((i + 1) % k));
            }
            turning += c.atan2(a.dot(b));
        }
        // Left turns everywhere still admits star polygons winding twice.
        if (turning - TAU).abs() > 1e-6 {
            return Err(GeometryError::NotConvex(0));
        }

        Ok(Self { vertices, diameter })
    }

    pub fn from_coords(coords: &[[f64; 2]]) -> Result<Self> {
        let vertices = coords
            .iter()
            .map(|c| VectorN::from_slice(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[VectorN] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Edge vectors `v[i+1] - v[i]`, cyclically.
    pub fn edges(&self) -> Vec<VectorN> {
        edge_vectors(&self.vertices)
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        self.edges().iter().map(VectorN::norm).collect()
    }

    pub fn vertex_centroid(&self) -> VectorN {
        let sum = VectorN::sum(&self.vertices).expect("polygon has vertices");
        sum.scale(1.0 / self.len() as f64)
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// One hyperplane per edge, through both endpoints, with the outward unit
    /// normal.
    pub fn to_hyperplanes(&self) -> HyperplaneSet {
        let planes = self
            .vertices
            .iter()
            .zip(self.edges())
            .map(|(start, e)| {
                let outward = VectorN::from_vec_unchecked(vec![e[1], -e[0]]);
                OrientedHyperplane::from_anchor(&outward, start)
                    .expect("edges of a validated polygon have positive length")
            })
            .collect();
        HyperplaneSet::new(planes).expect("polygon has at least three edges")
    }

    pub fn is_viviani(&self, tol: f64) -> bool {
        self.to_hyperplanes().is_viviani_with_tol(tol)
    }
}

fn edge_vectors(vertices: &[VectorN]) -> Vec<VectorN> {
    let k = vertices.len();
    (0..k)
        .map(|i| &vertices[(i + 1) % k] - &vertices[i])
        .collect()
}

fn signed_area(vertices: &[VectorN]) -> f64 {
    let k = vertices.len();
    0.5 * (0..k)
        .map(|i| cross(&vertices[i], &vertices[(i + 1) % k]))
        .sum::<f64>()
}

pub(crate) fn max_pairwise_distance(points: &[VectorN]) -> f64 {
    let mut best: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.max(a.distance(b));
        }
    }
    best
}

pub fn polygon_to_hyperplanes(polygon: &ConvexPolygon) -> HyperplaneSet {
    polygon.to_hyperplanes()
}

pub fn is_viviani_polygon(polygon: &ConvexPolygon, tol: f64) -> bool {
    polygon.is_viviani(tol)
}

/// Builds the equiangular polygon with the given side lengths: the first edge
/// leaves the origin along +x and each following edge turns by `2*pi/k`.
pub fn make_equiangular_polygon(side_lengths: &[f64]) -> Result<ConvexPolygon> {
    let k = side_lengths.len();
    if k < 3 {
        return Err(GeometryError::TooFewVertices(k));
    }
    if let Some((index, &value)) = side_lengths
        .iter()
        .enumerate()
        .find(|(_, s)| !(s.is_finite() && **s > 0.0))
    {
        return Err(GeometryError::NonPositiveLength { index, value });
    }
    let directions: Vec<(f64, f64)> = (0..k)
        .map(|i| {
            let angle = TAU * i as f64 / k as f64;
            (angle.cos(), angle.sin())
        })
        .collect();
    let (rx, ry) = side_lengths
        .iter()
        .zip(&directions)
        .fold((0.0, 0.0), |(x, y), (s, (c, sn))| (x + s * c, y + s * sn));
    let residual = rx.hypot(ry);
    let perimeter: f64 = side_lengths.iter().sum();
    if residual > 1e-9 * perimeter {
        return Err(GeometryError::ClosureViolation { residual });
    }

    let mut vertices = Vec::with_capacity(k);
    let (mut x, mut y) = (0.0, 0.0);
    for (s, (c, sn)) in side_lengths.iter().zip(&directions).take(k - 1) {
        vertices.push(VectorN::from_vec_unchecked(vec![x, y]));
        x += s * c;
        y += s * sn;
    }
    vertices.push(VectorN::from_vec_unchecked(vec![x, y]));
    ConvexPolygon::new(vertices)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleClass {
    Equilateral,
    NotEquilateral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrilateralClass {
    Parallelogram,
    NotParallelogram,
}

/// Equilateral iff the side lengths agree within `rel_tol * diameter`.
pub fn classify_triangle(polygon: &ConvexPolygon, rel_tol: f64) -> Result<TriangleClass> {
    if polygon.len() != 3 {
        return Err(GeometryError::VertexCount {
            expected: 3,
            found: polygon.len(),
        });
    }
    let sides = polygon.side_lengths();
    let max = sides.iter().copied().fold(f64::MIN, f64::max);
    let min = sides.iter().copied().fold(f64::MAX, f64::min);
    Ok(if max - min <= rel_tol * polygon.diameter() {
        TriangleClass::Equilateral
    } else {
        TriangleClass::NotEquilateral
    })
}

/// Parallelogram iff both pairs of opposite edge vectors cancel within
/// `rel_tol * diameter`.
pub fn classify_quadrilateral(polygon: &ConvexPolygon, rel_tol: f64) -> Result<QuadrilateralClass> {
    if polygon.len() != 4 {
        return Err(GeometryError::VertexCount {
            expected: 4,
            found: polygon.len(),
        });
    }
    let e = polygon.edges();
    let tol = rel_tol * polygon.diameter();
    Ok(
        if (&e[0] + &e[2]).norm() <= tol && (&e[1] + &e[3]).norm() <= tol {
            QuadrilateralClass::Parallelogram
        } else {
            QuadrilateralClass::NotParallelogram
        },
    )
}

/// A regular polygon given by center, circumradius, side count and the polar
/// angle of its first vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularPolygon {
    center: VectorN,
    circumradius: f64,
    sides: usize,
    rotation: f64,
}

impl RegularPolygon {
    pub fn new(center: VectorN, circumradius: f64, sides: usize, rotation: f64) -> Result<Self> {
        if center.dim() != 2 {
            return Err(GeometryError::DimensionMismatch {
                expected: 2,
                found: center.dim(),
            });
        }
        if sides < 3 {
            return Err(GeometryError::TooFewVertices(sides));
        }
        if !(circumradius.is_finite() && circumradius > 0.0) {
            return Err(GeometryError::NonPositiveLength {
                index: 0,
                value: circumradius,
            });
        }
        if !rotation.is_finite() {
            return Err(GeometryError::NonFinite {
                index: 0,
                value: rotation,
            });
        }
        Ok(Self {
            center,
            circumradius,
            sides,
            rotation,
        })
    }

    pub fn center(&self) -> &VectorN {
        &self.center
    }

    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    pub fn sides(&self) -> usize {
        self.sides
    }

    pub fn apothem(&self) -> f64 {
        self.circumradius * (std::f64::consts::PI / self.sides as f64).cos()
    }

    pub fn vertices(&self) -> Vec<VectorN> {
        (0..self.sides)
            .map(|i| {
                let angle = self.rotation + TAU * i as f64 / self.sides as f64;
                VectorN::from_vec_unchecked(vec![
                    self.center[0] + self.circumradius * angle.cos(),
                    self.center[1] + self.circumradius * angle.sin(),
                ])
            })
            .collect()
    }

    pub fn to_polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(self.vertices()).expect("regular polygons are strictly convex")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const S3: f64 = 1.732_050_807_568_877_2;

    fn equilateral_side_two() -> ConvexPolygon {
        // side 2, centroid at the origin
        let h = S3;
        ConvexPolygon::from_coords(&[[-1.0, -h / 3.0], [1.0, -h / 3.0], [0.0, 2.0 * h / 3.0]])
            .unwrap()
    }

    #[test]
    fn unit_square_planes() {
        let sq =
            ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let s = polygon_to_hyperplanes(&sq);
        let normals: Vec<_> = s.iter().map(|p| p.normal().coords().to_vec()).collect();
        let offsets: Vec<_> = s.iter().map(|p| p.offset()).collect();
        let expect_n = [[0.0, -1.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]];
        for (n, e) in normals.iter().zip(expect_n) {
            assert_abs_diff_eq!(n[0], e[0], epsilon = 1e-15);
            assert_abs_diff_eq!(n[1], e[1], epsilon = 1e-15);
        }
        for (c, e) in offsets.iter().zip([0.0, 1.0, 1.0, 0.0]) {
            assert_abs_diff_eq!(*c, e, epsilon = 1e-15);
        }
    }

    #[test]
    fn equilateral_normals_at_120_degrees() {
        let s = equilateral_side_two().to_hyperplanes();
        let n: Vec<_> = s.iter().map(|p| p.normal().clone()).collect();
        for i in 0..3 {
            assert_abs_diff_eq!(n[i].dot(&n[(i + 1) % 3]), -0.5, epsilon = 1e-12);
        }
        assert!(s.viviani_defect() <= 1e-15);
        // v equals the height s*sqrt(3)/2 = sqrt(3)
        let v = s.viviani_value(&VectorN::zeros(2).unwrap()).unwrap();
        assert_abs_diff_eq!(v, S3, epsilon = 1e-12);
    }

    #[test]
    fn right_triangle_hypotenuse() {
        let t = ConvexPolygon::from_coords(&[[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]]).unwrap();
        let s = t.to_hyperplanes();
        let hyp = &s.planes()[1];
        assert_abs_diff_eq!(hyp.normal()[0], 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(hyp.normal()[1], 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(hyp.offset(), 2.4, epsilon = 1e-15);
        // normals (0,-1), (3/5,4/5), (-1,0) sum to (-2/5,-1/5)
        assert_abs_diff_eq!(s.viviani_defect(), 0.2f64.sqrt(), epsilon = 1e-15);
        assert!(s.viviani_defect() > 0.1);
    }

    #[test]
    fn clockwise_input_is_reoriented() {
        let cw =
            ConvexPolygon::from_coords(&[[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(cw.area() > 0.0);
        assert_eq!(cw.vertices()[0].coords(), &[0.0, 0.0]);
        let centroid = cw.vertex_centroid();
        assert!(cw
            .to_hyperplanes()
            .signed_distances(&centroid)
            .unwrap()
            .iter()
            .all(|&d| d > 0.0));
    }

    #[test]
    fn invalid_polygons() {
        assert_eq!(
            ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0]]),
            Err(GeometryError::TooFewVertices(2))
        );
        assert!(matches!(
            ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
            Err(GeometryError::RepeatedVertex { .. })
        ));
        // collinear vertex
        assert!(matches!(
            ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [0.0, 1.0]]),
            Err(GeometryError::NotConvex(_))
        ));
        // reflex vertex
        assert!(matches!(
            ConvexPolygon::from_coords(&[
                [0.0, 0.0],
                [2.0, 0.0],
                [1.0, 0.5],
                [2.0, 2.0],
                [0.0, 2.0]
            ]),
            Err(GeometryError::NotConvex(_))
        ));
        // pentagram: every turn is a left turn but it winds twice
        let star: Vec<[f64; 2]> = (0..5)
            .map(|i| {
                let a = TAU * (2 * i) as f64 / 5.0;
                [a.cos(), a.sin()]
            })
            .collect();
        assert!(matches!(
            ConvexPolygon::from_coords(&star),
            Err(GeometryError::NotConvex(_))
        ));
    }

    #[test]
    fn classic_quadrilaterals() {
        let para =
            ConvexPolygon::from_coords(&[[0.0, 0.0], [3.0, 0.0], [4.0, 2.0], [1.0, 2.0]]).unwrap();
        let trap =
            ConvexPolygon::from_coords(&[[0.0, 0.0], [4.0, 0.0], [3.0, 2.0], [1.0, 2.0]]).unwrap();
        let square =
            ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert!(is_viviani_polygon(&para, 1e-9));
        assert!(!is_viviani_polygon(&trap, 1e-9));
        assert_eq!(
            classify_quadrilateral(&para, DEFAULT_SHAPE_TOL).unwrap(),
            QuadrilateralClass::Parallelogram
        );
        assert_eq!(
            classify_quadrilateral(&trap, DEFAULT_SHAPE_TOL).unwrap(),
            QuadrilateralClass::NotParallelogram
        );
        assert_eq!(
            classify_quadrilateral(&square, DEFAULT_SHAPE_TOL).unwrap(),
            QuadrilateralClass::Parallelogram
        );
        assert!(classify_triangle(&square, DEFAULT_SHAPE_TOL).is_err());
    }

    #[test]
    fn classic_triangles() {
        let eq = ConvexPolygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [0.5, S3 / 2.0]]).unwrap();
        let right = ConvexPolygon::from_coords(&[[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]]).unwrap();
        assert_eq!(
            classify_triangle(&eq, DEFAULT_SHAPE_TOL).unwrap(),
            TriangleClass::Equilateral
        );
        assert_eq!(
            classify_triangle(&right, DEFAULT_SHAPE_TOL).unwrap(),
            TriangleClass::NotEquilateral
        );
        assert!(is_viviani_polygon(&eq, 1e-9));
        assert!(!is_viviani_polygon(&right, 1e-9));
        assert!(classify_quadrilateral(&eq, DEFAULT_SHAPE_TOL).is_err());
    }

    #[test]
    fn equiangular_rectangle() {
        let p = make_equiangular_polygon(&[2.0, 1.0, 2.0, 1.0]).unwrap();
        let expected = [[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]];
        for (v, e) in p.vertices().iter().zip(expected) {
            assert_abs_diff_eq!(v[0], e[0], epsilon = 1e-15);
            assert_abs_diff_eq!(v[1], e[1], epsilon = 1e-15);
        }
    }

    #[test]
    fn equiangular_regular_pentagon() {
        let p = make_equiangular_polygon(&[1.0; 5]).unwrap();
        let sides = p.side_lengths();
        for s in sides {
            assert_abs_diff_eq!(s, 1.0, epsilon = 1e-12);
        }
        assert!(p.to_hyperplanes().viviani_defect() <= 1e-12);
        assert!(is_viviani_polygon(&p, 1e-9));
    }

    #[test]
    fn equiangular_errors() {
        assert!(matches!(
            make_equiangular_polygon(&[1.0, 1.0, 2.0]),
            Err(GeometryError::ClosureViolation { .. })
        ));
        assert!(matches!(
            make_equiangular_polygon(&[1.0, 0.0, 1.0, 0.0]),
            Err(GeometryError::NonPositiveLength { index: 1, .. })
        ));
        assert!(matches!(
            make_equiangular_polygon(&[1.0, 1.0]),
            Err(GeometryError::TooFewVertices(2))
        ));
    }

    #[test]
    fn regular_polygon_apothem() {
        let r = RegularPolygon::new(VectorN::zeros(2).unwrap(), 2.0, 6, 0.3).unwrap();
        assert_abs_diff_eq!(r.apothem(), S3, epsilon = 1e-12);
        let s = r.to_polygon().to_hyperplanes();
        for plane in s.iter() {
            assert_abs_diff_eq!(plane.offset(), S3, epsilon = 1e-12);
        }
    }
}
