//! Geometric median (Fermat point) of a finite point set.
//!
//! The solver is Weiszfeld's fixed-point iteration started at the centroid.
//! Before iterating, every input point is tested against the anchor
//! optimality condition: a point `P_i` of multiplicity `m` minimises the total
//! distance iff the unit vectors towards the remaining points sum to a vector
//! of length at most `m`. Collinear inputs have no unique minimiser and are
//! answered with a one-dimensional median.
//!
//! Weiszfeld converges sublinearly when the optimum lies close to an input
//! point, so after a fixed number of iterations the solver switches to damped
//! Newton steps. Every accepted step keeps the objective from rising.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::geometry::VectorN;
use crate::polytope::max_pairwise_distance;

/// Points closer than this fraction of the diameter are treated as equal.
pub const COINCIDENCE_EPS: f64 = 1e-12;

/// Per-point bound on the certificate residual of an interior optimum.
pub const CERTIFICATE_TOL: f64 = 1e-8;

/// Plain Weiszfeld iterations before switching to damped Newton steps.
/// Weiszfeld slows to a crawl when the optimum sits close to an input point.
const WEISZFELD_ITERATIONS: usize = 200;

/// Slack on the anchor optimality condition.
const ANCHOR_SLACK: f64 = 1e-9;

/// Singular-value ratio below which a point set counts as collinear.
const COLLINEAR_RATIO: f64 = 1e-12;

/// Scale of the escape step taken after landing on a non-optimal anchor, in
/// units of the coincidence radius.
const ESCAPE_FACTOR: f64 = 1e3;

/// A nonempty list of points sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<VectorN>,
}

impl PointSet {
    pub fn new(points: Vec<VectorN>) -> Result<Self> {
        let first = points.first().ok_or(GeometryError::Empty("point set"))?;
        let dim = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self { points })
    }

    pub fn from_coords<C: AsRef<[f64]>>(coords: &[C]) -> Result<Self> {
        Self::new(
            coords
                .iter()
                .map(|c| VectorN::from_slice(c.as_ref()))
                .collect::<Result<_>>()?,
        )
    }

    pub fn points(&self) -> &[VectorN] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn centroid(&self) -> VectorN {
        VectorN::sum(&self.points)
            .expect("point set is nonempty")
            .scale(1.0 / self.len() as f64)
    }

    pub fn diameter(&self) -> f64 {
        max_pairwise_distance(&self.points)
    }

    fn check_point(&self, x: &VectorN) -> Result<()> {
        self.points[0].check_dim(x)
    }

    /// Sum of distances from `x` to every point.
    pub fn total_distance(&self, x: &VectorN) -> Result<f64> {
        self.check_point(x)?;
        Ok(self.objective(x))
    }

    fn objective(&self, x: &VectorN) -> f64 {
        self.points.iter().map(|p| p.distance(x)).sum()
    }

    /// Sum of unit vectors from `x` towards every point.
    pub fn direction_sum_at(&self, x: &VectorN) -> Result<VectorN> {
        self.check_point(x)?;
        let eta = COINCIDENCE_EPS * self.diameter();
        if let Some(i) = self.points.iter().position(|p| p.distance(x) <= eta) {
            return Err(GeometryError::CoincidesWithAnchor(i));
        }
        Ok(self.unit_sum_excluding(x, eta).0)
    }

    /// Unit vectors from `x` towards every point farther than `eta`, summed,
    /// together with the number of points within `eta`.
    fn unit_sum_excluding(&self, x: &VectorN, eta: f64) -> (VectorN, usize) {
        let mut sum = vec![0.0; self.dim()];
        let mut near = 0;
        for p in &self.points {
            let d = p.distance(x);
            if d <= eta {
                near += 1;
                continue;
            }
            for ((s, a), b) in sum.iter_mut().zip(p.coords()).zip(x.coords()) {
                *s += (a - b) / d;
            }
        }
        (VectorN::from_vec_unchecked(sum), near)
    }

    /// Length of the minimal-norm subgradient of the total distance at `x`:
    /// `max(0, |sum of unit vectors to the other points| - multiplicity)`.
    pub fn certificate_residual(&self, x: &VectorN) -> Result<f64> {
        self.check_point(x)?;
        let eta = COINCIDENCE_EPS * self.diameter();
        let (sum, near) = self.unit_sum_excluding(x, eta);
        Ok((sum.norm() - near as f64).max(0.0))
    }
}

pub fn total_distance(x: &VectorN, points: &PointSet) -> Result<f64> {
    points.total_distance(x)
}

pub fn direction_sum_at(x: &VectorN, points: &PointSet) -> Result<VectorN> {
    points.direction_sum_at(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "anchor_index")]
pub enum MedianStatus {
    /// The minimiser is distinct from every input point.
    InteriorOptimum,
    /// The minimiser is the input point with this index.
    AnchorOptimum(usize),
    /// The points are collinear; `point` is one of the minimisers.
    NonUniqueCollinear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MedianResult {
    pub point: VectorN,
    pub objective: f64,
    pub status: MedianStatus,
    pub iterations: usize,
    /// Optimality certificate, see [`PointSet::certificate_residual`].
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MedianOptions {
    /// Stop once a step is shorter than `tol * (1 + |x|)`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for MedianOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 10_000,
        }
    }
}

pub fn geometric_median(points: &PointSet, options: MedianOptions) -> MedianResult {
    solve(points, options, None)
}

/// Like [`geometric_median`], also returning the objective at the start
/// point and after every iteration.
pub fn geometric_median_traced(
    points: &PointSet,
    options: MedianOptions,
) -> (MedianResult, Vec<f64>) {
    let mut trace = Vec::new();
    let result = solve(points, options, Some(&mut trace));
    if trace.is_empty() {
        // answered without iterating
        trace.push(result.objective);
    }
    (result, trace)
}

fn anchor_result(points: &PointSet, index: usize) -> MedianResult {
    let point = points.points[index].clone();
    MedianResult {
        objective: points.objective(&point),
        residual: points.certificate_residual(&point).expect("same dimension"),
        point,
        status: MedianStatus::AnchorOptimum(index),
        iterations: 0,
    }
}

fn solve(
    points: &PointSet,
    options: MedianOptions,
    mut trace: Option<&mut Vec<f64>>,
) -> MedianResult {
    let k = points.len();
    let diameter = points.diameter();
    if k == 1 || diameter == 0.0 {
        return anchor_result(points, 0);
    }
    if k == 2 || is_collinear(points) {
        return collinear_median(points);
    }

    let eta = COINCIDENCE_EPS * diameter;
    if let Some(i) = optimal_anchor(points, eta) {
        return anchor_result(points, i);
    }

    let target_residual = k as f64 * CERTIFICATE_TOL;
    let mut x = points.centroid();
    let mut fx = points.objective(&x);
    let mut best = (x.clone(), fx);
    if let Some(t) = trace.as_deref_mut() {
        t.push(fx);
    }
    let mut iterations = 0;
    while iterations < options.max_iter {
        iterations += 1;
        let newton = if iterations > WEISZFELD_ITERATIONS {
            newton_step(points, &x, fx, eta)
        } else {
            None
        };
        let next = newton.unwrap_or_else(|| weiszfeld_step(points, &x, eta));
        let step = next.distance(&x);
        x = next;
        fx = points.objective(&x);
        if let Some(t) = trace.as_deref_mut() {
            t.push(fx);
        }
        if fx < best.1 {
            best = (x.clone(), fx);
        }
        let scale = 1.0 + x.norm();
        if step <= options.tol * scale {
            let residual = points.certificate_residual(&x).expect("same dimension");
            if residual <= target_residual || step <= 4.0 * f64::EPSILON * scale {
                break;
            }
        }
    }

    // Near the optimum the objective is flat to rounding, so an earlier
    // iterate can look marginally better while carrying a worse certificate.
    // Prefer the final iterate unless it is genuinely worse.
    let (point, objective) = if fx <= best.1 + 8.0 * f64::EPSILON * (1.0 + best.1) {
        (x, fx)
    } else {
        best
    };
    MedianResult {
        residual: points.certificate_residual(&point).expect("same dimension"),
        point,
        objective,
        status: MedianStatus::InteriorOptimum,
        iterations,
    }
}

/// Damped Newton step on the total distance. The Hessian is `sum (I - u u^T) / d`, positive definite for
/// non-collinear points. Returns `None` when no step length in the
/// backtracking schedule keeps the objective from rising, or a trial point
/// would land on an input point.
fn newton_step(points: &PointSet, x: &VectorN, fx: f64, eta: f64) -> Option<VectorN> {
    let dim = points.dim();
    let mut hessian = DMatrix::<f64>::zeros(dim, dim);
    let mut gradient = DVector::<f64>::zeros(dim);
    for p in &points.points {
        let d = p.distance(x);
        if d <= eta {
            return None;
        }
        let u = DVector::from_iterator(
            dim,
            p.coords().iter().zip(x.coords()).map(|(a, b)| (a - b) / d),
        );
        gradient -= &u;
        hessian += (DMatrix::identity(dim, dim) - &u * u.transpose()) / d;
    }
    let delta = hessian.cholesky()?.solve(&(-gradient));
    let certificate = |y: &VectorN| points.certificate_residual(y).unwrap_or(f64::INFINITY);
    let slack = 4.0 * f64::EPSILON * (1.0 + fx);
    let mut t = 1.0;
    for _ in 0..40 {
        let trial = VectorN::from_vec_unchecked(
            x.coords()
                .iter()
                .zip(delta.iter())
                .map(|(a, b)| a + t * b)
                .collect(),
        );
        if points.points.iter().any(|p| p.distance(&trial) <= eta) {
            t *= 0.5;
            continue;
        }
        // Close to the optimum the decrease drops below rounding; accept a
        // level step there only if it sharpens the certificate.
        let f = points.objective(&trial);
        if f < fx || (f <= fx + slack && certificate(&trial) < 0.5 * certificate(x)) {
            return Some(trial);
        }
        t *= 0.5;
    }
    None
}

/// One Weiszfeld update. An iterate that lands on an input point (already
/// known not to be optimal) is pushed off it along the descent direction.
fn weiszfeld_step(points: &PointSet, x: &VectorN, eta: f64) -> VectorN {
    let dim = points.dim();
    let mut numerator = vec![0.0; dim];
    let mut denominator = 0.0;
    for p in &points.points {
        let d = p.distance(x);
        if d <= eta {
            let (descent, _) = points.unit_sum_excluding(p, eta);
            let dir = descent
                .normalized(0.0)
                .expect("non-optimal anchors have a nonzero descent direction");
            return p.add_scaled(ESCAPE_FACTOR * eta, &dir);
        }
        let w = 1.0 / d;
        denominator += w;
        for (n, c) in numerator.iter_mut().zip(p.coords()) {
            *n += w * c;
        }
    }
    VectorN::from_vec_unchecked(numerator.into_iter().map(|n| n / denominator).collect())
}

/// First input point satisfying the anchor optimality condition, if any.
fn optimal_anchor(points: &PointSet, eta: f64) -> Option<usize> {
    points.points.iter().position(|p| {
        let (sum, near) = points.unit_sum_excluding(p, eta);
        sum.norm() <= near as f64 + ANCHOR_SLACK
    })
}

fn centered_matrix(points: &PointSet) -> DMatrix<f64> {
    let c = points.centroid();
    DMatrix::from_fn(points.len(), points.dim(), |i, j| {
        points.points[i][j] - c[j]
    })
}

fn is_collinear(points: &PointSet) -> bool {
    if points.dim() == 1 {
        return true;
    }
    let mut sv: Vec<f64> = centered_matrix(points)
        .singular_values()
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv.len() < 2 || sv[0] == 0.0 || sv[1] / sv[0] < COLLINEAR_RATIO
}

/// Median of collinear points: the middle point for odd counts, the midpoint
/// of the two middle points for even counts.
fn collinear_median(points: &PointSet) -> MedianResult {
    let k = points.len();
    let direction: Vec<f64> = if points.dim() == 1 {
        vec![1.0]
    } else {
        let svd = centered_matrix(points).svd(false, true);
        let v_t = svd.v_t.expect("requested right singular vectors");
        let top = svd
            .singular_values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("at least one singular value");
        v_t.row(top).iter().copied().collect()
    };
    let position = |p: &VectorN| {
        p.coords()
            .iter()
            .zip(&direction)
            .map(|(a, b)| a * b)
            .sum::<f64>()
    };
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        position(&points.points[a])
            .total_cmp(&position(&points.points[b]))
            .then(a.cmp(&b))
    });
    let point = if k % 2 == 1 {
        points.points[order[k / 2]].clone()
    } else {
        let (a, b) = (
            &points.points[order[k / 2 - 1]],
            &points.points[order[k / 2]],
        );
        (a + b).scale(0.5)
    };
    MedianResult {
        objective: points.objective(&point),
        residual: points.certificate_residual(&point).expect("same dimension"),
        point,
        status: MedianStatus::NonUniqueCollinear,
        iterations: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(c: &[f64]) -> VectorN {
        VectorN::from_slice(c).unwrap()
    }

    fn solve_default(coords: &[&[f64]]) -> MedianResult {
        geometric_median(
            &PointSet::from_coords(coords).unwrap(),
            MedianOptions::default(),
        )
    }

    #[test]
    fn total_distance_examples() {
        let a = PointSet::from_coords(&[[3.0, 4.0]]).unwrap();
        assert_eq!(total_distance(&v(&[0.0, 0.0]), &a).unwrap(), 5.0);
        let sq =
            PointSet::from_coords(&[[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap();
        assert_abs_diff_eq!(
            total_distance(&v(&[0.0, 0.0]), &sq).unwrap(),
            4.0 * 2f64.sqrt(),
            epsilon = 1e-14
        );
        let at_corner = total_distance(&v(&[1.0, 1.0]), &sq).unwrap();
        assert_abs_diff_eq!(at_corner, 4.0 + 8f64.sqrt(), epsilon = 1e-14);
        assert!(total_distance(&v(&[0.0]), &sq).is_err());
    }

    #[test]
    fn direction_sum_examples() {
        let a = PointSet::from_coords(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let s = direction_sum_at(&v(&[0.5, 0.5]), &a).unwrap();
        assert_abs_diff_eq!(s[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s[1], -(2f64.sqrt()), epsilon = 1e-15);
        assert_eq!(
            direction_sum_at(&v(&[1.0, 0.0]), &a),
            Err(GeometryError::CoincidesWithAnchor(1))
        );

        let h = 3f64.sqrt() / 2.0;
        let tri = PointSet::from_coords(&[[0.0, 0.0], [1.0, 0.0], [0.5, h]]).unwrap();
        let s = direction_sum_at(&tri.centroid(), &tri).unwrap();
        assert!(s.norm() <= 1e-12);
    }

    #[test]
    fn equilateral_triangle_median_is_centroid() {
        let h = 3f64.sqrt() / 2.0;
        let r = solve_default(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, h]]);
        assert_eq!(r.status, MedianStatus::InteriorOptimum);
        assert_abs_diff_eq!(r.point[0], 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(r.point[1], h / 3.0, epsilon = 1e-9);
        assert!(r.residual <= 3e-8);
    }

    #[test]
    fn obtuse_triangle_anchor() {
        let r = solve_default(&[&[0.0, 0.0], &[10.0, 0.0], &[-10.0, 1.0]]);
        assert_eq!(r.status, MedianStatus::AnchorOptimum(0));
        assert_eq!(r.point.coords(), &[0.0, 0.0]);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn square_corners() {
        let r = solve_default(&[&[1.0, 1.0], &[-1.0, 1.0], &[-1.0, -1.0], &[1.0, -1.0]]);
        assert_eq!(r.status, MedianStatus::InteriorOptimum);
        assert!(r.point.norm() <= 1e-9);
        assert_abs_diff_eq!(r.objective, 4.0 * 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn single_and_repeated_points() {
        let r = solve_default(&[&[2.0, -1.0]]);
        assert_eq!(r.status, MedianStatus::AnchorOptimum(0));
        assert_eq!(r.objective, 0.0);
        let r = solve_default(&[&[2.0, -1.0], &[2.0, -1.0], &[2.0, -1.0]]);
        assert_eq!(r.status, MedianStatus::AnchorOptimum(0));
        assert_eq!(r.point.coords(), &[2.0, -1.0]);
        assert_eq!(r.objective, 0.0);
    }

    #[test]
    fn two_points_give_midpoint() {
        let r = solve_default(&[&[0.0, 0.0, 0.0], &[2.0, 4.0, -2.0]]);
        assert_eq!(r.status, MedianStatus::NonUniqueCollinear);
        assert_eq!(r.point.coords(), &[1.0, 2.0, -1.0]);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn collinear_odd_and_even() {
        let r = solve_default(&[
            &[0.0, 0.0],
            &[3.0, 3.0],
            &[1.0, 1.0],
            &[10.0, 10.0],
            &[-5.0, -5.0],
        ]);
        assert_eq!(r.status, MedianStatus::NonUniqueCollinear);
        assert_eq!(r.point.coords(), &[1.0, 1.0]);
        let r = solve_default(&[&[0.0, 0.0], &[3.0, 3.0], &[1.0, 1.0], &[10.0, 10.0]]);
        assert_eq!(r.point.coords(), &[2.0, 2.0]);
        assert_eq!(r.residual, 0.0);
        let r = solve_default(&[&[4.0], &[-1.0], &[2.0]]);
        assert_eq!(r.status, MedianStatus::NonUniqueCollinear);
        assert_eq!(r.point.coords(), &[2.0]);
    }

    #[test]
    fn repeated_anchor_with_multiplicity() {
        // two copies at the origin outweigh two unit pulls in orthogonal directions
        let r = solve_default(&[&[0.0, 0.0], &[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(r.status, MedianStatus::AnchorOptimum(0));
    }

    #[test]
    fn trace_is_monotone() {
        let a =
            PointSet::from_coords(&[[0.0, 0.0], [5.0, 0.3], [1.0, 4.0], [-2.0, 2.5], [0.2, -3.0]])
                .unwrap();
        let (r, trace) = geometric_median_traced(&a, MedianOptions::default());
        assert_eq!(r.status, MedianStatus::InteriorOptimum);
        assert_eq!(trace.len(), r.iterations + 1);
        for w in trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "{} -> {}", w[0], w[1]);
        }
        assert!(r.residual <= 5.0 * CERTIFICATE_TOL);
    }

    #[test]
    fn iterate_landing_on_anchor_escapes() {
        // the centroid coincides with the non-optimal input point (0,0)
        let a = PointSet::from_coords(&[
            [0.0, 0.0],
            [1.0, 2.0],
            [-1.0, 2.0],
            [0.5, 2.0],
            [-0.5, 2.0],
            [0.0, -8.0],
        ])
        .unwrap();
        assert!(a.centroid().norm() <= 1e-15);
        let r = geometric_median(&a, MedianOptions::default());
        assert_eq!(r.status, MedianStatus::InteriorOptimum);
        assert!(r.point.norm() > 1e-9);
        assert!(r.residual <= 5.0 * CERTIFICATE_TOL);
    }

    #[test]
    fn max_iter_exhaustion_returns_best_iterate() {
        let a = PointSet::from_coords(&[[0.0, 0.0], [5.0, 0.3], [1.0, 4.0]]).unwrap();
        let r = geometric_median(
            &a,
            MedianOptions {
                tol: 1e-10,
                max_iter: 2,
            },
        );
        assert_eq!(r.iterations, 2);
        assert!(r.objective <= a.total_distance(&a.centroid()).unwrap());
    }

    #[test]
    fn optimum_next_to_an_input_point_meets_certificate() {
        // the first point is barely non-optimal, so the minimiser sits about
        // 1e-4 away from it; plain Weiszfeld stalls here
        let a = PointSet::from_coords(&[
            [-0.04050997926384836, 0.7376696977883115],
            [-0.24350039264696877, -0.5289990948724701],
            [0.5005231287850904, 0.9441482961520102],
        ])
        .unwrap();
        let (r, trace) = geometric_median_traced(&a, MedianOptions::default());
        assert_eq!(r.status, MedianStatus::InteriorOptimum);
        assert!(r.residual <= 3.0 * CERTIFICATE_TOL, "{}", r.residual);
        assert!(r.point.distance(&a.points()[0]) < 1e-3);
        assert!(trace.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        assert!(r.iterations < MedianOptions::default().max_iter);
    }
}
