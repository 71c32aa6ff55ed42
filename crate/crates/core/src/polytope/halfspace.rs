use nalgebra::DMatrix;

use crate::error::{GeometryError, Result};
use crate::geometry::{HyperplaneSet, VectorN};
use crate::rng::SplitMix64;

/// A recession direction is reported when some unit `u` has
/// `max_i n_i . u` at or below this value.
const RECESSION_TOL: f64 = 1e-7;

const RANDOM_RESTARTS: usize = 32;
const PROBE_SEED: u64 = 0x5EED_0FB0_D1E5;

/// A bounded convex polytope `{x : n_i . x <= c_i}` with nonempty interior,
/// stored as its outward-oriented facet hyperplanes.
///
/// Boundedness is established by probing for a recession direction. The probe
/// is exact when the normals cancel (cancelling normals that span the space
/// always bound a region) and otherwise minimises `max_i n_i . u` over the
/// unit sphere from the negated normal sum, every negated normal, and 32
/// seeded random directions. Nonempty interior is certified by an explicit
/// witness point strictly inside every half-space.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolytopeH {
    halfspaces: HyperplaneSet,
    interior_point: VectorN,
}

impl ConvexPolytopeH {
    pub fn new(halfspaces: HyperplaneSet) -> Result<Self> {
        check_distinct(&halfspaces)?;
        if !normals_positively_span(&halfspaces) {
            return Err(GeometryError::Unbounded);
        }
        let interior_point =
            find_interior_point(&halfspaces).ok_or(GeometryError::EmptyInterior)?;
        Ok(Self {
            halfspaces,
            interior_point,
        })
    }

    pub fn halfspaces(&self) -> &HyperplaneSet {
        &self.halfspaces
    }

    pub fn dim(&self) -> usize {
        self.halfspaces.dim()
    }

    /// A point with every signed distance strictly positive.
    pub fn interior_point(&self) -> &VectorN {
        &self.interior_point
    }

    pub fn contains(&self, point: &VectorN) -> Result<bool> {
        Ok(self
            .halfspaces
            .signed_distances(point)?
            .into_iter()
            .all(|d| d >= 0.0))
    }

    pub fn is_viviani(&self, tol: f64) -> bool {
        self.halfspaces.is_viviani_with_tol(tol)
    }
}

fn check_distinct(set: &HyperplaneSet) -> Result<()> {
    let planes = set.planes();
    for (i, a) in planes.iter().enumerate() {
        for (j, b) in planes.iter().enumerate().skip(i + 1) {
            let same_normal = a.normal().distance(b.normal()) <= 1e-12;
            let same_offset = (a.offset() - b.offset()).abs() <= 1e-12 * (1.0 + a.offset().abs());
            if same_normal && same_offset {
                return Err(GeometryError::DuplicateHyperplane {
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(())
}

fn normal_matrix(set: &HyperplaneSet) -> DMatrix<f64> {
    let (k, n) = (set.len(), set.dim());
    DMatrix::from_fn(k, n, |i, j| set.planes()[i].normal()[j])
}

fn normals_span(set: &HyperplaneSet) -> bool {
    let n = set.dim();
    if set.len() < n {
        return false;
    }
    let sv = normal_matrix(set).singular_values();
    let max = sv.max();
    let min = sv.min();
    max > 0.0 && min / max > 1e-12
}

fn max_dot(set: &HyperplaneSet, u: &[f64]) -> f64 {
    set.iter()
        .map(|p| {
            p.normal()
                .coords()
                .iter()
                .zip(u)
                .map(|(a, b)| a * b)
                .sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

fn normalize(u: &mut [f64]) -> bool {
    let n = u.iter().map(|c| c * c).sum::<f64>().sqrt();
    if n <= 1e-300 {
        return false;
    }
    u.iter_mut().for_each(|c| *c /= n);
    true
}

/// Log-sum-exp smoothing of `max_i (a_i . x - b_i)` and its gradient.
fn smoothed_max(rows: &[(Vec<f64>, f64)], x: &[f64], mu: f64, grad: &mut [f64]) -> f64 {
    let vals: Vec<f64> = rows
        .iter()
        .map(|(a, b)| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>() - b)
        .collect();
    let top = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = vals.iter().map(|v| ((v - top) / mu).exp()).collect();
    let total: f64 = weights.iter().sum();
    grad.iter_mut().for_each(|g| *g = 0.0);
    for ((a, _), w) in rows.iter().zip(&weights) {
        for (g, ai) in grad.iter_mut().zip(a) {
            *g += w / total * ai;
        }
    }
    top + mu * total.ln()
}

/// Descent on the smoothed maximum with backtracking. When `sphere` is set
/// the iterate is renormalised after every step. Returns early as soon as
/// `stop` accepts the exact (unsmoothed) objective.
fn descend(
    rows: &[(Vec<f64>, f64)],
    start: Vec<f64>,
    scale: f64,
    sphere: bool,
    stop: impl Fn(f64) -> bool,
) -> (Vec<f64>, f64) {
    let exact = |x: &[f64]| {
        rows.iter()
            .map(|(a, b)| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>() - b)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let n = start.len();
    let mut x = start;
    let mut best = exact(&x);
    let mut grad = vec![0.0; n];
    let mut trial_grad = vec![0.0; n];
    for stage in 1..=7 {
        let mu = scale * 10f64.powi(-stage);
        let mut step = scale;
        for _ in 0..400 {
            if stop(best) {
                return (x, best);
            }
            let f = smoothed_max(rows, &x, mu, &mut grad);
            if sphere {
                // tangential component only
                let radial: f64 = grad.iter().zip(&x).map(|(g, u)| g * u).sum();
                grad.iter_mut().zip(&x).for_each(|(g, u)| *g -= radial * u);
            }
            let gnorm2: f64 = grad.iter().map(|g| g * g).sum();
            if gnorm2 <= 1e-30 {
                break;
            }
            let mut accepted = false;
            while step > 1e-16 * scale {
                let mut trial: Vec<f64> =
                    x.iter().zip(&grad).map(|(xi, g)| xi - step * g).collect();
                if sphere && !normalize(&mut trial) {
                    step *= 0.5;
                    continue;
                }
                let ft = smoothed_max(rows, &trial, mu, &mut trial_grad);
                if ft <= f - 0.25 * step * gnorm2 || (sphere && ft < f) {
                    x = trial;
                    best = best.min(exact(&x));
                    accepted = true;
                    step *= 2.0;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
    }
    (x, best)
}

fn normals_positively_span(set: &HyperplaneSet) -> bool {
    if !normals_span(set) {
        return false;
    }
    // Cancelling normals that span R^n: for any u, sum_i n_i . u = 0 with
    // not all terms zero, so some n_i . u > 0.
    if set.viviani_defect() <= 1e-12 {
        return true;
    }
    let n = set.dim();
    let rows: Vec<(Vec<f64>, f64)> = set
        .iter()
        .map(|p| (p.normal().coords().to_vec(), 0.0))
        .collect();

    let mut starts: Vec<Vec<f64>> = Vec::new();
    starts.push(set.viviani_gradient().into_vec());
    starts.extend(set.iter().map(|p| (-p.normal()).into_vec()));
    let mut rng = SplitMix64::new(PROBE_SEED);
    for _ in 0..RANDOM_RESTARTS {
        starts.push((0..n).map(|_| rng.gaussian()).collect());
    }

    for mut u in starts {
        if !normalize(&mut u) {
            continue;
        }
        if max_dot(set, &u) <= RECESSION_TOL {
            return false;
        }
        let (_, best) = descend(&rows, u, 1.0, true, |f| f <= RECESSION_TOL);
        if best <= RECESSION_TOL {
            return false;
        }
    }
    true
}

fn find_interior_point(set: &HyperplaneSet) -> Option<VectorN> {
    let scale = 1.0 + set.iter().map(|p| p.offset().abs()).fold(0.0, f64::max);
    let margin = 1e-12 * scale;
    let rows: Vec<(Vec<f64>, f64)> = set
        .iter()
        .map(|p| (p.normal().coords().to_vec(), p.offset()))
        .collect();
    let (x, best) = descend(&rows, vec![0.0; set.dim()], scale, false, |f| f < -margin);
    (best < -margin).then(|| VectorN::from_vec_unchecked(x))
}
