//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use viviani::geometry::OrientedHyperplane;
use viviani::{HyperplaneSet, PointSet, VectorN};

pub fn vector(c: &[f64]) -> VectorN {
    VectorN::from_slice(c).unwrap()
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize, lo: f64, hi: f64) -> VectorN {
    VectorN::new((0..dim).map(|_| rng.gen_range(lo..hi)).collect()).unwrap()
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; the first factor avoids ln(0)
    let u: f64 = 1.0 - rng.gen::<f64>();
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (TAU * v).cos()
}

pub fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> VectorN {
    loop {
        let v = VectorN::new((0..dim).map(|_| gaussian(rng)).collect()).unwrap();
        if let Some(u) = v.normalized(1e-3) {
            return u;
        }
    }
}

pub fn set_from(normals: &[Vec<f64>], offsets: &[f64]) -> HyperplaneSet {
    let planes = normals
        .iter()
        .zip(offsets)
        .map(|(n, &c)| OrientedHyperplane::new(VectorN::from_slice(n).unwrap(), c).unwrap())
        .collect();
    HyperplaneSet::new(planes).unwrap()
}

/// Unit vectors with sum below `1e-12`: subtract the mean, renormalize and
/// repeat. Returns `None` when some vector collapses or the loop stalls.
pub fn repair_normals(mut normals: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    let dim = normals[0].len();
    let k = normals.len() as f64;
    for _ in 0..200 {
        let mut mean = vec![0.0; dim];
        for n in &normals {
            for (m, c) in mean.iter_mut().zip(n) {
                *m += c / k;
            }
        }
        for n in &mut normals {
            for (c, m) in n.iter_mut().zip(&mean) {
                *c -= m;
            }
            let len = n.iter().map(|c| c * c).sum::<f64>().sqrt();
            if len < 1e-3 {
                return None;
            }
            n.iter_mut().for_each(|c| *c /= len);
        }
        let defect = (0..dim)
            .map(|j| normals.iter().map(|n| n[j]).sum::<f64>().powi(2))
            .sum::<f64>()
            .sqrt();
        if defect <= 1e-12 {
            return Some(normals);
        }
    }
    None
}

/// A random hyperplane set whose normals cancel, with offsets in `[-5, 5]`.
pub fn random_viviani_set(rng: &mut ChaCha8Rng, dim: usize, k: usize) -> HyperplaneSet {
    for _ in 0..10_000 {
        let raw: Vec<Vec<f64>> = (0..k).map(|_| random_unit(rng, dim).into_vec()).collect();
        if let Some(normals) = repair_normals(raw) {
            let offsets: Vec<f64> = (0..k).map(|_| rng.gen_range(-5.0..5.0)).collect();
            return set_from(&normals, &offsets);
        }
    }
    panic!("no cancelling set of {k} unit normals found in dimension {dim}");
}

/// A random hyperplane set with normal sum of length at least `min_defect`.
pub fn random_defective_set(
    rng: &mut ChaCha8Rng,
    dim: usize,
    k: usize,
    min_defect: f64,
) -> HyperplaneSet {
    loop {
        let normals: Vec<Vec<f64>> = (0..k).map(|_| random_unit(rng, dim).into_vec()).collect();
        let offsets: Vec<f64> = (0..k).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let set = set_from(&normals, &offsets);
        if set.viviani_defect() >= min_defect {
            return set;
        }
    }
}

/// Positive side lengths that close an equiangular `k`-gon: a perturbation of
/// the all-ones vector projected onto the null space of the edge-direction
/// rows.
pub fn closing_side_lengths(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    assert!(k >= 3);
    let angles: Vec<f64> = (0..k).map(|j| TAU * j as f64 / k as f64).collect();
    loop {
        let mut s: Vec<f64> = (0..k).map(|_| 1.0 + rng.gen_range(-0.4..0.4)).collect();
        // the cos and sin rows are orthogonal with squared norm k/2
        for f in [f64::cos, f64::sin] {
            let row: Vec<f64> = angles.iter().map(|&a| f(a)).collect();
            let coef = row.iter().zip(&s).map(|(r, x)| r * x).sum::<f64>() * 2.0 / k as f64;
            for (x, r) in s.iter_mut().zip(&row) {
                *x -= coef * r;
            }
        }
        if s.iter().all(|&x| x > 0.05) {
            return s;
        }
    }
}

pub fn rotate2(p: [f64; 2], angle: f64) -> [f64; 2] {
    let (s, c) = angle.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

fn objective2(points: &[[f64; 2]], x: f64, y: f64) -> f64 {
    points
        .iter()
        .map(|p| ((p[0] - x) * (p[0] - x) + (p[1] - y) * (p[1] - y)).sqrt())
        .sum()
}

/// Brute-force geometric median in the plane: exhaustive search on a 1e-3
/// grid over the bounding box of the points, then three rounds of 10x finer
/// search around the best cell. The minimizer lies in the convex hull, so
/// the bounding box is enough. Returns `(x, y, objective)`.
pub fn grid_median_oracle(points: &PointSet) -> (f64, f64, f64) {
    let pts: Vec<[f64; 2]> = points.points().iter().map(|p| [p[0], p[1]]).collect();
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in &pts {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    let mut step = 1e-3;
    let mut best = (x0, y0, objective2(&pts, x0, y0));
    let nx = ((x1 - x0) / step).ceil() as usize;
    let ny = ((y1 - y0) / step).ceil() as usize;
    for i in 0..=nx {
        let x = x0 + i as f64 * step;
        for j in 0..=ny {
            let y = y0 + j as f64 * step;
            let f = objective2(&pts, x, y);
            if f < best.2 {
                best = (x, y, f);
            }
        }
    }
    for _ in 0..3 {
        let (cx, cy) = (best.0, best.1);
        let fine = step / 10.0;
        for i in -10..=10 {
            for j in -10..=10 {
                let (x, y) = (cx + i as f64 * fine, cy + j as f64 * fine);
                let f = objective2(&pts, x, y);
                if f < best.2 {
                    best = (x, y, f);
                }
            }
        }
        step = fine;
    }
    best
}

/// `k` random points in `[lo, hi]^dim`, no two closer than `1e-3 (hi - lo)`.
pub fn random_point_set(rng: &mut ChaCha8Rng, dim: usize, k: usize, lo: f64, hi: f64) -> PointSet {
    loop {
        let pts: Vec<VectorN> = (0..k).map(|_| random_point(rng, dim, lo, hi)).collect();
        let spread_ok = pts.iter().enumerate().all(|(i, p)| {
            pts[i + 1..]
                .iter()
                .all(|q| p.distance(q) > 1e-3 * (hi - lo))
        });
        if spread_ok {
            return PointSet::new(pts).unwrap();
        }
    }
}
