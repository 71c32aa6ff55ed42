use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{GeometryError, Result};

/// A point or direction in Euclidean n-space.
///
/// The dimension is fixed at construction and every coordinate is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorN(Vec<f64>);

impl VectorN {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(GeometryError::EmptyVector);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(GeometryError::NonFinite { index, value });
        }
        Ok(Self(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![0.0; dim])
    }

    /// Unit vector along axis `axis`.
    pub fn basis(dim: usize, axis: usize) -> Result<Self> {
        let mut v = vec![0.0; dim];
        if axis >= dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: axis + 1,
            });
        }
        v[axis] = 1.0;
        Self::new(v)
    }

    // Internal constructor for results of arithmetic on already-validated
    // vectors; finiteness is not re-checked.
    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn check_dim(&self, other: &VectorN) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    /// Dot product. Panics on dimension mismatch; use [`VectorN::check_dim`]
    /// first when the operands come from user input.
    pub fn dot(&self, other: &VectorN) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        // hypot-style accumulation is unnecessary at the tolerances used here
        self.norm_squared().sqrt()
    }

    pub fn distance(&self, other: &VectorN) -> f64 {
        assert_eq!(self.dim(), other.dim(), "distance of mismatched dimensions");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Returns `self / |self|`, or `None` when the length is at most `min_norm`.
    pub fn normalized(&self, min_norm: f64) -> Option<VectorN> {
        let n = self.norm();
        (n > min_norm).then(|| self.scale(1.0 / n))
    }

    pub fn scale(&self, s: f64) -> VectorN {
        VectorN(self.0.iter().map(|c| c * s).collect())
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &VectorN) -> VectorN {
        assert_eq!(
            self.dim(),
            other.dim(),
            "add_scaled of mismatched dimensions"
        );
        VectorN(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    /// Componentwise sum of a nonempty collection of equal-dimension vectors.
    pub fn sum<'a, I>(vectors: I) -> Option<VectorN>
    where
        I: IntoIterator<Item = &'a VectorN>,
    {
        let mut iter = vectors.into_iter();
        let first = iter.next()?.clone();
        Some(iter.fold(first, |acc, v| &acc + v))
    }
}

impl Index<usize> for VectorN {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Display for VectorN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &VectorN {
    type Output = VectorN;

    fn add(self, rhs: &VectorN) -> VectorN {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &VectorN {
    type Output = VectorN;

    fn sub(self, rhs: &VectorN) -> VectorN {
        self.add_scaled(-1.0, rhs)
    }
}

impl Mul<f64> for &VectorN {
    type Output = VectorN;

    fn mul(self, rhs: f64) -> VectorN {
        self.scale(rhs)
    }
}

impl Neg for &VectorN {
    type Output = VectorN;

    fn neg(self) -> VectorN {
        self.scale(-1.0)
    }
}

impl TryFrom<Vec<f64>> for VectorN {
    type Error = GeometryError;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        VectorN::new(v)
    }
}
