//! Vectors, oriented hyperplanes and the signed-distance sum `v`.
//!
//! For a set of oriented hyperplanes with unit normals `n_i` and offsets
//! `c_i`, the signed-distance sum is `v(P) = sum_i (c_i - n_i . P)`. It is
//! affine with gradient `-sum_i n_i`, so it is constant exactly when the unit
//! normals cancel. The length of the normal sum is called the defect.

mod hyperplane;
mod vector;

pub use hyperplane::{
    make_hyperplane_from_anchor, signed_distance, HyperplaneSet, OrientedHyperplane,
    DEFAULT_VIVIANI_TOL, MIN_NORMAL_LENGTH, UNIT_NORMAL_TOL,
};
pub use vector::VectorN;
