//! Oriented hyperplane sets whose signed-distance sum is constant, and their
//! duality with geometric medians.
//!
//! A finite set of oriented hyperplanes in R^n has a constant sum of signed
//! distances exactly when its unit normals add up to zero. This crate
//! provides that test ([`geometry`]), generators for classical families with
//! this property ([`polytope`]), a geometric-median solver ([`fermat`]), the
//! constructions relating the two ([`duality`]), and a JSON/SVG command-line
//! front end ([`io`], [`cli`]).

pub mod cli;
pub mod duality;
pub mod error;
pub mod fermat;
pub mod geometry;
pub mod io;
pub mod polytope;
pub mod rng;

pub use error::{GeometryError, Result};
pub use fermat::{geometric_median, MedianOptions, MedianResult, MedianStatus, PointSet};
pub use geometry::{HyperplaneSet, OrientedHyperplane, VectorN};
