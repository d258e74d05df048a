//! Exact rational cell complexes on cubes and orthotopes.

pub mod affine;
pub mod cell;
pub mod cellular;
pub mod complex;
pub mod crystal;
pub mod error;
pub mod isometry;
pub mod lattes;
pub mod linalg;
pub mod orthotope;
pub mod point;
pub mod rational;
pub mod report;
pub mod sampling;
pub mod symmetric;
pub mod symmetry;

pub use affine::AffineMap;
pub use cell::{ConvexCell, Inequality};
pub use complex::{CellComplex, Space};
pub use crystal::OrthotopicGroup;
pub use error::{Error, Result};
pub use isometry::AffineSignedIsometry;
pub use orthotope::Orthotope;
pub use point::Point;
pub use rational::Rational;
pub use report::{CheckOutcome, VerificationReport};
pub use symmetry::SymmetryGroup;
