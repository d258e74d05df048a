//! Symmetric decompositions of cubes and orthotopes built from the
//! half-space constraints `a x_i >= b x_j`.

mod decomposition;
mod halfspace;

pub use decomposition::{
    boundary_k, build_k, build_k_orthotope, build_k_standard, build_k_subdivided, build_k_subdivided_orthotope,
    build_ko, subcube, MAX_DIM,
};
pub use halfspace::{halfspace, is_fundamental, FundamentalSubset, HalfspaceConstraint};
