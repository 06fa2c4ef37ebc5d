//! Exact vectors, matrices and canonical subspaces of `F^t`.

mod matrix;
mod subspace;
mod vector;

pub use matrix::Matrix;
pub use subspace::{find_isotropic_combination, projective_coefficients, random_vector, Subspace};
pub use vector::{linear_combination, Vector};
