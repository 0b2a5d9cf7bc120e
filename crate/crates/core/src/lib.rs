//! Ground-state eigenvalues of the three-dimensional magnetic Dirichlet
//! Laplacian with constant field on star-shaped domains, computed by the
//! method of particular solutions, together with gradient-descent
//! minimization of the volume-normalized ground-state energy and
//! closed-form disk/cylinder/ball oracles for validation.

pub mod cylinder;
pub mod disk2d;
pub mod error;
pub mod geometry;
pub mod mps3d;
pub mod specfun;
pub(crate) mod util;

pub use error::{Error, Result};
