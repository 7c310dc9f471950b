//! Discrete fields on the compact Heisenberg nilmanifold: frame derivatives,
//! the sub-Laplacian, the `L²` inner product and the CR Paneitz operators.

mod field;
mod grid;
pub mod io;
mod ops;
mod paneitz;
pub mod testfields;

use thiserror::Error;

pub use field::{inner_product, ComplexField, Field, RealField, Scalar};
pub use grid::{make_grid, HeisenbergGrid, Translation};
pub use ops::{
    d_t, d_x, d_y, frame_derivative, horizontal_gradient_sq, integral_of_t_derivative, sublaplacian, z1, z1bar,
    FrameDirection,
};
pub use paneitz::{
    paneitz_diagnostics, paneitz_fourth, paneitz_third, pluriharmonic_residual, PaneitzDiagnostics, COMPLEX_RESIDUE_TOL,
};

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("grid size must be an even integer between 4 and 1024, got {0}")]
    BadSize(usize),
    #[error("fields live on different grids (N = {left} vs N = {right})")]
    GridMismatch { left: usize, right: usize },
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("Paneitz output has an imaginary residue of {0:e}")]
    ComplexResidue(f64),
    #[error("malformed field file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
