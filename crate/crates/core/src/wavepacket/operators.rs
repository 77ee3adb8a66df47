//! Position and momentum as finite matrices on a grid.
//!
//! A grid function `psi(x_j)` maps to the state vector `sqrt(h) psi(x_j)`, so
//! the trapezoid inner product of decaying packets becomes the plain
//! Euclidean one.

use num_complex::Complex64;

use super::calculus::spectral_derivative_matrix;
use super::grid::{Grid, GridWaveFunction};
use super::packets::PhysicalConstants;
use crate::error::Result;
use crate::hilbert::{HermitianOperator, StateVector};

/// `diag(x_j)`.
pub fn position_operator(grid: &Grid) -> Result<HermitianOperator> {
    let xs: Vec<f64> = grid.points().collect();
    HermitianOperator::from_real_diagonal(&xs)
}

/// `-i hbar D` with `D` the spectral derivative matrix.
pub fn momentum_operator(grid: &Grid, k: PhysicalConstants) -> Result<HermitianOperator> {
    let d = spectral_derivative_matrix(grid);
    let entries = d
        .into_iter()
        .map(|v| Complex64::new(0.0, -k.hbar() * v))
        .collect();
    HermitianOperator::new(grid.n(), entries)
}

/// `sqrt(h) psi(x_j)`.
pub fn to_state_vector(psi: &GridWaveFunction) -> Result<StateVector> {
    let s = psi.grid().spacing().sqrt();
    StateVector::new(psi.samples().iter().map(|z| z * s).collect())
}
