//! One-dimensional position-space packets.
//!
//! Everything is sampled on a uniform symmetric [`Grid`]; integrals use the
//! trapezoid rule and derivatives default to discrete Fourier
//! differentiation, both spectrally accurate for packets that vanish at the
//! grid edges.

pub mod calculus;
pub mod grid;
pub mod operators;
pub mod packets;
pub mod solver;

pub use calculus::{cumulative_integral, derivative, quadrature, DerivativeMethod};
pub use grid::{make_grid, Grid, GridWaveFunction};
pub use operators::{momentum_operator, position_operator, to_state_vector};
pub use packets::{
    bracket_coefficient, bracket_kappa, bracket_zero_a1, dual_path_compare, epsilon_functional,
    f_antiderivative, f_integral, gaussian_min_packet, grid_norm_sqr, lambda_from_width,
    lambda_min_packet, make_um, modified_packet_explicit, modified_packet_general,
    momentum_moments, momentum_moments_with, normalize, position_moments, residual_check, um_normalization, width_beta,
    width_from_lambda, DualPathReport, PhysicalConstants,
};
pub use solver::{
    consistent_a2, packet_from_a1, recompute_a1, recompute_a2, solve_self_consistent,
    width_relation_check, Branch, ModifiedPacketParams, SolvedPacket, WidthRelationReport,
};
