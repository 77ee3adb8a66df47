//! Standard and modified minimum-uncertainty packets on a grid.
//!
//! The modified packets solve `x psi + lambda p psi = x_m u_m` with
//! `p = -i hbar d/dx`. Writing `a^2 = -i hbar lambda`, the homogeneous part
//! is the Gaussian `exp(-x^2 / 2a^2)` and the source term adds
//! `(a2 + a1/a^2) exp(-x^2 / 2a^2) f(x)`.

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;

use super::calculus::{cumulative_integral, derivative, quadrature, DerivativeMethod};
use super::grid::{Grid, GridWaveFunction, GRID_NORM_TOL};
use crate::error::{Error, Result};
use crate::hilbert::{clamp_variance, Moments};

/// Packets must fit this many widths inside `x_max`.
pub const GRID_WIDTHS: f64 = 8.0;
/// Smallest accepted `Re(beta)` for `beta = alpha - 1/(2 a^2)`.
pub const BETA_TOL: f64 = 1e-8;
/// Edge magnitude, relative to the peak, beyond which `epsilon` is refused.
pub const EPSILON_EDGE_TOL: f64 = 1e-8;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    hbar: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
        }
        Ok(Self { hbar })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self { hbar: 1.0 }
    }
}

fn check_normalized(psi: &GridWaveFunction) -> Result<()> {
    let n = grid_norm_sqr(psi);
    if (n - 1.0).abs() > GRID_NORM_TOL {
        return Err(Error::NotNormalized(n.sqrt()));
    }
    Ok(())
}

/// `int |psi|^2 dx`.
pub fn grid_norm_sqr(psi: &GridWaveFunction) -> f64 {
    let density = psi.map(|_, z| Complex64::new(z.norm_sqr(), 0.0));
    quadrature(&density).re
}

pub fn normalize(psi: &GridWaveFunction) -> Result<GridWaveFunction> {
    let n = grid_norm_sqr(psi).sqrt();
    if n == 0.0 {
        return Err(Error::NotNormalized(0.0));
    }
    Ok(psi.scale(Complex64::new(1.0 / n, 0.0)))
}

/// `<x>` and `dx^2`.
pub fn position_moments(psi: &GridWaveFunction) -> Result<Moments> {
    check_normalized(psi)?;
    let first = quadrature(&psi.map(|x, z| Complex64::new(x * z.norm_sqr(), 0.0))).re;
    let second = quadrature(&psi.map(|x, z| Complex64::new(x * x * z.norm_sqr(), 0.0))).re;
    Ok(Moments {
        mean: Complex64::new(first, 0.0),
        variance: clamp_variance(second - first * first),
    })
}

/// `<p>` and `dp^2` with the spectral derivative.
pub fn momentum_moments(psi: &GridWaveFunction, k: PhysicalConstants) -> Result<Moments> {
    momentum_moments_with(psi, k, DerivativeMethod::Spectral)
}

pub fn momentum_moments_with(
    psi: &GridWaveFunction,
    k: PhysicalConstants,
    method: DerivativeMethod,
) -> Result<Moments> {
    check_normalized(psi)?;
    let hbar = k.hbar();
    let dpsi = derivative(psi, method);
    let mean = -I * hbar * quadrature(&psi.conj_mul(&dpsi)?);
    // <p^2> = hbar^2 int |psi'|^2 for a packet that vanishes at the edges
    let second = hbar * hbar * grid_norm_sqr(&dpsi);
    Ok(Moments {
        mean,
        variance: clamp_variance(second - mean.re * mean.re),
    })
}

/// `(2 pi dx^2)^(-1/4) exp(-x^2 / (4 dx^2))`.
pub fn gaussian_min_packet(delta_x: f64, grid: &Grid) -> Result<GridWaveFunction> {
    if !(delta_x.is_finite() && delta_x > 0.0) {
        return Err(Error::InvalidParameter(format!("delta_x must be positive, got {delta_x}")));
    }
    if grid.x_max() < GRID_WIDTHS * delta_x {
        return Err(Error::GridTooSmall(format!(
            "x_max {} < {GRID_WIDTHS} * delta_x = {}",
            grid.x_max(),
            GRID_WIDTHS * delta_x
        )));
    }
    let var = delta_x * delta_x;
    let c = (2.0 * PI * var).powf(-0.25);
    Ok(GridWaveFunction::from_real_fn(*grid, |x| {
        c * (-x * x / (4.0 * var)).exp()
    }))
}

/// `int psi* x psi' dx`. Equals `-1/2` for any normalized real packet
/// vanishing at the edges; scales with the squared norm otherwise.
pub fn epsilon_functional(psi: &GridWaveFunction) -> Result<Complex64> {
    let peak = psi.max_abs();
    let edge = psi.edge_abs();
    if edge > EPSILON_EDGE_TOL * peak.max(f64::MIN_POSITIVE) {
        return Err(Error::BoundaryDecay(edge));
    }
    let dpsi = derivative(psi, DerivativeMethod::Spectral);
    let x_dpsi = dpsi.map(|x, z| z * x);
    Ok(quadrature(&psi.conj_mul(&x_dpsi)?))
}

/// `lambda = i hbar / (2 dp^2)`, the minimizing multiplier for the standard packet.
pub fn lambda_min_packet(delta_p_sq: f64, k: PhysicalConstants) -> Result<Complex64> {
    if !(delta_p_sq.is_finite() && delta_p_sq > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "momentum variance must be positive, got {delta_p_sq}"
        )));
    }
    Ok(I * k.hbar() / (2.0 * delta_p_sq))
}

/// `a^2 = -i hbar lambda`.
pub fn width_from_lambda(lambda: Complex64, k: PhysicalConstants) -> Complex64 {
    -I * k.hbar() * lambda
}

/// `lambda = i a^2 / hbar`.
pub fn lambda_from_width(a_sq: Complex64, k: PhysicalConstants) -> Complex64 {
    I * a_sq / k.hbar()
}

/// Normalization of `x exp(-alpha x^2)`: `(32 alpha^3 / pi)^(1/4)`.
pub fn um_normalization(alpha: f64) -> f64 {
    (32.0 * alpha.powi(3) / PI).powf(0.25)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    Ok(())
}

/// `u_m(x) = (32 alpha^3 / pi)^(1/4) x exp(-alpha x^2)`.
pub fn make_um(alpha: f64, grid: &Grid) -> Result<GridWaveFunction> {
    check_alpha(alpha)?;
    let peak = 1.0 / (2.0 * alpha).sqrt();
    if grid.x_max() < GRID_WIDTHS * peak {
        return Err(Error::GridTooSmall(format!(
            "x_max {} < {GRID_WIDTHS} / sqrt(2 alpha) = {}",
            grid.x_max(),
            GRID_WIDTHS * peak
        )));
    }
    let norm = um_normalization(alpha);
    Ok(GridWaveFunction::from_real_fn(*grid, |x| {
        norm * x * (-alpha * x * x).exp()
    }))
}

/// `beta = alpha - 1/(2 a^2)`, rejected unless `Re(beta) > BETA_TOL`.
pub fn width_beta(alpha: f64, a_sq: Complex64) -> Result<Complex64> {
    check_alpha(alpha)?;
    if a_sq.norm() == 0.0 || !a_sq.is_finite() {
        return Err(Error::InvalidParameter(format!("a^2 must be finite and nonzero, got {a_sq}")));
    }
    let beta = alpha - 1.0 / (2.0 * a_sq);
    if beta.re <= BETA_TOL {
        return Err(Error::SingularWidth(beta));
    }
    Ok(beta)
}

fn warn_if_complex(a_sq: Complex64) {
    if a_sq.im != 0.0 || a_sq.re <= 0.0 {
        warn!("a^2 = {a_sq} is not real positive; only the real-width branch is exercised");
    }
}

/// Closed-form antiderivative `-N/(2 beta) exp(-beta x^2)` of
/// `u_m(x) exp(x^2 / 2a^2)`.
pub fn f_antiderivative(alpha: f64, a_sq: Complex64, x: f64) -> Result<Complex64> {
    let beta = width_beta(alpha, a_sq)?;
    let norm = um_normalization(alpha);
    Ok(-norm / (2.0 * beta) * (-beta * x * x).exp())
}

/// `f(x) = int^x u_m(y) exp(y^2 / 2a^2) dy` by cumulative quadrature from
/// `-x_max`. The additive constant makes `f` vanish at infinity, which is the
/// choice that leaves no constant offset in the packet.
pub fn f_integral(alpha: f64, a_sq: Complex64, grid: &Grid) -> Result<GridWaveFunction> {
    let beta = width_beta(alpha, a_sq)?;
    warn_if_complex(a_sq);
    let norm = um_normalization(alpha);
    // u_m(y) exp(y^2/2a^2), exponents merged so neither factor over/underflows alone
    let integrand: Vec<Complex64> = grid
        .points()
        .map(|y| norm * y * (-beta * y * y).exp())
        .collect();
    let start = f_antiderivative(alpha, a_sq, -grid.x_max())?;
    GridWaveFunction::new(*grid, cumulative_integral(&integrand, grid.spacing(), start))
}

fn gaussian_part(a_sq: Complex64, grid: &Grid) -> GridWaveFunction {
    GridWaveFunction::from_fn(*grid, |x| (-x * x / (2.0 * a_sq)).exp())
}

/// `C exp(-x^2/2a^2) + (a2 + a1/a^2) exp(-x^2/2a^2) f(x)` with `f` from
/// [`f_integral`]. Not normalized.
pub fn modified_packet_general(
    c: Complex64,
    a1: Complex64,
    a2: Complex64,
    a_sq: Complex64,
    alpha: f64,
    grid: &Grid,
) -> Result<GridWaveFunction> {
    let f = f_integral(alpha, a_sq, grid)?;
    let g = gaussian_part(a_sq, grid);
    let source = a2 + a1 / a_sq;
    let samples = g
        .samples()
        .iter()
        .zip(f.samples())
        .map(|(gi, fi)| c * gi + source * gi * fi)
        .collect();
    GridWaveFunction::new(*grid, samples)
}

/// `sqrt(8 / (1 + 1/(2 a^2 alpha))^3)`.
pub fn bracket_kappa(alpha: f64, a_sq: Complex64) -> Complex64 {
    let base = 1.0 + 1.0 / (2.0 * a_sq * alpha);
    8f64.sqrt() * base.powf(-1.5)
}

/// Coefficient of `exp(-alpha x^2)` in the explicit packet:
/// `a1 (32 alpha^3/pi)^(1/4) - C sqrt(8 / (1 + 1/(2 a^2 alpha))^3)`.
pub fn bracket_coefficient(c: Complex64, a1: Complex64, alpha: f64, a_sq: Complex64) -> Complex64 {
    a1 * um_normalization(alpha) - c * bracket_kappa(alpha, a_sq)
}

/// The `a1` that makes [`bracket_coefficient`] vanish.
pub fn bracket_zero_a1(c: Complex64, alpha: f64, a_sq: Complex64) -> Complex64 {
    c * bracket_kappa(alpha, a_sq) / um_normalization(alpha)
}

/// `C exp(-x^2/2a^2) + bracket * exp(-alpha x^2)`. Not normalized.
pub fn modified_packet_explicit(
    c: Complex64,
    a1: Complex64,
    alpha: f64,
    a_sq: Complex64,
    grid: &Grid,
) -> Result<GridWaveFunction> {
    width_beta(alpha, a_sq)?;
    warn_if_complex(a_sq);
    let bracket = bracket_coefficient(c, a1, alpha, a_sq);
    GridWaveFunction::new(
        *grid,
        grid.points()
            .map(|x| c * (-x * x / (2.0 * a_sq)).exp() + bracket * (-alpha * x * x).exp())
            .collect(),
    )
}

/// `max_x |x psi - i hbar lambda psi' - x_m u_m|`.
pub fn residual_check(
    psi: &GridWaveFunction,
    lambda: Complex64,
    x_m_coeff: Complex64,
    alpha: f64,
    k: PhysicalConstants,
) -> Result<f64> {
    let um = make_um(alpha, psi.grid())?;
    let dpsi = derivative(psi, DerivativeMethod::Spectral);
    let coef = I * k.hbar() * lambda;
    Ok(psi
        .grid()
        .points()
        .zip(psi.samples())
        .zip(dpsi.samples())
        .zip(um.samples())
        .map(|(((x, p), dp), u)| (x * p - coef * dp - x_m_coeff * u).norm())
        .fold(0.0, f64::max))
}

/// Outcome of building the same packet through `f(x)` and through the
/// explicit two-Gaussian form.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPathReport {
    pub sup_gap: f64,
    /// Peak magnitude of the two packets; tolerances are relative to it.
    pub scale: f64,
    pub tolerance: f64,
    pub agree: bool,
    pub general_residual: f64,
    pub explicit_residual: f64,
}

impl DualPathReport {
    pub fn relative_gap(&self) -> f64 {
        self.sup_gap / self.scale
    }
}

/// Tolerance for [`dual_path_compare`] and for defining-relation residuals,
/// relative to the packet's peak magnitude.
pub const PACKET_TOL: f64 = 1e-6;

/// Builds the explicit packet from `(c, a1)`, takes `a2 = int u_m psi'` from
/// it by quadrature, feeds `(c, a1, a2)` to the general form and compares.
///
/// A gap above tolerance is reported through `agree = false` and logged.
pub fn dual_path_compare(
    c: Complex64,
    a1: Complex64,
    alpha: f64,
    a_sq: Complex64,
    grid: &Grid,
    k: PhysicalConstants,
) -> Result<DualPathReport> {
    let explicit = modified_packet_explicit(c, a1, alpha, a_sq, grid)?;
    let um = make_um(alpha, grid)?;
    let a2 = quadrature(&um.conj_mul(&derivative(&explicit, DerivativeMethod::Spectral))?);
    let general = modified_packet_general(c, a1, a2, a_sq, alpha, grid)?;
    let scale = explicit.max_abs().max(general.max_abs()).max(f64::MIN_POSITIVE);
    let sup_gap = general.sup_distance(&explicit)?;
    let tolerance = PACKET_TOL * scale;
    let lambda = lambda_from_width(a_sq, k);
    let x_m = a1 + a_sq * a2;
    let report = DualPathReport {
        sup_gap,
        scale,
        tolerance,
        agree: sup_gap <= tolerance,
        general_residual: residual_check(&general, lambda, x_m, alpha, k)?,
        explicit_residual: residual_check(&explicit, lambda, x_m, alpha, k)?,
    };
    if !report.agree {
        warn!(
            "general and explicit packets disagree: sup gap {sup_gap:e} > {tolerance:e} \
             (residuals {:e} / {:e})",
            report.general_residual, report.explicit_residual
        );
    }
    Ok(report)
}
