//! Quadrature and differentiation on a uniform grid.

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;
use rustfft::FftPlanner;

use super::grid::{Grid, GridWaveFunction};

/// Edge magnitude above which spectral differentiation sees a periodic jump.
pub const SPECTRAL_EDGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeMethod {
    /// Discrete Fourier differentiation, treating the samples as one period.
    #[default]
    Spectral,
    /// Fourth-order central differences with one-sided stencils at the ends.
    CentralDifference4,
}

/// Composite trapezoid rule over `[-x_max, x_max]`.
pub fn quadrature(f: &GridWaveFunction) -> Complex64 {
    trapezoid(f.samples(), f.grid().spacing())
}

pub fn trapezoid(samples: &[Complex64], h: f64) -> Complex64 {
    match samples {
        [] => Complex64::new(0.0, 0.0),
        [only] => *only * 0.0,
        [first, .., last] => {
            let inner: Complex64 = samples.iter().sum();
            (inner - 0.5 * (first + last)) * h
        }
    }
}

/// Running integral `F_i = start + int_{x_0}^{x_i} f`, fourth order.
///
/// Each interval is integrated with the cubic through four neighbouring
/// samples: `(-1, 13, 13, -1)/24` in the interior and the Adams-Moulton
/// weights `(9, 19, -5, 1)/24` on the two end intervals.
pub fn cumulative_integral(samples: &[Complex64], h: f64, start: Complex64) -> Vec<Complex64> {
    let n = samples.len();
    let mut out = Vec::with_capacity(n);
    out.push(start);
    if n < 4 {
        // too short for the cubic stencil; plain trapezoid
        for i in 1..n {
            let prev = out[i - 1];
            out.push(prev + 0.5 * h * (samples[i - 1] + samples[i]));
        }
        return out;
    }
    let f = samples;
    let w = h / 24.0;
    for i in 0..n - 1 {
        let piece = if i == 0 {
            (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) * w
        } else if i == n - 2 {
            (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]) * w
        } else {
            (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]) * w
        };
        let prev = out[i];
        out.push(prev + piece);
    }
    out
}

/// `d psi / dx` on the same grid.
///
/// The spectral method assumes the samples decay at both ends; a warning is
/// logged otherwise and the result should not be trusted near the edges.
pub fn derivative(psi: &GridWaveFunction, method: DerivativeMethod) -> GridWaveFunction {
    let h = psi.grid().spacing();
    let samples = match method {
        DerivativeMethod::Spectral => {
            let edge = psi.edge_abs();
            if edge > SPECTRAL_EDGE_TOL {
                warn!("spectral derivative: samples do not decay at the grid edges ({edge:e})");
            }
            spectral_derivative(psi.samples(), h)
        }
        DerivativeMethod::CentralDifference4 => central_difference4(psi.samples(), h),
    };
    GridWaveFunction::new(*psi.grid(), samples).expect("derivative keeps the grid length")
}

pub fn spectral_derivative(samples: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = samples.len();
    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let mut buf = samples.to_vec();
    forward.process(&mut buf);
    let period = n as f64 * h;
    for (j, z) in buf.iter_mut().enumerate() {
        let mode = if 2 * j < n {
            j as f64
        } else if 2 * j == n {
            // Nyquist mode has no odd counterpart
            0.0
        } else {
            j as f64 - n as f64
        };
        let k = 2.0 * PI * mode / period;
        *z *= Complex64::new(0.0, k) / n as f64;
    }
    inverse.process(&mut buf);
    buf
}

fn central_difference4(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    assert!(n >= 5, "fourth-order stencil needs five points");
    let s = 1.0 / (12.0 * h);
    (0..n)
        .map(|i| {
            let d = if i == 0 {
                -25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]
            } else if i == 1 {
                -3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]
            } else if i == n - 2 {
                3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]
            } else if i == n - 1 {
                25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
                    + 3.0 * f[n - 5]
            } else {
                f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]
            };
            d * s
        })
        .collect()
}

/// Dense matrix of the spectral derivative, row-major, real antisymmetric.
///
/// Entry `(j, k)` is `(pi/L) (-1)^(j-k) cot(pi (j-k) / n)` for even `n`
/// (`csc` for odd `n`) with period `L = n h`.
pub fn spectral_derivative_matrix(grid: &Grid) -> Vec<f64> {
    let n = grid.n();
    let period = n as f64 * grid.spacing();
    let mut d = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..j {
            let diff = (j - k) as f64;
            let t = PI * diff / n as f64;
            let sign = if (j - k) % 2 == 0 { 1.0 } else { -1.0 };
            let trig = if n.is_multiple_of(2) { 1.0 / t.tan() } else { 1.0 / t.sin() };
            let v = PI / period * sign * trig;
            d[j * n + k] = v;
            d[k * n + j] = -v;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavepacket::grid::make_grid;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn quadrature_examples() {
        let g = make_grid(101, 1.0).unwrap();
        let one = GridWaveFunction::from_real_fn(g, |_| 1.0);
        assert!((quadrature(&one) - 2.0).norm() < 1e-14);

        let odd = GridWaveFunction::from_real_fn(g, |x| x.powi(3) * (-x * x).exp() + x);
        assert!(quadrature(&odd).norm() < 1e-14);

        let g = make_grid(1025, 10.0).unwrap();
        let gauss = GridWaveFunction::from_real_fn(g, |x| (-x * x).exp());
        assert!((quadrature(&gauss).re - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn cumulative_integral_is_fourth_order() {
        // int_0^x cos = sin, on [0, 2]
        let err = |n: usize| {
            let h = 2.0 / (n - 1) as f64;
            let f: Vec<Complex64> = (0..n).map(|i| re((i as f64 * h).cos())).collect();
            let cum = cumulative_integral(&f, h, re(0.0));
            (0..n)
                .map(|i| (cum[i].re - (i as f64 * h).sin()).abs())
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(33), err(65));
        assert!(e1 < 1e-6);
        assert!(e1 / e2 > 12.0, "ratio {}", e1 / e2);
        // cubic integrands are exact
        let h = 0.1;
        let f: Vec<Complex64> = (0..20).map(|i| re((i as f64 * h).powi(3))).collect();
        let cum = cumulative_integral(&f, h, re(1.0));
        let x = 19.0 * h;
        assert!((cum[19].re - (1.0 + x.powi(4) / 4.0)).abs() < 1e-12);
    }

    #[test]
    fn derivative_examples() {
        let g = make_grid(1024, 10.0).unwrap();
        let psi = GridWaveFunction::from_real_fn(g, |x| (-x * x / 2.0).exp());
        let want = GridWaveFunction::from_real_fn(g, |x| -x * (-x * x / 2.0).exp());
        let d = derivative(&psi, DerivativeMethod::Spectral);
        assert!(d.sup_distance(&want).unwrap() < 1e-8);

        // even function on an even-n grid: zero at the symmetric centre pair
        let odd_grid = make_grid(1025, 10.0).unwrap();
        let psi = GridWaveFunction::from_real_fn(odd_grid, |x| (-x * x / 2.0).exp());
        let d = derivative(&psi, DerivativeMethod::Spectral);
        assert!(d.samples()[512].norm() < 1e-12);

        let fd = derivative(&psi, DerivativeMethod::CentralDifference4);
        let want = GridWaveFunction::from_real_fn(odd_grid, |x| -x * (-x * x / 2.0).exp());
        assert!(fd.sup_distance(&want).unwrap() < 1e-5);

        let constant = GridWaveFunction::from_real_fn(g, |_| 3.0);
        assert!(derivative(&constant, DerivativeMethod::Spectral).max_abs() < 1e-12);
        assert!(derivative(&constant, DerivativeMethod::CentralDifference4).max_abs() < 1e-12);
    }

    #[test]
    fn derivative_matrix_matches_fft() {
        for n in [64, 65] {
            let g = make_grid(n, 6.0).unwrap();
            let psi = GridWaveFunction::from_fn(g, |x| Complex64::new((-x * x).exp(), x * (-x * x).exp()));
            let fast = derivative(&psi, DerivativeMethod::Spectral);
            let d = spectral_derivative_matrix(&g);
            for j in 0..n {
                let row: Complex64 = (0..n).map(|k| d[j * n + k] * psi.samples()[k]).sum();
                assert!((row - fast.samples()[j]).norm() < 1e-11, "n={n} j={j}");
            }
        }
    }
}
