//! Minimum-uncertainty Gaussian on a grid: variances, the epsilon functional
//! and the multiplier lambda = i hbar / (2 dp^2).

use gcs_uncertainty::wavepacket::{
    epsilon_functional, gaussian_min_packet, lambda_min_packet, make_grid, momentum_moments,
    momentum_moments_with, position_moments, width_from_lambda, DerivativeMethod, PhysicalConstants,
};

fn main() -> gcs_uncertainty::Result<()> {
    let k = PhysicalConstants::default();
    println!("{:>5} {:>12} {:>12} {:>14} {:>12}", "dx", "dp", "ratio-1", "epsilon+1/2", "a^2");
    for dx in [0.5, 1.0, 2.0] {
        let grid = make_grid(2048, 10.0 * dx)?;
        let psi = gaussian_min_packet(dx, &grid)?;
        let x = position_moments(&psi)?;
        let p = momentum_moments(&psi, k)?;
        let ratio = x.variance.sqrt() * p.variance.sqrt() / (k.hbar() / 2.0);
        let eps = epsilon_functional(&psi)?;
        let lam = lambda_min_packet(p.variance, k)?;
        println!(
            "{dx:>5} {:>12.8} {:>12.2e} {:>14.2e} {:>12.8}",
            p.variance.sqrt(),
            ratio - 1.0,
            eps.re + 0.5,
            width_from_lambda(lam, k).re
        );
    }

    let grid = make_grid(512, 10.0)?;
    let psi = gaussian_min_packet(1.0, &grid)?;
    let fd = momentum_moments_with(&psi, k, DerivativeMethod::CentralDifference4)?;
    println!("n=512 finite-difference dp^2 = {:.10} (spectral gives 0.25)", fd.variance);
    Ok(())
}
