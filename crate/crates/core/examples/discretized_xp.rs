//! Position and momentum as dense Hermitian matrices on a grid, fed to the
//! finite-dimensional uncertainty checks.

use gcs_uncertainty::inequalities::{hr_bound, hrs_bound};
use gcs_uncertainty::wavepacket::{
    gaussian_min_packet, make_grid, momentum_operator, position_operator, to_state_vector,
    GridWaveFunction, PhysicalConstants,
};
use gcs_uncertainty::Complex64;

fn main() -> gcs_uncertainty::Result<()> {
    let k = PhysicalConstants::default();
    let grid = make_grid(128, 10.0)?;
    let x = position_operator(&grid)?;
    let p = momentum_operator(&grid, k)?;

    let gauss = to_state_vector(&gaussian_min_packet(1.0, &grid)?)?;
    let hr = hr_bound(&x, &p, &gauss)?;
    println!("gaussian: dx^2 dp^2 = {:.8}, |<[x,p]>|^2/4 = {:.8}", hr.lhs, hr.rhs);

    // a chirped Gaussian has x-p correlation, which only HRS sees
    let chirped = GridWaveFunction::from_fn(grid, |x| {
        (-x * x / 4.0).exp() * Complex64::new(0.0, 0.3 * x * x).exp()
    });
    let chirped = to_state_vector(&gcs_uncertainty::wavepacket::normalize(&chirped)?)?;
    let hr = hr_bound(&x, &p, &chirped)?;
    let hrs = hrs_bound(&x, &p, &chirped)?;
    println!("chirped : dx^2 dp^2 = {:.8}, HR {:.8}, HRS {:.8}", hr.lhs, hr.rhs, hrs.rhs);
    Ok(())
}
