//! Heisenberg-Robertson, Robertson-Schroedinger and the generalized
//! uncertainty relation for spin-1/2 and random observables.

use gcs_uncertainty::hilbert::{commutator_expectation, moments, HermitianOperator};
use gcs_uncertainty::inequalities::{generalized_uncertainty_check, hr_bound, hrs_bound};
use gcs_uncertainty::sampling::{random_hermitian, random_orthogonal_state, random_state, rng_for};
use gcs_uncertainty::{Complex64, StateVector};

fn main() -> gcs_uncertainty::Result<()> {
    let (x, y) = (HermitianOperator::pauli_x(), HermitianOperator::pauli_y());
    let up = StateVector::basis(2, 0)?;
    println!("<[X,Y]> on |0> = {}", commutator_expectation(&x, &y, &up)?);
    let hr = hr_bound(&x, &y, &up)?;
    println!("HR  X,Y on |0>: {} >= {} (saturated)", hr.lhs, hr.rhs);

    let tilted = StateVector::new(vec![Complex64::new(0.8, 0.0), Complex64::new(0.36, 0.48)])?;
    let hr = hr_bound(&x, &HermitianOperator::pauli_z(), &tilted)?;
    let hrs = hrs_bound(&x, &HermitianOperator::pauli_z(), &tilted)?;
    println!("X,Z on tilted state: var product {:.4}, HR {:.4}, HRS {:.4}", hr.lhs, hr.rhs, hrs.rhs);

    let mut rng = rng_for(3, 0);
    let a = random_hermitian(6, &mut rng)?;
    let b = random_hermitian(6, &mut rng)?;
    let psi = random_state(6, &mut rng)?;
    let (ma, mb) = (moments(&a, &psi)?, moments(&b, &psi)?);
    println!("random dim 6: <A> = {:.4}, dA^2 = {:.4}, <B> = {:.4}, dB^2 = {:.4}", ma.mean.re, ma.variance, mb.mean.re, mb.variance);
    let hr = hr_bound(&a, &b, &psi)?;
    let hrs = hrs_bound(&a, &b, &psi)?;
    println!("  HR  rhs {:.5}", hr.rhs);
    println!("  HRS rhs {:.5}", hrs.rhs);
    for _ in 0..3 {
        let m = random_orthogonal_state(&psi, &mut rng)?;
        let g = generalized_uncertainty_check(&a, &b, &psi, &m)?;
        println!("  GUR lhs {:.5} rhs {:.5} residual {:.5}", g.lhs, g.rhs, g.residual);
    }
    Ok(())
}
