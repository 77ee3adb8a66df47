//! Seeded random states and observables for verification campaigns.
//!
//! Generator: ChaCha8 seeded with the campaign seed, one stream per trial
//! index. Trial `t` of seed `s` therefore sees the same draws no matter how
//! many other trials run or in which order.
//!
//! States are independent standard complex Gaussians, normalized, which is
//! the uniform distribution on the unit sphere. Hermitian operators are
//! `(G + G^dagger) / 2` for a complex Gaussian matrix `G`.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::hilbert::{inner_product, norm, HermitianOperator, StateVector};

pub type TrialRng = ChaCha8Rng;

pub fn rng_for(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Unnormalized complex Gaussian vector.
pub fn random_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<StateVector> {
    StateVector::new((0..dim).map(|_| complex_gaussian(rng)).collect())
}

/// Uniform on the unit sphere of `C^dim`.
pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<StateVector> {
    random_vector(dim, rng)?.normalized()
}

pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<HermitianOperator> {
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        entries[i * dim + i] = Complex64::new(rng.sample(StandardNormal), 0.0);
        for j in (i + 1)..dim {
            let z = complex_gaussian(rng) * 0.5f64.sqrt();
            entries[i * dim + j] = z;
            entries[j * dim + i] = z.conj();
        }
    }
    HermitianOperator::new(dim, entries)
}

/// Unit vector drawn uniformly among those orthogonal to `psi`.
///
/// Needs `dim >= 2`.
pub fn random_orthogonal_state<R: Rng + ?Sized>(
    psi: &StateVector,
    rng: &mut R,
) -> Result<StateVector> {
    if psi.dim() < 2 {
        return Err(Error::InvalidParameter(
            "no unit vector is orthogonal to a state in dimension 1".into(),
        ));
    }
    let unit = psi.normalized()?;
    loop {
        let g = random_vector(psi.dim(), rng)?;
        let mut v = g.project_off(&unit)?;
        // second pass removes the residual overlap left by rounding
        v = v.project_off(&unit)?;
        if norm(&v) > 1e-8 {
            let v = v.normalized()?;
            debug_assert!(inner_product(&unit, &v)?.norm() < 1e-12);
            return Ok(v);
        }
    }
}
