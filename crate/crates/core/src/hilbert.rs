//! Finite-dimensional complex Hilbert-space primitives.
//!
//! States are plain amplitude vectors in a fixed orthonormal basis and
//! observables are dense Hermitian matrices. Everything here is a pure
//! function over immutable values.

use std::ops::{Add, Mul, Sub};

use log::warn;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance applied at operator construction.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// A state counts as normalized when `| ||v|| - 1 | <= NORMALIZED_TOL`.
pub const NORMALIZED_TOL: f64 = 1e-12;
/// Largest norm deviation that is silently repaired (with a warning) by
/// [`expectation`] and friends. Anything beyond is an error.
pub const RENORMALIZE_LIMIT: f64 = 1e-6;

/// A vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if let Some(i) = amps.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { amps })
    }

    /// Build from separate real and imaginary parts.
    pub fn from_parts(re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch(re.len(), im.len()));
        }
        Self::new(re.iter().zip(im).map(|(&r, &i)| Complex64::new(r, i)).collect())
    }

    pub fn from_real(re: &[f64]) -> Result<Self> {
        Self::new(re.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// Computational basis vector `|index>`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for dim {dim}"
            )));
        }
        let mut v = Self::zeros(dim)?;
        v.amps[index] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            amps: self.amps.iter().map(|z| z * s).collect(),
        }
    }

    /// Returns the unit vector along `self`, or an error for the null vector.
    pub fn normalized(&self) -> Result<Self> {
        let n = norm(self);
        if n == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn is_normalized(&self) -> bool {
        (norm(self) - 1.0).abs() <= NORMALIZED_TOL
    }

    /// Component of `self` orthogonal to the unit vector `m`.
    pub fn project_off(&self, m: &StateVector) -> Result<Self> {
        let c = inner_product(m, self)?;
        Ok(self - &m.scale(c))
    }

    fn check_dim(&self, other: &StateVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }
}

impl<'a> Add<&'a StateVector> for &'a StateVector {
    type Output = StateVector;
    fn add(self, rhs: &'a StateVector) -> StateVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in addition");
        StateVector {
            amps: self.amps.iter().zip(&rhs.amps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a StateVector> for &'a StateVector {
    type Output = StateVector;
    fn sub(self, rhs: &'a StateVector) -> StateVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in subtraction");
        StateVector {
            amps: self.amps.iter().zip(&rhs.amps).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&StateVector> for Complex64 {
    type Output = StateVector;
    fn mul(self, rhs: &StateVector) -> StateVector {
        rhs.scale(self)
    }
}

/// Dense Hermitian matrix, row-major, with an optional physical-units label.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    entries: Vec<Complex64>,
    units: Option<String>,
}

impl HermitianOperator {
    /// Validates Hermiticity at [`HERMITIAN_TOL`]. Violations are rejected,
    /// never symmetrized.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(dim, entries, HERMITIAN_TOL)
    }

    pub fn with_tolerance(dim: usize, entries: Vec<Complex64>, tol: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::NotSquare {
                dim,
                entries: entries.len(),
            });
        }
        if let Some(i) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        for i in 0..dim {
            for j in i..dim {
                let d = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
                if d > tol {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        deviation: d,
                    });
                }
            }
        }
        Ok(Self {
            dim,
            entries,
            units: None,
        })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let entries: Vec<Complex64> = rows.iter().flatten().copied().collect();
        Self::new(dim, entries)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(d, 0.0);
        }
        Self::new(dim, entries)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_real_diagonal(&vec![1.0; dim])
    }

    pub fn pauli_x() -> Self {
        let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        Self::new(2, vec![o, l, l, o]).expect("pauli x is hermitian")
    }

    pub fn pauli_y() -> Self {
        let (o, i) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0));
        Self::new(2, vec![o, -i, i, o]).expect("pauli y is hermitian")
    }

    pub fn pauli_z() -> Self {
        Self::from_real_diagonal(&[1.0, -1.0]).expect("pauli z is hermitian")
    }

    pub fn with_units(mut self, units: impl Into<String>) -> Self {
        self.units = Some(units.into());
        self
    }

    pub fn units(&self) -> Option<&str> {
        self.units.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// `A + c I` for real `c`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.entries[i * self.dim + i] += c;
        }
        out
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.dim()));
        }
        let amps = self
            .entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v.amplitudes()).map(|(a, x)| a * x).sum())
            .collect();
        StateVector::new(amps)
    }

    fn check_dim(&self, other: &HermitianOperator) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }
}

/// Mean and variance of an observable in a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: Complex64,
    pub variance: f64,
}

/// `<a|b>`, conjugate-linear in `a`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    a.check_dim(b)?;
    Ok(a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

pub fn norm(a: &StateVector) -> f64 {
    a.amplitudes().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn norm_sqr(a: &StateVector) -> f64 {
    a.amplitudes().iter().map(|z| z.norm_sqr()).sum()
}

/// Accepts a normalized state as is, renormalizes small deviations with a
/// warning, and rejects the rest.
pub(crate) fn ensure_normalized(psi: &StateVector) -> Result<std::borrow::Cow<'_, StateVector>> {
    let n = norm(psi);
    let dev = (n - 1.0).abs();
    if dev <= NORMALIZED_TOL {
        Ok(std::borrow::Cow::Borrowed(psi))
    } else if dev <= RENORMALIZE_LIMIT {
        warn!("state norm {n} deviates from 1 by {dev:e}; renormalizing");
        Ok(std::borrow::Cow::Owned(psi.scale(Complex64::new(1.0 / n, 0.0))))
    } else {
        Err(Error::NotNormalized(n))
    }
}

/// `<psi|A|psi>`.
pub fn expectation(op: &HermitianOperator, psi: &StateVector) -> Result<Complex64> {
    let psi = ensure_normalized(psi)?;
    inner_product(&psi, &op.apply(&psi)?)
}

/// `<A^2> - <A>^2`, clamped at zero when within rounding of it.
pub fn variance(op: &HermitianOperator, psi: &StateVector) -> Result<f64> {
    Ok(moments(op, psi)?.variance)
}

pub fn moments(op: &HermitianOperator, psi: &StateVector) -> Result<Moments> {
    let psi = ensure_normalized(psi)?;
    let a_psi = op.apply(&psi)?;
    let mean = inner_product(&psi, &a_psi)?;
    // <A^2> = ||A psi||^2 for Hermitian A
    let second = norm_sqr(&a_psi);
    Ok(Moments {
        mean,
        variance: clamp_variance(second - mean.re * mean.re),
    })
}

pub(crate) fn clamp_variance(v: f64) -> f64 {
    if (-1e-12..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

/// `(A - <A>) |psi>`.
pub fn deviation_vector(op: &HermitianOperator, psi: &StateVector) -> Result<StateVector> {
    let psi = ensure_normalized(psi)?;
    let a_psi = op.apply(&psi)?;
    let mean = inner_product(&psi, &a_psi)?.re;
    Ok(&a_psi - &psi.scale(Complex64::new(mean, 0.0)))
}

/// `<psi|(AB - BA)|psi>`.
pub fn commutator_expectation(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<Complex64> {
    let (ab, ba) = cross_terms(a, b, psi)?;
    Ok(ab - ba)
}

/// `<psi|(AB + BA)|psi>`.
pub fn anticommutator_expectation(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<Complex64> {
    let (ab, ba) = cross_terms(a, b, psi)?;
    Ok(ab + ba)
}

// (<psi|AB|psi>, <psi|BA|psi>) = (<A psi|B psi>, <B psi|A psi>)
fn cross_terms(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<(Complex64, Complex64)> {
    a.check_dim(b)?;
    let psi = ensure_normalized(psi)?;
    let a_psi = a.apply(&psi)?;
    let b_psi = b.apply(&psi)?;
    let ab = inner_product(&a_psi, &b_psi)?;
    Ok((ab, ab.conj()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_hermitian, random_state, rng_for};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn s2() -> f64 {
        std::f64::consts::FRAC_1_SQRT_2
    }

    #[test]
    fn inner_product_examples() {
        let e1 = StateVector::basis(2, 0).unwrap();
        let e2 = StateVector::basis(2, 1).unwrap();
        assert_eq!(inner_product(&e1, &e1).unwrap(), c(1.0, 0.0));
        assert_eq!(inner_product(&e1, &e2).unwrap(), c(0.0, 0.0));

        let plus = StateVector::new(vec![c(s2(), 0.0), c(0.0, s2())]).unwrap();
        let minus = StateVector::new(vec![c(s2(), 0.0), c(0.0, -s2())]).unwrap();
        // (1*1 + conj(i)*(-i)) / 2 = (1 + (-i)(-i)) / 2 = 0
        assert!(inner_product(&plus, &minus).unwrap().norm() < 1e-16);

        let e3 = StateVector::basis(3, 0).unwrap();
        assert_eq!(
            inner_product(&e1, &e3),
            Err(Error::DimensionMismatch(2, 3))
        );
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&StateVector::zeros(4).unwrap()), 0.0);
        assert_eq!(norm(&StateVector::basis(3, 1).unwrap()), 1.0);
        let v = StateVector::new(vec![c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert_eq!(norm(&v), 5.0);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(StateVector::new(vec![]), Err(Error::EmptyDimension));
        assert_eq!(
            StateVector::new(vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite(0))
        );
        let bad = HermitianOperator::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(bad, Err(Error::NotHermitian { row: 0, col: 1, .. })));
        let complex_diag = HermitianOperator::new(1, vec![c(1.0, 1e-9)]);
        assert!(matches!(complex_diag, Err(Error::NotHermitian { row: 0, col: 0, .. })));
        assert!(matches!(
            HermitianOperator::new(2, vec![c(0.0, 0.0); 3]),
            Err(Error::NotSquare { dim: 2, entries: 3 })
        ));
    }

    #[test]
    fn expectation_examples() {
        let z = HermitianOperator::pauli_z();
        let up = StateVector::basis(2, 0).unwrap();
        let plus = StateVector::from_real(&[s2(), s2()]).unwrap();
        assert_eq!(expectation(&z, &up).unwrap(), c(1.0, 0.0));
        assert!(expectation(&z, &plus).unwrap().norm() < 1e-15);

        let mut rng = rng_for(11, 0);
        let psi = random_state(5, &mut rng).unwrap();
        let id = HermitianOperator::identity(5).unwrap();
        assert!((expectation(&id, &psi).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn normalization_policy() {
        let z = HermitianOperator::pauli_z();
        let slightly_off = StateVector::from_real(&[1.0 + 5e-7, 0.0]).unwrap();
        assert!((expectation(&z, &slightly_off).unwrap() - 1.0).norm() < 1e-15);
        let far_off = StateVector::from_real(&[2.0, 0.0]).unwrap();
        assert_eq!(expectation(&z, &far_off), Err(Error::NotNormalized(2.0)));
    }

    #[test]
    fn variance_examples() {
        let z = HermitianOperator::pauli_z();
        let up = StateVector::basis(2, 0).unwrap();
        let plus = StateVector::from_real(&[s2(), s2()]).unwrap();
        assert_eq!(variance(&z, &up).unwrap(), 0.0);
        assert!((variance(&z, &plus).unwrap() - 1.0).abs() < 1e-15);

        let mut rng = rng_for(12, 0);
        let psi = random_state(6, &mut rng).unwrap();
        let id = HermitianOperator::identity(6).unwrap();
        assert!(variance(&id, &psi).unwrap().abs() < 1e-14);
    }

    #[test]
    fn deviation_vector_examples() {
        let z = HermitianOperator::pauli_z();
        let up = StateVector::basis(2, 0).unwrap();
        assert_eq!(norm(&deviation_vector(&z, &up).unwrap()), 0.0);

        let plus = StateVector::from_real(&[s2(), s2()]).unwrap();
        let dev = deviation_vector(&z, &plus).unwrap();
        let expected = StateVector::from_real(&[s2(), -s2()]).unwrap();
        assert!(norm(&(&dev - &expected)) < 1e-15);
    }

    #[test]
    fn commutator_examples() {
        let up = StateVector::basis(2, 0).unwrap();
        let x = HermitianOperator::pauli_x();
        let y = HermitianOperator::pauli_y();
        // [sx, sy] = 2i sz, <sz> = 1 on |0>
        assert!((commutator_expectation(&x, &y, &up).unwrap() - c(0.0, 2.0)).norm() < 1e-15);
        assert_eq!(commutator_expectation(&x, &x, &up).unwrap(), c(0.0, 0.0));

        let a = HermitianOperator::from_real_diagonal(&[1.0, 2.0, 3.0]).unwrap();
        let b = HermitianOperator::from_real_diagonal(&[-1.0, 0.5, 4.0]).unwrap();
        let psi = StateVector::from_real(&[0.6, 0.0, 0.8]).unwrap();
        assert!(commutator_expectation(&a, &b, &psi).unwrap().norm() < 1e-15);
    }

    #[test]
    fn anticommutator_examples() {
        let a = HermitianOperator::from_real_diagonal(&[3.0, -2.0]).unwrap();
        let e = StateVector::basis(2, 1).unwrap();
        assert!((anticommutator_expectation(&a, &a, &e).unwrap() - 8.0).norm() < 1e-15);

        let mut rng = rng_for(13, 0);
        let x = HermitianOperator::pauli_x();
        let y = HermitianOperator::pauli_y();
        for _ in 0..20 {
            let psi = random_state(2, &mut rng).unwrap();
            assert!(anticommutator_expectation(&x, &y, &psi).unwrap().norm() < 1e-15);
        }

        let b = random_hermitian(4, &mut rng).unwrap();
        let psi = random_state(4, &mut rng).unwrap();
        let id = HermitianOperator::identity(4).unwrap();
        let got = anticommutator_expectation(&id, &b, &psi).unwrap();
        assert!((got - 2.0 * expectation(&b, &psi).unwrap()).norm() < 1e-13);
    }

    proptest! {
        #[test]
        fn conjugate_symmetry(seed in any::<u64>(), dim in 1usize..=16) {
            let mut rng = rng_for(seed, 0);
            let a = random_state(dim, &mut rng).unwrap().scale(c(3.0, -1.0));
            let b = random_state(dim, &mut rng).unwrap();
            let ab = inner_product(&a, &b).unwrap();
            let ba = inner_product(&b, &a).unwrap();
            prop_assert!((ab - ba.conj()).norm() <= 1e-15);
        }

        #[test]
        fn deviation_norm_is_variance(seed in any::<u64>(), dim in 1usize..=16) {
            let mut rng = rng_for(seed, 1);
            let a = random_hermitian(dim, &mut rng).unwrap();
            let psi = random_state(dim, &mut rng).unwrap();
            let dev = norm_sqr(&deviation_vector(&a, &psi).unwrap());
            prop_assert!((dev - variance(&a, &psi).unwrap()).abs() <= 1e-10);
        }

        #[test]
        fn variance_shift_invariant(seed in any::<u64>(), dim in 1usize..=16, shift in -10.0f64..10.0) {
            let mut rng = rng_for(seed, 2);
            let a = random_hermitian(dim, &mut rng).unwrap();
            let psi = random_state(dim, &mut rng).unwrap();
            let v0 = variance(&a, &psi).unwrap();
            let v1 = variance(&a.shifted(shift), &psi).unwrap();
            prop_assert!((v0 - v1).abs() <= 1e-10);
        }

        #[test]
        fn commutator_is_imaginary(seed in any::<u64>(), dim in 1usize..=16) {
            let mut rng = rng_for(seed, 3);
            let a = random_hermitian(dim, &mut rng).unwrap();
            let b = random_hermitian(dim, &mut rng).unwrap();
            let psi = random_state(dim, &mut rng).unwrap();
            prop_assert!(commutator_expectation(&a, &b, &psi).unwrap().re.abs() <= 1e-10);
            prop_assert!(anticommutator_expectation(&a, &b, &psi).unwrap().im.abs() <= 1e-10);
            prop_assert!(expectation(&a, &psi).unwrap().im.abs() <= 1e-10);
        }
    }
}
