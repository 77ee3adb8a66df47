//! Cauchy-Schwarz type inequalities and the uncertainty relations built on them.
//!
//! The standard inequality comes from `||A + lambda B||^2 >= 0`. The
//! generalized one keeps a single distinguished unit vector `|m>` aside and
//! uses `||X||^2 >= |<m|X>|^2` instead, which is the standard inequality for
//! the components of `A` and `B` orthogonal to `|m>`.

use std::fmt;

use log::warn;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    anticommutator_expectation, commutator_expectation, deviation_vector, inner_product, moments,
    norm, norm_sqr, HermitianOperator, StateVector,
};

/// Base tolerance for residual acceptance on unit-scale inputs.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;
/// Below this, `||b||` (or its projected counterpart) is treated as null.
pub const NULL_TOL: f64 = 1e-12;
/// Allowed deviation of `||m||` from 1.
pub const UNIT_TOL: f64 = 1e-10;

/// The fixed multipliers `lambda = +1, -1, +i, -i`.
pub const FIXED_LAMBDAS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(0.0, -1.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Label {
    Cs,
    Gcs,
    Hr,
    Hrs,
    Gur,
    Qform,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::Cs => "CS",
            Label::Gcs => "GCS",
            Label::Hr => "HR",
            Label::Hrs => "HRS",
            Label::Gur => "GUR",
            Label::Qform => "QFORM",
        };
        f.write_str(s)
    }
}

/// Outcome of one `lhs >= rhs` comparison.
///
/// `satisfied` is `residual >= -tolerance`, where `tolerance` is the base
/// tolerance scaled by `max(1, |lhs|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub label: Label,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub satisfied: bool,
    pub tolerance: f64,
    pub lambda_used: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl InequalityReport {
    pub fn new(label: Label, lhs: f64, rhs: f64, lambda_used: Option<Complex64>) -> Self {
        let residual = lhs - rhs;
        let mut report = Self {
            label,
            lhs,
            rhs,
            residual,
            satisfied: false,
            tolerance: 0.0,
            lambda_used,
            note: None,
        };
        report.apply_tolerance(DEFAULT_RESIDUAL_TOL);
        report
    }

    /// Re-evaluates `satisfied` against a different base tolerance.
    pub fn with_tolerance(mut self, base: f64) -> Self {
        self.apply_tolerance(base);
        self
    }

    fn apply_tolerance(&mut self, base: f64) {
        self.tolerance = base * self.lhs.abs().max(1.0);
        self.satisfied = self.residual >= -self.tolerance;
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Components `a_m = <m|a>` and `b_m = <m|b>` along the distinguished vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionData {
    pub a_m: Complex64,
    pub b_m: Complex64,
}

impl ProjectionData {
    pub fn new(a: &StateVector, b: &StateVector, m: &StateVector) -> Result<Self> {
        check_unit(m)?;
        Ok(Self {
            a_m: inner_product(m, a)?,
            b_m: inner_product(m, b)?,
        })
    }
}

fn check_unit(m: &StateVector) -> Result<()> {
    let n = norm(m);
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotNormalized(n));
    }
    Ok(())
}

fn check_dims(a: &StateVector, b: &StateVector) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(())
}

/// `||A||^2 + |lambda|^2 ||B||^2 + lambda <A|B> + lambda* <B|A>`.
pub fn quadratic_form(a: &StateVector, b: &StateVector, lambda: Complex64) -> Result<f64> {
    let ab = inner_product(a, b)?;
    Ok(form_value(norm_sqr(a), norm_sqr(b), ab, lambda))
}

// lambda <A|B> + lambda* <B|A> = 2 Re(lambda <A|B>)
fn form_value(aa: f64, bb: f64, ab: Complex64, lambda: Complex64) -> f64 {
    aa + lambda.norm_sqr() * bb + 2.0 * (lambda * ab).re
}

/// Minimizer of [`quadratic_form`]: `lambda = -<B|A> / ||B||^2`.
pub fn optimal_lambda(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    check_dims(a, b)?;
    let bb = norm_sqr(b);
    if bb.sqrt() <= NULL_TOL {
        return Err(Error::NullSecondVector);
    }
    Ok(-inner_product(b, a)? / bb)
}

/// `||A||^2 ||B||^2 >= |<A|B>|^2`.
pub fn cs_check(a: &StateVector, b: &StateVector) -> Result<InequalityReport> {
    let ab = inner_product(a, b)?;
    let lhs = norm_sqr(a) * norm_sqr(b);
    let rhs = ab.norm_sqr();
    let lambda = optimal_lambda(a, b).ok();
    Ok(InequalityReport::new(Label::Cs, lhs, rhs, lambda))
}

/// The quadratic form with the `|m>` components removed from both vectors:
/// `(||A||^2 - |a_m|^2) + |lambda|^2 (||B||^2 - |b_m|^2)
///  + lambda (<A|B> - b_m a_m*) + lambda* (<B|A> - b_m* a_m)`.
pub fn generalized_quadratic_form(
    a: &StateVector,
    b: &StateVector,
    m: &StateVector,
    lambda: Complex64,
) -> Result<f64> {
    let g = GeneralizedTerms::new(a, b, m)?;
    Ok(form_value(g.aa, g.bb, g.ab, lambda))
}

/// Minimizer of [`generalized_quadratic_form`]:
/// `lambda = -(<B|A> - b_m* a_m) / (||B||^2 - |b_m|^2)`.
pub fn generalized_lambda(a: &StateVector, b: &StateVector, m: &StateVector) -> Result<Complex64> {
    GeneralizedTerms::new(a, b, m)?.lambda()
}

/// `(||A||^2 - |a_m|^2)(||B||^2 - |b_m|^2) >= |<A|B> - b_m a_m*|^2`.
///
/// Still reports `0 >= 0` when `b` lies along `m`; only the minimizer is
/// undefined there.
pub fn generalized_cs_check(
    a: &StateVector,
    b: &StateVector,
    m: &StateVector,
) -> Result<InequalityReport> {
    let g = GeneralizedTerms::new(a, b, m)?;
    Ok(InequalityReport::new(
        Label::Gcs,
        g.aa * g.bb,
        g.ab.norm_sqr(),
        g.lambda().ok(),
    ))
}

/// Reduced Gram entries of `a`, `b` after removing their `|m>` components.
struct GeneralizedTerms {
    aa: f64,
    bb: f64,
    ab: Complex64,
}

impl GeneralizedTerms {
    fn new(a: &StateVector, b: &StateVector, m: &StateVector) -> Result<Self> {
        check_dims(a, b)?;
        check_dims(a, m)?;
        let p = ProjectionData::new(a, b, m)?;
        Ok(Self::from_parts(
            norm_sqr(a),
            norm_sqr(b),
            inner_product(a, b)?,
            p,
        ))
    }

    fn from_parts(aa: f64, bb: f64, ab: Complex64, p: ProjectionData) -> Self {
        Self {
            aa: aa - p.a_m.norm_sqr(),
            bb: bb - p.b_m.norm_sqr(),
            ab: ab - p.b_m * p.a_m.conj(),
        }
    }

    fn lambda(&self) -> Result<Complex64> {
        if self.bb <= NULL_TOL {
            return Err(Error::SpannedByM);
        }
        Ok(-self.ab.conj() / self.bb)
    }
}

/// Everything the uncertainty relations need about `(A, B, psi)`.
struct DeviationData {
    var_a: f64,
    var_b: f64,
    mean_a: f64,
    mean_b: f64,
    psi_a: StateVector,
    psi_b: StateVector,
    overlap: Complex64,
}

impl DeviationData {
    fn new(a: &HermitianOperator, b: &HermitianOperator, psi: &StateVector) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch(a.dim(), b.dim()));
        }
        let ma = moments(a, psi)?;
        let mb = moments(b, psi)?;
        let psi_a = deviation_vector(a, psi)?;
        let psi_b = deviation_vector(b, psi)?;
        let overlap = inner_product(&psi_a, &psi_b)?;
        Ok(Self {
            var_a: ma.variance,
            var_b: mb.variance,
            mean_a: ma.mean.re,
            mean_b: mb.mean.re,
            psi_a,
            psi_b,
            overlap,
        })
    }

    fn lambda(&self) -> Option<Complex64> {
        optimal_lambda(&self.psi_a, &self.psi_b).ok()
    }
}

/// `dA^2 dB^2 >= |<psi_A|psi_B>|^2`, the parent of both HR and HRS.
pub fn deviation_cs_check(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<InequalityReport> {
    let d = DeviationData::new(a, b, psi)?;
    Ok(InequalityReport::new(
        Label::Cs,
        d.var_a * d.var_b,
        d.overlap.norm_sqr(),
        d.lambda(),
    ))
}

/// Heisenberg-Robertson: `dA^2 dB^2 >= |<[A,B]>|^2 / 4`.
pub fn hr_bound(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<InequalityReport> {
    let d = DeviationData::new(a, b, psi)?;
    let comm = commutator_expectation(a, b, psi)?;
    Ok(InequalityReport::new(
        Label::Hr,
        d.var_a * d.var_b,
        0.25 * comm.norm_sqr(),
        d.lambda(),
    ))
}

/// `| |Im<psi_A|psi_B>|^2 - |<[A,B]>|^2 / 4 |`; zero in exact arithmetic.
pub fn hr_identity_gap(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<f64> {
    let d = DeviationData::new(a, b, psi)?;
    let comm = commutator_expectation(a, b, psi)?;
    Ok((d.overlap.im.powi(2) - 0.25 * comm.norm_sqr()).abs())
}

/// Robertson-Schroedinger: HR plus `|<{A,B}> - 2<A><B>|^2 / 4`.
pub fn hrs_bound(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<InequalityReport> {
    let d = DeviationData::new(a, b, psi)?;
    let comm = commutator_expectation(a, b, psi)?;
    let anti = anticommutator_expectation(a, b, psi)?;
    let cov = anti - 2.0 * d.mean_a * d.mean_b;
    Ok(InequalityReport::new(
        Label::Hrs,
        d.var_a * d.var_b,
        0.25 * comm.norm_sqr() + 0.25 * cov.norm_sqr(),
        d.lambda(),
    ))
}

/// `(dA^2 - |a_m|^2)(dB^2 - |b_m|^2) >= |<psi_A|psi_B> - b_m a_m*|^2`
/// with `a_m = <m|psi_A>` and `b_m = <m|psi_B>`.
pub fn generalized_uncertainty_check(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    m: &StateVector,
) -> Result<InequalityReport> {
    check_unit(psi)?;
    let d = DeviationData::new(a, b, psi)?;
    check_dims(&d.psi_a, m)?;
    let p = ProjectionData::new(&d.psi_a, &d.psi_b, m)?;
    let g = GeneralizedTerms::from_parts(d.var_a, d.var_b, d.overlap, p);
    Ok(InequalityReport::new(
        Label::Gur,
        g.aa * g.bb,
        g.ab.norm_sqr(),
        g.lambda().ok(),
    ))
}

/// Generalized quadratic form of the deviation vectors at a fixed `lambda`,
/// reported as `form >= 0`.
///
/// When both observables carry distinct unit labels and `lambda` is one of
/// [`FIXED_LAMBDAS`], the sum mixes incompatible dimensions; the
/// report then carries a warning note. The value is still computed.
pub fn fixed_lambda_check(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
    m: &StateVector,
    lambda: Complex64,
) -> Result<InequalityReport> {
    let d = DeviationData::new(a, b, psi)?;
    let value = generalized_quadratic_form(&d.psi_a, &d.psi_b, m, lambda)?;
    let report = InequalityReport::new(Label::Qform, value, 0.0, Some(lambda));
    match dimensional_warning(a, b, lambda) {
        Some(msg) => {
            warn!("{msg}");
            Ok(report.with_note(msg))
        }
        None => Ok(report),
    }
}

fn dimensional_warning(
    a: &HermitianOperator,
    b: &HermitianOperator,
    lambda: Complex64,
) -> Option<String> {
    let (ua, ub) = (a.units()?, b.units()?);
    let fixed = FIXED_LAMBDAS.contains(&lambda);
    (fixed && ua != ub).then(|| {
        format!(
            "dimensionally inconsistent: dimensionless lambda = {lambda} adds terms in [{ua}]^2 and [{ub}]^2"
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_hermitian, random_orthogonal_state, random_state, random_vector, rng_for};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent route: `||a + lambda b||^2` straight from the amplitudes.
    fn norm_of_sum(a: &StateVector, b: &StateVector, lambda: Complex64) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x + lambda * y).norm_sqr())
            .sum()
    }

    /// Independent route: remove `|m>` by explicit projection first.
    fn project(v: &StateVector, m: &StateVector) -> StateVector {
        let coef: Complex64 = m
            .amplitudes()
            .iter()
            .zip(v.amplitudes())
            .map(|(x, y)| x.conj() * y)
            .sum();
        let amps = v
            .amplitudes()
            .iter()
            .zip(m.amplitudes())
            .map(|(x, y)| x - coef * y)
            .collect();
        StateVector::new(amps).unwrap()
    }

    fn grid_min<F: Fn(Complex64) -> f64>(f: F, half_width: f64, steps: usize) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..=steps {
            for j in 0..=steps {
                let re = -half_width + 2.0 * half_width * i as f64 / steps as f64;
                let im = -half_width + 2.0 * half_width * j as f64 / steps as f64;
                best = best.min(f(c(re, im)));
            }
        }
        best
    }

    fn rel_close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
    }

    #[test]
    fn quadratic_form_examples() {
        let mut rng = rng_for(21, 0);
        let a = random_vector(5, &mut rng).unwrap();
        let b = random_vector(5, &mut rng).unwrap();
        assert_eq!(quadratic_form(&a, &b, c(0.0, 0.0)).unwrap(), norm_sqr(&a));
        assert!(quadratic_form(&a, &a, c(-1.0, 0.0)).unwrap().abs() < 1e-13);
        for _ in 0..50 {
            let lambda = c(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let got = quadratic_form(&a, &b, lambda).unwrap();
            assert!((got - norm_of_sum(&a, &b, lambda)).abs() < 1e-10);
        }
    }

    use rand::Rng;

    #[test]
    fn optimal_lambda_examples() {
        let e1 = StateVector::basis(3, 0).unwrap();
        let e2 = StateVector::basis(3, 1).unwrap();
        assert_eq!(optimal_lambda(&e1, &e2).unwrap(), c(0.0, 0.0));
        let mut rng = rng_for(22, 0);
        let a = random_vector(4, &mut rng).unwrap();
        assert!((optimal_lambda(&a, &a).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        let zero = StateVector::zeros(4).unwrap();
        assert_eq!(optimal_lambda(&a, &zero), Err(Error::NullSecondVector));
    }

    #[test]
    fn optimal_lambda_beats_fine_grid() {
        // step 0.01 over [-3, 3]^2
        let mut rng = rng_for(23, 0);
        for _ in 0..3 {
            let a = random_state(3, &mut rng).unwrap();
            let b = random_state(3, &mut rng).unwrap();
            let lam = optimal_lambda(&a, &b).unwrap();
            let at_opt = quadratic_form(&a, &b, lam).unwrap();
            let best = grid_min(|l| norm_of_sum(&a, &b, l), 3.0, 600);
            assert!(at_opt <= best + 1e-6, "{at_opt} vs {best}");
        }
    }

    #[test]
    fn cs_check_examples() {
        let mut rng = rng_for(24, 0);
        let a = random_vector(6, &mut rng).unwrap();
        let r = cs_check(&a, &a).unwrap();
        assert!(r.residual.abs() <= 1e-10 * r.lhs && r.satisfied);

        let e1 = StateVector::basis(2, 0).unwrap();
        let e2 = StateVector::basis(2, 1).unwrap();
        let r = cs_check(&e1, &e2).unwrap();
        assert_eq!((r.lhs, r.rhs), (1.0, 0.0));
        assert_eq!(r.label, Label::Cs);
    }

    #[test]
    fn generalized_form_examples() {
        let mut rng = rng_for(25, 0);
        for _ in 0..100 {
            let dim = rng.random_range(2..=16);
            let a = random_vector(dim, &mut rng).unwrap();
            let b = random_vector(dim, &mut rng).unwrap();
            let m = random_state(dim, &mut rng).unwrap();
            for lambda in FIXED_LAMBDAS {
                assert!(generalized_quadratic_form(&a, &b, &m, lambda).unwrap() >= -1e-10);
            }
            let at_zero = generalized_quadratic_form(&a, &b, &m, c(0.0, 0.0)).unwrap();
            let am = inner_product(&m, &a).unwrap();
            assert!((at_zero - (norm_sqr(&a) - am.norm_sqr())).abs() < 1e-12);
            assert!(at_zero >= 0.0);

            let lambda = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let want = norm_of_sum(&project(&a, &m), &project(&b, &m), lambda);
            let got = generalized_quadratic_form(&a, &b, &m, lambda).unwrap();
            assert!((got - want).abs() < 1e-10 * want.max(1.0));
        }
        let unnormalized = StateVector::from_real(&[2.0, 0.0]).unwrap();
        let e = StateVector::basis(2, 0).unwrap();
        assert_eq!(
            generalized_quadratic_form(&e, &e, &unnormalized, c(1.0, 0.0)),
            Err(Error::NotNormalized(2.0))
        );
    }

    #[test]
    fn generalized_lambda_examples() {
        // m = e0 orthogonal to a, b living in the other coordinates
        let mut rng = rng_for(26, 0);
        let m = StateVector::basis(4, 0).unwrap();
        let mut a = random_vector(4, &mut rng).unwrap().into_amplitudes();
        let mut b = random_vector(4, &mut rng).unwrap().into_amplitudes();
        a[0] = c(0.0, 0.0);
        b[0] = c(0.0, 0.0);
        let (a, b) = (StateVector::new(a).unwrap(), StateVector::new(b).unwrap());
        assert_eq!(
            generalized_lambda(&a, &b, &m).unwrap(),
            optimal_lambda(&a, &b).unwrap()
        );

        let e = |i| StateVector::basis(3, i).unwrap();
        assert_eq!(generalized_lambda(&e(0), &e(1), &e(2)).unwrap(), c(0.0, 0.0));

        let v = random_state(3, &mut rng).unwrap();
        assert_eq!(generalized_lambda(&e(0), &v, &v), Err(Error::SpannedByM));

        for _ in 0..3 {
            let a = random_vector(3, &mut rng).unwrap();
            let b = random_vector(3, &mut rng).unwrap();
            let m = random_state(3, &mut rng).unwrap();
            let lam = generalized_lambda(&a, &b, &m).unwrap();
            let at_opt = generalized_quadratic_form(&a, &b, &m, lam).unwrap();
            let (pa, pb) = (project(&a, &m), project(&b, &m));
            let best = grid_min(|l| norm_of_sum(&pa, &pb, l), 3.0, 600);
            assert!(at_opt <= best + 1e-6);
        }
    }

    #[test]
    fn generalized_cs_examples() {
        let mut rng = rng_for(27, 0);
        let m = StateVector::basis(5, 2).unwrap();
        let mut a = random_vector(5, &mut rng).unwrap().into_amplitudes();
        let mut b = random_vector(5, &mut rng).unwrap().into_amplitudes();
        a[2] = c(0.0, 0.0);
        b[2] = c(0.0, 0.0);
        let (a, b) = (StateVector::new(a).unwrap(), StateVector::new(b).unwrap());
        let g = generalized_cs_check(&a, &b, &m).unwrap();
        let s = cs_check(&a, &b).unwrap();
        assert_eq!((g.lhs, g.rhs, g.residual, g.lambda_used), (s.lhs, s.rhs, s.residual, s.lambda_used));

        let unit = random_state(5, &mut rng).unwrap();
        let r = generalized_cs_check(&a, &unit, &unit).unwrap();
        assert!(r.lhs.abs() < 1e-12 && r.rhs.abs() < 1e-12 && r.satisfied);
        assert_eq!(r.lambda_used, None);

        for _ in 0..200 {
            let dim = rng.random_range(2..=16);
            let a = random_vector(dim, &mut rng).unwrap();
            let b = random_vector(dim, &mut rng).unwrap();
            let m = random_state(dim, &mut rng).unwrap();
            let g = generalized_cs_check(&a, &b, &m).unwrap();
            let p = cs_check(&project(&a, &m), &project(&b, &m)).unwrap();
            assert!(g.satisfied);
            assert!(rel_close(g.lhs, p.lhs, 1e-12), "{} {}", g.lhs, p.lhs);
            assert!(rel_close(g.rhs, p.rhs, 1e-12), "{} {}", g.rhs, p.rhs);
        }
    }

    #[test]
    fn hr_examples() {
        let a = HermitianOperator::from_real_diagonal(&[1.0, 2.0]).unwrap();
        let b = HermitianOperator::from_real_diagonal(&[5.0, -1.0]).unwrap();
        let psi = StateVector::from_real(&[0.6, 0.8]).unwrap();
        assert_eq!(hr_bound(&a, &b, &psi).unwrap().rhs, 0.0);

        let up = StateVector::basis(2, 0).unwrap();
        let (x, y) = (HermitianOperator::pauli_x(), HermitianOperator::pauli_y());
        let r = hr_bound(&x, &y, &up).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-15 && (r.rhs - 1.0).abs() < 1e-15);
        assert!(r.satisfied);
        let h = hrs_bound(&x, &y, &up).unwrap();
        assert!((h.rhs - r.rhs).abs() < 1e-15);
        assert!(hr_identity_gap(&x, &y, &up).unwrap() < 1e-15);
    }

    #[test]
    fn hrs_with_equal_operators_saturates() {
        let mut rng = rng_for(28, 0);
        for dim in 2..6 {
            let a = random_hermitian(dim, &mut rng).unwrap();
            let psi = random_state(dim, &mut rng).unwrap();
            let r = hrs_bound(&a, &a, &psi).unwrap();
            // oracle: (<A^2> - <A>^2)^2 from explicit matrix products
            let a_psi = a.apply(&psi).unwrap();
            let a2 = norm_sqr(&a_psi);
            let mean = inner_product(&psi, &a_psi).unwrap().re;
            let var = a2 - mean * mean;
            assert!((r.rhs - var * var).abs() < 1e-10);
            assert!(r.residual.abs() < 1e-10);
        }
    }

    #[test]
    fn generalized_uncertainty_reductions() {
        let mut rng = rng_for(29, 0);
        for dim in 2..8 {
            let a = random_hermitian(dim, &mut rng).unwrap();
            let b = random_hermitian(dim, &mut rng).unwrap();
            let psi = random_state(dim, &mut rng).unwrap();
            // deviation vectors are orthogonal to psi, so m = psi drops nothing
            let g = generalized_uncertainty_check(&a, &b, &psi, &psi).unwrap();
            let base = deviation_cs_check(&a, &b, &psi).unwrap();
            assert!((g.lhs - base.lhs).abs() <= 1e-12 * base.lhs.max(1.0));
            assert!((g.rhs - base.rhs).abs() <= 1e-12 * base.rhs.max(1.0));

            let m = random_orthogonal_state(&psi, &mut rng).unwrap();
            assert!(generalized_uncertainty_check(&a, &b, &psi, &m).unwrap().satisfied);
        }
        let a = HermitianOperator::pauli_x();
        let e = StateVector::basis(2, 0).unwrap();
        let bad = StateVector::from_real(&[0.5, 0.0]).unwrap();
        assert!(generalized_uncertainty_check(&a, &a, &e, &bad).is_err());
    }

    #[test]
    fn fixed_lambda_dimension_warning() {
        let mut rng = rng_for(30, 0);
        let x = random_hermitian(4, &mut rng).unwrap().with_units("m");
        let p = random_hermitian(4, &mut rng).unwrap().with_units("kg m/s");
        let psi = random_state(4, &mut rng).unwrap();
        let m = random_orthogonal_state(&psi, &mut rng).unwrap();
        for lambda in FIXED_LAMBDAS {
            let r = fixed_lambda_check(&x, &p, &psi, &m, lambda).unwrap();
            assert!(r.note.as_deref().unwrap().contains("dimensionally inconsistent"));
            assert!(r.satisfied);
        }
        let r = fixed_lambda_check(&x, &p, &psi, &m, c(0.3, 0.0)).unwrap();
        assert!(r.note.is_none());
        let same = x.clone();
        let r = fixed_lambda_check(&x, &same, &psi, &m, c(1.0, 0.0)).unwrap();
        assert!(r.note.is_none());
    }

    proptest! {
        #[test]
        fn cs_residual_scales(seed in any::<u64>(), s in 0.1f64..10.0, t in 0.1f64..10.0) {
            let mut rng = rng_for(seed, 0);
            let dim = rng.random_range(1..=16);
            let a = random_vector(dim, &mut rng).unwrap();
            let b = random_vector(dim, &mut rng).unwrap();
            let r0 = cs_check(&a, &b).unwrap().residual;
            let r1 = cs_check(&a.scale(c(s, 0.0)), &b.scale(c(t, 0.0))).unwrap().residual;
            let scale = (s * t).powi(2);
            let lhs_scale = norm_sqr(&a) * norm_sqr(&b) * scale;
            prop_assert!((r1 - scale * r0).abs() <= 1e-10 * lhs_scale);
        }

        #[test]
        fn uncertainty_chain(seed in any::<u64>()) {
            let mut rng = rng_for(seed, 1);
            let dim = rng.random_range(2..=16);
            let a = random_hermitian(dim, &mut rng).unwrap();
            let b = random_hermitian(dim, &mut rng).unwrap();
            let psi = random_state(dim, &mut rng).unwrap();
            let base = deviation_cs_check(&a, &b, &psi).unwrap();
            let hrs = hrs_bound(&a, &b, &psi).unwrap();
            let hr = hr_bound(&a, &b, &psi).unwrap();
            prop_assert!(base.lhs - hrs.rhs >= -1e-10 * base.lhs.max(1.0));
            prop_assert!(hrs.rhs - hr.rhs >= 0.0);
            prop_assert!(hr.satisfied && hrs.satisfied);
        }

        #[test]
        fn generalized_minimizer_is_optimal(seed in any::<u64>(), re in -5.0f64..5.0, im in -5.0f64..5.0) {
            let mut rng = rng_for(seed, 2);
            let dim = rng.random_range(2..=8);
            let a = random_vector(dim, &mut rng).unwrap();
            let b = random_vector(dim, &mut rng).unwrap();
            let m = random_state(dim, &mut rng).unwrap();
            let lam = generalized_lambda(&a, &b, &m).unwrap();
            let at_opt = generalized_quadratic_form(&a, &b, &m, lam).unwrap();
            let other = generalized_quadratic_form(&a, &b, &m, c(re, im)).unwrap();
            prop_assert!(at_opt <= other + 1e-10);
        }
    }
}
