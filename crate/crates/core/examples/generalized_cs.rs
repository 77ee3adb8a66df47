//! Generalized Cauchy-Schwarz: removing the component along a unit vector `m`
//! tightens the bound. Also evaluates the quadratic form at fixed
//! lambda in {+-1, +-i}, which warns when the observables carry distinct units.

use gcs_uncertainty::hilbert::HermitianOperator;
use gcs_uncertainty::inequalities::{
    cs_check, fixed_lambda_check, generalized_cs_check, generalized_lambda,
    generalized_quadratic_form, FIXED_LAMBDAS,
};
use gcs_uncertainty::{Complex64, StateVector};

fn main() -> gcs_uncertainty::Result<()> {
    let a = StateVector::from_real(&[1.0, 2.0, 0.5, -1.0])?;
    let b = StateVector::from_parts(&[0.0, 1.0, 1.0, 2.0], &[1.0, 0.0, -0.5, 0.0])?;
    let m = StateVector::from_real(&[1.0, 1.0, 0.0, 0.0])?.normalized()?;

    let plain = cs_check(&a, &b)?;
    let general = generalized_cs_check(&a, &b, &m)?;
    println!("CS : {:.6} >= {:.6}", plain.lhs, plain.rhs);
    println!("GCS: {:.6} >= {:.6}", general.lhs, general.rhs);

    let lam = generalized_lambda(&a, &b, &m)?;
    println!("lambda* = {lam:.6}, Q = {:.3e}", generalized_quadratic_form(&a, &b, &m, lam)?);

    let x = HermitianOperator::from_real_diagonal(&[-1.5, -0.5, 0.5, 1.5])?.with_units("m");
    let (o, i) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0));
    let p = HermitianOperator::from_rows(&[
        vec![o, -i, o, o],
        vec![i, o, -i, o],
        vec![o, i, o, -i],
        vec![o, o, i, o],
    ])?
    .with_units("kg m/s");
    let psi = StateVector::from_real(&[0.5, 0.5, 0.5, 0.5])?;
    let mperp = StateVector::from_real(&[0.5, -0.5, 0.5, -0.5])?;
    for lam in FIXED_LAMBDAS {
        let r = fixed_lambda_check(&x, &p, &psi, &mperp, lam)?;
        println!("Q({lam}) = {:.6}  {}", r.lhs, r.note.as_deref().unwrap_or(""));
    }
    Ok(())
}
