//! Cauchy-Schwarz on a few vectors, including the equality case and the
//! minimizing multiplier.

use gcs_uncertainty::inequalities::{cs_check, optimal_lambda, quadratic_form};
use gcs_uncertainty::sampling::{random_vector, rng_for};
use gcs_uncertainty::{Complex64, StateVector};

fn main() -> gcs_uncertainty::Result<()> {
    let a = StateVector::from_parts(&[1.0, 0.0, 2.0], &[0.0, 1.0, -1.0])?;
    let b = StateVector::from_real(&[0.5, -1.0, 3.0])?;
    let r = cs_check(&a, &b)?;
    println!("{}: {:.6} >= {:.6} (residual {:.3e})", r.label, r.lhs, r.rhs, r.residual);

    let lam = optimal_lambda(&a, &b)?;
    println!("lambda* = {lam:.6}, Q(lambda*) = {:.3e}", quadratic_form(&a, &b, lam)?);
    for l in [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), lam + 0.1] {
        println!("  Q({l:.3}) = {:.6}", quadratic_form(&a, &b, l)?);
    }

    let parallel = a.scale(Complex64::new(-2.0, 0.5));
    let e = cs_check(&a, &parallel)?;
    println!("b = mu a: residual {:.3e}", e.residual);

    let mut rng = rng_for(42, 0);
    let x = random_vector(16, &mut rng)?;
    let y = random_vector(16, &mut rng)?;
    let r = cs_check(&x, &y)?;
    println!("random dim 16: lhs/rhs = {:.3}", r.lhs / r.rhs);
    Ok(())
}
