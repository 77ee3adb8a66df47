//! A seeded verification campaign written as a commented CSV report, the
//! same format `gcsu check` produces.

use gcs_uncertainty::inequalities::{cs_check, generalized_uncertainty_check, hrs_bound};
use gcs_uncertainty::io::{write_commented_csv, ReportRow};
use gcs_uncertainty::sampling::{random_hermitian, random_orthogonal_state, random_state, random_vector, rng_for};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (seed, dim, trials) = (2024u64, 5, 20u64);
    let mut rows = Vec::new();
    for t in 0..trials {
        let mut rng = rng_for(seed, t);
        let a = random_vector(dim, &mut rng)?;
        let b = random_vector(dim, &mut rng)?;
        rows.push(ReportRow::from_report(&cs_check(&a, &b)?, seed, t));
        let (oa, ob) = (random_hermitian(dim, &mut rng)?, random_hermitian(dim, &mut rng)?);
        let psi = random_state(dim, &mut rng)?;
        let m = random_orthogonal_state(&psi, &mut rng)?;
        rows.push(ReportRow::from_report(&hrs_bound(&oa, &ob, &psi)?, seed, t));
        rows.push(ReportRow::from_report(&generalized_uncertainty_check(&oa, &ob, &psi, &m)?, seed, t));
    }
    let meta = [format!("example campaign seed={seed} dim={dim} trials={trials}")];
    write_commented_csv(std::io::stdout().lock(), &meta, &rows)?;
    let worst = rows.iter().map(|r| r.residual).fold(f64::INFINITY, f64::min);
    eprintln!("{} rows, min residual {worst:.4}", rows.len());
    Ok(())
}
