//! Modified minimum-uncertainty packets: the source term `x_m u_m` adds a
//! second Gaussian. Solves for self-consistent `a1`, checks the width
//! relation and compares the two constructions.

use gcs_uncertainty::wavepacket::{
    bracket_zero_a1, dual_path_compare, make_grid, packet_from_a1, residual_check,
    solve_self_consistent, width_beta, width_relation_check, Branch, PhysicalConstants,
};
use gcs_uncertainty::Complex64;

fn main() -> gcs_uncertainty::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let k = PhysicalConstants::default();
    let grid = make_grid(2048, 16.0)?;
    let a_sq = Complex64::new(2.0, 0.0);
    let c = Complex64::new(0.9 * (std::f64::consts::PI * 2.0f64).powf(-0.25), 0.0);

    println!("{:>6} {:>10} {:>10} {:>10} {:>10} {:>10}", "alpha", "a1", "a2", "width dev", "squeeze", "dual gap");
    for alpha in [0.25, 0.5, 1.0, 1.5, 2.0] {
        if let Err(e) = width_beta(alpha, a_sq) {
            println!("{alpha:>6} skipped: {e}");
            continue;
        }
        let s = solve_self_consistent(c, alpha, a_sq, &grid, Branch::Upper)?;
        let w = width_relation_check(&s.params, &s.psi)?;
        let d = dual_path_compare(s.params.c_norm, s.params.a1, alpha, a_sq, &grid, k)?;
        println!(
            "{alpha:>6} {:>10.6} {:>10.6} {:>10.2e} {:>10.6} {:>10.2e}",
            s.params.a1.re,
            s.params.a2.re,
            w.relative_deviation,
            w.squeeze_factor,
            d.relative_gap()
        );
    }

    let alpha = 1.0;
    let (p, psi) = packet_from_a1(c, bracket_zero_a1(c, alpha, a_sq), alpha, a_sq, &grid)?;
    let w = width_relation_check(&p, &psi)?;
    let res = residual_check(&psi, p.lambda(k), p.x_m, alpha, k)?;
    println!("bracket-zero a1 = {:.6}: squeeze {:.8}, residual {res:.2e}", p.a1.re, w.squeeze_factor);
    println!(
        "width relation with 1/2 + a1* a2: {:.2e}; with 1/2 - a1 a2: {:.2e}",
        w.relative_deviation, w.printed_sign_deviation
    );
    Ok(())
}
