use gcs_uncertainty::wavepacket::{
    gaussian_min_packet, make_grid, momentum_moments_with, position_moments, DerivativeMethod,
    PhysicalConstants,
};

fn ratio_error(n: usize, method: DerivativeMethod) -> f64 {
    let grid = make_grid(n, 10.0).unwrap();
    let psi = gaussian_min_packet(1.0, &grid).unwrap();
    let dx = position_moments(&psi).unwrap().variance.sqrt();
    let dp = momentum_moments_with(&psi, PhysicalConstants::default(), method).unwrap().variance.sqrt();
    (dx * dp / 0.5 - 1.0).abs()
}

const SIZES: [usize; 6] = [2048, 1024, 512, 256, 128, 64];

#[test]
fn spectral_ratio_is_converged_on_every_grid() {
    for n in SIZES {
        let e = ratio_error(n, DerivativeMethod::Spectral);
        assert!(e < 1e-12, "n = {n}: {e:e}");
    }
}

#[test]
fn halving_n_degrades_finite_difference_ratio() {
    let errs: Vec<f64> = SIZES.iter().map(|&n| ratio_error(n, DerivativeMethod::CentralDifference4)).collect();
    for w in errs.windows(2) {
        assert!(w[1] > w[0], "{errs:?}");
    }
    // fourth order: roughly 16x per halving once out of the roundoff floor
    let r = errs[4] / errs[3];
    assert!((8.0..32.0).contains(&r), "{errs:?}");
}
