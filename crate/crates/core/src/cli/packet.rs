use std::io::Write;

use serde::Serialize;

use super::{open_output, PacketArgs, UsageError, EXIT_OK};
use crate::io::write_commented_csv;
use crate::wavepacket::{
    epsilon_functional, gaussian_min_packet, grid_norm_sqr, lambda_min_packet, make_grid,
    momentum_moments, position_moments, width_from_lambda, PhysicalConstants,
};

#[derive(Debug, Serialize)]
struct SampleRow {
    x: f64,
    re: f64,
    im: f64,
    abs2: f64,
}

/// Summary of a `packet` run.
#[derive(Debug, Clone, Serialize, serde::Deserialize, PartialEq)]
pub struct PacketSummary {
    pub delta_x_input: f64,
    pub grid_n: usize,
    pub x_max: f64,
    pub hbar: f64,
    pub norm: f64,
    pub mean_x: f64,
    pub mean_p: f64,
    pub delta_x: f64,
    pub delta_p: f64,
    /// `delta_x delta_p / (hbar / 2)`.
    pub ratio: f64,
    pub epsilon: f64,
    pub lambda_re: f64,
    pub lambda_im: f64,
    pub a_sq: f64,
}

pub fn run_packet(args: &PacketArgs) -> Result<i32, UsageError> {
    let x_max = args.x_max.unwrap_or(10.0 * args.delta_x);
    let grid = make_grid(args.grid_n, x_max)?;
    let k = PhysicalConstants::new(args.hbar)?;
    let psi = gaussian_min_packet(args.delta_x, &grid)?;
    let x = position_moments(&psi)?;
    let p = momentum_moments(&psi, k)?;
    let lambda = lambda_min_packet(p.variance, k)?;
    let (dx, dp) = (x.variance.sqrt(), p.variance.sqrt());
    let summary = PacketSummary {
        delta_x_input: args.delta_x,
        grid_n: args.grid_n,
        x_max,
        hbar: args.hbar,
        norm: grid_norm_sqr(&psi).sqrt(),
        mean_x: x.mean.re,
        mean_p: p.mean.re,
        delta_x: dx,
        delta_p: dp,
        ratio: dx * dp / (args.hbar / 2.0),
        epsilon: epsilon_functional(&psi)?.re,
        lambda_re: lambda.re,
        lambda_im: lambda.im,
        a_sq: width_from_lambda(lambda, k).re,
    };

    let rows: Vec<SampleRow> = grid
        .points()
        .zip(psi.samples())
        .map(|(x, z)| SampleRow {
            x,
            re: z.re,
            im: z.im,
            abs2: z.norm_sqr(),
        })
        .collect();
    let meta = vec![
        "gcsu packet".to_string(),
        format!(
            "delta_x={} grid_n={} x_max={} hbar={}",
            args.delta_x, args.grid_n, x_max, args.hbar
        ),
    ];
    let mut out = open_output(args.output.as_deref())?;
    write_commented_csv(&mut out, &meta, &rows)?;
    out.flush()?;

    let json = serde_json::to_string_pretty(&summary)?;
    match &args.summary {
        Some(path) => std::fs::write(path, json + "\n")
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
        None => eprintln!("{json}"),
    }
    Ok(EXIT_OK)
}
