use std::io::Write;
use std::str::FromStr;

use log::warn;
use rayon::prelude::*;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{open_output, BranchChoice, ModifiedArgs, UsageError, EXIT_OK, EXIT_VIOLATION};
use crate::error::{Error, Result};
use crate::io::write_commented_csv;
use crate::wavepacket::{
    dual_path_compare, make_grid, packet_from_a1, residual_check, solve_self_consistent,
    width_beta, width_relation_check, Branch, Grid, PhysicalConstants,
};

/// `alpha=LO:HI:STEPS`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        match self.steps {
            0 => vec![],
            1 => vec![self.lo],
            n => (0..n)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

pub fn parse_sweep(s: &str) -> std::result::Result<Sweep, String> {
    let body = s
        .strip_prefix("alpha=")
        .ok_or_else(|| format!("expected alpha=LO:HI:STEPS, got `{s}`"))?;
    let parts: Vec<&str> = body.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        return Err(format!("expected alpha=LO:HI:STEPS, got `{s}`"));
    };
    let num = |t: &str| f64::from_str(t).map_err(|e| format!("`{t}`: {e}"));
    let sweep = Sweep {
        lo: num(lo)?,
        hi: num(hi)?,
        steps: steps.parse().map_err(|e| format!("`{steps}`: {e}"))?,
    };
    if sweep.steps == 0 || !(sweep.lo > 0.0 && sweep.hi > 0.0) {
        return Err("sweep needs STEPS >= 1 and positive bounds".into());
    }
    Ok(sweep)
}

/// How `a1` is chosen at each point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum A1Mode {
    Solve(Branch),
    Given(f64),
}

/// One row of the `modified` report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModifiedRow {
    pub alpha: f64,
    pub a_sq: f64,
    pub status: String,
    pub c_re: Option<f64>,
    pub c_im: Option<f64>,
    pub a1_re: Option<f64>,
    pub a1_im: Option<f64>,
    pub a2_re: Option<f64>,
    pub a2_im: Option<f64>,
    pub x_m_re: Option<f64>,
    pub x_m_im: Option<f64>,
    pub delta_x_sq: Option<f64>,
    pub width_deviation: Option<f64>,
    pub printed_width_deviation: Option<f64>,
    pub width_ok: Option<bool>,
    pub relation_residual: Option<f64>,
    pub dual_gap: Option<f64>,
    pub dual_agree: Option<bool>,
    pub squeeze_factor: Option<f64>,
}

impl ModifiedRow {
    fn empty(alpha: f64, a_sq: f64, status: String) -> Self {
        Self {
            alpha,
            a_sq,
            status,
            c_re: None,
            c_im: None,
            a1_re: None,
            a1_im: None,
            a2_re: None,
            a2_im: None,
            x_m_re: None,
            x_m_im: None,
            delta_x_sq: None,
            width_deviation: None,
            printed_width_deviation: None,
            width_ok: None,
            relation_residual: None,
            dual_gap: None,
            dual_agree: None,
            squeeze_factor: None,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    pub fn is_skipped(&self) -> bool {
        self.status.starts_with("skipped")
    }

    /// Width relation and defining-relation residual both within tolerance.
    pub fn passed(&self) -> bool {
        self.is_ok()
            && self.width_ok == Some(true)
            && self.relation_residual.is_some_and(|r| r <= crate::wavepacket::packets::PACKET_TOL)
    }
}

/// `0.9 (pi a^2)^(-1/4)`, a little below the bare-Gaussian normalization so
/// that the solved packet carries a nonzero second Gaussian.
pub fn default_c_seed(a_sq: f64) -> f64 {
    0.9 * (std::f64::consts::PI * a_sq).powf(-0.25)
}

/// Evaluates one sweep point. Singular widths come back as skipped rows,
/// solver failures as failed rows; neither aborts the sweep.
pub fn modified_point(
    alpha: f64,
    a_sq: f64,
    c_seed: f64,
    mode: A1Mode,
    grid: &Grid,
    k: PhysicalConstants,
) -> ModifiedRow {
    match evaluate(alpha, a_sq, c_seed, mode, grid, k) {
        Ok(row) => row,
        Err(e @ Error::SingularWidth(_)) => {
            warn!("alpha = {alpha}: skipped ({e})");
            ModifiedRow::empty(alpha, a_sq, format!("skipped: {e}"))
        }
        Err(e) => {
            warn!("alpha = {alpha}: failed ({e})");
            ModifiedRow::empty(alpha, a_sq, format!("failed: {e}"))
        }
    }
}

fn evaluate(
    alpha: f64,
    a_sq: f64,
    c_seed: f64,
    mode: A1Mode,
    grid: &Grid,
    k: PhysicalConstants,
) -> Result<ModifiedRow> {
    let a_sq_c = Complex64::new(a_sq, 0.0);
    width_beta(alpha, a_sq_c)?;
    let c = Complex64::new(c_seed, 0.0);
    let (params, psi) = match mode {
        A1Mode::Solve(branch) => {
            let s = solve_self_consistent(c, alpha, a_sq_c, grid, branch)?;
            (s.params, s.psi)
        }
        A1Mode::Given(a1) => packet_from_a1(c, Complex64::new(a1, 0.0), alpha, a_sq_c, grid)?,
    };
    let width = width_relation_check(&params, &psi)?;
    let peak = psi.max_abs();
    let residual = residual_check(&psi, params.lambda(k), params.x_m, alpha, k)? / peak;
    let dual = dual_path_compare(params.c_norm, params.a1, alpha, a_sq_c, grid, k)?;
    Ok(ModifiedRow {
        alpha,
        a_sq,
        status: "ok".into(),
        c_re: Some(params.c_norm.re),
        c_im: Some(params.c_norm.im),
        a1_re: Some(params.a1.re),
        a1_im: Some(params.a1.im),
        a2_re: Some(params.a2.re),
        a2_im: Some(params.a2.im),
        x_m_re: Some(params.x_m.re),
        x_m_im: Some(params.x_m.im),
        delta_x_sq: Some(width.delta_x_sq),
        width_deviation: Some(width.relative_deviation),
        printed_width_deviation: Some(width.printed_sign_deviation),
        width_ok: Some(width.passed),
        relation_residual: Some(residual),
        dual_gap: Some(dual.relative_gap()),
        dual_agree: Some(dual.agree),
        squeeze_factor: Some(width.squeeze_factor),
    })
}

/// Default half-width: 16, widened to hold 8 widths of either Gaussian.
pub fn default_x_max(alphas: &[f64], a_sq: f64) -> f64 {
    let gauss = 8.0 * (a_sq.max(0.0) / 2.0).sqrt();
    let um = alphas
        .iter()
        .map(|a| 8.0 / (2.0 * a).sqrt())
        .fold(0.0, f64::max);
    16f64.max(gauss).max(um)
}

pub fn run_modified(args: &ModifiedArgs) -> std::result::Result<i32, UsageError> {
    let alphas = match (args.alpha, args.sweep) {
        (Some(a), None) => vec![a],
        (None, Some(s)) => s.values(),
        (None, None) => return Err(UsageError("one of --alpha or --sweep is required".into())),
        (Some(_), Some(_)) => unreachable!("clap rejects --alpha with --sweep"),
    };
    let x_max = args.x_max.unwrap_or_else(|| default_x_max(&alphas, args.a_sq));
    let grid = make_grid(args.grid_n, x_max)?;
    let k = PhysicalConstants::new(args.hbar)?;
    let c_seed = args.c_seed.unwrap_or_else(|| default_c_seed(args.a_sq));
    let branch = match args.branch {
        BranchChoice::Upper => Branch::Upper,
        BranchChoice::Lower => Branch::Lower,
    };
    let mode = match args.a1 {
        Some(a1) => A1Mode::Given(a1),
        None => A1Mode::Solve(branch),
    };

    let rows: Vec<ModifiedRow> = alphas
        .par_iter()
        .map(|&alpha| modified_point(alpha, args.a_sq, c_seed, mode, &grid, k))
        .collect();

    let meta = vec![
        "gcsu modified".to_string(),
        format!(
            "a_sq={} c_seed={} mode={:?} grid_n={} x_max={} hbar={}",
            args.a_sq, c_seed, mode, args.grid_n, x_max, args.hbar
        ),
    ];
    let mut out = open_output(args.output.as_deref())?;
    write_commented_csv(&mut out, &meta, &rows)?;
    out.flush()?;

    let skipped = rows.iter().filter(|r| r.is_skipped()).count();
    let bad = rows.iter().filter(|r| !r.is_skipped() && !r.passed()).count();
    eprintln!("{} points, {skipped} skipped, {bad} failed", rows.len());
    Ok(if bad == 0 { EXIT_OK } else { EXIT_VIOLATION })
}
