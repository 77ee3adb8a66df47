use log::info;
use rayon::prelude::*;

use super::{open_output, CheckArgs, InequalityChoice, MMode, ReportFormat, UsageError};
use super::{EXIT_OK, EXIT_VIOLATION};
use crate::hilbert::{HermitianOperator, StateVector};
use crate::inequalities::{
    cs_check, generalized_cs_check, generalized_uncertainty_check, hr_bound, hrs_bound,
    InequalityReport,
};
use crate::io::{parse_operator, parse_state, write_commented_csv, write_json, ReportRow};
use crate::sampling::{
    random_hermitian, random_orthogonal_state, random_state, random_vector, rng_for, TrialRng,
};
use crate::Result;

const ORDER: [InequalityChoice; 5] = [
    InequalityChoice::Cs,
    InequalityChoice::Gcs,
    InequalityChoice::Hr,
    InequalityChoice::Hrs,
    InequalityChoice::Gur,
];

fn selected(choice: InequalityChoice) -> Vec<InequalityChoice> {
    match choice {
        InequalityChoice::All => ORDER.to_vec(),
        one => vec![one],
    }
}

fn name(choice: InequalityChoice) -> &'static str {
    match choice {
        InequalityChoice::Cs => "cs",
        InequalityChoice::Gcs => "gcs",
        InequalityChoice::Hr => "hr",
        InequalityChoice::Hrs => "hrs",
        InequalityChoice::Gur => "gur",
        InequalityChoice::All => "all",
    }
}

fn draw_m(psi: &StateVector, mode: MMode, rng: &mut TrialRng) -> Result<StateVector> {
    match mode {
        MMode::Orthogonal => random_orthogonal_state(psi, rng),
        MMode::Any => random_state(psi.dim(), rng),
    }
}

fn random_trial(
    which: &[InequalityChoice],
    dim: usize,
    mode: MMode,
    seed: u64,
    trial: u64,
) -> Result<Vec<InequalityReport>> {
    let mut rng = rng_for(seed, trial);
    let mut out = Vec::with_capacity(which.len());
    for &choice in which {
        let report = match choice {
            InequalityChoice::Cs => {
                let a = random_vector(dim, &mut rng)?;
                let b = random_vector(dim, &mut rng)?;
                cs_check(&a, &b)?
            }
            InequalityChoice::Gcs => {
                let a = random_vector(dim, &mut rng)?;
                let b = random_vector(dim, &mut rng)?;
                let m = random_state(dim, &mut rng)?;
                generalized_cs_check(&a, &b, &m)?
            }
            InequalityChoice::Hr | InequalityChoice::Hrs => {
                let a = random_hermitian(dim, &mut rng)?;
                let b = random_hermitian(dim, &mut rng)?;
                let psi = random_state(dim, &mut rng)?;
                if choice == InequalityChoice::Hr {
                    hr_bound(&a, &b, &psi)?
                } else {
                    hrs_bound(&a, &b, &psi)?
                }
            }
            InequalityChoice::Gur => {
                let a = random_hermitian(dim, &mut rng)?;
                let b = random_hermitian(dim, &mut rng)?;
                let psi = random_state(dim, &mut rng)?;
                let m = draw_m(&psi, mode, &mut rng)?;
                generalized_uncertainty_check(&a, &b, &psi, &m)?
            }
            InequalityChoice::All => unreachable!("expanded by `selected`"),
        };
        out.push(report);
    }
    Ok(out)
}

struct FileInputs {
    state: Option<StateVector>,
    op_a: Option<HermitianOperator>,
    op_b: Option<HermitianOperator>,
    m: Option<StateVector>,
    vec_a: Option<StateVector>,
    vec_b: Option<StateVector>,
}

impl FileInputs {
    fn load(args: &CheckArgs) -> std::result::Result<Option<Self>, UsageError> {
        let any = args.state.is_some()
            || args.op_a.is_some()
            || args.op_b.is_some()
            || args.m.is_some()
            || args.vec_a.is_some()
            || args.vec_b.is_some();
        if !any {
            return Ok(None);
        }
        let state = |p: &Option<std::path::PathBuf>| -> std::result::Result<_, UsageError> {
            p.as_deref().map(parse_state).transpose().map(|s| s.map(|s| s.state)).map_err(Into::into)
        };
        let op = |p: &Option<std::path::PathBuf>| -> std::result::Result<_, UsageError> {
            p.as_deref().map(parse_operator).transpose().map_err(Into::into)
        };
        Ok(Some(Self {
            state: state(&args.state)?,
            op_a: op(&args.op_a)?,
            op_b: op(&args.op_b)?,
            m: state(&args.m)?,
            vec_a: state(&args.vec_a)?,
            vec_b: state(&args.vec_b)?,
        }))
    }

    fn evaluate(
        &self,
        choice: InequalityChoice,
        mode: MMode,
        seed: u64,
    ) -> Option<Result<InequalityReport>> {
        let mut rng = rng_for(seed, 0);
        match choice {
            InequalityChoice::Cs => {
                let (a, b) = (self.vec_a.as_ref()?, self.vec_b.as_ref()?);
                Some(cs_check(a, b))
            }
            InequalityChoice::Gcs => {
                let (a, b) = (self.vec_a.as_ref()?, self.vec_b.as_ref()?);
                Some(match &self.m {
                    Some(m) => generalized_cs_check(a, b, m),
                    None => random_state(a.dim(), &mut rng).and_then(|m| generalized_cs_check(a, b, &m)),
                })
            }
            InequalityChoice::Hr | InequalityChoice::Hrs => {
                let (a, b, psi) = (self.op_a.as_ref()?, self.op_b.as_ref()?, self.state.as_ref()?);
                Some(if choice == InequalityChoice::Hr {
                    hr_bound(a, b, psi)
                } else {
                    hrs_bound(a, b, psi)
                })
            }
            InequalityChoice::Gur => {
                let (a, b, psi) = (self.op_a.as_ref()?, self.op_b.as_ref()?, self.state.as_ref()?);
                Some(match &self.m {
                    Some(m) => generalized_uncertainty_check(a, b, psi, m),
                    None => draw_m(psi, mode, &mut rng)
                        .and_then(|m| generalized_uncertainty_check(a, b, psi, &m)),
                })
            }
            InequalityChoice::All => None,
        }
    }
}

pub fn run_check(args: &CheckArgs) -> std::result::Result<i32, UsageError> {
    if !(args.tolerance.is_finite() && args.tolerance >= 0.0) {
        return Err(UsageError(format!("tolerance must be nonnegative, got {}", args.tolerance)));
    }
    let which = selected(args.inequality);
    let mut meta = vec![
        "gcsu check".to_string(),
        format!(
            "inequality={} dim={} trials={} seed={} tolerance={:e} m_mode={:?}",
            name(args.inequality),
            args.dim,
            args.trials,
            args.seed,
            args.tolerance,
            args.m_mode
        ),
    ];

    let rows: Vec<ReportRow> = match FileInputs::load(args)? {
        Some(inputs) => {
            meta.push("mode=files (single trial)".to_string());
            let mut rows = Vec::new();
            for &choice in &which {
                if let Some(report) = inputs.evaluate(choice, args.m_mode, args.seed) {
                    let report = report?.with_tolerance(args.tolerance);
                    rows.push(ReportRow::from_report(&report, args.seed, 0));
                } else if args.inequality != InequalityChoice::All {
                    return Err(UsageError(format!(
                        "--inequality {} needs {}",
                        name(choice),
                        required_files(choice)
                    )));
                }
            }
            if rows.is_empty() {
                return Err(UsageError("no relation has all of its input files".into()));
            }
            rows
        }
        None => {
            if args.dim == 0 {
                return Err(UsageError("--dim must be at least 1".into()));
            }
            let needs_orthogonal = which.contains(&InequalityChoice::Gur) && args.m_mode == MMode::Orthogonal;
            if needs_orthogonal && args.dim < 2 {
                return Err(UsageError("gur with --m-mode orthogonal needs --dim >= 2".into()));
            }
            let per_trial: Vec<Result<Vec<InequalityReport>>> = (0..args.trials)
                .into_par_iter()
                .map(|t| random_trial(&which, args.dim, args.m_mode, args.seed, t))
                .collect();
            let mut rows = Vec::with_capacity(per_trial.len() * which.len());
            for (t, reports) in per_trial.into_iter().enumerate() {
                for r in reports? {
                    let r = r.with_tolerance(args.tolerance);
                    rows.push(ReportRow::from_report(&r, args.seed, t as u64));
                }
            }
            rows
        }
    };

    let violated = rows.iter().filter(|r| !r.satisfied).count();
    let mut out = open_output(args.output.as_deref())?;
    match args.format {
        ReportFormat::Csv => write_commented_csv(&mut out, &meta, &rows)?,
        ReportFormat::Json => write_json(&mut out, &meta, &rows)?,
    }
    out.flush()?;
    info!("{} rows, {violated} violated", rows.len());
    eprintln!("{} rows, {violated} violated", rows.len());
    Ok(if violated == 0 { EXIT_OK } else { EXIT_VIOLATION })
}

fn required_files(choice: InequalityChoice) -> &'static str {
    match choice {
        InequalityChoice::Cs => "--vec-a and --vec-b",
        InequalityChoice::Gcs => "--vec-a and --vec-b (and optionally --m)",
        InequalityChoice::Hr | InequalityChoice::Hrs => "--op-a, --op-b and --state",
        InequalityChoice::Gur => "--op-a, --op-b and --state (and optionally --m)",
        InequalityChoice::All => "input files",
    }
}
