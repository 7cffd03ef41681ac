//! Command-line driver: classification of 3-forms, verification of the
//! closed-form solutions, regular and singular initial-value solves, and a
//! parallel scan of the one-parameter family.
//!
//! Exit codes: 0 success, 2 input error, 3 membership/verification failure,
//! 4 numerical failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use serde::{Deserialize, Serialize};

use nk6_core::forms6::{stability_invariant, KForm, Orbit, BINOM6};
use nk6_core::frame::{metric_matrix, reference_volume, stability_data};
use nk6_core::linalg::sym_eigenvalues6;
use nk6_core::models::{model_f, model_fpp, sample_grid, ModelId};
use nk6_core::ode::{
    first_integrals, integrate, n_membership, write_csv, Dopri5Options, HState, OdeError,
    SolutionCurve,
};
use nk6_core::ode::f_system_residual;
use nk6_core::singular::{
    solve_singular_ivp, verify_solution, SingularError, SingularOptions, SingularSolution,
};

#[derive(Parser)]
#[command(name = "nk6", version, about = "Cohomogeneity-one nearly Kähler structures: construction and verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a 3-form by the sign of its quartic invariant.
    Classify(ClassifyArgs),
    /// Check a closed-form solution through every verification layer.
    VerifyModel(VerifyModelArgs),
    /// Integrate the regular system from given (or reference) initial data.
    SolveRegular(SolveRegularArgs),
    /// Solve the singular problem at the special orbit for one cone parameter.
    SolveSingular(SolveSingularArgs),
    /// Solve and verify the singular problem over a grid of cone parameters.
    Scan(ScanArgs),
}

/// Optional settings shared through a JSON config file; explicit command-line
/// flags win over config values.
#[derive(Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
struct Config {
    mu: Option<f64>,
    tol: Option<f64>,
    span: Option<f64>,
    series_order: Option<usize>,
    switch: Option<f64>,
    jobs: Option<usize>,
    seed: Option<u64>,
    c1: Option<f64>,
}

#[derive(Args, Clone)]
struct ConfigArg {
    /// JSON file with default settings (command-line flags take precedence).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Comma-separated coefficients of the 3-form against the lexicographic
    /// multi-index basis (20 values).
    #[arg(long, conflicts_with = "random")]
    theta: Option<String>,
    /// Classify a seeded random 3-form instead.
    #[arg(long)]
    random: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct VerifyModelArgs {
    /// One of "s6", "cp3", "s3xs3".
    #[arg(long)]
    model: String,
    /// Number of interior sample points.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct SolveRegularArgs {
    /// Comma-separated initial data a2,a3,a4,b1,b2,b3,b4 at s = 0 (the first
    /// position is gauge-fixed to zero); defaults to the reference point.
    #[arg(long)]
    init: Option<String>,
    #[arg(long)]
    mu: Option<f64>,
    /// Integration endpoint in s.
    #[arg(long)]
    span: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct SolveSingularArgs {
    /// Cone parameter c1 > 0.
    #[arg(long)]
    c1: Option<f64>,
    /// Integration endpoint in s.
    #[arg(long)]
    span: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Number of series corrections beyond the cone value.
    #[arg(long = "series-order")]
    series_order: Option<usize>,
    /// Series-to-integrator hand-off abscissa.
    #[arg(long)]
    switch: Option<f64>,
    /// CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 0.05)]
    c1_min: f64,
    #[arg(long, default_value_t = 0.50)]
    c1_max: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    span: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long = "series-order")]
    series_order: Option<usize>,
    #[arg(long)]
    switch: Option<f64>,
    /// Directory for per-parameter CSV files.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

enum CliError {
    Input(String),
    Membership(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Membership(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Membership(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<SingularError> for CliError {
    fn from(e: SingularError) -> Self {
        match e {
            SingularError::BadParameter(_) | SingularError::BadSpan(_, _) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<OdeError> for CliError {
    fn from(e: OdeError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<Config, CliError> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("bad config {}: {e}", p.display())))
        }
    }
}

fn parse_floats(text: &str, expected: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let values: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse()).collect();
    let values =
        values.map_err(|e| CliError::Input(format!("cannot parse {what}: {e}")))?;
    if values.len() != expected {
        return Err(CliError::Input(format!(
            "{what} needs {expected} comma-separated values, got {}",
            values.len()
        )));
    }
    Ok(values)
}

fn parse_model(name: &str) -> Result<ModelId, CliError> {
    match name.to_ascii_lowercase().as_str() {
        "s6" => Ok(ModelId::Sphere6),
        "cp3" => Ok(ModelId::TwistorCP3),
        "s3xs3" => Ok(ModelId::S3xS3),
        other => Err(CliError::Input(format!(
            "unknown model {other:?} (expected s6, cp3 or s3xs3)"
        ))),
    }
}

fn x_o() -> HState {
    let r = 1.0 / 36.0;
    HState::new(
        0.0,
        [0.0, 3f64.sqrt() * r, 3f64.sqrt() * r, 6f64.sqrt() * r],
        [4.0 * r, 0.0, 0.0, -2.0 * 2f64.sqrt() * r],
        2.0,
    )
}

/// One CSV row per state, at full precision so identical runs are
/// byte-identical.
fn csv_to_file(path: &Path, states: &[HState]) -> Result<(), CliError> {
    let mu = states.first().map_or(2.0, |st| st.mu);
    let grid: Vec<f64> = states.iter().map(|st| st.s).collect();
    let curve = SolutionCurve::from_parts(grid, states.to_vec(), mu);
    let mut out = fs::File::create(path)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", path.display())))?;
    write_csv(&curve, &mut out)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Sampled rows of a singular solution: the series part on a uniform grid up
/// to the hand-off point, then the integrator's accepted nodes.
fn singular_states(sol: &SingularSolution) -> Vec<HState> {
    let mut states = Vec::new();
    for k in 0..64 {
        states.push(sol.series.h_state(sol.s_switch * k as f64 / 64.0));
    }
    states.extend(sol.curve.states.iter().copied());
    states
}

#[derive(Serialize)]
struct ClassifyOut {
    orbit: &'static str,
    value: f64,
    residual: f64,
}

fn run_classify(args: &ClassifyArgs) -> Result<(), CliError> {
    let config = load_config(&args.config.config)?;
    let coeffs = if let Some(text) = &args.theta {
        parse_floats(text, BINOM6[3], "--theta")?
    } else if args.random {
        let seed = args.seed.or(config.seed).unwrap_or(0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..BINOM6[3]).map(|_| rng.gen_range(-1.0..1.0)).collect()
    } else {
        return Err(CliError::Input(
            "either --theta or --random is required".into(),
        ));
    };
    let theta = KForm::from_coeffs(3, coeffs);
    let class = stability_invariant(&theta, &reference_volume())
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    let out = ClassifyOut {
        orbit: match class.tag {
            Orbit::NegativeOrbit => "negative",
            Orbit::NullCone => "null",
            Orbit::PositiveOrbit => "positive",
        },
        value: class.value,
        residual: class.residual,
    };
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(())
}

#[derive(Serialize)]
struct VerifyModelOut {
    model: String,
    samples: usize,
    max_residual: f64,
    stability: bool,
    positivity: bool,
}

fn run_verify_model(args: &VerifyModelArgs) -> Result<(), CliError> {
    let config = load_config(&args.config.config)?;
    let model = parse_model(&args.model)?;
    let tol = args.tol.or(config.tol).unwrap_or(1e-9);
    let mut max_residual = 0.0f64;
    let mut stability = true;
    let mut positivity = true;
    for t in sample_grid(model, args.samples) {
        let jet = model_f(model, t).map_err(|e| CliError::Input(e.to_string()))?;
        let fpp = model_fpp(model, t).map_err(|e| CliError::Input(e.to_string()))?;
        for v in f_system_residual(&jet, &fpp)? {
            max_residual = max_residual.max(v.abs());
        }
        let report = stability_data(&jet).map_err(|e| CliError::Numerical(e.to_string()))?;
        stability &= report.ok;
        let g = metric_matrix(&jet).map_err(|e| CliError::Numerical(e.to_string()))?;
        let mut sym = [[0.0; 6]; 6];
        for r in 0..6 {
            for c in 0..6 {
                sym[r][c] = 0.5 * (g[r][c] + g[c][r]);
            }
        }
        positivity &= sym_eigenvalues6(&sym)[0] > 0.0;
    }
    let out = VerifyModelOut {
        model: model.name().to_string(),
        samples: args.samples,
        max_residual,
        stability,
        positivity,
    };
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    if max_residual > tol || !stability || !positivity {
        return Err(CliError::Membership(format!(
            "model verification failed (max residual {max_residual:e})"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveRegularOut {
    mu: f64,
    span: f64,
    drift: f64,
    integrals_initial: [f64; 4],
    csv_path: Option<String>,
}

fn run_solve_regular(args: &SolveRegularArgs) -> Result<(), CliError> {
    let config = load_config(&args.config.config)?;
    let mu = args.mu.or(config.mu).unwrap_or(2.0);
    let span = args.span.or(config.span).unwrap_or(0.3);
    let tol = args.tol.or(config.tol).unwrap_or(1e-10);
    let x0 = match &args.init {
        None => x_o(),
        Some(text) => {
            let v = parse_floats(text, 7, "--init")?;
            HState::new(
                0.0,
                [0.0, v[0], v[1], v[2]],
                [v[3], v[4], v[5], v[6]],
                mu,
            )
        }
    };
    let membership = n_membership(&x0, 1e-10);
    if !membership.ok() {
        return Err(CliError::Membership(format!(
            "initial data is not admissible: integrals {:?}",
            membership.integrals
        )));
    }
    let opt = Dopri5Options {
        rtol: tol,
        atol: tol,
        ..Dopri5Options::default()
    };
    let curve = integrate(&x0, span, &opt)?;
    let csv_path = match &args.out {
        Some(path) => {
            csv_to_file(path, &curve.states)?;
            Some(path.display().to_string())
        }
        None => None,
    };
    let out = SolveRegularOut {
        mu,
        span,
        drift: curve.drift.iter().fold(0.0f64, |m, v| m.max(*v)),
        integrals_initial: first_integrals(&x0),
        csv_path,
    };
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(())
}

#[derive(Serialize)]
struct VerificationOut {
    extension: bool,
    stability: bool,
    positivity: bool,
}

#[derive(Serialize)]
struct RunManifest {
    c1: f64,
    #[serde(rename = "N")]
    n: usize,
    s_switch: f64,
    s_max: f64,
    drift: f64,
    matched_model: Option<String>,
    verification: VerificationOut,
    csv_path: Option<String>,
}

fn solve_one_singular(
    c1: f64,
    opts: &SingularOptions,
    csv: Option<&Path>,
) -> Result<(RunManifest, bool), CliError> {
    let sol = solve_singular_ivp(c1, opts)?;
    let report = verify_solution(&sol, 32)?;
    let csv_path = match csv {
        Some(path) => {
            csv_to_file(path, &singular_states(&sol))?;
            Some(path.display().to_string())
        }
        None => None,
    };
    let ok = report.ok();
    Ok((
        RunManifest {
            c1,
            n: opts.n_terms,
            s_switch: sol.s_switch,
            s_max: sol.s_max(),
            drift: report.drift,
            matched_model: report.matched_model,
            verification: VerificationOut {
                extension: report.extension,
                stability: report.stability,
                positivity: report.positivity,
            },
            csv_path,
        },
        ok,
    ))
}

fn singular_options(
    series_order: Option<usize>,
    switch: Option<f64>,
    span: Option<f64>,
    tol: Option<f64>,
    config: &Config,
) -> SingularOptions {
    let defaults = SingularOptions::default();
    SingularOptions {
        n_terms: series_order.or(config.series_order).unwrap_or(defaults.n_terms),
        s_switch: switch.or(config.switch),
        s_max: span.or(config.span).unwrap_or(defaults.s_max),
        tol: tol.or(config.tol).unwrap_or(defaults.tol),
    }
}

fn run_solve_singular(args: &SolveSingularArgs) -> Result<(), CliError> {
    let config = load_config(&args.config.config)?;
    let c1 = args
        .c1
        .or(config.c1)
        .ok_or_else(|| CliError::Input("--c1 is required (flag or config)".into()))?;
    let opts = singular_options(args.series_order, args.switch, args.span, args.tol, &config);
    let (manifest, ok) = solve_one_singular(c1, &opts, args.out.as_deref())?;
    println!("{}", serde_json::to_string_pretty(&manifest).unwrap());
    if !ok {
        return Err(CliError::Membership(format!(
            "verification failed for c1 = {c1}"
        )));
    }
    Ok(())
}

fn run_scan(args: &ScanArgs) -> Result<(), CliError> {
    let config = load_config(&args.config.config)?;
    if args.count < 2 || args.c1_min <= 0.0 || args.c1_max <= args.c1_min {
        return Err(CliError::Input(
            "scan needs 0 < c1-min < c1-max and count >= 2".into(),
        ));
    }
    let opts = singular_options(args.series_order, args.switch, args.span, args.tol, &config);
    let jobs = args
        .jobs
        .or(config.jobs)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
    }
    let grid: Vec<f64> = (0..args.count)
        .map(|k| args.c1_min + (args.c1_max - args.c1_min) * k as f64 / (args.count - 1) as f64)
        .collect();

    type ScanSlot = Option<Result<(RunManifest, bool), CliError>>;
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<ScanSlot>> = Mutex::new((0..grid.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(grid.len()) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::SeqCst);
                if idx >= grid.len() {
                    break;
                }
                let c1 = grid[idx];
                let csv = args
                    .out
                    .as_ref()
                    .map(|dir| dir.join(format!("c1_{idx:03}.csv")));
                let outcome = solve_one_singular(c1, &opts, csv.as_deref());
                results.lock().unwrap()[idx] = Some(outcome);
            });
        }
    });

    let mut manifests = Vec::with_capacity(grid.len());
    let mut all_ok = true;
    for (c1, slot) in grid.iter().zip(results.into_inner().unwrap()) {
        match slot.expect("worker filled every slot") {
            Ok((manifest, ok)) => {
                all_ok &= ok;
                manifests.push(manifest);
            }
            Err(e) => {
                return Err(CliError::Numerical(format!(
                    "c1 = {c1}: {}",
                    e.message()
                )))
            }
        }
    }
    println!("{}", serde_json::to_string_pretty(&manifests).unwrap());
    if !all_ok {
        return Err(CliError::Membership(
            "verification failed for part of the grid".into(),
        ));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Classify(args) => run_classify(args),
        Cmd::VerifyModel(args) => run_verify_model(args),
        Cmd::SolveRegular(args) => run_solve_regular(args),
        Cmd::SolveSingular(args) => run_solve_singular(args),
        Cmd::Scan(args) => run_scan(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
