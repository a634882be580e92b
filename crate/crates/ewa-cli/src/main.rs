//! `ewa-lab`: reproducible experiments on EWA learning in 2x2 games.
//!
//! Every data-producing command writes CSV artifacts plus a manifest JSON;
//! `ewa-lab replay <manifest>` re-executes the recorded arguments and
//! regenerates the files byte-for-byte.
//!
//! Exit codes: 0 success, 1 invalid input, 2 degenerate game, 3 numerical
//! failure.

mod output;
mod presets;

use clap::{Args, Parser, Subcommand};
use ewa_core::chaos::{
    self, bifurcation_scan, linspace, lle_grid, lyapunov_deterministic, lyapunov_stochastic,
    OrbitSource, ScanAxis,
};
use ewa_core::dynamics::{step_logit, LearningConfig, MixedState};
use ewa_core::ensemble::{class_fractions, dominance_fraction_grid, EnsembleSpec};
use ewa_core::fixedpoint::find_fixed_points;
use ewa_core::game::{GameClass, GameParams, PayoffMatrix};
use ewa_core::parallel;
use ewa_core::stochastic::{simulate_stochastic, AttractionState};
use output::{fmt, write_csv, write_summary, Manifest};
use presets::{figure_preset, game_preset, GridFamily, PresetData};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Degenerate(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Degenerate(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Degenerate(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("io error: {e}"))
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "ewa-lab", version, about = "EWA learning dynamics on 2x2 games")]
struct Cli {
    /// Worker threads for grid scans (falls back to EWA_LAB_THREADS, then
    /// all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a game and print its parameters and equilibria as JSON.
    Classify(ClassifyArgs),
    /// Locate fixed points: one game (JSON report) or a parameter grid (CSV).
    FixedPoints(FixedPointsArgs),
    /// Iterate the learning map and export the trajectory.
    Simulate(SimulateArgs),
    /// Bifurcation scan along alpha or beta.
    Bifurcation(BifurcationArgs),
    /// Lyapunov spectrum: single orbit, parameter sweep, or (A, B) grid.
    Lyapunov(LyapunovArgs),
    /// Random-game ensembles: class fractions or dominance-fraction grid.
    Ensemble(EnsembleArgs),
    /// Move autocorrelation of sampled play.
    Autocorr(AutocorrArgs),
    /// Re-execute a recorded manifest.
    Replay(ReplayArgs),
    /// List available presets.
    Presets,
}

#[derive(Args, Clone)]
struct GameInput {
    /// Payoff entries `a,b,c,d,e,f,g,h`.
    #[arg(long, allow_hyphen_values = true)]
    payoffs: Option<String>,
    /// JSON file with fields a..h.
    #[arg(long)]
    game: Option<PathBuf>,
    /// Named game or experiment preset.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Args, Clone)]
struct LearningArgs {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// Batch size for sampled play (omit for the deterministic limit).
    #[arg(long = "T")]
    batch: Option<u32>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    game: GameInput,
}

#[derive(Args)]
struct FixedPointsArgs {
    #[command(flatten)]
    game: GameInput,
    #[command(flatten)]
    learning: LearningArgs,
    /// Grid spec `AMIN:AMAX:N,BMIN:BMAX:N` over the parameter plane.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Parameter family for grid scans.
    #[arg(long, value_parser = ["symmetric", "antisymmetric"])]
    family: Option<String>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Output base name (defaults to the preset or command name).
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    game: GameInput,
    #[command(flatten)]
    learning: LearningArgs,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, default_value_t = 0)]
    transient: usize,
    /// Initial mixed strategy `x,y`.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    /// Sample play instead of iterating the deterministic map.
    #[arg(long)]
    stochastic: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct BifurcationArgs {
    #[command(flatten)]
    game: GameInput,
    #[command(flatten)]
    learning: LearningArgs,
    #[arg(long, value_parser = ["alpha", "beta"])]
    axis: Option<String>,
    /// Scan range `LO:HI`.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, default_value_t = 5_000)]
    transient: usize,
    /// Recorded values of x per parameter value.
    #[arg(long, default_value_t = 200)]
    record: usize,
    #[arg(long)]
    start: Option<String>,
    #[arg(long)]
    stochastic: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct LyapunovArgs {
    #[command(flatten)]
    game: GameInput,
    #[command(flatten)]
    learning: LearningArgs,
    /// Sweep axis; with neither `--axis` nor `--grid`, reports one orbit.
    #[arg(long, value_parser = ["alpha", "beta"])]
    axis: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long)]
    points: Option<usize>,
    /// Grid spec `AMIN:AMAX:N,BMIN:BMAX:N` over the antisymmetric plane.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    transient: Option<usize>,
    #[arg(long, default_value_t = 10)]
    renorm: usize,
    #[arg(long)]
    start: Option<String>,
    #[arg(long)]
    stochastic: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct EnsembleArgs {
    /// Payoff correlation for a single fraction measurement.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Correlation sweep `LO:HI`.
    #[arg(long, allow_hyphen_values = true)]
    gamma_range: Option<String>,
    #[arg(long)]
    points: Option<usize>,
    /// Samples per measurement.
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    /// Dominance-fraction grid spec `ACMIN:ACMAX:N,BDMIN:BDMAX:N`.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long, default_value_t = 1_000)]
    n_per_cell: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct AutocorrArgs {
    #[command(flatten)]
    game: GameInput,
    #[command(flatten)]
    learning: LearningArgs,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, default_value_t = 50)]
    lags: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    start: Option<String>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct ReplayArgs {
    /// Manifest file produced by an earlier run.
    manifest: PathBuf,
    /// Directory for the regenerated files (defaults to the manifest's).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful exits; anything else is a
            // usage error with code 1.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("EWA_LAB_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    match dispatch(cli.command, threads) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn dispatch(command: Command, threads: usize) -> CliResult<()> {
    match command {
        Command::Classify(args) => cmd_classify(args),
        Command::FixedPoints(args) => cmd_fixed_points(args, threads),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Bifurcation(args) => cmd_bifurcation(args),
        Command::Lyapunov(args) => cmd_lyapunov(args, threads),
        Command::Ensemble(args) => cmd_ensemble(args, threads),
        Command::Autocorr(args) => cmd_autocorr(args),
        Command::Replay(args) => cmd_replay(args, threads),
        Command::Presets => {
            println!("game presets:");
            for name in presets::GAME_PRESETS {
                println!("  {name}");
            }
            println!("experiment presets:");
            for name in presets::FIGURE_PRESETS {
                println!("  {name}");
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Input parsing helpers
// ---------------------------------------------------------------------------

fn parse_pair(text: &str, what: &str) -> CliResult<(f64, f64)> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!("{what}: expected `x,y`, got {text:?}")));
    }
    let x: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: bad number {:?}", parts[0])))?;
    let y: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: bad number {:?}", parts[1])))?;
    Ok((x, y))
}

fn parse_range(text: &str, what: &str) -> CliResult<(f64, f64)> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!("{what}: expected `LO:HI`, got {text:?}")));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: bad number {:?}", parts[0])))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: bad number {:?}", parts[1])))?;
    Ok((lo, hi))
}

/// `LO:HI:N,LO:HI:N` — two axes with point counts.
type GridSpec = ((f64, f64), usize, (f64, f64), usize);

fn parse_grid(text: &str) -> CliResult<GridSpec> {
    let axes: Vec<&str> = text.split(',').collect();
    if axes.len() != 2 {
        return Err(CliError::Usage(format!(
            "grid: expected `LO:HI:N,LO:HI:N`, got {text:?}"
        )));
    }
    let mut parsed = Vec::new();
    for axis in axes {
        let parts: Vec<&str> = axis.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Usage(format!("grid axis: expected `LO:HI:N`, got {axis:?}")));
        }
        let lo: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("grid: bad number {:?}", parts[0])))?;
        let hi: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("grid: bad number {:?}", parts[1])))?;
        let n: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("grid: bad count {:?}", parts[2])))?;
        if n < 2 {
            return Err(CliError::Usage("grid: need at least 2 points per axis".into()));
        }
        parsed.push(((lo, hi), n));
    }
    Ok((parsed[0].0, parsed[0].1, parsed[1].0, parsed[1].1))
}

fn load_game(input: &GameInput) -> CliResult<PayoffMatrix> {
    let mut sources = 0;
    sources += input.payoffs.is_some() as u8;
    sources += input.game.is_some() as u8;
    sources += input.preset.is_some() as u8;
    if sources != 1 {
        return Err(CliError::Usage(
            "specify exactly one of --payoffs, --game, --preset".into(),
        ));
    }
    if let Some(text) = &input.payoffs {
        return PayoffMatrix::from_csv_row(text).map_err(|e| CliError::Usage(e.to_string()));
    }
    if let Some(path) = &input.game {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        return serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad game JSON: {e}")));
    }
    let name = input.preset.as_deref().unwrap();
    game_preset(name).ok_or_else(|| CliError::Usage(format!("unknown game preset {name:?}")))
}

fn learning_config(args: &LearningArgs, alpha: f64, beta: f64) -> CliResult<LearningConfig> {
    let cfg = LearningConfig {
        alpha: args.alpha.unwrap_or(alpha),
        beta: args.beta.unwrap_or(beta),
        kappa: args.kappa,
        delta: args.delta,
        batch: args.batch,
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

fn require<T>(value: Option<T>, what: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("missing required --{what}")))
}

fn ensure_out_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

fn finite_or_fail(values: &[f64], context: &str) -> CliResult<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(CliError::Numerical(format!("non-finite state in {context}")))
    }
}

fn axis_from(name: &str) -> ScanAxis {
    if name == "alpha" {
        ScanAxis::Alpha
    } else {
        ScanAxis::Beta
    }
}

fn push_flag(argv: &mut Vec<String>, flag: &str, value: impl ToString) {
    argv.push(format!("--{flag}"));
    argv.push(value.to_string());
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

fn cmd_classify(args: ClassifyArgs) -> CliResult<()> {
    let p = load_game(&args.game)?;
    let class = p
        .classify()
        .map_err(|e| CliError::Degenerate(e.to_string()))?;
    let gp = p.params();
    let pure = p.pure_ne().map_err(|e| CliError::Degenerate(e.to_string()))?;
    let mixed = p.mixed_ne().map_err(|e| CliError::Degenerate(e.to_string()))?;
    let r = p.reduced();
    let report = serde_json::json!({
        "class": class.label(),
        "pure_ne": pure,
        "mixed_ne": mixed.map(|(x, y)| vec![x, y]),
        "dominant_ne": match class {
            GameClass::DominanceSolvable(cell) => Some(vec![cell.0, cell.1]),
            _ => None,
        },
        "reduced": { "h": r.h, "k": r.k, "l": r.l, "m": r.m },
        "params": {
            "A": gp.row_coord,
            "B": gp.row_dom,
            "C": gp.col_coord,
            "D": gp.col_dom,
            "coordination": gp.coordination(),
            "dominance": gp.dominance(),
            "coordination16": gp.coordination16(),
            "dominance16": gp.dominance16(),
        },
    });
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}

// ---------------------------------------------------------------------------
// fixed-points
// ---------------------------------------------------------------------------

fn cmd_fixed_points(args: FixedPointsArgs, threads: usize) -> CliResult<()> {
    // Grid mode from a preset or an explicit grid spec.
    let preset = args.game.preset.as_deref().and_then(figure_preset);
    if let Some(PresetData::FixedPointGrid { family, alpha, beta, a_range, b_range, resolution }) =
        preset
    {
        let cfg = learning_config(&args.learning, alpha, beta)?;
        return fixed_point_grid(
            &args, cfg, family, a_range, resolution, b_range, resolution, threads,
        );
    }
    if let Some(spec) = &args.grid {
        let (a_range, na, b_range, nb) = parse_grid(spec)?;
        let family = match args.family.as_deref() {
            Some("antisymmetric") => GridFamily::Antisymmetric,
            _ => GridFamily::Symmetric,
        };
        let alpha = require(args.learning.alpha, "alpha")?;
        let beta = require(args.learning.beta, "beta")?;
        let cfg = learning_config(&args.learning, alpha, beta)?;
        return fixed_point_grid(&args, cfg, family, a_range, na, b_range, nb, threads);
    }

    // Single-game mode: JSON report on stdout.
    let p = load_game(&args.game)?;
    let cfg = learning_config(
        &args.learning,
        require(args.learning.alpha, "alpha")?,
        require(args.learning.beta, "beta")?,
    )?;
    let reports =
        find_fixed_points(&p.params(), &cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    let items: Vec<serde_json::Value> = reports
        .iter()
        .map(|f| {
            let eigenvalues = match f.eigenvalues {
                ewa_core::fixedpoint::Eigenvalues::Real { plus, minus } => {
                    serde_json::json!({ "kind": "real", "plus": plus, "minus": minus })
                }
                ewa_core::fixedpoint::Eigenvalues::ComplexPair { re, im } => {
                    serde_json::json!({ "kind": "complex", "re": re, "im": im })
                }
            };
            serde_json::json!({
                "logit": [f.logit.0, f.logit.1],
                "mixed": [f.mixed.0, f.mixed.1],
                "branch": f.branch.label(),
                "eigenvalues": eigenvalues,
                "spectral_radius": f.spectral_radius,
                "stable": f.stable,
                "marginal": f.marginal,
            })
        })
        .collect();
    println!(
        "{}",
        serde_json::to_string_pretty(&serde_json::Value::Array(items)).unwrap()
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn fixed_point_grid(
    args: &FixedPointsArgs,
    cfg: LearningConfig,
    family: GridFamily,
    a_range: (f64, f64),
    na: usize,
    b_range: (f64, f64),
    nb: usize,
    threads: usize,
) -> CliResult<()> {
    ensure_out_dir(&args.out)?;
    let name = args
        .name
        .clone()
        .or_else(|| args.game.preset.clone())
        .unwrap_or_else(|| "fixed_points".into());
    let a_values = linspace(a_range, na);
    let b_values = linspace(b_range, nb);
    let rows_per_node = parallel::map_indexed(na * nb, threads, |k| {
        let a = a_values[k / nb];
        let b = b_values[k % nb];
        let gp = match family {
            GridFamily::Symmetric => GameParams::symmetric(a, b),
            GridFamily::Antisymmetric => GameParams::antisymmetric(a, b),
        };
        let fps = find_fixed_points(&gp, &cfg).expect("alpha > 0 checked at parse time");
        fps.iter()
            .map(|f| {
                format!(
                    "{},{},{},{},{},{},{},{},{}",
                    fmt(a),
                    fmt(b),
                    fmt(cfg.alpha),
                    fmt(cfg.beta),
                    fps.len(),
                    fmt(f.mixed.0),
                    fmt(f.mixed.1),
                    f.stable,
                    f.branch.label()
                )
            })
            .collect::<Vec<_>>()
    });
    let rows: Vec<String> = rows_per_node.into_iter().flatten().collect();
    let csv = args.out.join(format!("{name}.csv"));
    write_csv(
        &csv,
        "A,B,alpha,beta,n_fixed_points,x_star,y_star,stable,label",
        &rows,
    )?;

    let mut argv = vec!["fixed-points".to_string()];
    push_flag(
        &mut argv,
        "grid",
        format!("{}:{}:{na},{}:{}:{nb}", a_range.0, a_range.1, b_range.0, b_range.1),
    );
    push_flag(
        &mut argv,
        "family",
        match family {
            GridFamily::Symmetric => "symmetric",
            GridFamily::Antisymmetric => "antisymmetric",
        },
    );
    push_flag(&mut argv, "alpha", cfg.alpha);
    push_flag(&mut argv, "beta", cfg.beta);
    push_flag(&mut argv, "kappa", cfg.kappa);
    push_flag(&mut argv, "name", &name);
    Manifest::new("fixed-points", argv, vec![format!("{name}.csv")]).write(&args.out, &name)?;
    eprintln!("wrote {}", csv.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

fn cmd_simulate(args: SimulateArgs) -> CliResult<()> {
    let preset = args.game.preset.as_deref().and_then(figure_preset);
    let (p, cfg, steps, start, stochastic) = match preset {
        Some(PresetData::Simulate { payoffs, alpha, beta, steps, start, batch }) => {
            let mut learning = args.learning.clone();
            learning.batch = learning.batch.or(batch);
            let cfg = learning_config(&learning, alpha, beta)?;
            let start = match &args.start {
                Some(text) => parse_pair(text, "start")?,
                None => start,
            };
            let stochastic = args.stochastic || cfg.batch.is_some();
            (payoffs, cfg, args.steps.unwrap_or(steps), start, stochastic)
        }
        Some(_) => {
            return Err(CliError::Usage(
                "preset is not a trajectory experiment; see `ewa-lab presets`".into(),
            ))
        }
        None => {
            let p = load_game(&args.game)?;
            let cfg = learning_config(
                &args.learning,
                require(args.learning.alpha, "alpha")?,
                require(args.learning.beta, "beta")?,
            )?;
            let start = match &args.start {
                Some(text) => parse_pair(text, "start")?,
                None => (0.3, 0.2),
            };
            let stochastic = args.stochastic || cfg.batch.is_some();
            (p, cfg, require(args.steps, "steps")?, start, stochastic)
        }
    };
    if !(start.0 > 0.0 && start.0 < 1.0 && start.1 > 0.0 && start.1 < 1.0) {
        return Err(CliError::Usage(format!("start {start:?} not inside (0,1)^2")));
    }

    ensure_out_dir(&args.out)?;
    let name = args
        .name
        .clone()
        .or_else(|| args.game.preset.clone())
        .unwrap_or_else(|| "simulate".into());

    let mut rows = Vec::new();
    if stochastic {
        let q0 = AttractionState::from_mixed(MixedState::new(start.0, start.1), cfg.beta)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let run = simulate_stochastic(&q0, &p, &cfg, steps, args.seed);
        let batch = cfg.batch.unwrap_or(1) as usize;
        for (t, s) in run.states.iter().enumerate() {
            finite_or_fail(&[s.x, s.y], "simulate")?;
            if t == 0 {
                rows.push(format!("0,{},{},,", fmt(s.x), fmt(s.y)));
            } else {
                // One state row per batch; the move columns carry the first
                // round of the batch that produced this state.
                let idx = (t - 1) * batch;
                rows.push(format!(
                    "{t},{},{},{},{}",
                    fmt(s.x),
                    fmt(s.y),
                    run.moves.row[idx],
                    run.moves.col[idx]
                ));
            }
        }
    } else {
        let gp = p.params();
        let start_logit = MixedState::new(start.0, start.1)
            .to_logit()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let mut s = start_logit;
        for _ in 0..args.transient {
            s = step_logit(s, &gp, &cfg);
        }
        for t in 0..=steps {
            let m = s.to_mixed();
            finite_or_fail(&[s.x, s.y], "simulate")?;
            rows.push(format!("{t},{},{}", fmt(m.x), fmt(m.y)));
            s = step_logit(s, &gp, &cfg);
        }
    }
    let header = if stochastic { "t,x,y,move_row,move_col" } else { "t,x,y" };
    let csv = args.out.join(format!("{name}.csv"));
    write_csv(&csv, header, &rows)?;

    let mut argv = vec!["simulate".to_string()];
    push_flag(&mut argv, "payoffs", p.csv_row());
    push_flag(&mut argv, "alpha", cfg.alpha);
    push_flag(&mut argv, "beta", cfg.beta);
    push_flag(&mut argv, "kappa", cfg.kappa);
    push_flag(&mut argv, "delta", cfg.delta);
    if let Some(t) = cfg.batch {
        push_flag(&mut argv, "T", t);
    }
    if stochastic {
        argv.push("--stochastic".into());
        push_flag(&mut argv, "seed", args.seed);
    }
    push_flag(&mut argv, "steps", steps);
    push_flag(&mut argv, "transient", args.transient);
    push_flag(&mut argv, "start", format!("{},{}", start.0, start.1));
    push_flag(&mut argv, "name", &name);
    Manifest::new("simulate", argv, vec![format!("{name}.csv")]).write(&args.out, &name)?;
    eprintln!("wrote {}", csv.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// bifurcation
// ---------------------------------------------------------------------------

fn cmd_bifurcation(args: BifurcationArgs) -> CliResult<()> {
    let preset = args.game.preset.as_deref().and_then(figure_preset);
    let axis_name = args.axis.clone().unwrap_or_else(|| "alpha".to_string());
    let axis = axis_from(&axis_name);
    let (p, cfg, range, points, start) = match preset {
        Some(PresetData::Scan { payoffs, alpha, beta, alpha_range, beta_range, points, batch }) => {
            let mut learning = args.learning.clone();
            learning.batch = learning.batch.or(batch);
            let cfg = learning_config(&learning, alpha, beta)?;
            let range = match &args.range {
                Some(text) => parse_range(text, "range")?,
                None => match axis {
                    ScanAxis::Alpha => alpha_range,
                    ScanAxis::Beta => beta_range,
                },
            };
            let start = match &args.start {
                Some(text) => parse_pair(text, "start")?,
                None => (0.31, 0.44),
            };
            (payoffs, cfg, range, args.points.unwrap_or(points), start)
        }
        Some(_) => return Err(CliError::Usage("preset is not a scan experiment".into())),
        None => {
            let p = load_game(&args.game)?;
            let cfg = learning_config(
                &args.learning,
                require(args.learning.alpha, "alpha")?,
                require(args.learning.beta, "beta")?,
            )?;
            let range = parse_range(&require(args.range.clone(), "range")?, "range")?;
            let start = match &args.start {
                Some(text) => parse_pair(text, "start")?,
                None => (0.31, 0.44),
            };
            (p, cfg, range, require(args.points, "points")?, start)
        }
    };
    let stochastic = args.stochastic || cfg.batch.is_some();
    let source = if stochastic {
        OrbitSource::Stochastic { seed: args.seed }
    } else {
        OrbitSource::Deterministic
    };

    ensure_out_dir(&args.out)?;
    let name = args
        .name
        .clone()
        .or_else(|| args.game.preset.clone())
        .unwrap_or_else(|| "bifurcation".into());
    let scan = bifurcation_scan(
        &p,
        &cfg,
        axis,
        range,
        points,
        args.transient,
        args.record,
        MixedState::new(start.0, start.1),
        source,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;

    let mut rows = Vec::new();
    let mut min_x = f64::MAX;
    let mut max_x = f64::MIN;
    for (param, xs) in &scan {
        finite_or_fail(xs, "bifurcation")?;
        for x in xs {
            min_x = min_x.min(*x);
            max_x = max_x.max(*x);
            rows.push(format!("{},{}", fmt(*param), fmt(*x)));
        }
    }
    let csv = args.out.join(format!("{name}.csv"));
    write_csv(&csv, "param,x", &rows)?;
    write_summary(
        &args.out,
        &name,
        &[
            ("axis", serde_json::json!(axis.label())),
            ("param_range", serde_json::json!([range.0, range.1])),
            ("n", serde_json::json!(args.record)),
            ("transient", serde_json::json!(args.transient)),
            ("extrema", serde_json::json!({ "min_x": min_x, "max_x": max_x })),
        ],
    )?;

    let mut argv = vec!["bifurcation".to_string()];
    push_flag(&mut argv, "payoffs", p.csv_row());
    push_flag(&mut argv, "alpha", cfg.alpha);
    push_flag(&mut argv, "beta", cfg.beta);
    push_flag(&mut argv, "kappa", cfg.kappa);
    push_flag(&mut argv, "delta", cfg.delta);
    if let Some(t) = cfg.batch {
        push_flag(&mut argv, "T", t);
    }
    if stochastic {
        argv.push("--stochastic".into());
        push_flag(&mut argv, "seed", args.seed);
    }
    push_flag(&mut argv, "axis", &axis_name);
    push_flag(&mut argv, "range", format!("{}:{}", range.0, range.1));
    push_flag(&mut argv, "points", points);
    push_flag(&mut argv, "transient", args.transient);
    push_flag(&mut argv, "record", args.record);
    push_flag(&mut argv, "start", format!("{},{}", start.0, start.1));
    push_flag(&mut argv, "name", &name);
    Manifest::new(
        "bifurcation",
        argv,
        vec![format!("{name}.csv"), format!("{name}_summary.json")],
    )
    .write(&args.out, &name)?;
    eprintln!("wrote {}", csv.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// lyapunov
// ---------------------------------------------------------------------------

fn cmd_lyapunov(args: LyapunovArgs, threads: usize) -> CliResult<()> {
    let preset = args.game.preset.as_deref().and_then(figure_preset);

    // Grid mode over the antisymmetric (A, B) plane.
    if let Some(PresetData::LyapunovGrid { alpha, beta, a_range, b_range, resolution }) = preset {
        let cfg = learning_config(&args.learning, alpha, beta)?;
        return lyapunov_grid_mode(&args, cfg, a_range, resolution, b_range, resolution, threads);
    }
    if let Some(spec) = &args.grid {
        let (a_range, na, b_range, nb) = parse_grid(spec)?;
        let alpha = require(args.learning.alpha, "alpha")?;
        let beta = require(args.learning.beta, "beta")?;
        let cfg = learning_config(&args.learning, alpha, beta)?;
        return lyapunov_grid_mode(&args, cfg, a_range, na, b_range, nb, threads);
    }

    // Sweep or single-orbit mode: needs a game.
    let (p, cfg, range, points) = match preset {
        Some(PresetData::Scan { payoffs, alpha, beta, alpha_range, beta_range, points, batch }) => {
            let mut learning = args.learning.clone();
            learning.batch = learning.batch.or(batch);
            let cfg = learning_config(&learning, alpha, beta)?;
            let range = match (&args.range, args.axis.as_deref()) {
                (Some(text), _) => Some(parse_range(text, "range")?),
                (None, Some("beta")) => Some(beta_range),
                (None, Some(_)) => Some(alpha_range),
                (None, None) => None,
            };
            (payoffs, cfg, range, args.points.unwrap_or(points))
        }
        Some(_) => return Err(CliError::Usage("preset is not a Lyapunov experiment".into())),
        None => {
            let p = load_game(&args.game)?;
            let cfg = learning_config(
                &args.learning,
                require(args.learning.alpha, "alpha")?,
                require(args.learning.beta, "beta")?,
            )?;
            let range = match &args.range {
                Some(text) => Some(parse_range(text, "range")?),
                None => None,
            };
            (p, cfg, range, args.points.unwrap_or(100))
        }
    };
    let steps = args.steps.unwrap_or(chaos::DEFAULT_STEPS);
    let transient = args.transient.unwrap_or(chaos::DEFAULT_TRANSIENT);
    let start = match &args.start {
        Some(text) => parse_pair(text, "start")?,
        None => (0.31, 0.44),
    };
    let stochastic = args.stochastic || cfg.batch.is_some();

    let spectrum_at = |cfg: &LearningConfig, seed_index: u64| -> CliResult<chaos::LyapunovResult> {
        let start_state = MixedState::new(start.0, start.1);
        let r = if stochastic {
            lyapunov_stochastic(
                start_state,
                &p,
                cfg,
                steps,
                transient,
                args.renorm,
                ewa_core::rng::splitmix64(args.seed ^ seed_index),
            )
        } else {
            let s = start_state.to_logit().map_err(|e| CliError::Usage(e.to_string()))?;
            lyapunov_deterministic(s, &p.params(), cfg, steps, transient, args.renorm)
        };
        finite_or_fail(&[r.lambda1], "lyapunov")?;
        Ok(r)
    };

    match (range, args.axis.as_deref()) {
        (Some(range), Some(axis_name)) => {
            // Parameter sweep.
            ensure_out_dir(&args.out)?;
            let name = args
                .name
                .clone()
                .or_else(|| args.game.preset.clone())
                .unwrap_or_else(|| "lyapunov".into());
            let axis = axis_from(axis_name);
            let values = linspace(range, points);
            let mut rows = Vec::with_capacity(values.len());
            let mut min_lle = f64::MAX;
            let mut max_lle = f64::MIN;
            for (i, v) in values.iter().enumerate() {
                let swept = axis.apply(&cfg, *v);
                let r = spectrum_at(&swept, i as u64)?;
                min_lle = min_lle.min(r.lambda1);
                max_lle = max_lle.max(r.lambda1);
                rows.push(format!(
                    "{},{},{},{}",
                    fmt(*v),
                    fmt(r.lambda1),
                    fmt(r.lambda2),
                    fmt(r.kaplan_yorke.unwrap_or(f64::NAN))
                ));
            }
            let csv = args.out.join(format!("{name}.csv"));
            write_csv(&csv, "param,lle1,lle2,kaplan_yorke", &rows)?;
            write_summary(
                &args.out,
                &name,
                &[
                    ("axis", serde_json::json!(axis.label())),
                    ("param_range", serde_json::json!([range.0, range.1])),
                    ("n", serde_json::json!(steps)),
                    ("transient", serde_json::json!(transient)),
                    ("extrema", serde_json::json!({ "min_lle": min_lle, "max_lle": max_lle })),
                ],
            )?;
            let mut argv = vec!["lyapunov".to_string()];
            push_flag(&mut argv, "payoffs", p.csv_row());
            push_flag(&mut argv, "alpha", cfg.alpha);
            push_flag(&mut argv, "beta", cfg.beta);
            push_flag(&mut argv, "kappa", cfg.kappa);
            push_flag(&mut argv, "delta", cfg.delta);
            if let Some(t) = cfg.batch {
                push_flag(&mut argv, "T", t);
            }
            if stochastic {
                argv.push("--stochastic".into());
                push_flag(&mut argv, "seed", args.seed);
            }
            push_flag(&mut argv, "axis", axis_name);
            push_flag(&mut argv, "range", format!("{}:{}", range.0, range.1));
            push_flag(&mut argv, "points", points);
            push_flag(&mut argv, "steps", steps);
            push_flag(&mut argv, "transient", transient);
            push_flag(&mut argv, "renorm", args.renorm);
            push_flag(&mut argv, "start", format!("{},{}", start.0, start.1));
            push_flag(&mut argv, "name", &name);
            Manifest::new(
                "lyapunov",
                argv,
                vec![format!("{name}.csv"), format!("{name}_summary.json")],
            )
            .write(&args.out, &name)?;
            eprintln!("wrote {}", csv.display());
            Ok(())
        }
        _ => {
            // Single-orbit report to stdout.
            let r = spectrum_at(&cfg, 0)?;
            let report = serde_json::json!({
                "lambda1": r.lambda1,
                "lambda2": r.lambda2,
                "kaplan_yorke": r.kaplan_yorke,
                "n_steps": r.n_steps,
                "transient": r.transient,
                "renorm_interval": r.renorm_interval,
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
    }
}

fn lyapunov_grid_mode(
    args: &LyapunovArgs,
    cfg: LearningConfig,
    a_range: (f64, f64),
    na: usize,
    b_range: (f64, f64),
    nb: usize,
    threads: usize,
) -> CliResult<()> {
    ensure_out_dir(&args.out)?;
    let name = args
        .name
        .clone()
        .or_else(|| args.game.preset.clone())
        .unwrap_or_else(|| "lle_grid".into());
    let steps = args.steps.unwrap_or(30_000);
    let transient = args.transient.unwrap_or(3_000);
    let start = match &args.start {
        Some(text) => parse_pair(text, "start")?,
        None => (0.31, 0.44),
    };
    let start_logit = MixedState::new(start.0, start.1)
        .to_logit()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let a_values = linspace(a_range, na);
    let b_values = linspace(b_range, nb);
    let grid = lle_grid(
        &a_values,
        &b_values,
        &cfg,
        steps,
        transient,
        args.renorm,
        start_logit,
        threads,
    );
    let mut rows = Vec::with_capacity(na * nb);
    let mut min_lle = f64::MAX;
    let mut max_lle = f64::MIN;
    for (i, row) in grid.iter().enumerate() {
        for (j, lle) in row.iter().enumerate() {
            finite_or_fail(&[*lle], "lle grid")?;
            min_lle = min_lle.min(*lle);
            max_lle = max_lle.max(*lle);
            rows.push(format!("{},{},{}", fmt(a_values[i]), fmt(b_values[j]), fmt(*lle)));
        }
    }
    let csv = args.out.join(format!("{name}.csv"));
    write_csv(&csv, "A,B,lle", &rows)?;
    write_summary(
        &args.out,
        &name,
        &[
            ("a_range", serde_json::json!([a_range.0, a_range.1])),
            ("b_range", serde_json::json!([b_range.0, b_range.1])),
            ("n", serde_json::json!(steps)),
            ("transient", serde_json::json!(transient)),
            ("extrema", serde_json::json!({ "min_lle": min_lle, "max_lle": max_lle })),
        ],
    )?;
    let mut argv = vec!["lyapunov".to_string()];
    push_flag(
        &mut argv,
        "grid",
        format!("{}:{}:{na},{}:{}:{nb}", a_range.0, a_range.1, b_range.0, b_range.1),
    );
    push_flag(&mut argv, "alpha", cfg.alpha);
    push_flag(&mut argv, "beta", cfg.beta);
    push_flag(&mut argv, "kappa", cfg.kappa);
    push_flag(&mut argv, "steps", steps);
    push_flag(&mut argv, "transient", transient);
    push_flag(&mut argv, "renorm", args.renorm);
    push_flag(&mut argv, "start", format!("{},{}", start.0, start.1));
    push_flag(&mut argv, "name", &name);
    Manifest::new(
        "lyapunov",
        argv,
        vec![format!("{name}.csv"), format!("{name}_summary.json")],
    )
    .write(&args.out, &name)?;
    eprintln!("wrote {}", csv.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// ensemble
// ---------------------------------------------------------------------------

fn cmd_ensemble(args: EnsembleArgs, threads: usize) -> CliResult<()> {
    ensure_out_dir(&args.out)?;
    let preset = args.preset.as_deref().and_then(figure_preset);

    // Dominance-fraction grid mode.
    let grid_config = match (&preset, &args.grid) {
        (Some(PresetData::EnsembleGrid { ac_range, bd_range, points, n_per_cell }), _) => {
            Some((*ac_range, *points, *bd_range, *points, *n_per_cell))
        }
        (_, Some(spec)) => {
            let (ac, na, bd, nb) = parse_grid(spec)?;
            Some((ac, na, bd, nb, args.n_per_cell))
        }
        _ => None,
    };
    if let Some((ac_range, na, bd_range, nb, n_per_cell)) = grid_config {
        let name = args
            .name
            .clone()
            .or_else(|| args.preset.clone())
            .unwrap_or_else(|| "dominance_grid".into());
        let ac_values = linspace(ac_range, na);
        let bd_values = linspace(bd_range, nb);
        let grid = dominance_fraction_grid(&ac_values, &bd_values, n_per_cell, args.seed, threads);
        let mut rows = Vec::with_capacity(na * nb);
        for (i, row) in grid.iter().enumerate() {
            for (j, frac) in row.iter().enumerate() {
                rows.push(format!(
                    "{},{},{}",
                    fmt(ac_values[i]),
                    fmt(bd_values[j]),
                    fmt(*frac)
                ));
            }
        }
        let csv = args.out.join(format!("{name}.csv"));
        write_csv(&csv, "ac,bd_abs,frac_dominance", &rows)?;
        let mut argv = vec!["ensemble".to_string()];
        push_flag(
            &mut argv,
            "grid",
            format!("{}:{}:{na},{}:{}:{nb}", ac_range.0, ac_range.1, bd_range.0, bd_range.1),
        );
        push_flag(&mut argv, "n-per-cell", n_per_cell);
        push_flag(&mut argv, "seed", args.seed);
        push_flag(&mut argv, "name", &name);
        Manifest::new("ensemble", argv, vec![format!("{name}.csv")]).write(&args.out, &name)?;
        eprintln!("wrote {}", csv.display());
        return Ok(());
    }

    // Class-fraction mode: one gamma or a sweep.
    let (gammas, n_samples) = match (&preset, args.gamma, &args.gamma_range) {
        (Some(PresetData::EnsembleFractions { gamma_range, points, n_samples }), _, _) => {
            (linspace(*gamma_range, *points), *n_samples)
        }
        (Some(_), _, _) => {
            return Err(CliError::Usage("preset is not an ensemble experiment".into()))
        }
        (None, Some(gamma), None) => (vec![gamma], args.n),
        (None, None, Some(range)) => {
            let range = parse_range(range, "gamma-range")?;
            (linspace(range, args.points.unwrap_or(21)), args.n)
        }
        _ => return Err(CliError::Usage("specify --gamma, --gamma-range, or --preset".into())),
    };
    for gamma in &gammas {
        if gamma.abs() > 1.0 {
            return Err(CliError::Usage(format!("gamma {gamma} outside [-1, 1]")));
        }
    }
    let name = args
        .name
        .clone()
        .or_else(|| args.preset.clone())
        .unwrap_or_else(|| "ensemble".into());
    let fractions = parallel::map_indexed(gammas.len(), threads, |i| {
        class_fractions(&EnsembleSpec {
            gamma: gammas[i],
            n_samples,
            seed: ewa_core::rng::splitmix64(args.seed ^ i as u64),
        })
    });
    let mut rows = Vec::with_capacity(gammas.len());
    for (gamma, f) in gammas.iter().zip(&fractions) {
        rows.push(format!(
            "{},{},{},{},{},{},{},{},{}",
            fmt(*gamma),
            fmt(f.dominance()),
            fmt(f.coordination()),
            fmt(f.anticoordination()),
            fmt(f.discoordination()),
            fmt(f.standard_error(f.dominance())),
            fmt(f.standard_error(f.coordination())),
            fmt(f.standard_error(f.anticoordination())),
            fmt(f.standard_error(f.discoordination())),
        ));
    }
    let csv = args.out.join(format!("{name}.csv"));
    write_csv(
        &csv,
        "gamma,frac_dominance,frac_coordination,frac_anticoordination,frac_discoordination,\
         se_dominance,se_coordination,se_anticoordination,se_discoordination",
        &rows,
    )?;
    // Single-gamma runs also report to stdout for quick inspection.
    if gammas.len() == 1 {
        let f = &fractions[0];
        let report = serde_json::json!({
            "gamma": gammas[0],
            "n": n_samples,
            "frac_dominance": f.dominance(),
            "frac_coordination": f.coordination(),
            "frac_anticoordination": f.anticoordination(),
            "frac_discoordination": f.discoordination(),
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    }
    let mut argv = vec!["ensemble".to_string()];
    if gammas.len() == 1 {
        push_flag(&mut argv, "gamma", gammas[0]);
    } else {
        push_flag(
            &mut argv,
            "gamma-range",
            format!("{}:{}", gammas[0], gammas[gammas.len() - 1]),
        );
        push_flag(&mut argv, "points", gammas.len());
    }
    push_flag(&mut argv, "n", n_samples);
    push_flag(&mut argv, "seed", args.seed);
    push_flag(&mut argv, "name", &name);
    Manifest::new("ensemble", argv, vec![format!("{name}.csv")]).write(&args.out, &name)?;
    eprintln!("wrote {}", csv.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// autocorr
// ---------------------------------------------------------------------------

fn cmd_autocorr(args: AutocorrArgs) -> CliResult<()> {
    ensure_out_dir(&args.out)?;
    let preset = args.game.preset.as_deref().and_then(figure_preset);

    // The comparison preset runs both regimes and writes one CSV per regime.
    if let Some(PresetData::Autocorr { payoffs, alpha, betas, steps, max_lag }) = preset {
        let base = args.game.preset.clone().unwrap();
        let mut outputs = Vec::new();
        for (tag, beta) in [("chaotic", betas.0), ("stable", betas.1)] {
            let cfg = LearningConfig::new(alpha, beta, args.learning.kappa)
                .with_delta(args.learning.delta)
                .with_batch(args.learning.batch.unwrap_or(1));
            let rows = autocorr_rows(
                &payoffs,
                &cfg,
                args.steps.unwrap_or(steps),
                args.lags.min(max_lag),
                args.seed,
                (0.5, 0.5),
            )?;
            let file = format!("{base}_{tag}.csv");
            write_csv(&args.out.join(&file), "lag,r_row,r_col", &rows)?;
            outputs.push(file);
        }
        let mut argv = vec!["autocorr".to_string()];
        push_flag(&mut argv, "preset", &base);
        push_flag(&mut argv, "seed", args.seed);
        Manifest::new("autocorr", argv, outputs.clone()).write(&args.out, &base)?;
        eprintln!("wrote {} files in {}", outputs.len(), args.out.display());
        return Ok(());
    }
    if preset.is_some() {
        return Err(CliError::Usage("preset is not an autocorrelation experiment".into()));
    }

    let p = load_game(&args.game)?;
    let cfg = learning_config(
        &args.learning,
        require(args.learning.alpha, "alpha")?,
        require(args.learning.beta, "beta")?,
    )?;
    let cfg = LearningConfig { batch: Some(cfg.batch.unwrap_or(1)), ..cfg };
    let start = match &args.start {
        Some(text) => parse_pair(text, "start")?,
        None => (0.5, 0.5),
    };
    let steps = require(args.steps, "steps")?;
    let name = args.name.clone().unwrap_or_else(|| "autocorr".into());
    let rows = autocorr_rows(&p, &cfg, steps, args.lags, args.seed, start)?;
    let csv = args.out.join(format!("{name}.csv"));
    write_csv(&csv, "lag,r_row,r_col", &rows)?;
    let mut argv = vec!["autocorr".to_string()];
    push_flag(&mut argv, "payoffs", p.csv_row());
    push_flag(&mut argv, "alpha", cfg.alpha);
    push_flag(&mut argv, "beta", cfg.beta);
    push_flag(&mut argv, "kappa", cfg.kappa);
    push_flag(&mut argv, "delta", cfg.delta);
    push_flag(&mut argv, "T", cfg.batch.unwrap_or(1));
    push_flag(&mut argv, "steps", steps);
    push_flag(&mut argv, "lags", args.lags);
    push_flag(&mut argv, "seed", args.seed);
    push_flag(&mut argv, "start", format!("{},{}", start.0, start.1));
    push_flag(&mut argv, "name", &name);
    Manifest::new("autocorr", argv, vec![format!("{name}.csv")]).write(&args.out, &name)?;
    eprintln!("wrote {}", csv.display());
    Ok(())
}

fn autocorr_rows(
    p: &PayoffMatrix,
    cfg: &LearningConfig,
    steps: usize,
    max_lag: usize,
    seed: u64,
    start: (f64, f64),
) -> CliResult<Vec<String>> {
    let q0 = AttractionState::from_mixed(MixedState::new(start.0, start.1), cfg.beta)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let run = simulate_stochastic(&q0, p, cfg, steps, seed);
    let (rr, rc) = run
        .moves
        .autocorrelation(max_lag)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(rr
        .iter()
        .zip(&rc)
        .enumerate()
        .map(|(i, (a, b))| format!("{},{},{}", i + 1, fmt(*a), fmt(*b)))
        .collect())
}

// ---------------------------------------------------------------------------
// replay
// ---------------------------------------------------------------------------

fn cmd_replay(args: ReplayArgs, threads: usize) -> CliResult<()> {
    let text = std::fs::read_to_string(&args.manifest)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", args.manifest.display())))?;
    let manifest: Manifest =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad manifest: {e}")))?;
    let out_dir = match args.out {
        Some(dir) => dir,
        None => args
            .manifest
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from(".")),
    };
    let mut argv = vec!["ewa-lab".to_string()];
    argv.extend(manifest.argv.iter().cloned());
    argv.push("--out".to_string());
    argv.push(out_dir.to_string_lossy().into_owned());
    let cli = Cli::try_parse_from(&argv)
        .map_err(|e| CliError::Usage(format!("manifest arguments no longer parse: {e}")))?;
    dispatch(cli.command, threads)
}
