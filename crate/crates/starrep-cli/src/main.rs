//! `starrep` — compute stellar (Majorana-star) representations from the
//! command line.
//!
//! Subcommands: `stars` (one constellation), `sweep` (one record per
//! parameter value), `evolve` (constellations along a Kerr-evolution time
//! grid). Output is deterministic JSON or CSV: identical arguments produce
//! byte-identical bytes.
//!
//! Exit codes: 0 success, 2 argument or domain errors, 3 numerical failure.

mod output;
mod parse;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use output::{
    fmt_complex, fmt_f64, json_escape, run_record_json, star_set_csv_rows, star_set_fields,
    EVOLVE_CSV_HEADER, STARS_CSV_HEADER, SWEEP_CSV_HEADER,
};
use parse::{parse_complex, parse_times, split_values};
use starrep::{
    stars, trajectory, Error as StarError, EvolutionSpec, PureState, SolverConfig, SymmetryKind,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "starrep",
    version,
    about = "Stellar (Majorana-star) representations of pure quantum states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the constellation of a single state.
    Stars(StarsArgs),
    /// Compute one record per value of a swept parameter.
    Sweep(SweepArgs),
    /// Evolve a state under H = omega_lin N + omega_nl N^2 and compute the
    /// constellation at each time.
    Evolve(EvolveArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Symmetry class of the state.
    #[arg(long, value_enum)]
    symmetry: SymmetryArg,
    /// Basis cutoff N (hw and su11).
    #[arg(long)]
    cutoff: Option<u32>,
    /// Spin j (su2); half-integers allowed.
    #[arg(long)]
    spin: Option<f64>,
    /// Bargmann index k (su11).
    #[arg(long)]
    bargmann: Option<f64>,
    /// State kind: coherent | squeezed | cat2 | cat4 | file:PATH.
    #[arg(long)]
    state: String,
    /// Coherent/cat displacement, as RE or RE+IMi (no spaces).
    #[arg(long)]
    alpha: Option<String>,
    /// Squeezing parameter, as RE or RE+IMi (no spaces).
    #[arg(long)]
    xi: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,
    /// Write to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Root-step convergence tolerance.
    #[arg(long, default_value_t = 1e-12)]
    root_tol: f64,
    /// Maximum acceptable relative root residual.
    #[arg(long, default_value_t = 1e-8)]
    residual_tol: f64,
    /// Iteration cap for the simultaneous root iteration.
    #[arg(long, default_value_t = 500)]
    max_iter: usize,
    /// Chordal-metric radius for merging stars into one cluster.
    #[arg(long, default_value_t = 1e-6)]
    cluster_radius: f64,
}

#[derive(Args)]
struct StarsArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Parameter to sweep.
    #[arg(long, value_enum)]
    param: SweepParam,
    /// Comma-separated values of the swept parameter.
    #[arg(long)]
    values: String,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Nonlinear strength (rad/time), must be positive.
    #[arg(long)]
    omega_nl: f64,
    /// Linear splitting; 0 is the interaction picture.
    #[arg(long, default_value_t = 0.0)]
    omega_lin: f64,
    /// Time grid: comma list or start:stop:step.
    #[arg(long)]
    times: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymmetryArg {
    Hw,
    Su2,
    Su11,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepParam {
    Xi,
    Cutoff,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }
}

impl From<StarError> for CliError {
    fn from(err: StarError) -> CliError {
        let numerical = matches!(err, StarError::NoConvergence { .. })
            || matches!(&err, StarError::AtTime { source, .. }
                if matches!(**source, StarError::NoConvergence { .. }));
        CliError { code: if numerical { 3 } else { 2 }, message: err.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match cli.command {
        Command::Stars(args) => cmd_stars(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Evolve(args) => cmd_evolve(args),
    };
    match result {
        Ok(()) => {
            eprintln!("# wall time: {:.3}s", started.elapsed().as_secs_f64());
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

// ---------------------------------------------------------------------------
// argument resolution
// ---------------------------------------------------------------------------

/// State request parsed from `--state`, `--alpha`, `--xi`.
enum StateSpec {
    Coherent(Complex64),
    Squeezed(Complex64),
    CatTwo(Complex64),
    CatFour(Complex64),
    File(PathBuf),
}

impl StateSpec {
    fn kind(&self) -> &'static str {
        match self {
            StateSpec::Coherent(_) => "coherent",
            StateSpec::Squeezed(_) => "squeezed",
            StateSpec::CatTwo(_) => "cat2",
            StateSpec::CatFour(_) => "cat4",
            StateSpec::File(_) => "file",
        }
    }

    fn echo_json(&self) -> String {
        match self {
            StateSpec::Coherent(a) | StateSpec::CatTwo(a) | StateSpec::CatFour(a) => format!(
                "{{\"kind\":\"{}\",\"alpha\":{}}}",
                self.kind(),
                fmt_complex(*a)
            ),
            StateSpec::Squeezed(xi) => {
                format!("{{\"kind\":\"squeezed\",\"xi\":{}}}", fmt_complex(*xi))
            }
            StateSpec::File(path) => format!(
                "{{\"kind\":\"file\",\"path\":\"{}\"}}",
                json_escape(&path.display().to_string())
            ),
        }
    }
}

fn resolve_symmetry(args: &CommonArgs) -> Result<SymmetryKind, CliError> {
    let forbid = |flag: &Option<f64>, name: &str, sym: &str| -> Result<(), CliError> {
        if flag.is_some() {
            Err(CliError::usage(format!("--{name} does not apply to --symmetry {sym}")))
        } else {
            Ok(())
        }
    };
    match args.symmetry {
        SymmetryArg::Hw => {
            forbid(&args.spin, "spin", "hw")?;
            forbid(&args.bargmann, "bargmann", "hw")?;
            let cutoff = args
                .cutoff
                .ok_or_else(|| CliError::usage("--symmetry hw requires --cutoff"))?;
            Ok(SymmetryKind::heisenberg_weyl(cutoff)?)
        }
        SymmetryArg::Su2 => {
            if args.cutoff.is_some() {
                return Err(CliError::usage("--cutoff does not apply to --symmetry su2"));
            }
            forbid(&args.bargmann, "bargmann", "su2")?;
            let spin = args
                .spin
                .ok_or_else(|| CliError::usage("--symmetry su2 requires --spin"))?;
            Ok(SymmetryKind::su2(spin)?)
        }
        SymmetryArg::Su11 => {
            forbid(&args.spin, "spin", "su11")?;
            let bargmann = args
                .bargmann
                .ok_or_else(|| CliError::usage("--symmetry su11 requires --bargmann"))?;
            let cutoff = args
                .cutoff
                .ok_or_else(|| CliError::usage("--symmetry su11 requires --cutoff"))?;
            Ok(SymmetryKind::su11(bargmann, cutoff)?)
        }
    }
}

fn resolve_state_spec(args: &CommonArgs) -> Result<StateSpec, CliError> {
    let alpha = || -> Result<Complex64, CliError> {
        let raw = args
            .alpha
            .as_deref()
            .ok_or_else(|| CliError::usage(format!("--state {} requires --alpha", args.state)))?;
        parse_complex(raw).map_err(CliError::usage)
    };
    let no_alpha = |kind: &str| -> Result<(), CliError> {
        if args.alpha.is_some() {
            Err(CliError::usage(format!("--alpha does not apply to --state {kind}")))
        } else {
            Ok(())
        }
    };
    let no_xi = |kind: &str| -> Result<(), CliError> {
        if args.xi.is_some() {
            Err(CliError::usage(format!("--xi does not apply to --state {kind}")))
        } else {
            Ok(())
        }
    };
    match args.state.as_str() {
        "coherent" => {
            no_xi("coherent")?;
            Ok(StateSpec::Coherent(alpha()?))
        }
        "squeezed" => {
            no_alpha("squeezed")?;
            let raw = args
                .xi
                .as_deref()
                .ok_or_else(|| CliError::usage("--state squeezed requires --xi"))?;
            Ok(StateSpec::Squeezed(parse_complex(raw).map_err(CliError::usage)?))
        }
        "cat2" => {
            no_xi("cat2")?;
            Ok(StateSpec::CatTwo(alpha()?))
        }
        "cat4" => {
            no_xi("cat4")?;
            Ok(StateSpec::CatFour(alpha()?))
        }
        other => {
            if let Some(path) = other.strip_prefix("file:") {
                no_alpha("file:PATH")?;
                no_xi("file:PATH")?;
                Ok(StateSpec::File(PathBuf::from(path)))
            } else {
                Err(CliError::usage(format!(
                    "unknown --state `{other}` (expected coherent|squeezed|cat2|cat4|file:PATH)"
                )))
            }
        }
    }
}

fn build_state(sym: SymmetryKind, spec: &StateSpec) -> Result<PureState, CliError> {
    match spec {
        StateSpec::Coherent(alpha) => Ok(PureState::coherent(sym, *alpha)?),
        StateSpec::Squeezed(xi) => {
            if matches!(sym, SymmetryKind::Su11 { .. }) && xi.norm() >= 1.0 {
                eprintln!(
                    "note: |xi| = {} >= 1 is representable only through the cutoff truncation",
                    xi.norm()
                );
            }
            Ok(PureState::squeezed_vacuum(sym, *xi)?)
        }
        StateSpec::CatTwo(alpha) => Ok(PureState::cat_two(sym, *alpha)?),
        StateSpec::CatFour(alpha) => Ok(PureState::cat_four(sym, *alpha)?),
        StateSpec::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::usage(format!("cannot read {}: {e}", path.display()))
            })?;
            let pairs: Vec<[f64; 2]> = serde_json::from_str(&text).map_err(|e| {
                CliError::usage(format!(
                    "{} is not a JSON array of [re, im] pairs: {e}",
                    path.display()
                ))
            })?;
            let amps: Vec<Complex64> =
                pairs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
            Ok(PureState::from_amplitudes(sym, &amps)?)
        }
    }
}

fn solver_config(args: &CommonArgs) -> SolverConfig {
    SolverConfig {
        root_tol: args.root_tol,
        residual_tol: args.residual_tol,
        max_iter: args.max_iter,
        cluster_radius: args.cluster_radius,
    }
}

fn symmetry_echo(sym: &SymmetryKind) -> String {
    match *sym {
        SymmetryKind::HeisenbergWeyl { cutoff } => {
            format!("{{\"kind\":\"hw\",\"cutoff\":{cutoff}}}")
        }
        SymmetryKind::Su2 { two_j } => {
            format!("{{\"kind\":\"su2\",\"spin\":{}}}", fmt_f64(two_j as f64 / 2.0))
        }
        SymmetryKind::Su11 { bargmann, cutoff } => format!(
            "{{\"kind\":\"su11\",\"bargmann\":{},\"cutoff\":{cutoff}}}",
            fmt_f64(bargmann)
        ),
    }
}

fn solver_echo(cfg: &SolverConfig) -> String {
    format!(
        "{{\"root_tol\":{},\"residual_tol\":{},\"max_iter\":{},\"cluster_radius\":{}}}",
        fmt_f64(cfg.root_tol),
        fmt_f64(cfg.residual_tol),
        cfg.max_iter,
        fmt_f64(cfg.cluster_radius)
    )
}

fn spec_echo(sym: &SymmetryKind, state: &StateSpec, cfg: &SolverConfig, extra: &str) -> String {
    format!(
        "{{\"symmetry\":{},\"state\":{},\"solver\":{}{}}}",
        symmetry_echo(sym),
        state.echo_json(),
        solver_echo(cfg),
        extra
    )
}

fn write_out(args: &CommonArgs, payload: &str) -> Result<(), CliError> {
    match &args.output {
        Some(path) => std::fs::write(path, payload).map_err(|e| {
            CliError::usage(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(payload.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|e| CliError::usage(format!("cannot write to stdout: {e}")))
        }
    }
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

fn cmd_stars(args: StarsArgs) -> Result<(), CliError> {
    let common = &args.common;
    let sym = resolve_symmetry(common)?;
    let state_spec = resolve_state_spec(common)?;
    let state = build_state(sym, &state_spec)?;
    let cfg = solver_config(common);
    let set = stars(&state, &cfg)?;
    let payload = match common.out {
        OutFormat::Json => {
            let spec = spec_echo(&sym, &state_spec, &cfg, "");
            let mut s = run_record_json(&spec, &set, VERSION);
            s.push('\n');
            s
        }
        OutFormat::Csv => {
            let mut s = String::from(STARS_CSV_HEADER);
            star_set_csv_rows(&set, "", &mut s);
            s
        }
    };
    write_out(common, &payload)
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let common = &args.common;
    let tokens = split_values(&args.values);
    if tokens.is_empty() || tokens.iter().any(|t| t.is_empty()) {
        return Err(CliError::usage("--values must be a non-empty comma list"));
    }

    // Each sweep entry is (csv token, symmetry, state spec).
    let mut entries: Vec<(String, SymmetryKind, StateSpec)> = Vec::new();
    match args.param {
        SweepParam::Xi => {
            if common.xi.is_some() {
                return Err(CliError::usage("--xi conflicts with --param xi (use --values)"));
            }
            if common.state != "squeezed" {
                return Err(CliError::usage("--param xi requires --state squeezed"));
            }
            let sym = resolve_symmetry(common)?;
            for token in &tokens {
                let xi = parse_complex(token).map_err(CliError::usage)?;
                entries.push((token.clone(), sym, StateSpec::Squeezed(xi)));
            }
        }
        SweepParam::Cutoff => {
            if common.cutoff.is_some() {
                return Err(CliError::usage(
                    "--cutoff conflicts with --param cutoff (use --values)",
                ));
            }
            if matches!(common.symmetry, SymmetryArg::Su2) {
                return Err(CliError::usage("--param cutoff does not apply to su2"));
            }
            for token in &tokens {
                let cutoff: u32 = token
                    .parse()
                    .map_err(|_| CliError::usage(format!("invalid cutoff `{token}`")))?;
                let sym = match common.symmetry {
                    SymmetryArg::Hw => SymmetryKind::heisenberg_weyl(cutoff)?,
                    SymmetryArg::Su11 => {
                        let bargmann = common.bargmann.ok_or_else(|| {
                            CliError::usage("--symmetry su11 requires --bargmann")
                        })?;
                        SymmetryKind::su11(bargmann, cutoff)?
                    }
                    SymmetryArg::Su2 => unreachable!(),
                };
                let state_spec = resolve_state_spec(common)?;
                entries.push((token.clone(), sym, state_spec));
            }
        }
    }

    let cfg = solver_config(common);
    let param_name = match args.param {
        SweepParam::Xi => "xi",
        SweepParam::Cutoff => "cutoff",
    };
    let mut records = Vec::new();
    let mut csv = String::from(SWEEP_CSV_HEADER);
    for (token, sym, state_spec) in &entries {
        let state = build_state(*sym, state_spec)?;
        let set = stars(&state, &cfg)?;
        match common.out {
            OutFormat::Json => {
                let spec = spec_echo(sym, state_spec, &cfg, "");
                records.push(run_record_json(&spec, &set, VERSION));
            }
            OutFormat::Csv => {
                let prefix = format!("{param_name},{token},");
                star_set_csv_rows(&set, &prefix, &mut csv);
            }
        }
    }
    let payload = match common.out {
        OutFormat::Json => format!("[{}]\n", records.join(",")),
        OutFormat::Csv => csv,
    };
    write_out(common, &payload)
}

fn cmd_evolve(args: EvolveArgs) -> Result<(), CliError> {
    let common = &args.common;
    let sym = resolve_symmetry(common)?;
    let state_spec = resolve_state_spec(common)?;
    let state = build_state(sym, &state_spec)?;
    let cfg = solver_config(common);
    let times = parse_times(&args.times).map_err(CliError::usage)?;
    let spec = EvolutionSpec::new(args.omega_nl, args.omega_lin, times)?;
    let path = trajectory(&state, &spec, &cfg)?;

    let payload = match common.out {
        OutFormat::Json => {
            let times_json: Vec<String> =
                spec.times().iter().map(|t| fmt_f64(*t)).collect();
            let extra = format!(
                ",\"omega_nl\":{},\"omega_lin\":{},\"times\":[{}]",
                fmt_f64(spec.omega_nl()),
                fmt_f64(spec.omega_lin()),
                times_json.join(",")
            );
            let spec_json = spec_echo(&sym, &state_spec, &cfg, &extra);
            let records: Vec<String> = path
                .iter()
                .map(|(t, set)| {
                    format!("{{\"t\":{},{}}}", fmt_f64(*t), star_set_fields(set))
                })
                .collect();
            format!(
                "{{\"spec\":{},\"records\":[{}],\"version\":\"{}\"}}\n",
                spec_json,
                records.join(","),
                VERSION
            )
        }
        OutFormat::Csv => {
            let mut csv = String::from(EVOLVE_CSV_HEADER);
            for (t, set) in &path {
                let prefix = format!("{},", fmt_f64(*t));
                star_set_csv_rows(set, &prefix, &mut csv);
            }
            csv
        }
    };
    write_out(common, &payload)
}
