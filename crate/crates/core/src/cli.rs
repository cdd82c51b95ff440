//! The `qseal` command line: `seal`, `open`, `verify`, `attack`, `bounds`.
//!
//! Exit status: 0 success or accept, 1 reject, 2 usage or input error,
//! 3 infeasible parameters or an uncorrectable syndrome.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::backend::{Prep, RngSource};
use crate::codes::StabilizerCode;
use crate::error::Error;
use crate::pauli::{Pauli, PauliOperator};
use crate::seal::{
    seal, verify, PlacementMap, PublicPackage, SealParameters, SealedMessage, VerifierKey, VerifyMode,
    ARTIFACT_VERSION,
};
use crate::security::bounds::{
    alpha_closed_form, alpha_of, epsilon_condition, parameter_search, search_code_shape, DEFAULT_RATE,
};
use crate::security::sweeps::{leak_rows, psi_rows, write_csv};
use crate::security::{
    acceptance_exact_over_placements, enumerate_passing, passes_exact, passing_from_group, placement_leak_exact,
    run_trials, trial_rng, within_sigmas, CheatStrategy, SecurityParameters,
};
use crate::tableau::StabilizerState;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Schema { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Infeasible(_) | Error::Uncorrectable(_) | Error::NotInCodespace(_)) => EXIT_INFEASIBLE,
            _ => EXIT_USAGE,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "qseal", version, about = "Seal, open, verify and attack a quantum seal")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Encode a message qubit and write the public package and verifier key.
    Seal(SealArgs),
    /// Run the public opening procedure on a package.
    Open(OpenArgs),
    /// Check a package against its key.
    Verify(VerifyArgs),
    /// Run an attack repeatedly and report detection statistics.
    Attack(AttackArgs),
    /// Evaluate the security bounds and search for a block length.
    Bounds(BoundsArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SealArgs {
    /// Message code: steane7, perfect5 or a JSON code file.
    #[arg(long, default_value = "steane7")]
    pub code: String,
    /// Decoy code: steane7, perfect5 or a JSON code file.
    #[arg(long, default_value = "perfect5")]
    pub decoy: String,
    /// zero, one, plus, minus or plus-i.
    #[arg(long, default_value = "zero")]
    pub prep: String,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value = "package.json")]
    pub package: PathBuf,
    #[arg(long, default_value = "key.json")]
    pub key: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OpenArgs {
    #[arg(long)]
    pub package: PathBuf,
    /// Seed for the syndrome measurement outcomes.
    #[arg(long)]
    pub seed: u64,
    /// Write the post-open package here.
    #[arg(long)]
    pub write_package: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub package: PathBuf,
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value = "original")]
    pub mode: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct AttackArgs {
    #[arg(long, default_value = "steane7")]
    pub code: String,
    #[arg(long, default_value = "perfect5")]
    pub decoy: String,
    #[arg(long, default_value = "zero")]
    pub prep: String,
    #[arg(long)]
    pub seed: u64,
    /// identity | pauli:<label> | z-measure:<pos|random> | full-open | mixture:<file>
    #[arg(long, default_value = "identity")]
    pub strategy: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Run trials on all cores.
    #[arg(long)]
    pub parallel: bool,
    /// Scan every Pauli strategy against every decoy position.
    #[arg(long)]
    pub exhaustive: bool,
    /// Also compute the exact placement leak.
    #[arg(long)]
    pub leak: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 0.5)]
    pub epsilon_p: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon_i: f64,
    #[arg(long, default_value_t = DEFAULT_RATE)]
    pub rate: f64,
    /// Only report the ratio bound α.
    #[arg(long)]
    pub alpha_only: bool,
    /// Directory for `psi_sweep.csv` and `leak_sweep.csv`.
    #[arg(long)]
    pub csv_dir: Option<PathBuf>,
    /// Largest n in the psi sweep.
    #[arg(long, default_value_t = 2000)]
    pub sweep_max_n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Wrap `body` with the tool version, the subcommand and its resolved options.
/// Artifacts already carry their own `version`, which is kept as is.
fn envelope<T: Serialize, C: Serialize>(command: &str, config: &C, body: T) -> CliResult<String> {
    let mut doc = serde_json::Map::new();
    doc.insert("version".into(), json!(ARTIFACT_VERSION));
    doc.insert("command".into(), json!(command));
    doc.insert("config".into(), serde_json::to_value(config).map_err(Error::from)?);
    match serde_json::to_value(body).map_err(Error::from)? {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("result".into(), other);
        }
    }
    Ok(serde_json::to_string_pretty(&Value::Object(doc)).map_err(Error::from)? + "\n")
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str::<T>(&text).map_err(|source| CliError::Schema { path: path.to_path_buf(), source })
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `steane7`, `perfect5` or a path to a JSON code description.
pub fn load_code(arg: &str) -> CliResult<StabilizerCode> {
    match StabilizerCode::by_name(arg) {
        Ok(c) => Ok(c),
        Err(_) if Path::new(arg).exists() => {
            let text = fs::read_to_string(arg).map_err(|source| CliError::Io { path: arg.into(), source })?;
            Ok(StabilizerCode::from_json(&text)?)
        }
        Err(_) => Err(CliError::Usage(format!("unknown code {arg:?}: use steane7, perfect5 or a JSON file"))),
    }
}

fn load_prep(name: &str) -> CliResult<Prep> {
    Prep::from_name(name).map_err(|_| CliError::Usage(format!("unknown prep {name:?}: use zero, one, plus, minus or plus-i")))
}

/// Parse a strategy preset for an `n`-qubit public register.
pub fn parse_strategy(arg: &str, n: usize) -> CliResult<CheatStrategy> {
    let bad = || CliError::Usage(format!("malformed strategy {arg:?}"));
    let s = match arg.split_once(':') {
        None if arg == "identity" => CheatStrategy::identity(n),
        None if arg == "full-open" => CheatStrategy::full_open(),
        Some(("pauli", label)) => CheatStrategy::pauli(label.parse::<PauliOperator>().map_err(|_| bad())?),
        Some(("z-measure", "random")) => CheatStrategy::measure_z_random(n),
        Some(("z-measure", pos)) => CheatStrategy::measure_z(pos.parse().map_err(|_| bad())?),
        Some(("mixture", path)) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
            serde_json::from_str(&text).map_err(|source| CliError::Schema { path: path.into(), source })?
        }
        _ => return Err(bad()),
    };
    s.validate(n).map_err(|e| CliError::Usage(format!("strategy {arg:?}: {e}")))?;
    Ok(s)
}

fn cmd_seal(a: &SealArgs) -> CliResult<i32> {
    let prep = load_prep(&a.prep)?;
    let params = SealParameters::new(load_code(&a.code)?, load_code(&a.decoy)?, a.seed)?;
    let sealed: SealedMessage<StabilizerState> = seal(&prep, &params)?;
    write_file(&a.package, &envelope("seal", a, sealed.public_package())?)?;
    write_file(&a.key, &envelope("seal", a, sealed.verifier_key())?)?;
    println!("{}", json!({ "package": a.package, "key": a.key, "n_qubits": params.total_qubits() }));
    Ok(EXIT_OK)
}

fn cmd_open(a: &OpenArgs) -> CliResult<i32> {
    let mut pkg: PublicPackage = read_json(&a.package)?;
    let mut rng = trial_rng(a.seed, 0);
    let out = pkg.open(&mut RngSource(&mut rng))?;
    let readout: Vec<(char, f64)> = [Pauli::X, Pauli::Y, Pauli::Z]
        .into_iter()
        .map(|k| Ok((k.symbol(), out.recovered.expectation(&pkg.state, k)?)))
        .collect::<crate::error::Result<_>>()?;
    if let Some(p) = &a.write_package {
        write_file(p, &envelope("open", a, &pkg)?)?;
    }
    let body = json!({
        "syndrome": out.syndrome,
        "correction": out.correction,
        "recovered_qubit": out.recovered.qubit,
        "bloch": readout.iter().map(|(k, v)| (k.to_string(), json!(*v))).collect::<serde_json::Map<_, _>>(),
    });
    emit(a.out.as_deref(), &envelope("open", a, body)?)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<i32> {
    let mode: VerifyMode = a.mode.parse().map_err(|_| CliError::Usage(format!("unknown mode {:?}", a.mode)))?;
    let pkg: PublicPackage = read_json(&a.package)?;
    let key: VerifierKey = read_json(&a.key)?;
    let mut sealed = SealedMessage::from_parts(pkg, key)?;
    let mut rng = trial_rng(a.seed, 0);
    let report = verify(&mut sealed, mode, &mut RngSource(&mut rng))?;
    emit(a.out.as_deref(), &envelope("verify", a, &report)?)?;
    Ok(if report.accept { EXIT_OK } else { EXIT_REJECT })
}

#[derive(Serialize)]
struct ExhaustiveRow {
    decoy_position: usize,
    passing_scan: usize,
    passing_group: usize,
    simulated_accepts: usize,
    disagreements: usize,
}

fn exhaustive(params: &SealParameters, prep: &Prep) -> CliResult<Vec<ExhaustiveRow>> {
    let n = params.n();
    let mut rows = Vec::new();
    for pos in 0..n {
        let mut decoys: Vec<usize> = vec![pos];
        decoys.extend((0..n).filter(|&q| q != pos).take(params.t - 1));
        let pl = PlacementMap::canonical(n, params.decoy_code.n(), decoys, vec![0; params.t])?;
        let scan = enumerate_passing(&params.message_code, &pl)?;
        let group = passing_from_group(&params.message_code, &pl)?;
        let sealed = crate::seal::seal_with_placement::<StabilizerState>(prep, params, pl.clone())?;
        let mut accepts = 0;
        let mut disagreements = 0;
        for (x, z) in crate::pauli::all_masks(n) {
            let p = PauliOperator::from_masks(n, x, z);
            let mut s = sealed.clone();
            s.public_register()?.apply_pauli(&p)?;
            // Pauli errors leave every syndrome bit deterministic
            let mut rng = trial_rng(0, 0);
            let ok = verify(&mut s, VerifyMode::Original, &mut RngSource(&mut rng))?.accept;
            accepts += ok as usize;
            disagreements += (ok != passes_exact(&p, &params.message_code, &pl)?) as usize;
        }
        rows.push(ExhaustiveRow {
            decoy_position: pos,
            passing_scan: scan.len(),
            passing_group: group.len(),
            simulated_accepts: accepts,
            disagreements,
        });
    }
    Ok(rows)
}

fn cmd_attack(a: &AttackArgs) -> CliResult<i32> {
    let prep = load_prep(&a.prep)?;
    let params = SealParameters::new(load_code(&a.code)?, load_code(&a.decoy)?, a.seed)?;
    let strategy = parse_strategy(&a.strategy, params.n())?;
    let stats = run_trials::<StabilizerState>(&prep, &params, &strategy, a.trials, a.parallel)?;
    let placements = PlacementMap::all(params.n(), params.decoy_code.n(), params.t)?.len();
    let exact = if placements <= 4096 {
        Some(1.0 - acceptance_exact_over_placements::<StabilizerState>(&prep, &params, &strategy)?)
    } else {
        None
    };
    let mut body = json!({
        "strategy": strategy,
        "trials": stats.trials,
        "pass_rate": 1.0 - stats.rejection_rate,
        "detection_rate": stats.rejection_rate,
        "detection_ci99": [stats.ci99_low, stats.ci99_high],
        "transcript_digest": stats.transcript_digest,
        "exact_detection": exact,
        "within_3_sigma": exact.map(|p| within_sigmas(stats.rejection_rate, p, stats.trials, 3.0)),
    });
    if a.leak {
        body["leak"] = serde_json::to_value(placement_leak_exact::<StabilizerState>(&prep, &params, &strategy)?)
            .map_err(Error::from)?;
    }
    if a.exhaustive {
        if params.n() > crate::codes::MAX_COVERING_N {
            return Err(Error::TooLarge { what: "exhaustive scan", n: params.n(), max: crate::codes::MAX_COVERING_N }.into());
        }
        body["exhaustive"] = serde_json::to_value(exhaustive(&params, &prep)?).map_err(Error::from)?;
    }
    emit(a.out.as_deref(), &envelope("attack", a, body)?)?;
    Ok(EXIT_OK)
}

fn cmd_bounds(a: &BoundsArgs) -> CliResult<i32> {
    if a.alpha_only {
        let at_zero = match alpha_of(0.0, a.rate) {
            Ok(al) => json!(al),
            Err(e) => json!({ "infeasible": e.to_string() }),
        };
        let at_eps = alpha_of(a.epsilon_p, a.rate).map(|al| json!(al)).unwrap_or_else(|e| json!({ "infeasible": e.to_string() }));
        let body = json!({
            "rate": a.rate,
            "alpha_zero_closed_form": alpha_closed_form(a.rate),
            "alpha_zero_ratio_bound": at_zero,
            "alpha_epsilon_p": at_eps,
        });
        emit(a.out.as_deref(), &envelope("bounds", a, body)?)?;
        return Ok(EXIT_OK);
    }
    let sec = SecurityParameters::new(a.epsilon_p, a.epsilon_i).map_err(|e| CliError::Usage(e.to_string()))?;
    let first_threshold_n = (1..crate::security::bounds::MAX_SEARCH_N).find(|&n| {
        let (_, t) = search_code_shape(n);
        t >= 1 && epsilon_condition(a.epsilon_p, t)
    });
    if let Some(dir) = &a.csv_dir {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
        let mut buf = Vec::new();
        write_csv(&mut buf, &psi_rows(a.epsilon_p, 1..=a.sweep_max_n)?)?;
        write_file(&dir.join("psi_sweep.csv"), &String::from_utf8_lossy(&buf))?;
        let mut buf = Vec::new();
        let mut rows = Vec::new();
        for t in 1..=4 {
            rows.extend(leak_rows(t, 100)?);
        }
        write_csv(&mut buf, &rows)?;
        write_file(&dir.join("leak_sweep.csv"), &String::from_utf8_lossy(&buf))?;
    }
    match parameter_search(&sec) {
        Ok(report) => {
            let body = json!({ "first_threshold_n": first_threshold_n, "report": report });
            emit(a.out.as_deref(), &envelope("bounds", a, body)?)?;
            Ok(EXIT_OK)
        }
        Err(e @ Error::Infeasible(_)) => {
            let body = json!({ "first_threshold_n": first_threshold_n, "infeasible": e.to_string() });
            emit(a.out.as_deref(), &envelope("bounds", a, body)?)?;
            Ok(EXIT_INFEASIBLE)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn execute(cli: &Cli) -> CliResult<i32> {
    match &cli.command {
        Command::Seal(a) => cmd_seal(a),
        Command::Open(a) => cmd_open(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Attack(a) => cmd_attack(a),
        Command::Bounds(a) => cmd_bounds(a),
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
