//! Command dispatch and exit codes.
//!
//! Exit codes: 0 success, 1 usage or malformed input, 2 unphysical state,
//! 3 internal-consistency failure (including failed verification and
//! failing reference rows).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gaussian_partners::entanglement::{
    entanglement_partner, partial_transpose, pt_spectrum, PTSpectrum,
};
use gaussian_partners::oracle::{
    dense_pt_eigensolve, spectrum_gap, verify_partner, Check, VerificationReport,
};
use gaussian_partners::partners::{correlation_partner, pure_partner, PartnerKind};
use gaussian_partners::state::{symplectic_spectrum, validate_state};
use gaussian_partners::subsystem::{distance, ModeSubspace};
use gaussian_partners::tolerance::Tolerances;
use gaussian_partners::Error;
use serde_json::{json, Value};

use crate::documents::{LoadError, LoadedState, StateDocument, SubspaceDocument};
use crate::output;

/// Environment variable holding a tolerance scale factor.
pub const TOL_ENV: &str = "GAUSSIAN_PARTNERS_TOL_SCALE";

#[derive(Debug, Parser)]
#[command(
    name = "gpartners",
    version,
    about = "Partner modes of bosonic Gaussian states"
)]
pub struct Cli {
    /// Multiply every numerical tolerance by this factor; takes precedence
    /// over GAUSSIAN_PARTNERS_TOL_SCALE.
    #[arg(long, global = true, value_name = "FACTOR")]
    pub tol_scale: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check symmetry, positivity and the uncertainty principle.
    Validate(Input),
    /// Symplectic eigenvalues and normal modes.
    Spectrum(Input),
    /// Pure, correlation or entanglement partner of a subsystem.
    Partner(PartnerArgs),
    /// Logarithmic negativity and partially transposed spectrum.
    Negativity(SubsystemArgs),
    /// Replay the worked reference examples as a pass/fail table.
    #[command(name = "paper-examples")]
    PaperExamples,
}

#[derive(Debug, Args)]
pub struct Input {
    /// State document (JSON).
    #[arg(long, required_unless_present = "batch", conflicts_with = "batch")]
    pub state: Option<PathBuf>,
    /// Process every `*.json` state document in a directory.
    #[arg(long, value_name = "DIR")]
    pub batch: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SubsystemArgs {
    #[command(flatten)]
    pub input: Input,
    /// Subspace document (JSON).
    #[arg(long)]
    pub subspace: PathBuf,
    /// Append independent oracle checks.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct KindFlags {
    /// Partner of A in a pure state.
    #[arg(long)]
    pub pure: bool,
    /// Smallest subsystem making A uncorrelated with the rest.
    #[arg(long)]
    pub correlation: bool,
    /// Subsystem carrying all of A's entanglement.
    #[arg(long)]
    pub entanglement: bool,
}

#[derive(Debug, Args)]
pub struct PartnerArgs {
    #[command(flatten)]
    pub kind: KindFlags,
    #[command(flatten)]
    pub target: SubsystemArgs,
    /// Report the projector distance to this subspace document.
    #[arg(long)]
    pub expect: Option<PathBuf>,
}

impl KindFlags {
    fn kind(&self) -> PartnerKind {
        if self.pure {
            PartnerKind::Pure
        } else if self.correlation {
            PartnerKind::Correlation
        } else {
            PartnerKind::Entanglement
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// A failed step: exit code and message.
type Failure = (u8, String);

pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::Unphysical { .. } | Error::SingularCovariance => 2,
        Error::NumericalDegeneracy(_) | Error::InternalConsistency(_) => 3,
        _ => 1,
    }
}

fn numeric(e: Error) -> Failure {
    (error_code(&e), e.to_string())
}

fn load_error(e: LoadError) -> Failure {
    match e {
        LoadError::Document(d) => (1, d.to_string()),
        LoadError::Numeric(n) => numeric(n),
    }
}

/// Flag beats environment; both absent means 1.
pub fn resolve_tol_scale(flag: Option<f64>, env: Option<&str>) -> Result<f64, String> {
    let (value, source) = match (flag, env) {
        (Some(f), _) => (f, "--tol-scale".to_string()),
        (None, Some(s)) => (
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("{TOL_ENV}: not a number: {s:?}"))?,
            TOL_ENV.to_string(),
        ),
        (None, None) => return Ok(1.0),
    };
    if !(value.is_finite() && value > 0.0) {
        return Err(format!(
            "{source}: scale must be positive and finite, got {value}"
        ));
    }
    Ok(value)
}

fn install_tolerances(scale: f64) -> Result<(), String> {
    let wanted = Tolerances::DEFAULT.scaled(scale);
    if Tolerances::install(wanted).is_err() && *Tolerances::active() != wanted {
        return Err("tolerances were already fixed for this process".into());
    }
    Ok(())
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn run(cli: Cli, env_scale: Option<&str>) -> Outcome {
    let scale = match resolve_tol_scale(cli.tol_scale, env_scale) {
        Ok(s) => s,
        Err(msg) => return failure(1, msg),
    };
    if let Err(msg) = install_tolerances(scale) {
        return failure(1, msg);
    }
    match &cli.command {
        Command::Validate(input) => per_state(input, validate),
        Command::Spectrum(input) => per_state(input, spectrum),
        Command::Negativity(args) => per_state(&args.input, |p| negativity(p, args)),
        Command::Partner(args) => per_state(&args.target.input, |p| partner(p, args)),
        Command::PaperExamples => reference_examples(),
    }
}

fn failure(code: u8, msg: String) -> Outcome {
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

/// Result of one state document: exit code, JSON output, optional message.
type Job = (u8, Value, Option<String>);

fn per_state(input: &Input, job: impl Fn(&Path) -> Job + Sync) -> Outcome {
    if let Some(dir) = &input.batch {
        return batch(dir, job);
    }
    let path = input
        .state
        .as_ref()
        .expect("clap enforces --state or --batch");
    let (code, value, msg) = job(path);
    Outcome {
        code,
        stdout: if value.is_null() {
            String::new()
        } else {
            render(&value)
        },
        stderr: msg.map(|m| format!("error: {m}\n")).unwrap_or_default(),
    }
}

fn batch(dir: &Path, job: impl Fn(&Path) -> Job + Sync) -> Outcome {
    let entries = match std::fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) => return failure(1, format!("{}: {e}", dir.display())),
    };
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();

    #[cfg(feature = "parallel")]
    let results: Vec<Job> = {
        use rayon::prelude::*;
        files.par_iter().map(|p| job(p)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Job> = files.iter().map(|p| job(p)).collect();

    let mut out = serde_json::Map::new();
    let mut code = 0;
    let mut stderr = String::new();
    for (path, (c, value, msg)) in files.iter().zip(results) {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        code = code.max(c);
        let mut entry = json!({"exit": c});
        if !value.is_null() {
            entry["result"] = value;
        }
        if let Some(m) = msg {
            stderr.push_str(&format!("error: {name}: {m}\n"));
            entry["error"] = json!(m);
        }
        out.insert(name, entry);
    }
    Outcome {
        code,
        stdout: render(&Value::Object(out)),
        stderr,
    }
}

fn load_state(path: &Path) -> Result<LoadedState, Failure> {
    let name = path.display().to_string();
    let doc = StateDocument::load(path).map_err(|e| (1, e.to_string()))?;
    doc.to_state(&name).map_err(load_error)
}

/// Load a state and refuse unphysical ones.
fn load_physical(path: &Path) -> Result<LoadedState, Failure> {
    let loaded = load_state(path)?;
    let report = validate_state(&loaded.state);
    if !report.is_physical {
        return Err((
            2,
            format!(
                "{}: state is unphysical (minimum symplectic eigenvalue {})",
                path.display(),
                output::round(report.min_symplectic_eigenvalue)
            ),
        ));
    }
    Ok(loaded)
}

fn load_subspace(path: &Path, state: &LoadedState) -> Result<ModeSubspace, Failure> {
    let name = path.display().to_string();
    let doc = SubspaceDocument::load(path).map_err(|e| (1, e.to_string()))?;
    let n = state.state.n_modes();
    let vectors = doc
        .vectors(&name, &state.eigenbasis, n)
        .map_err(|e| (1, e.to_string()))?;
    ModeSubspace::new(n, &vectors).map_err(|e| (error_code(&e), format!("{name}: {e}")))
}

fn job(f: impl FnOnce() -> Result<(u8, Value), Failure>) -> Job {
    match f() {
        Ok((code, value)) => (code, value, None),
        Err((code, msg)) => (code, Value::Null, Some(msg)),
    }
}

fn validate(path: &Path) -> Job {
    job(|| {
        let loaded = load_state(path)?;
        let report = validate_state(&loaded.state);
        Ok((
            if report.is_physical { 0 } else { 2 },
            output::validity(&report),
        ))
    })
}

fn spectrum(path: &Path) -> Job {
    job(|| {
        let loaded = load_physical(path)?;
        let s = symplectic_spectrum(&loaded.state.complex_structure()).map_err(numeric)?;
        Ok((0, output::spectrum(&s)))
    })
}

fn dense_agreement(main: &PTSpectrum, dense: &PTSpectrum) -> VerificationReport {
    let scale = main.values().into_iter().fold(1.0, f64::max);
    let residual = spectrum_gap(&main.values(), &dense.values()) / scale;
    let tolerance = 1e-8;
    let check = Check {
        name: "dense_pt_spectrum".into(),
        passed: residual <= tolerance,
        residual,
        tolerance,
    };
    VerificationReport {
        checks: vec![check],
    }
}

fn negativity(path: &Path, args: &SubsystemArgs) -> Job {
    job(|| {
        let loaded = load_physical(path)?;
        let a = load_subspace(&args.subspace, &loaded)?;
        let spec = pt_spectrum(
            &partial_transpose(&loaded.state.complex_structure(), &a).map_err(numeric)?,
        )
        .map_err(numeric)?;
        let mut value = output::object(vec![
            ("log_negativity", output::num(spec.log_negativity())),
            ("pt_spectrum", output::pt_spectrum(&spec)),
        ]);
        let mut code = 0;
        if args.verify {
            let dense = dense_pt_eigensolve(&loaded.state, &a).map_err(numeric)?;
            let report = dense_agreement(&spec, &dense);
            if !report.passed() {
                code = 3;
            }
            value["verification"] = output::verification(&report);
        }
        Ok((code, value))
    })
}

fn document(doc: SubspaceDocument) -> Value {
    serde_json::to_value(doc.rounded()).expect("documents serialize")
}

fn partner(path: &Path, args: &PartnerArgs) -> Job {
    job(|| {
        let loaded = load_physical(path)?;
        let a = load_subspace(&args.target.subspace, &loaded)?;
        let j = loaded.state.complex_structure();
        let kind = args.kind.kind();
        let result = match kind {
            PartnerKind::Pure => pure_partner(&a, &j),
            PartnerKind::Correlation => correlation_partner(&a, &j),
            PartnerKind::Entanglement => entanglement_partner(&a, &j),
        }
        .map_err(numeric)?;
        let modes = result.partner.modes();
        let canonical = document(SubspaceDocument::canonical(modes));
        let mut value = output::object(vec![
            ("kind", json!(kind.name())),
            ("mode_count", json!(result.mode_count)),
            ("empty", json!(result.empty)),
            ("diagnostics", output::num(result.diagnostics)),
            ("partner", canonical),
        ]);
        if loaded.eigenbasis.len() == loaded.state.n_modes() {
            value["partner_eigenbasis"] =
                document(SubspaceDocument::in_eigenbasis(modes, &loaded.eigenbasis));
        }
        if let Some(expect) = &args.expect {
            let target = load_subspace(expect, &loaded)?;
            value["distance"] = output::num(distance(&result.partner, &target));
        }
        let mut code = 0;
        if args.target.verify {
            let report =
                verify_partner(&loaded.state, &a, &result.partner, kind).map_err(numeric)?;
            if !report.passed() {
                code = 3;
            }
            value["verification"] = output::verification(&report);
        }
        Ok((code, value))
    })
}

fn reference_examples() -> Outcome {
    match crate::reference::rows() {
        Ok(rows) => {
            let code = if rows.iter().all(|r| r.passed) { 0 } else { 3 };
            Outcome {
                code,
                stdout: crate::reference::table(&rows),
                stderr: String::new(),
            }
        }
        Err(e) => failure(3, e.to_string()),
    }
}
