//! `qcorr`: quantify single states, sweep the GHS model, export steering
//! ellipsoid meshes and validate density matrices.
//!
//! Exit codes: 0 success, 1 domain or validation failure, 2 parse or I/O
//! failure.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcorr_core::quantifiers::EllipsoidSummary;
use qcorr_core::report::ModelReport;
use qcorr_core::sweep::{parse_value, ValueExpr};
use qcorr_core::{
    ellipsoid_mesh, run_sweep, steering_ellipsoid, validate_state, write_csv, DensityMatrix, Error, ModelParams,
    Outputs, QuantifyReport, Region, SweepConfig, SweepParam, DEFAULT_GRID_STEPS,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "qcorr", version, about = "Obesity, discord and steering ellipsoids of two-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every requested quantifier of one state as JSON.
    Quantify {
        #[command(flatten)]
        source: StateSource,
        /// Comma list of obesity, discord, discord-numeric, ellipsoid, all.
        #[arg(long, default_value = "all")]
        outputs: String,
        #[arg(long, default_value_t = DEFAULT_GRID_STEPS)]
        grid_steps: usize,
    },
    /// Sweep one model parameter and write a CSV table.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        /// `<param>:<from>:<to>:<steps>`, e.g. `D:0:0.99:100` or `alpha:0:pi/2:50`.
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long)]
        outputs: Option<String>,
        #[arg(long)]
        grid_steps: Option<usize>,
        /// JSON sweep description; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the steering ellipsoid as a mesh and print its summary.
    Ellipsoid {
        #[command(flatten)]
        source: StateSource,
        #[arg(long, default_value_t = 24)]
        lat: usize,
        #[arg(long, default_value_t = 48)]
        lon: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check Hermiticity, unit trace and positivity.
    Validate {
        #[command(flatten)]
        source: StateSource,
    },
}

#[derive(Args, Clone, Default)]
struct ModelArgs {
    /// AB_I, AB_II or B_I_B_II.
    #[arg(long)]
    region: Option<Region>,
    #[arg(long)]
    g: Option<String>,
    /// Radians; accepts multiples of pi such as `pi/4`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    mass: Option<String>,
    #[arg(long)]
    dilation: Option<String>,
    #[arg(long)]
    omega: Option<String>,
}

impl ModelArgs {
    fn values(&self) -> Result<Vec<(SweepParam, f64)>, Error> {
        let fields = [
            (SweepParam::G, &self.g),
            (SweepParam::Alpha, &self.alpha),
            (SweepParam::Mass, &self.mass),
            (SweepParam::Dilation, &self.dilation),
            (SweepParam::Omega, &self.omega),
        ];
        let mut out = Vec::new();
        for (p, v) in fields {
            if let Some(text) = v {
                out.push((p, parse_value(text)?));
            }
        }
        Ok(out)
    }

    fn params(&self) -> Result<ModelParams, Error> {
        let mut m = ModelParams { region: self.region.unwrap_or(Region::AbI), ..ModelParams::default() };
        for (p, v) in self.values()? {
            m.set(p, v);
        }
        Ok(m)
    }
}

#[derive(Args)]
struct StateSource {
    /// Density matrix JSON (`dim`, `labels`, `re`, `im`); overrides the model.
    #[arg(long)]
    state: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
}

impl StateSource {
    fn load(&self) -> Result<(DensityMatrix, Option<ModelReport>), Failure> {
        match &self.state {
            Some(path) => Ok((DensityMatrix::from_json(&read(path)?)?, None)),
            None => {
                let params = self.model.params()?;
                let (_, _, rho) = params.build()?;
                Ok((rho, Some(params.model_report()?)))
            }
        }
    }
}

/// A diagnostic plus its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Json(_) | Error::Argument(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

/// Writes to stdout; a closed pipe is not worth a panic.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    emit(&(serde_json::to_string_pretty(value).expect("report serializes") + "\n"));
}

fn parse_sweep_flag(text: &str, cfg: &mut SweepConfig) -> Result<(), Error> {
    let parts: Vec<&str> = text.split(':').collect();
    let [param, from, to, steps] = parts[..] else {
        return Err(Error::Argument(format!("--sweep expects <param>:<from>:<to>:<steps>, got {text:?}")));
    };
    cfg.sweep_param = Some(SweepParam::parse(param)?.column().to_string());
    cfg.from = Some(ValueExpr::Number(parse_value(from)?));
    cfg.to = Some(ValueExpr::Number(parse_value(to)?));
    let steps = steps
        .trim()
        .parse()
        .map_err(|_| Error::Argument(format!("steps must be a non-negative integer, got {steps:?}")))?;
    cfg.steps = Some(steps);
    Ok(())
}

fn cmd_quantify(source: &StateSource, outputs: &str, grid_steps: usize) -> Result<(), Failure> {
    let outputs = Outputs::parse_list(outputs)?;
    let (rho, model) = source.load()?;
    let report = QuantifyReport::build(&rho, model, outputs, grid_steps)?;
    print_json(&report);
    Ok(())
}

fn cmd_sweep(
    model: &ModelArgs,
    sweep: Option<&str>,
    outputs: Option<&str>,
    grid_steps: Option<usize>,
    config: Option<&Path>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let mut cfg = match config {
        Some(path) => SweepConfig::from_json(&read(path)?)?,
        None => SweepConfig::default(),
    };
    if let Some(region) = model.region {
        cfg.region = Some(region);
    }
    for (p, v) in model.values()? {
        cfg.fixed.retain(|k, _| SweepParam::parse(k).map_or(true, |q| q != p));
        cfg.fixed.insert(p.column().to_string(), ValueExpr::Number(v));
    }
    if let Some(s) = sweep {
        parse_sweep_flag(s, &mut cfg)?;
    }
    if let Some(list) = outputs {
        cfg.outputs = Some(list.split(',').map(str::to_string).collect());
    }
    if grid_steps.is_some() {
        cfg.grid_steps = grid_steps;
    }
    let spec = cfg.into_spec()?;
    let rows = run_sweep(&spec)?;
    let csv = write_csv(&spec, &rows);
    match out {
        Some(path) => write(path, &csv),
        None => {
            emit(&csv);
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct EllipsoidReport<'a> {
    mesh: String,
    vertices: usize,
    faces: usize,
    #[serde(flatten)]
    summary: &'a EllipsoidSummary,
}

fn cmd_ellipsoid(source: &StateSource, lat: usize, lon: usize, out: &Path) -> Result<(), Failure> {
    let (rho, _) = source.load()?;
    if let Some(check) = validate_state(&rho).first_failure() {
        return Err(Error::Domain(format!("invalid state: {} violated by {:e}", check.name, check.violation)).into());
    }
    let e = steering_ellipsoid(&rho)?;
    let mesh = ellipsoid_mesh(&e, lat, lon)?;
    write(out, &mesh.to_obj())?;
    print_json(&EllipsoidReport {
        mesh: out.display().to_string(),
        vertices: mesh.vertices.len(),
        faces: mesh.faces.len(),
        summary: &e.summary(),
    });
    Ok(())
}

fn cmd_validate(source: &StateSource) -> Result<(), Failure> {
    let (rho, _) = source.load()?;
    let report = validate_state(&rho);
    print_json(&report);
    match report.first_failure() {
        Some(check) => Err(Failure {
            code: 1,
            message: format!(
                "invalid state: {} violated by {:e} (tolerance {:e})",
                check.name, check.violation, check.tolerance
            ),
        }),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Quantify { source, outputs, grid_steps } => cmd_quantify(source, outputs, *grid_steps),
        Command::Sweep { model, sweep, outputs, grid_steps, config, out } => cmd_sweep(
            model,
            sweep.as_deref(),
            outputs.as_deref(),
            *grid_steps,
            config.as_deref(),
            out.as_deref(),
        ),
        Command::Ellipsoid { source, lat, lon, out } => cmd_ellipsoid(source, *lat, *lon, out),
        Command::Validate { source } => cmd_validate(source),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qcorr: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
