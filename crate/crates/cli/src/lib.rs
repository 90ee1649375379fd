//! Subcommands of the `fgate` binary.

pub mod error;
pub mod output;
pub mod sweep;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use fullerene_gate::fieldgen::{field_profile, WirePair};
use fullerene_gate::{evolve, GateError, KeyFile, SimulationConfig, ENGINE_VERSION};
use serde::Serialize;

pub use error::{CliError, Result};
use sweep::{run_sweep, sweep_csv, SweepSpec};

/// Record pairing every output file with the inputs that produced it.
#[derive(Debug, Serialize)]
pub struct RunManifest<T: Serialize> {
    pub engine_version: &'static str,
    pub command: &'static str,
    pub input: PathBuf,
    pub mode: Option<String>,
    pub config: T,
    pub outputs: Vec<PathBuf>,
    pub wall_clock_s: f64,
}

impl<T: Serialize> RunManifest<T> {
    pub fn write(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).expect("manifest is always serializable");
        write_file(path, &(json + "\n"))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn load_config(path: &Path) -> Result<SimulationConfig> {
    SimulationConfig::from_key_value(&read(path)?).map_err(|source| CliError::Parse { path: path.into(), source })
}

/// What `simulate` produced; `summary` is also printed by the binary.
#[derive(Debug)]
pub struct SimulateOutput {
    pub summary: String,
    pub files: Vec<PathBuf>,
}

/// Writes `trajectory.csv`, `summary.txt` and `manifest.json` into
/// `out_dir`. A run without a crossing still writes its trajectory and
/// summary, then returns the `NoCrossing` error.
pub fn cmd_simulate(config_path: &Path, out_dir: &Path) -> Result<SimulateOutput> {
    let start = Instant::now();
    let cfg = load_config(config_path)?;
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let ev = evolve(&cfg)?;

    let traj_path = out_dir.join("trajectory.csv");
    let summary_path = out_dir.join("summary.txt");
    write_file(&traj_path, &output::trajectory_csv(&ev))?;
    let validated = ev.config.clone();
    let fallback = output::no_crossing_summary(&ev);

    let outcome = ev.gate();
    let summary = match &outcome {
        Ok(run) => output::summary(run),
        Err(GateError::NoCrossing { .. }) => fallback,
        Err(_) => String::new(),
    };
    let mut files = vec![traj_path];
    if !summary.is_empty() {
        write_file(&summary_path, &summary)?;
        files.push(summary_path);
    }

    let manifest_path = out_dir.join("manifest.json");
    RunManifest {
        engine_version: ENGINE_VERSION,
        command: "simulate",
        input: config_path.into(),
        mode: Some(validated.mode.to_string()),
        config: &*validated,
        outputs: files.clone(),
        wall_clock_s: start.elapsed().as_secs_f64(),
    }
    .write(&manifest_path)?;
    files.push(manifest_path);

    match outcome {
        Ok(_) => Ok(SimulateOutput { summary, files }),
        Err(e @ GateError::NoCrossing { .. }) => {
            eprint!("{summary}");
            Err(e.into())
        }
        Err(e) => Err(e.into()),
    }
}

/// Summary only, nothing written.
pub fn cmd_gate_time(config_path: &Path) -> Result<String> {
    let cfg = load_config(config_path)?;
    let ev = evolve(&cfg)?;
    let fallback = output::no_crossing_summary(&ev);
    match ev.gate() {
        Ok(run) => Ok(output::summary(&run)),
        Err(e @ GateError::NoCrossing { .. }) => {
            eprint!("{fallback}");
            Err(e.into())
        }
        Err(e) => Err(e.into()),
    }
}

/// Runs a sweep and writes its CSV plus `<out>.manifest.json`.
pub fn cmd_sweep(spec_path: &Path, out: &Path, jobs: usize) -> Result<String> {
    let start = Instant::now();
    let spec = SweepSpec::parse(&read(spec_path)?)?;
    let rows = run_sweep(&spec, jobs)?;
    let csv = sweep_csv(&rows);
    write_file(out, &csv)?;
    let mut manifest_path = out.as_os_str().to_owned();
    manifest_path.push(".manifest.json");
    let manifest_path = PathBuf::from(manifest_path);
    RunManifest {
        engine_version: ENGINE_VERSION,
        command: "sweep",
        input: spec_path.into(),
        mode: Some(spec.base.mode.to_string()),
        config: &spec,
        outputs: vec![out.into()],
        wall_clock_s: start.elapsed().as_secs_f64(),
    }
    .write(&manifest_path)?;
    Ok(csv)
}

/// Reads `I_A`, `d_m`, `rho_m` and samples the wire field.
pub fn cmd_field_profile(wires_path: &Path, from: f64, to: f64, points: usize) -> Result<(String, WirePair)> {
    let mut kf = KeyFile::parse(&read(wires_path)?).map_err(|source| CliError::Parse { path: wires_path.into(), source })?;
    let wires = WirePair::from_keyfile(&mut kf).map_err(|source| CliError::Parse { path: wires_path.into(), source })??;
    kf.finish().map_err(|source| CliError::Parse { path: wires_path.into(), source })?;
    let profile = field_profile(&wires, from, to, points)?;
    Ok((output::profile_csv(&profile), wires))
}
