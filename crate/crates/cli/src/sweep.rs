//! One-parameter sweeps over a base configuration.
//!
//! A sweep file is an ordinary configuration file (the base point) plus:
//!
//! ```text
//! sweep_param = r                      # r, Bz, Bg1, Bg2, Bl, I or J0
//! sweep_values = 1.0e-9, 1.14e-9, 1.3e-9
//! # or: sweep_range = linear, 1e-9, 1.3e-9, 7   (also `log`)
//! ```
//!
//! `Bz` and `Bl` set both spins. Sweeping `Bl` runs in driven mode. Sweeping
//! `I` derives `Bg1`/`Bg2` from the wire pair at `x1_m`/`x2_m`, which
//! requires `d_m`, `rho_m`, `x1_m` and `x2_m`; if `I_A` is also given
//! (without sweeping `I`) those keys fix `Bg1`/`Bg2` for every point.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use fullerene_gate::fieldgen::{gradient_field, WirePair};
use fullerene_gate::keyfile::{parse_f64_list, KeyFile};
use fullerene_gate::{simulate, GateError, Mode, SimulationConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};

pub const SWEEP_HEADER: &str = "param_value,tau_s,concurrence_at_tau,eof_at_tau,ops_budget,status";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SweepParam {
    R,
    Bz,
    Bg1,
    Bg2,
    Bl,
    Current,
    J0,
}

impl FromStr for SweepParam {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "r" => SweepParam::R,
            "Bz" => SweepParam::Bz,
            "Bg1" => SweepParam::Bg1,
            "Bg2" => SweepParam::Bg2,
            "Bl" => SweepParam::Bl,
            "I" => SweepParam::Current,
            "J0" => SweepParam::J0,
            other => {
                return Err(CliError::Spec(format!(
                    "unknown sweep parameter `{other}` (expected r, Bz, Bg1, Bg2, Bl, I or J0)"
                )))
            }
        })
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParam::R => "r",
            SweepParam::Bz => "Bz",
            SweepParam::Bg1 => "Bg1",
            SweepParam::Bg2 => "Bg2",
            SweepParam::Bl => "Bl",
            SweepParam::Current => "I",
            SweepParam::J0 => "J0",
        })
    }
}

/// Wire geometry used to turn a current into gradient fields.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WireSetup {
    pub current: Option<f64>,
    pub separation: f64,
    pub radius: f64,
    pub x1: f64,
    pub x2: f64,
}

impl WireSetup {
    fn fields(&self, current: f64) -> std::result::Result<(f64, f64), GateError> {
        let w = WirePair::new(current, self.separation, self.radius)?;
        Ok((gradient_field(&w, self.x1)?, gradient_field(&w, self.x2)?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub values: Vec<f64>,
    pub base: SimulationConfig,
    pub wires: Option<WireSetup>,
}

fn spec_err(path_hint: &str, e: impl fmt::Display) -> CliError {
    CliError::Spec(format!("{path_hint}{e}"))
}

fn expand_range(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [kind, start, stop, n] = parts[..] else {
        return Err(CliError::Spec(format!("sweep_range needs `kind, start, stop, n`, got `{text}`")));
    };
    let num = |s: &str| s.parse::<f64>().map_err(|e| spec_err("sweep_range: ", format!("`{s}`: {e}")));
    let (a, b) = (num(start)?, num(stop)?);
    let n: usize = n.parse().map_err(|e| spec_err("sweep_range count: ", e))?;
    if n < 2 {
        return Err(CliError::Spec(format!("a sweep needs at least 2 points, got {n}")));
    }
    let frac = |k: usize| k as f64 / (n - 1) as f64;
    match kind {
        "linear" => Ok((0..n).map(|k| if k == n - 1 { b } else { a + (b - a) * frac(k) }).collect()),
        "log" => {
            if !(a > 0.0 && b > 0.0) {
                return Err(CliError::Spec("log ranges need positive endpoints".into()));
            }
            Ok((0..n).map(|k| if k == n - 1 { b } else { a * (b / a).powf(frac(k)) }).collect())
        }
        other => Err(CliError::Spec(format!("unknown range kind `{other}` (linear or log)"))),
    }
}

impl SweepSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut kf = KeyFile::parse(text).map_err(|e| spec_err("", e))?;
        let param: SweepParam = kf
            .take("sweep_param")
            .ok_or_else(|| CliError::Spec("missing `sweep_param`".into()))?
            .value
            .parse()?;
        let values = match (kf.take("sweep_values"), kf.take("sweep_range")) {
            (Some(v), None) => parse_f64_list(&v).map_err(|e| spec_err("", e))?,
            (None, Some(r)) => expand_range(&r.value)?,
            (Some(_), Some(_)) => {
                return Err(CliError::Spec("give either `sweep_values` or `sweep_range`, not both".into()))
            }
            (None, None) => return Err(CliError::Spec("missing `sweep_values` or `sweep_range`".into())),
        };
        if values.len() < 2 {
            return Err(CliError::Spec(format!("a sweep needs at least 2 points, got {}", values.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Spec("sweep values must be finite".into()));
        }

        let current = kf.take_f64("I_A").map_err(|e| spec_err("", e))?;
        let geometry: Vec<Option<f64>> = ["d_m", "rho_m", "x1_m", "x2_m"]
            .iter()
            .map(|k| kf.take_f64(k))
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| spec_err("", e))?;
        let wires = match geometry[..] {
            [Some(separation), Some(radius), Some(x1), Some(x2)] => {
                Some(WireSetup { current, separation, radius, x1, x2 })
            }
            [None, None, None, None] if current.is_none() => None,
            _ => {
                return Err(CliError::Spec(
                    "wire setup needs all of `d_m`, `rho_m`, `x1_m`, `x2_m`".into(),
                ))
            }
        };
        if param == SweepParam::Current && wires.is_none() {
            return Err(CliError::Spec("sweeping I requires `d_m`, `rho_m`, `x1_m` and `x2_m`".into()));
        }
        if let Some(w) = &wires {
            if param != SweepParam::Current && w.current.is_none() {
                return Err(CliError::Spec("wire geometry given without `I_A`".into()));
            }
        }

        let base = SimulationConfig::from_keyfile(kf).map_err(|e| spec_err("", e))?;
        Ok(Self { param, values, base, wires })
    }

    /// Configuration for one sweep value.
    pub fn point(&self, value: f64) -> std::result::Result<SimulationConfig, GateError> {
        let mut cfg = self.base.clone();
        if let (Some(w), Some(i)) = (&self.wires, self.wires.and_then(|w| w.current)) {
            (cfg.bg1, cfg.bg2) = w.fields(i)?;
        }
        match self.param {
            SweepParam::R => cfg.r = value,
            SweepParam::Bz => (cfg.bz1, cfg.bz2) = (value, value),
            SweepParam::Bg1 => cfg.bg1 = value,
            SweepParam::Bg2 => cfg.bg2 = value,
            SweepParam::Bl => {
                (cfg.bl1, cfg.bl2) = (value, value);
                cfg.mode = Mode::Driven;
            }
            SweepParam::Current => {
                let w = self.wires.as_ref().expect("checked at parse time");
                (cfg.bg1, cfg.bg2) = w.fields(value)?;
            }
            SweepParam::J0 => cfg.j0 = value,
        }
        Ok(cfg)
    }
}

/// Outcome of one sweep point.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: std::result::Result<PointResult, &'static str>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointResult {
    pub tau: f64,
    pub concurrence: f64,
    pub eof: f64,
    pub ops_budget: u64,
}

fn status_of(e: &GateError) -> &'static str {
    match e {
        GateError::NoCrossing { .. } => "no_crossing",
        e if e.is_numerical() => "numerical_error",
        GateError::ZeroState | GateError::OutOfRange(_) => "numerical_error",
        _ => "config_error",
    }
}

pub fn run_point(spec: &SweepSpec, value: f64) -> SweepRow {
    let outcome = spec
        .point(value)
        .and_then(|cfg| simulate(&cfg))
        .map(|run| PointResult {
            tau: run.result.tau,
            concurrence: run.result.concurrence_at_tau,
            eof: run.result.eof_at_tau,
            ops_budget: run.result.ops_budget,
        })
        .map_err(|e| status_of(&e));
    SweepRow { value, outcome }
}

/// Runs every point on `jobs` worker threads. Rows come back in the order
/// of `spec.values` whatever the completion order.
pub fn run_sweep(spec: &SweepSpec, jobs: usize) -> Result<Vec<SweepRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Spec(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(|| spec.values.par_iter().map(|&v| run_point(spec, v)).collect()))
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for row in rows {
        match &row.outcome {
            Ok(p) => {
                let _ = writeln!(s, "{:e},{:e},{:e},{:e},{},ok", row.value, p.tau, p.concurrence, p.eof, p.ops_budget);
            }
            Err(status) => {
                let _ = writeln!(s, "{:e},,,,,{status}", row.value);
            }
        }
    }
    s
}
