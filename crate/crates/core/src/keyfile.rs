//! Plain-text `key = value` files: one entry per line, `#` starts a comment.
//!
//! Recognized simulation keys (all optional, defaults are the static
//! r = 1.14 nm configuration):
//!
//! | key | meaning |
//! |-----|---------|
//! | `r_m` | inter-spin distance |
//! | `Bz1_T`, `Bz2_T` | static z-fields |
//! | `Bg1_T`, `Bg2_T` | gradient-field contributions |
//! | `Bl1_T`, `Bl2_T` | drive amplitudes |
//! | `J0_rad_s` | exchange coupling |
//! | `mode` | `static` or `driven` |
//! | `t_max_s`, `dt_s` | horizon and integration step |
//! | `T2_s`, `T1_s` | relaxation times (`T1_s` is metadata only) |
//! | `initial_state` | `re1,im1,re2,im2,re3,im3,re4,im4` |
//! | `norm_tolerance`, `max_samples` | numerical controls |
//! | `mu0`, `muB`, `hbar`, `gamma` | constant overrides, for testing |
//!
//! Numbers are parsed with [`str::parse::<f64>`], which is locale independent.

use std::fmt::Write as _;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::config::SimulationConfig;
use crate::state::StateVector;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { line: usize, key: String },
    #[error("line {line}: bad value for `{key}`: {reason}")]
    Value { line: usize, key: String, reason: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("missing required key `{0}`")]
    Missing(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

/// Ordered entries of a key-value file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct KeyFile {
    entries: Vec<Entry>,
}

impl KeyFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut entries: Vec<Entry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((k, v)) = content.split_once('=') else {
                return Err(ParseError::Syntax { line, text: content.to_string() });
            };
            let key = k.trim().to_string();
            if key.is_empty() {
                return Err(ParseError::Syntax { line, text: content.to_string() });
            }
            if entries.iter().any(|e| e.key == key) {
                return Err(ParseError::Duplicate { line, key });
            }
            entries.push(Entry { key, value: v.trim().to_string(), line });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    /// Removes and returns `key`.
    pub fn take(&mut self, key: &str) -> Option<Entry> {
        let pos = self.entries.iter().position(|e| e.key == key)?;
        Some(self.entries.remove(pos))
    }

    pub fn take_f64(&mut self, key: &str) -> Result<Option<f64>, ParseError> {
        self.take(key).map(|e| parse_f64(&e)).transpose()
    }

    pub fn require_f64(&mut self, key: &str) -> Result<f64, ParseError> {
        self.take_f64(key)?.ok_or_else(|| ParseError::Missing(key.to_string()))
    }

    /// Fails on the first entry nobody consumed.
    pub fn finish(self) -> Result<(), ParseError> {
        match self.entries.into_iter().next() {
            Some(e) => Err(ParseError::UnknownKey { line: e.line, key: e.key }),
            None => Ok(()),
        }
    }
}

pub fn parse_f64(e: &Entry) -> Result<f64, ParseError> {
    e.value.parse::<f64>().map_err(|err| ParseError::Value {
        line: e.line,
        key: e.key.clone(),
        reason: err.to_string(),
    })
}

/// Comma-separated list of reals.
pub fn parse_f64_list(e: &Entry) -> Result<Vec<f64>, ParseError> {
    e.value
        .split(',')
        .map(|s| {
            s.trim().parse::<f64>().map_err(|err| ParseError::Value {
                line: e.line,
                key: e.key.clone(),
                reason: format!("`{}`: {err}", s.trim()),
            })
        })
        .collect()
}

impl SimulationConfig {
    /// Reads a configuration file's text. Absent keys keep their defaults;
    /// unknown keys are an error.
    pub fn from_key_value(text: &str) -> Result<Self, ParseError> {
        Self::from_keyfile(KeyFile::parse(text)?)
    }

    pub fn from_keyfile(mut kf: KeyFile) -> Result<Self, ParseError> {
        let mut cfg = SimulationConfig::default();
        cfg.apply_keys(&mut kf)?;
        kf.finish()?;
        Ok(cfg)
    }

    /// Consumes every recognized simulation key from `kf`, leaving the rest.
    pub fn apply_keys(&mut self, kf: &mut KeyFile) -> Result<(), ParseError> {
        {
            let reals: [(&str, &mut f64); 16] = [
                ("r_m", &mut self.r),
                ("Bz1_T", &mut self.bz1),
                ("Bz2_T", &mut self.bz2),
                ("Bg1_T", &mut self.bg1),
                ("Bg2_T", &mut self.bg2),
                ("Bl1_T", &mut self.bl1),
                ("Bl2_T", &mut self.bl2),
                ("J0_rad_s", &mut self.j0),
                ("t_max_s", &mut self.t_max),
                ("dt_s", &mut self.dt),
                ("T2_s", &mut self.t2),
                ("norm_tolerance", &mut self.norm_tolerance),
                ("mu0", &mut self.constants.mu0),
                ("muB", &mut self.constants.mu_b),
                ("hbar", &mut self.constants.hbar),
                ("gamma", &mut self.constants.gamma),
            ];
            for (key, slot) in reals {
                if let Some(v) = kf.take_f64(key)? {
                    *slot = v;
                }
            }
        }
        if let Some(v) = kf.take_f64("T1_s")? {
            self.t1 = Some(v);
        }
        if let Some(e) = kf.take("max_samples") {
            self.max_samples = e.value.parse().map_err(|err: std::num::ParseIntError| ParseError::Value {
                line: e.line,
                key: e.key.clone(),
                reason: err.to_string(),
            })?;
        }
        if let Some(e) = kf.take("mode") {
            self.mode = e
                .value
                .parse()
                .map_err(|reason| ParseError::Value { line: e.line, key: e.key.clone(), reason })?;
        }
        if let Some(e) = kf.take("initial_state") {
            let v = parse_f64_list(&e)?;
            if v.len() != 8 {
                return Err(ParseError::Value {
                    line: e.line,
                    key: e.key,
                    reason: format!("expected 8 reals (re,im for c1..c4), got {}", v.len()),
                });
            }
            self.initial_state = StateVector::new(
                C64::new(v[0], v[1]),
                C64::new(v[2], v[3]),
                C64::new(v[4], v[5]),
                C64::new(v[6], v[7]),
            );
        }
        Ok(())
    }

    /// Renders the configuration in the same format
    /// [`from_key_value`](Self::from_key_value) reads.
    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        let c = &self.constants;
        let reals = [
            ("r_m", self.r),
            ("Bz1_T", self.bz1),
            ("Bz2_T", self.bz2),
            ("Bg1_T", self.bg1),
            ("Bg2_T", self.bg2),
            ("Bl1_T", self.bl1),
            ("Bl2_T", self.bl2),
            ("J0_rad_s", self.j0),
            ("t_max_s", self.t_max),
            ("dt_s", self.dt),
            ("T2_s", self.t2),
            ("norm_tolerance", self.norm_tolerance),
            ("mu0", c.mu0),
            ("muB", c.mu_b),
            ("hbar", c.hbar),
            ("gamma", c.gamma),
        ];
        for (k, v) in reals {
            let _ = writeln!(s, "{k} = {v:e}");
        }
        if let Some(t1) = self.t1 {
            let _ = writeln!(s, "T1_s = {t1:e}");
        }
        let _ = writeln!(s, "max_samples = {}", self.max_samples);
        let _ = writeln!(s, "mode = {}", self.mode);
        let amps: Vec<String> = self
            .initial_state
            .amps
            .iter()
            .flat_map(|c| [format!("{:e}", c.re), format!("{:e}", c.im)])
            .collect();
        let _ = writeln!(s, "initial_state = {}", amps.join(","));
        s
    }
}
