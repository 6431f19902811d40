//! Sweep configuration and its `key = value` file format.
//!
//! ```text
//! # comments and blank lines are ignored
//! gamma_values = 0.5, 1, 2
//! alpha_values = 0, pi/6, -pi/6, pi/4
//! fock_dim = 128
//! tol_fock = 1e-7
//! output_format = csv
//! output_path = -
//! ```
//!
//! Angles accept plain numbers or the forms `pi`, `-pi/4`, `2*pi/5`.
//! Every key is optional.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::MIN_DIM;
use crate::quadrature::DEFAULT_TOLERANCE;
use crate::state::{check_alpha, check_gamma, PhysicalConstants};
use crate::uncertainty::{FOCK_SATURATION_TOLERANCE, SATURATION_TOLERANCE};

pub const DEFAULT_FOCK_DIM: usize = 128;
pub const MAX_FOCK_DIM: usize = 1024;

/// Acceptance thresholds for one sweep. Discrepancies are relative; saturation
/// tolerances are in units of `hbar`; `integration` is the absolute error target
/// handed to the quadrature rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub quadrature: f64,
    pub fock: f64,
    pub sur_closed: f64,
    pub sur_quadrature: f64,
    pub sur_fock: f64,
    pub integration: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            quadrature: 1e-10,
            fock: 1e-7,
            sur_closed: SATURATION_TOLERANCE,
            sur_quadrature: SATURATION_TOLERANCE,
            sur_fock: FOCK_SATURATION_TOLERANCE,
            integration: DEFAULT_TOLERANCE,
        }
    }
}

impl Tolerances {
    fn entries(&self) -> [(&'static str, f64); 6] {
        [
            ("tol_quadrature", self.quadrature),
            ("tol_fock", self.fock),
            ("tol_sur_closed", self.sur_closed),
            ("tol_sur_quadrature", self.sur_quadrature),
            ("tol_sur_fock", self.sur_fock),
            ("tol_integration", self.integration),
        ]
    }

    /// Sets every tolerance to `value`.
    pub fn uniform(value: f64) -> Self {
        Tolerances {
            quadrature: value,
            fock: value,
            sur_closed: value,
            sur_quadrature: value,
            sur_fock: value,
            integration: value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::config("output_format", format!("expected csv or json, got `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputTarget {
    Stdout,
    File(PathBuf),
}

impl OutputTarget {
    pub fn parse(s: &str) -> Self {
        match s.trim() {
            "" | "-" => OutputTarget::Stdout,
            p => OutputTarget::File(PathBuf::from(p)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub gamma_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
    pub hbar: f64,
    pub k_b: f64,
    pub mass: f64,
    pub fock_dim: usize,
    pub tolerances: Tolerances,
    pub output_format: OutputFormat,
    pub output_path: OutputTarget,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            gamma_values: vec![0.5, 1.0, 2.0],
            alpha_values: vec![
                0.0, FRAC_PI_6, -FRAC_PI_6, FRAC_PI_4, -FRAC_PI_4, FRAC_PI_3, -FRAC_PI_3,
            ],
            hbar: 1.0,
            k_b: 1.0,
            mass: 1.0,
            fock_dim: DEFAULT_FOCK_DIM,
            tolerances: Tolerances::default(),
            output_format: OutputFormat::Csv,
            output_path: OutputTarget::Stdout,
        }
    }
}

impl SweepConfig {
    pub fn constants(&self) -> PhysicalConstants {
        PhysicalConstants {
            hbar: self.hbar,
            boltzmann: self.k_b,
            mass: self.mass,
        }
    }

    pub fn grid_len(&self) -> usize {
        self.gamma_values.len() * self.alpha_values.len()
    }

    /// Checks every field; errors name the offending key.
    pub fn validate(&self) -> Result<()> {
        if self.gamma_values.is_empty() {
            return Err(Error::config("gamma_values", "list is empty"));
        }
        if self.alpha_values.is_empty() {
            return Err(Error::config("alpha_values", "list is empty"));
        }
        for &g in &self.gamma_values {
            check_gamma(g).map_err(|e| Error::config("gamma_values", e.to_string()))?;
        }
        for &a in &self.alpha_values {
            check_alpha(a).map_err(|e| Error::config("alpha_values", e.to_string()))?;
        }
        for (key, v) in [("hbar", self.hbar), ("k_b", self.k_b), ("mass", self.mass)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::config(key, format!("must be finite and positive, got {v}")));
            }
        }
        if !(MIN_DIM..=MAX_FOCK_DIM).contains(&self.fock_dim) {
            return Err(Error::config(
                "fock_dim",
                format!("must lie in {MIN_DIM}..={MAX_FOCK_DIM}, got {}", self.fock_dim),
            ));
        }
        for (key, v) in self.tolerances.entries() {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::config(key, format!("must be finite and positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Parses the `key = value` format on top of the defaults. Does not validate.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(format!("line {}", lineno + 1), "expected `key = value`")
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "gamma_values" => cfg.gamma_values = parse_list(key, value, parse_number)?,
                "alpha_values" => cfg.alpha_values = parse_list(key, value, parse_angle)?,
                "hbar" => cfg.hbar = parse_number(key, value)?,
                "k_b" => cfg.k_b = parse_number(key, value)?,
                "mass" => cfg.mass = parse_number(key, value)?,
                "fock_dim" => {
                    cfg.fock_dim = value
                        .parse()
                        .map_err(|_| Error::config(key, format!("not an integer: `{value}`")))?
                }
                "tol_quadrature" => cfg.tolerances.quadrature = parse_number(key, value)?,
                "tol_fock" => cfg.tolerances.fock = parse_number(key, value)?,
                "tol_sur_closed" => cfg.tolerances.sur_closed = parse_number(key, value)?,
                "tol_sur_quadrature" => cfg.tolerances.sur_quadrature = parse_number(key, value)?,
                "tol_sur_fock" => cfg.tolerances.sur_fock = parse_number(key, value)?,
                "tol_integration" => cfg.tolerances.integration = parse_number(key, value)?,
                "output_format" => cfg.output_format = value.parse()?,
                "output_path" => cfg.output_path = OutputTarget::parse(value),
                other => return Err(Error::config(other, "unknown key")),
            }
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

fn parse_list(key: &str, value: &str, item: fn(&str, &str) -> Result<f64>) -> Result<Vec<f64>> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value.split(',').map(|v| item(key, v.trim())).collect()
}

fn parse_number(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| Error::config(key, format!("not a number: `{value}`")))
}

/// Number, or a multiple/fraction of pi: `pi`, `-pi/6`, `3*pi/8`, `0.5*pi`.
fn parse_angle(key: &str, value: &str) -> Result<f64> {
    if let Ok(v) = value.parse::<f64>() {
        return Ok(v);
    }
    let bad = || Error::config(key, format!("not an angle: `{value}`"));
    let compact: String = value.chars().filter(|c| !c.is_whitespace()).collect();
    let (sign, body) = match compact.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, compact.as_str()),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| bad())?),
        None => (body, 1.0),
    };
    let factor = match numer {
        "pi" => 1.0,
        n => n
            .strip_suffix("*pi")
            .and_then(|k| k.parse::<f64>().ok())
            .ok_or_else(bad)?,
    };
    Ok(sign * factor * PI / denom)
}
