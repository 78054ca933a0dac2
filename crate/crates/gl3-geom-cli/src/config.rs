//! Run configuration: built-in defaults, overridden by a `key = value` file,
//! overridden by command-line flags.
//!
//! Recognised keys (case-insensitive): `vol_M0`, `vol_M21`, `vol_G`, `c_Q`,
//! `C`, `precision`, `ln2_placement`, `tol`, `abs_tol`, `rel_tol`,
//! `max_depth`, `initial_panels`, `seed`. Blank lines and lines starting
//! with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use gl3_geom::woi_quadrature::QuadratureSpec;
use gl3_geom::zeta_engine::{CoefficientConfig, Ln2Placement, PrimeSet, Volumes};
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Where a configured value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    /// Built-in default.
    Default,
    /// The `--config` file.
    File,
    /// A command-line flag.
    Flag,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Default => "default",
            Source::File => "config file",
            Source::Flag => "flag",
        })
    }
}

/// Every tunable input of a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    /// Volumes of the Levi quotients.
    pub volumes: Volumes,
    /// c_ℚ = vol(ℚ∖𝔸¹).
    pub c_q: f64,
    /// The additive constant C of the regular coefficient.
    pub c: f64,
    /// Default precision of zeta evaluations.
    pub precision: f64,
    /// Placement of ln 2 in the minimal coefficient of G.
    pub ln2_placement: Ln2Placement,
    /// Default quadrature specification.
    pub quadrature: QuadratureSpec,
    /// Seed of every random stream.
    pub seed: u64,
    /// Origin of each configured key, by canonical key name.
    #[serde(skip)]
    pub sources: BTreeMap<&'static str, Source>,
}

/// Canonical key names, in the order they are echoed.
pub const KEYS: [&str; 12] = [
    "vol_M0",
    "vol_M21",
    "vol_G",
    "c_Q",
    "C",
    "precision",
    "ln2_placement",
    "abs_tol",
    "rel_tol",
    "max_depth",
    "initial_panels",
    "seed",
];

impl Default for Config {
    fn default() -> Self {
        Config {
            volumes: Volumes::default(),
            c_q: 1.0,
            c: 0.0,
            precision: 1e-12,
            ln2_placement: Ln2Placement::Outside,
            quadrature: QuadratureSpec::default(),
            seed: 1,
            sources: KEYS.iter().map(|k| (*k, Source::Default)).collect(),
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("invalid value {value:?} for key {key}")))
}

fn canonical(key: &str) -> Option<&'static str> {
    let lower = key.trim().to_ascii_lowercase();
    if lower == "tol" {
        return Some("tol");
    }
    KEYS.iter().copied().find(|k| k.to_ascii_lowercase() == lower)
}

impl Config {
    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str, source: Source) -> CliResult<()> {
        let name = canonical(key).ok_or_else(|| CliError::Parse(format!("unknown configuration key {key:?}")))?;
        match name {
            "vol_M0" => self.volumes.vol_m0 = parse_value(name, value)?,
            "vol_M21" => self.volumes.vol_m21 = parse_value(name, value)?,
            "vol_G" => self.volumes.vol_g = parse_value(name, value)?,
            "c_Q" => self.c_q = parse_value(name, value)?,
            "C" => self.c = parse_value(name, value)?,
            "precision" => self.precision = parse_value(name, value)?,
            "ln2_placement" => {
                self.ln2_placement = value.trim().parse().map_err(|e: gl3_geom::Error| CliError::Parse(e.to_string()))?
            }
            "tol" => {
                let t: f64 = parse_value(name, value)?;
                self.quadrature.abs_tol = t;
                self.quadrature.rel_tol = t;
                self.sources.insert("abs_tol", source);
                self.sources.insert("rel_tol", source);
            }
            "abs_tol" => self.quadrature.abs_tol = parse_value(name, value)?,
            "rel_tol" => self.quadrature.rel_tol = parse_value(name, value)?,
            "max_depth" => self.quadrature.max_depth = parse_value(name, value)?,
            "initial_panels" => self.quadrature.initial_panels = parse_value(name, value)?,
            "seed" => self.seed = parse_value(name, value)?,
            _ => unreachable!("canonical key {name}"),
        }
        if name != "tol" {
            self.sources.insert(name, source);
        }
        Ok(())
    }

    /// Applies every `key = value` line of a configuration file body.
    pub fn apply_file(&mut self, text: &str) -> CliResult<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Parse(format!("config line {}: expected key = value", lineno + 1)))?;
            self.set(key, value, Source::File)?;
        }
        Ok(())
    }

    /// Parses a configuration file body on top of the defaults.
    pub fn from_file_text(text: &str) -> CliResult<Self> {
        let mut c = Config::default();
        c.apply_file(text)?;
        c.validate()?;
        Ok(c)
    }

    /// Checks positivity and finiteness of every value.
    pub fn validate(&self) -> CliResult<()> {
        let v = self.volumes;
        let positive = [("vol_M0", v.vol_m0), ("vol_M21", v.vol_m21), ("vol_G", v.vol_g), ("c_Q", self.c_q)];
        for (k, x) in positive {
            if !(x.is_finite() && x > 0.0) {
                return Err(CliError::Parse(format!("{k} must be positive and finite, got {x}")));
            }
        }
        if !self.c.is_finite() {
            return Err(CliError::Parse("C must be finite".into()));
        }
        if !(self.precision.is_finite() && self.precision > 0.0) {
            return Err(CliError::Parse("precision must be positive".into()));
        }
        self.quadrature.validate().map_err(|e| CliError::Parse(e.to_string()))
    }

    /// The origin of a canonical key.
    pub fn source(&self, key: &str) -> Source {
        self.sources.get(key).copied().unwrap_or(Source::Default)
    }

    /// Provenance note for a configured key.
    pub fn provenance(&self, key: &str) -> String {
        format!("configured ({})", self.source(key))
    }

    /// The coefficient-assembly configuration for the set S.
    pub fn coefficient_config(&self, s: PrimeSet) -> CoefficientConfig {
        CoefficientConfig {
            s,
            volumes: self.volumes,
            c_q: self.c_q,
            c: self.c,
            precision: self.precision,
            ln2_placement: self.ln2_placement,
        }
    }
}
