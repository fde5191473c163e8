//! Flat `key = value` configuration with command-line overrides.

use std::path::Path;

use cpshift::model::{unit_x, unit_z, validate};
use cpshift::{Geometry, LatticeSpec, ModelParams, Vec3};

use crate::error::{CliError, Result};

/// Environment variable overriding the `threads` key.
pub const THREADS_ENV: &str = "CPSHIFT_THREADS";

pub const KEYS: [&str; 13] = [
    "mu",
    "rho",
    "a_tilde",
    "half_extent",
    "orientation",
    "test_dipole",
    "array_dipole",
    "z_min",
    "z_max",
    "points_per_decade",
    "site_budget",
    "seed",
    "threads",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrientationSpec {
    Zz,
    Zx,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub mu: f64,
    pub rho: f64,
    pub a_tilde: f64,
    pub half_extent: u64,
    pub orientation: OrientationSpec,
    /// Only read for `orientation = custom`.
    pub test_dipole: Option<Vec3<f64>>,
    pub array_dipole: Option<Vec3<f64>>,
    pub z_min: f64,
    pub z_max: f64,
    pub points_per_decade: u32,
    /// Largest `(2M+1)²` for which direct sums are attempted.
    pub site_budget: f64,
    pub seed: u64,
    /// Worker count; 0 lets the pool decide.
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            mu: 0.5,
            rho: 1e-6,
            a_tilde: 0.01,
            half_extent: 100,
            orientation: OrientationSpec::Zz,
            test_dipole: None,
            array_dipole: None,
            z_min: 0.01,
            z_max: 100.0,
            points_per_decade: 64,
            site_budget: 1e10,
            seed: 42,
            threads: 0,
        }
    }
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| CliError::Config(format!("{key}: cannot parse {value:?}")))
}

fn vector(key: &str, value: &str) -> Result<Vec3<f64>> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!("{key}: expected three comma-separated components, got {value:?}")));
    }
    Ok([number(key, parts[0])?, number(key, parts[1])?, number(key, parts[2])?])
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "mu" => self.mu = number(key, value)?,
            "rho" => self.rho = number(key, value)?,
            "a_tilde" => self.a_tilde = number(key, value)?,
            "half_extent" => self.half_extent = number(key, value)?,
            "orientation" => {
                self.orientation = match value {
                    "zz" => OrientationSpec::Zz,
                    "zx" => OrientationSpec::Zx,
                    "custom" => OrientationSpec::Custom,
                    _ => return Err(CliError::Config(format!("orientation: expected zz, zx or custom, got {value:?}"))),
                }
            }
            "test_dipole" => self.test_dipole = Some(vector(key, value)?),
            "array_dipole" => self.array_dipole = Some(vector(key, value)?),
            "z_min" => self.z_min = number(key, value)?,
            "z_max" => self.z_max = number(key, value)?,
            "points_per_decade" => self.points_per_decade = number(key, value)?,
            "site_budget" => self.site_budget = number(key, value)?,
            "seed" => self.seed = number(key, value)?,
            "threads" => self.threads = number(key, value)?,
            _ => return Err(CliError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn merge_text(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value, got {raw:?}", n + 1)))?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    /// Defaults, then the file, then `overrides` in order, then the thread
    /// environment variable.
    pub fn load(file: Option<&Path>, overrides: &[(&str, String)], env_threads: Option<&str>) -> Result<Self> {
        let mut cfg = Config::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            cfg.merge_text(&text)?;
        }
        for (key, value) in overrides {
            cfg.set(key, value)?;
        }
        if let Some(t) = env_threads {
            cfg.threads = number(THREADS_ENV, t)?;
        }
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<()> {
        if !(self.z_min > 0.0 && self.z_max >= self.z_min && self.z_max.is_finite()) {
            return Err(CliError::Config(format!("need 0 < z_min ≤ z_max, got {} and {}", self.z_min, self.z_max)));
        }
        if self.points_per_decade == 0 {
            return Err(CliError::Config("points_per_decade must be positive".into()));
        }
        if !(self.site_budget >= 0.0) {
            return Err(CliError::Config("site_budget must be non-negative".into()));
        }
        if self.orientation == OrientationSpec::Custom && (self.test_dipole.is_none() || self.array_dipole.is_none()) {
            return Err(CliError::Config("orientation = custom needs test_dipole and array_dipole".into()));
        }
        // surfaces parameter errors before any work starts
        self.system(self.z_min)?;
        Ok(())
    }

    pub fn params(&self) -> ModelParams<f64> {
        let (test, array) = match self.orientation {
            OrientationSpec::Zz => (unit_z(), unit_z()),
            OrientationSpec::Zx => (unit_z(), unit_x()),
            OrientationSpec::Custom => (
                self.test_dipole.expect("checked at load"),
                self.array_dipole.expect("checked at load"),
            ),
        };
        ModelParams::new(self.mu, self.rho, test, array)
    }

    pub fn system(&self, z: f64) -> Result<cpshift::System> {
        validate(self.params(), LatticeSpec::new(self.a_tilde, self.half_extent), Geometry::new(z))
            .map_err(CliError::Invalid)
    }

    pub fn direct_allowed(&self) -> bool {
        LatticeSpec::new(self.a_tilde, self.half_extent).site_count() as f64 <= self.site_budget
    }
}
