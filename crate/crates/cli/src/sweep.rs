//! Height sweeps and their CSV form.

use std::io::{Read, Write};

use cpshift::asymptotics::asymptotic_shift;
use cpshift::euler_maclaurin::decompose;
use cpshift::lattice_sum::sum_lattice;
use cpshift::{Regime, ShiftKind};
use rayon::prelude::*;

use crate::config::Config;
use crate::error::{CliError, Result};

/// Largest spacing in `z̃`: sixteen samples per pendulation period `π`.
pub const MAX_STEP: f64 = std::f64::consts::PI / 16.0;

/// Fixed leading columns; asymptote columns follow as `asym_<regime>`.
pub const BASE_COLUMNS: [&str; 11] = [
    "z_tilde",
    "resonant_direct",
    "offresonant_direct",
    "resonant_bulk",
    "resonant_edge",
    "resonant_vertex",
    "resonant_em_total",
    "offresonant_bulk",
    "offresonant_edge",
    "offresonant_vertex",
    "offresonant_em_total",
];

/// Geometric grid with `per_decade` points per decade from `z_min`, refined
/// so that consecutive heights never differ by more than [`MAX_STEP`].
pub fn height_grid(z_min: f64, z_max: f64, per_decade: u32) -> Vec<f64> {
    let ratio = 10f64.powf(1.0 / per_decade as f64);
    let mut out = vec![z_min];
    let mut k = 0u32;
    let mut z = z_min;
    loop {
        let geometric = z_min * ratio.powi(k as i32 + 1);
        let next = if geometric - z > MAX_STEP { z + MAX_STEP } else { geometric };
        if next > z_max * (1.0 + 1e-12) {
            break;
        }
        if next == geometric {
            k += 1;
        }
        z = next;
        out.push(z);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<String>,
    /// `None` marks a cell that was not computed.
    pub rows: Vec<Vec<Option<f64>>>,
}

/// Round-trip exact decimal form (17 significant digits).
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| CliError::Usage(format!("no column {name:?}; available: {}", self.columns.join(", "))))
    }

    /// `(z̃, value)` pairs of the populated cells of `name`.
    pub fn series(&self, name: &str) -> Result<Vec<(f64, f64)>> {
        let c = self.column(name)?;
        Ok(self.rows.iter().filter_map(|r| Some((r[0]?, r[c]?))).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.map(format_value).unwrap_or_default()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let columns: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in r.records() {
            let record = record?;
            let row = record
                .iter()
                .map(|cell| {
                    if cell.is_empty() {
                        Ok(None)
                    } else {
                        cell.parse().map(Some).map_err(|_| CliError::Config(format!("bad number {cell:?} in csv")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }
}

pub fn columns(cfg: &Config) -> Vec<String> {
    let mut cols: Vec<String> = BASE_COLUMNS.iter().map(|s| s.to_string()).collect();
    cols.extend(Regime::applicable(cfg.params().orientation()).iter().map(|r| format!("asym_{}", r.label())));
    cols
}

fn row(cfg: &Config, z: f64, direct: bool) -> Result<Vec<Option<f64>>> {
    let sys = cfg.system(z)?;
    let mut out = vec![Some(z)];
    for kind in ShiftKind::BOTH {
        out.push(if direct { Some(sum_lattice(&sys, kind)?.value) } else { None });
    }
    for kind in ShiftKind::BOTH {
        let d = decompose(&sys, kind)?;
        out.extend([d.bulk, d.edge, d.vertex, d.total].map(Some));
    }
    for r in Regime::applicable(sys.params().orientation()) {
        out.push(Some(asymptotic_shift(r, &sys)));
    }
    Ok(out)
}

/// Computes every row; with `require_direct` an over-budget lattice is an
/// error instead of leaving the direct columns empty.
pub fn sweep(cfg: &Config, require_direct: bool) -> Result<SweepTable> {
    let direct = cfg.direct_allowed();
    if !direct && require_direct {
        let sites = cpshift::LatticeSpec::new(cfg.a_tilde, cfg.half_extent).site_count();
        return Err(CliError::Budget { sites, budget: cfg.site_budget });
    }
    let grid = height_grid(cfg.z_min, cfg.z_max, cfg.points_per_decade);
    let rows = grid.par_iter().map(|&z| row(cfg, z, direct)).collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { columns: columns(cfg), rows })
}
