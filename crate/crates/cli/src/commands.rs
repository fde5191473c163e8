use std::io::Write;
use std::path::Path;

use cpshift::asymptotics::{asymptotic_shift, expected_exponent};
use cpshift::diagrams::{verify_identity, IdentityCheck, ProcessId};
use cpshift::euler_maclaurin::decompose;
use cpshift::fitting::{envelope_fit, fit_power_law};
use cpshift::{Exponent, Fit, Regime, ShiftKind};

use crate::config::Config;
use crate::error::{CliError, Result};
use crate::sweep::{format_value, sweep, SweepTable};

/// Largest relative deviation accepted by `verify-diagrams`.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMode {
    Direct,
    Envelope,
}

pub fn cmd_sweep(cfg: &Config, require_direct: bool, out: &mut dyn Write) -> Result<()> {
    sweep(cfg, require_direct)?.write_csv(out)
}

pub fn cmd_decompose(cfg: &Config, z: f64, csv: bool, out: &mut dyn Write) -> Result<()> {
    let sys = cfg.system(z)?;
    let parts: Vec<(ShiftKind, cpshift::Breakdown)> =
        ShiftKind::BOTH.iter().map(|&k| Ok((k, decompose(&sys, k)?))).collect::<Result<_>>()?;
    if csv {
        writeln!(out, "kind,z_tilde,bulk,edge,vertex,total")?;
        for (kind, b) in &parts {
            let cells = [z, b.bulk, b.edge, b.vertex, b.total].map(format_value);
            writeln!(out, "{},{}", kind.label(), cells.join(","))?;
        }
        return Ok(());
    }
    writeln!(
        out,
        "z_tilde = {z}, a_tilde = {}, mu = {}, rho = {}, orientation = {}",
        cfg.a_tilde,
        cfg.mu,
        cfg.rho,
        sys.params().orientation().label()
    )?;
    for (kind, b) in &parts {
        let dominant = [("bulk", b.bulk), ("edge", b.edge), ("vertex", b.vertex)]
            .into_iter()
            .fold(("bulk", 0.0f64), |best, (n, v)| if v.abs() > best.1.abs() { (n, v) } else { best });
        writeln!(out, "{}:", kind.label())?;
        writeln!(out, "  bulk   = {}", format_value(b.bulk))?;
        writeln!(out, "  edge   = {}", format_value(b.edge))?;
        writeln!(out, "  vertex = {}", format_value(b.vertex))?;
        writeln!(out, "  total  = {}  (dominated by {})", format_value(b.total), dominant.0)?;
    }
    Ok(())
}

pub fn cmd_asymptotic(cfg: &Config, z: f64, only: Option<&str>, out: &mut dyn Write) -> Result<()> {
    let sys = cfg.system(z)?;
    let regimes = Regime::applicable(sys.params().orientation());
    if regimes.is_empty() {
        return Err(CliError::Config("no tabulated laws for custom orientations".into()));
    }
    let selected: Vec<Regime> = match only {
        Some(label) => {
            let r = regimes
                .into_iter()
                .find(|r| r.label() == label)
                .ok_or_else(|| CliError::Usage(format!("unknown regime {label:?}")))?;
            vec![r]
        }
        None => regimes,
    };
    writeln!(out, "regime,z_exponent,value")?;
    for r in selected {
        let exponent = match expected_exponent(r) {
            Exponent::Power(e) => e.to_string(),
            Exponent::Vanishes => "vanishes".to_string(),
        };
        writeln!(out, "{},{},{}", r.label(), exponent, format_value(asymptotic_shift(r, &sys)))?;
    }
    Ok(())
}

/// Checks the twelve-process identity; `corrupt` flips one process's sign.
pub fn cmd_verify_diagrams(samples: usize, seed: u64, corrupt: Option<ProcessId>, out: &mut dyn Write) -> Result<()> {
    if samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    let check = IdentityCheck { corrupt, ..IdentityCheck::new(samples, seed) };
    let report = verify_identity(&check);
    writeln!(out, "samples = {}", report.samples)?;
    writeln!(out, "seed = {seed}")?;
    writeln!(out, "max_relative_deviation = {:e}", report.max_rel_error)?;
    let (w, wp, mu) = report.worst;
    writeln!(out, "worst = (w = {w}, w' = {wp}, mu = {mu})")?;
    if !(report.max_rel_error <= IDENTITY_TOLERANCE) {
        return Err(CliError::Verification(format!(
            "deviation {:e} exceeds {IDENTITY_TOLERANCE:e}",
            report.max_rel_error
        )));
    }
    writeln!(out, "identity holds")?;
    Ok(())
}

pub fn fit_table(table: &SweepTable, column: &str, window: (f64, f64), mode: FitMode) -> Result<Fit> {
    let series = table.series(column)?;
    Ok(match mode {
        FitMode::Direct => fit_power_law(&series, window)?,
        FitMode::Envelope => envelope_fit(&series, window)?,
    })
}

pub fn cmd_fit(path: &Path, column: &str, window: (f64, f64), mode: FitMode, out: &mut dyn Write) -> Result<Fit> {
    let file = std::fs::File::open(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let table = SweepTable::read_csv(file)?;
    let fit = fit_table(&table, column, window, mode)?;
    writeln!(out, "column = {column}")?;
    writeln!(out, "window = [{}, {}]", window.0, window.1)?;
    writeln!(out, "points = {}", fit.points)?;
    writeln!(out, "slope = {}", format_value(fit.slope))?;
    writeln!(out, "intercept = {}", format_value(fit.intercept))?;
    writeln!(out, "r_squared = {}", format_value(fit.r_squared))?;
    Ok(fit)
}
