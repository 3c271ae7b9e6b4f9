//! Deterministic text emission: series rows, regime reports, sweep
//! summaries, and the companion plotting script.
//!
//! Numbers are printed with 12 significant digits and a `.` decimal
//! separator, enough to carry the `I = C + D` identity through a text
//! round-trip at the 1e-9 level.

use std::io::{self, Write};

use crate::regime::{classify_basis, BasisLabel, RegimeReport};
use crate::trajectory::Trajectory;
use crate::xstate::CorrelationPoint;

/// One emitted row of a time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultRow {
    pub t: f64,
    pub b: f64,
    pub c: f64,
    pub classical: f64,
    pub discord: f64,
    pub mutual_information: f64,
    pub entropy: f64,
    pub basis: BasisLabel,
}

impl ResultRow {
    fn from_point(point: &CorrelationPoint, basis: BasisLabel) -> Self {
        Self {
            t: point.t,
            b: point.b,
            c: point.c,
            classical: point.classical,
            discord: point.discord,
            mutual_information: point.mutual_information,
            entropy: point.entropy,
            basis,
        }
    }
}

/// Rows for a full trajectory, one per grid time.
pub fn rows(traj: &Trajectory) -> Vec<ResultRow> {
    traj.points()
        .iter()
        .zip(traj.states())
        .map(|(point, state)| ResultRow::from_point(point, classify_basis(state)))
        .collect()
}

/// Format with 12 significant digits, positional where compact and
/// scientific otherwise (the `%.12g` convention).
pub fn format_significant(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp_str) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp_str.parse().expect("exponent parses");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|ch| ch.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 12);

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-4..12).contains(&exp) {
        if exp >= 0 {
            let split = exp as usize + 1;
            out.push_str(&digits[..split]);
            let frac = digits[split..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        } else {
            out.push_str("0.");
            for _ in 0..(-exp - 1) {
                out.push('0');
            }
            out.push_str(digits.trim_end_matches('0'));
        }
    } else {
        let frac = digits[1..].trim_end_matches('0');
        out.push_str(&digits[..1]);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out.push('e');
        out.push_str(&exp.to_string());
    }
    out
}

fn join_values(values: &[f64]) -> String {
    values.iter().map(|v| format_significant(*v)).collect::<Vec<_>>().join(", ")
}

pub const SERIES_HEADER: &str = "t,b,c,C,D,I,S,basis";

/// The delimiter-separated series: header line, then one row per grid time.
pub fn write_series(w: &mut (impl Write + ?Sized), rows: &[ResultRow]) -> io::Result<()> {
    writeln!(w, "{SERIES_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            format_significant(r.t),
            format_significant(r.b),
            format_significant(r.c),
            format_significant(r.classical),
            format_significant(r.discord),
            format_significant(r.mutual_information),
            format_significant(r.entropy),
            r.basis
        )?;
    }
    Ok(())
}

pub fn write_run_header(w: &mut (impl Write + ?Sized), p: f64, tau: f64) -> io::Result<()> {
    writeln!(w, "[run]")?;
    writeln!(w, "p = {}", format_significant(p))?;
    writeln!(w, "tau = {}", format_significant(tau))?;
    Ok(())
}

pub fn write_regime_block(w: &mut (impl Write + ?Sized), report: &RegimeReport) -> io::Result<()> {
    writeln!(w, "[regimes]")?;
    writeln!(w, "crossings = [{}]", join_values(&report.crossings))?;
    let plateaus = report
        .plateaus
        .iter()
        .map(|(lo, hi)| format!("[{}, {}]", format_significant(*lo), format_significant(*hi)))
        .collect::<Vec<_>>()
        .join(", ");
    writeln!(w, "plateaus = [{plateaus}]")?;
    writeln!(w, "metastable_count = {}", report.metastable_count)?;
    writeln!(w, "asymptotic_basis = {}", report.asymptotic_basis)?;
    writeln!(w, "entropy_maxima = [{}]", join_values(&report.entropy_maxima))?;
    Ok(())
}

/// The structured-text report: run header, series, and regime block.
pub fn write_report(
    w: &mut (impl Write + ?Sized),
    p: f64,
    tau: f64,
    rows: &[ResultRow],
    report: &RegimeReport,
) -> io::Result<()> {
    write_run_header(w, p, tau)?;
    writeln!(w)?;
    writeln!(w, "[series]")?;
    write_series(w, rows)?;
    writeln!(w)?;
    write_regime_block(w, report)
}

/// Sweep output: header with the crossover context, a summary table, and
/// one regime block per temperature.
pub fn write_sweep(
    w: &mut (impl Write + ?Sized),
    p: f64,
    pointer_estimate: &str,
    tau_star: &str,
    entries: &[(f64, crate::Result<RegimeReport>)],
) -> io::Result<()> {
    writeln!(w, "[sweep]")?;
    writeln!(w, "p = {}", format_significant(p))?;
    writeln!(w, "pointer_estimate = {pointer_estimate}")?;
    writeln!(w, "tau_star = {tau_star}")?;
    writeln!(w)?;
    writeln!(w, "[summary]")?;
    writeln!(w, "tau,crossings,plateau_count,metastable_count,asymptotic_basis,status")?;
    for (tau, outcome) in entries {
        match outcome {
            Ok(report) => writeln!(
                w,
                "{},{},{},{},{},ok",
                format_significant(*tau),
                report.crossings.len(),
                report.plateaus.len(),
                report.metastable_count,
                report.asymptotic_basis
            )?,
            Err(err) => writeln!(
                w,
                "{},,,,,error: {}",
                format_significant(*tau),
                err.to_string().replace(',', ";")
            )?,
        }
    }
    for (tau, outcome) in entries {
        writeln!(w)?;
        writeln!(w, "[tau = {}]", format_significant(*tau))?;
        match outcome {
            Ok(report) => write_regime_block(w, report)?,
            Err(err) => writeln!(w, "error = {err}")?,
        }
    }
    Ok(())
}

/// A matplotlib script that reads the emitted series and reproduces the
/// standard layout: classical correlation solid red, discord dashed blue,
/// entropy solid black.
pub fn plot_script(data_file: &str) -> String {
    format!(
        r#"#!/usr/bin/env python3
"""Plot the correlation series written to {data_file}."""
import csv
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
t, classical, discord, entropy = [], [], [], []
with open(here / "{data_file}", newline="") as fh:
    for row in csv.DictReader(fh):
        t.append(float(row["t"]))
        classical.append(float(row["C"]))
        discord.append(float(row["D"]))
        entropy.append(float(row["S"]))

fig, ax = plt.subplots(figsize=(7.0, 4.5))
ax.plot(t, classical, color="red", lw=1.6, label="classical correlation")
ax.plot(t, discord, color="blue", ls="--", lw=1.4, label="quantum discord")
ax.plot(t, entropy, color="black", lw=1.2, label="entropy")
ax.set_xlabel("t  (a_B / s)")
ax.set_ylabel("bits")
ax.set_xlim(t[0], t[-1])
ax.legend(loc="best")
fig.tight_layout()
out = Path(__file__).with_suffix(".png")
fig.savefig(out, dpi=160)
print(f"wrote {{out}}")
"#
    )
}
