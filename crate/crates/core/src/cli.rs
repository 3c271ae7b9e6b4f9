//! Command-line interface with scriptable exit codes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 numeric failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{OutputFormat, RunConfig};
use crate::geometry::SubstrateContext;
use crate::output;
use crate::regime;
use crate::trajectory::Trajectory;
use crate::verify;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_NUMERIC_FAILURE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "dephase",
    about = "Dephasing dynamics and pointer-basis analysis for two donor-based charge qubits",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Configuration file (TOML); flags below override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Mixing weight of the initial Bell mixture.
    #[arg(long, global = true)]
    p: Option<f64>,

    /// Temperature ratio for single-trajectory commands.
    #[arg(long, global = true)]
    tau: Option<f64>,

    /// Comma-separated temperature ratios for `sweep`.
    #[arg(long, global = true, value_delimiter = ',', value_name = "TAU,...")]
    tau_list: Option<Vec<f64>>,

    /// End of the time grid, in reduced units.
    #[arg(long, global = true)]
    t_max: Option<f64>,

    /// Number of grid points.
    #[arg(long, global = true)]
    points: Option<usize>,

    /// Output format for `evolve`.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Output file (standard output when omitted).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Seed for the randomized verification suites.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write a plotting script next to the emitted series.
    #[arg(long, global = true)]
    emit_plot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one trajectory and emit the correlation series.
    Evolve,
    /// Scan the pointer-basis regimes of one trajectory.
    Regimes,
    /// Run independent trajectories for every temperature in tau_list.
    Sweep,
    /// Report the pointer-transition temperature estimate and the bisected
    /// crossover temperature.
    PointerTemp,
    /// Run the verification suites.
    Verify {
        /// Deliberately break one suite to exercise the failure path.
        #[arg(long)]
        inject_fault: bool,
    },
}

fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(p) = cli.p {
        cfg.dynamics.p = p;
    }
    if let Some(tau) = cli.tau {
        cfg.dynamics.tau = tau;
    }
    if let Some(list) = &cli.tau_list {
        cfg.dynamics.tau_list = list.clone();
    }
    if let Some(t_max) = cli.t_max {
        cfg.dynamics.t_max = t_max;
    }
    if let Some(points) = cli.points {
        cfg.dynamics.points = points;
    }
    if let Some(format) = cli.format {
        cfg.output.format = format;
    }
    if let Some(out) = &cli.out {
        cfg.output.out = Some(out.clone());
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if cli.emit_plot {
        cfg.output.emit_plot = true;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Quadrature { .. }
        | Error::NoBracket { .. }
        | Error::NotStationary { .. }
        | Error::TrajectoryTooCoarse { .. } => EXIT_NUMERIC_FAILURE,
        _ => EXIT_INVALID_INPUT,
    }
}

fn write_output(cfg: &RunConfig, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    let io_err = |e: io::Error| Error::InvalidInput(format!("output: {e}"));
    match &cfg.output.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Error::InvalidInput(format!("output {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            match body(&mut w) {
                // a closed pipe downstream is not our failure
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(io_err),
            }
        }
    }
}

fn plot_script_path(data_path: &Path) -> PathBuf {
    let stem = data_path.file_stem().unwrap_or_default().to_string_lossy();
    data_path.with_file_name(format!("{stem}_plot.py"))
}

fn emit_plot_script(cfg: &RunConfig) -> Result<()> {
    let data_path = cfg.output.out.as_ref().ok_or_else(|| {
        Error::InvalidInput("--emit-plot needs --out so the script can find the data".into())
    })?;
    if cfg.output.format != OutputFormat::Csv {
        return Err(Error::InvalidInput("--emit-plot needs the csv series format".into()));
    }
    let data_name = data_path
        .file_name()
        .ok_or_else(|| Error::InvalidInput("output path has no file name".into()))?
        .to_string_lossy();
    let script = output::plot_script(&data_name);
    let path = plot_script_path(data_path);
    std::fs::write(&path, script)
        .map_err(|e| Error::InvalidInput(format!("plot script {}: {e}", path.display())))
}

fn simulate(cfg: &RunConfig) -> Result<Trajectory> {
    let geom = cfg.geometry.build()?;
    let ctx = SubstrateContext::new(cfg.dynamics.tau)?;
    let grid = cfg.time_grid()?;
    Trajectory::simulate(&geom, &ctx, cfg.dynamics.p, &grid)
}

fn cmd_evolve(cfg: &RunConfig) -> Result<()> {
    let traj = simulate(cfg)?;
    let rows = output::rows(&traj);
    match cfg.output.format {
        OutputFormat::Csv => write_output(cfg, |w| output::write_series(w, &rows))?,
        OutputFormat::Report => {
            let report = regime::scan_regimes(&traj)?;
            write_output(cfg, |w| {
                output::write_report(w, cfg.dynamics.p, cfg.dynamics.tau, &rows, &report)
            })?;
        }
    }
    if cfg.output.emit_plot {
        emit_plot_script(cfg)?;
    }
    Ok(())
}

fn cmd_regimes(cfg: &RunConfig) -> Result<()> {
    let traj = simulate(cfg)?;
    let report = regime::scan_regimes(&traj)?;
    write_output(cfg, |w| {
        output::write_run_header(w, cfg.dynamics.p, cfg.dynamics.tau)?;
        writeln!(w)?;
        output::write_regime_block(w, &report)
    })
}

fn crossover_context(cfg: &RunConfig) -> (String, String) {
    let estimate = match regime::pointer_temperature_estimate(cfg.dynamics.p) {
        Ok(v) => output::format_significant(v),
        Err(Error::NoAbruptTransition) => "none (p = 1/2)".to_string(),
        Err(e) => format!("error: {e}"),
    };
    let geom = match cfg.geometry.build() {
        Ok(g) => g,
        Err(e) => return (estimate, format!("error: {e}")),
    };
    let [lo, hi] = cfg.oracle.crossover_bracket;
    let tau_star = match regime::crossover_temperature(
        &geom,
        cfg.dynamics.p,
        cfg.oracle.t_stationary,
        (lo, hi),
    ) {
        Ok(v) => output::format_significant(v),
        Err(e) => format!("error: {e}"),
    };
    (estimate, tau_star)
}

fn cmd_sweep(cfg: &RunConfig) -> Result<()> {
    if cfg.dynamics.tau_list.is_empty() {
        return Err(Error::InvalidInput("sweep needs a non-empty tau_list".into()));
    }
    let geom = cfg.geometry.build()?;
    let grid = cfg.time_grid()?;
    let entries = regime::temperature_sweep(&geom, cfg.dynamics.p, &cfg.dynamics.tau_list, &grid);
    let (estimate, tau_star) = crossover_context(cfg);
    write_output(cfg, |w| {
        output::write_sweep(w, cfg.dynamics.p, &estimate, &tau_star, &entries)
    })?;
    if entries.iter().all(|(_, outcome)| outcome.is_err()) {
        let (_, first) = &entries[0];
        return Err(first.as_ref().unwrap_err().clone());
    }
    Ok(())
}

fn cmd_pointer_temp(cfg: &RunConfig) -> Result<()> {
    match regime::pointer_temperature_estimate(cfg.dynamics.p) {
        Err(Error::NoAbruptTransition) => {
            return write_output(cfg, |w| {
                writeln!(w, "no abrupt transition: p = 1/2 keeps the sigma_x basis at every temperature")
            });
        }
        Err(e) => return Err(e),
        Ok(estimate) => {
            let geom = cfg.geometry.build()?;
            let [lo, hi] = cfg.oracle.crossover_bracket;
            let tau_star = regime::crossover_temperature(
                &geom,
                cfg.dynamics.p,
                cfg.oracle.t_stationary,
                (lo, hi),
            )?;
            write_output(cfg, |w| {
                writeln!(
                    w,
                    "pointer_estimate = {}   (stationary-value order of magnitude, -ln|2p-1|/(16 pi))",
                    output::format_significant(estimate)
                )?;
                writeln!(
                    w,
                    "tau_star = {}   (bisection of the asymptotic condition |a| = b + c)",
                    output::format_significant(tau_star)
                )
            })?;
        }
    }
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, inject_fault: bool) -> Result<i32> {
    let results = verify::run_all(cfg, inject_fault)?;
    write_output(cfg, |w| {
        let mut all_passed = true;
        for r in &results {
            let status = if r.passed { "pass" } else { "FAIL" };
            writeln!(w, "verify: {:<28} {status}  ({})", r.name, r.detail)?;
            all_passed &= r.passed;
        }
        if all_passed {
            writeln!(w, "verify: all suites passed")
        } else {
            writeln!(w, "verify: FAILED")
        }
    })?;
    Ok(if results.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

/// Parse the process arguments, run the requested command, and return the
/// exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let cfg = match resolve_config(&cli) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("dephase: {err}");
            return EXIT_INVALID_INPUT;
        }
    };
    let outcome = match cli.command {
        Command::Evolve => cmd_evolve(&cfg).map(|()| EXIT_OK),
        Command::Regimes => cmd_regimes(&cfg).map(|()| EXIT_OK),
        Command::Sweep => cmd_sweep(&cfg).map(|()| EXIT_OK),
        Command::PointerTemp => cmd_pointer_temp(&cfg).map(|()| EXIT_OK),
        Command::Verify { inject_fault } => cmd_verify(&cfg, inject_fault),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("dephase: {err}");
            exit_code(&err)
        }
    }
}
