//! `shockad`: runs tracked shock simulations, epsilon sweeps and grid
//! convergence studies, and writes CSV tables.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O.

mod args;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use shockad::harness::{
    burgers_grid_cases, emit_csv, emit_snapshot_csv, emit_track_csv, epsilon_sweep, grid_convergence, halving_cases,
    run_case, validate_oracles, write_csv, CaseConfig, CaseOutput, Problem, SweepReport,
};
use shockad::Error;

use args::{Cli, Command};

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) => 2,
        Error::Io { .. } => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start {jobs} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Returns `Ok(false)` when a check ran but did not pass.
fn dispatch(cmd: Command) -> shockad::Result<bool> {
    match cmd {
        Command::Burgers(a) => run_single(a.case.resolve(Some(Problem::BurgersRamp))?, &a),
        Command::Euler(a) => run_single(a.case.resolve(Some(Problem::EulerShock))?, &a),
        Command::Sweep(a) => {
            let cfg = a.case.resolve(a.problem.map(args::ProblemArg::problem))?;
            let report = epsilon_sweep(&cfg)?;
            write_report(&report, a.out.as_deref())?;
            Ok(true)
        }
        Command::Gridconv(a) => {
            let cfg = a.case.resolve(a.problem.map(args::ProblemArg::problem))?;
            let cases = match cfg.problem {
                Problem::BurgersRamp => burgers_grid_cases(&cfg, &a.grids)?,
                Problem::EulerShock => halving_cases(&cfg, cfg.dx, a.levels),
            };
            let report = grid_convergence(&cases, a.eps.unwrap_or(cfg.eps_max))?;
            write_report(&report, a.out.as_deref())?;
            Ok(true)
        }
        Command::ValidateOracles => {
            let checks = validate_oracles();
            for c in &checks {
                let tag = if c.passed() { "PASS" } else { "FAIL" };
                println!("{tag} {}: error {:e} (tolerance {:e})", c.name, c.error, c.tolerance);
            }
            Ok(checks.iter().all(|c| c.passed()))
        }
    }
}

fn run_single(cfg: CaseConfig, a: &args::RunArgs) -> shockad::Result<bool> {
    let out = run_case(&cfg)?;
    let s = out.shock();
    println!("problem={} mode={} dx={} delta={}", cfg.problem, cfg.mode, cfg.dx, out.delta());
    println!("t={} x_shock={} xi={}", cfg.t_final, s.x(), s.xi());
    if let Some(path) = &a.out {
        match &out {
            CaseOutput::Burgers(r) => emit_snapshot_csv(r.final_field(), path)?,
            CaseOutput::Euler(r) => emit_snapshot_csv(r.final_field(), path)?,
        }
    }
    if let Some(dir) = &a.snapshot_dir {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.clone(), source })?;
        let name = |t: f64| dir.join(format!("snapshot_t{t}.csv"));
        match &out {
            CaseOutput::Burgers(r) => {
                for snap in &r.snapshots {
                    emit_snapshot_csv(&snap.field, &name(snap.t))?;
                }
            }
            CaseOutput::Euler(r) => {
                for snap in &r.snapshots {
                    emit_snapshot_csv(&snap.field, &name(snap.t))?;
                }
            }
        }
        emit_track_csv(out.history(), &dir.join("track.csv"))?;
    }
    Ok(true)
}

fn write_report(report: &SweepReport, out: Option<&Path>) -> shockad::Result<()> {
    for m in &report.meta {
        eprintln!(
            "case={} dx={} delta={} xi={} eps_dagger={} delta_u={}",
            m.case, m.dx, m.delta, m.xi, m.eps_dagger, m.delta_u
        );
    }
    match out {
        Some(p) => emit_csv(report, p),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_csv(report, &mut lock)?;
            lock.flush().map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
    }
}
