use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::flux::{Burgers, EulerState};
use crate::mesh::{cell_average_exact, CellField, Grid1D};
use crate::oracle::{oracle_tangent_piecewise, BurgersRampOracle};
use crate::solver::{run, EulerSolver, ScalarSolver, SchemeConfig, Snapshot};
use crate::tracker::{ShockState, ShockTracker, TrackPoint};

use super::case::{CaseConfig, Problem};

/// Snapshot times of the Burgers ramp runs.
pub const BURGERS_RECORD_TIMES: [f64; 5] = [0.018, 0.51, 1.0, 1.5, 2.0];

/// Output of one tracked simulation.
#[derive(Debug, Clone)]
pub struct CaseRun<S> {
    pub config: CaseConfig,
    pub grid: Grid1D,
    pub delta: f64,
    pub snapshots: Vec<Snapshot<S>>,
    pub history: Vec<TrackPoint>,
    pub shock: ShockState,
    pub steps: usize,
}

impl<S> CaseRun<S> {
    pub fn final_field(&self) -> &CellField<S> {
        &self.snapshots.last().expect("runs record t_final").field
    }
}

#[derive(Debug, Clone)]
pub enum CaseOutput {
    Burgers(CaseRun<Dual>),
    Euler(CaseRun<EulerState>),
}

impl CaseOutput {
    pub fn shock(&self) -> ShockState {
        match self {
            CaseOutput::Burgers(r) => r.shock,
            CaseOutput::Euler(r) => r.shock,
        }
    }

    pub fn delta(&self) -> f64 {
        match self {
            CaseOutput::Burgers(r) => r.delta,
            CaseOutput::Euler(r) => r.delta,
        }
    }

    pub fn history(&self) -> &[TrackPoint] {
        match self {
            CaseOutput::Burgers(r) => &r.history,
            CaseOutput::Euler(r) => &r.history,
        }
    }

    /// The compared quantity at `t_final`: `u` for Burgers, density for Euler.
    pub fn final_component(&self) -> CellField<Dual> {
        match self {
            CaseOutput::Burgers(r) => r.final_field().clone(),
            CaseOutput::Euler(r) => r.final_field().map(|q| q.rho),
        }
    }
}

/// Ramp initial data: values `(x - 0.05)` on `[0.05, 1.05)`, tangent equal
/// to the values.
pub fn burgers_initial(grid: &Grid1D) -> CellField<Dual> {
    let u0 = cell_average_exact(&BurgersRampOracle::new(0.0).piecewise(0.0), grid);
    let v0 = cell_average_exact(&oracle_tangent_piecewise(0.0), grid);
    CellField::from_parts(&u0, &v0).expect("same grid")
}

/// Riemann data with the configured seed, the shock cell split by overlap.
pub fn euler_initial(cfg: &CaseConfig, grid: &Grid1D) -> Result<CellField<EulerState>> {
    let (l, r) = cfg.shock_setup()?.states(cfg.seed)?;
    Ok(CellField::from_fn(*grid, |i| {
        let w = grid.right_fraction(i, cfg.x_shock0);
        if w == 0.0 {
            l
        } else if w == 1.0 {
            r
        } else {
            EulerState::new(l.rho * (1.0 - w) + r.rho * w, l.u * (1.0 - w) + r.u * w, l.p * (1.0 - w) + r.p * w)
        }
    }))
}

fn scheme_config(cfg: &CaseConfig, record: impl IntoIterator<Item = f64>) -> SchemeConfig {
    SchemeConfig {
        dt_mode: cfg.dt_mode(),
        t_final: cfg.t_final,
        dt_max: f64::INFINITY,
        record_times: record.into_iter().filter(|&t| t <= cfg.t_final).collect(),
    }
}

pub fn run_burgers(cfg: &CaseConfig) -> Result<CaseRun<Dual>> {
    if cfg.problem != Problem::BurgersRamp {
        return Err(Error::config("not a burgers case"));
    }
    cfg.validate()?;
    let grid = cfg.grid()?;
    let mut tracker = ShockTracker::new(Burgers, cfg.tracker(), grid.dx(), ShockState::new(cfg.x_shock0, 0.0))?;
    let solver = ScalarSolver::new(Burgers, cfg.scheme);
    let out = run(&solver, burgers_initial(&grid), &scheme_config(cfg, BURGERS_RECORD_TIMES), &mut [&mut tracker])?;
    Ok(CaseRun {
        config: cfg.clone(),
        grid,
        delta: tracker.delta(),
        snapshots: out.snapshots,
        shock: tracker.state(),
        history: tracker.into_history(),
        steps: out.steps,
    })
}

pub fn run_euler(cfg: &CaseConfig) -> Result<CaseRun<EulerState>> {
    if cfg.problem != Problem::EulerShock {
        return Err(Error::config("not an euler case"));
    }
    cfg.validate()?;
    let grid = cfg.grid()?;
    let gas = cfg.shock_setup()?.gas();
    let mut tracker = ShockTracker::new(gas, cfg.tracker(), grid.dx(), ShockState::new(cfg.x_shock0, 0.0))?;
    let ic = euler_initial(cfg, &grid)?;
    let record = [0.5 * cfg.t_final, cfg.t_final];
    let out = run(&EulerSolver::new(gas), ic, &scheme_config(cfg, record), &mut [&mut tracker])?;
    Ok(CaseRun {
        config: cfg.clone(),
        grid,
        delta: tracker.delta(),
        snapshots: out.snapshots,
        shock: tracker.state(),
        history: tracker.into_history(),
        steps: out.steps,
    })
}

/// Runs the configured case with its tracker mode.
pub fn run_case(cfg: &CaseConfig) -> Result<CaseOutput> {
    match cfg.problem {
        Problem::BurgersRamp => run_burgers(cfg).map(CaseOutput::Burgers),
        Problem::EulerShock => run_euler(cfg).map(CaseOutput::Euler),
    }
}

/// Least-squares slope of the tracked position over `t in [t0, t1]`.
pub fn fitted_speed(history: &[TrackPoint], t0: f64, t1: f64) -> Option<f64> {
    let pts: Vec<_> = history.iter().filter(|p| p.t >= t0 && p.t <= t1).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.t).sum::<f64>() / n;
    let mx = pts.iter().map(|p| p.x).sum::<f64>() / n;
    let num: f64 = pts.iter().map(|p| (p.t - mt) * (p.x - mx)).sum();
    let den: f64 = pts.iter().map(|p| (p.t - mt).powi(2)).sum();
    (den > 0.0).then(|| num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_initial_data() {
        let g = CaseConfig::burgers(9).unwrap().grid().unwrap();
        let f = burgers_initial(&g);
        for (i, d) in f.data().iter().enumerate() {
            assert_eq!(d.value, d.tangent, "cell {i}");
        }
        let x = 0.55;
        let i = g.cell_index(x).unwrap();
        assert!((f.data()[i].value - (g.center(i) - 0.05)).abs() < 1e-12);
    }

    #[test]
    fn euler_initial_tangents_follow_the_seed() {
        let cfg = CaseConfig::euler_desk();
        let g = cfg.grid().unwrap();
        let f = euler_initial(&cfg, &g).unwrap();
        assert_eq!(f.data()[0].rho.tangent, 0.0);
        assert!(f.data()[2000].rho.tangent != 0.0);
    }

    #[test]
    fn fit_of_a_line() {
        let h: Vec<TrackPoint> = (0..10).map(|k| TrackPoint { t: k as f64, x: 2.0 + 0.1 * k as f64, xi: 0.0 }).collect();
        assert!((fitted_speed(&h, 2.0, 8.0).unwrap() - 0.1).abs() < 1e-14);
        assert!(fitted_speed(&h, 20.0, 30.0).is_none());
    }
}
