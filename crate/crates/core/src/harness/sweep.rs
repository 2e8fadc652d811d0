use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flux::ShockParam;
use crate::mesh::{CellField, Grid1D};
use crate::oracle::{BurgersRampOracle, EulerShockOracle};
use crate::tangent::{jump_estimate_by, l1_error, linear_shift, tangential_shift};
use crate::tracker::{ShockState, TrackMode};

use super::case::{CaseConfig, Problem};
use super::run::run_case;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    Epsilon,
    Grid,
}

/// One row: the swept quantity (epsilon or dx) and the four errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub err_no_ad: f64,
    pub err_blackbox: f64,
    pub err_shock: f64,
    pub err_base: f64,
}

/// Per-simulation facts a report was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepMeta {
    pub case: String,
    pub dx: f64,
    pub delta: f64,
    /// Shock tangent at `t_final` from the shock-mode run.
    pub xi: f64,
    pub eps_dagger: f64,
    pub delta_u: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub rows: Vec<SweepRow>,
    pub meta: Vec<SweepMeta>,
}

impl SweepReport {
    pub fn empty(kind: SweepKind) -> Self {
        SweepReport { kind, rows: Vec::new(), meta: Vec::new() }
    }
}

/// Fields from the three tracker modes of one case.
#[derive(Debug, Clone)]
pub struct ModeFields {
    pub config: CaseConfig,
    pub grid: Grid1D,
    pub delta: f64,
    pub u_none: CellField<f64>,
    pub u_blackbox: CellField<f64>,
    pub udot_blackbox: CellField<f64>,
    pub u_shock: CellField<f64>,
    pub udot_shock: CellField<f64>,
    pub shock: ShockState,
    pub delta_u: f64,
}

impl ModeFields {
    /// Runs all three modes (in parallel) and keeps what the errors need.
    pub fn compute(cfg: &CaseConfig) -> Result<Self> {
        let mut runs = TrackMode::ALL
            .par_iter()
            .map(|&m| run_case(&cfg.with_mode(m)))
            .collect::<Result<Vec<_>>>()?
            .into_iter();
        let (none, bb, sh) = (runs.next().unwrap(), runs.next().unwrap(), runs.next().unwrap());
        let (f_none, f_bb, f_sh) = (none.final_component(), bb.final_component(), sh.final_component());
        let shock = sh.shock();
        let delta = sh.delta();
        let jump = jump_estimate_by(&f_sh, &shock, delta, |&u| u)?;
        Ok(ModeFields {
            config: cfg.clone(),
            grid: *f_sh.grid(),
            delta,
            u_none: f_none.values(),
            u_blackbox: f_bb.values(),
            udot_blackbox: f_bb.tangents(),
            u_shock: f_sh.values(),
            udot_shock: f_sh.tangents(),
            shock,
            delta_u: jump.value,
        })
    }

    /// Cell-averaged exact solution at `t_final` for parameter offset `eps`.
    pub fn oracle(&self, eps: f64) -> Result<CellField<f64>> {
        let cfg = &self.config;
        match cfg.problem {
            Problem::BurgersRamp => Ok(BurgersRampOracle::new(eps).cell_averages(cfg.t_final, &self.grid)),
            Problem::EulerShock => {
                let mut setup = cfg.shock_setup()?;
                match cfg.seed {
                    ShockParam::ShockSpeed => setup.shock_speed += eps,
                    ShockParam::Mach => setup.mach += eps,
                    ShockParam::None => return Err(Error::config("sweep needs a seeded parameter")),
                }
                setup.validate()?;
                EulerShockOracle::new(setup).density(cfg.t_final, &self.grid)
            }
        }
    }

    pub fn meta(&self) -> SweepMeta {
        SweepMeta {
            case: self.config.problem.to_string(),
            dx: self.grid.dx(),
            delta: self.delta,
            xi: self.shock.xi(),
            eps_dagger: self.delta / self.shock.xi(),
            delta_u: self.delta_u,
        }
    }

    /// Errors at one `eps`, each divided by `eps`; `base` compares against the
    /// unperturbed solution.
    pub fn row(&self, x: f64, eps: f64, base_oracle: &CellField<f64>) -> Result<SweepRow> {
        let target = self.oracle(eps)?;
        let shifted = tangential_shift(&self.u_shock, &self.udot_shock, &self.shock, self.delta_u, eps, self.delta)?;
        Ok(SweepRow {
            x,
            err_no_ad: l1_error(&self.u_none, &target)? / eps,
            err_blackbox: l1_error(&linear_shift(&self.u_blackbox, &self.udot_blackbox, eps)?, &target)? / eps,
            err_shock: l1_error(&shifted, &target)? / eps,
            err_base: l1_error(&self.u_none, base_oracle)? / eps,
        })
    }
}

/// Errors over the configured epsilon values; one simulation per mode.
pub fn epsilon_sweep(cfg: &CaseConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let fields = ModeFields::compute(cfg)?;
    let base = fields.oracle(0.0)?;
    let rows = cfg.eps().into_iter().map(|e| fields.row(e, e, &base)).collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { kind: SweepKind::Epsilon, rows, meta: vec![fields.meta()] })
}

/// Errors at a fixed `eps` over a list of cases (typically successive grids).
/// Rows follow the order of `cases`.
pub fn grid_convergence(cases: &[CaseConfig], eps: f64) -> Result<SweepReport> {
    let results = cases
        .par_iter()
        .map(|c| {
            c.validate()?;
            let f = ModeFields::compute(c)?;
            let base = f.oracle(0.0)?;
            Ok((f.row(f.grid.dx(), eps, &base)?, f.meta()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (rows, meta) = results.into_iter().unzip();
    Ok(SweepReport { kind: SweepKind::Grid, rows, meta })
}

/// Burgers cases on the given rows of the grid table, sharing every other
/// setting with `template`.
pub fn burgers_grid_cases(template: &CaseConfig, grid_nos: &[usize]) -> Result<Vec<CaseConfig>> {
    grid_nos
        .iter()
        .map(|&k| {
            let row = CaseConfig::burgers(k)?;
            Ok(CaseConfig { grid_no: row.grid_no, dx: row.dx, dt: row.dt, ..template.clone() })
        })
        .collect()
}

/// `template` with `dx` halved `levels` times from `dx0` (dynamic steps).
pub fn halving_cases(template: &CaseConfig, dx0: f64, levels: usize) -> Vec<CaseConfig> {
    (0..levels)
        .map(|k| CaseConfig { grid_no: None, dx: dx0 / f64::from(1u32 << k), dt: None, ..template.clone() })
        .collect()
}
