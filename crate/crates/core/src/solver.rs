//! Explicit first-order finite-volume time stepping.
//!
//! Every scheme is written in conservative form
//! `U[i] -= dt/dx (F[i+1/2] - F[i-1/2])` over `Dual` data, so one run
//! advances the solution and its tangent together: the tangent update is the
//! exact linearization of the discrete scheme.

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::flux::{Conserved, EulerState, Gas, ScalarModel};
use crate::mesh::{CellField, GHOST_CELLS};

/// Relative slack on the CFL bound for fixed time steps.
const CFL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DtMode {
    Fixed(f64),
    /// Dynamic `dt = cfl dx / max wave speed`.
    Cfl(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeConfig {
    pub dt_mode: DtMode,
    pub t_final: f64,
    /// Cap on dynamic steps, used when the field has no wave speed.
    pub dt_max: f64,
    pub record_times: Vec<f64>,
}

impl SchemeConfig {
    pub fn fixed(dt: f64, t_final: f64) -> Self {
        SchemeConfig { dt_mode: DtMode::Fixed(dt), t_final, dt_max: f64::INFINITY, record_times: Vec::new() }
    }

    pub fn cfl(cfl: f64, t_final: f64) -> Self {
        SchemeConfig { dt_mode: DtMode::Cfl(cfl), t_final, dt_max: f64::INFINITY, record_times: Vec::new() }
    }

    pub fn with_record_times(mut self, times: impl IntoIterator<Item = f64>) -> Self {
        self.record_times = times.into_iter().collect();
        self
    }

    pub fn with_dt_max(mut self, dt_max: f64) -> Self {
        self.dt_max = dt_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::config(format!("t_final must be positive, got {}", self.t_final)));
        }
        match self.dt_mode {
            DtMode::Fixed(dt) if !(dt > 0.0) => Err(Error::config(format!("dt must be positive, got {dt}"))),
            DtMode::Cfl(c) if !(c > 0.0 && c <= 1.0) => {
                Err(Error::config(format!("cfl number must be in (0, 1], got {c}")))
            }
            _ if !(self.dt_max > 0.0) => Err(Error::config("dt_max must be positive")),
            _ if self.record_times.iter().any(|t| !t.is_finite() || *t < 0.0) => {
                Err(Error::config("record times must be finite and non-negative"))
            }
            _ => Ok(()),
        }
    }
}

/// Result of one step: the new field and the numerical fluxes through the
/// two domain boundaries.
#[derive(Debug, Clone)]
pub struct StepOutcome<S, F> {
    pub field: CellField<S>,
    pub flux_left: F,
    pub flux_right: F,
}

pub trait Scheme: Sync {
    type State: Copy + Send + Sync;
    type Flux: Copy;

    /// `max_j |lambda(U_j)|`, the `C_n` of the CFL condition.
    fn max_wave_speed(&self, field: &CellField<Self::State>) -> f64;

    fn step(&self, field: &CellField<Self::State>, dt: f64) -> Result<StepOutcome<Self::State, Self::Flux>>;
}

/// Called once per accepted step with the pre-step time, step size and field.
pub trait Observer<S> {
    fn observe(&mut self, t: f64, dt: f64, field: &CellField<S>) -> Result<()>;
}

/// `dt = cfl dx / C_n`, or `dt_max` when `C_n = 0`.
pub fn cfl_dt(max_speed: f64, dx: f64, cfl: f64, dt_max: f64) -> f64 {
    if max_speed > 0.0 {
        (cfl * dx / max_speed).min(dt_max)
    } else {
        dt_max
    }
}

fn check_cfl(max_speed: f64, dt: f64, dx: f64) -> Result<()> {
    let courant = max_speed * dt / dx;
    if courant > 1.0 + CFL_SLACK {
        Err(Error::Cfl { courant })
    } else {
        Ok(())
    }
}

/// Scalar numerical fluxes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScalarScheme {
    /// `F = (f(L) + f(R))/2 - dx/(2 dt) (R - L)`.
    LaxFriedrichs,
    /// Exact Riemann flux for a convex flux function.
    #[default]
    Godunov,
    /// Local Lax-Friedrichs with `max(|f'(L)|, |f'(R)|)`.
    Rusanov,
}

impl std::str::FromStr for ScalarScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lxf" | "lax-friedrichs" | "laxfriedrichs" => Ok(ScalarScheme::LaxFriedrichs),
            "godunov" => Ok(ScalarScheme::Godunov),
            "rusanov" => Ok(ScalarScheme::Rusanov),
            other => Err(Error::config(format!("unknown scalar scheme '{other}'"))),
        }
    }
}

impl std::fmt::Display for ScalarScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScalarScheme::LaxFriedrichs => "lxf",
            ScalarScheme::Godunov => "godunov",
            ScalarScheme::Rusanov => "rusanov",
        })
    }
}

fn godunov_flux<M: ScalarModel>(model: &M, l: Dual, r: Dual) -> Dual {
    if l.value > r.value {
        model.flux(l).max_by_value(model.flux(r))
    } else {
        let s = model.sonic_point();
        if s <= l.value {
            model.flux(l)
        } else if s >= r.value {
            model.flux(r)
        } else {
            model.flux(Dual::lift(s))
        }
    }
}

/// Solver for a scalar conservation law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarSolver<M> {
    pub model: M,
    pub scheme: ScalarScheme,
}

impl<M: ScalarModel> ScalarSolver<M> {
    pub fn new(model: M, scheme: ScalarScheme) -> Self {
        ScalarSolver { model, scheme }
    }

    fn face_flux(&self, l: Dual, r: Dual, dt: f64, dx: f64) -> Dual {
        let m = &self.model;
        match self.scheme {
            ScalarScheme::LaxFriedrichs => (m.flux(l) + m.flux(r)) * 0.5 - (r - l) * (0.5 * dx / dt),
            ScalarScheme::Godunov => godunov_flux(m, l, r),
            ScalarScheme::Rusanov => {
                let lam = m.char_speed(l).abs().max_by_value(m.char_speed(r).abs());
                (m.flux(l) + m.flux(r)) * 0.5 - lam * (r - l) * 0.5
            }
        }
    }
}

impl<M: ScalarModel> Scheme for ScalarSolver<M> {
    type State = Dual;
    type Flux = Dual;

    fn max_wave_speed(&self, field: &CellField<Dual>) -> f64 {
        field.data().iter().map(|&u| self.model.char_speed(u).value.abs()).fold(0.0, f64::max)
    }

    fn step(&self, field: &CellField<Dual>, dt: f64) -> Result<StepOutcome<Dual, Dual>> {
        let dx = field.grid().dx();
        check_cfl(self.max_wave_speed(field), dt, dx)?;
        let ext = field.with_ghosts();
        let n = field.len();
        // faces[j] sits between cells j-1 and j
        let faces: Vec<Dual> = (0..=n)
            .map(|j| self.face_flux(ext[j + GHOST_CELLS - 1], ext[j + GHOST_CELLS], dt, dx))
            .collect();
        let r = dt / dx;
        let data = field.data().iter().enumerate().map(|(i, &u)| u - (faces[i + 1] - faces[i]) * r).collect();
        Ok(StepOutcome {
            field: CellField::new(*field.grid(), data)?,
            flux_left: faces[0],
            flux_right: faces[n],
        })
    }
}

/// One Lax-Friedrichs step
/// `U[i] = (U[i+1] + U[i-1])/2 - dt/(2 dx) (f(U[i+1]) - f(U[i-1]))`.
pub fn lxf_step<M: ScalarModel>(field: &CellField<Dual>, dt: f64, model: M) -> Result<CellField<Dual>> {
    Ok(ScalarSolver::new(model, ScalarScheme::LaxFriedrichs).step(field, dt)?.field)
}

pub fn godunov_step<M: ScalarModel>(field: &CellField<Dual>, dt: f64, model: M) -> Result<CellField<Dual>> {
    Ok(ScalarSolver::new(model, ScalarScheme::Godunov).step(field, dt)?.field)
}

/// Rusanov (local Lax-Friedrichs) solver for the Euler equations. Fields
/// hold primitives; the update runs on conservatives.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EulerSolver {
    pub gas: Gas,
}

impl EulerSolver {
    pub fn new(gas: Gas) -> Self {
        EulerSolver { gas }
    }
}

impl Scheme for EulerSolver {
    type State = EulerState;
    type Flux = Conserved;

    fn max_wave_speed(&self, field: &CellField<EulerState>) -> f64 {
        field.data().iter().map(|q| self.gas.max_wave_speed(q).value).fold(0.0, f64::max)
    }

    fn step(&self, field: &CellField<EulerState>, dt: f64) -> Result<StepOutcome<EulerState, Conserved>> {
        let gas = self.gas;
        let dx = field.grid().dx();
        for (cell, q) in field.data().iter().enumerate() {
            gas.check(q).map_err(|_| Error::State { cell, rho: q.rho.value, p: q.p.value })?;
        }
        check_cfl(self.max_wave_speed(field), dt, dx)?;

        let ext = field.with_ghosts();
        let cons: Vec<Conserved> = ext.iter().map(|q| gas.to_conserved(q)).collect();
        let flux: Vec<Conserved> = ext.iter().map(|q| gas.flux_unchecked(q)).collect();
        let speed: Vec<Dual> = ext.iter().map(|q| gas.max_wave_speed(q)).collect();

        let n = field.len();
        let faces: Vec<Conserved> = (0..=n)
            .map(|j| {
                let (l, r) = (j + GHOST_CELLS - 1, j + GHOST_CELLS);
                let lam = speed[l].max_by_value(speed[r]);
                (flux[l] + flux[r]) * 0.5 - (cons[r] - cons[l]) * (lam * 0.5)
            })
            .collect();

        let ratio = dt / dx;
        let data = (0..n)
            .map(|i| {
                let q = cons[i + GHOST_CELLS] - (faces[i + 1] - faces[i]) * ratio;
                gas.to_primitive(&q).map_err(|_| {
                    let rho = q.mass.value;
                    let p = (gas.gamma - 1.0) * (q.energy.value - 0.5 * q.momentum.value.powi(2) / rho);
                    Error::State { cell: i, rho, p }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StepOutcome {
            field: CellField::new(*field.grid(), data)?,
            flux_left: faces[0],
            flux_right: faces[n],
        })
    }
}

/// One Rusanov step for the Euler equations.
pub fn rusanov_step_euler(field: &CellField<EulerState>, dt: f64, gas: Gas) -> Result<CellField<EulerState>> {
    Ok(EulerSolver::new(gas).step(field, dt)?.field)
}

#[derive(Debug, Clone)]
pub struct Snapshot<S> {
    pub t: f64,
    pub field: CellField<S>,
}

#[derive(Debug, Clone)]
pub struct RunOutput<S> {
    /// One snapshot per record time in `(0, t_final]` (and at 0 if
    /// requested), in time order; the last one is always `t_final`.
    pub snapshots: Vec<Snapshot<S>>,
    pub steps: usize,
}

impl<S> RunOutput<S> {
    pub fn final_field(&self) -> &CellField<S> {
        &self.snapshots.last().expect("run always records t_final").field
    }
}

/// Advances `ic` to `config.t_final`. Steps are clipped so that every
/// record time is hit exactly; observers see the field before each step.
pub fn run<S: Scheme>(
    scheme: &S,
    ic: CellField<S::State>,
    config: &SchemeConfig,
    observers: &mut [&mut dyn Observer<S::State>],
) -> Result<RunOutput<S::State>> {
    config.validate()?;
    let t_final = config.t_final;
    let mut targets: Vec<f64> = config.record_times.iter().copied().filter(|&t| t > 0.0 && t < t_final).collect();
    targets.push(t_final);
    targets.sort_by(f64::total_cmp);
    targets.dedup();

    let mut snapshots = Vec::with_capacity(targets.len() + 1);
    if config.record_times.contains(&0.0) {
        snapshots.push(Snapshot { t: 0.0, field: ic.clone() });
    }

    let dx = ic.grid().dx();
    let mut field = ic;
    let mut t = 0.0;
    let mut steps = 0;
    for &target in &targets {
        loop {
            let nominal = match config.dt_mode {
                DtMode::Fixed(dt) => dt,
                DtMode::Cfl(c) => cfl_dt(scheme.max_wave_speed(&field), dx, c, config.dt_max),
            };
            let remaining = target - t;
            let hit = nominal >= remaining * (1.0 - 1e-9);
            let dt = if hit { remaining } else { nominal };
            for obs in observers.iter_mut() {
                obs.observe(t, dt, &field)?;
            }
            field = scheme.step(&field, dt)?.field;
            steps += 1;
            if hit {
                t = target;
                break;
            }
            t += dt;
        }
        snapshots.push(Snapshot { t, field: field.clone() });
    }
    Ok(RunOutput { snapshots, steps })
}
