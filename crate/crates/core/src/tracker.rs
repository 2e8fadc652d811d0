//! Shock tracking.
//!
//! The position value follows the characteristic ODE
//! `x[n+1] = x[n] + dt lambda(U(x[n]))` on the piecewise-constant field.
//! The position tangent never comes from differentiating that ODE. In shock
//! mode it accumulates `dt` times the tangent of a Rankine-Hugoniot speed
//! probed at `x +- delta` with one-sided linear reconstructions; in
//! black-box mode it accumulates the tangent of the naive speed built from
//! the cells adjacent to the shock.

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::flux::{EulerState, Gas, ScalarModel};
use crate::mesh::{eval_constant, eval_linear_by, CellField, Side, GHOST_CELLS};
use crate::solver::Observer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrackMode {
    /// Position tangent frozen at its initial value.
    None,
    /// Tangent of the naive Rankine-Hugoniot speed on piecewise-constant data.
    BlackBox,
    /// Tangent of the probed Rankine-Hugoniot speed.
    #[default]
    Shock,
}

impl TrackMode {
    pub const ALL: [TrackMode; 3] = [TrackMode::None, TrackMode::BlackBox, TrackMode::Shock];
}

impl std::str::FromStr for TrackMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(TrackMode::None),
            "blackbox" | "black-box" => Ok(TrackMode::BlackBox),
            "shock" => Ok(TrackMode::Shock),
            other => Err(Error::config(format!("unknown mode '{other}' (expected none, blackbox or shock)"))),
        }
    }
}

impl std::fmt::Display for TrackMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TrackMode::None => "none",
            TrackMode::BlackBox => "blackbox",
            TrackMode::Shock => "shock",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackerConfig {
    pub c_coeff: f64,
    pub alpha: f64,
    pub mode: TrackMode,
}

impl TrackerConfig {
    pub fn new(c_coeff: f64, alpha: f64, mode: TrackMode) -> Self {
        TrackerConfig { c_coeff, alpha, mode }
    }

    /// Probe half-width `delta = C dx^alpha`.
    pub fn delta(&self, dx: f64) -> f64 {
        self.c_coeff * dx.powf(self.alpha)
    }

    /// Checks `C > 0`, `alpha >= 1` and that the probes clear one cell.
    pub fn validate(&self, dx: f64) -> Result<f64> {
        if !(self.c_coeff > 0.0) {
            return Err(Error::config(format!("c_coeff must be positive, got {}", self.c_coeff)));
        }
        if !(self.alpha >= 1.0) {
            return Err(Error::config(format!("alpha must be at least 1, got {}", self.alpha)));
        }
        let delta = self.delta(dx);
        if !(delta > dx) {
            return Err(Error::config(format!("probe half-width {delta} does not exceed the cell width {dx}")));
        }
        Ok(delta)
    }
}

/// A tracked shock: position value and tangent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockState {
    pub position: Dual,
    pub index: usize,
}

impl ShockState {
    pub fn new(x: f64, xi: f64) -> Self {
        ShockState { position: Dual::seed(x, xi), index: 1 }
    }

    pub fn x(&self) -> f64 {
        self.position.value
    }

    pub fn xi(&self) -> f64 {
        self.position.tangent
    }
}

/// Speeds a tracker needs from a conservation law.
pub trait TrackedSystem: Sync {
    type State: Copy;

    /// Characteristic speed that carries the shock position.
    fn tracking_speed(&self, field: &CellField<Self::State>, x: f64) -> Result<f64>;

    /// Rankine-Hugoniot speed from linear probes at `x +- delta`.
    fn probe_speed(&self, field: &CellField<Self::State>, x: Dual, delta: f64) -> Result<Dual>;

    /// Rankine-Hugoniot speed from the cells on either side of the one
    /// containing `x`.
    fn naive_speed(&self, field: &CellField<Self::State>, x: f64) -> Result<Dual>;
}

/// `1e-3 max(|plus|, |minus|, 1)`.
pub fn denom_floor(plus: f64, minus: f64) -> f64 {
    1e-3 * plus.abs().max(minus.abs()).max(1.0)
}

fn check_jump(plus: Dual, minus: Dual) -> Result<()> {
    if (plus.value - minus.value).abs() > denom_floor(plus.value, minus.value) {
        Ok(())
    } else {
        Err(Error::ProbeDegenerate { plus: plus.value, minus: minus.value })
    }
}

fn lost(x: f64) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::OutOfDomain { .. } | Error::Index { .. } => Error::TrackingLost { position: x },
        other => other,
    }
}

/// One-sided linear probes `(v(x + delta), v(x - delta))` of a component.
pub fn probe_pair<T>(field: &CellField<T>, x: Dual, delta: f64, get: impl Fn(&T) -> Dual) -> Result<(Dual, Dual)> {
    let plus = eval_linear_by(field, x + delta, Side::Plus, &get).map_err(lost(x.value))?;
    let minus = eval_linear_by(field, x - delta, Side::Minus, &get).map_err(lost(x.value))?;
    Ok((plus, minus))
}

fn neighbours<T: Copy>(field: &CellField<T>, x: f64) -> Result<(T, T)> {
    let i = field.grid().cell_index(x).map_err(lost(x))?;
    if i == 0 || i + 1 >= field.len() {
        return Err(Error::TrackingLost { position: x });
    }
    Ok((field.data()[i + 1], field.data()[i - 1]))
}

impl<M: ScalarModel> TrackedSystem for M {
    type State = Dual;

    fn tracking_speed(&self, field: &CellField<Dual>, x: f64) -> Result<f64> {
        Ok(self.char_speed(eval_constant(field, x).map_err(lost(x))?).value)
    }

    fn probe_speed(&self, field: &CellField<Dual>, x: Dual, delta: f64) -> Result<Dual> {
        let (plus, minus) = probe_pair(field, x, delta, |&u| u)?;
        check_jump(plus, minus)?;
        Ok(self.rh_speed(plus, minus))
    }

    fn naive_speed(&self, field: &CellField<Dual>, x: f64) -> Result<Dual> {
        let (plus, minus) = neighbours(field, x)?;
        Ok(self.rh_speed(plus, minus))
    }
}

/// The Euler shock moves into the state on its left along `u - a`; its
/// speed is the shock-speed relation in `(u_l, a_l, p_l)` and `p_r`.
impl TrackedSystem for Gas {
    type State = EulerState;

    fn tracking_speed(&self, field: &CellField<EulerState>, x: f64) -> Result<f64> {
        Ok(self.char_speed_sa(&eval_constant(field, x).map_err(lost(x))?).value)
    }

    fn probe_speed(&self, field: &CellField<EulerState>, x: Dual, delta: f64) -> Result<Dual> {
        let (p_r, p_l) = probe_pair(field, x, delta, |q| q.p)?;
        check_jump(p_r, p_l)?;
        let minus = x - delta;
        let rho_l = eval_linear_by(field, minus, Side::Minus, |q| q.rho).map_err(lost(x.value))?;
        let u_l = eval_linear_by(field, minus, Side::Minus, |q| q.u).map_err(lost(x.value))?;
        let left = EulerState::new(rho_l, u_l, p_l);
        self.check(&left)?;
        self.shock_speed_from_states(u_l, self.sound_speed(&left), p_l, p_r)
    }

    fn naive_speed(&self, field: &CellField<EulerState>, x: f64) -> Result<Dual> {
        let (right, left) = neighbours(field, x)?;
        self.shock_speed_from_states(left.u, self.sound_speed(&left), left.p, right.p)
    }
}

/// New position value `x + dt lambda(U(x))`; fails when it comes within
/// two cells of a boundary.
pub fn advance_position<Y: TrackedSystem>(
    s: &ShockState,
    field: &CellField<Y::State>,
    dt: f64,
    system: &Y,
) -> Result<f64> {
    let x = s.x() + dt * system.tracking_speed(field, s.x())?;
    let g = field.grid();
    let margin = GHOST_CELLS as f64 * g.dx();
    if !(x >= g.x_left() + margin && x <= g.x_right() - margin) {
        return Err(Error::TrackingLost { position: x });
    }
    Ok(x)
}

/// Probed Rankine-Hugoniot speed at the shock; its tangent carries the
/// position tangent through the probe locations.
pub fn rh_probe_speed<Y: TrackedSystem>(
    s: &ShockState,
    field: &CellField<Y::State>,
    delta: f64,
    system: &Y,
) -> Result<Dual> {
    system.probe_speed(field, s.position, delta)
}

/// One tracker step. The position value is identical in every mode.
pub fn step_shock<Y: TrackedSystem>(
    s: &ShockState,
    field: &CellField<Y::State>,
    dt: f64,
    cfg: &TrackerConfig,
    delta: f64,
    system: &Y,
) -> Result<ShockState> {
    let x = advance_position(s, field, dt, system)?;
    let xi = match cfg.mode {
        TrackMode::None => s.xi(),
        TrackMode::Shock => s.xi() + dt * rh_probe_speed(s, field, delta, system)?.tangent,
        TrackMode::BlackBox => s.xi() + dt * system.naive_speed(field, s.x())?.tangent,
    };
    Ok(ShockState { position: Dual::with_custom_tangent(x, xi), index: s.index })
}

/// One recorded tracker state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackPoint {
    pub t: f64,
    pub x: f64,
    pub xi: f64,
}

/// Observer that advances one shock alongside the solver.
#[derive(Debug, Clone)]
pub struct ShockTracker<Y> {
    system: Y,
    config: TrackerConfig,
    delta: f64,
    state: ShockState,
    history: Vec<TrackPoint>,
}

impl<Y: TrackedSystem> ShockTracker<Y> {
    pub fn new(system: Y, config: TrackerConfig, dx: f64, initial: ShockState) -> Result<Self> {
        let delta = config.validate(dx)?;
        let history = vec![TrackPoint { t: 0.0, x: initial.x(), xi: initial.xi() }];
        Ok(ShockTracker { system, config, delta, state: initial, history })
    }

    pub fn state(&self) -> ShockState {
        self.state
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn config(&self) -> &TrackerConfig {
        &self.config
    }

    pub fn history(&self) -> &[TrackPoint] {
        &self.history
    }

    pub fn into_history(self) -> Vec<TrackPoint> {
        self.history
    }
}

impl<Y: TrackedSystem> Observer<Y::State> for ShockTracker<Y> {
    fn observe(&mut self, t: f64, dt: f64, field: &CellField<Y::State>) -> Result<()> {
        self.state = step_shock(&self.state, field, dt, &self.config, self.delta, &self.system)?;
        self.history.push(TrackPoint { t: t + dt, x: self.state.x(), xi: self.state.xi() });
        Ok(())
    }
}
