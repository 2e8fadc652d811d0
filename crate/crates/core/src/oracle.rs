//! Closed-form references.
//!
//! The Burgers ramp family is `U^eps(t, x) = a (x - s) / (1 + a t)` on
//! `[s, s + sqrt(1 + a t))` and zero elsewhere, with `a = 1 + eps` and a
//! shift `s`. Its tangent at `eps = 0` is `v = (x - s) / (1 + t)^2` on the
//! ramp and `xi = t / (2 sqrt(1 + t))` at the shock.

use crate::error::Result;
use crate::flux::{MovingShockSetup, ShockParam};
use crate::mesh::{cell_average_exact, CellField, Grid1D, Piecewise};

/// Default shift of the ramp.
pub const RAMP_SHIFT: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurgersRampOracle {
    pub shift: f64,
    pub epsilon: f64,
}

impl BurgersRampOracle {
    pub fn new(epsilon: f64) -> Self {
        BurgersRampOracle { shift: RAMP_SHIFT, epsilon }
    }

    fn amp(&self) -> f64 {
        1.0 + self.epsilon
    }

    pub fn shock_position(&self, t: f64) -> f64 {
        self.shift + (1.0 + self.amp() * t).sqrt()
    }

    pub fn shock_speed(&self, t: f64) -> f64 {
        0.5 * self.amp() / (1.0 + self.amp() * t).sqrt()
    }

    /// `U(x_s-)`.
    pub fn left_limit(&self, t: f64) -> f64 {
        self.amp() / (1.0 + self.amp() * t).sqrt()
    }

    pub fn solution(&self, t: f64, x: f64) -> f64 {
        let a = self.amp();
        if x >= self.shift && x < self.shock_position(t) {
            a * (x - self.shift) / (1.0 + a * t)
        } else {
            0.0
        }
    }

    /// The solution at `t` as a piecewise polynomial, for exact cell averages.
    pub fn piecewise(&self, t: f64) -> Piecewise {
        let k = self.amp() / (1.0 + self.amp() * t);
        Piecewise::new().with_piece(self.shift, self.shock_position(t), &[-k * self.shift, k])
    }

    pub fn cell_averages(&self, t: f64, grid: &Grid1D) -> CellField<f64> {
        cell_average_exact(&self.piecewise(t), grid)
    }
}

pub fn oracle_solution(t: f64, x: f64, eps: f64) -> f64 {
    BurgersRampOracle::new(eps).solution(t, x)
}

/// `t / (2 sqrt(1 + t))`.
pub fn xi_closed_form(t: f64) -> f64 {
    t / (2.0 * (1.0 + t).sqrt())
}

/// Field tangent `v(t, .)` and shock tangent `xi(t)` of the ramp at `eps = 0`.
pub fn oracle_tangent(t: f64) -> (impl Fn(f64) -> f64, f64) {
    let base = BurgersRampOracle::new(0.0);
    let x_s = base.shock_position(t);
    let k = (1.0 + t).powi(-2);
    let v = move |x: f64| {
        if x >= RAMP_SHIFT && x < x_s {
            k * (x - RAMP_SHIFT)
        } else {
            0.0
        }
    };
    (v, xi_closed_form(t))
}

/// Piecewise form of the field tangent, for exact cell averages.
pub fn oracle_tangent_piecewise(t: f64) -> Piecewise {
    let k = (1.0 + t).powi(-2);
    let x_s = BurgersRampOracle::new(0.0).shock_position(t);
    Piecewise::new().with_piece(RAMP_SHIFT, x_s, &[-k * RAMP_SHIFT, k])
}

/// Right-hand side `(v(x_s-) + xi u_x(x_s-)) / 2` of the shock tangent ODE.
pub fn xi_rhs(t: f64, xi: f64) -> f64 {
    0.5 * ((1.0 + t).powf(-1.5) + xi / (1.0 + t))
}

/// `xi(t_final)` from RK4 on the shock tangent ODE with step `1e-4`,
/// independent of [`xi_closed_form`].
pub fn xi_ode_oracle(t_final: f64) -> f64 {
    const H: f64 = 1e-4;
    let n = (t_final / H).ceil() as usize;
    let mut xi = 0.0;
    let mut t = 0.0;
    for k in 0..n {
        let h = if k + 1 == n { t_final - t } else { H };
        let k1 = xi_rhs(t, xi);
        let k2 = xi_rhs(t + 0.5 * h, xi + 0.5 * h * k1);
        let k3 = xi_rhs(t + 0.5 * h, xi + 0.5 * h * k2);
        let k4 = xi_rhs(t + h, xi + h * k3);
        xi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = if k + 1 == n { t_final } else { (k + 1) as f64 * H };
    }
    xi
}

/// Exact single-shock Euler solution: left state for `x < x_s0 + S t`,
/// right state beyond.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerShockOracle {
    pub setup: MovingShockSetup,
}

impl EulerShockOracle {
    pub fn new(setup: MovingShockSetup) -> Self {
        EulerShockOracle { setup }
    }

    pub fn shock_position(&self, t: f64) -> f64 {
        self.setup.x_shock0 + self.setup.shock_speed * t
    }

    /// Cell-averaged primitives `[rho, u, p]` at time `t`.
    pub fn cell_averages(&self, t: f64, grid: &Grid1D) -> Result<CellField<[f64; 3]>> {
        let (l, r) = self.setup.states(ShockParam::None)?;
        let (l, r) = (l.components().map(|c| c.value), r.components().map(|c| c.value));
        let xs = self.shock_position(t);
        Ok(CellField::from_fn(*grid, |i| {
            let w = grid.right_fraction(i, xs);
            std::array::from_fn(|k| l[k] * (1.0 - w) + r[k] * w)
        }))
    }

    /// Cell-averaged density at time `t`.
    pub fn density(&self, t: f64, grid: &Grid1D) -> Result<CellField<f64>> {
        Ok(self.cell_averages(t, grid)?.map(|q| q[0]))
    }
}
