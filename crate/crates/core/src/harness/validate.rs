use crate::dual::Dual;
use crate::flux::{Gas, MovingShockSetup, ShockParam};
use crate::oracle::{xi_closed_form, xi_ode_oracle, BurgersRampOracle};

/// One self-check of the analytic references.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub name: String,
    pub error: f64,
    pub tolerance: f64,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.error <= self.tolerance
    }
}

fn check(name: impl Into<String>, error: f64, tolerance: f64) -> OracleCheck {
    OracleCheck { name: name.into(), error, tolerance }
}

/// Closure checks of the oracles: Rankine-Hugoniot along the ramp shock,
/// the RK4 shock tangent against its closed form, and the moving-shock
/// round trip `S -> p_r -> S`.
pub fn validate_oracles() -> Vec<OracleCheck> {
    let mut out = Vec::new();
    let rh = [0.0, 1e-3, 0.2]
        .iter()
        .flat_map(|&e| [0.0, 0.5, 1.0, 2.0].map(move |t| (e, t)))
        .map(|(e, t)| {
            let o = BurgersRampOracle::new(e);
            (o.shock_speed(t) - 0.5 * o.left_limit(t)).abs()
        })
        .fold(0.0, f64::max);
    out.push(check("burgers rankine-hugoniot", rh, 1e-12));
    for t in [0.5, 1.0, 2.0] {
        out.push(check(format!("xi rk4 t={t}"), (xi_ode_oracle(t) - xi_closed_form(t)).abs(), 1e-8));
    }
    let gas = Gas::AIR;
    for m in [2.0, 5.3452, 8.0] {
        for s in [0.05, 0.1, 0.3] {
            let err = MovingShockSetup::new(m, s, 0.0)
                .and_then(|setup| setup.states(ShockParam::None))
                .and_then(|(l, r)| gas.shock_speed_from_states(l.u, gas.sound_speed(&l), l.p, r.p))
                .map_or(f64::INFINITY, |back: Dual| (back.value - s).abs() / s);
            out.push(check(format!("shock speed round trip M={m} S={s}"), err, 1e-12));
        }
    }
    out
}
