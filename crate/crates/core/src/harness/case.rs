use crate::error::{Error, Result};
use crate::flux::{MovingShockSetup, ShockParam};
use crate::mesh::Grid1D;
use crate::solver::{DtMode, ScalarScheme};
use crate::tracker::{TrackMode, TrackerConfig};

/// `(dx, dt)` of the nine Burgers ramp grids, finest first.
pub const TABLE1: [(f64, f64); 9] = [
    (5.75e-5, 3.64e-5),
    (1.15e-4, 7.27e-5),
    (2.3e-4, 1.45e-4),
    (4.6e-4, 2.9e-4),
    (9.2e-4, 5.88e-4),
    (1.84e-3, 1.18e-3),
    (3.68e-3, 2.35e-3),
    (7.36e-3, 4.7e-3),
    (1.472e-2, 9.52e-3),
];

/// Number of points in a default epsilon sweep.
pub const EPS_COUNT: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    BurgersRamp,
    EulerShock,
}

impl std::str::FromStr for Problem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "burgers" | "burgers_ramp" => Ok(Problem::BurgersRamp),
            "euler" | "euler_shock" => Ok(Problem::EulerShock),
            other => Err(Error::config(format!("unknown problem '{other}'"))),
        }
    }
}

impl std::fmt::Display for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Problem::BurgersRamp => "burgers_ramp",
            Problem::EulerShock => "euler_shock",
        })
    }
}

/// Everything needed to run one case.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseConfig {
    pub problem: Problem,
    /// Row of [`TABLE1`] (1-based) this config came from, if any.
    pub grid_no: Option<usize>,
    pub dx: f64,
    pub x_left: f64,
    pub domain_length: f64,
    /// Fixed step; `None` selects the dynamic CFL step with `cfl`.
    pub dt: Option<f64>,
    pub cfl: f64,
    pub t_final: f64,
    pub c_coeff: f64,
    pub alpha: f64,
    pub mode: TrackMode,
    pub scheme: ScalarScheme,
    pub eps_min: f64,
    pub eps_max: f64,
    pub eps_count: usize,
    /// Explicit epsilon values; overrides the geometric range.
    pub eps_list: Option<Vec<f64>>,
    pub mach: f64,
    pub shock_speed: f64,
    pub x_shock0: f64,
    pub seed: ShockParam,
}

impl CaseConfig {
    /// Burgers ramp on row `grid_no` of [`TABLE1`].
    pub fn burgers(grid_no: usize) -> Result<Self> {
        let &(dx, dt) = grid_no
            .checked_sub(1)
            .and_then(|k| TABLE1.get(k))
            .ok_or_else(|| Error::config(format!("grid_no must be in 1..=9, got {grid_no}")))?;
        Ok(CaseConfig {
            problem: Problem::BurgersRamp,
            grid_no: Some(grid_no),
            dx,
            x_left: 0.0,
            domain_length: 1.9,
            dt: Some(dt),
            cfl: 0.63,
            t_final: 2.0,
            c_coeff: 5.0,
            alpha: 1.0,
            mode: TrackMode::Shock,
            scheme: ScalarScheme::Godunov,
            eps_min: 1e-4,
            eps_max: 0.2,
            eps_count: EPS_COUNT,
            eps_list: None,
            mach: 0.0,
            shock_speed: 0.0,
            x_shock0: 1.05,
            seed: ShockParam::None,
        })
    }

    /// Desk-scale moving shock: `[0, 30]`, `t = 100`.
    pub fn euler_desk() -> Self {
        CaseConfig {
            problem: Problem::EulerShock,
            grid_no: None,
            dx: 0.01,
            x_left: 0.0,
            domain_length: 30.0,
            dt: None,
            cfl: 0.82,
            t_final: 100.0,
            c_coeff: 20.0,
            alpha: 1.0,
            mode: TrackMode::Shock,
            scheme: ScalarScheme::Rusanov,
            eps_min: 1e-5,
            eps_max: 0.1,
            eps_count: EPS_COUNT,
            eps_list: None,
            mach: 5.3452,
            shock_speed: 0.1,
            x_shock0: 5.0,
            seed: ShockParam::ShockSpeed,
        }
    }

    /// Full-size moving shock: `[0, 210]`, `t = 1000`.
    pub fn euler_full() -> Self {
        CaseConfig { domain_length: 210.0, t_final: 1000.0, ..Self::euler_desk() }
    }

    pub fn default_for(problem: Problem) -> Self {
        match problem {
            Problem::BurgersRamp => Self::burgers(5).expect("row 5 exists"),
            Problem::EulerShock => Self::euler_desk(),
        }
    }

    pub fn with_mode(&self, mode: TrackMode) -> Self {
        CaseConfig { mode, ..self.clone() }
    }

    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::covering(self.x_left, self.dx, self.domain_length)
    }

    pub fn dt_mode(&self) -> DtMode {
        self.dt.map_or(DtMode::Cfl(self.cfl), DtMode::Fixed)
    }

    pub fn tracker(&self) -> TrackerConfig {
        TrackerConfig::new(self.c_coeff, self.alpha, self.mode)
    }

    pub fn shock_setup(&self) -> Result<MovingShockSetup> {
        MovingShockSetup::new(self.mach, self.shock_speed, self.x_shock0)
    }

    /// Sweep values, ascending.
    pub fn eps(&self) -> Vec<f64> {
        match &self.eps_list {
            Some(list) => list.clone(),
            None => geometric(self.eps_min, self.eps_max, self.eps_count),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("dx", self.dx),
            ("domain_length", self.domain_length),
            ("t_final", self.t_final),
            ("cfl", self.cfl),
            ("c_coeff", self.c_coeff),
            ("alpha", self.alpha),
            ("eps_min", self.eps_min),
            ("eps_max", self.eps_max),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(format!("{name} must be positive, got {v}")));
            }
        }
        if let Some(dt) = self.dt {
            if !(dt > 0.0) {
                return Err(Error::config(format!("dt must be positive, got {dt}")));
            }
        }
        if self.cfl > 1.0 {
            return Err(Error::config(format!("cfl must not exceed 1, got {}", self.cfl)));
        }
        let eps = self.eps();
        if eps.is_empty() || eps.iter().any(|&e| !(e > 0.0)) {
            return Err(Error::config("epsilon values must be positive"));
        }
        if eps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("epsilon values must be sorted ascending"));
        }
        self.tracker().validate(self.dx)?;
        let g = self.grid()?;
        if !(self.x_shock0 > g.x_left() && self.x_shock0 < g.x_right()) {
            return Err(Error::config(format!("shock position {} outside the domain", self.x_shock0)));
        }
        if self.problem == Problem::EulerShock {
            self.shock_setup()?;
            if self.seed == ShockParam::None {
                return Err(Error::config("euler case needs seed = shock_speed or mach"));
            }
        }
        Ok(())
    }

    /// Applies `key=value` pairs in order. `problem` and `grid_no` are
    /// applied first wherever they appear; an explicit `dx` without `dt`
    /// switches to the dynamic CFL step.
    pub fn from_pairs(problem: Option<Problem>, pairs: &[(String, String)]) -> Result<Self> {
        let last = |key: &str| pairs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let problem = match last("problem") {
            Some(p) => p.parse()?,
            None => problem.unwrap_or(Problem::BurgersRamp),
        };
        let mut cfg = match (problem, last("grid_no")) {
            (Problem::BurgersRamp, Some(g)) => Self::burgers(parse_num(g, "grid_no")?)?,
            (Problem::EulerShock, Some(_)) => return Err(Error::config("grid_no applies to the burgers case only")),
            (p, None) => Self::default_for(p),
        };
        for (k, v) in pairs {
            if k != "problem" && k != "grid_no" {
                cfg.set(k, v)?;
            }
        }
        let has = |key: &str| pairs.iter().any(|(k, _)| k == key);
        if has("dx") && !has("dt") && !has("dt_mode") {
            cfg.dt = None;
        }
        if has("dx") {
            cfg.grid_no = None;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sets one field from its key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "dx" => self.dx = parse_num(value, key)?,
            "dt" => self.dt = Some(parse_num(value, key)?),
            "dt_mode" => match value {
                "cfl" => self.dt = None,
                "fixed" if self.dt.is_some() => {}
                "fixed" => return Err(Error::config("dt_mode=fixed needs dt")),
                other => return Err(Error::config(format!("unknown dt_mode '{other}'"))),
            },
            "x_left" => self.x_left = parse_num(value, key)?,
            "domain_length" => self.domain_length = parse_num(value, key)?,
            "t_final" => self.t_final = parse_num(value, key)?,
            "cfl" => self.cfl = parse_num(value, key)?,
            "c_coeff" => self.c_coeff = parse_num(value, key)?,
            "alpha" => self.alpha = parse_num(value, key)?,
            "mode" => self.mode = value.parse()?,
            "scheme" => self.scheme = value.parse()?,
            "eps_min" => self.eps_min = parse_num(value, key)?,
            "eps_max" => self.eps_max = parse_num(value, key)?,
            "eps_count" => self.eps_count = parse_num(value, key)?,
            "eps_list" => {
                self.eps_list =
                    Some(value.split(',').map(|s| parse_num(s.trim(), key)).collect::<Result<Vec<f64>>>()?)
            }
            "mach" => self.mach = parse_num(value, key)?,
            "shock_speed" => self.shock_speed = parse_num(value, key)?,
            "x_shock0" => self.x_shock0 = parse_num(value, key)?,
            "seed" => {
                self.seed = match value {
                    "none" => ShockParam::None,
                    "shock_speed" | "S" => ShockParam::ShockSpeed,
                    "mach" | "M" => ShockParam::Mach,
                    other => return Err(Error::config(format!("unknown seed '{other}'"))),
                }
            }
            "long_domain" => {
                if parse_bool(value)? {
                    let full = Self::euler_full();
                    self.domain_length = full.domain_length;
                    self.t_final = full.t_final;
                }
            }
            other => return Err(Error::config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }
}

fn parse_num<T: std::str::FromStr>(value: &str, key: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::config(format!("bad value '{value}' for {key}")))
}

fn parse_bool(value: &str) -> Result<bool> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(Error::config(format!("bad boolean '{other}'"))),
    }
}

/// `n` geometrically spaced points from `lo` to `hi` inclusive.
pub fn geometric(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let r = (hi / lo).ln() / (n - 1) as f64;
            (0..n).map(|k| if k + 1 == n { hi } else { lo * (r * k as f64).exp() }).collect()
        }
    }
}

/// Parses flat `key = value` text; blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::config(format!("line {}: expected key=value, got '{raw}'", n + 1)))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(Error::config(format!("line {}: empty key", n + 1)));
        }
        pairs.push((k.to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}
