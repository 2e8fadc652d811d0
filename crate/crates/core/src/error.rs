use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("point {x} outside grid [{lo}, {hi})")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("cell index {index} not valid here (grid has {n_cells} cells)")]
    Index { index: usize, n_cells: usize },

    #[error("CFL violated: courant number {courant} > 1")]
    Cfl { courant: f64 },

    #[error("non-physical state in cell {cell}: rho = {rho}, p = {p}")]
    State { cell: usize, rho: f64, p: f64 },

    #[error("no compressive shock: relative Mach number {relative_mach} <= 1")]
    NoShock { relative_mach: f64 },

    #[error("shock tracking lost at x = {position}")]
    TrackingLost { position: f64 },

    #[error("degenerate Rankine-Hugoniot probe: v+ = {plus}, v- = {minus}")]
    ProbeDegenerate { plus: f64, minus: f64 },

    #[error("grid mismatch between fields")]
    GridMismatch,

    #[error("displaced shock [{lo}, {hi}] leaves the domain")]
    Range { lo: f64, hi: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// True for failures of the numerics (CFL, states, tracking, probes).
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Config(_) | Error::Io { .. })
    }
}
