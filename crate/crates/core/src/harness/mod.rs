//! Experiment drivers: case configuration, tracked runs, epsilon and grid
//! sweeps, and CSV output.

pub mod case;
pub mod csv;
pub mod run;
pub mod sweep;
pub mod validate;

pub use case::{geometric, parse_config_text, CaseConfig, Problem, TABLE1};
pub use csv::{emit_csv, emit_snapshot_csv, emit_track_csv, write_csv, write_snapshot_csv, SnapshotColumns};
pub use run::{fitted_speed, run_burgers, run_case, run_euler, CaseOutput, CaseRun, BURGERS_RECORD_TIMES};
pub use sweep::{
    burgers_grid_cases, epsilon_sweep, grid_convergence, halving_cases, ModeFields, SweepKind, SweepMeta,
    SweepReport, SweepRow,
};
pub use validate::{validate_oracles, OracleCheck};
