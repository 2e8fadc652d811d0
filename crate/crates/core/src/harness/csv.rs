use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::flux::EulerState;
use crate::mesh::CellField;
use crate::tracker::TrackPoint;

use super::sweep::{SweepKind, SweepReport};

pub const SWEEP_HEADER: [&str; 5] = ["epsilon", "err_no_ad", "err_blackbox", "err_shock", "err_base"];
pub const GRID_HEADER: [&str; 5] = ["dx", "err_no_ad", "err_blackbox", "err_shock", "err_base"];
pub const TRACK_HEADER: [&str; 3] = ["t", "x", "xi"];

/// Cell data that can be written as snapshot columns after `x`.
pub trait SnapshotColumns {
    const HEADER: &'static [&'static str];
    fn columns(&self) -> Vec<f64>;
}

impl SnapshotColumns for Dual {
    const HEADER: &'static [&'static str] = &["x", "u", "v"];
    fn columns(&self) -> Vec<f64> {
        vec![self.value, self.tangent]
    }
}

impl SnapshotColumns for EulerState {
    const HEADER: &'static [&'static str] = &["x", "rho", "u", "p", "v_rho", "v_u", "v_p"];
    fn columns(&self) -> Vec<f64> {
        let c = self.components();
        vec![c[0].value, c[1].value, c[2].value, c[0].tangent, c[1].tangent, c[2].tangent]
    }
}

fn io_err(path: &Path) -> impl Fn(io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |e| {
        let source = match e.into_kind() {
            csv::ErrorKind::Io(e) => e,
            other => io::Error::other(format!("{other:?}")),
        };
        Error::Io { path: path.to_path_buf(), source }
    }
}

/// Shortest round-trip decimal form.
fn num(x: f64) -> String {
    format!("{x}")
}

fn write_rows<W: Write>(
    w: W,
    header: &[&str],
    rows: impl Iterator<Item = Vec<f64>>,
    path: &Path,
) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(header).map_err(csv_err(path))?;
    for r in rows {
        wr.write_record(r.into_iter().map(num)).map_err(csv_err(path))?;
    }
    wr.flush().map_err(io_err(path))
}

fn sweep_header(kind: SweepKind) -> &'static [&'static str] {
    match kind {
        SweepKind::Epsilon => &SWEEP_HEADER,
        SweepKind::Grid => &GRID_HEADER,
    }
}

/// Writes a sweep report; an empty report yields the header only.
pub fn write_csv<W: Write>(report: &SweepReport, w: W) -> Result<()> {
    let rows = report.rows.iter().map(|r| vec![r.x, r.err_no_ad, r.err_blackbox, r.err_shock, r.err_base]);
    write_rows(w, sweep_header(report.kind), rows, Path::new("<writer>"))
}

pub fn emit_csv(report: &SweepReport, path: &Path) -> Result<()> {
    let f = File::create(path).map_err(io_err(path))?;
    let rows = report.rows.iter().map(|r| vec![r.x, r.err_no_ad, r.err_blackbox, r.err_shock, r.err_base]);
    write_rows(f, sweep_header(report.kind), rows, path)
}

pub fn write_snapshot_csv<S: SnapshotColumns, W: Write>(field: &CellField<S>, w: W) -> Result<()> {
    let g = field.grid();
    let rows = field.data().iter().enumerate().map(|(i, s)| {
        let mut r = vec![g.center(i)];
        r.extend(s.columns());
        r
    });
    write_rows(w, S::HEADER, rows, Path::new("<writer>"))
}

pub fn emit_snapshot_csv<S: SnapshotColumns>(field: &CellField<S>, path: &Path) -> Result<()> {
    let f = File::create(path).map_err(io_err(path))?;
    let g = field.grid();
    let rows = field.data().iter().enumerate().map(|(i, s)| {
        let mut r = vec![g.center(i)];
        r.extend(s.columns());
        r
    });
    write_rows(f, S::HEADER, rows, path)
}

pub fn emit_track_csv(history: &[TrackPoint], path: &Path) -> Result<()> {
    let f = File::create(path).map_err(io_err(path))?;
    write_rows(f, &TRACK_HEADER, history.iter().map(|p| vec![p.t, p.x, p.xi]), path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::sweep::SweepRow;
    use crate::mesh::Grid1D;

    fn to_string(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_report_is_header_only() {
        let s = to_string(|b| write_csv(&SweepReport::empty(SweepKind::Epsilon), b));
        assert_eq!(s, "epsilon,err_no_ad,err_blackbox,err_shock,err_base\n");
        let s = to_string(|b| write_csv(&SweepReport::empty(SweepKind::Grid), b));
        assert!(s.starts_with("dx,"));
    }

    #[test]
    fn floats_round_trip() {
        let mut r = SweepReport::empty(SweepKind::Epsilon);
        let x = 0.1 + 0.2;
        r.rows.push(SweepRow { x, err_no_ad: 1e-300, err_blackbox: 2.5, err_shock: 1.0 / 3.0, err_base: 7.0 });
        let s = to_string(|b| write_csv(&r, b));
        let line = s.lines().nth(1).unwrap();
        let vals: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(vals, vec![x, 1e-300, 2.5, 1.0 / 3.0, 7.0]);
        assert!(line.starts_with("0.30000000000000004,"));
    }

    #[test]
    fn snapshot_headers() {
        let g = Grid1D::new(0.0, 0.5, 3).unwrap();
        let f = CellField::from_fn(g, |i| Dual::seed(i as f64, 1.0));
        let s = to_string(|b| write_snapshot_csv(&f, b));
        assert_eq!(s.lines().next().unwrap(), "x,u,v");
        assert_eq!(s.lines().nth(2).unwrap(), "0.75,1,1");
        let e = CellField::from_fn(g, |_| EulerState::lifted(1.0, 0.0, 0.5));
        let s = to_string(|b| write_snapshot_csv(&e, b));
        assert_eq!(s.lines().next().unwrap(), "x,rho,u,p,v_rho,v_u,v_p");
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let r = SweepReport::empty(SweepKind::Epsilon);
        let e = emit_csv(&r, Path::new("/nonexistent-dir/x.csv")).unwrap_err();
        assert!(matches!(e, Error::Io { .. }));
    }
}
