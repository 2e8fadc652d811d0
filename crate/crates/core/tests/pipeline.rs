use std::time::{Duration, Instant};

use shockad::flux::ShockParam;
use shockad::harness::{
    emit_csv, emit_snapshot_csv, epsilon_sweep, run_burgers, run_case, run_euler, write_csv, CaseConfig, CaseOutput,
    SweepKind,
};
use shockad::harness::run::burgers_initial;
use shockad::mesh::cell_average_exact;
use shockad::oracle::{oracle_tangent_piecewise, xi_closed_form, xi_rhs, BurgersRampOracle};
use shockad::solver::{run, ScalarSolver};
use shockad::tangent::{jump_estimate, jump_estimate_by, l1_error, tangential_shift};
use shockad::tracker::rh_probe_speed;
use shockad::{
    Burgers, CellField, Dual, Gas, Grid1D, MovingShockSetup, ScalarScheme, SchemeConfig, ShockState, ShockTracker,
    TrackMode, TrackerConfig,
};

fn analytic_field(t: f64, dx: f64) -> CellField<Dual> {
    let g = Grid1D::covering(0.0, dx, 1.9).unwrap();
    let u = BurgersRampOracle::new(0.0).cell_averages(t, &g);
    let v = cell_average_exact(&oracle_tangent_piecewise(t), &g);
    CellField::from_parts(&u, &v).unwrap()
}

#[test]
fn burgers_solution_is_close_to_the_oracle() {
    for scheme in [ScalarScheme::Godunov, ScalarScheme::LaxFriedrichs, ScalarScheme::Rusanov] {
        let cfg = CaseConfig { scheme, ..CaseConfig::burgers(7).unwrap() };
        let r = run_burgers(&cfg).unwrap();
        let exact = BurgersRampOracle::new(0.0).cell_averages(2.0, &r.grid);
        let err = l1_error(&r.final_field().values(), &exact).unwrap();
        assert!(err < 0.02, "{scheme}: {err}");
    }
}

#[test]
fn coarse_grid_runs_fast() {
    let start = Instant::now();
    let r = run_burgers(&CaseConfig::burgers(9).unwrap()).unwrap();
    assert!(start.elapsed() < Duration::from_secs(1));
    assert_eq!(r.grid.n_cells(), 130);
    let ts: Vec<f64> = r.snapshots.iter().map(|s| s.t).collect();
    assert_eq!(ts, vec![0.018, 0.51, 1.0, 1.5, 2.0]);
}

#[test]
fn doubling_the_seed_doubles_the_shock_tangent() {
    let cfg = CaseConfig::burgers(8).unwrap();
    let grid = cfg.grid().unwrap();
    let track = |scale: f64| {
        let ic = burgers_initial(&grid).map(|d| Dual::seed(d.value, scale * d.tangent));
        let mut t = ShockTracker::new(Burgers, cfg.tracker(), grid.dx(), ShockState::new(1.05, 0.0)).unwrap();
        let sc = SchemeConfig::fixed(cfg.dt.unwrap(), 2.0);
        run(&ScalarSolver::new(Burgers, cfg.scheme), ic, &sc, &mut [&mut t]).unwrap();
        t.into_history()
    };
    let (one, two) = (track(1.0), track(2.0));
    for (a, b) in one.iter().zip(&two) {
        assert_eq!(a.x.to_bits(), b.x.to_bits());
        assert_eq!(2.0 * a.xi, b.xi);
    }
}

#[test]
fn probe_tangent_on_analytic_fields_converges_to_the_shock_ode() {
    // probes sit at x_s +- delta, so both value and tangent are O(delta) off
    for t in [0.5, 1.0, 2.0] {
        let o = BurgersRampOracle::new(0.0);
        let s = ShockState::new(o.shock_position(t), xi_closed_form(t));
        let errs: Vec<(f64, f64)> = [4e-3, 2e-3, 1e-3]
            .iter()
            .map(|&dx| {
                let speed = rh_probe_speed(&s, &analytic_field(t, dx), 5.0 * dx, &Burgers).unwrap();
                ((speed.value - o.shock_speed(t)).abs(), (speed.tangent - xi_rhs(t, xi_closed_form(t))).abs())
            })
            .collect();
        for w in errs.windows(2) {
            assert!(w[1].0 < w[0].0 && w[1].1 < w[0].1, "t={t}: {errs:?}");
        }
        assert!(errs[2].0 < 5e-3 && errs[2].1 < 5e-3, "t={t}: {errs:?}");
    }
}

#[test]
fn jump_estimates() {
    let f = analytic_field(2.0, 9.2e-4);
    let s = ShockState::new(0.05 + 3f64.sqrt(), 0.0);
    let j = jump_estimate(&f, &s, 4.6e-3).unwrap();
    // O(delta): the minus probe sees u(x_s - delta) = u- - delta / 3
    assert!((j.value + 1.0 / 3f64.sqrt() - 4.6e-3 / 3.0).abs() < 1e-9, "{}", j.value);

    let setup = MovingShockSetup::new(5.3452, 0.1, 5.0).unwrap();
    let (l, r) = setup.states(ShockParam::ShockSpeed).unwrap();
    let g = Grid1D::new(0.0, 0.01, 1000).unwrap();
    let e = CellField::from_fn(g, |i| if g.center(i) < 5.0 { l } else { r });
    let j = jump_estimate_by(&e, &ShockState::new(5.0, 0.0), 0.2, |q| q.rho).unwrap();
    assert!((j.value - 0.034_483_566_975_89).abs() < 1e-12);
}

#[test]
fn shift_at_small_eps_stays_near_the_base_error() {
    let cfg = CaseConfig::burgers(5).unwrap();
    let r = run_burgers(&cfg).unwrap();
    let f = r.final_field();
    let du = jump_estimate(f, &r.shock, r.delta).unwrap().value;
    let eps = 1e-3;
    let shifted = tangential_shift(&f.values(), &f.tangents(), &r.shock, du, eps, r.delta).unwrap();
    let err = l1_error(&shifted, &BurgersRampOracle::new(eps).cell_averages(2.0, &r.grid)).unwrap();
    let base = l1_error(&f.values(), &BurgersRampOracle::new(0.0).cell_averages(2.0, &r.grid)).unwrap();
    assert!(err <= 1.5 * base, "{err} vs {base}");
}

#[test]
fn sweeps_are_deterministic() {
    let mut cfg = CaseConfig::burgers(8).unwrap();
    cfg.eps_count = 7;
    let csv = || {
        let mut buf = Vec::new();
        write_csv(&epsilon_sweep(&cfg).unwrap(), &mut buf).unwrap();
        buf
    };
    let a = csv();
    assert_eq!(a, csv());
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text.starts_with("epsilon,err_no_ad,err_blackbox,err_shock,err_base\n"));
}

#[test]
fn small_euler_sweep() {
    let mut cfg = CaseConfig::euler_desk();
    cfg.dx = 0.05;
    cfg.c_coeff = 20.0;
    cfg.t_final = 20.0;
    cfg.domain_length = 12.0;
    cfg.eps_count = 5;
    let rep = epsilon_sweep(&cfg).unwrap();
    assert_eq!(rep.kind, SweepKind::Epsilon);
    assert_eq!(rep.rows.len(), 5);
    let m = &rep.meta[0];
    assert!((m.xi - 20.0).abs() < 2.0, "{m:?}");
    assert!(m.delta_u > 0.0);
    for r in &rep.rows {
        assert!(r.err_no_ad.is_finite() && r.err_shock.is_finite());
    }
}

#[test]
fn euler_run_tracks_the_shock() {
    let mut cfg = CaseConfig::euler_desk();
    cfg.t_final = 10.0;
    let r = run_euler(&cfg).unwrap();
    assert!((r.shock.x() - 6.0).abs() < 2.0 * cfg.dx);
    assert!((r.shock.xi() - 10.0).abs() < 0.5);
    assert_eq!(r.snapshots.len(), 2);
    // the upstream far field stays physical
    let gas = Gas::AIR;
    let q = r.final_field().data()[100];
    assert!(gas.check(&q).is_ok());
}

#[test]
fn snapshot_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = CaseConfig::euler_desk();
    cfg.t_final = 1.0;
    cfg.mode = TrackMode::None;
    let CaseOutput::Euler(r) = run_case(&cfg).unwrap() else { panic!("euler case") };
    let p = dir.path().join("e.csv");
    emit_snapshot_csv(r.final_field(), &p).unwrap();
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(text.lines().next().unwrap(), "x,rho,u,p,v_rho,v_u,v_p");
    assert_eq!(text.lines().count(), 3001);

    let rep = shockad::harness::SweepReport::empty(SweepKind::Epsilon);
    let p = dir.path().join("empty.csv");
    emit_csv(&rep, &p).unwrap();
    assert_eq!(std::fs::read_to_string(&p).unwrap(), "epsilon,err_no_ad,err_blackbox,err_shock,err_base\n");
}

#[test]
fn tracker_rejects_narrow_probes() {
    let cfg = TrackerConfig::new(1.0, 1.0, TrackMode::Shock);
    assert!(ShockTracker::new(Burgers, cfg, 0.01, ShockState::new(1.0, 0.0)).is_err());
}
