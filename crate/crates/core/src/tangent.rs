//! Generalized tangent vectors `(v, xi)`, their norm, and the first-order
//! shifted solution built from them.

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::mesh::CellField;
use crate::tracker::{denom_floor, probe_pair, ShockState};

/// Field tangent plus one `(xi, delta_u)` pair per shock.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    pub v: CellField<f64>,
    pub xi: Vec<f64>,
    pub delta_u: Vec<f64>,
}

impl TangentVector {
    pub fn new(v: CellField<f64>, xi: Vec<f64>, delta_u: Vec<f64>) -> Result<Self> {
        if xi.len() != delta_u.len() {
            return Err(Error::domain(format!("{} shock tangents for {} jumps", xi.len(), delta_u.len())));
        }
        Ok(TangentVector { v, xi, delta_u })
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        TangentVector {
            v: self.v.map(|x| lambda * x),
            xi: self.xi.iter().map(|x| lambda * x).collect(),
            delta_u: self.delta_u.clone(),
        }
    }
}

/// `dx sum |a|`.
pub fn l1_norm(a: &CellField<f64>) -> f64 {
    a.grid().dx() * a.data().iter().map(|x| x.abs()).sum::<f64>()
}

/// `dx sum |a - b|`.
pub fn l1_error(a: &CellField<f64>, b: &CellField<f64>) -> Result<f64> {
    if !a.same_grid(b) {
        return Err(Error::GridMismatch);
    }
    Ok(a.grid().dx() * a.data().iter().zip(b.data()).map(|(x, y)| (x - y).abs()).sum::<f64>())
}

/// `||v||_L1 + sum |delta_u| |xi|`.
pub fn tangent_norm(tv: &TangentVector) -> f64 {
    l1_norm(&tv.v) + tv.xi.iter().zip(&tv.delta_u).map(|(x, d)| (x * d).abs()).sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpEstimate {
    pub value: f64,
    /// The jump is within the probe denominator floor.
    pub below_floor: bool,
}

/// `v(x_s + delta) - v(x_s - delta)` from the same one-sided probes the
/// tracker uses.
pub fn jump_estimate(field: &CellField<Dual>, shock: &ShockState, delta: f64) -> Result<JumpEstimate> {
    jump_estimate_by(field, shock, delta, |&u| u)
}

/// [`jump_estimate`] of the component `get` of each cell.
pub fn jump_estimate_by<T>(
    field: &CellField<T>,
    shock: &ShockState,
    delta: f64,
    get: impl Fn(&T) -> Dual,
) -> Result<JumpEstimate> {
    let (plus, minus) = probe_pair(field, Dual::lift(shock.x()), delta, get)?;
    let value = plus.value - minus.value;
    Ok(JumpEstimate { value, below_floor: value.abs() <= denom_floor(plus.value, minus.value) })
}

/// `U + eps U̇`.
pub fn linear_shift(u: &CellField<f64>, udot: &CellField<f64>, eps: f64) -> Result<CellField<f64>> {
    if !u.same_grid(udot) {
        return Err(Error::GridMismatch);
    }
    CellField::new(*u.grid(), u.data().iter().zip(udot.data()).map(|(a, b)| a + eps * b).collect())
}

/// First-order perturbed solution
/// `U + eps U̇ [|X - x_s| > delta] - delta_u chi[x_s, x_s + eps xi]`.
///
/// For `eps xi < 0` the covered interval is `[x_s + eps xi, x_s]` and the
/// jump is added instead. The indicator is cell-averaged.
pub fn tangential_shift(
    u: &CellField<f64>,
    udot: &CellField<f64>,
    shock: &ShockState,
    delta_u: f64,
    eps: f64,
    delta: f64,
) -> Result<CellField<f64>> {
    if !u.same_grid(udot) {
        return Err(Error::GridMismatch);
    }
    let g = *u.grid();
    let xs = shock.x();
    let moved = xs + eps * shock.xi();
    if !(moved >= g.x_left() && moved <= g.x_right()) {
        return Err(Error::Range { lo: xs.min(moved), hi: xs.max(moved) });
    }
    let (lo, hi, sign) = if moved >= xs { (xs, moved, -1.0) } else { (moved, xs, 1.0) };
    let data = (0..g.n_cells())
        .map(|i| {
            let band = if (g.center(i) - xs).abs() > delta { eps * udot.data()[i] } else { 0.0 };
            u.data()[i] + band + sign * delta_u * g.overlap_fraction(i, lo, hi)
        })
        .collect();
    CellField::new(g, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Grid1D;
    use proptest::prelude::*;

    fn grid() -> Grid1D {
        Grid1D::new(0.0, 0.2, 10).unwrap()
    }

    #[test]
    fn l1_examples() {
        let a = CellField::from_fn(grid(), |i| i as f64);
        assert_eq!(l1_error(&a, &a).unwrap(), 0.0);
        let b = a.map(|x| x + 0.1);
        assert!((l1_error(&a, &b).unwrap() - 0.2).abs() < 1e-14);
        let other = CellField::from_fn(Grid1D::new(0.0, 0.1, 10).unwrap(), |_| 0.0);
        assert!(matches!(l1_error(&a, &other), Err(Error::GridMismatch)));
    }

    #[test]
    fn norm_of_pure_shock_tangent() {
        let tv = TangentVector::new(CellField::from_fn(grid(), |_| 0.0), vec![0.5], vec![2.0]).unwrap();
        assert_eq!(tangent_norm(&tv), 1.0);
        assert!(TangentVector::new(CellField::from_fn(grid(), |_| 0.0), vec![0.5], vec![]).is_err());
    }

    #[test]
    fn zero_eps_is_identity() {
        let u = CellField::from_fn(grid(), |i| (i as f64).sin());
        let ud = CellField::from_fn(grid(), |i| i as f64);
        let s = ShockState::new(1.0, 0.7);
        assert_eq!(tangential_shift(&u, &ud, &s, -1.0, 0.0, 0.3).unwrap(), u);
    }

    #[test]
    fn one_cell_displacement() {
        let u = CellField::from_fn(grid(), |_| 0.0);
        let ud = CellField::from_fn(grid(), |_| 1.0);
        // shock on the face at x = 1.0, moved right by exactly one cell
        let s = ShockState::new(1.0, 2.0);
        let eps = 0.1;
        let out = tangential_shift(&u, &ud, &s, -1.0, eps, 0.25).unwrap();
        for (i, &v) in out.data().iter().enumerate() {
            let band = if (grid().center(i) - 1.0).abs() > 0.25 { eps } else { 0.0 };
            let chi = if i == 5 { 1.0 } else { 0.0 };
            assert!((v - band - chi).abs() < 1e-12, "cell {i}: {v}");
        }
    }

    #[test]
    fn leftward_displacement_adds_the_jump() {
        let u = CellField::from_fn(grid(), |_| 0.0);
        let ud = CellField::from_fn(grid(), |_| 0.0);
        let s = ShockState::new(1.0, -1.0);
        let out = tangential_shift(&u, &ud, &s, -1.0, 0.2, 0.25).unwrap();
        assert!((out.data()[4] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn displaced_shock_outside_domain() {
        let u = CellField::from_fn(grid(), |_| 0.0);
        let s = ShockState::new(1.9, 1.0);
        assert!(matches!(tangential_shift(&u, &u, &s, -1.0, 0.5, 0.25), Err(Error::Range { .. })));
    }

    #[test]
    fn jump_of_a_step() {
        let g = Grid1D::new(0.0, 0.1, 40).unwrap();
        let f = CellField::from_fn(g, |i| Dual::lift(if i < 20 { 0.6 } else { 0.0 }));
        let j = jump_estimate(&f, &ShockState::new(2.0, 0.0), 0.5).unwrap();
        assert!((j.value + 0.6).abs() < 1e-15 && !j.below_floor);
        let flat = CellField::from_fn(g, |_| Dual::lift(0.3));
        assert!(jump_estimate(&flat, &ShockState::new(2.0, 0.0), 0.5).unwrap().below_floor);
    }

    proptest! {
        #[test]
        fn chi_mass_is_the_displacement(xs in 0.5f64..1.5, xi in -2.0f64..2.0, eps in 0.0f64..0.2) {
            let u = CellField::from_fn(grid(), |_| 0.0);
            let s = ShockState::new(xs, xi);
            let out = tangential_shift(&u, &u, &s, 1.0, eps, 0.25).unwrap();
            prop_assert!((l1_norm(&out) - (eps * xi).abs()).abs() < 1e-12);
        }

        #[test]
        fn norm_is_homogeneous(lambda in -5.0f64..5.0, xi in -2.0f64..2.0, du in -2.0f64..2.0) {
            let v = CellField::from_fn(grid(), |i| (i as f64 * 0.7).cos());
            let tv = TangentVector::new(v, vec![xi], vec![du]).unwrap();
            let lhs = tangent_norm(&tv.scaled(lambda));
            prop_assert!((lhs - lambda.abs() * tangent_norm(&tv)).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }
    }
}
