//! Equidistant 1D grids, cell fields and reconstructions.
//!
//! Boundary handling is zero-gradient: solvers see two ghost cells per side
//! that copy the edge cell ([`CellField::with_ghosts`]).

use crate::dual::Dual;
use crate::error::{Error, Result};

/// Number of ghost cells added on each side by the solvers.
pub const GHOST_CELLS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_left: f64,
    dx: f64,
    n_cells: usize,
}

impl Grid1D {
    pub fn new(x_left: f64, dx: f64, n_cells: usize) -> Result<Self> {
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(Error::config(format!("cell width must be positive, got {dx}")));
        }
        if n_cells < 3 {
            return Err(Error::config(format!("need at least 3 cells, got {n_cells}")));
        }
        Ok(Grid1D { x_left, dx, n_cells })
    }

    /// Grid on `[x_left, x_left + n dx]` with the smallest `n` covering `length`.
    pub fn covering(x_left: f64, dx: f64, length: f64) -> Result<Self> {
        let n = (length / dx - 1e-9).ceil().max(0.0) as usize;
        Grid1D::new(x_left, dx, n)
    }

    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    pub fn x_right(&self) -> f64 {
        self.x_left + self.n_cells as f64 * self.dx
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn center(&self, i: usize) -> f64 {
        self.x_left + (i as f64 + 0.5) * self.dx
    }

    pub fn face_left(&self, i: usize) -> f64 {
        self.x_left + i as f64 * self.dx
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_cells).map(|i| self.center(i))
    }

    /// Index of the cell containing `x`; a point on a face belongs to the
    /// cell on its right.
    pub fn cell_index(&self, x: f64) -> Result<usize> {
        let s = (x - self.x_left) / self.dx;
        if !(s >= 0.0) || s >= self.n_cells as f64 {
            return Err(Error::OutOfDomain { x, lo: self.x_left, hi: self.x_right() });
        }
        Ok((s.floor() as usize).min(self.n_cells - 1))
    }

    /// Fraction of cell `i` to the right of `x`; exactly 0 or 1 unless `x`
    /// lies strictly inside the cell.
    pub fn right_fraction(&self, i: usize, x: f64) -> f64 {
        let a = self.face_left(i);
        let b = self.face_left(i + 1);
        if x <= a {
            1.0
        } else if x >= b {
            0.0
        } else {
            (b - x) / self.dx
        }
    }

    /// Length of `[lo, hi]` inside cell `i`, as a fraction of `dx`.
    pub fn overlap_fraction(&self, i: usize, lo: f64, hi: f64) -> f64 {
        let a = self.face_left(i);
        let b = a + self.dx;
        (hi.min(b) - lo.max(a)).max(0.0) / self.dx
    }
}

/// Per-cell data on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CellField<T> {
    grid: Grid1D,
    data: Vec<T>,
}

impl<T> CellField<T> {
    pub fn new(grid: Grid1D, data: Vec<T>) -> Result<Self> {
        if data.len() != grid.n_cells() {
            return Err(Error::config(format!(
                "field has {} entries for a grid of {} cells",
                data.len(),
                grid.n_cells()
            )));
        }
        Ok(CellField { grid, data })
    }

    pub fn from_fn(grid: Grid1D, f: impl FnMut(usize) -> T) -> Self {
        CellField { grid, data: (0..grid.n_cells()).map(f).collect() }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> CellField<U> {
        CellField { grid: self.grid, data: self.data.iter().map(f).collect() }
    }

    pub fn same_grid<U>(&self, other: &CellField<U>) -> bool {
        self.grid == other.grid
    }
}

impl<T: Copy> CellField<T> {
    /// Data padded with `GHOST_CELLS` copies of the edge cells on each side.
    pub fn with_ghosts(&self) -> Vec<T> {
        let first = self.data[0];
        let last = self.data[self.data.len() - 1];
        let mut out = Vec::with_capacity(self.data.len() + 2 * GHOST_CELLS);
        out.extend(std::iter::repeat(first).take(GHOST_CELLS));
        out.extend_from_slice(&self.data);
        out.extend(std::iter::repeat(last).take(GHOST_CELLS));
        out
    }
}

impl CellField<Dual> {
    /// Combines a value field and a tangent field.
    pub fn from_parts(values: &CellField<f64>, tangents: &CellField<f64>) -> Result<Self> {
        if values.grid != tangents.grid {
            return Err(Error::GridMismatch);
        }
        Ok(CellField {
            grid: values.grid,
            data: values.data.iter().zip(&tangents.data).map(|(&v, &t)| Dual::seed(v, t)).collect(),
        })
    }

    pub fn values(&self) -> CellField<f64> {
        self.map(|d| d.value)
    }

    pub fn tangents(&self) -> CellField<f64> {
        self.map(|d| d.tangent)
    }
}

/// A piecewise polynomial, zero outside its pieces. Pieces are half-open
/// `[lo, hi)` and may not overlap.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Piecewise {
    pieces: Vec<Piece>,
}

#[derive(Debug, Clone, PartialEq)]
struct Piece {
    lo: f64,
    hi: f64,
    /// Monomial coefficients in `x`, lowest degree first.
    coeffs: Vec<f64>,
}

impl Piecewise {
    pub fn new() -> Self {
        Piecewise::default()
    }

    /// Adds `sum_k coeffs[k] x^k` on `[lo, hi)`.
    pub fn with_piece(mut self, lo: f64, hi: f64, coeffs: &[f64]) -> Self {
        if hi > lo {
            self.pieces.push(Piece { lo, hi, coeffs: coeffs.to_vec() });
        }
        self
    }

    /// `c` on `[lo, hi)`.
    pub fn with_constant(self, lo: f64, hi: f64, c: f64) -> Self {
        self.with_piece(lo, hi, &[c])
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.pieces
            .iter()
            .find(|p| x >= p.lo && x < p.hi)
            .map_or(0.0, |p| horner(&p.coeffs, x))
    }

    /// Exact integral over `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        self.pieces
            .iter()
            .map(|p| {
                let lo = a.max(p.lo);
                let hi = b.min(p.hi);
                if hi > lo {
                    antiderivative(&p.coeffs, hi) - antiderivative(&p.coeffs, lo)
                } else {
                    0.0
                }
            })
            .sum()
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn antiderivative(coeffs: &[f64], x: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .rev()
        .fold(0.0, |acc, (k, &c)| acc * x + c / (k + 1) as f64)
        * x
}

/// Exact cell averages of a piecewise polynomial.
pub fn cell_average_exact(pw: &Piecewise, grid: &Grid1D) -> CellField<f64> {
    CellField::from_fn(*grid, |i| {
        let a = grid.face_left(i);
        pw.integrate(a, a + grid.dx()) / grid.dx()
    })
}

const GAUSS5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GAUSS5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

/// Cell averages by 5-point Gauss-Legendre quadrature per cell (exact for
/// polynomials of degree <= 9).
pub fn cell_average(f: impl Fn(f64) -> f64, grid: &Grid1D) -> CellField<f64> {
    let half = 0.5 * grid.dx();
    CellField::from_fn(*grid, |i| {
        let c = grid.center(i);
        0.5 * GAUSS5_NODES
            .iter()
            .zip(GAUSS5_WEIGHTS)
            .map(|(&s, w)| w * f(c + s * half))
            .sum::<f64>()
    })
}

/// Piecewise-constant reconstruction at `x`.
pub fn eval_constant<T: Copy>(field: &CellField<T>, x: f64) -> Result<T> {
    Ok(field.data[field.grid.cell_index(x)?])
}

/// Forward and backward differences `((U[i+1]-U[i])/dx, (U[i]-U[i-1])/dx)`.
/// Only used for probing shocks, never for advancing the solution.
pub fn one_sided_slopes(field: &CellField<Dual>, i: usize) -> Result<(Dual, Dual)> {
    one_sided_slopes_by(field, i, |&u| u)
}

/// [`one_sided_slopes`] of the component `get` of each cell.
pub fn one_sided_slopes_by<T>(field: &CellField<T>, i: usize, get: impl Fn(&T) -> Dual) -> Result<(Dual, Dual)> {
    let n = field.len();
    if i == 0 || i + 1 >= n {
        return Err(Error::Index { index: i, n_cells: n });
    }
    let u = &field.data;
    let dx = field.grid.dx();
    let c = get(&u[i]);
    Ok(((get(&u[i + 1]) - c) / dx, (c - get(&u[i - 1])) / dx))
}

/// Which one-sided slope the linear reconstruction uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Piecewise-linear reconstruction `U[i] + (x - X[i]) s[i]` at a dual
/// position. The tangent collects `U̇[i] + s ẋ + (x - X[i]) ṡ`.
pub fn eval_linear(field: &CellField<Dual>, x: Dual, side: Side) -> Result<Dual> {
    eval_linear_by(field, x, side, |&u| u)
}

/// [`eval_linear`] of the component `get` of each cell.
pub fn eval_linear_by<T>(field: &CellField<T>, x: Dual, side: Side, get: impl Fn(&T) -> Dual) -> Result<Dual> {
    let i = field.grid.cell_index(x.value)?;
    let (s_plus, s_minus) = one_sided_slopes_by(field, i, &get)?;
    let slope = match side {
        Side::Plus => s_plus,
        Side::Minus => s_minus,
    };
    Ok(get(&field.data[i]) + (x - field.grid.center(i)) * slope)
}
