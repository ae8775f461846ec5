//! The finite linear system whose solutions are the functions that are tight
//! wherever `pi` is, on the refined grid `(1/N)Z` with `N = 4q`.
//!
//! Variables are `m_e`, `b_e` for each edge `[e/N, (e+1)/N]` (the piece is
//! `m_e x + b_e`) and one value per grid point `0..=N`. Every row is scaled by
//! `N` so that all coefficients are integers.

use crate::complex2d::STAR;
use crate::error::{Error, Result};
use crate::grid::{pattern_allowed, GridSlots};
use crate::linalg::{integer_kernel, Kernel, RowSource};
use crate::minimality::check_minimality;
use crate::pwl::{PwlPeriodic, Side};
use crate::scalar::{Rat, Scalar};

/// Refinement factor between the breakpoint grid and the system grid.
pub const REFINEMENT: u64 = 4;

pub struct LinearSystem {
    /// Denominator `N` of the system grid.
    grid: usize,
    f_index: usize,
    /// Bit `p` of `tight[i * (N+1) + j]` is set when star pattern `p` is tight at `(i/N, j/N)`.
    tight: Vec<u16>,
    /// Additional homogeneous rows, mostly for testing invariance.
    extra_rows: Vec<Vec<(u32, i64)>>,
}

impl LinearSystem {
    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn num_vars(&self) -> usize {
        3 * self.grid + 1
    }

    pub fn slope_var(&self, edge: usize) -> u32 {
        (2 * edge) as u32
    }

    pub fn intercept_var(&self, edge: usize) -> u32 {
        (2 * edge + 1) as u32
    }

    pub fn point_var(&self, point: usize) -> u32 {
        (2 * self.grid + point) as u32
    }

    pub fn push_row(&mut self, row: Vec<(u32, i64)>) {
        self.extra_rows.push(row);
    }

    /// Scaled terms for `phi` read at grid index `k` (possibly in `[N, 2N]`) on `side`.
    fn term(&self, k: usize, side: Side, sign: i64, out: &mut Vec<(u32, i64)>) {
        let n = self.grid;
        let nn = n as i64;
        let (edge, pos) = match side {
            Side::At => {
                let p = if k > n { k - n } else { k };
                out.push((self.point_var(p), sign * nn));
                return;
            }
            Side::Right => (k, k),
            Side::Left => (k - 1, k),
        };
        let (edge, pos) = if edge >= n { (edge - n, pos - n) } else { (edge, pos) };
        out.push((self.slope_var(edge), sign * pos as i64));
        out.push((self.intercept_var(edge), sign * nn));
    }

    fn star_row(&self, i: usize, j: usize, sides: &[Side; 3], out: &mut Vec<(u32, i64)>) {
        out.clear();
        self.term(i, sides[0], 1, out);
        self.term(j, sides[1], 1, out);
        self.term(i + j, sides[2], -1, out);
        out.sort_unstable_by_key(|t| t.0);
        let mut w = 0;
        for r in 0..out.len() {
            if w > 0 && out[w - 1].0 == out[r].0 {
                out[w - 1].1 += out[r].1;
            } else {
                out[w] = out[r];
                w += 1;
            }
        }
        out.truncate(w);
        out.retain(|t| t.1 != 0);
    }

    /// Visits every equation: the three anchor rows, then one row per tight
    /// (face, vertex) pair with `x <= y`. Pairs with `x > y` give the same rows.
    pub fn for_each_equation(&self, visit: &mut dyn FnMut(&[(u32, i64)], i64)) {
        let n = self.grid;
        visit(&[(self.point_var(0), 1)], 0);
        visit(&[(self.point_var(self.f_index), 1)], 1);
        visit(&[(self.point_var(n), 1)], 0);
        let mut row = Vec::with_capacity(6);
        for i in 0..=n {
            for j in i..=n {
                let mut mask = self.tight[i * (n + 1) + j];
                while mask != 0 {
                    let p = mask.trailing_zeros() as usize;
                    mask &= mask - 1;
                    self.star_row(i, j, &STAR[p], &mut row);
                    if !row.is_empty() {
                        visit(&row, 0);
                    }
                }
            }
        }
        for r in &self.extra_rows {
            visit(r, 0);
        }
    }

    /// Number of rows, counting the anchor rows.
    pub fn num_rows(&self) -> usize {
        let mut count = 0;
        self.for_each_equation(&mut |_, _| count += 1);
        count
    }
}

impl RowSource for LinearSystem {
    fn num_vars(&self) -> usize {
        LinearSystem::num_vars(self)
    }

    fn for_each_row(&self, visit: &mut dyn FnMut(&[(u32, i64)])) {
        self.for_each_equation(&mut |row, _| visit(row));
    }
}

/// Grid denominator `4q` used by the extremality test.
pub fn system_grid(pi: &PwlPeriodic) -> Result<u64> {
    Ok(REFINEMENT * pi.grid_denominator()?)
}

/// Builds the system over `(1/(4q))Z`. The input must be minimal with rational breakpoints.
pub fn build_system(pi: &PwlPeriodic) -> Result<LinearSystem> {
    let n = system_grid(pi)?;
    let report = check_minimality(pi);
    if !report.is_minimal() {
        let first = report.violations.first().map(|v| format!("{:?}", v.kind)).unwrap_or_default();
        return Err(Error::NotMinimal(format!("{} violations, first: {first}", report.violations.len())));
    }
    build_system_on_grid(pi, n)
}

/// Builds the system on an explicit grid without checking minimality.
pub fn build_system_on_grid(pi: &PwlPeriodic, n: u64) -> Result<LinearSystem> {
    let slots = GridSlots::new(pi, n)?;
    let grid = n as usize;
    let mut tight = vec![0u16; (grid + 1) * (grid + 1)];
    for i in 0..=grid {
        for j in i..=grid {
            let mut mask = 0u16;
            for (p, sides) in STAR.iter().enumerate() {
                if pattern_allowed(i, j, grid, sides) && slots.is_tight(i, sides[0], j, sides[1], i + j, sides[2]) {
                    mask |= 1 << p;
                }
            }
            tight[i * (grid + 1) + j] = mask;
        }
    }
    let f_index = pi
        .f()
        .as_rat()
        .and_then(|r| (r * &Rat::from_int(n as i64)).as_small())
        .map(|(k, _)| k as usize)
        .ok_or_else(|| Error::NotOnGrid { point: pi.f().to_string(), denominator: n })?;
    Ok(LinearSystem { grid, f_index, tight, extra_rows: Vec::new() })
}

/// The coefficients `(m_e, b_e)` and point values of `pi` on the system grid.
pub fn coefficient_vector(pi: &PwlPeriodic, sys: &LinearSystem) -> Result<Vec<Scalar>> {
    let n = sys.grid();
    let refined = pi.refine_to_grid(n as u64)?;
    let mut x = vec![Scalar::zero(); sys.num_vars()];
    for e in 0..n {
        let (r, l) = &refined.limits()[e];
        let m = (l - r).mul_rat(&Rat::from_int(n as i64));
        let b = r - &m.mul_rat(&Rat::new(e as i64, n as i64));
        x[sys.slope_var(e) as usize] = m;
        x[sys.intercept_var(e) as usize] = b;
    }
    for p in 0..=n {
        x[sys.point_var(p) as usize] = refined.point_value(p % n).clone();
    }
    Ok(x)
}

/// Exact kernel of the homogeneous part.
pub fn kernel_basis(sys: &LinearSystem) -> Kernel {
    integer_kernel(sys)
}

/// The periodic function described by a solution vector of the system.
pub fn function_from_vector(sys: &LinearSystem, x: &[Rat], f: &Scalar) -> Result<PwlPeriodic> {
    let n = sys.grid();
    let bps = (0..n).map(|k| Scalar::ratio(k as i64, n as i64)).collect();
    let values = (0..n).map(|p| Scalar::from(&x[sys.point_var(p) as usize])).collect();
    let limits = (0..n)
        .map(|e| {
            let m = &x[sys.slope_var(e) as usize];
            let b = &x[sys.intercept_var(e) as usize];
            let at = |k: usize| Scalar::from(&(m * &Rat::new(k as i64, n as i64) + b));
            (at(e), at(e + 1))
        })
        .collect();
    PwlPeriodic::new(bps, values, Some(limits), f.clone())
}
