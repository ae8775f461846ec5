//! Periodic piecewise linear functions, possibly discontinuous, and their
//! restrictions to finite cyclic groups.

use crate::error::{Error, Result};
use crate::scalar::{lcm_denominator, NumberField, Rat, Scalar};

/// Which value to read at a point: the limit from the left, the point value,
/// or the limit from the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    At,
    Right,
}

/// Where a point of `[0,1)` falls in the one-dimensional complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    /// Exactly at breakpoint `i`.
    Point(usize),
    /// In the open interval between breakpoint `i` and the next one.
    Interior(usize),
}

/// A periodic (mod 1) piecewise linear function.
///
/// Interval `i` runs from `breakpoints[i]` to `breakpoints[i+1]`, the last
/// one ending at 1. `limits[i]` holds the right limit at its start and the left
/// limit at its end, which together determine the affine piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlPeriodic {
    breakpoints: Vec<Scalar>,
    values: Vec<Scalar>,
    limits: Vec<(Scalar, Scalar)>,
    f: Scalar,
    field: NumberField,
}

impl PwlPeriodic {
    /// Builds a function from breakpoints, point values and optional limit
    /// pairs. Without limits the values are joined continuously. If `f` is not a
    /// breakpoint it is inserted without changing the function.
    pub fn new(
        breakpoints: Vec<Scalar>,
        values: Vec<Scalar>,
        limits: Option<Vec<(Scalar, Scalar)>>,
        f: Scalar,
    ) -> Result<Self> {
        let n = breakpoints.len();
        if n == 0 {
            return Err(Error::InvalidFunction("at least one breakpoint is required".into()));
        }
        if !breakpoints[0].is_zero() {
            return Err(Error::InvalidFunction(format!(
                "first breakpoint must be 0, got {}",
                breakpoints[0]
            )));
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidFunction(format!(
                    "breakpoints must be strictly increasing: {} is followed by {}",
                    w[0], w[1]
                )));
            }
        }
        if breakpoints[n - 1] >= Scalar::one() {
            return Err(Error::InvalidFunction(format!(
                "breakpoints must lie in [0,1), got {}",
                breakpoints[n - 1]
            )));
        }
        if values.len() != n {
            return Err(Error::InvalidFunction(format!(
                "{} breakpoints but {} values",
                n,
                values.len()
            )));
        }
        if f.sign() <= 0 || f >= Scalar::one() {
            return Err(Error::InvalidFunction(format!("f must lie in (0,1), got {f}")));
        }
        let limits = match limits {
            Some(l) => {
                if l.len() != n {
                    return Err(Error::InvalidFunction(format!(
                        "{} intervals but {} limit pairs",
                        n,
                        l.len()
                    )));
                }
                l
            }
            None => (0..n).map(|i| (values[i].clone(), values[(i + 1) % n].clone())).collect(),
        };
        let field = NumberField::of(
            breakpoints
                .iter()
                .chain(&values)
                .chain(limits.iter().flat_map(|(a, b)| [a, b]))
                .chain(std::iter::once(&f)),
        )?;
        let mut pi = PwlPeriodic { breakpoints, values, limits, f, field };
        pi.insert_breakpoint(&pi.f.clone());
        Ok(pi)
    }

    /// Continuous function through the given values.
    pub fn continuous(breakpoints: Vec<Scalar>, values: Vec<Scalar>, f: Scalar) -> Result<Self> {
        PwlPeriodic::new(breakpoints, values, None, f)
    }

    /// The constant zero function.
    pub fn zero(f: Scalar) -> Result<Self> {
        PwlPeriodic::continuous(vec![Scalar::zero()], vec![Scalar::zero()], f)
    }

    /// Splits the interval containing `x` at `x`, keeping the function unchanged.
    fn insert_breakpoint(&mut self, x: &Scalar) {
        if let Location::Interior(i) = self.locate(x) {
            let v = self.piece_value(i, x);
            let (r, l) = self.limits[i].clone();
            self.breakpoints.insert(i + 1, x.clone());
            self.values.insert(i + 1, v.clone());
            self.limits[i] = (r, v.clone());
            self.limits.insert(i + 1, (v, l));
        }
    }

    pub fn breakpoints(&self) -> &[Scalar] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn limits(&self) -> &[(Scalar, Scalar)] {
        &self.limits
    }

    pub fn f(&self) -> &Scalar {
        &self.f
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    /// Number of breakpoints in `[0,1)`, which equals the number of intervals.
    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }

    /// Breakpoint `i` for `i` in `0..=len()`, where index `len()` means 1.
    pub fn breakpoint(&self, i: usize) -> Scalar {
        if i == self.len() {
            Scalar::one()
        } else {
            self.breakpoints[i].clone()
        }
    }

    /// Point value at breakpoint `i` for `i` in `0..=len()`, wrapping at 1.
    pub fn point_value(&self, i: usize) -> &Scalar {
        &self.values[i % self.len()]
    }

    pub fn is_continuous(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            let (r, l) = &self.limits[i];
            *r == self.values[i] && *l == self.values[(i + 1) % n]
        })
    }

    pub fn slope(&self, i: usize) -> Scalar {
        let (r, l) = &self.limits[i];
        let width = self.breakpoint(i + 1) - &self.breakpoints[i];
        (l - r) / width
    }

    pub fn intercept(&self, i: usize) -> Scalar {
        &self.limits[i].0 - &(self.slope(i) * &self.breakpoints[i])
    }

    /// Value of the affine extension of piece `i` at `x` (no reduction mod 1).
    pub fn piece_value(&self, i: usize, x: &Scalar) -> Scalar {
        let (r, l) = &self.limits[i];
        let start = &self.breakpoints[i];
        if x == start {
            return r.clone();
        }
        let end = self.breakpoint(i + 1);
        if *x == end {
            return l.clone();
        }
        let t = (x - start) / (end - start);
        r + &(t * (l - r))
    }

    /// Locates a point already reduced to `[0,1)`.
    pub fn locate(&self, y: &Scalar) -> Location {
        match self.breakpoints.binary_search_by(|b| b.cmp(y)) {
            Ok(i) => Location::Point(i),
            Err(i) => Location::Interior(i - 1),
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.one_sided_limit(x, Side::At)
    }

    pub fn one_sided_limit(&self, x: &Scalar, side: Side) -> Scalar {
        let y = x.frac();
        match self.locate(&y) {
            Location::Interior(i) => self.piece_value(i, &y),
            Location::Point(i) => match side {
                Side::At => self.values[i].clone(),
                Side::Right => self.limits[i].0.clone(),
                Side::Left => {
                    let n = self.len();
                    self.limits[(i + n - 1) % n].1.clone()
                }
            },
        }
    }

    /// Common denominator of all breakpoints and of `f`.
    pub fn grid_denominator(&self) -> Result<u64> {
        lcm_denominator(self.breakpoints.iter().chain(std::iter::once(&self.f)))
    }

    /// Values at `k/n` for `k = 0..n`.
    pub fn restrict(&self, n: u64) -> Result<FiniteGroupFunction> {
        if n == 0 {
            return Err(Error::InvalidParameters("denominator must be positive".into()));
        }
        let values = (0..n).map(|k| self.eval(&Scalar::ratio(k as i64, n as i64))).collect();
        FiniteGroupFunction::new(n, values, self.f.clone())
    }

    /// The same function with breakpoints exactly `{k/n : 0 <= k < n}`.
    pub fn refine_to_grid(&self, n: u64) -> Result<PwlPeriodic> {
        if n == 0 {
            return Err(Error::InvalidParameters("denominator must be positive".into()));
        }
        let nn = Rat::from_int(n as i64);
        for b in self.breakpoints.iter().chain(std::iter::once(&self.f)) {
            let on_grid = b.as_rat().is_some_and(|r| (r * &nn).is_integer());
            if !on_grid {
                return Err(Error::NotOnGrid { point: b.to_string(), denominator: n });
            }
        }
        let grid: Vec<Scalar> = (0..n).map(|k| Scalar::ratio(k as i64, n as i64)).collect();
        Ok(self.resample(grid))
    }

    /// Re-expresses the function over a superset of its breakpoints.
    fn resample(&self, grid: Vec<Scalar>) -> PwlPeriodic {
        let m = grid.len();
        let mut values = Vec::with_capacity(m);
        let mut limits = Vec::with_capacity(m);
        let mut piece = 0usize;
        for k in 0..m {
            let x = &grid[k];
            while piece + 1 < self.len() && self.breakpoints[piece + 1] <= *x {
                piece += 1;
            }
            let end = if k + 1 < m { grid[k + 1].clone() } else { Scalar::one() };
            if self.breakpoints[piece] == *x {
                values.push(self.values[piece].clone());
            } else {
                values.push(self.piece_value(piece, x));
            }
            limits.push((self.piece_value(piece, x), self.piece_value(piece, &end)));
        }
        PwlPeriodic {
            breakpoints: grid,
            values,
            limits,
            f: self.f.clone(),
            field: self.field,
        }
    }

    /// `self + c * other` over the union of both breakpoint sets; `f` is taken from `self`.
    pub fn add_scaled(&self, other: &PwlPeriodic, c: &Scalar) -> Result<PwlPeriodic> {
        let mut grid: Vec<Scalar> = self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        grid.sort();
        grid.dedup();
        let a = self.resample(grid.clone());
        let b = other.resample(grid);
        let comb = |x: &Scalar, y: &Scalar| x + &(c * y);
        let values = a.values.iter().zip(&b.values).map(|(x, y)| comb(x, y)).collect();
        let limits = a
            .limits
            .iter()
            .zip(&b.limits)
            .map(|((r1, l1), (r2, l2))| (comb(r1, r2), comb(l1, l2)))
            .collect();
        PwlPeriodic::new(a.breakpoints, values, Some(limits), self.f.clone())
    }

    /// Removes breakpoints other than 0 and `f` where the function is
    /// continuous and the slope does not change.
    pub fn simplify(&self) -> PwlPeriodic {
        let n = self.len();
        let mut keep = vec![true; n];
        for i in 1..n {
            if self.breakpoints[i] == self.f {
                continue;
            }
            let (_, left) = &self.limits[i - 1];
            let (right, _) = &self.limits[i];
            if *left == self.values[i] && *right == self.values[i] && self.slope(i - 1) == self.slope(i) {
                keep[i] = false;
            }
        }
        let mut breakpoints = Vec::new();
        let mut values = Vec::new();
        let mut limits: Vec<(Scalar, Scalar)> = Vec::new();
        for i in 0..n {
            if keep[i] {
                breakpoints.push(self.breakpoints[i].clone());
                values.push(self.values[i].clone());
                limits.push(self.limits[i].clone());
            } else {
                limits.last_mut().expect("breakpoint 0 is always kept").1 = self.limits[i].1.clone();
            }
        }
        PwlPeriodic { breakpoints, values, limits, f: self.f.clone(), field: self.field }
    }

    /// True when both functions agree at every point and every one-sided limit.
    pub fn same_function(&self, other: &PwlPeriodic) -> bool {
        if self.f != other.f {
            return false;
        }
        let mut grid: Vec<Scalar> = self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        grid.sort();
        grid.dedup();
        let a = self.resample(grid.clone());
        let b = other.resample(grid);
        a.values == b.values && a.limits == b.limits
    }

    /// Largest absolute value over point values and limits.
    pub fn sup_norm(&self) -> Scalar {
        self.values
            .iter()
            .chain(self.limits.iter().flat_map(|(a, b)| [a, b]))
            .map(Scalar::abs)
            .max()
            .unwrap_or_default()
    }
}

/// A function on the cyclic group `(1/n)Z / Z`, given by its values at `k/n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupFunction {
    n: u64,
    values: Vec<Scalar>,
    f: Scalar,
    f_index: u64,
}

impl FiniteGroupFunction {
    pub fn new(n: u64, values: Vec<Scalar>, f: Scalar) -> Result<Self> {
        if n == 0 || values.len() as u64 != n {
            return Err(Error::InvalidFunction(format!(
                "expected {n} values on (1/{n})Z, got {}",
                values.len()
            )));
        }
        if f.sign() <= 0 || f >= Scalar::one() {
            return Err(Error::InvalidFunction(format!("f must lie in (0,1), got {f}")));
        }
        let nf = f.mul_rat(&Rat::from_int(n as i64));
        let f_index = nf
            .as_rat()
            .filter(|r| r.is_integer())
            .and_then(|r| r.as_small())
            .map(|(k, _)| k as u64)
            .ok_or_else(|| Error::NotOnGrid { point: f.to_string(), denominator: n })?;
        NumberField::of(&values)?;
        Ok(FiniteGroupFunction { n, values, f, f_index })
    }

    pub fn denominator(&self) -> u64 {
        self.n
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn f(&self) -> &Scalar {
        &self.f
    }

    /// Index `k` with `f = k/n`.
    pub fn f_index(&self) -> u64 {
        self.f_index
    }

    /// Value at `k/n`, with `k` taken modulo `n`.
    pub fn value(&self, k: i64) -> &Scalar {
        &self.values[k.rem_euclid(self.n as i64) as usize]
    }

    /// Continuous piecewise linear interpolation through the values.
    pub fn interpolate(&self) -> PwlPeriodic {
        let n = self.n as i64;
        let bps = (0..n).map(|k| Scalar::ratio(k, n)).collect();
        PwlPeriodic::continuous(bps, self.values.clone(), self.f.clone())
            .expect("grid data is valid by construction")
    }
}
