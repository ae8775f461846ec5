//! Built-in functions: the Gomory mixed-integer function and a three-slope
//! family with two zigzag insertions, plus helpers for studying the orbit of
//! its flat interval.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::solve_square;
use crate::pwl::PwlPeriodic;
use crate::scalar::{NumberField, Scalar};

/// `x/f` on `[0,f]` and `(1-x)/(1-f)` on `[f,1]`.
pub fn gmi(f: &Scalar) -> Result<PwlPeriodic> {
    if f.sign() <= 0 || *f >= Scalar::one() {
        return Err(Error::InvalidParameters(format!("f must lie in (0,1), got {f}")));
    }
    PwlPeriodic::continuous(vec![Scalar::zero(), f.clone()], vec![Scalar::zero(), Scalar::one()], f.clone())
}

/// Free parameters of the three-slope construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeSlopeInput {
    pub f: Scalar,
    /// Total length of `[0,f]` with the positive slope.
    pub up_total: Scalar,
    /// Total length of `[0,f]` with the negative slope.
    pub down_total: Scalar,
    /// Length of the leading up-down pair; also the left end of the first zigzag.
    pub head: Scalar,
    /// Widths of the two zigzags.
    pub shifts: [Scalar; 2],
}

/// Input together with every derived quantity of the construction.
///
/// Lengths follow the order of the pieces on `[0,f]`: the head pair, the two
/// zigzags, a second up-down pair, the first flat piece, a middle up piece,
/// and then the mirror image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeSlopeParams {
    pub input: ThreeSlopeInput,
    pub flat_total: Scalar,
    pub slope_up: Scalar,
    pub slope_flat: Scalar,
    pub slope_down: Scalar,
    pub head_up: Scalar,
    pub head_down: Scalar,
    /// Second up-down pair before the zigzags are carved out of it.
    pub second_up: Scalar,
    pub second_down: Scalar,
    pub flat_piece: Scalar,
    pub middle_up: Scalar,
    /// Up and down parts of each zigzag; they cancel in value.
    pub zig_up: [Scalar; 2],
    pub zig_down: [Scalar; 2],
    /// Left ends of the head pair's image points: `a0`, `a0 + t1`, `a0 + t2`.
    pub anchors: [Scalar; 3],
    /// Translation lengths `t1 = shifts[0]`, `t2 = shifts[0] + shifts[1]`.
    pub translations: [Scalar; 2],
    pub flat_start: Scalar,
    pub flat_end: Scalar,
    pub flat_mid: Scalar,
    /// `f - flat_start - anchors[i]` for `i = 1, 2`.
    pub mirrored: [Scalar; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slope {
    Up,
    Flat,
    Down,
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!("violated: {what}")))
    }
}

impl ThreeSlopeParams {
    pub fn derive(input: ThreeSlopeInput) -> Result<Self> {
        let ThreeSlopeInput { f, up_total: d1, down_total: d3, head: s, shifts } = &input;
        NumberField::of([f, d1, d3, s, &shifts[0], &shifts[1]])?;
        let zero = Scalar::zero();
        let one = Scalar::one();
        let two = Scalar::int(2);
        require(f.sign() > 0 && *f < one, "0 < f < 1")?;
        require(d1.sign() > 0, "up_total > 0")?;
        require(d3.sign() > 0, "down_total > 0")?;
        let d2 = f - d1 - d3;
        require(d2.sign() > 0, "f - up_total - down_total > 0")?;

        let c3 = -(&one - f).recip();
        let c1 = (&one - &(d3 * &c3)) / d1;
        let c2 = zero.clone();
        require(c1 != c3, "distinct up and down slopes")?;

        let flat_piece = &d2 / &two;
        let middle_up = s - &flat_piece;
        // Makes pi(a0) + pi(A) = pi(a0 + A) with a0 + A = A0 + middle_up.
        let head_up = (&(&middle_up * &c1) - &(s * &c3)) / (&c1 - &c3);
        let head_down = s - &head_up;
        let second_up = (d1 - &(&two * &head_up) - &middle_up) / two.clone();
        let second_down = (d3 - &(&two * &head_down)) / two.clone();
        for (v, name) in [
            (&flat_piece, "flat piece > 0"),
            (&middle_up, "head > flat piece"),
            (&head_up, "head up length > 0"),
            (&head_down, "head down length > 0"),
            (&second_up, "second up length > 0"),
            (&second_down, "second down length > 0"),
        ] {
            require(v.sign() > 0, name)?;
        }

        for (k, d) in shifts.iter().enumerate() {
            require(d.sign() > 0, &format!("shift {} > 0", k + 1))?;
        }
        require(&shifts[0] + &shifts[1] < &flat_piece / &two, "shift 1 + shift 2 < flat piece / 2")?;
        let up_share = &c3 / &(&c3 - &c1);
        let down_share = -(&c1 / &(&c3 - &c1));
        let zig_up = [&up_share * &shifts[0], &up_share * &shifts[1]];
        let zig_down = [&down_share * &shifts[0], &down_share * &shifts[1]];
        require(
            &second_up - &zig_up[0] - &zig_up[1] > zero,
            "second up length exceeds the zigzag up parts",
        )?;
        require(
            &second_down - &zig_down[0] - &zig_down[1] > zero,
            "second down length exceeds the zigzag down parts",
        )?;

        let a0 = s.clone();
        let translations = [shifts[0].clone(), &shifts[0] + &shifts[1]];
        let anchors = [a0.clone(), &a0 + &translations[0], &a0 + &translations[1]];
        let flat_start = &a0 + &second_up + &second_down;
        let flat_end = &flat_start + &flat_piece;
        let flat_mid = (&flat_start + &flat_end) / two.clone();
        let mirrored = [f - &flat_start - &anchors[1], f - &flat_start - &anchors[2]];
        require(anchors[2] < flat_start, "a2 < A")?;
        require(&flat_start * &two < *f, "A < f/2")?;
        require(flat_end > mirrored[0], "A0 > A1")?;
        require(mirrored[0] > mirrored[1], "A1 > A2")?;
        require(mirrored[1] >= flat_mid, "A2 >= (A0 + A)/2")?;

        Ok(ThreeSlopeParams {
            input: input.clone(),
            flat_total: d2,
            slope_up: c1,
            slope_flat: c2,
            slope_down: c3,
            head_up,
            head_down,
            second_up,
            second_down,
            flat_piece,
            middle_up,
            zig_up,
            zig_down,
            anchors,
            translations,
            flat_start,
            flat_end,
            flat_mid,
            mirrored,
        })
    }

    fn pieces(&self) -> Vec<(Scalar, Slope)> {
        use Slope::*;
        let trimmed_up = &self.second_up - &self.zig_up[0] - &self.zig_up[1];
        let trimmed_down = &self.second_down - &self.zig_down[0] - &self.zig_down[1];
        vec![
            (self.head_up.clone(), Up),
            (self.head_down.clone(), Down),
            (self.zig_up[0].clone(), Up),
            (self.zig_down[0].clone(), Down),
            (self.zig_up[1].clone(), Up),
            (self.zig_down[1].clone(), Down),
            (trimmed_up.clone(), Up),
            (trimmed_down.clone(), Down),
            (self.flat_piece.clone(), Flat),
            (self.middle_up.clone(), Up),
            (self.flat_piece.clone(), Flat),
            (trimmed_down, Down),
            (trimmed_up, Up),
            (self.zig_down[1].clone(), Down),
            (self.zig_up[1].clone(), Up),
            (self.zig_down[0].clone(), Down),
            (self.zig_up[0].clone(), Up),
            (self.head_down.clone(), Down),
            (self.head_up.clone(), Up),
            (Scalar::one() - &self.input.f, Down),
        ]
    }

    /// Lengths of the consecutive pieces starting at 0.
    pub fn piece_lengths(&self) -> Vec<Scalar> {
        self.pieces().into_iter().map(|(l, _)| l).collect()
    }

    fn slope(&self, s: Slope) -> &Scalar {
        match s {
            Slope::Up => &self.slope_up,
            Slope::Flat => &self.slope_flat,
            Slope::Down => &self.slope_down,
        }
    }

    pub fn build(&self) -> Result<PwlPeriodic> {
        let mut breakpoints = Vec::new();
        let mut values = Vec::new();
        let (mut x, mut y) = (Scalar::zero(), Scalar::zero());
        for (len, s) in self.pieces() {
            breakpoints.push(x.clone());
            values.push(y.clone());
            y = &y + &(&len * self.slope(s));
            x = &x + &len;
        }
        if x != Scalar::one() || !y.is_zero() {
            return Err(Error::InvalidParameters(format!("pieces end at ({x}, {y}) instead of (1, 0)")));
        }
        PwlPeriodic::continuous(breakpoints, values, self.input.f.clone())
    }
}

/// Builds the three-slope function and returns it with its derived parameters.
pub fn three_slope(input: ThreeSlopeInput) -> Result<(PwlPeriodic, ThreeSlopeParams)> {
    let params = ThreeSlopeParams::derive(input)?;
    Ok((params.build()?, params))
}

/// Coefficients of the slope system: total value at `f`, total value at 1,
/// and the additivity relation at the head pair, applied to the three slopes.
pub fn slope_matrix(p: &ThreeSlopeParams) -> [[Scalar; 3]; 3] {
    let d1 = &p.input.up_total;
    let d3 = &p.input.down_total;
    let tail = Scalar::one() - &p.input.f;
    [
        [d1.clone(), p.flat_total.clone(), d3.clone()],
        [d1.clone(), p.flat_total.clone(), d3 + &tail],
        [&p.head_up - &p.middle_up, -p.flat_piece.clone(), p.head_down.clone()],
    ]
}

/// Solves the slope system against `(1, 0, 0)`. `None` means it is singular.
pub fn verify_slope_system(p: &ThreeSlopeParams) -> Option<[Scalar; 3]> {
    let a = slope_matrix(p).into_iter().map(|r| r.to_vec()).collect();
    let b = vec![Scalar::one(), Scalar::zero(), Scalar::zero()];
    solve_square(a, b).map(|c| [c[0].clone(), c[1].clone(), c[2].clone()])
}

/// Points `x0 + l1*t1 + l2*t2` with `|l1| + |l2| <= depth` inside the closed
/// window, sorted and without repeats.
pub fn orbit_sample(x0: &Scalar, t1: &Scalar, t2: &Scalar, depth: u32, window: (&Scalar, &Scalar)) -> Vec<Scalar> {
    let l = depth as i64;
    let mut out = Vec::new();
    for l1 in -l..=l {
        let rest = l - l1.abs();
        for l2 in -rest..=rest {
            let x = x0 + &(t1 * &Scalar::int(l1)) + (t2 * &Scalar::int(l2));
            if *window.0 <= x && x <= *window.1 {
                out.push(x);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Largest distance between consecutive sorted points.
pub fn max_gap(points: &[Scalar]) -> Option<Scalar> {
    points.windows(2).map(|w| &w[1] - &w[0]).max()
}
