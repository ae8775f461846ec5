//! Fast evaluation of slacks on the uniform grid complex `(1/N)Z`.
//!
//! On a uniform grid every vertex is `(i/N, j/N)` and `x + y` is again a grid
//! point, so every slack is a sum of three table lookups.

use crate::complex2d::{Face1D, FaceLabel, Slack, STAR};
use crate::error::{Error, Result};
use crate::pwl::{PwlPeriodic, Side};
use crate::scalar::{lcm_denominator, Rat, Scalar};

enum Store {
    Scaled { den: i64, at: Vec<i64>, right: Vec<i64>, left: Vec<i64> },
    Exact { at: Vec<Scalar>, right: Vec<Scalar>, left: Vec<Scalar> },
}

/// Point values and one-sided limits at `k/N` for `k = 0..N`. The left limit
/// stored at index 0 is the left limit at 1.
pub struct GridSlots {
    n: usize,
    store: Store,
}

const VALUE_LIMIT: i64 = i64::MAX / 8;

impl GridSlots {
    /// Fails unless every breakpoint of `pi` lies on `(1/n)Z`.
    pub fn new(pi: &PwlPeriodic, n: u64) -> Result<Self> {
        let refined = pi.refine_to_grid(n)?;
        let len = n as usize;
        let at: Vec<Scalar> = refined.values().to_vec();
        let right: Vec<Scalar> = refined.limits().iter().map(|l| l.0.clone()).collect();
        let left: Vec<Scalar> = (0..len).map(|k| refined.limits()[(k + len - 1) % len].1.clone()).collect();
        let scaled = || -> Option<Store> {
            let den = i64::try_from(lcm_denominator(at.iter().chain(&right).chain(&left)).ok()?).ok()?;
            let d = Rat::from_int(den);
            let scale = |xs: &[Scalar]| -> Option<Vec<i64>> {
                xs.iter()
                    .map(|x| {
                        let (k, _) = (x.as_rat()? * &d).as_small()?;
                        (k.abs() <= VALUE_LIMIT).then_some(k)
                    })
                    .collect()
            };
            Some(Store::Scaled { den, at: scale(&at)?, right: scale(&right)?, left: scale(&left)? })
        };
        let store = match scaled() {
            Some(s) => s,
            None => Store::Exact { at, right, left },
        };
        Ok(GridSlots { n: len, store })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Slack `pi(x) + pi(y) - pi(x+y)` read with the given sides at
    /// `x = i/N`, `y = j/N`, `x + y = s/N`.
    pub fn slack(&self, i: usize, sx: Side, j: usize, sy: Side, s: usize, sz: Side) -> Slack {
        let n = self.n;
        match &self.store {
            Store::Scaled { den, at, right, left } => {
                let get = |k: usize, side: Side| match side {
                    Side::At => at[k % n],
                    Side::Right => right[k % n],
                    Side::Left => left[k % n],
                };
                Slack::Scaled { num: get(i, sx) + get(j, sy) - get(s, sz), den: *den }
            }
            Store::Exact { at, right, left } => {
                let get = |k: usize, side: Side| match side {
                    Side::At => &at[k % n],
                    Side::Right => &right[k % n],
                    Side::Left => &left[k % n],
                };
                Slack::Exact(get(i, sx) + get(j, sy) - get(s, sz))
            }
        }
    }

    /// True if the slack vanishes; avoids building scalars on the fast path.
    pub fn is_tight(&self, i: usize, sx: Side, j: usize, sy: Side, s: usize, sz: Side) -> bool {
        self.slack(i, sx, j, sy, s, sz).sign() == 0
    }

    /// Visits every vertex `(i, j)` of the grid complex in `[0,1]^2` with each
    /// star pattern that stays inside the square.
    pub fn for_each_star(&self, mut visit: impl FnMut(usize, usize, usize, Slack)) {
        let n = self.n;
        for i in 0..=n {
            for j in 0..=n {
                for (p, sides) in STAR.iter().enumerate() {
                    if pattern_allowed(i, j, n, sides) {
                        visit(i, j, p, self.slack(i, sides[0], j, sides[1], i + j, sides[2]));
                    }
                }
            }
        }
    }
}

/// Excludes patterns that leave `[0,1]^2`.
pub fn pattern_allowed(i: usize, j: usize, n: usize, sides: &[Side; 3]) -> bool {
    !(i == 0 && sides[0] == Side::Left
        || i == n && sides[0] == Side::Right
        || j == 0 && sides[1] == Side::Left
        || j == n && sides[1] == Side::Right)
}

/// Face of the grid complex meeting grid index `k` on the given side.
pub fn grid_face(k: usize, side: Side) -> Face1D {
    match side {
        Side::At => Face1D::Point(k),
        Side::Right => Face1D::Edge(k),
        Side::Left => Face1D::Edge(k - 1),
    }
}

pub fn star_label(i: usize, j: usize, sides: &[Side; 3]) -> FaceLabel {
    FaceLabel { x_face: grid_face(i, sides[0]), y_face: grid_face(j, sides[1]), sum_face: grid_face(i + j, sides[2]) }
}

/// Smallest strictly positive slack over all (face, vertex) pairs of the grid
/// complex `(1/n)Z` in `[0,1]^2`.
pub fn min_positive_delta(pi: &PwlPeriodic, n: u64) -> Result<Scalar> {
    let slots = GridSlots::new(pi, n)?;
    let mut best: Option<Slack> = None;
    slots.for_each_star(|_, _, _, slack| {
        if slack.sign() > 0 {
            let better = match (&best, &slack) {
                (None, _) => true,
                (Some(Slack::Scaled { num: b, .. }), Slack::Scaled { num: c, .. }) => c < b,
                (Some(b), c) => c.to_scalar() < b.to_scalar(),
            };
            if better {
                best = Some(slack);
            }
        }
    });
    best.map(|s| s.to_scalar()).ok_or(Error::EverywhereAdditive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex2d::for_each_incidence;
    use std::collections::BTreeSet;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn gmi5() -> PwlPeriodic {
        PwlPeriodic::continuous(vec![s("0"), s("1/5")], vec![s("0"), s("1")], s("1/5")).unwrap()
    }

    #[test]
    fn grid_walk_matches_general_walk() {
        let pi = gmi5();
        let refined = pi.refine_to_grid(10).unwrap();
        let mut general = BTreeSet::new();
        for_each_incidence(&refined, &mut |inc| {
            general.insert((inc.label, inc.vertex.to_scalars(), inc.slack.to_scalar()));
        });
        let slots = GridSlots::new(&pi, 10).unwrap();
        let mut fast = BTreeSet::new();
        slots.for_each_star(|i, j, p, slack| {
            fast.insert((star_label(i, j, &STAR[p]), (Scalar::ratio(i as i64, 10), Scalar::ratio(j as i64, 10)), slack.to_scalar()));
        });
        assert_eq!(general, fast);
    }

    #[test]
    fn min_positive_delta_examples() {
        let pi = gmi5();
        // Values from a brute-force scan of pi(i/N) + pi(j/N) - pi((i+j)/N).
        let eps = min_positive_delta(&pi, 20).unwrap();
        assert_eq!(eps, s("5/16"));
        // Refining adds vertices inside faces where the affine slack is smaller.
        let finer = min_positive_delta(&pi, 40).unwrap();
        assert_eq!(finer, s("5/32"));
        assert!(finer <= eps);
        let zero = PwlPeriodic::zero(s("1/2")).unwrap();
        assert_eq!(min_positive_delta(&zero, 4), Err(Error::EverywhereAdditive));
    }
}
