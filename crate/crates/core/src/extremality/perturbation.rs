//! Perturbation witnesses `pi +- c * phi` for non-extreme functions.

use crate::error::{Error, Result};
use crate::grid::min_positive_delta;
use crate::pwl::PwlPeriodic;
use crate::scalar::{Rat, Scalar};

use super::coverage::CoverageReport;
use super::system::{function_from_vector, LinearSystem, REFINEMENT};

/// A pair of functions whose average is the original one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub plus: PwlPeriodic,
    pub minus: PwlPeriodic,
}

impl Witness {
    fn around(pi: &PwlPeriodic, direction: &PwlPeriodic, scale: &Scalar) -> Result<Self> {
        Ok(Witness {
            plus: pi.add_scaled(direction, scale)?.simplify(),
            minus: pi.add_scaled(direction, &-scale.clone())?.simplify(),
        })
    }

    /// True if the two functions differ and average to `pi`.
    pub fn averages_to(&self, pi: &PwlPeriodic) -> bool {
        let both = self.plus.add_scaled(&self.minus, &Scalar::one());
        let twice = pi.add_scaled(pi, &Scalar::one());
        let balanced = matches!((both, twice), (Ok(a), Ok(b)) if a.same_function(&b));
        balanced && !self.plus.same_function(&self.minus)
    }
}

/// Zigzag of period `1/q` through `(0,0), (1/(4q),1), (1/(2q),0), (3/(4q),-1)`.
pub fn psi(q: u64) -> Result<PwlPeriodic> {
    if q == 0 {
        return Err(Error::InvalidParameters("q must be positive".into()));
    }
    let n = (4 * q) as i64;
    let bps = (0..n).map(|k| Scalar::ratio(k, n)).collect();
    let values = (0..n).map(|k| Scalar::int([0, 1, 0, -1][(k % 4) as usize])).collect();
    PwlPeriodic::continuous(bps, values, Scalar::ratio(1, 2))
}

/// `psi(q)` on the listed intervals `[k/q, (k+1)/q]` and zero elsewhere, with the given `f`.
pub fn restricted_psi(q: u64, intervals: &[usize], f: &Scalar) -> Result<PwlPeriodic> {
    let n = (4 * q) as i64;
    let bps = (0..n).map(|k| Scalar::ratio(k, n)).collect();
    let values = (0..n)
        .map(|k| {
            let inside = intervals.contains(&((k / 4) as usize));
            Scalar::int(if inside { [0, 1, 0, -1][(k % 4) as usize] } else { 0 })
        })
        .collect();
    PwlPeriodic::continuous(bps, values, f.clone())
}

/// `pi +- eps/3 * psi` restricted to an uncovered component.
pub fn equivariant_perturbation(pi: &PwlPeriodic, coverage: &CoverageReport, component: &[usize]) -> Result<Witness> {
    if component.is_empty() {
        return Err(Error::NotUncovered("component is empty".into()));
    }
    let mut sorted = component.to_vec();
    sorted.sort_unstable();
    if !coverage.uncovered_components.contains(&sorted) {
        return Err(Error::NotUncovered(format!("{sorted:?} is not an uncovered component")));
    }
    let q = coverage.intervals as u64;
    let eps = min_positive_delta(pi, REFINEMENT * q)?;
    let bump = restricted_psi(q, &sorted, pi.f())?;
    Witness::around(pi, &bump, &(eps / Scalar::int(3)))
}

/// `pi +- eps / (3 |phi|) * phi` for the function `phi` of a kernel vector.
pub fn perturbation_from_kernel(pi: &PwlPeriodic, sys: &LinearSystem, kernel_vector: &[Rat]) -> Result<Witness> {
    let phi = function_from_vector(sys, kernel_vector, pi.f())?;
    let norm = phi.sup_norm();
    if norm.is_zero() {
        return Err(Error::ZeroKernelVector);
    }
    let eps = min_positive_delta(pi, sys.grid() as u64)?;
    Witness::around(pi, &phi, &(eps / (Scalar::int(3) * norm)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn psi_values() {
        let p = psi(5).unwrap();
        assert_eq!(p.eval(&s("1/20")), s("1"));
        assert_eq!(p.eval(&s("3/20")), s("-1"));
        assert_eq!(p.eval(&s("1/10")), s("0"));
        assert_eq!(p.one_sided_limit(&s("1/20"), crate::Side::At), s("1"));
        assert!(psi(0).is_err());
    }

    #[test]
    fn restricted_psi_is_local() {
        let r = restricted_psi(4, &[1], &s("1/2")).unwrap();
        assert_eq!(r.eval(&s("5/16")), s("1"));
        assert_eq!(r.eval(&s("1/16")), s("0"));
        assert_eq!(r.eval(&s("9/16")), s("0"));
        assert!(r.is_continuous());
    }
}
