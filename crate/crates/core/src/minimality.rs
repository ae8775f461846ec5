//! Finite minimality test over the function's own two-dimensional complex.

use serde::Serialize;

use crate::complex2d::{for_each_incidence, Face1D, FaceLabel};
use crate::pwl::{Location, PwlPeriodic};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Pi0,
    Fval,
    FNotBreakpoint,
    Subadditivity,
    Symmetry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face: Option<FaceLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<(Scalar, Scalar)>,
    pub slack: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalityVerdict {
    Minimal,
    NotMinimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub verdict: MinimalityVerdict,
    pub violations: Vec<Violation>,
    /// Number of (face, vertex) pairs examined.
    pub checked_vertex_count: usize,
    /// `pi(1) = 0`, which follows from `pi(0) = 0` and periodicity.
    pub value_at_one_is_zero: bool,
}

impl MinimalityReport {
    pub fn is_minimal(&self) -> bool {
        self.verdict == MinimalityVerdict::Minimal
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// True when `pi` is continuous at `f` with the same slope on both sides, so
/// `f` is not a genuine breakpoint.
fn affine_across_f(pi: &PwlPeriodic) -> bool {
    let Location::Point(i) = pi.locate(pi.f()) else {
        return true;
    };
    let n = pi.len();
    let prev = (i + n - 1) % n;
    pi.limits()[prev].1 == pi.values()[i] && pi.limits()[i].0 == pi.values()[i] && pi.slope(prev) == pi.slope(i)
}

pub fn check_minimality(pi: &PwlPeriodic) -> MinimalityReport {
    let mut violations = Vec::new();
    let zero = pi.eval(&Scalar::zero());
    if !zero.is_zero() {
        violations.push(Violation { kind: ViolationKind::Pi0, face: None, vertex: None, slack: zero });
    }
    let at_f = pi.eval(pi.f());
    if at_f != Scalar::one() {
        violations.push(Violation { kind: ViolationKind::Fval, face: None, vertex: None, slack: at_f - Scalar::one() });
    }
    if pi.len() > 1 && affine_across_f(pi) {
        violations.push(Violation {
            kind: ViolationKind::FNotBreakpoint,
            face: None,
            vertex: None,
            slack: Scalar::zero(),
        });
    }

    let n = pi.len();
    let f_index = match pi.locate(pi.f()) {
        Location::Point(i) => i,
        Location::Interior(_) => unreachable!("f is always a breakpoint"),
    };
    let symmetric = [Face1D::Point(f_index), Face1D::Point(f_index + n)];
    let mut pair_violations = Vec::new();
    let checked = for_each_incidence(pi, &mut |inc| {
        let sign = inc.slack.sign();
        let on_symmetry = symmetric.contains(&inc.label.sum_face);
        if sign < 0 {
            pair_violations.push((ViolationKind::Subadditivity, inc.label, inc.vertex.to_scalars(), inc.slack.to_scalar()));
        }
        if on_symmetry && sign != 0 {
            pair_violations.push((ViolationKind::Symmetry, inc.label, inc.vertex.to_scalars(), inc.slack.to_scalar()));
        }
    });
    pair_violations.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    violations.extend(pair_violations.into_iter().map(|(kind, face, vertex, slack)| Violation {
        kind,
        face: Some(face),
        vertex: Some(vertex),
        slack,
    }));

    let verdict = if violations.is_empty() { MinimalityVerdict::Minimal } else { MinimalityVerdict::NotMinimal };
    MinimalityReport {
        verdict,
        violations,
        checked_vertex_count: checked,
        value_at_one_is_zero: pi.eval(&Scalar::one()).is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn gmi_is_minimal() {
        let pi = PwlPeriodic::continuous(vec![s("0"), s("1/5")], vec![s("0"), s("1")], s("1/5")).unwrap();
        let r = check_minimality(&pi);
        assert!(r.is_minimal(), "{:?}", r.violations);
        assert!(r.value_at_one_is_zero);
    }

    #[test]
    fn sawtooth_breaks_symmetry() {
        let pi = PwlPeriodic::new(vec![s("0")], vec![s("0")], Some(vec![(s("0"), s("1"))]), s("1/2")).unwrap();
        let r = check_minimality(&pi);
        assert!(!r.is_minimal());
        assert!(r.count(ViolationKind::Symmetry) > 0);
        assert_eq!(r.count(ViolationKind::Fval), 1);
        assert!(r.violations.iter().all(|v| v.kind != ViolationKind::Subadditivity || v.slack.sign() < 0));
        assert!(r.violations.iter().all(|v| v.kind != ViolationKind::Symmetry || !v.slack.is_zero()));
    }

    #[test]
    fn f_inside_an_affine_piece() {
        // Continuous and affine across f = 1/3; the value there is 1 only by coincidence.
        let pi = PwlPeriodic::continuous(
            vec![s("0"), s("1/6"), s("1/2")],
            vec![s("0"), s("1/2"), s("3/2")],
            s("1/3"),
        )
        .unwrap();
        let r = check_minimality(&pi);
        assert_eq!(r.count(ViolationKind::FNotBreakpoint), 1);
    }

    #[test]
    fn nonzero_at_origin() {
        let pi = PwlPeriodic::continuous(vec![s("0"), s("1/2")], vec![s("1/10"), s("1")], s("1/2")).unwrap();
        let r = check_minimality(&pi);
        assert_eq!(r.count(ViolationKind::Pi0), 1);
        assert!(!r.value_at_one_is_zero);
    }
}
