//! Extremality of minimal functions with rational breakpoints.
//!
//! A minimal `pi` with breakpoints in `(1/q)Z` is extreme exactly when the
//! system of its tight relations on `(1/(4q))Z` has a unique solution. When it
//! does not, a kernel vector gives an explicit pair of minimal functions
//! averaging to `pi`.

pub mod coverage;
pub mod finite;
pub mod perturbation;
pub mod system;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::min_positive_delta;
use crate::minimality::check_minimality;
use crate::pwl::PwlPeriodic;
use crate::scalar::Scalar;

pub use coverage::{coverage_components, covered_intervals, interval_graph, CoverageReport, EdgeKind, GraphEdge};
pub use finite::finite_group_extreme;
pub use perturbation::{equivariant_perturbation, perturbation_from_kernel, psi, Witness};
pub use system::{build_system, coefficient_vector, kernel_basis, LinearSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Extreme,
    NotExtreme,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.plus)?;
        t.serialize_element(&self.minus)?;
        t.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalityVerdict {
    pub verdict: Verdict,
    pub kernel_dimension: usize,
    /// Smallest positive slack on the system grid.
    pub epsilon: Scalar,
    pub coverage: CoverageReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Built from the first uncovered component, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivariant_witness: Option<Witness>,
}

impl ExtremalityVerdict {
    pub fn is_extreme(&self) -> bool {
        self.verdict == Verdict::Extreme
    }
}

fn checked(w: Witness, what: &str) -> Result<Witness> {
    for side in [&w.plus, &w.minus] {
        let r = check_minimality(side);
        if !r.is_minimal() {
            return Err(Error::NotMinimal(format!("{what} witness fails the minimality test ({:?})", r.violations[0].kind)));
        }
    }
    Ok(w)
}

/// Decides extremality. Witnesses are re-checked for minimality before being returned.
pub fn is_extreme(pi: &PwlPeriodic) -> Result<ExtremalityVerdict> {
    let sys = build_system(pi)?;
    let coverage = coverage_components(pi)?;
    // A minimal function always has a strictly positive slack: otherwise it
    // would be additive, hence linear, contradicting pi(f) = 1 and pi(1) = 0.
    let epsilon = min_positive_delta(pi, sys.grid() as u64)?;
    let kernel = kernel_basis(&sys);
    if kernel.dimension == 0 {
        return Ok(ExtremalityVerdict {
            verdict: Verdict::Extreme,
            kernel_dimension: 0,
            epsilon,
            coverage,
            witness: None,
            equivariant_witness: None,
        });
    }
    let witness = checked(perturbation_from_kernel(pi, &sys, &kernel.vectors[0])?, "kernel")?;
    let equivariant_witness = match coverage.uncovered_components.first() {
        Some(c) => Some(checked(equivariant_perturbation(pi, &coverage, c)?, "equivariant")?),
        None => None,
    };
    Ok(ExtremalityVerdict {
        verdict: Verdict::NotExtreme,
        kernel_dimension: kernel.dimension,
        epsilon,
        coverage,
        witness: Some(witness),
        equivariant_witness,
    })
}
