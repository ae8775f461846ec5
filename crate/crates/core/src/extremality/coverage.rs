//! Covered intervals and the interval graph on the breakpoint grid `(1/q)Z`.
//!
//! Interval `k` is `[k/q, (k+1)/q]`, taken modulo 1. A lower triangle
//! `T_lo(i,j)` has vertices `(i,j), (i+1,j), (i,j+1)` and sum interval `i+j`;
//! an upper triangle `T_up(i,j)` has vertices `(i+1,j), (i,j+1), (i+1,j+1)`
//! and sum interval `i+j+1`.

use std::collections::BTreeSet;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::Result;
use crate::grid::GridSlots;
use crate::pwl::{PwlPeriodic, Side};
use crate::scalar::Scalar;

use Side::{At as A, Left as L, Right as R};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Reflection,
    Translation,
}

/// `interval_b` is the image of `interval_a` under `x -> pivot - x` or `x -> x + pivot`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GraphEdge {
    pub interval_a: usize,
    pub interval_b: usize,
    pub kind: EdgeKind,
    /// Reduced modulo 1.
    pub pivot: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    /// Number of intervals `q`.
    pub intervals: usize,
    pub covered: Vec<usize>,
    pub edges: Vec<GraphEdge>,
    pub components: Vec<Vec<usize>>,
    pub fully_covered: bool,
    pub uncovered_components: Vec<Vec<usize>>,
}

/// A vertex `(i, j)` read with the given sides.
type Corner = (usize, usize, [Side; 3]);

struct Tightness {
    slots: GridSlots,
    q: usize,
}

impl Tightness {
    fn new(pi: &PwlPeriodic) -> Result<Self> {
        let q = pi.grid_denominator()?;
        Ok(Tightness { slots: GridSlots::new(pi, q)?, q: q as usize })
    }

    fn tight(&self, corners: &[Corner]) -> bool {
        corners.iter().all(|&(i, j, s)| self.slots.is_tight(i, s[0], j, s[1], i + j, s[2]))
    }

    fn lower(&self, i: usize, j: usize) -> [Corner; 3] {
        [(i, j, [R, R, R]), (i + 1, j, [L, R, L]), (i, j + 1, [R, L, L])]
    }

    fn upper(&self, i: usize, j: usize) -> [Corner; 3] {
        [(i + 1, j, [L, R, R]), (i, j + 1, [R, L, R]), (i + 1, j + 1, [L, L, L])]
    }

    /// Faces containing the 1-face from `a` to `b`, as the sides to read at `a`
    /// and at `b`; the edge is tight if any face vanishes at both ends.
    fn any_tight(&self, a: (usize, usize), b: (usize, usize), faces: &[([Side; 3], [Side; 3])]) -> bool {
        faces.iter().any(|&(sa, sb)| self.tight(&[(a.0, a.1, sa), (b.0, b.1, sb)]))
    }
}

fn covered_from(t: &Tightness) -> BTreeSet<usize> {
    let q = t.q;
    let mut covered = BTreeSet::new();
    for i in 0..q {
        for j in 0..q {
            if t.tight(&t.lower(i, j)) {
                covered.extend([i, j, (i + j) % q]);
            }
            if t.tight(&t.upper(i, j)) {
                covered.extend([i, j, (i + j + 1) % q]);
            }
        }
    }
    covered
}

fn edges_from(t: &Tightness) -> BTreeSet<GraphEdge> {
    let q = t.q;
    let qi = q as i64;
    let mut edges = BTreeSet::new();
    let mut add = |a: usize, b: usize, kind: EdgeKind, pivot: usize| {
        let (a, b) = (a % q, b % q);
        if a != b {
            let (a, b) = (a.min(b), a.max(b));
            edges.insert(GraphEdge { interval_a: a, interval_b: b, kind, pivot: Scalar::ratio((pivot % q) as i64, qi) });
        }
    };
    for i in 0..q {
        for j in 0..=q {
            // Horizontal edge at height j: x in interval i, x + y in interval i + j.
            let mut faces = vec![([R, A, R], [L, A, L])];
            if j < q {
                faces.push(([R, R, R], [L, R, L]));
            }
            if j >= 1 {
                faces.push(([R, L, R], [L, L, L]));
            }
            if t.any_tight((i, j), (i + 1, j), &faces) {
                add(i, i + j, EdgeKind::Translation, j);
            }
            // Vertical edge at x = j: y in interval i, x + y in interval i + j.
            let mut faces = vec![([A, R, R], [A, L, L])];
            if j < q {
                faces.push(([R, R, R], [R, L, L]));
            }
            if j >= 1 {
                faces.push(([L, R, R], [L, L, L]));
            }
            if t.any_tight((j, i), (j, i + 1), &faces) {
                add(i, i + j, EdgeKind::Translation, j);
            }
        }
        for j in 0..q {
            // Anti-diagonal edge from (i+1, j) to (i, j+1) on x + y = (i+j+1)/q.
            let faces = [([L, R, A], [R, L, A]), ([L, R, L], [R, L, L]), ([L, R, R], [R, L, R])];
            if t.any_tight((i + 1, j), (i, j + 1), &faces) {
                add(i, j, EdgeKind::Reflection, i + j + 1);
            }
        }
    }
    edges
}

fn report(q: usize, covered: BTreeSet<usize>, edges: BTreeSet<GraphEdge>) -> CoverageReport {
    let mut uf = UnionFind::<usize>::new(q);
    for e in &edges {
        uf.union(e.interval_a, e.interval_b);
    }
    let labels = uf.into_labeling();
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for k in 0..q {
        groups.entry(labels[k]).or_default().push(k);
    }
    let mut components: Vec<Vec<usize>> = groups.into_values().collect();
    components.sort();
    let uncovered_components: Vec<Vec<usize>> =
        components.iter().filter(|c| !c.iter().any(|k| covered.contains(k))).cloned().collect();
    CoverageReport {
        intervals: q,
        covered: covered.into_iter().collect(),
        edges: edges.into_iter().collect(),
        fully_covered: uncovered_components.is_empty(),
        components,
        uncovered_components,
    }
}

/// Intervals that are a projection of some additive triangle.
pub fn covered_intervals(pi: &PwlPeriodic) -> Result<BTreeSet<usize>> {
    Ok(covered_from(&Tightness::new(pi)?))
}

/// Edges of the interval graph, deduplicated and sorted.
pub fn interval_graph(pi: &PwlPeriodic) -> Result<Vec<GraphEdge>> {
    Ok(edges_from(&Tightness::new(pi)?).into_iter().collect())
}

pub fn coverage_components(pi: &PwlPeriodic) -> Result<CoverageReport> {
    let t = Tightness::new(pi)?;
    Ok(report(t.q, covered_from(&t), edges_from(&t)))
}
