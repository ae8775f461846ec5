//! The two-dimensional complex built from vertical lines `x in B`, horizontal
//! lines `y in B` and diagonal lines `x + y in B`, restricted to `[0,1]^2`.
//!
//! A face is `F(I,J,K) = {(x,y) : x in I, y in J, x+y in K}` where `I`, `J` are
//! faces of the breakpoint complex on `[0,1]` and `K` is a face on `[0,2]`.
//! Faces are labelled by the smallest such `I`, `J`, `K`, so that the relative
//! interior of `F` projects into the relative interiors of its labels.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pwl::{PwlPeriodic, Side};
use crate::scalar::{lcm_denominator, Rat, Scalar};

/// A face of the breakpoint complex: a breakpoint or the interval after it.
///
/// On `[0,1]` points run over `0..=n` (index `n` is 1) and edges over `0..n`.
/// On `[0,2]` points run over `0..=2n` and edges over `0..2n`, index `k >= n`
/// being the translate by 1 of index `k - n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Face1D {
    Point(usize),
    Edge(usize),
}

/// The `(I, J, K)` labels of a two-dimensional face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FaceLabel {
    pub x_face: Face1D,
    pub y_face: Face1D,
    pub sum_face: Face1D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face2D {
    pub label: FaceLabel,
    pub vertices: Vec<(Scalar, Scalar)>,
}

impl Face2D {
    pub fn dimension(&self) -> usize {
        match self.vertices.len() {
            0 | 1 => 0,
            2 => 1,
            _ => 2,
        }
    }
}

/// Breakpoints on `[0,1]` (with 1 appended) and on `[0,2]`.
#[derive(Clone, Debug)]
pub struct Breaks {
    n: usize,
    unit: Vec<Scalar>,
    double: Vec<Scalar>,
}

impl Breaks {
    pub fn new(breakpoints: &[Scalar]) -> Self {
        let n = breakpoints.len();
        let mut unit = breakpoints.to_vec();
        unit.push(Scalar::one());
        let mut double = breakpoints.to_vec();
        double.extend(breakpoints.iter().map(|x| x + &Scalar::one()));
        double.push(Scalar::int(2));
        Breaks { n, unit, double }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Faces of the complex on `[0,1]` (`double == false`) or `[0,2]`.
    pub fn faces(&self, double: bool) -> Vec<Face1D> {
        let m = if double { 2 * self.n } else { self.n };
        let mut out = Vec::with_capacity(2 * m + 1);
        for k in 0..m {
            out.push(Face1D::Point(k));
            out.push(Face1D::Edge(k));
        }
        out.push(Face1D::Point(m));
        out
    }

    fn coords(&self, double: bool) -> &[Scalar] {
        if double {
            &self.double
        } else {
            &self.unit
        }
    }

    /// Closed interval `[lo, hi]` of a face.
    pub fn bounds(&self, face: Face1D, double: bool) -> (Scalar, Scalar) {
        let xs = self.coords(double);
        match face {
            Face1D::Point(k) => (xs[k].clone(), xs[k].clone()),
            Face1D::Edge(k) => (xs[k].clone(), xs[k + 1].clone()),
        }
    }

    /// Smallest face containing `[a, b]`, which must lie in the covered range.
    pub fn smallest_face(&self, a: &Scalar, b: &Scalar, double: bool) -> Face1D {
        let xs = self.coords(double);
        match xs.binary_search(a) {
            Ok(k) if a == b => Face1D::Point(k),
            Ok(k) => Face1D::Edge(k),
            Err(k) => Face1D::Edge(k - 1),
        }
    }
}

fn in_closed(x: &Scalar, lo: &Scalar, hi: &Scalar) -> bool {
    lo <= x && x <= hi
}

fn cross(o: &(Scalar, Scalar), a: &(Scalar, Scalar), b: &(Scalar, Scalar)) -> Scalar {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Extreme points of a finite planar point set, counter-clockwise.
fn convex_hull(mut pts: Vec<(Scalar, Scalar)>) -> Vec<(Scalar, Scalar)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(Scalar, Scalar)> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).sign() <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<(Scalar, Scalar)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).sign() <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Vertices of `{x in [i_lo,i_hi], y in [j_lo,j_hi], x+y in [k_lo,k_hi]}`.
pub fn face_vertices(
    i: (&Scalar, &Scalar),
    j: (&Scalar, &Scalar),
    k: (&Scalar, &Scalar),
) -> Result<Vec<(Scalar, Scalar)>> {
    let (ilo, ihi) = i;
    let (jlo, jhi) = j;
    let (klo, khi) = k;
    let mut cand = Vec::new();
    for x in [ilo, ihi] {
        for y in [jlo, jhi] {
            if in_closed(&(x + y), klo, khi) {
                cand.push((x.clone(), y.clone()));
            }
        }
    }
    for s in [klo, khi] {
        for x in [ilo, ihi] {
            let y = s - x;
            if in_closed(&y, jlo, jhi) {
                cand.push((x.clone(), y));
            }
        }
        for y in [jlo, jhi] {
            let x = s - y;
            if in_closed(&x, ilo, ihi) {
                cand.push((x, y.clone()));
            }
        }
    }
    if cand.is_empty() {
        return Err(Error::EmptyFace);
    }
    Ok(convex_hull(cand))
}

/// All faces of the complex inside `[0,1]^2`, each under its smallest labels.
pub fn enumerate_faces(breakpoints: &[Scalar]) -> Vec<Face2D> {
    let b = Breaks::new(breakpoints);
    let unit_faces = b.faces(false);
    let double_faces = b.faces(true);
    let mut out = Vec::new();
    for &fi in &unit_faces {
        let (ilo, ihi) = b.bounds(fi, false);
        for &fj in &unit_faces {
            let (jlo, jhi) = b.bounds(fj, false);
            let lo = &ilo + &jlo;
            let hi = &ihi + &jhi;
            // Sum faces whose interval meets [lo, hi].
            let start = double_faces.partition_point(|&fk| b.bounds(fk, true).1 < lo);
            for &fk in &double_faces[start..] {
                let (klo, khi) = b.bounds(fk, true);
                if klo > hi {
                    break;
                }
                let Ok(vertices) = face_vertices((&ilo, &ihi), (&jlo, &jhi), (&klo, &khi)) else {
                    continue;
                };
                let xmin = vertices.iter().map(|p| &p.0).min().unwrap();
                let xmax = vertices.iter().map(|p| &p.0).max().unwrap();
                let ymin = vertices.iter().map(|p| &p.1).min().unwrap();
                let ymax = vertices.iter().map(|p| &p.1).max().unwrap();
                let sums: Vec<Scalar> = vertices.iter().map(|(x, y)| x + y).collect();
                let smin = sums.iter().min().unwrap();
                let smax = sums.iter().max().unwrap();
                if b.smallest_face(xmin, xmax, false) != fi
                    || b.smallest_face(ymin, ymax, false) != fj
                    || b.smallest_face(smin, smax, true) != fk
                {
                    continue;
                }
                out.push(Face2D { label: FaceLabel { x_face: fi, y_face: fj, sum_face: fk }, vertices });
            }
        }
    }
    out
}

/// Value at `x` of the affine function attached to a face of the complex.
pub fn face_value(pi: &PwlPeriodic, face: Face1D, x: &Scalar) -> Scalar {
    let n = pi.len();
    match face {
        Face1D::Point(k) => pi.point_value(k % n).clone(),
        Face1D::Edge(k) => {
            if k >= n {
                pi.piece_value(k - n, &(x - &Scalar::one()))
            } else {
                pi.piece_value(k, x)
            }
        }
    }
}

/// `pi_I(u) + pi_J(v) - pi_K(u+v)`.
#[allow(non_snake_case)]
pub fn delta_pi_F(pi: &PwlPeriodic, label: &FaceLabel, u: &Scalar, v: &Scalar) -> Scalar {
    face_value(pi, label.x_face, u) + face_value(pi, label.y_face, v) - face_value(pi, label.sum_face, &(u + v))
}

/// Faces on which the slack vanishes identically.
pub fn additive_faces(pi: &PwlPeriodic) -> Vec<Face2D> {
    enumerate_faces(pi.breakpoints())
        .into_iter()
        .filter(|f| f.vertices.iter().all(|(u, v)| delta_pi_F(pi, &f.label, u, v).is_zero()))
        .collect()
}

/// Side combinations `(x, y, x+y)` of the faces meeting at a vertex where all
/// three coordinates are breakpoints. `Right` means the face extends to larger
/// values of that coordinate.
pub const STAR: [[Side; 3]; 13] = {
    use Side::{At as A, Left as L, Right as R};
    [
        [A, A, A],
        [R, A, R],
        [L, A, L],
        [A, R, R],
        [A, L, L],
        [R, L, A],
        [L, R, A],
        [R, R, R],
        [L, L, L],
        [R, L, L],
        [R, L, R],
        [L, R, L],
        [L, R, R],
    ]
};

/// Position of a coordinate in the breakpoint complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Position {
    Break(usize),
    Inside(usize),
}

impl Position {
    fn face(self, side: Side) -> Face1D {
        match (self, side) {
            (Position::Break(k), Side::At) => Face1D::Point(k),
            (Position::Break(k), Side::Right) => Face1D::Edge(k),
            (Position::Break(k), Side::Left) => Face1D::Edge(k - 1),
            (Position::Inside(e), _) => Face1D::Edge(e),
        }
    }
}

/// Coordinates handled by the vertex walk: integers over a common denominator
/// when the breakpoints are rational, exact scalars otherwise.
trait Coord: Clone + Ord {
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn to_scalar(&self, den: i64) -> Scalar;
    fn vertex<'a>(u: &'a Self, v: &'a Self, den: i64) -> VertexRef<'a>;
}

impl Coord for i64 {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn to_scalar(&self, den: i64) -> Scalar {
        Scalar::ratio(*self, den)
    }
    fn vertex<'a>(u: &'a Self, v: &'a Self, den: i64) -> VertexRef<'a> {
        VertexRef::Grid { u: *u, v: *v, den }
    }
}

impl Coord for Scalar {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn to_scalar(&self, _den: i64) -> Scalar {
        self.clone()
    }
    fn vertex<'a>(u: &'a Self, v: &'a Self, _den: i64) -> VertexRef<'a> {
        VertexRef::Exact { u, v }
    }
}

/// A vertex of the complex, in whichever coordinates the walk used.
#[derive(Clone, Copy, Debug)]
pub enum VertexRef<'a> {
    Grid { u: i64, v: i64, den: i64 },
    Exact { u: &'a Scalar, v: &'a Scalar },
}

impl VertexRef<'_> {
    pub fn to_scalars(&self) -> (Scalar, Scalar) {
        match self {
            VertexRef::Grid { u, v, den } => (Scalar::ratio(*u, *den), Scalar::ratio(*v, *den)),
            VertexRef::Exact { u, v } => ((*u).clone(), (*v).clone()),
        }
    }
}

/// Slack of a face at a vertex, kept as a scaled integer when possible.
#[derive(Clone, Debug)]
pub enum Slack {
    Scaled { num: i64, den: i64 },
    Exact(Scalar),
}

impl Slack {
    pub fn sign(&self) -> i32 {
        match self {
            Slack::Scaled { num, .. } => num.signum() as i32,
            Slack::Exact(s) => s.sign(),
        }
    }

    pub fn to_scalar(&self) -> Scalar {
        match self {
            Slack::Scaled { num, den } => Scalar::ratio(*num, *den),
            Slack::Exact(s) => s.clone(),
        }
    }
}

/// One (face, vertex) incidence together with the slack there.
#[derive(Clone, Debug)]
pub struct Incidence<'a> {
    pub vertex: VertexRef<'a>,
    pub label: FaceLabel,
    pub slack: Slack,
}

/// Point values and one-sided limits at the breakpoints of `[0,1)`, scaled to
/// integers by a common denominator when everything fits.
struct ValueTable {
    den: i64,
    at: Vec<i64>,
    right: Vec<i64>,
    left: Vec<i64>,
}

const VALUE_LIMIT: i64 = i64::MAX / 8;

impl ValueTable {
    fn new(pi: &PwlPeriodic) -> Option<Self> {
        let n = pi.len();
        let left: Vec<Scalar> = (0..n).map(|k| pi.limits()[(k + n - 1) % n].1.clone()).collect();
        let right: Vec<Scalar> = pi.limits().iter().map(|l| l.0.clone()).collect();
        let all = pi.values().iter().chain(&right).chain(&left);
        let den = i64::try_from(lcm_denominator(all).ok()?).ok()?;
        let d = Rat::from_int(den);
        let scale = |xs: &[Scalar]| -> Option<Vec<i64>> {
            xs.iter()
                .map(|x| {
                    let (k, _) = (x.as_rat()? * &d).as_small()?;
                    (k.abs() <= VALUE_LIMIT).then_some(k)
                })
                .collect()
        };
        Some(ValueTable { den, at: scale(pi.values())?, right: scale(&right)?, left: scale(&left)? })
    }

    fn get(&self, k: usize, side: Side) -> i64 {
        let n = self.at.len();
        match side {
            Side::At => self.at[k % n],
            Side::Right => self.right[k % n],
            Side::Left => self.left[k % n],
        }
    }
}

struct Walk<'p, C> {
    pi: &'p PwlPeriodic,
    n: usize,
    unit: Vec<C>,
    double: Vec<C>,
    table: Option<ValueTable>,
    den: i64,
}

impl<C: Coord> Walk<'_, C> {
    fn value(&self, pos: Position, side: Side, coord: &C) -> Scalar {
        let n = self.n;
        match pos {
            Position::Break(k) => match side {
                Side::At => self.pi.point_value(k % n).clone(),
                Side::Right => self.pi.limits()[k % n].0.clone(),
                Side::Left => self.pi.limits()[(k + n - 1) % n].1.clone(),
            },
            Position::Inside(e) => {
                let x = coord.to_scalar(self.den);
                if e >= n {
                    self.pi.piece_value(e - n, &(x - Scalar::one()))
                } else {
                    self.pi.piece_value(e, &x)
                }
            }
        }
    }

    fn visit_vertex(
        &self,
        u: &C,
        v: &C,
        pos: [Position; 3],
        visit: &mut dyn FnMut(&Incidence<'_>),
    ) {
        let vertex = C::vertex(u, v, self.den);
        let [px, py, pz] = pos;
        let mut seen: [Option<FaceLabel>; 13] = [None; 13];
        let mut count = 0;
        let z = u.plus(v);
        for sides in &STAR {
            if px == Position::Break(0) && sides[0] == Side::Left
                || px == Position::Break(self.n) && sides[0] == Side::Right
                || py == Position::Break(0) && sides[1] == Side::Left
                || py == Position::Break(self.n) && sides[1] == Side::Right
            {
                continue;
            }
            let label = FaceLabel { x_face: px.face(sides[0]), y_face: py.face(sides[1]), sum_face: pz.face(sides[2]) };
            if seen[..count].contains(&Some(label)) {
                continue;
            }
            seen[count] = Some(label);
            count += 1;
            let slack = match (&self.table, px, py, pz) {
                (Some(t), Position::Break(a), Position::Break(b), Position::Break(c)) => Slack::Scaled {
                    num: t.get(a, sides[0]) + t.get(b, sides[1]) - t.get(c, sides[2]),
                    den: t.den,
                },
                _ => Slack::Exact(
                    self.value(px, sides[0], u) + self.value(py, sides[1], v) - self.value(pz, sides[2], &z),
                ),
            };
            visit(&Incidence { vertex, label, slack });
        }
    }

    fn run(&self, visit: &mut dyn FnMut(&Incidence<'_>)) {
        let n = self.n;
        let zero = &self.unit[0];
        let one = &self.unit[n];
        // Vertices where both coordinates are breakpoints.
        for i in 0..=n {
            let u = &self.unit[i];
            let mut p = 0usize;
            for j in 0..=n {
                let v = &self.unit[j];
                let z = u.plus(v);
                while p + 1 < self.double.len() && self.double[p + 1] <= z {
                    p += 1;
                }
                let pz = if self.double[p] == z { Position::Break(p) } else { Position::Inside(p) };
                self.visit_vertex(u, v, [Position::Break(i), Position::Break(j), pz], visit);
            }
        }
        // One coordinate on a breakpoint, the other on a diagonal line.
        for fixed_is_x in [true, false] {
            for i in 0..=n {
                let a = &self.unit[i];
                let mut p = 0usize;
                for (k, w) in self.double.iter().enumerate() {
                    let b = w.minus(a);
                    if b < *zero {
                        continue;
                    }
                    if b > *one {
                        break;
                    }
                    while p + 1 <= n && self.unit[p + 1] <= b {
                        p += 1;
                    }
                    if self.unit[p] == b {
                        continue;
                    }
                    let (u, v, pos) = if fixed_is_x {
                        (a, &b, [Position::Break(i), Position::Inside(p), Position::Break(k)])
                    } else {
                        (&b, a, [Position::Inside(p), Position::Break(i), Position::Break(k)])
                    };
                    self.visit_vertex(u, v, pos, visit);
                }
            }
        }
    }
}

/// Calls `visit` once for every pair (face, vertex of that face) of the complex
/// inside `[0,1]^2`. Returns the number of pairs visited.
pub fn for_each_incidence(pi: &PwlPeriodic, visit: &mut dyn FnMut(&Incidence<'_>)) -> usize {
    let mut count = 0usize;
    let mut counting = |inc: &Incidence<'_>| {
        count += 1;
        visit(inc);
    };
    let n = pi.len();
    let table = ValueTable::new(pi);
    let grid_den = lcm_denominator(pi.breakpoints()).ok().and_then(|d| i64::try_from(d).ok());
    match grid_den.filter(|d| *d <= i64::MAX / 8) {
        Some(den) => {
            let d = Rat::from_int(den);
            let scaled = |x: &Scalar| x.as_rat().and_then(|r| (r * &d).as_small()).map(|(k, _)| k).unwrap();
            let unit: Vec<i64> = pi.breakpoints().iter().map(scaled).chain([den]).collect();
            let mut double: Vec<i64> = unit[..n].to_vec();
            double.extend(unit[..n].iter().map(|k| k + den));
            double.push(2 * den);
            let walk = Walk {
                pi,
                n,
                unit,
                double,
                table,
                den,
            };
            walk.run(&mut counting);
        }
        None => {
            let b = Breaks::new(pi.breakpoints());
            let walk = Walk {
                pi,
                n,
                unit: b.unit,
                double: b.double,
                table,
                den: 1,
            };
            walk.run(&mut counting);
        }
    }
    count
}

/// Orders vertices lexicographically; used to sort reports deterministically.
pub fn cmp_vertex(a: &(Scalar, Scalar), b: &(Scalar, Scalar)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1))
}
