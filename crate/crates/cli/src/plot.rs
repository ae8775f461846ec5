//! SVG and CSV renderings of a function and its additive faces.

use std::fmt::Write;

use infgroup::complex2d::{additive_faces, Face2D};
use infgroup::{PwlPeriodic, Scalar};

/// A closed piece of the graph, endpoints given by the one-sided limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub x0: Scalar,
    pub y0: Scalar,
    pub x1: Scalar,
    pub y1: Scalar,
}

/// A point where the function jumps: its value and whichever limits differ from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jump {
    pub x: Scalar,
    pub value: Scalar,
    pub open: Vec<Scalar>,
}

/// Graph pieces on `[0,1]`, with collinear continuous neighbours merged.
pub fn segments(pi: &PwlPeriodic) -> Vec<Segment> {
    let n = pi.len();
    let mut out: Vec<Segment> = Vec::new();
    for i in 0..n {
        let (r, l) = &pi.limits()[i];
        let seg = Segment { x0: pi.breakpoint(i), y0: r.clone(), x1: pi.breakpoint(i + 1), y1: l.clone() };
        if let Some(prev) = out.last_mut() {
            let joined = prev.y1 == *pi.point_value(i) && seg.y0 == prev.y1;
            if joined && pi.slope(i) == pi.slope(i - 1) {
                prev.x1 = seg.x1;
                prev.y1 = seg.y1;
                continue;
            }
        }
        out.push(seg);
    }
    out
}

/// Discontinuities at the breakpoints of `[0,1]`, including 1 itself.
pub fn jumps(pi: &PwlPeriodic) -> Vec<Jump> {
    let n = pi.len();
    (0..=n)
        .filter_map(|i| {
            let value = pi.point_value(i).clone();
            let mut open = Vec::new();
            if i > 0 {
                open.push(pi.limits()[i - 1].1.clone());
            }
            if i < n {
                open.push(pi.limits()[i].0.clone());
            }
            open.retain(|v| *v != value);
            open.dedup();
            (!open.is_empty()).then(|| Jump { x: pi.breakpoint(i), value, open })
        })
        .collect()
}

/// Two-dimensional additive faces in `[0,1]^2`.
pub fn shaded_faces(pi: &PwlPeriodic) -> Vec<Face2D> {
    additive_faces(pi).into_iter().filter(|f| f.dimension() == 2).collect()
}

pub fn to_csv(pi: &PwlPeriodic, with_complex: bool) -> String {
    let mut out = String::from("x0,y0,x1,y1,kind\n");
    for s in segments(pi) {
        writeln!(out, "{},{},{},{},function", s.x0, s.y0, s.x1, s.y1).unwrap();
    }
    for j in jumps(pi) {
        writeln!(out, "{0},{1},{0},{1},closed_point", j.x, j.value).unwrap();
        for v in &j.open {
            writeln!(out, "{0},{1},{0},{1},open_point", j.x, v).unwrap();
        }
    }
    if with_complex {
        for face in shaded_faces(pi) {
            let vs = &face.vertices;
            for k in 0..vs.len() {
                let (a, b) = (&vs[k], &vs[(k + 1) % vs.len()]);
                writeln!(out, "{},{},{},{},additive_face", a.0, a.1, b.0, b.1).unwrap();
            }
        }
    }
    out
}

const PANEL: f64 = 400.0;
const MARGIN: f64 = 40.0;

fn num(v: f64) -> String {
    let s = format!("{v:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Maps exact points of one panel to screen coordinates.
struct Frame {
    left: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn x(&self, x: &Scalar) -> String {
        num(self.left + PANEL * x.to_f64())
    }

    fn y(&self, y: &Scalar) -> String {
        num(MARGIN + PANEL * (self.y_hi - y.to_f64()) / (self.y_hi - self.y_lo))
    }
}

pub fn to_svg(pi: &PwlPeriodic, with_complex: bool) -> String {
    let segs = segments(pi);
    let ys = segs.iter().flat_map(|s| [s.y0.to_f64(), s.y1.to_f64()]);
    let (y_lo, y_hi) = ys.fold((0.0f64, 1.0f64), |(lo, hi), y| (lo.min(y), hi.max(y)));
    let graph = Frame { left: MARGIN, y_lo, y_hi };
    let panels = if with_complex { 2.0 } else { 1.0 };
    let width = num(panels * (PANEL + 2.0 * MARGIN));
    let height = num(PANEL + 2.0 * MARGIN);
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#).unwrap();
    writeln!(out, r#"<g class="graph" stroke="black" fill="none">"#).unwrap();
    writeln!(out, r##"<rect x="{0}" y="{0}" width="{1}" height="{1}" stroke="#bbbbbb"/>"##, num(MARGIN), num(PANEL)).unwrap();
    for s in &segs {
        writeln!(
            out,
            r#"<line class="segment" x1="{}" y1="{}" x2="{}" y2="{}" stroke-width="2"/>"#,
            graph.x(&s.x0),
            graph.y(&s.y0),
            graph.x(&s.x1),
            graph.y(&s.y1)
        )
        .unwrap();
    }
    for j in jumps(pi) {
        let cx = graph.x(&j.x);
        writeln!(out, r#"<circle class="closed" cx="{cx}" cy="{}" r="3" fill="black"/>"#, graph.y(&j.value)).unwrap();
        for v in &j.open {
            writeln!(out, r#"<circle class="open" cx="{cx}" cy="{}" r="3" fill="white"/>"#, graph.y(v)).unwrap();
        }
    }
    out.push_str("</g>\n");
    if with_complex {
        complex_panel(&mut out, pi);
    }
    out.push_str("</svg>\n");
    out
}

fn complex_panel(out: &mut String, pi: &PwlPeriodic) {
    let frame = Frame { left: 3.0 * MARGIN + PANEL, y_lo: 0.0, y_hi: 1.0 };
    let (zero, one) = (Scalar::zero(), Scalar::one());
    writeln!(out, r##"<g class="complex" stroke="#888888" stroke-width="0.5">"##).unwrap();
    for face in shaded_faces(pi) {
        let points: Vec<String> = face.vertices.iter().map(|(u, v)| format!("{},{}", frame.x(u), frame.y(v))).collect();
        writeln!(out, r##"<polygon class="additive-face" points="{}" fill="#66dd66" fill-opacity="0.6"/>"##, points.join(" "))
            .unwrap();
    }
    let mut line = |a: (&Scalar, &Scalar), b: (&Scalar, &Scalar)| {
        writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, frame.x(a.0), frame.y(a.1), frame.x(b.0), frame.y(b.1))
            .unwrap();
    };
    for b in pi.breakpoints().iter().chain([&one]) {
        line((b, &zero), (b, &one));
        line((&zero, b), (&one, b));
        // The diagonals x + y = b and x + y = 1 + b clipped to the square.
        line((b, &zero), (&zero, b));
        let c = b + &one;
        if c < Scalar::int(2) {
            line((&one, &(&c - &one)), (&(&c - &one), &one));
        }
    }
    out.push_str("</g>\n");
}
