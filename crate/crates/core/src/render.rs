//! SVG pictures of rank-two pairs: the alcove slice through `aff(P)`, the
//! polytope `P` and the walls of `Φ_M`. Output is byte-for-byte
//! deterministic for a given pair and report.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::linalg;
use crate::exact::{InnerProduct, Q};
use crate::polytope::{AffineSpan, LinForm, Polytope};
use crate::spherical::{IntegralPair, VerificationReport};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 8.0;
const PAD: f64 = 0.1;

/// Six significant digits with trailing zeros removed.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let decimals = (5 - x.abs().log10().floor() as i32).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn f(q: &Q) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

/// Isometric chart of a two-dimensional affine span.
struct Chart<'a> {
    ip: &'a InnerProduct,
    span: &'a AffineSpan,
    gram: [[Q; 2]; 2],
    l11: f64,
    l21: f64,
    l22: f64,
}

impl<'a> Chart<'a> {
    fn new(ip: &'a InnerProduct, span: &'a AffineSpan) -> Self {
        let d = &span.directions;
        let gram = [[ip.ip(&d[0], &d[0]), ip.ip(&d[0], &d[1])], [ip.ip(&d[1], &d[0]), ip.ip(&d[1], &d[1])]];
        let (g11, g12, g22) = (f(&gram[0][0]), f(&gram[0][1]), f(&gram[1][1]));
        let l11 = g11.sqrt();
        let l21 = g12 / l11;
        let l22 = (g22 - l21 * l21).sqrt();
        Chart { ip, span, gram, l11, l21, l22 }
    }

    /// Exact coordinates `(s, t)` of `x = base + s d1 + t d2`.
    fn st(&self, x: &[Q]) -> (Q, Q) {
        let w = linalg::sub(x, &self.span.base);
        let d = &self.span.directions;
        let (b1, b2) = (self.ip.ip(&w, &d[0]), self.ip.ip(&w, &d[1]));
        let [[a, b], [c, e]] = &self.gram;
        let det = a * e - b * c;
        ((e * &b1 - b * &b2) / &det, (a * &b2 - c * &b1) / det)
    }

    fn xy_st(&self, s: f64, t: f64) -> (f64, f64) {
        (s * self.l11 + t * self.l21, t * self.l22)
    }

    fn xy(&self, x: &[Q]) -> (f64, f64) {
        let (s, t) = self.st(x);
        self.xy_st(f(&s), f(&t))
    }

    /// `(a, b, c)` with `f = a X + b Y + c` in chart coordinates.
    fn line(&self, lf: &LinForm) -> (f64, f64, f64) {
        let d = &self.span.directions;
        let c = f(&lf.eval(&self.span.base));
        let (fs, ft) = (f(&lf.linear(&d[0])), f(&lf.linear(&d[1])));
        // s = X / l11 - t l21 / l11, t = Y / l22.
        let a = fs / self.l11;
        let b = (ft - fs * self.l21 / self.l11) / self.l22;
        (a, b, c)
    }
}

/// Polygon vertices in counterclockwise order around their centroid.
fn polygon(chart: &Chart, p: &Polytope) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = p.vertices().iter().map(|v| chart.xy(v)).collect();
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / n;
    pts.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
    pts
}

/// Segment of `a X + b Y + c = 0` inside the box, if any.
fn clip(line: (f64, f64, f64), lo: (f64, f64), hi: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let (a, b, c) = line;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let eps = 1e-9;
    if b.abs() > eps {
        for x in [lo.0, hi.0] {
            let y = -(a * x + c) / b;
            if y >= lo.1 - eps && y <= hi.1 + eps {
                hits.push((x, y));
            }
        }
    }
    if a.abs() > eps {
        for y in [lo.1, hi.1] {
            let x = -(b * y + c) / a;
            if x >= lo.0 - eps && x <= hi.0 + eps {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    hits.dedup_by(|p, q| (p.0 - q.0).abs() < eps && (p.1 - q.1).abs() < eps);
    (hits.len() >= 2).then(|| (hits[0], hits[hits.len() - 1]))
}

fn points_attr(pts: &[(f64, f64)], map: &impl Fn((f64, f64)) -> (f64, f64)) -> String {
    pts.iter().map(|&p| {
        let (x, y) = map(p);
        format!("{},{}", fmt6(x), fmt6(y))
    }).collect::<Vec<_>>().join(" ")
}

/// SVG of a pair whose polytope has dimension two.
pub fn render_svg(pair: &IntegralPair, report: &VerificationReport) -> Result<String> {
    if pair.rank() != 2 {
        return Err(Error::Unsupported(format!("rendering needs a pair of rank 2, this one has rank {}", pair.rank())));
    }
    let ip = pair.ip();
    let span = pair.polytope.affine_span();
    let chart = Chart::new(ip, span);
    let amb = &pair.ambient;
    let mut eqs: Vec<LinForm> = span.equalities();
    eqs.extend(amb.space().iter().cloned());
    let slice = if amb.is_affine() { Polytope::from_constraints(amb.dim(), &eqs, &amb.simple_linforms()).ok().filter(|s| s.dim() == 2) } else { None };
    let outline = slice.as_ref().map(|s| polygon(&chart, s));
    let shape = polygon(&chart, &pair.polytope);
    let frame = outline.as_ref().unwrap_or(&shape);
    let lo = frame.iter().fold((f64::INFINITY, f64::INFINITY), |m, p| (m.0.min(p.0), m.1.min(p.1)));
    let hi = frame.iter().fold((f64::NEG_INFINITY, f64::NEG_INFINITY), |m, p| (m.0.max(p.0), m.1.max(p.1)));
    // Walls through a vertex of the frame must stay visible.
    let pad = PAD * (hi.0 - lo.0).max(hi.1 - lo.1);
    let (lo, hi) = ((lo.0 - pad, lo.1 - pad), (hi.0 + pad, hi.1 + pad));
    let scale = (SIZE - 2.0 * MARGIN) / (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-12);
    let map = |(x, y): (f64, f64)| (MARGIN + (x - lo.0) * scale, SIZE - MARGIN - (y - lo.1) * scale);

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#, SIZE);
    let _ = writeln!(out, "<title>{} ({})</title>", xml_escape(&pair.name), report.overall);
    if let Some(o) = &outline {
        let _ = writeln!(out, r#"<polygon class="alcove" points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, points_attr(o, &map));
    }
    let _ = writeln!(out, r##"<polygon class="polytope" points="{}" fill="#4a90d9" fill-opacity="0.35" stroke="#1f4e8c" stroke-width="1.5"/>"##, points_attr(&shape, &map));
    if let Some(phi) = &report.phi_m {
        for (root, label) in phi.simple.iter().zip(&phi.display) {
            if let Some((a, b)) = clip(chart.line(&root.to_linform(ip)), lo, hi) {
                let (a, b) = (map(a), map(b));
                let _ = writeln!(
                    out,
                    r##"<line class="wall" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c0392b" stroke-width="1" stroke-dasharray="6 4"><title>{}</title></line>"##,
                    fmt6(a.0),
                    fmt6(a.1),
                    fmt6(b.0),
                    fmt6(b.1),
                    xml_escape(label)
                );
            }
        }
    }
    for v in pair.polytope.vertices() {
        let (x, y) = map(chart.xy(v));
        let _ = writeln!(out, r#"<circle class="vertex" cx="{}" cy="{}" r="3" fill="black"/>"#, fmt6(x), fmt6(y));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
