//! Wall diagrams in the `(s, t)` half-plane.
//!
//! This is the only place floats appear: exact centers and squared radii are
//! converted to pixel coordinates at the last moment, and every drawn element
//! carries its exact data in a `<title>`.

use std::fmt::Write;

use num_traits::ToPrimitive;
use restrictor_core::{Q, Wall};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 40.0;

/// One thing to draw.
#[derive(Debug, Clone)]
pub enum Mark {
    Arc { label: String, wall: Wall, color: &'static str },
    Vertical { label: String, s: Q, color: &'static str },
    Tick { label: String, s: Q, color: &'static str },
    Note(String),
}

fn f(x: &Q) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn radius(w: &Wall) -> f64 {
    f(&w.radius_sq).max(0.0).sqrt()
}

/// Standalone SVG with a viewBox covering every mark.
pub fn diagram(title: &str, marks: &[Mark]) -> String {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut top: f64 = 0.0;
    for m in marks {
        let (a, b) = match m {
            Mark::Arc { wall, .. } if wall.is_semicircle() => {
                let (c, r) = (f(&wall.center), radius(wall));
                top = top.max(r);
                (c - r, c + r)
            }
            Mark::Arc { wall, .. } => (f(&wall.center), f(&wall.center)),
            Mark::Vertical { s, .. } | Mark::Tick { s, .. } => (f(s), f(s)),
            Mark::Note(_) => continue,
        };
        lo = lo.min(a);
        hi = hi.max(b);
    }
    if !lo.is_finite() {
        (lo, hi) = (-1.0, 1.0);
    }
    let span = (hi - lo).max(1.0);
    let (lo, hi) = (lo - 0.1 * span, hi + 0.1 * span);
    let top = top.max(0.25 * (hi - lo));
    let scale = (WIDTH - 2.0 * MARGIN) / (hi - lo);
    let notes = marks.iter().filter(|m| matches!(m, Mark::Note(_))).count() as f64;
    let base = MARGIN + top * scale * 1.05;
    let height = base + MARGIN + 18.0 * notes;
    let x = |s: f64| MARGIN + (s - lo) * scale;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH:.0} {height:.0}\" width=\"{WIDTH:.0}\" height=\"{height:.0}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, "<!-- s axis from {lo:.4} to {hi:.4}; pixel scale {scale:.4} -->");
    let _ = writeln!(out, "<line x1=\"{:.3}\" y1=\"{base:.3}\" x2=\"{:.3}\" y2=\"{base:.3}\" stroke=\"black\"/>", x(lo), x(hi));
    let mut label_row = 0.0;
    for m in marks {
        match m {
            Mark::Arc { label, wall, color } if wall.is_semicircle() => {
                let (c, r) = (f(&wall.center), radius(wall));
                let _ = writeln!(
                    out,
                    "<path d=\"M {:.3} {base:.3} A {:.3} {:.3} 0 0 1 {:.3} {base:.3}\" fill=\"none\" stroke=\"{color}\"><title>{}: center {}, radius^2 {}</title></path>",
                    x(c - r),
                    r * scale,
                    r * scale,
                    x(c + r),
                    escape(label),
                    wall.center,
                    wall.radius_sq
                );
                let _ = writeln!(
                    out,
                    "<text x=\"{:.3}\" y=\"{:.3}\" fill=\"{color}\" text-anchor=\"middle\">{}</text>",
                    x(c),
                    base - r * scale - 4.0,
                    escape(label)
                );
            }
            Mark::Arc { label, wall, color } => {
                let _ = writeln!(
                    out,
                    "<circle cx=\"{:.3}\" cy=\"{base:.3}\" r=\"3\" fill=\"{color}\"><title>{}: center {}, radius^2 {} ({:?})</title></circle>",
                    x(f(&wall.center)),
                    escape(label),
                    wall.center,
                    wall.radius_sq,
                    wall.kind
                );
            }
            Mark::Vertical { label, s, color } => {
                let _ = writeln!(
                    out,
                    "<line x1=\"{0:.3}\" y1=\"{base:.3}\" x2=\"{0:.3}\" y2=\"{MARGIN:.3}\" stroke=\"{color}\" stroke-dasharray=\"4 3\"><title>{1} = {2}</title></line>",
                    x(f(s)),
                    escape(label),
                    s
                );
            }
            Mark::Tick { label, s, color } => {
                let _ = writeln!(
                    out,
                    "<line x1=\"{0:.3}\" y1=\"{1:.3}\" x2=\"{0:.3}\" y2=\"{2:.3}\" stroke=\"{color}\" stroke-width=\"2\"><title>{3} = {4}</title></line>",
                    x(f(s)),
                    base - 6.0,
                    base + 6.0,
                    escape(label),
                    s
                );
            }
            Mark::Note(text) => {
                label_row += 1.0;
                let _ = writeln!(out, "<text x=\"{MARGIN:.3}\" y=\"{:.3}\">{}</text>", base + 18.0 * label_row, escape(text));
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use restrictor_core::rational::q;

    #[test]
    fn arcs_fit_inside_the_view_box() {
        let marks = vec![
            Mark::Arc {
                label: "restriction".into(),
                wall: Wall::from_center(q(-5, 2), q(17, 4)),
                color: "red",
            },
            Mark::Note("no wall: d² ≤ 8Δ & more".into()),
        ];
        let svg = diagram("test", &marks);
        assert!(svg.contains("radius^2 17/4"));
        assert!(svg.contains("&amp; more"));
        assert!(svg.ends_with("</svg>\n"));
    }
}
