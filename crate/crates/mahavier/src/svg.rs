//! Static SVG plots of relations. Outputs are plain strings assembled
//! deterministically; no interactive parts.

use std::fmt::Write;

use crate::files::RelationFile;
use crate::finite::FiniteRelation;
use crate::interval::{IntervalRelation, IntervalWitness};
use crate::transforms::LegSystem;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 30.0;

pub fn render(file: &RelationFile, witness: Option<&IntervalWitness>) -> String {
    match file {
        RelationFile::Finite(rel) => finite_svg(rel),
        RelationFile::Interval(rel) => interval_svg(rel, witness),
        RelationFile::Legs(sys) => legs_svg(sys),
    }
}

fn header(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n\
         <rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>\n"
    )
}

/// Points on a circle with directed edges; self-loops become small
/// circles above their node.
pub fn finite_svg(rel: &FiniteRelation) -> String {
    let n = rel.point_count().max(1);
    let total = SIZE + 2.0 * MARGIN;
    let mut out = header(total, total);
    let center = total / 2.0;
    let radius = SIZE / 2.0 - 20.0;
    let pos = |i: usize| -> (f64, f64) {
        let angle = std::f64::consts::TAU * (i as f64) / (n as f64) - std::f64::consts::FRAC_PI_2;
        (center + radius * angle.cos(), center + radius * angle.sin())
    };
    for (a, b) in rel.edges() {
        if a == b {
            let (x, y) = pos(a);
            let _ = writeln!(
                out,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"10\" fill=\"none\" stroke=\"steelblue\"/>",
                x,
                y - 14.0
            );
            continue;
        }
        let (x1, y1) = pos(a);
        let (x2, y2) = pos(b);
        // Shorten toward the target so the arrowhead is visible.
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let (ex, ey) = (x2 - 12.0 * dx / len, y2 - 12.0 * dy / len);
        let _ = writeln!(
            out,
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{ex:.2}\" y2=\"{ey:.2}\" \
             stroke=\"steelblue\" marker-end=\"url(#arrow)\"/>"
        );
    }
    let mut nodes = String::new();
    for i in 0..rel.point_count() {
        let (x, y) = pos(i);
        let _ = writeln!(
            nodes,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"black\"/>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>",
            x + 9.0,
            y + 4.0,
            xml_escape(rel.id_of(i))
        );
    }
    out.insert_str(
        out.find("\n").map(|i| i + 1).unwrap_or(0),
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" \
         markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">\
         <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"steelblue\"/></marker></defs>\n",
    );
    out.push_str(&nodes);
    out.push_str("</svg>\n");
    out
}

/// Unit-square plot: branches as polylines, segments, isolated points,
/// and optional witness shading along the first-coordinate axis.
pub fn interval_svg(rel: &IntervalRelation, witness: Option<&IntervalWitness>) -> String {
    let total = SIZE + 2.0 * MARGIN;
    let mut out = header(total, total);
    let sx = |v: f64| MARGIN + v * SIZE;
    let sy = |v: f64| MARGIN + (1.0 - v) * SIZE;
    let _ = writeln!(
        out,
        "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{SIZE:.1}\" height=\"{SIZE:.1}\" \
         fill=\"none\" stroke=\"gray\"/>",
        MARGIN, MARGIN
    );
    if let Some(w) = witness {
        for (spec, color) in [
            (&w.k, "rgba(70,130,180,0.35)"),
            (&w.l, "rgba(200,80,80,0.35)"),
        ] {
            for (lo, hi) in spec.first.parts() {
                let x0 = sx(lo.to_f64());
                let x1 = sx(hi.to_f64());
                let _ = writeln!(
                    out,
                    "<rect x=\"{x0:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"10\" fill=\"{color}\"/>",
                    MARGIN + SIZE - 10.0,
                    (x1 - x0).max(2.0),
                );
            }
        }
    }
    for b in &rel.branches {
        let points: Vec<String> = b
            .xs()
            .iter()
            .zip(b.ys())
            .map(|(x, y)| format!("{:.2},{:.2}", sx(x.to_f64()), sy(y.to_f64())))
            .collect();
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"/>",
            points.join(" ")
        );
    }
    for v in &rel.verticals {
        let _ = writeln!(
            out,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"teal\" stroke-width=\"2\"/>",
            sy(v.y_lo.to_f64()),
            sy(v.y_hi.to_f64()),
            x = sx(v.x.to_f64()),
        );
    }
    for h in &rel.horizontals {
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"teal\" stroke-width=\"2\"/>",
            sx(h.x_lo.to_f64()),
            sx(h.x_hi.to_f64()),
            y = sy(h.y.to_f64()),
        );
    }
    for (x, y) in &rel.isolated {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"darkblue\"/>",
            sx(x.to_f64()),
            sy(y.to_f64())
        );
    }
    out.push_str("</svg>\n");
    out
}

/// One small panel per leg showing its map and target.
pub fn legs_svg(sys: &LegSystem) -> String {
    let panel = 140.0;
    let pad = 20.0;
    let cols = sys.legs().clamp(1, 5);
    let rows = sys.legs().div_ceil(cols);
    let width = cols as f64 * (panel + pad) + pad;
    let height = rows as f64 * (panel + pad + 16.0) + pad;
    let mut out = header(width, height);
    for (leg, m) in sys.maps().iter().enumerate() {
        let col = leg % cols;
        let row = leg / cols;
        let ox = pad + col as f64 * (panel + pad);
        let oy = pad + row as f64 * (panel + pad + 16.0);
        let sx = |v: f64| ox + v * panel;
        let sy = |v: f64| oy + (1.0 - v) * panel;
        let _ = writeln!(
            out,
            "<rect x=\"{ox:.1}\" y=\"{oy:.1}\" width=\"{panel:.1}\" height=\"{panel:.1}\" \
             fill=\"none\" stroke=\"gray\"/>"
        );
        let points: Vec<String> = m
            .map
            .xs()
            .iter()
            .zip(m.map.ys())
            .map(|(x, y)| format!("{:.2},{:.2}", sx(x.to_f64()), sy(y.to_f64())))
            .collect();
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"/>\n\
             <text x=\"{ox:.1}\" y=\"{:.1}\" font-size=\"12\">leg {leg} to leg {}</text>",
            points.join(" "),
            oy + panel + 14.0,
            m.target
        );
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::linear_pair;
    use crate::rational::rat;
    use crate::transforms::nleg_system;

    #[test]
    fn renders_are_wellformed_and_deterministic() {
        let fin = FiniteRelation::from_edges(&["0", "1"], &[("0", "0"), ("0", "1"), ("1", "0")]);
        let a = finite_svg(&fin);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert_eq!(a, finite_svg(&fin));

        let sys = linear_pair(&rat("1/3"), &rat("2")).unwrap();
        let (w, _) = sys.cr_witness_search(&rat("1/2")).unwrap();
        let b = interval_svg(&sys.relation(), Some(&w));
        assert!(b.contains("polyline"));
        assert!(b.contains("rgba(70,130,180,0.35)"));

        let c = legs_svg(&nleg_system(5));
        assert!(c.matches("<polyline").count() == 5);
    }
}
