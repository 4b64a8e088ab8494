//! SVG drawings of partitions: hull circle, center vertex, straight edges.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::Write;

use planewheel::partition::Partition;
use planewheel::wheelgeom::{EdgeId, WheelModel, CENTER};

const SIZE: f64 = 480.0;
const RADIUS: f64 = 200.0;
/// Fraction of a group's angular slot its vertices occupy. Below one half the
/// drawing has the same crossing pairs as the model.
const GROUP_SPREAD: f64 = 0.3;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
    "#393b79", "#637939",
];

/// Stroke color of class `c`; classes past the palette get evenly spaced hues.
pub fn class_color(c: usize, m: usize) -> String {
    if m <= PALETTE.len() {
        PALETTE[c].to_string()
    } else {
        format!("hsl({}, 70%, 40%)", c * 360 / m)
    }
}

/// Drawing position of every vertex, hull vertices clockwise from the top.
pub fn layout(model: &WheelModel) -> Vec<(f64, f64)> {
    let c = SIZE / 2.0;
    let slot = TAU / model.k() as f64;
    let mut pos = vec![(c, c); model.point_count()];
    for g in 0..model.k() {
        let size = model.sizes()[g];
        for (i, v) in model.members(g).enumerate() {
            let offset = if size == 1 { 0.0 } else { (i as f64 / (size - 1) as f64 - 0.5) * GROUP_SPREAD * slot };
            // Screen y grows downward, so increasing angle runs clockwise.
            let angle = -FRAC_PI_2 + g as f64 * slot + offset;
            pos[v] = (c + RADIUS * angle.cos(), c + RADIUS * angle.sin());
        }
    }
    pos
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(
        out,
        r##"<circle cx="{0}" cy="{0}" r="{RADIUS}" fill="none" stroke="#cccccc" stroke-dasharray="4 4"/>"##,
        SIZE / 2.0
    );
}

fn edge_line(out: &mut String, pos: &[(f64, f64)], e: EdgeId, class: usize, color: &str) {
    let ((x1, y1), (x2, y2)) = (pos[e.a], pos[e.b]);
    let _ = writeln!(
        out,
        r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="1.5" data-class="{class}" data-edge="{}-{}"/>"#,
        e.a, e.b
    );
}

fn vertices(out: &mut String, pos: &[(f64, f64)]) {
    for (v, &(x, y)) in pos.iter().enumerate() {
        let (r, fill) = if v == CENTER { (5.0, "#000000") } else { (3.5, "#333333") };
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{fill}" data-vertex="{v}"/>"#);
    }
}

/// All classes in one drawing.
pub fn overview(p: &Partition) -> String {
    let pos = layout(p.model());
    let mut out = String::new();
    header(&mut out, &format!("partition into {} classes", p.m()));
    for (c, class) in p.classes().iter().enumerate() {
        let color = class_color(c, p.m());
        let _ = writeln!(out, r#"<g data-class="{c}">"#);
        for &e in class {
            edge_line(&mut out, &pos, e, c, &color);
        }
        out.push_str("</g>\n");
    }
    vertices(&mut out, &pos);
    out.push_str("</svg>\n");
    out
}

/// A single class.
pub fn class(p: &Partition, c: usize) -> String {
    let pos = layout(p.model());
    let mut out = String::new();
    header(&mut out, &format!("class {c}"));
    let color = class_color(c, p.m());
    for e in p.class(c) {
        edge_line(&mut out, &pos, e, c, &color);
    }
    vertices(&mut out, &pos);
    out.push_str("</svg>\n");
    out
}
