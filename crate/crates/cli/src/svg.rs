//! Deterministic SVG rendering of the Klein disk: boundary circle,
//! ping-pong arcs, limit-set points, and geodesics as chords. All
//! coordinates are written with fixed precision so identical inputs yield
//! byte-identical files.

use margulis::frames::BoundaryPoint;
use margulis::schottky::LimitSetApprox;
use margulis::GroupPresentation;

const HEADER: &str = concat!(
    r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.15 -1.15 2.3 2.3">"#,
    "\n",
    r#"<circle class="boundary" cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="0.006"/>"#,
    "\n",
);

fn fmt(v: f64) -> String {
    // Fixed precision, with the negative-zero artifact normalized away.
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// SVG position of a boundary point (the y axis flips to screen coordinates).
fn place(p: &BoundaryPoint) -> (String, String) {
    (fmt(p.x), fmt(-p.y))
}

fn disk_arcs(group: &GroupPresentation) -> String {
    let mut out = String::new();
    for d in group.disks() {
        let from = BoundaryPoint::from_angle(d.center_angle - d.radius);
        let to = BoundaryPoint::from_angle(d.center_angle + d.radius);
        let (x1, y1) = place(&from);
        let (x2, y2) = place(&to);
        out.push_str(&format!(
            r##"<path class="disk" d="M {x1} {y1} A 1 1 0 0 0 {x2} {y2}" fill="none" stroke="#c44" stroke-width="0.02"/>"##
        ));
        out.push('\n');
    }
    out
}

/// Limit set as dots on the boundary circle, plus the ping-pong arcs.
pub fn limit_set_svg(group: &GroupPresentation, limit: &LimitSetApprox) -> String {
    let mut out = String::from(HEADER);
    out.push_str(&disk_arcs(group));
    for p in &limit.points {
        let (x, y) = place(p);
        out.push_str(&format!(
            r##"<circle class="limit-point" cx="{x}" cy="{y}" r="0.008" fill="#226"/>"##
        ));
        out.push('\n');
    }
    out.push_str("</svg>\n");
    out
}

/// Selected geodesics as chords of the Klein disk. Each chord joins the
/// boundary endpoints of one closed surface geodesic; the corresponding
/// spacetime axis projects onto the same chord, so these double as the axis
/// projections of the classes.
pub fn geodesics_svg(
    group: &GroupPresentation,
    chords: &[(BoundaryPoint, BoundaryPoint)],
) -> String {
    let mut out = String::from(HEADER);
    out.push_str(&disk_arcs(group));
    for (a, b) in chords {
        let (x1, y1) = place(a);
        let (x2, y2) = place(b);
        out.push_str(&format!(
            r##"<line class="geodesic" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#262" stroke-width="0.006"/>"##
        ));
        out.push('\n');
    }
    out.push_str("</svg>\n");
    out
}
