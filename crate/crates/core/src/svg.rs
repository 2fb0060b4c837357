//! Static two-panel SVG of the height domain `U` and the edge-length square `V`.

use std::fmt::Write as _;

use crate::atlas::points::{CharacteristicAtlas, UPoint, VPoint};
use crate::continuation::Point;
use crate::geometry::{aperture, aperture_raw, base_length_bounds, domain_membership, height_max, rigidity_map};

/// Number of level curves drawn per family.
pub const FOLIATION_CURVES: usize = 24;

const PANEL: f64 = 420.0;
const MARGIN: f64 = 40.0;
const CURVE_SAMPLES: usize = 200;

struct Frame {
    x0: f64,
    lo: Point,
    hi: Point,
}

impl Frame {
    fn map(&self, p: Point) -> Point {
        let sx = (p[0] - self.lo[0]) / (self.hi[0] - self.lo[0]);
        let sy = (p[1] - self.lo[1]) / (self.hi[1] - self.lo[1]);
        [self.x0 + MARGIN + sx * PANEL, MARGIN + (1.0 - sy) * PANEL]
    }

    fn polyline(&self, out: &mut String, pts: &[Point], class: &str) {
        if pts.len() < 2 {
            return;
        }
        let _ = write!(out, r#"<polyline class="{class}" points=""#);
        for (i, &p) in pts.iter().enumerate() {
            let q = self.map(p);
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{:.2},{:.2}", q[0], q[1]);
        }
        out.push_str("\"/>\n");
    }

    fn label(&self, out: &mut String, p: Point, text: &str, class: &str) {
        let q = self.map(p);
        let _ = writeln!(
            out,
            r#"<circle class="point" cx="{:.2}" cy="{:.2}" r="2.5"/><text class="{class}" x="{:.2}" y="{:.2}">{text}</text>"#,
            q[0],
            q[1],
            q[0] + 4.0,
            q[1] - 4.0
        );
    }

    fn axes(&self, out: &mut String, x_name: &str, y_name: &str) {
        let a = self.map(self.lo);
        let b = self.map([self.hi[0], self.lo[1]]);
        let c = self.map([self.lo[0], self.hi[1]]);
        let _ = writeln!(
            out,
            r#"<path class="axis" d="M{:.2},{:.2} L{:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2}"/>"#,
            a[0], a[1], b[0], b[1], a[0], a[1], c[0], c[1]
        );
        let _ = writeln!(
            out,
            r#"<text class="axis-name" x="{:.2}" y="{:.2}">{x_name}</text>"#,
            b[0] - 10.0,
            b[1] + 20.0
        );
        let _ = writeln!(
            out,
            r#"<text class="axis-name" x="{:.2}" y="{:.2}">{y_name}</text>"#,
            c[0] - 30.0,
            c[1] + 10.0
        );
    }
}

/// Level curve `l = const` in `U`: the graph `x~ = aperture(l, x)`, kept
/// where it stays inside the domain.
fn level_curve(n: u32, l: f64, swap: bool) -> Vec<Point> {
    let Ok(top) = height_max(n, l) else {
        return Vec::new();
    };
    (0..=CURVE_SAMPLES)
        .filter_map(|i| {
            let x = top * i as f64 / CURVE_SAMPLES as f64;
            let y = aperture(n, l, x).ok()?;
            let p = if swap { [y, x] } else { [x, y] };
            domain_membership(n, p[0], p[1]).then_some(p)
        })
        .collect()
}

/// Boundary arc `l = 2 sin(pi/2n)` from `F` (height `from`) to `C` (height `to`).
fn boundary_arc(n: u32, from: f64, to: f64, swap: bool) -> Vec<Point> {
    let lmin = base_length_bounds(n).0;
    (0..=CURVE_SAMPLES)
        .filter_map(|i| {
            let s = from + (to - from) * i as f64 / CURVE_SAMPLES as f64;
            let t = aperture_raw(f64::from(n), lmin, s).max(0.0);
            t.is_finite().then_some(if swap { [t, s] } else { [s, t] })
        })
        .collect()
}

fn axis_image(n: u32, top: f64, swap: bool) -> Vec<Point> {
    (0..=CURVE_SAMPLES)
        .filter_map(|i| {
            let t = top * i as f64 / CURVE_SAMPLES as f64;
            let (l, lt) = rigidity_map(n, 0.0, t).ok()?;
            Some(if swap { [lt, l] } else { [l, lt] })
        })
        .collect()
}

/// Renders both panels. `U` shows the boundary, two families of level
/// curves, the fold curve and the twelve characteristic points; `V` shows
/// the fold image, the images of both axes and the ten image points.
pub fn render_atlas_svg(atlas: &CharacteristicAtlas) -> String {
    let n = atlas.n;
    let (lmin, lmax) = base_length_bounds(n);
    let width = 2.0 * (PANEL + 2.0 * MARGIN);
    let height = PANEL + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    out.push_str(
        "<style>\
         .axis{stroke:#000;fill:none}\
         .boundary{stroke:#000;stroke-width:1.5;fill:none}\
         .leaf{stroke:#9ab;stroke-width:0.6;fill:none}\
         .leaf-tilde{stroke:#b9a;stroke-width:0.6;fill:none;stroke-dasharray:3 2}\
         .fold{stroke:#c00;stroke-width:1.5;fill:none}\
         .axis-image{stroke:#06c;stroke-width:1;fill:none}\
         .point{fill:#000}\
         text{font:12px sans-serif}\
         </style>\n",
    );
    let _ = writeln!(out, r#"<title>Siamese dipyramid atlas, n = {n}</title>"#);

    let x_a = atlas.u(UPoint::A)[1];
    let x_f = atlas.u(UPoint::F)[0];
    let u = Frame {
        x0: 0.0,
        lo: [0.0, 0.0],
        hi: [0.9, 0.9],
    };
    out.push_str("<g id=\"panel-U\">\n");
    u.axes(&mut out, "x", "x~");
    for k in 1..=FOLIATION_CURVES {
        let l = lmin + (lmax - lmin) * k as f64 / (FOLIATION_CURVES + 1) as f64;
        u.polyline(&mut out, &level_curve(n, l, false), "leaf");
        u.polyline(&mut out, &level_curve(n, l, true), "leaf-tilde");
    }
    u.polyline(&mut out, &[[0.0, 0.0], [0.0, x_a]], "boundary");
    u.polyline(&mut out, &[[0.0, 0.0], [x_a, 0.0]], "boundary");
    u.polyline(&mut out, &boundary_arc(n, x_f, x_a, false), "boundary");
    u.polyline(&mut out, &boundary_arc(n, x_f, x_a, true), "boundary");
    u.polyline(&mut out, atlas.singular_curve.points(), "fold");
    for label in UPoint::ALL {
        u.label(&mut out, atlas.u(label), label.as_str(), "label-u");
    }
    out.push_str("</g>\n");

    let pad = 0.05 * (lmax - lmin);
    let v = Frame {
        x0: PANEL + 2.0 * MARGIN,
        lo: [lmin - pad, lmin - pad],
        hi: [lmax + pad, lmax + pad],
    };
    out.push_str("<g id=\"panel-V\">\n");
    v.axes(&mut out, "l", "l~");
    v.polyline(
        &mut out,
        &[[lmin, lmin], [lmax, lmin], [lmax, lmax], [lmin, lmax], [lmin, lmin]],
        "boundary",
    );
    v.polyline(&mut out, &axis_image(n, x_a, false), "axis-image");
    v.polyline(&mut out, &axis_image(n, x_a, true), "axis-image");
    v.polyline(&mut out, atlas.fold_image.points(), "fold");
    for label in VPoint::ALL {
        v.label(
            &mut out,
            atlas.v(label),
            &format!("{}&#772;", label.as_str()),
            "label-v",
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
