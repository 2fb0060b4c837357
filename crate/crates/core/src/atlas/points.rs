//! Characteristic points of the height domain `U` and their images in `V`.
//!
//! Each point is the solution of a small constrained root problem:
//!
//! * `O = (0, 0)` with image `(2 sin(pi/n), 2 sin(pi/n))`.
//! * `A = (0, x~_A)` on the second limit curve, `x~_A = sqrt(1 - 1/(4 cos^2(pi/2n)))`;
//!   `C` is its mirror.
//! * `F` on the diagonal with `l = l~ = 2 sin(pi/2n)`.
//! * `B`, `D`: ends of the fold curve on the two limit curves; `M`: its
//!   diagonal point.
//! * `E`: image of the axis `x = 0` meets the image of `x~ = 0` on the
//!   diagonal of `V`; `E1`, `E2` are the axis pre-images and `E3` the
//!   diagonal one.
//! * `H`: the fold image crosses the image of `x = 0` away from the diagonal;
//!   `K` is the analogous crossing with the image of `x~ = 0`.

use std::f64::consts::PI;

use serde_json::{json, Map, Value};

use crate::atlas::path::PlanarPath;
use crate::atlas::singular::{diagonal_with_length, fold_image, SingularCurve, DEFAULT_STEP};
use crate::continuation::{Point, Tracer};
use crate::error::{Error, Result};
use crate::geometry::{base_length_bounds, rigidity_map};
use crate::numfmt::to_json;
use crate::roots::find_roots;

/// Labels of characteristic points in `U`, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UPoint {
    A,
    C,
    F,
    O,
    B,
    D,
    M,
    E1,
    E2,
    E3,
    H,
    K,
}

impl UPoint {
    pub const ALL: [UPoint; 12] = [
        UPoint::A,
        UPoint::C,
        UPoint::F,
        UPoint::O,
        UPoint::B,
        UPoint::D,
        UPoint::M,
        UPoint::E1,
        UPoint::E2,
        UPoint::E3,
        UPoint::H,
        UPoint::K,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            UPoint::A => "A",
            UPoint::C => "C",
            UPoint::F => "F",
            UPoint::O => "O",
            UPoint::B => "B",
            UPoint::D => "D",
            UPoint::M => "M",
            UPoint::E1 => "E1",
            UPoint::E2 => "E2",
            UPoint::E3 => "E3",
            UPoint::H => "H",
            UPoint::K => "K",
        }
    }

    /// Image label in `V`.
    pub fn image(self) -> VPoint {
        match self {
            UPoint::A => VPoint::A,
            UPoint::C => VPoint::C,
            UPoint::F => VPoint::F,
            UPoint::O => VPoint::O,
            UPoint::B => VPoint::B,
            UPoint::D => VPoint::D,
            UPoint::M => VPoint::M,
            UPoint::E1 | UPoint::E2 | UPoint::E3 => VPoint::E,
            UPoint::H => VPoint::H,
            UPoint::K => VPoint::K,
        }
    }

    /// Mirror partner under `(x, x~) -> (x~, x)`; `None` for diagonal points.
    pub fn mirror(self) -> Option<UPoint> {
        match self {
            UPoint::A => Some(UPoint::C),
            UPoint::C => Some(UPoint::A),
            UPoint::B => Some(UPoint::D),
            UPoint::D => Some(UPoint::B),
            UPoint::H => Some(UPoint::K),
            UPoint::K => Some(UPoint::H),
            UPoint::E1 => Some(UPoint::E2),
            UPoint::E2 => Some(UPoint::E1),
            UPoint::F | UPoint::O | UPoint::M | UPoint::E3 => None,
        }
    }
}

/// Labels of characteristic points in `V` (images, written overlined).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VPoint {
    A,
    C,
    F,
    O,
    B,
    D,
    M,
    E,
    H,
    K,
}

impl VPoint {
    pub const ALL: [VPoint; 10] = [
        VPoint::A,
        VPoint::C,
        VPoint::F,
        VPoint::O,
        VPoint::B,
        VPoint::D,
        VPoint::M,
        VPoint::E,
        VPoint::H,
        VPoint::K,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            VPoint::A => "A",
            VPoint::C => "C",
            VPoint::F => "F",
            VPoint::O => "O",
            VPoint::B => "B",
            VPoint::D => "D",
            VPoint::M => "M",
            VPoint::E => "E",
            VPoint::H => "H",
            VPoint::K => "K",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CharacteristicAtlas {
    pub n: u32,
    pub points_u: Vec<(UPoint, Point)>,
    pub points_v: Vec<(VPoint, Point)>,
    pub singular_curve: PlanarPath,
    pub fold_image: PlanarPath,
    /// Crossings of the fold image with itself, recorded as found.
    pub fold_self_intersections: Vec<Point>,
    pub(crate) curve: SingularCurve,
    /// Segment indices of `H` and `K` on the fold curve.
    pub(crate) h_segment: usize,
    pub(crate) k_segment: usize,
}

impl CharacteristicAtlas {
    pub fn u(&self, label: UPoint) -> Point {
        self.points_u
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, p)| *p)
            .expect("every U label is populated")
    }

    pub fn v(&self, label: VPoint) -> Point {
        self.points_v
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, p)| *p)
            .expect("every V label is populated")
    }

    pub fn l_m(&self) -> f64 {
        self.v(VPoint::M)[0]
    }

    /// Mean of `l` at the fold-image crossings with the axis images.
    pub fn hk_mean(&self) -> f64 {
        0.5 * (self.v(VPoint::H)[0] + self.v(VPoint::K)[0])
    }

    pub fn l_e(&self) -> f64 {
        self.v(VPoint::E)[0]
    }

    pub fn to_json_value(&self) -> Value {
        let pair = |p: Point| json!([p[0], p[1]]);
        let mut pu = Map::new();
        for (l, p) in &self.points_u {
            pu.insert(l.as_str().into(), pair(*p));
        }
        let mut pv = Map::new();
        for (l, p) in &self.points_v {
            pv.insert(l.as_str().into(), pair(*p));
        }
        let path = |p: &PlanarPath| Value::Array(p.points().iter().map(|&q| pair(q)).collect());
        json!({
            "n": self.n,
            "points_U": pu,
            "points_V": pv,
            "singular_curve": path(&self.singular_curve),
            "fold_image": path(&self.fold_image),
        })
    }

    /// JSON document with 17-significant-digit numbers.
    pub fn to_json(&self) -> String {
        to_json(&self.to_json_value())
    }
}

/// `l~` on the image of the axis `x = 0` as a function of `l`, defined for
/// `l` between `l_A` and `2 sin(pi/n)`.
fn axis_image(n: u32, l: f64, l_a: f64) -> f64 {
    let (_, lmax) = base_length_bounds(n);
    if !(l >= l_a && l <= lmax) {
        return f64::NAN;
    }
    let nf = f64::from(n);
    let t = (nf * (l / 2.0).asin()).sin();
    2.0 * (PI / nf).sin() * (1.0 - t * t).max(0.0).sqrt()
}

const DIAGONAL_EXCLUSION: f64 = 1e-6;

/// Points of the fold curve where `crossing` changes sign, refined on the curve.
fn fold_crossings<G>(curve: &SingularCurve, mut crossing: G) -> Vec<(usize, Point)>
where
    G: FnMut(Point) -> f64,
{
    let field = curve.tracer_field();
    let tracer = Tracer::new(&field, DEFAULT_STEP);
    let pts = curve.path.points();
    let mut out = Vec::new();
    for (i, w) in pts.windows(2).enumerate() {
        let (ga, gb) = (crossing(w[0]), crossing(w[1]));
        if !(ga.is_finite() && gb.is_finite()) || (ga < 0.0) == (gb < 0.0) {
            continue;
        }
        if let Some(p) = tracer.locate_between(w[0], w[1], &mut crossing) {
            out.push((i, p));
        }
    }
    out
}

pub fn characteristic_points(n: u32) -> Result<CharacteristicAtlas> {
    characteristic_points_with_step(n, DEFAULT_STEP)
}

pub fn characteristic_points_with_step(n: u32, step: f64) -> Result<CharacteristicAtlas> {
    if n < 3 {
        return Err(Error::InvalidGonCount(n));
    }
    let nf = f64::from(n);
    let (lmin, lmax) = base_length_bounds(n);
    let map = |p: Point| -> Result<Point> {
        let (l, lt) = rigidity_map(n, p[0], p[1])?;
        Ok([l, lt])
    };

    let c = (PI / (2.0 * nf)).cos();
    let xt_a = (1.0 - 1.0 / (4.0 * c * c)).sqrt();
    let a = [0.0, xt_a];
    let l_a = map(a)?[0];

    let x_f = *diagonal_with_length(n, lmin)?
        .first()
        .ok_or(Error::AtlasIncomplete("F"))?;

    let curve = SingularCurve::trace(n, step)?;
    let b = curve.b();
    let d = curve.d();
    if (map(b)?[1] - lmin).abs() > 1e-9 || (map(d)?[0] - lmin).abs() > 1e-9 {
        return Err(Error::AtlasIncomplete("B"));
    }

    let e_roots = find_roots(
        |t| rigidity_map(n, 0.0, t).map_or(f64::NAN, |(l, lt)| l - lt),
        1e-4 * xt_a,
        xt_a,
        1024,
    )?;
    let &[t_e] = e_roots.as_slice() else {
        return Err(Error::AtlasIncomplete("E"));
    };
    let l_e = map([0.0, t_e])?[0];
    let x_e3 = *diagonal_with_length(n, l_e)?
        .first()
        .ok_or(Error::AtlasIncomplete("E3"))?;

    let off_diagonal = |p: Point| -> Option<Point> {
        let v = map(p).ok()?;
        ((v[0] - v[1]).abs() > DIAGONAL_EXCLUSION).then_some(v)
    };
    let h_hits = fold_crossings(&curve, |p| {
        off_diagonal(p).map_or(f64::NAN, |v| v[1] - axis_image(n, v[0], l_a))
    });
    let k_hits = fold_crossings(&curve, |p| {
        off_diagonal(p).map_or(f64::NAN, |v| v[0] - axis_image(n, v[1], l_a))
    });
    let &[(h_segment, h)] = h_hits.as_slice() else {
        return Err(Error::AtlasIncomplete("H"));
    };
    let &[(k_segment, k)] = k_hits.as_slice() else {
        return Err(Error::AtlasIncomplete("K"));
    };

    let points_u = vec![
        (UPoint::A, a),
        (UPoint::C, [xt_a, 0.0]),
        (UPoint::F, [x_f, x_f]),
        (UPoint::O, [0.0, 0.0]),
        (UPoint::B, b),
        (UPoint::D, d),
        (UPoint::M, curve.m()),
        (UPoint::E1, [0.0, t_e]),
        (UPoint::E2, [t_e, 0.0]),
        (UPoint::E3, [x_e3, x_e3]),
        (UPoint::H, h),
        (UPoint::K, k),
    ];
    let mut points_v = Vec::with_capacity(VPoint::ALL.len());
    for (label, p) in &points_u {
        let image = label.image();
        if points_v.iter().all(|(l, _)| *l != image) {
            let mut v = map(*p)?;
            if *label == UPoint::O {
                v = [lmax, lmax];
            }
            points_v.push((image, v));
        }
    }
    points_v.sort_by_key(|(l, _)| *l);

    let image = fold_image(n, &curve.path)?;
    let fold_self_intersections = image.self_intersections();
    Ok(CharacteristicAtlas {
        n,
        points_u,
        points_v,
        singular_curve: curve.path.clone(),
        fold_image: image,
        fold_self_intersections,
        curve,
        h_segment,
        k_segment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(p: Point, q: [f64; 2], tol: f64) -> bool {
        (p[0] - q[0]).abs() < tol && (p[1] - q[1]).abs() < tol
    }

    #[test]
    fn pentagonal_atlas() {
        let atlas = characteristic_points(5).unwrap();
        assert!(
            close(atlas.u(UPoint::H), [0.45004, 0.18291], 1e-4),
            "{:?}",
            atlas.u(UPoint::H)
        );
        assert!(
            close(atlas.v(VPoint::H), [0.98929, 0.99946], 1e-4),
            "{:?}",
            atlas.v(VPoint::H)
        );
        assert!(close(atlas.u(UPoint::E1), [0.0, 0.55614], 1e-4));
        assert!((atlas.l_e() - 0.97700).abs() < 1e-4);
        assert!((atlas.l_m() - 1.02992).abs() < 1e-4);
        assert!(atlas.fold_self_intersections.is_empty());
    }

    #[test]
    fn triangular_a_point() {
        let atlas = characteristic_points(3).unwrap();
        assert!((atlas.u(UPoint::A)[1] - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn large_n_a_point_tends_to_half_sqrt3() {
        let atlas = characteristic_points(10_000).unwrap();
        assert!((atlas.u(UPoint::A)[1] - 0.86602).abs() < 1e-4);
    }

    #[test]
    fn mirror_pairs_and_diagonal() {
        let atlas = characteristic_points(7).unwrap();
        for label in UPoint::ALL {
            let p = atlas.u(label);
            match label.mirror() {
                Some(m) => {
                    let q = atlas.u(m);
                    assert!(close(p, [q[1], q[0]], 1e-9), "{label:?}");
                }
                None => assert!((p[0] - p[1]).abs() < 1e-9, "{label:?}"),
            }
        }
    }

    #[test]
    fn json_shape() {
        let atlas = characteristic_points(4).unwrap();
        let v: Value = serde_json::from_str(&atlas.to_json()).unwrap();
        assert_eq!(v["n"], 4);
        assert_eq!(v["points_U"].as_object().unwrap().len(), 12);
        assert_eq!(v["points_V"].as_object().unwrap().len(), 10);
        assert!(v["singular_curve"].as_array().unwrap().len() > 100);
    }

    #[test]
    fn rejects_small_n() {
        assert_eq!(characteristic_points(2).unwrap_err(), Error::InvalidGonCount(2));
    }
}
