//! Fold curve `det J = 0` of the rigidity map and its image.

use crate::atlas::jacobian::det_or_nan;
use crate::atlas::path::{PlanarPath, Plane};
use crate::continuation::{ImplicitCurve, Point, Tracer};
use crate::error::{Error, Result};
use crate::geometry::{base_length_bounds, rigidity_map};
use crate::roots::find_roots;

pub const DEFAULT_STEP: f64 = 1e-3;

const MAX_STEPS: usize = 200_000;
const DIAGONAL_SAMPLES: usize = 1024;

/// `n^2 det J`, which is O(1) for every `n`.
pub(crate) struct DetField {
    n: u32,
    scale: f64,
}

impl DetField {
    pub(crate) fn new(n: u32) -> Self {
        Self {
            n,
            scale: f64::from(n) * f64::from(n),
        }
    }
}

impl ImplicitCurve for DetField {
    fn value(&self, p: Point) -> f64 {
        self.scale * det_or_nan(self.n, p[0], p[1])
    }

    fn gradient(&self, p: Point) -> Point {
        let h = 1e-7;
        let f = |a: f64, b: f64| self.value([a, b]);
        [
            (f(p[0] + h, p[1]) - f(p[0] - h, p[1])) / (2.0 * h),
            (f(p[0], p[1] + h) - f(p[0], p[1] - h)) / (2.0 * h),
        ]
    }
}

/// Margin of a point inside the closure of `U`: `min(l, l~) - 2 sin(pi/2n)`.
/// Negative or NaN outside.
pub(crate) fn boundary_margin(n: u32, p: Point) -> f64 {
    if p[0] < 0.0 || p[1] < 0.0 {
        return f64::NAN;
    }
    match rigidity_map(n, p[0], p[1]) {
        Ok((l, lt)) => l.min(lt) - base_length_bounds(n).0,
        Err(_) => f64::NAN,
    }
}

/// Diagonal height `x` with `l(x, x) = target`, searched on `(0, 1/sqrt 2)`.
pub(crate) fn diagonal_with_length(n: u32, target: f64) -> Result<Vec<f64>> {
    let top = std::f64::consts::FRAC_1_SQRT_2 * (1.0 - 1e-12);
    find_roots(
        |x| rigidity_map(n, x, x).map_or(f64::NAN, |(l, _)| l - target),
        0.0,
        top,
        DIAGONAL_SAMPLES,
    )
}

/// Diagonal point of the fold curve.
pub(crate) fn symmetric_fold_point(n: u32) -> Result<f64> {
    let lmin = base_length_bounds(n).0;
    let x_f = *diagonal_with_length(n, lmin)?
        .first()
        .ok_or(Error::AtlasIncomplete("F"))?;
    let field = DetField::new(n);
    let roots = find_roots(|x| field.value([x, x]), 1e-3 * x_f, x_f, DIAGONAL_SAMPLES)?;
    roots.first().copied().ok_or(Error::AtlasIncomplete("M"))
}

/// Traced fold curve from its boundary end `B` through `M` to `D`.
#[derive(Debug, Clone)]
pub struct SingularCurve {
    pub n: u32,
    pub path: PlanarPath,
    /// Index of the diagonal point `M` in `path`.
    pub m_index: usize,
}

impl SingularCurve {
    pub fn trace(n: u32, step: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGonCount(n));
        }
        if !(step > 0.0) {
            return Err(Error::InvalidArgument(format!("step {step} must be positive")));
        }
        let x_m = symmetric_fold_point(n)?;
        let m = [x_m, x_m];
        let field = DetField::new(n);
        let tracer = Tracer::new(&field, step);
        let toward_b = trace_branch(n, &tracer, m, [-1.0, 1.0])?;
        let toward_d = trace_branch(n, &tracer, m, [1.0, -1.0])?;

        let mut points: Vec<Point> = toward_b.into_iter().rev().collect();
        let m_index = points.len();
        points.push(m);
        points.extend(toward_d);
        let path = PlanarPath::new(Plane::U, points)?;
        Ok(Self { n, path, m_index })
    }

    pub fn m(&self) -> Point {
        self.path.points()[self.m_index]
    }

    /// End with the shorter second edge length (`B`).
    pub fn b(&self) -> Point {
        self.path.points()[0]
    }

    pub fn d(&self) -> Point {
        *self.path.points().last().expect("trace is non-empty")
    }

    pub(crate) fn tracer_field(&self) -> DetField {
        DetField::new(self.n)
    }
}

/// Follows the fold curve from `start` in direction `hint` until it leaves
/// the closure of `U`; the last point is the boundary crossing.
fn trace_branch(n: u32, tracer: &Tracer<'_, DetField>, start: Point, hint: Point) -> Result<Vec<Point>> {
    let mut p = start;
    let mut t = tracer.tangent(p, hint).ok_or_else(|| Error::Trace {
        x: p[0],
        x_tilde: p[1],
        reason: "degenerate gradient at the seed".into(),
    })?;
    let mut out = Vec::new();
    for _ in 0..MAX_STEPS {
        let (q, tq) = tracer.advance(p, t)?;
        let margin = boundary_margin(n, q);
        if margin > 0.0 {
            out.push(q);
            p = q;
            t = tq;
            continue;
        }
        let end = tracer
            .locate_between(p, q, |r| boundary_margin(n, r))
            .ok_or_else(|| Error::Trace {
                x: p[0],
                x_tilde: p[1],
                reason: "could not locate the boundary crossing".into(),
            })?;
        out.push(end);
        return Ok(out);
    }
    Err(Error::Trace {
        x: p[0],
        x_tilde: p[1],
        reason: "fold curve did not reach the boundary".into(),
    })
}

/// Traces the fold curve with the given step.
pub fn trace_singular_curve(n: u32, step: f64) -> Result<PlanarPath> {
    Ok(SingularCurve::trace(n, step)?.path)
}

/// Pointwise image of a `U`-plane path under the rigidity map.
pub fn fold_image(n: u32, curve: &PlanarPath) -> Result<PlanarPath> {
    if curve.plane != Plane::U {
        return Err(Error::InvalidArgument("fold image needs a U-plane path".into()));
    }
    let mut pts = Vec::with_capacity(curve.len());
    for p in curve.points() {
        let (l, lt) = rigidity_map(n, p[0], p[1])?;
        pts.push([l, lt]);
    }
    PlanarPath::new(Plane::V, pts)
}
