//! Pseudo-arclength continuation of implicit planar curves `G(p) = 0`.

use crate::error::{Error, Result};
use crate::roots::{refine_root, Bracket, BISECTION_WIDTH};

pub type Point = [f64; 2];

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

pub(crate) fn add_scaled(a: Point, d: Point, s: f64) -> Point {
    [a[0] + s * d[0], a[1] + s * d[1]]
}

pub(crate) fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub(crate) fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

pub(crate) fn dist(a: Point, b: Point) -> f64 {
    norm(sub(a, b))
}

/// A scalar field whose zero set is traced. `value` returns NaN where the
/// field is undefined.
pub trait ImplicitCurve {
    fn value(&self, p: Point) -> f64;
    fn gradient(&self, p: Point) -> Point;
    /// Corrector convergence threshold on `|value|`.
    fn tolerance(&self) -> f64 {
        1e-13
    }
}

/// Corrector and stepping machinery shared by every traced curve.
pub struct Tracer<'a, C: ImplicitCurve + ?Sized> {
    pub curve: &'a C,
    pub step: f64,
    pub max_halvings: usize,
}

impl<'a, C: ImplicitCurve + ?Sized> Tracer<'a, C> {
    pub fn new(curve: &'a C, step: f64) -> Self {
        Self {
            curve,
            step,
            max_halvings: 50,
        }
    }

    /// Unit tangent at `p`, oriented to agree with `hint`.
    pub fn tangent(&self, p: Point, hint: Point) -> Option<Point> {
        let g = self.curve.gradient(p);
        let len = norm(g);
        if !(len > 0.0) || !len.is_finite() {
            return None;
        }
        let t = [-g[1] / len, g[0] / len];
        Some(if dot(t, hint) < 0.0 { [-t[0], -t[1]] } else { t })
    }

    /// Newton along the line through `pred` normal to `tangent`.
    pub fn correct(&self, pred: Point, tangent: Point, reach: f64) -> Option<Point> {
        let normal = [-tangent[1], tangent[0]];
        let mut mu = 0.0;
        for _ in 0..30 {
            let q = add_scaled(pred, normal, mu);
            let v = self.curve.value(q);
            if !v.is_finite() {
                return None;
            }
            if v.abs() <= self.curve.tolerance() {
                return Some(q);
            }
            let slope = dot(self.curve.gradient(q), normal);
            if !(slope.abs() > 0.0) || !slope.is_finite() {
                return None;
            }
            mu -= v / slope;
            if mu.abs() > reach {
                return None;
            }
        }
        None
    }

    /// Newton projection of `p` onto the curve along the gradient.
    pub fn project(&self, p: Point) -> Option<Point> {
        let mut q = p;
        for _ in 0..50 {
            let v = self.curve.value(q);
            if !v.is_finite() {
                return None;
            }
            if v.abs() <= self.curve.tolerance() {
                return Some(q);
            }
            let g = self.curve.gradient(q);
            let gg = dot(g, g);
            if !(gg > 0.0) || !gg.is_finite() {
                return None;
            }
            q = add_scaled(q, g, -v / gg);
        }
        None
    }

    /// One predictor-corrector step from `p`; halves the step on failure.
    pub fn advance(&self, p: Point, tangent: Point) -> Result<(Point, Point)> {
        let mut h = self.step;
        for _ in 0..=self.max_halvings {
            let pred = add_scaled(p, tangent, h);
            if let Some(q) = self.correct(pred, tangent, h) {
                if let Some(t) = self.tangent(q, tangent) {
                    if dist(p, q) > 0.0 {
                        return Ok((q, t));
                    }
                }
            }
            h *= 0.5;
        }
        Err(Error::Trace {
            x: p[0],
            x_tilde: p[1],
            reason: format!("corrector did not converge after {} halvings", self.max_halvings),
        })
    }

    /// Finds a point on the curve between two nearby curve points `a`, `b`
    /// where `g` vanishes, given that `g` changes sign between them.
    pub fn locate_between<G>(&self, a: Point, b: Point, mut g: G) -> Option<Point>
    where
        G: FnMut(Point) -> f64,
    {
        let chord = sub(b, a);
        let mut eval = |s: f64| match self.project(add_scaled(a, chord, s)) {
            Some(q) => g(q),
            None => f64::NAN,
        };
        let (g0, g1) = (eval(0.0), eval(1.0));
        let br = if g0 == 0.0 {
            Bracket::Point(0.0)
        } else if g1 == 0.0 {
            Bracket::Point(1.0)
        } else if (g0 < 0.0) != (g1 < 0.0) {
            Bracket::Interval { lo: 0.0, hi: 1.0 }
        } else {
            return None;
        };
        let s = refine_root(&mut eval, br, BISECTION_WIDTH);
        self.project(add_scaled(a, chord, s))
    }
}
