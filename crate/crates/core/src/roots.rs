//! Sign-change scanning and bracketed root refinement for scalar functions.

use crate::error::{Error, Result};

/// Samples with `|f| < POINT_ROOT` are reported as exact roots.
pub const POINT_ROOT: f64 = 1e-13;

/// Default bisection width.
pub const BISECTION_WIDTH: f64 = 1e-13;

const NEWTON_STEPS: usize = 20;
const FD_STEP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bracket {
    /// `f` changes sign strictly between the two abscissas.
    Interval { lo: f64, hi: f64 },
    /// A sample where `f` vanished to within [`POINT_ROOT`].
    Point(f64),
}

impl Bracket {
    pub fn lo(&self) -> f64 {
        match *self {
            Bracket::Interval { lo, .. } => lo,
            Bracket::Point(x) => x,
        }
    }

    pub fn hi(&self) -> f64 {
        match *self {
            Bracket::Interval { hi, .. } => hi,
            Bracket::Point(x) => x,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo() <= x && x <= self.hi()
    }
}

/// Samples `f` at `samples` equispaced abscissas on `[a, b]` (ends included)
/// and returns every strict sign change between consecutive non-zero samples
/// plus every sample that is itself a root, in ascending order.
pub fn bracket_scan<F>(mut f: F, a: f64, b: f64, samples: usize) -> Result<Vec<Bracket>>
where
    F: FnMut(f64) -> f64,
{
    if !(a < b) {
        return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("{samples} samples, need >= 2")));
    }
    let step = (b - a) / (samples - 1) as f64;
    let abscissa = |i: usize| if i + 1 == samples { b } else { a + i as f64 * step };

    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..samples {
        let x = abscissa(i);
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite { x, value: fx });
        }
        if fx.abs() < POINT_ROOT {
            out.push(Bracket::Point(x));
            prev = None;
            continue;
        }
        if let Some((xp, fp)) = prev {
            if (fp < 0.0) != (fx < 0.0) {
                out.push(Bracket::Interval { lo: xp, hi: x });
            }
        }
        prev = Some((x, fx));
    }
    Ok(out)
}

/// Bisects a bracket down to width `tol`, then polishes with up to twenty
/// finite-difference Newton steps that stay inside the bracket. Returns the
/// visited abscissa with the smallest `|f|`.
pub fn refine_root<F>(mut f: F, bracket: Bracket, tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = match bracket {
        Bracket::Point(x) => return x,
        Bracket::Interval { lo, hi } => (lo, hi),
    };
    let (outer_lo, outer_hi) = (lo, hi);
    let tol = tol.max(0.0);
    let mut f_lo = f(lo);
    let f_hi = f(hi);

    let mut best = if f_lo.abs() <= f_hi.abs() {
        (lo, f_lo)
    } else {
        (hi, f_hi)
    };
    let consider = |x: f64, fx: f64, best: &mut (f64, f64)| {
        if fx.is_finite() && fx.abs() < best.1.abs() {
            *best = (x, fx);
        }
    };

    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        consider(mid, f_mid, &mut best);
        if f_mid == 0.0 {
            return mid;
        }
        if !f_mid.is_finite() {
            break;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    let mut fx = f(x);
    consider(x, fx, &mut best);
    for _ in 0..NEWTON_STEPS {
        if !fx.is_finite() || fx == 0.0 {
            break;
        }
        let slope = (f(x + FD_STEP) - f(x - FD_STEP)) / (2.0 * FD_STEP);
        if !slope.is_finite() || slope == 0.0 {
            break;
        }
        let next = x - fx / slope;
        if !(outer_lo..=outer_hi).contains(&next) {
            break;
        }
        let f_next = f(next);
        if !f_next.is_finite() || f_next.abs() >= fx.abs() {
            consider(next, f_next, &mut best);
            break;
        }
        x = next;
        fx = f_next;
        consider(x, fx, &mut best);
    }
    best.0
}

/// Roots of `f` on `[a, b]`: scan followed by refinement of every bracket.
pub fn find_roots<F>(mut f: F, a: f64, b: f64, samples: usize) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> f64,
{
    let brackets = bracket_scan(&mut f, a, b, samples)?;
    Ok(brackets
        .into_iter()
        .map(|br| refine_root(&mut f, br, BISECTION_WIDTH))
        .collect())
}

/// Golden-section search for a minimizer of `f` on `[a, b]`.
pub(crate) fn golden_minimize<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..300 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
