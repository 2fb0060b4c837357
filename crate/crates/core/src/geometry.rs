//! Closed-form relations between face shapes and heights of Siamese dipyramids.
//!
//! Every leg has unit length. A Goldberg dipyramid with base length `l` and
//! height `x` has aperture `y = sqrt(1 - x^2) * sin(n * asin(l / (2 sqrt(1 - x^2))))`;
//! two of them close up into a Siamese dipyramid when the height of each equals
//! the aperture of the other. Inverting that relation gives the rigidity map
//! `(x, x~) -> (l, l~)`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arcsin arguments within this distance outside `[-1, 1]` are clamped.
pub const ASIN_CLAMP: f64 = 1e-12;

/// Maximal residual of a closed configuration.
pub const CLOSURE_TOLERANCE: f64 = 1e-10;

/// Slack used by the relaxed (closure of `U`) membership test.
pub const RELAXED_TOLERANCE: f64 = 1e-12;

pub(crate) fn checked_asin(arg: f64) -> Option<f64> {
    if arg.is_nan() {
        None
    } else if arg.abs() <= 1.0 {
        Some(arg.asin())
    } else if arg.abs() <= 1.0 + ASIN_CLAMP {
        Some(FRAC_PI_2.copysign(arg))
    } else {
        None
    }
}

fn check_gon_count(n: u32) -> Result<()> {
    if n < 3 {
        Err(Error::InvalidGonCount(n))
    } else {
        Ok(())
    }
}

/// Open interval `(2 sin(pi/2n), 2 sin(pi/n))` of admissible base lengths.
pub fn base_length_bounds(n: u32) -> (f64, f64) {
    let nf = f64::from(n);
    (2.0 * (PI / (2.0 * nf)).sin(), 2.0 * (PI / nf).sin())
}

/// Strict test of the triangle restriction on a base length.
pub fn validate_base_length(n: u32, l: f64) -> Result<bool> {
    check_gon_count(n)?;
    let (lo, hi) = base_length_bounds(n);
    Ok(lo < l && l < hi)
}

fn require_base_length(n: u32, l: f64) -> Result<()> {
    if validate_base_length(n, l)? {
        Ok(())
    } else {
        let (lo, hi) = base_length_bounds(n);
        Err(Error::BaseLengthOutOfRange { n, l, lo, hi })
    }
}

/// Combinatorial and metric plan of a Siamese dipyramid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaceParams {
    n: u32,
    l: f64,
    l_tilde: f64,
}

impl FaceParams {
    pub fn new(n: u32, l: f64, l_tilde: f64) -> Result<Self> {
        require_base_length(n, l)?;
        require_base_length(n, l_tilde)?;
        Ok(Self { n, l, l_tilde })
    }

    pub fn equifacial(n: u32, l: f64) -> Result<Self> {
        Self::new(n, l, l)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn l_tilde(&self) -> f64 {
        self.l_tilde
    }

    /// Plan with the two triangle families exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            n: self.n,
            l: self.l_tilde,
            l_tilde: self.l,
        }
    }
}

/// Half-heights `(x, x~)` of the two Goldberg dipyramids, in leg units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeightsPair {
    pub x: f64,
    pub x_tilde: f64,
}

impl HeightsPair {
    pub fn new(x: f64, x_tilde: f64) -> Self {
        Self { x, x_tilde }
    }

    pub fn swapped(&self) -> Self {
        Self {
            x: self.x_tilde,
            x_tilde: self.x,
        }
    }

    pub fn as_array(&self) -> [f64; 2] {
        [self.x, self.x_tilde]
    }
}

/// A plan together with heights that close it up.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SiameseConfig {
    pub plan: FaceParams,
    pub heights: HeightsPair,
    pub residual: (f64, f64),
}

impl SiameseConfig {
    /// Evaluates the closure residual and refuses configurations above
    /// [`CLOSURE_TOLERANCE`].
    pub fn new(plan: FaceParams, heights: HeightsPair) -> Result<Self> {
        let (r1, r2) = system_residual(&plan, &heights)?;
        if r1.abs() >= CLOSURE_TOLERANCE || r2.abs() >= CLOSURE_TOLERANCE {
            return Err(Error::Closure { r1, r2 });
        }
        Ok(Self {
            plan,
            heights,
            residual: (r1, r2),
        })
    }

    pub fn x(&self) -> f64 {
        self.heights.x
    }

    pub fn x_tilde(&self) -> f64 {
        self.heights.x_tilde
    }
}

/// Largest half-height of a Goldberg dipyramid with base `l`.
pub fn height_max(n: u32, l: f64) -> Result<f64> {
    require_base_length(n, l)?;
    Ok(height_max_raw(f64::from(n), l))
}

/// Aperture of the flat (zero height) Goldberg dipyramid with base `l`.
pub fn aperture_max(n: u32, l: f64) -> Result<f64> {
    require_base_length(n, l)?;
    Ok(aperture_max_raw(f64::from(n), l))
}

pub(crate) fn height_max_raw(nf: f64, l: f64) -> f64 {
    let s = (PI / nf).sin();
    (1.0 - l * l / (4.0 * s * s)).max(0.0).sqrt()
}

pub(crate) fn aperture_max_raw(nf: f64, l: f64) -> f64 {
    (nf * (l / 2.0).asin()).sin()
}

/// Half-aperture `y` of the Goldberg dipyramid `D(l; x, y)`.
pub fn aperture(n: u32, l: f64, x: f64) -> Result<f64> {
    require_base_length(n, l)?;
    if x < 0.0 || x.is_nan() {
        return Err(Error::Domain {
            quantity: "x",
            value: x,
            bound: "x >= 0",
        });
    }
    if x > height_max_raw(f64::from(n), l) {
        return Err(Error::Domain {
            quantity: "x",
            value: x,
            bound: "x <= x_max(n, l)",
        });
    }
    Ok(aperture_raw(f64::from(n), l, x))
}

/// Unchecked aperture; NaN when the arcsin argument leaves its domain.
pub(crate) fn aperture_raw(nf: f64, l: f64, x: f64) -> f64 {
    let s = (1.0 - x * x).sqrt();
    match checked_asin(l / (2.0 * s)) {
        Some(a) => s * (nf * a).sin(),
        None => f64::NAN,
    }
}

/// `l(a, b) = 2 sqrt(1 - a^2) sin(pi/n - asin(b / sqrt(1 - a^2)) / n)`.
pub(crate) fn base_from_heights(nf: f64, a: f64, b: f64) -> Option<f64> {
    if !(a.abs() < 1.0) {
        return None;
    }
    let s = (1.0 - a * a).sqrt();
    let t = checked_asin(b / s)?;
    Some(2.0 * s * (PI / nf - t / nf).sin())
}

/// Rigidity map without the triangle restriction check: only requires the
/// arcsin arguments to be admissible. Used by curve tracing and on the
/// boundary of the height domain.
pub fn rigidity_map(n: u32, x: f64, x_tilde: f64) -> Result<(f64, f64)> {
    check_gon_count(n)?;
    let nf = f64::from(n);
    match (base_from_heights(nf, x, x_tilde), base_from_heights(nf, x_tilde, x)) {
        (Some(l), Some(lt)) => Ok((l, lt)),
        _ => Err(Error::OutsideDomain {
            x,
            x_tilde,
            reason: "arcsin argument exceeds 1",
        }),
    }
}

/// Edge lengths `(l, l~)` of the Siamese dipyramid with heights `(x, x~)`.
pub fn edge_lengths(n: u32, x: f64, x_tilde: f64) -> Result<(f64, f64)> {
    let (l, lt) = rigidity_map(n, x, x_tilde)?;
    let (lo, hi) = base_length_bounds(n);
    let inside = |v: f64| lo < v && v < hi;
    if !inside(l) || !inside(lt) {
        return Err(Error::OutsideDomain {
            x,
            x_tilde,
            reason: "edge length violates the triangle restriction",
        });
    }
    Ok((l, lt))
}

/// Closure residuals of the coupled height system.
pub fn system_residual(plan: &FaceParams, heights: &HeightsPair) -> Result<(f64, f64)> {
    let nf = f64::from(plan.n);
    let HeightsPair { x, x_tilde } = *heights;
    let eval = |l: f64, h: f64| -> Result<f64> {
        if !(0.0..1.0).contains(&h) {
            return Err(Error::OutsideDomain {
                x,
                x_tilde,
                reason: "height outside [0, 1)",
            });
        }
        let y = aperture_raw(nf, l, h);
        if y.is_nan() {
            Err(Error::OutsideDomain {
                x,
                x_tilde,
                reason: "arcsin argument exceeds 1",
            })
        } else {
            Ok(y)
        }
    };
    let r1 = x_tilde - eval(plan.l, x)?;
    let r2 = x - eval(plan.l_tilde, x_tilde)?;
    Ok((r1, r2))
}

/// Membership in the height domain `U`: both edge lengths are defined and lie
/// strictly inside the admissible interval.
pub fn domain_membership(n: u32, x: f64, x_tilde: f64) -> bool {
    x >= 0.0 && x_tilde >= 0.0 && edge_lengths(n, x, x_tilde).is_ok()
}

/// Membership in the closure of `U`, with [`RELAXED_TOLERANCE`] slack on the
/// interval ends and on the axes.
pub fn domain_membership_relaxed(n: u32, x: f64, x_tilde: f64) -> bool {
    if x < -RELAXED_TOLERANCE || x_tilde < -RELAXED_TOLERANCE {
        return false;
    }
    let (x, x_tilde) = (x.max(0.0), x_tilde.max(0.0));
    match rigidity_map(n, x, x_tilde) {
        Ok((l, lt)) => {
            let (lo, hi) = base_length_bounds(n);
            let ok = |v: f64| v >= lo - RELAXED_TOLERANCE && v <= hi + RELAXED_TOLERANCE;
            ok(l) && ok(lt)
        }
        Err(_) => false,
    }
}
