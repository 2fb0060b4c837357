//! Enumeration of all Siamese dipyramids with prescribed faces.
//!
//! The coupled height system is reduced to one dimension: with
//! `f = aperture(n, l, .)` and `g = aperture(n, l~, .)`, every solution
//! satisfies `x~ = f(x)` and `R(x) = g(f(x)) - x = 0`. Both apertures are
//! single-valued and decreasing on their height ranges, so scanning `R` for
//! sign changes finds every transversal solution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{aperture_max_raw, aperture_raw, height_max_raw, FaceParams, HeightsPair, SiameseConfig};
use crate::roots::{bracket_scan, golden_minimize, refine_root, Bracket, BISECTION_WIDTH};

pub const DEFAULT_SAMPLES: usize = 4096;

/// Heights at or below this value count as degenerate (not positive).
pub const DEGENERACY_CUTOFF: f64 = 1e-9;

/// Solutions closer than this in `x` are merged.
pub const SEPARATION: f64 = 1e-7;

const TRANSITION_WIDTH: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    pub samples: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
        }
    }
}

/// All positive solutions for one plan, ascending in `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub plan: FaceParams,
    pub solutions: Vec<SiameseConfig>,
    pub regime: usize,
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn heights(&self) -> Vec<HeightsPair> {
        self.solutions.iter().map(|c| c.heights).collect()
    }
}

/// One-dimensional reduction of the height system for a fixed plan.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ReducedSystem {
    nf: f64,
    l: f64,
    l_tilde: f64,
    x_max: f64,
    x_tilde_max: f64,
}

impl ReducedSystem {
    pub(crate) fn new(n: u32, l: f64, l_tilde: f64) -> Self {
        let nf = f64::from(n);
        Self {
            nf,
            l,
            l_tilde,
            x_max: height_max_raw(nf, l),
            x_tilde_max: height_max_raw(nf, l_tilde),
        }
    }

    pub(crate) fn partner(&self, x: f64) -> f64 {
        aperture_raw(self.nf, self.l, x.clamp(0.0, self.x_max))
    }

    pub(crate) fn residual(&self, x: f64) -> f64 {
        let xt = self.partner(x).min(self.x_tilde_max);
        aperture_raw(self.nf, self.l_tilde, xt) - x
    }

    /// Smallest `x` whose partner height is still within range of `g`.
    pub(crate) fn scan_start(&self) -> f64 {
        if aperture_max_raw(self.nf, self.l) <= self.x_tilde_max {
            return 0.0;
        }
        let br = Bracket::Interval {
            lo: 0.0,
            hi: self.x_max,
        };
        let x0 = refine_root(|x| self.partner(x) - self.x_tilde_max, br, BISECTION_WIDTH);
        // nudge to the side where the partner is in range
        if self.partner(x0) > self.x_tilde_max {
            x0.next_up()
        } else {
            x0
        }
    }

    pub(crate) fn domain(&self) -> (f64, f64) {
        (self.scan_start(), self.x_max)
    }
}

/// Enumerates positive solutions with the default scan resolution.
pub fn solve_heights(plan: &FaceParams) -> Result<SolutionSet> {
    solve_heights_with(plan, &SolverOptions::default())
}

pub fn solve_heights_with(plan: &FaceParams, opts: &SolverOptions) -> Result<SolutionSet> {
    let sys = ReducedSystem::new(plan.n(), plan.l(), plan.l_tilde());
    let (a, b) = sys.domain();
    let mut xs = Vec::new();
    if a < b {
        let brackets = bracket_scan(|x| sys.residual(x), a, b, opts.samples)?;
        for br in brackets {
            xs.push(refine_root(|x| sys.residual(x), br, BISECTION_WIDTH));
        }
    }
    Ok(assemble(plan, &sys, xs))
}

fn assemble(plan: &FaceParams, sys: &ReducedSystem, xs: Vec<f64>) -> SolutionSet {
    let mut solutions: Vec<SiameseConfig> = Vec::new();
    for x in xs {
        let xt = sys.partner(x);
        if x <= DEGENERACY_CUTOFF || xt <= DEGENERACY_CUTOFF {
            continue;
        }
        let Ok(cfg) = SiameseConfig::new(*plan, HeightsPair::new(x, xt)) else {
            continue;
        };
        if solutions.iter().all(|s| (s.x() - x).abs() > SEPARATION) {
            solutions.push(cfg);
        }
    }
    solutions.sort_by(|p, q| p.x().total_cmp(&q.x()));
    let regime = solutions.len();
    SolutionSet {
        plan: *plan,
        solutions,
        regime,
    }
}

/// A plan at which the solution count changes, with the solutions there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    pub base_length: f64,
    pub solutions: SolutionSet,
    /// Index into `solutions` of the double (tangent) root, if the
    /// transition is a tangency rather than a boundary exit.
    pub tangent: Option<usize>,
}

/// Locates the base length `l` between `lo` and `hi` (with `l~` fixed) where
/// the number of solutions changes.
pub fn transition_base_length(n: u32, l_tilde: f64, lo: f64, hi: f64) -> Result<Transition> {
    transition_base_length_with(n, l_tilde, lo, hi, &SolverOptions::default())
}

pub fn transition_base_length_with(n: u32, l_tilde: f64, lo: f64, hi: f64, opts: &SolverOptions) -> Result<Transition> {
    let solve_at = |l: f64| -> Result<SolutionSet> { solve_heights_with(&FaceParams::new(n, l, l_tilde)?, opts) };
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let mut set_lo = solve_at(lo)?;
    let mut set_hi = solve_at(hi)?;
    if set_lo.regime == set_hi.regime {
        return Err(Error::NoTransition { count: set_lo.regime });
    }
    while hi - lo > TRANSITION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let set_mid = solve_at(mid)?;
        if set_mid.regime == set_lo.regime {
            lo = mid;
            set_lo = set_mid;
        } else {
            hi = mid;
            set_hi = set_mid;
        }
    }

    let (rich, rich_l) = if set_lo.regime > set_hi.regime {
        (&set_lo, lo)
    } else {
        (&set_hi, hi)
    };
    let closest_pair = rich
        .solutions
        .windows(2)
        .map(|w| (w[0].x(), w[1].x()))
        .min_by(|p, q| (p.1 - p.0).total_cmp(&(q.1 - q.0)));

    let tangency = closest_pair.and_then(|(xa, xb)| refine_tangency(n, l_tilde, rich_l, xa, xb));
    let Some((l0, x_double)) = tangency else {
        // boundary exit or an unresolvable tangency: report the bisected plan
        let l0 = 0.5 * (lo + hi);
        let set = solve_at(l0)?;
        return Ok(Transition {
            base_length: l0,
            solutions: set,
            tangent: None,
        });
    };

    let plan = FaceParams::new(n, l0, l_tilde)?;
    let sys = ReducedSystem::new(n, l0, l_tilde);
    let mut set = solve_heights_with(&plan, opts)?;
    set.solutions.retain(|c| (c.x() - x_double).abs() > 1e-5);
    let xt = sys.partner(x_double);
    let double = SiameseConfig::new(plan, HeightsPair::new(x_double, xt))?;
    set.solutions.push(double);
    set.solutions.sort_by(|p, q| p.x().total_cmp(&q.x()));
    set.regime = set.solutions.len();
    let tangent = set.solutions.iter().position(|c| c.x() == x_double);
    Ok(Transition {
        base_length: l0,
        solutions: set,
        tangent,
    })
}

/// Newton on `R(x; l) = 0, dR/dx(x; l) = 0`, seeded between two merging
/// roots; finished by a minimum-of-`|R|` search at the converged `l`.
fn refine_tangency(n: u32, l_tilde: f64, l_seed: f64, xa: f64, xb: f64) -> Option<(f64, f64)> {
    let residual = |x: f64, l: f64| ReducedSystem::new(n, l, l_tilde).residual(x);
    let h = 1e-6;
    let slope = |x: f64, l: f64| (residual(x + h, l) - residual(x - h, l)) / (2.0 * h);
    let (mut x, mut l) = (0.5 * (xa + xb), l_seed);
    let mut converged = false;
    for _ in 0..60 {
        let f1 = residual(x, l);
        let f2 = slope(x, l);
        if !f1.is_finite() || !f2.is_finite() {
            return None;
        }
        if f1.abs() < 1e-15 && f2.abs() < 1e-9 {
            converged = true;
            break;
        }
        let a11 = f2;
        let a12 = (residual(x, l + h) - residual(x, l - h)) / (2.0 * h);
        let a21 = (slope(x + h, l) - slope(x - h, l)) / (2.0 * h);
        let a22 = (slope(x, l + h) - slope(x, l - h)) / (2.0 * h);
        let det = a11 * a22 - a12 * a21;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let dx = (f1 * a22 - a12 * f2) / det;
        let dl = (a11 * f2 - a21 * f1) / det;
        x -= dx;
        l -= dl;
        if dx.abs() < 1e-14 && dl.abs() < 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged || (l - l_seed).abs() > 1e-3 {
        return None;
    }
    let span = (xb - xa).abs().max(1e-6);
    let x = golden_minimize(|t| residual(t, l).abs(), x - span, x + span, 1e-14);
    Some((l, x))
}
