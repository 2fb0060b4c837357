//! Natural deformations of equifacial Siamese dipyramids and their
//! variation measures.
//!
//! For an equifacial plan `(n, l0, l0)` with three isomers `P1, P2, P3`, the
//! natural deformation is the curve `l + l~ = 2 l0` in the height domain
//! through the three isomers. Along it the edge lengths vary at most by
//! `delta_i`, attained where the curve crosses the fold curve (at the
//! pre-images of the points `H^` and `K^`).

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::atlas::jacobian::jacobian;
use crate::atlas::points::{characteristic_points, CharacteristicAtlas, UPoint};
use crate::atlas::singular::DEFAULT_STEP;
use crate::continuation::{dist, dot, sub, ImplicitCurve, Point, Tracer};
use crate::error::{Error, Result};
use crate::geometry::{domain_membership, edge_lengths, rigidity_map, validate_base_length, FaceParams};
use crate::numfmt::{sig17, to_json};
use crate::roots::golden_minimize;
use crate::solver::{solve_heights, SolutionSet};

/// Default almost-flexion threshold.
pub const DEFAULT_EPSILON: f64 = 1e-3;

/// Agreement required between the two evaluations of `delta_i`.
pub const DELTA_CROSS_CHECK: f64 = 1e-6;

const PATH_STEP: f64 = 1e-3;
const MAX_PATH_STEPS: usize = 100_000;

/// `l + l~ - 2 l0` over the height domain.
struct SumLevel {
    n: u32,
    l0: f64,
}

impl ImplicitCurve for SumLevel {
    fn value(&self, p: Point) -> f64 {
        rigidity_map(self.n, p[0], p[1]).map_or(f64::NAN, |(l, lt)| l + lt - 2.0 * self.l0)
    }

    fn gradient(&self, p: Point) -> Point {
        match jacobian(self.n, p[0], p[1]) {
            Ok(j) => [j.dl_dx + j.dlt_dx, j.dl_dxt + j.dlt_dxt],
            Err(_) => [f64::NAN, f64::NAN],
        }
    }
}

/// One sample of a natural deformation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub t: f64,
    pub x: f64,
    pub x_tilde: f64,
    pub l: f64,
    pub l_tilde: f64,
    pub rel_dl: f64,
    pub rel_dlt: f64,
}

impl PathSample {
    fn at(n: u32, l0: f64, t: f64, p: Point) -> Result<Self> {
        let (l, l_tilde) = rigidity_map(n, p[0], p[1])?;
        Ok(Self {
            t,
            x: p[0],
            x_tilde: p[1],
            l,
            l_tilde,
            rel_dl: (l - l0).abs() / l0,
            rel_dlt: (l_tilde - l0).abs() / l0,
        })
    }

    pub fn heights(&self) -> Point {
        [self.x, self.x_tilde]
    }

    pub fn max_relative(&self) -> f64 {
        self.rel_dl.max(self.rel_dlt)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeformationPath {
    pub n: u32,
    pub l0: f64,
    pub samples: Vec<PathSample>,
    /// Sample indices of `P1`, `P2`, `P3`.
    pub anchors: [usize; 3],
    pub hat_h: Point,
    pub hat_k: Point,
}

impl DeformationPath {
    pub const CSV_HEADER: [&'static str; 7] = ["t", "x", "x_tilde", "l", "l_tilde", "rel_dl", "rel_dlt"];

    pub fn max_relative_deviation(&self) -> f64 {
        self.samples.iter().map(PathSample::max_relative).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Inconsistent(format!("csv: {e}"));
        w.write_record(Self::CSV_HEADER).map_err(io)?;
        for s in &self.samples {
            let row = [s.t, s.x, s.x_tilde, s.l, s.l_tilde, s.rel_dl, s.rel_dlt].map(sig17);
            w.write_record(&row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Inconsistent(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Inconsistent(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let samples: Vec<_> = self
            .samples
            .iter()
            .map(|s| [s.t, s.x, s.x_tilde, s.l, s.l_tilde, s.rel_dl, s.rel_dlt])
            .collect();
        to_json(&json!({
            "n": self.n,
            "l0": self.l0,
            "anchors": self.anchors,
            "hat_points": {"H": self.hat_h, "K": self.hat_k},
            "columns": Self::CSV_HEADER,
            "samples": samples,
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlexionReport {
    pub n: u32,
    pub l0: f64,
    pub epsilon: f64,
    pub admissible: bool,
    pub delta_i: Option<f64>,
    pub delta_e: Option<f64>,
    /// Admissibility window `((l_H + l_K)/2, l_M)`.
    pub window: (f64, f64),
    pub verdict: bool,
}

impl FlexionReport {
    pub fn to_json(&self) -> String {
        to_json(&json!({
            "n": self.n,
            "l0": self.l0,
            "epsilon": self.epsilon,
            "admissible": self.admissible,
            "delta_i": self.delta_i,
            "delta_e": self.delta_e,
            "window": [self.window.0, self.window.1],
            "verdict": self.verdict,
        }))
    }
}

/// Atlas-backed evaluator for one `n`; reuse it across many `l0`.
#[derive(Debug, Clone)]
pub struct Deformation {
    atlas: CharacteristicAtlas,
}

impl Deformation {
    pub fn new(n: u32) -> Result<Self> {
        Ok(Self {
            atlas: characteristic_points(n)?,
        })
    }

    pub fn from_atlas(atlas: CharacteristicAtlas) -> Self {
        Self { atlas }
    }

    pub fn atlas(&self) -> &CharacteristicAtlas {
        &self.atlas
    }

    pub fn n(&self) -> u32 {
        self.atlas.n
    }

    /// Open interval of admissible `l0`.
    pub fn window(&self) -> (f64, f64) {
        (self.atlas.hk_mean(), self.atlas.l_m())
    }

    pub fn admissible(&self, l0: f64) -> Result<bool> {
        validate_base_length(self.n(), l0)?;
        let (lo, hi) = self.window();
        Ok(lo < l0 && l0 < hi)
    }

    fn require_admissible(&self, l0: f64) -> Result<()> {
        if self.admissible(l0)? {
            Ok(())
        } else {
            let (lo, hi) = self.window();
            Err(Error::NotAdmissible {
                n: self.n(),
                l0,
                lo,
                hi,
            })
        }
    }

    /// Crossing of `l + l~ = 2 l0` with the fold curve between `M` and the
    /// point labelled `end` (`H` or `K`), as a point of the height domain.
    fn fold_crossing(&self, l0: f64, end: UPoint) -> Result<Point> {
        let curve = &self.atlas.curve;
        let pts = curve.path.points();
        let m = curve.m_index;
        let seg = if end == UPoint::H {
            self.atlas.h_segment
        } else {
            self.atlas.k_segment
        };
        let mut walk: Vec<Point> = if seg >= m {
            pts[m..=seg].to_vec()
        } else {
            pts[seg + 1..=m].iter().rev().copied().collect()
        };
        walk.push(self.atlas.u(end));

        let level = SumLevel { n: self.n(), l0 };
        let g = |p: Point| level.value(p);
        let field = curve.tracer_field();
        let tracer = Tracer::new(&field, DEFAULT_STEP);
        for w in walk.windows(2) {
            let (ga, gb) = (g(w[0]), g(w[1]));
            if ga.is_finite() && gb.is_finite() && (ga < 0.0) != (gb < 0.0) {
                return tracer.locate_between(w[0], w[1], g).ok_or_else(|| Error::Trace {
                    x: w[0][0],
                    x_tilde: w[0][1],
                    reason: "could not refine the fold crossing".into(),
                });
            }
        }
        let (lo, hi) = self.window();
        Err(Error::NotAdmissible {
            n: self.n(),
            l0,
            lo,
            hi,
        })
    }

    /// `(H^, K^)` in the edge-length plane.
    pub fn hat_points(&self, l0: f64) -> Result<(Point, Point)> {
        self.require_admissible(l0)?;
        let n = self.n();
        let h = self.fold_crossing(l0, UPoint::H)?;
        let k = self.fold_crossing(l0, UPoint::K)?;
        let (hl, hlt) = rigidity_map(n, h[0], h[1])?;
        let (kl, klt) = rigidity_map(n, k[0], k[1])?;
        Ok(([hl, hlt], [kl, klt]))
    }

    pub fn delta_intrinsic(&self, l0: f64) -> Result<f64> {
        let (h, k) = self.hat_points(l0)?;
        Ok(dist(h, k) / (2.0 * SQRT_2 * l0))
    }

    /// Three equifacial isomers, ascending in `x`.
    fn anchors(&self, l0: f64) -> Result<(SolutionSet, [Point; 3])> {
        let set = solve_heights(&FaceParams::equifacial(self.n(), l0)?)?;
        match set.heights().as_slice() {
            [a, b, c] => {
                let anchors = [a.as_array(), b.as_array(), c.as_array()];
                Ok((set, anchors))
            }
            other => Err(Error::WrongRegime(other.len())),
        }
    }

    /// Dense trace of the natural deformation from `P1` through `P2` to
    /// `P3`, returned as the two halves.
    fn trace(&self, l0: f64, anchors: &[Point; 3]) -> Result<[Vec<Point>; 2]> {
        let level = SumLevel { n: self.n(), l0 };
        let tracer = Tracer::new(&level, PATH_STEP);
        let first = trace_to(&tracer, anchors[0], anchors[1], sub(anchors[1], anchors[0]))?;
        let hint = sub(anchors[1], first[first.len() - 2]);
        let second = trace_to(&tracer, anchors[1], anchors[2], hint)?;
        Ok([first, second])
    }

    pub fn natural_path(&self, l0: f64, sample_count: usize) -> Result<DeformationPath> {
        if sample_count < 3 {
            return Err(Error::InvalidArgument(format!(
                "sample count {sample_count} is below 3"
            )));
        }
        self.require_admissible(l0)?;
        let n = self.n();
        let (_, anchors) = self.anchors(l0)?;
        let [first, second] = self.trace(l0, &anchors)?;
        let (hat_h, hat_k) = self.hat_points(l0)?;

        let level = SumLevel { n, l0 };
        let tracer = Tracer::new(&level, PATH_STEP);
        let len_first = polyline_length(&first);
        let total = len_first + polyline_length(&second);
        let intervals_first = (sample_count - 1) / 2;
        let intervals_second = sample_count - 1 - intervals_first;

        let mut samples = Vec::with_capacity(sample_count);
        for (poly, intervals, offset, skip_first) in [
            (&first, intervals_first, 0.0, false),
            (&second, intervals_second, len_first, true),
        ] {
            let length = polyline_length(poly);
            for i in usize::from(skip_first)..=intervals {
                let s = length * i as f64 / intervals as f64;
                let p = if i == 0 {
                    poly[0]
                } else if i == intervals {
                    poly[poly.len() - 1]
                } else {
                    let q = point_at(poly, s);
                    tracer.project(q).ok_or_else(|| Error::Trace {
                        x: q[0],
                        x_tilde: q[1],
                        reason: "resampled point did not project onto the path".into(),
                    })?
                };
                samples.push(PathSample::at(n, l0, (offset + s) / total, p)?);
            }
        }
        let last = samples.len() - 1;
        samples[last].t = 1.0;
        Ok(DeformationPath {
            n,
            l0,
            samples,
            anchors: [0, intervals_first, last],
            hat_h,
            hat_k,
        })
    }

    /// Largest relative edge deviation along the natural deformation,
    /// maximized on the dense trace and refined by golden-section search.
    pub fn path_delta(&self, l0: f64) -> Result<f64> {
        self.require_admissible(l0)?;
        let n = self.n();
        let (_, anchors) = self.anchors(l0)?;
        let level = SumLevel { n, l0 };
        let tracer = Tracer::new(&level, PATH_STEP);
        let deviation =
            |p: Point| rigidity_map(n, p[0], p[1]).map_or(f64::NAN, |(l, lt)| (l - l0).abs().max((lt - l0).abs()) / l0);
        let mut best = 0.0f64;
        for half in self.trace(l0, &anchors)? {
            let (i, _) = half
                .iter()
                .enumerate()
                .map(|(i, &p)| (i, deviation(p)))
                .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
            let lo = i.saturating_sub(1);
            let hi = (i + 1).min(half.len() - 1);
            let at = |s: f64| {
                let q = lerp(half[lo], half[hi], s);
                tracer.project(q).map_or(f64::NAN, deviation)
            };
            let s = golden_minimize(|s| -at(s), 0.0, 1.0, 1e-12);
            best = best.max(at(s)).max(deviation(half[i]));
        }
        Ok(best)
    }

    pub fn flexion_report(&self, l0: f64, epsilon: f64) -> Result<FlexionReport> {
        if !(epsilon > 0.0) {
            return Err(Error::InvalidArgument(format!("epsilon {epsilon} must be positive")));
        }
        let admissible = self.admissible(l0)?;
        let window = self.window();
        let mut report = FlexionReport {
            n: self.n(),
            l0,
            epsilon,
            admissible,
            delta_i: None,
            delta_e: None,
            window,
            verdict: false,
        };
        if !admissible {
            return Ok(report);
        }
        let delta_i = self.delta_intrinsic(l0)?;
        let along = self.path_delta(l0)?;
        if (delta_i - along).abs() > DELTA_CROSS_CHECK {
            return Err(Error::Inconsistent(format!(
                "delta_i from hat points {delta_i} disagrees with the path maximum {along}"
            )));
        }
        let (set, _) = self.anchors(l0)?;
        report.delta_i = Some(delta_i);
        report.delta_e = Some(delta_extrinsic(&set)?);
        report.verdict = delta_i <= epsilon;
        Ok(report)
    }
}

/// Traces from `start` until the path passes `target`, which is appended
/// exactly.
fn trace_to(tracer: &Tracer<'_, SumLevel>, start: Point, target: Point, hint: Point) -> Result<Vec<Point>> {
    let fail = |p: Point, reason: &str| Error::Trace {
        x: p[0],
        x_tilde: p[1],
        reason: reason.into(),
    };
    let mut p = start;
    let mut t = tracer
        .tangent(p, hint)
        .ok_or_else(|| fail(p, "degenerate gradient at an anchor"))?;
    let mut out = vec![start];
    for _ in 0..MAX_PATH_STEPS {
        let (q, tq) = tracer.advance(p, t)?;
        if !(q[0] > 0.0 && q[1] > 0.0) {
            return Err(fail(q, "anchors lie on different components of the level set"));
        }
        let near = dist(q, target) < 4.0 * tracer.step;
        if near && dot(sub(q, target), tq) >= 0.0 {
            out.push(target);
            return Ok(out);
        }
        out.push(q);
        p = q;
        t = tq;
    }
    Err(fail(p, "natural deformation did not reach the next anchor"))
}

fn lerp(a: Point, b: Point, s: f64) -> Point {
    [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
}

fn polyline_length(poly: &[Point]) -> f64 {
    poly.windows(2).map(|w| dist(w[0], w[1])).sum()
}

fn point_at(poly: &[Point], s: f64) -> Point {
    let mut acc = 0.0;
    for w in poly.windows(2) {
        let d = dist(w[0], w[1]);
        if acc + d >= s && d > 0.0 {
            return lerp(w[0], w[1], (s - acc) / d);
        }
        acc += d;
    }
    poly[poly.len() - 1]
}

/// `true` iff `(l_H + l_K)/2 < l0 < l_M`.
pub fn admissible(n: u32, l0: f64) -> Result<bool> {
    Deformation::new(n)?.admissible(l0)
}

/// Base length with three isomers and small intrinsic variation.
pub fn recommended_base(n: u32) -> Result<f64> {
    match n {
        0..=2 => Err(Error::InvalidGonCount(n)),
        3 => Ok(1.6),
        4 => Ok(1.25),
        _ => Ok(2.0 * (5.0 * PI / (6.0 * f64::from(n))).sin()),
    }
}

pub fn hat_points(n: u32, l0: f64) -> Result<(Point, Point)> {
    Deformation::new(n)?.hat_points(l0)
}

pub fn natural_path(n: u32, l0: f64, sample_count: usize) -> Result<DeformationPath> {
    Deformation::new(n)?.natural_path(l0, sample_count)
}

/// Largest relative spread `|x_i - x_j| / x_j` among the solution heights.
pub fn delta_extrinsic(solutions: &SolutionSet) -> Result<f64> {
    let xs: Vec<f64> = solutions.solutions.iter().map(|c| c.x()).collect();
    if xs.len() < 2 {
        return Err(Error::UndefinedMeasure("delta_e needs at least two solutions"));
    }
    let mut best = 0.0f64;
    for &xi in &xs {
        for &xj in &xs {
            best = best.max((xi - xj).abs() / xj);
        }
    }
    Ok(best)
}

pub fn delta_intrinsic(n: u32, l0: f64) -> Result<f64> {
    Deformation::new(n)?.delta_intrinsic(l0)
}

pub fn flexion_report(n: u32, l0: f64, epsilon: f64) -> Result<FlexionReport> {
    Deformation::new(n)?.flexion_report(l0, epsilon)
}

/// Plan at a path sample: the edge lengths that close the dipyramid
/// exactly at the sample heights.
pub fn sample_plan(n: u32, sample: &PathSample) -> Result<FaceParams> {
    if !domain_membership(n, sample.x, sample.x_tilde) {
        return Err(Error::OutsideDomain {
            x: sample.x,
            x_tilde: sample.x_tilde,
            reason: "sample left the height domain",
        });
    }
    let (l, lt) = edge_lengths(n, sample.x, sample.x_tilde)?;
    FaceParams::new(n, l, lt)
}
