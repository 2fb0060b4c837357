use serde::{Deserialize, Serialize};

use crate::continuation::{dist, Point};
use crate::error::{Error, Result};

/// Which plane a path lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Plane {
    /// Heights `(x, x~)`.
    U,
    /// Edge lengths `(l, l~)`.
    V,
}

/// An ordered polyline with cumulative arclength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarPath {
    pub plane: Plane,
    points: Vec<Point>,
    arclength: Vec<f64>,
}

impl PlanarPath {
    /// Builds a path, dropping consecutive duplicates.
    pub fn new(plane: Plane, raw: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut points: Vec<Point> = Vec::new();
        let mut arclength = Vec::new();
        for p in raw {
            if !(p[0].is_finite() && p[1].is_finite()) {
                return Err(Error::InvalidArgument(format!("non-finite path point {p:?}")));
            }
            match points.last() {
                None => arclength.push(0.0),
                Some(&q) => {
                    let d = dist(p, q);
                    if d == 0.0 {
                        continue;
                    }
                    arclength.push(arclength.last().copied().unwrap_or(0.0) + d);
                }
            }
            points.push(p);
        }
        Ok(Self {
            plane,
            points,
            arclength,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn arclength(&self) -> &[f64] {
        &self.arclength
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.arclength.last().copied().unwrap_or(0.0)
    }

    /// Reverses the path and exchanges the two coordinates of every point.
    pub fn reversed_swapped(&self) -> Self {
        let pts = self.points.iter().rev().map(|p| [p[1], p[0]]);
        Self::new(self.plane, pts).expect("swapping preserves finiteness")
    }

    /// Euclidean distance from `p` to the polyline.
    pub fn distance_to(&self, p: Point) -> f64 {
        match self.points.len() {
            0 => f64::INFINITY,
            1 => dist(p, self.points[0]),
            _ => self
                .points
                .windows(2)
                .map(|w| segment_distance(p, w[0], w[1]))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Symmetric Hausdorff distance between the vertex sets of two
    /// polylines, measured against the other polyline.
    pub fn hausdorff(&self, other: &Self) -> f64 {
        let one = self.points.iter().map(|&p| other.distance_to(p)).fold(0.0, f64::max);
        let two = other.points.iter().map(|&p| self.distance_to(p)).fold(0.0, f64::max);
        one.max(two)
    }

    /// Proper crossings between non-adjacent segments.
    pub fn self_intersections(&self) -> Vec<Point> {
        let segs: Vec<(Point, Point)> = self.points.windows(2).map(|w| (w[0], w[1])).collect();
        let mut hits = Vec::new();
        for i in 0..segs.len() {
            for j in i + 2..segs.len() {
                if let Some(p) = segment_crossing(segs[i], segs[j]) {
                    hits.push(p);
                }
            }
        }
        hits
    }
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    dist(p, [a[0] + t * ab[0], a[1] + t * ab[1]])
}

fn segment_crossing((a, b): (Point, Point), (c, d): (Point, Point)) -> Option<Point> {
    let r = [b[0] - a[0], b[1] - a[1]];
    let s = [d[0] - c[0], d[1] - c[1]];
    let denom = r[0] * s[1] - r[1] * s[0];
    if denom == 0.0 {
        return None;
    }
    let ca = [c[0] - a[0], c[1] - a[1]];
    let t = (ca[0] * s[1] - ca[1] * s[0]) / denom;
    let u = (ca[0] * r[1] - ca[1] * r[0]) / denom;
    if t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0 {
        Some([a[0] + t * r[0], a[1] + t * r[1]])
    } else {
        None
    }
}
