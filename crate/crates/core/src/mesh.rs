//! Explicit triangulated surfaces of Siamese dipyramids and Wavefront OBJ I/O.
//!
//! Frame: the first Goldberg dipyramid has apexes `(+-x, 0, 0)` and its ring
//! of `n + 1` vertices on the circle of radius `sqrt(1 - x^2)` in the plane
//! `x = 0`, symmetric about `y = 0`. The ring endpoints `(0, +-x~, z_c)` are
//! the apexes of the second dipyramid, whose `n - 1` interior ring vertices
//! lie in the plane `y = 0` on the circle of radius `sqrt(1 - x~^2)` centred
//! at `(0, 0, z_c)`, `z_c = -sqrt(1 - x^2 - x~^2)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{system_residual, FaceParams, HeightsPair, SiameseConfig, CLOSURE_TOLERANCE};

/// Absolute tolerance on mesh edge lengths.
pub const MESH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeClass {
    /// Unit leg.
    Leg,
    /// Base of the first triangle family, length `l`.
    Base,
    /// Base of the second triangle family, length `l~`.
    BaseTilde,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    pub plan: FaceParams,
    pub heights: HeightsPair,
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    /// Keyed by `(min, max)` vertex index.
    pub edge_classes: BTreeMap<(usize, usize), EdgeClass>,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

impl TriMesh {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_classes.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn target_length(&self, class: EdgeClass) -> f64 {
        match class {
            EdgeClass::Leg => 1.0,
            EdgeClass::Base => self.plan.l(),
            EdgeClass::BaseTilde => self.plan.l_tilde(),
        }
    }

    pub fn edge_length(&self, a: usize, b: usize) -> f64 {
        dist(self.vertices[a], self.vertices[b])
    }

    /// Largest absolute deviation of an edge from its class target.
    pub fn max_edge_deviation(&self) -> f64 {
        self.edge_classes
            .iter()
            .map(|(&(a, b), &c)| (self.edge_length(a, b) - self.target_length(c)).abs())
            .fold(0.0, f64::max)
    }

    /// Edges of the face list, each counted once.
    pub fn face_edges(&self) -> BTreeMap<(usize, usize), usize> {
        let mut edges = BTreeMap::new();
        for f in &self.faces {
            for k in 0..3 {
                *edges.entry(edge_key(f[k], f[(k + 1) % 3])).or_insert(0) += 1;
            }
        }
        edges
    }
}

/// Realizes a closed configuration as an explicit triangle mesh.
pub fn build_mesh(config: &SiameseConfig) -> Result<TriMesh> {
    let plan = config.plan;
    let HeightsPair { x, x_tilde: xt } = config.heights;
    if !(x > 0.0 && xt > 0.0) {
        return Err(Error::Closure {
            r1: f64::NAN,
            r2: f64::NAN,
        });
    }
    let (r1, r2) = system_residual(&plan, &config.heights)?;
    if r1.abs() >= CLOSURE_TOLERANCE || r2.abs() >= CLOSURE_TOLERANCE {
        return Err(Error::Closure { r1, r2 });
    }

    let n = plan.n() as usize;
    let r_first = (1.0 - x * x).sqrt();
    let r_second = (1.0 - xt * xt).sqrt();
    let z_c = -(1.0 - x * x - xt * xt).max(0.0).sqrt();
    let step_first = 2.0 * (plan.l() / (2.0 * r_first)).min(1.0).asin();
    let step_second = 2.0 * (plan.l_tilde() / (2.0 * r_second)).min(1.0).asin();

    // 0, 1: apexes of the first dipyramid; 2..=n+2: its ring; then the
    // interior ring of the second dipyramid.
    let mut vertices = Vec::with_capacity(2 * n + 2);
    vertices.push([x, 0.0, 0.0]);
    vertices.push([-x, 0.0, 0.0]);
    let half_first = 0.5 * n as f64 * step_first;
    for k in 0..=n {
        let theta = -half_first + k as f64 * step_first;
        vertices.push([0.0, r_first * theta.sin(), r_first * theta.cos()]);
    }
    // the second ring runs from (x, 0, 0) to (-x, 0, 0); angles measured
    // from the -z direction around (0, 0, z_c)
    let half_second = 0.5 * n as f64 * step_second;
    for k in 1..n {
        let alpha = half_second - k as f64 * step_second;
        vertices.push([r_second * alpha.sin(), 0.0, z_c - r_second * alpha.cos()]);
    }

    let apex = [0usize, 1usize];
    let ring_first: Vec<usize> = (2..=n + 2).collect();
    let second_apex = [ring_first[0], ring_first[n]];
    let mut ring_second = vec![apex[0]];
    ring_second.extend(n + 3..2 * n + 2);
    ring_second.push(apex[1]);

    let mut faces = Vec::with_capacity(4 * n);
    let mut edge_classes = BTreeMap::new();
    for k in 0..n {
        let (a, b) = (ring_first[k], ring_first[k + 1]);
        faces.push([apex[0], a, b]);
        faces.push([apex[1], b, a]);
        edge_classes.insert(edge_key(a, b), EdgeClass::Base);
        for &p in &apex {
            edge_classes.insert(edge_key(p, a), EdgeClass::Leg);
            edge_classes.insert(edge_key(p, b), EdgeClass::Leg);
        }
    }
    for k in 0..n {
        let (a, b) = (ring_second[k], ring_second[k + 1]);
        faces.push([second_apex[0], a, b]);
        faces.push([second_apex[1], b, a]);
        edge_classes.insert(edge_key(a, b), EdgeClass::BaseTilde);
        for &p in &second_apex {
            edge_classes.insert(edge_key(p, a), EdgeClass::Leg);
            edge_classes.insert(edge_key(p, b), EdgeClass::Leg);
        }
    }

    let mesh = TriMesh {
        plan,
        heights: config.heights,
        vertices,
        faces,
        edge_classes,
    };
    let deviation = mesh.max_edge_deviation();
    if !(deviation < MESH_TOLERANCE) {
        return Err(Error::Inconsistent(format!(
            "mesh edge deviates from its target by {deviation:e}"
        )));
    }
    Ok(mesh)
}

/// Wavefront OBJ text with 17 significant digits per coordinate.
pub fn export_obj(mesh: &TriMesh) -> Result<String> {
    if mesh.vertices.is_empty() || mesh.faces.is_empty() {
        return Err(Error::InvalidArgument("cannot export an empty mesh".into()));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# siamese dipyramid n={} l={:.16e} l_tilde={:.16e} x={:.16e} x_tilde={:.16e}",
        mesh.plan.n(),
        mesh.plan.l(),
        mesh.plan.l_tilde(),
        mesh.heights.x,
        mesh.heights.x_tilde
    );
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {:.16e} {:.16e} {:.16e}", v[0], v[1], v[2]);
    }
    for f in &mesh.faces {
        let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    Ok(out)
}

/// Vertices and zero-based faces read back from OBJ text.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ObjData {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

pub fn parse_obj(text: &str) -> Result<ObjData> {
    let mut data = ObjData::default();
    for (lineno, line) in text.lines().enumerate() {
        let mut tokens = line.split_whitespace();
        let bad = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
        match tokens.next() {
            Some("v") => {
                let mut v = [0.0; 3];
                for c in &mut v {
                    *c = tokens
                        .next()
                        .ok_or_else(|| bad("missing coordinate"))?
                        .parse()
                        .map_err(|_| bad("bad coordinate"))?;
                }
                data.vertices.push(v);
            }
            Some("f") => {
                let mut f = [0usize; 3];
                for i in &mut f {
                    let tok = tokens.next().ok_or_else(|| bad("missing index"))?;
                    let idx: usize = tok
                        .split('/')
                        .next()
                        .unwrap_or(tok)
                        .parse()
                        .map_err(|_| bad("bad index"))?;
                    *i = idx.checked_sub(1).ok_or_else(|| bad("index 0"))?;
                }
                data.faces.push(f);
            }
            _ => {}
        }
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed(n: u32, x: f64, xt: f64) -> SiameseConfig {
        let (l, lt) = crate::geometry::edge_lengths(n, x, xt).unwrap();
        SiameseConfig::new(FaceParams::new(n, l, lt).unwrap(), HeightsPair::new(x, xt)).unwrap()
    }

    #[test]
    fn counts_and_lengths() {
        let mesh = build_mesh(&closed(5, 0.32, 0.35)).unwrap();
        assert_eq!(mesh.vertex_count(), 12);
        assert_eq!(mesh.face_count(), 20);
        assert_eq!(mesh.edge_count(), 30);
        assert_eq!(mesh.euler_characteristic(), 2);
        assert!(mesh.max_edge_deviation() < MESH_TOLERANCE);
    }

    #[test]
    fn oriented_closed_surface() {
        let mesh = build_mesh(&closed(6, 0.3, 0.4)).unwrap();
        let mut directed = BTreeMap::new();
        for f in &mesh.faces {
            for k in 0..3 {
                *directed.entry((f[k], f[(k + 1) % 3])).or_insert(0) += 1;
            }
        }
        for (&(a, b), &count) in &directed {
            assert_eq!(count, 1);
            assert_eq!(directed.get(&(b, a)), Some(&1), "edge {a}-{b} unmatched");
        }
        assert_eq!(mesh.face_edges().len(), mesh.edge_count());
    }

    #[test]
    fn rejects_degenerate_and_open() {
        let plan = FaceParams::new(5, 1.0, 1.0).unwrap();
        let degenerate = SiameseConfig {
            plan,
            heights: HeightsPair::new(0.0, 0.5),
            residual: (0.0, 0.0),
        };
        assert!(matches!(build_mesh(&degenerate), Err(Error::Closure { .. })));
        let open = SiameseConfig {
            plan,
            heights: HeightsPair::new(0.3, 0.3),
            residual: (0.0, 0.0),
        };
        assert!(matches!(build_mesh(&open), Err(Error::Closure { .. })));
    }

    #[test]
    fn obj_round_trip() {
        let mesh = build_mesh(&closed(5, 0.2, 0.3)).unwrap();
        let text = export_obj(&mesh).unwrap();
        assert!(text.starts_with("# siamese dipyramid n=5"));
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 12);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 20);
        let parsed = parse_obj(&text).unwrap();
        assert_eq!(parsed.vertices, mesh.vertices);
        assert_eq!(parsed.faces, mesh.faces);
    }

    #[test]
    fn empty_mesh_is_refused() {
        let mut mesh = build_mesh(&closed(5, 0.2, 0.3)).unwrap();
        mesh.vertices.clear();
        mesh.faces.clear();
        assert!(export_obj(&mesh).is_err());
    }
}
