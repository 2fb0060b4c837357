//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion that fails only on entries listed in `KNOWN_DEVIATIONS` is
//! still reported as FAIL, but does not fail the run: those printed
//! reference values contradict other printed values and cannot all be met.
//! Any other failure makes the run fail.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use siamese_flex::atlas::{characteristic_points, jacobian, UPoint};
use siamese_flex::deformation::{flexion_report, recommended_base, Deformation};
use siamese_flex::geometry::{edge_lengths, FaceParams, SiameseConfig};
use siamese_flex::mesh::{build_mesh, MESH_TOLERANCE};
use siamese_flex::solver::{solve_heights, transition_base_length};
use siamese_flex::tables::{check, compute_table, CellCheck, TableId};

/// Reference entries that cannot be reproduced together with the rest of
/// the reference data (`table / row / column`).
const KNOWN_DEVIATIONS: &[&str] = &[
    // two solutions printed for one base length belong to different base
    // lengths (1.0070 and 1.0065); neither is the tangent pair
    "examples / Example 4 (a) x~ / value",
    "examples / Example 4 (b) x / value",
    "examples / Example 4 (b) x~ / value",
    // n = 3, 4: printed H-bar disagrees with the printed half-sums
    // 1.58292 and 1.22698 of the admissibility window
    r"A1 / x_H, \widetilde x_K / 3",
    r"A1 / \widetilde x_H, x_K / 3",
    r"A2 / l_{\bar H}, \tilde l_{\bar K} / 3",
    r"A2 / \tilde l_{\bar H}, l_{\bar K} / 3",
    r"A2 / l_{\bar H}, \tilde l_{\bar K} / 4",
    r"A2 / \tilde l_{\bar H}, l_{\bar K} / 4",
    // isolated digit slip: neighbours and the limit curve give 0.46691
    r"A2 / l_{\bar B}, \tilde l_{\bar D} / 9",
];

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new(detail: impl Into<String>) -> Self {
        Self {
            failures: Vec::new(),
            detail: detail.into(),
        }
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.failures.push(what.into());
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn runtime(&mut self, started: Instant, limit: Duration) {
        let took = started.elapsed();
        self.require(took < limit, || format!("runtime {took:?} exceeds {limit:?}"));
    }
}

fn cell_key(c: &CellCheck) -> String {
    format!("{} / {} / {}", c.table.as_str(), c.row, c.column)
}

fn record_cells(out: &mut Outcome, checks: &[CellCheck]) {
    for c in checks.iter().filter(|c| !c.passed()) {
        out.fail(format!("{} ({})", cell_key(c), c.describe()));
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let mut out = Outcome::new("example regimes and the two-isomer transition");
    let expected: [(f64, usize); 3] = [(1.0, 3), (1.01, 1), (1.05, 0)];
    for (l, count) in expected {
        let set = solve_heights(&FaceParams::new(5, l, 1.0).unwrap()).unwrap();
        out.require(set.regime == count, || {
            format!("(5, {l}, 1): {} solutions, expected {count}", set.regime)
        });
    }
    let table = compute_table(TableId::Examples, 5, 5).unwrap();
    let checks = check(&table).unwrap();
    record_cells(&mut out, &checks);
    let t = transition_base_length(5, 1.0, 1.0, 1.01).unwrap();
    out.require(close(t.base_length, 1.0065, 1e-3), || format!("l0 = {}", t.base_length));
    out.detail.push_str(&format!(
        "; {}/{} printed values reproduced, l0 = {:.6}",
        checks.iter().filter(|c| c.passed()).count(),
        checks.len(),
        t.base_length
    ));
    out.runtime(started, Duration::from_secs(1));
    out
}

fn criterion_2() -> Outcome {
    let started = Instant::now();
    let mut out = Outcome::new("characteristic parameters, n = 5..12");
    let table = compute_table(TableId::T1, 5, 12).unwrap();
    let checks = check(&table).unwrap();
    let required = checks.iter().filter(|c| !c.row.starts_with("l_0")).count();
    out.require(required == 32, || format!("{required} required cells, expected 32"));
    record_cells(&mut out, &checks);
    out.detail.push_str(&format!(
        "; {}/{} cells within tolerance",
        checks.iter().filter(|c| c.passed()).count(),
        checks.len()
    ));
    out.runtime(started, Duration::from_secs(10));
    out
}

fn criterion_3() -> Outcome {
    let started = Instant::now();
    let mut out = Outcome::new("characteristic points in U (n = 3..12, large n) and V (n = 3..11)");
    let a1 = check(&compute_table(TableId::A1, 3, 12).unwrap()).unwrap();
    let a2 = check(&compute_table(TableId::A2, 3, 11).unwrap()).unwrap();
    out.require(a1.iter().any(|c| c.column == "inf"), || {
        "large-n column not checked".into()
    });
    for checks in [&a1, &a2] {
        record_cells(&mut out, checks);
    }
    let total = a1.len() + a2.len();
    let passed = a1.iter().chain(&a2).filter(|c| c.passed()).count();
    out.detail.push_str(&format!("; {passed}/{total} cells within 1e-4"));
    out.runtime(started, Duration::from_secs(20));
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new("analytic Jacobian against central differences, 1000 points per n = 3..8");
    let mut worst = 0.0f64;
    for n in 3..=8 {
        let mut rng = common::rng(400 + u64::from(n));
        for _ in 0..1000 {
            let [x, y] = common::interior_point(&mut rng, n, 1e-5);
            let Ok(j) = jacobian(n, x, y) else {
                out.fail(format!("n = {n}: analytic Jacobian refused ({x}, {y})"));
                continue;
            };
            let fd = common::fd_jacobian(n, x, y, 1e-6);
            let an = [j.dl_dx, j.dl_dxt, j.dlt_dx, j.dlt_dxt];
            let scale = fd.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let err = an.iter().zip(fd).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())) / scale;
            worst = worst.max(err);
            out.require(err <= 1e-6, || format!("n = {n} at ({x}, {y}): relative error {err:e}"));
        }
    }
    out.detail.push_str(&format!("; worst relative error {worst:.1e}"));
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new("solution counts against an 800x800 grid scan, 200 plans per n = 3..8");
    let mut histogram = [0usize; 4];
    for n in 3..=8 {
        let mut rng = common::rng(500 + u64::from(n));
        for k in 0..200 {
            let plan = common::random_plan(&mut rng, n, k);
            let solved = solve_heights(&plan).unwrap().regime;
            let grid = common::grid_count(n, plan.l(), plan.l_tilde(), 800);
            histogram[solved.min(3)] += 1;
            out.require(solved == grid, || {
                format!(
                    "plan ({n}, {}, {}): solver {solved}, grid {grid}",
                    plan.l(),
                    plan.l_tilde()
                )
            });
        }
    }
    out.detail
        .push_str(&format!("; plans with 0/1/2/3 solutions: {histogram:?}"));
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new("meshes of all example and table anchor solutions");
    let mut configs: Vec<SiameseConfig> = Vec::new();
    for l in [1.0, 1.01] {
        configs.extend(solve_heights(&FaceParams::new(5, l, 1.0).unwrap()).unwrap().solutions);
    }
    configs.extend(transition_base_length(5, 1.0, 1.0, 1.01).unwrap().solutions.solutions);
    for n in 5..=12 {
        let l0 = recommended_base(n).unwrap();
        configs.extend(
            solve_heights(&FaceParams::equifacial(n, l0).unwrap())
                .unwrap()
                .solutions,
        );
    }
    let mut worst = 0.0f64;
    for c in &configs {
        let n = c.plan.n() as usize;
        match build_mesh(c) {
            Ok(mesh) => {
                worst = worst.max(mesh.max_edge_deviation());
                out.require(
                    mesh.vertex_count() == 2 * n + 2 && mesh.face_count() == 4 * n && mesh.edge_count() == 6 * n,
                    || {
                        format!(
                            "n = {n}: V/F/E = {}/{}/{}",
                            mesh.vertex_count(),
                            mesh.face_count(),
                            mesh.edge_count()
                        )
                    },
                );
                out.require(mesh.max_edge_deviation() < MESH_TOLERANCE, || {
                    format!("n = {n}: edge deviation {:e}", mesh.max_edge_deviation())
                });
            }
            Err(e) => out.fail(format!("n = {n}: {e}")),
        }
    }
    out.detail
        .push_str(&format!("; {} meshes, worst edge deviation {worst:.1e}", configs.len()));
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new("swap symmetries, 500 trials each");
    let mut rng = common::rng(700);
    for k in 0..500 {
        let n = rng.gen_range(3..=12);
        let plan = common::random_plan(&mut rng, n, k);
        let a = solve_heights(&plan).unwrap();
        let b = solve_heights(&plan.swapped()).unwrap();
        let paired = a.regime == b.regime
            && a.solutions.iter().all(|s| {
                b.solutions
                    .iter()
                    .any(|t| close(s.x(), t.x_tilde(), 1e-9) && close(s.x_tilde(), t.x(), 1e-9))
            });
        out.require(paired, || {
            format!(
                "solve_heights not swap-covariant for ({n}, {}, {})",
                plan.l(),
                plan.l_tilde()
            )
        });
    }
    for _ in 0..500 {
        let n = rng.gen_range(3..=12);
        let [x, y] = common::interior_point(&mut rng, n, 1e-9);
        let (l, lt) = edge_lengths(n, x, y).unwrap();
        let (sl, slt) = edge_lengths(n, y, x).unwrap();
        out.require(close(l, slt, 1e-14) && close(lt, sl, 1e-14), || {
            format!("edge_lengths not swap-symmetric at ({n}, {x}, {y})")
        });
    }
    for _ in 0..500 {
        let n = rng.gen_range(3..=400);
        let atlas = characteristic_points(n).unwrap();
        for label in UPoint::ALL {
            let p = atlas.u(label);
            let ok = match label.mirror() {
                Some(m) => {
                    let q = atlas.u(m);
                    close(p[0], q[1], 1e-9) && close(p[1], q[0], 1e-9)
                }
                None => close(p[0], p[1], 1e-9),
            };
            out.require(ok, || format!("n = {n}: {} breaks mirror pairing", label.as_str()));
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new("almost flexion of the equilateral pentagonal isomers");
    let r = flexion_report(5, 1.0, 0.004).unwrap();
    let (di, de) = (r.delta_i.unwrap_or(f64::NAN), r.delta_e.unwrap_or(f64::NAN));
    out.require(r.verdict, || format!("verdict false with delta_i = {di}"));
    out.require(de > 5.9, || format!("delta_e = {de}"));
    out.detail
        .push_str(&format!("; delta_i = {di:.5} < 0.004, delta_e = {de:.5} > 5.9"));
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new("intrinsic variation decreases across the window and drops below 0.001");
    for n in 5..=12 {
        let d = Deformation::new(n).unwrap();
        let (lo, hi) = d.window();
        let deltas: Vec<f64> = (1..=50)
            .map(|k| d.delta_intrinsic(lo + (hi - lo) * f64::from(k) / 51.0).unwrap())
            .collect();
        out.require(deltas.windows(2).all(|w| w[1] < w[0]), || {
            format!("n = {n}: not strictly decreasing")
        });
        match deltas.iter().position(|&v| v < 1e-3) {
            Some(k) => out
                .detail
                .push_str(&format!("; n={n}: l* <= {:.5}", lo + (hi - lo) * (k + 1) as f64 / 51.0)),
            None => out.fail(format!("n = {n}: never below 0.001")),
        }
    }
    out
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut unexpected = 0;
    for (id, run) in criteria {
        let started = Instant::now();
        let outcome = run();
        let took = started.elapsed().as_secs_f64();
        if outcome.failures.is_empty() {
            println!("criterion {id}: PASS  {} ({took:.2} s)", outcome.detail);
            continue;
        }
        let (known, other): (Vec<_>, Vec<_>) = outcome
            .failures
            .iter()
            .partition(|f| KNOWN_DEVIATIONS.iter().any(|k| f.starts_with(&format!("{k} ("))));
        println!(
            "criterion {id}: FAIL  {} ({took:.2} s); {} known reference inconsistencies, {} other failures",
            outcome.detail,
            known.len(),
            other.len()
        );
        for f in &outcome.failures {
            println!("    {f}");
        }
        unexpected += other.len();
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} failure(s) outside the known reference inconsistencies");
        ExitCode::FAILURE
    }
}
