//! Independent oracles shared by the integration tests. Nothing here calls
//! the solver or the analytic Jacobian.

#![allow(dead_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use siamese_flex::geometry::{base_length_bounds, domain_membership, rigidity_map, FaceParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `sqrt(1 - x^2) sin(n asin(l / (2 sqrt(1 - x^2))))`, written out afresh.
pub fn aperture_oracle(n: u32, l: f64, x: f64) -> f64 {
    let r = (1.0 - x * x).sqrt();
    let arg = l / (2.0 * r);
    if !(arg <= 1.0) {
        return f64::NAN;
    }
    r * (f64::from(n) * arg.asin()).sin()
}

/// `sqrt(1 - l^2 / (4 sin^2(pi/n)))`.
pub fn height_max_oracle(n: u32, l: f64) -> f64 {
    let s = (std::f64::consts::PI / f64::from(n)).sin();
    (1.0 - l * l / (4.0 * s * s)).max(0.0).sqrt()
}

/// Counts positive solutions of `x~ = f(x), x = g(x~)` by scanning the
/// residual norm on a `size x size` grid, polishing every discrete local
/// minimum with a 2D Newton iteration and keeping the converged, separated
/// ones.
pub fn grid_count(n: u32, l: f64, lt: f64, size: usize) -> usize {
    let xm = height_max_oracle(n, l);
    let ym = height_max_oracle(n, lt);
    let xs: Vec<f64> = (0..size).map(|i| xm * (i as f64 + 0.5) / size as f64).collect();
    let ys: Vec<f64> = (0..size).map(|j| ym * (j as f64 + 0.5) / size as f64).collect();
    let a: Vec<f64> = xs.iter().map(|&x| aperture_oracle(n, l, x)).collect();
    let b: Vec<f64> = ys.iter().map(|&y| aperture_oracle(n, lt, y)).collect();
    let norm2 = |i: usize, j: usize| {
        let u = ys[j] - a[i];
        let v = xs[i] - b[j];
        u * u + v * v
    };
    let mut grid = vec![0.0; size * size];
    for i in 0..size {
        for j in 0..size {
            grid[i * size + j] = norm2(i, j);
        }
    }
    let mut found: Vec<[f64; 2]> = Vec::new();
    for i in 0..size {
        for j in 0..size {
            let v = grid[i * size + j];
            let mut is_min = true;
            'nb: for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (p, q) = (i as i64 + di, j as i64 + dj);
                    if p < 0 || q < 0 || p >= size as i64 || q >= size as i64 {
                        continue;
                    }
                    if grid[p as usize * size + q as usize] < v {
                        is_min = false;
                        break 'nb;
                    }
                }
            }
            if !is_min {
                continue;
            }
            if let Some(root) = newton(n, l, lt, xs[i], ys[j], xm, ym) {
                if found.iter().all(|r| (r[0] - root[0]).abs() > 1e-7) {
                    found.push(root);
                }
            }
        }
    }
    found.len()
}

fn newton(n: u32, l: f64, lt: f64, mut x: f64, mut y: f64, xm: f64, ym: f64) -> Option<[f64; 2]> {
    let h = 1e-8;
    for _ in 0..60 {
        let f = |x: f64, y: f64| (y - aperture_oracle(n, l, x), x - aperture_oracle(n, lt, y));
        let (r1, r2) = f(x, y);
        if !(r1.is_finite() && r2.is_finite()) {
            return None;
        }
        if r1.hypot(r2) < 1e-13 {
            break;
        }
        let da = (aperture_oracle(n, l, (x + h).min(xm)) - aperture_oracle(n, l, (x - h).max(0.0)))
            / ((x + h).min(xm) - (x - h).max(0.0));
        let db = (aperture_oracle(n, lt, (y + h).min(ym)) - aperture_oracle(n, lt, (y - h).max(0.0)))
            / ((y + h).min(ym) - (y - h).max(0.0));
        // [[-da, 1], [1, -db]] (dx, dy) = -(r1, r2)
        let det = da * db - 1.0;
        if det.abs() < 1e-14 {
            return None;
        }
        let dx = (db * r1 + r2) / det;
        let dy = (r1 + da * r2) / det;
        x = (x + dx).clamp(0.0, xm);
        y = (y + dy).clamp(0.0, ym);
    }
    let r1 = y - aperture_oracle(n, l, x);
    let r2 = x - aperture_oracle(n, lt, y);
    (r1.hypot(r2) < 1e-6 && x > 1e-9 && y > 1e-9).then_some([x, y])
}

/// A random interior point of `U` whose finite-difference stencil of
/// radius `margin` also stays inside.
pub fn interior_point(rng: &mut ChaCha8Rng, n: u32, margin: f64) -> [f64; 2] {
    loop {
        let x: f64 = rng.gen_range(margin..1.0);
        let y: f64 = rng.gen_range(margin..1.0);
        let ok = [(0.0, 0.0), (margin, 0.0), (-margin, 0.0), (0.0, margin), (0.0, -margin)]
            .iter()
            .all(|&(dx, dy)| domain_membership(n, x + dx, y + dy));
        if ok {
            return [x, y];
        }
    }
}

/// Central-difference partials `[dl/dx, dl/dx~, dl~/dx, dl~/dx~]`.
pub fn fd_jacobian(n: u32, x: f64, y: f64, h: f64) -> [f64; 4] {
    let p = |a: f64, b: f64| rigidity_map(n, a, b).expect("stencil inside the domain");
    let (lxp, ltxp) = p(x + h, y);
    let (lxm, ltxm) = p(x - h, y);
    let (lyp, ltyp) = p(x, y + h);
    let (lym, ltym) = p(x, y - h);
    [
        (lxp - lxm) / (2.0 * h),
        (lyp - lym) / (2.0 * h),
        (ltxp - ltxm) / (2.0 * h),
        (ltyp - ltym) / (2.0 * h),
    ]
}

/// A random plan: even seeds draw `(l, l~)` uniformly from the square,
/// odd seeds map a random interior height pair, which guarantees at least
/// one solution and samples the multi-isomer region in proportion.
pub fn random_plan(rng: &mut ChaCha8Rng, n: u32, k: usize) -> FaceParams {
    let (lo, hi) = base_length_bounds(n);
    loop {
        let (l, lt) = if k.is_multiple_of(2) {
            (rng.gen_range(lo..hi), rng.gen_range(lo..hi))
        } else {
            let p = interior_point(rng, n, 1e-6);
            rigidity_map(n, p[0], p[1]).expect("interior point")
        };
        if let Ok(plan) = FaceParams::new(n, l, lt) {
            return plan;
        }
    }
}
