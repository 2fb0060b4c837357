use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Derivative of the rigidity map `(x, x~) -> (l, l~)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidityJacobian {
    pub dl_dx: f64,
    pub dl_dxt: f64,
    pub dlt_dx: f64,
    pub dlt_dxt: f64,
    pub det: f64,
}

impl RigidityJacobian {
    fn from_partials(dl_dx: f64, dl_dxt: f64, dlt_dx: f64, dlt_dxt: f64) -> Self {
        Self {
            dl_dx,
            dl_dxt,
            dlt_dx,
            dlt_dxt,
            det: dl_dx * dlt_dxt - dl_dxt * dlt_dx,
        }
    }

    /// Jacobian of the swapped point: rows and columns exchanged.
    pub fn swapped(&self) -> Self {
        Self::from_partials(self.dlt_dxt, self.dlt_dx, self.dl_dxt, self.dl_dx)
    }
}

/// Partials `(d/da, d/db)` of `l(a, b) = 2 s sin(pi/n - asin(b/s)/n)`,
/// `s = sqrt(1 - a^2)`. `None` within 1e-10 of the arcsin singularity.
fn base_partials(nf: f64, a: f64, b: f64) -> Option<(f64, f64)> {
    if !(a.abs() < 1.0) {
        return None;
    }
    let s2 = 1.0 - a * a;
    let s = s2.sqrt();
    let u = b / s;
    if !(u.abs() < 1.0 - 1e-10) {
        return None;
    }
    let w = (1.0 - u * u).sqrt();
    let phase = PI / nf - u.asin() / nf;
    let (sin_p, cos_p) = phase.sin_cos();
    let du_da = a * b / (s2 * s);
    let d_db = -(2.0 / nf) * cos_p / w;
    let d_da = -2.0 * a / s * sin_p - (2.0 / nf) * s * cos_p * du_da / w;
    Some((d_da, d_db))
}

/// Analytic Jacobian of the rigidity map.
pub fn jacobian(n: u32, x: f64, x_tilde: f64) -> Result<RigidityJacobian> {
    if n < 3 {
        return Err(Error::InvalidGonCount(n));
    }
    let nf = f64::from(n);
    let near = || Error::NearSingularDomain { x, x_tilde };
    let (dl_dx, dl_dxt) = base_partials(nf, x, x_tilde).ok_or_else(near)?;
    let (dlt_dxt, dlt_dx) = base_partials(nf, x_tilde, x).ok_or_else(near)?;
    Ok(RigidityJacobian::from_partials(dl_dx, dl_dxt, dlt_dx, dlt_dxt))
}

/// Determinant only, NaN where undefined.
pub(crate) fn det_or_nan(n: u32, x: f64, x_tilde: f64) -> f64 {
    jacobian(n, x, x_tilde).map_or(f64::NAN, |j| j.det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rigidity_map;

    fn fd(n: u32, x: f64, xt: f64) -> [f64; 4] {
        let h = 1e-6;
        let p = |a: f64, b: f64| rigidity_map(n, a, b).unwrap();
        let (lxp, ltxp) = p(x + h, xt);
        let (lxm, ltxm) = p(x - h, xt);
        let (lyp, ltyp) = p(x, xt + h);
        let (lym, ltym) = p(x, xt - h);
        [
            (lxp - lxm) / (2.0 * h),
            (lyp - lym) / (2.0 * h),
            (ltxp - ltxm) / (2.0 * h),
            (ltyp - ltym) / (2.0 * h),
        ]
    }

    #[test]
    fn matches_finite_differences() {
        for &(n, x, xt) in &[(5, 0.3, 0.3), (3, 0.1, 0.6), (8, 0.45, 0.2)] {
            let j = jacobian(n, x, xt).unwrap();
            let f = fd(n, x, xt);
            for (a, b) in [j.dl_dx, j.dl_dxt, j.dlt_dx, j.dlt_dxt].iter().zip(f) {
                assert!((a - b).abs() <= 1e-6 * b.abs().max(1e-3), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn determinant_at_m_and_interior() {
        assert!(jacobian(5, 0.28677, 0.28677).unwrap().det.abs() < 1e-4);
        // Example 1 solution (b) is a regular point
        assert!(jacobian(5, 0.32726, 0.32726).unwrap().det.abs() > 1e-3);
    }

    #[test]
    fn swap_symmetry() {
        let a = jacobian(6, 0.2, 0.5).unwrap();
        let b = jacobian(6, 0.5, 0.2).unwrap();
        let s = a.swapped();
        for (u, v) in [
            (s.dl_dx, b.dl_dx),
            (s.dl_dxt, b.dl_dxt),
            (s.dlt_dx, b.dlt_dx),
            (s.dlt_dxt, b.dlt_dxt),
            (s.det, b.det),
        ] {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_boundary_proximity() {
        let x: f64 = 0.6;
        let xt = (1.0 - x * x).sqrt();
        assert!(matches!(jacobian(5, x, xt), Err(Error::NearSingularDomain { .. })));
    }
}
