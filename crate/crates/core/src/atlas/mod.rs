//! Geometry of the rigidity map: Jacobian, fold curve and characteristic points.

pub mod jacobian;
pub mod path;
pub mod points;
pub mod singular;

pub use jacobian::{jacobian, RigidityJacobian};
pub use path::{PlanarPath, Plane};
pub use points::{characteristic_points, characteristic_points_with_step, CharacteristicAtlas, UPoint, VPoint};
pub use singular::{fold_image, trace_singular_curve, SingularCurve, DEFAULT_STEP};

use crate::error::Result;
use crate::geometry::{base_length_bounds, FaceParams};
use crate::solver::solve_heights;

/// Number of distinct Siamese dipyramids realizing `plan` (0 to 3).
pub fn isomer_count(plan: &FaceParams) -> Result<usize> {
    Ok(solve_heights(plan)?.regime)
}

/// Isomer count of the equifacial plan `(n, l, l)` predicted from the atlas
/// alone: three strictly between `l_E` and `l_M`, one elsewhere in the
/// admissible range, `None` on the dividing values or outside the range.
pub fn equifacial_isomer_rule(atlas: &CharacteristicAtlas, l: f64) -> Option<usize> {
    let (lo, hi) = base_length_bounds(atlas.n);
    let (l_e, l_m) = (atlas.l_e(), atlas.l_m());
    if l > l_e && l < l_m {
        Some(3)
    } else if (l > lo && l < l_e) || (l > l_m && l < hi) {
        Some(1)
    } else {
        None
    }
}
