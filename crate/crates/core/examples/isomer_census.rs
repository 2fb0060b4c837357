//! Counts equifacial isomers across the whole base-length range and
//! compares with the prediction read off the atlas.

use siamese_flex::atlas::{characteristic_points, equifacial_isomer_rule, isomer_count};
use siamese_flex::geometry::{base_length_bounds, FaceParams};

fn main() -> siamese_flex::Result<()> {
    for n in [3, 5, 8] {
        let atlas = characteristic_points(n)?;
        let (lo, hi) = base_length_bounds(n);
        let mut disagreements = 0;
        let mut histogram = [0usize; 4];
        let steps = 400;
        for k in 1..steps {
            let l = lo + (hi - lo) * k as f64 / steps as f64;
            let count = isomer_count(&FaceParams::equifacial(n, l)?)?;
            histogram[count] += 1;
            if equifacial_isomer_rule(&atlas, l).is_some_and(|p| p != count) {
                disagreements += 1;
            }
        }
        println!(
            "n = {n}: counts 0/1/2/3 = {:?}, three isomers for {:.5} < l < {:.5}, disagreements {disagreements}",
            histogram,
            atlas.l_e(),
            atlas.l_m()
        );
    }
    Ok(())
}
