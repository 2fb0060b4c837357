//! For each n, sweeps the base length across the admissible window and
//! finds the first value where the intrinsic variation drops below a
//! threshold.

use siamese_flex::deformation::Deformation;

fn main() -> siamese_flex::Result<()> {
    let epsilon = 1e-3;
    for n in 5..=12 {
        let d = Deformation::new(n)?;
        let (lo, hi) = d.window();
        let steps = 50;
        let mut first = None;
        for k in 1..=steps {
            let l0 = lo + (hi - lo) * k as f64 / (steps + 1) as f64;
            if d.delta_intrinsic(l0)? < epsilon {
                first = Some(l0);
                break;
            }
        }
        match first {
            Some(l) => println!("n = {n:>2}: delta_i < {epsilon} from l0 = {l:.5} (window {lo:.5}..{hi:.5})"),
            None => println!("n = {n:>2}: no sweep point below {epsilon}"),
        }
    }
    Ok(())
}
