//! The bracketing root finder on its own: every zero of `sin(10 x)` on
//! `[0, pi]`.

use siamese_flex::roots::{bracket_scan, refine_root, BISECTION_WIDTH};

fn main() -> siamese_flex::Result<()> {
    let f = |x: f64| (10.0 * x).sin();
    let brackets = bracket_scan(f, 0.0, std::f64::consts::PI, 1000)?;
    for b in brackets {
        let r = refine_root(f, b, BISECTION_WIDTH);
        println!(
            "{b:?} -> {r:.15} (k pi / 10 with k = {:.6})",
            r * 10.0 / std::f64::consts::PI
        );
    }
    Ok(())
}
