//! Follows the natural deformation through the three equilateral
//! pentagonal isomers and reports how little the edges must stretch.
//!
//! Usage: `cargo run --example almost_flexion [output.csv]`

use siamese_flex::deformation::{recommended_base, Deformation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 5;
    let l0 = recommended_base(n)?;
    let deformation = Deformation::new(n)?;
    let (lo, hi) = deformation.window();
    println!("n = {n}, l0 = {l0}, admissible window ({lo:.5}, {hi:.5})");

    let report = deformation.flexion_report(l0, 0.004)?;
    println!("{}", report.to_json());

    let path = deformation.natural_path(l0, 256)?;
    let peak = path
        .samples
        .iter()
        .max_by(|a, b| a.max_relative().total_cmp(&b.max_relative()))
        .expect("path has samples");
    println!(
        "largest sampled stretch {:.5} at (x, x~) = ({:.4}, {:.4}); hat points {:?} {:?}",
        peak.max_relative(),
        peak.x,
        peak.x_tilde,
        path.hat_h,
        path.hat_k
    );
    for &i in &path.anchors {
        let s = &path.samples[i];
        println!("  isomer at t = {:.3}: x = {:.5}, x~ = {:.5}", s.t, s.x, s.x_tilde);
    }
    if let Some(out) = std::env::args_os().nth(1) {
        std::fs::write(&out, path.to_csv()?)?;
    }
    Ok(())
}
