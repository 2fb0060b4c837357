//! Computes the characteristic points of the height domain and their
//! images for one `n`, and writes the atlas as JSON and SVG.
//!
//! Usage: `cargo run --example rigidity_atlas [n] [output-dir]`

use std::path::PathBuf;

use siamese_flex::atlas::{characteristic_points, jacobian, UPoint, VPoint};
use siamese_flex::svg::render_atlas_svg;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().map_or(Ok(5), |s| s.parse())?;
    let dir = args.next().map(PathBuf::from).unwrap_or_else(std::env::temp_dir);

    let atlas = characteristic_points(n)?;
    println!("n = {n}");
    for label in UPoint::ALL {
        let p = atlas.u(label);
        println!("  {:<3} ({:.5}, {:.5})", label.as_str(), p[0], p[1]);
    }
    for label in VPoint::ALL {
        let p = atlas.v(label);
        println!("  {:<6} ({:.5}, {:.5})", format!("{}bar", label.as_str()), p[0], p[1]);
    }
    let m = atlas.u(UPoint::M);
    println!("det J at M = {:.2e}", jacobian(n, m[0], m[1])?.det);
    println!(
        "fold curve: {} points, fold image self-crossings: {}",
        atlas.singular_curve.len(),
        atlas.fold_self_intersections.len()
    );

    let json = dir.join(format!("atlas_{n}.json"));
    let svg = dir.join(format!("atlas_{n}.svg"));
    std::fs::write(&json, atlas.to_json())?;
    std::fs::write(&svg, render_atlas_svg(&atlas))?;
    println!("wrote {} and {}", json.display(), svg.display());
    Ok(())
}
