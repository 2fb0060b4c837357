//! Enumerates the pentagonal dipyramids with base lengths `(l, 1)` for a few
//! values of `l`, then locates the base length where two of the three
//! isomers merge.

use siamese_flex::geometry::FaceParams;
use siamese_flex::solver::{solve_heights, transition_base_length};

fn main() -> siamese_flex::Result<()> {
    for l in [1.0, 1.01, 1.05] {
        let set = solve_heights(&FaceParams::new(5, l, 1.0)?)?;
        println!("l = {l:<5} l~ = 1: {} isomer(s)", set.regime);
        for c in &set.solutions {
            println!("    x = {:.5}  x~ = {:.5}", c.x(), c.x_tilde());
        }
    }

    let t = transition_base_length(5, 1.0, 1.0, 1.01)?;
    println!("\ntwo isomers at l0 = {:.10}", t.base_length);
    for (i, c) in t.solutions.solutions.iter().enumerate() {
        let tag = if t.tangent == Some(i) { " (double)" } else { "" };
        println!("    x = {:.5}  x~ = {:.5}{tag}", c.x(), c.x_tilde());
    }
    Ok(())
}
