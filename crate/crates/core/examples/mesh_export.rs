//! Builds the three equilateral pentagonal isomers as triangle meshes and
//! writes them as OBJ files.
//!
//! Usage: `cargo run --example mesh_export [output-dir]`

use std::path::PathBuf;

use siamese_flex::geometry::FaceParams;
use siamese_flex::mesh::{build_mesh, export_obj, parse_obj};
use siamese_flex::solver::solve_heights;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("siamese-meshes"));
    std::fs::create_dir_all(&dir)?;

    let set = solve_heights(&FaceParams::equifacial(5, 1.0)?)?;
    for (i, config) in set.solutions.iter().enumerate() {
        let mesh = build_mesh(config)?;
        let text = export_obj(&mesh)?;
        let back = parse_obj(&text)?;
        let path = dir.join(format!("isomer_{i}.obj"));
        std::fs::write(&path, text)?;
        println!(
            "{}: V = {} E = {} F = {} chi = {} max edge error {:.1e}, {} vertices read back",
            path.display(),
            mesh.vertex_count(),
            mesh.edge_count(),
            mesh.face_count(),
            mesh.euler_characteristic(),
            mesh.max_edge_deviation(),
            back.vertices.len()
        );
    }
    Ok(())
}
