//! Recomputes every reference table and lists the cells that deviate from
//! the printed values beyond their tolerance.

use siamese_flex::tables::{check, compute_default, TableFormat, TableId};

fn main() -> siamese_flex::Result<()> {
    for id in [TableId::Examples, TableId::T1, TableId::A1, TableId::A2] {
        let table = compute_default(id)?;
        println!("{}", table.render(TableFormat::Pretty)?);
        let checks = check(&table)?;
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        println!(
            "{}: {}/{} cells within tolerance",
            id.as_str(),
            checks.len() - failed.len(),
            checks.len()
        );
        for c in failed {
            println!("  {}", c.describe());
        }
        println!();
    }
    Ok(())
}
