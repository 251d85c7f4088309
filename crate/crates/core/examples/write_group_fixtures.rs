//! Writes the Cayley-table corpus under `fixtures/`.
//!
//! Usage: `cargo run --example write_group_fixtures [-- <fixtures dir>]`

use std::path::PathBuf;

use crossedk::repring::small_groups;

fn main() -> std::io::Result<()> {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"));
    let dir = root.join("groups");
    std::fs::create_dir_all(&dir)?;
    let mut seen = std::collections::HashMap::new();
    for g in small_groups() {
        let n = g.group.order();
        let idx = seen.entry(n).or_insert(0);
        *idx += 1;
        let path = dir.join(format!("{n:02}_{:02}_{}.cayley", idx, g.name));
        std::fs::write(&path, g.group.to_text())?;
        if g.name == "c2xc2" {
            std::fs::write(root.join("klein4.cayley"), g.group.to_text())?;
        }
    }
    println!("wrote {}", dir.display());
    Ok(())
}
