//! Writes the built-in triples as JSON documents.
//!
//! Usage: `cargo run -p acgeom --example write_triples -- <dir>`

use std::path::PathBuf;

use acgeom::matrix::re;
use acgeom::{electroweak_triple, two_point_triple};

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "scenarios".into()),
    );
    std::fs::create_dir_all(&dir)?;
    for (name, triple) in [
        ("two_point.json", two_point_triple(re(2.0))),
        ("electroweak.json", electroweak_triple(re(1.0))),
    ] {
        std::fs::write(dir.join(name), triple.to_json() + "\n")?;
    }
    Ok(())
}
