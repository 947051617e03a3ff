//! Writes the benchmark and acceptance corpus.
//!
//! ```text
//! cargo run -p normsurf --example make_corpus -- corpus
//! ```

use std::fs;
use std::path::PathBuf;

use normsurf::families::{catalog, doubled_tetrahedron, grow};
use normsurf::{serialize_triangulation, Triangulation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// (name, rng seed, target size, chance of a 1-4 move, start from a lone
/// tetrahedron instead of the doubled one)
const GROWN: &[(&str, u64, usize, f64, bool)] = &[
    ("closed-n3", 11, 3, 0.0, false),
    ("bounded-n4", 12, 3, 0.0, true),
    ("closed-n6", 1, 6, 0.3, false),
    ("bounded-n6", 6, 6, 0.5, true),
    ("closed-n8-a", 3, 8, 0.0, false),
    ("closed-n8-b", 2, 8, 0.3, false),
    ("bounded-n8", 7, 8, 0.3, true),
    ("closed-n10-a", 4, 10, 0.0, false),
    ("closed-n10-b", 5, 10, 0.3, false),
    ("closed-n11", 15, 11, 0.0, false),
    ("closed-n12-a", 16, 12, 0.0, false),
    ("closed-n12-b", 17, 12, 0.2, false),
];

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    fs::create_dir_all(&dir)?;
    let mut files: Vec<(String, Triangulation)> = Vec::new();

    for (i, t) in catalog(1).into_iter().filter(Triangulation::is_closed).enumerate() {
        files.push((format!("catalog-n1-closed-{i}"), t));
    }
    let closed2: Vec<Triangulation> = catalog(2).into_iter().filter(Triangulation::is_closed).collect();
    for i in [0, closed2.len() / 2, closed2.len() - 1] {
        files.push((format!("catalog-n2-closed-{i}"), closed2[i].clone()));
    }
    files.push(("doubled-tetrahedron".into(), doubled_tetrahedron()));
    for &(name, seed, target, weight, lone) in GROWN {
        let start = if lone { Triangulation::new(1) } else { doubled_tetrahedron() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        files.push((name.into(), grow(&start, target, weight, &mut rng)));
    }

    for (name, t) in &files {
        let text = format!("% {name}\n{}", serialize_triangulation(t));
        fs::write(dir.join(format!("{name}.tri")), text)?;
    }
    println!("wrote {} files to {}", files.len(), dir.display());
    Ok(())
}
