#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use normsurf::coords::{quad_type, Coords, SolutionSet};
use normsurf::families::{catalog, doubled_tetrahedron, grow, is_compact_valid, one_four_move, two_three_move};
use normsurf::{parse_triangulation, IntVec, Perm4, Triangulation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// The corpus files in name order.
pub fn corpus() -> Vec<(String, Triangulation)> {
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "tri"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let text = fs::read_to_string(&p).expect("readable corpus file");
            (name, parse_triangulation(&text).expect("corpus file parses"))
        })
        .collect()
}

/// Fixed small compact triangulations beyond the exhaustive catalog, all
/// with at most six tetrahedra.
pub fn hand_built() -> Vec<(String, Triangulation)> {
    let mut out: Vec<(String, Triangulation)> = vec![
        ("lone".into(), Triangulation::new(1)),
        ("doubled".into(), doubled_tetrahedron()),
        ("lone-1-4".into(), one_four_move(&Triangulation::new(1), 0)),
        ("doubled-1-4".into(), one_four_move(&doubled_tetrahedron(), 1)),
        ("doubled-2-3".into(), two_three_move(&doubled_tetrahedron(), 0, 2).unwrap()),
    ];
    for (i, t) in catalog(1).into_iter().filter(Triangulation::is_closed).enumerate() {
        out.push((format!("n1-closed-{i}-1-4"), one_four_move(&t, 0)));
    }
    let closed2: Vec<Triangulation> = catalog(2).into_iter().filter(Triangulation::is_closed).collect();
    for (i, t) in closed2.iter().enumerate().filter_map(|(i, t)| two_three_move(t, 0, 0).map(|m| (i, m))).take(4) {
        out.push((format!("n2-closed-{i}-2-3"), t));
    }
    for (seed, target, lone) in [(21, 3, false), (22, 4, false), (23, 5, false), (24, 6, false), (25, 4, true), (26, 5, true), (27, 6, true), (28, 3, true)] {
        let start = if lone { Triangulation::new(1) } else { doubled_tetrahedron() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = grow(&start, target, 0.25, &mut rng);
        if t.size() <= 6 {
            out.push((format!("grown-{seed}-n{}", t.size()), t));
        }
    }
    for (name, t) in &out {
        assert!(t.size() <= 6 && is_compact_valid(t), "{name} is not a small compact triangulation");
    }
    out
}

/// A random relabelling of tetrahedra and of the vertices of each.
pub struct Relabelling {
    pub tet_map: Vec<usize>,
    pub vertex_maps: Vec<Perm4>,
}

impl Relabelling {
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut tet_map: Vec<usize> = (0..n).collect();
        tet_map.shuffle(rng);
        let perms: Vec<Perm4> = Perm4::all().collect();
        let vertex_maps = (0..n).map(|_| *perms.choose(rng).unwrap()).collect();
        Relabelling { tet_map, vertex_maps }
    }

    pub fn apply(&self, tri: &Triangulation) -> Triangulation {
        tri.relabel(&self.tet_map, &self.vertex_maps)
    }

    /// The induced coordinate permutation on vectors.
    pub fn map_vector(&self, coords: Coords, v: &IntVec) -> IntVec {
        let n = self.tet_map.len();
        let mut out = vec![num_bigint::BigInt::from(0); coords.dim(n)];
        for t in 0..n {
            let (nt, s) = (self.tet_map[t], self.vertex_maps[t]);
            if coords == Coords::Standard {
                for a in 0..4 {
                    out[7 * nt + s.apply(a)] = v.get(7 * t + a);
                }
            }
            for k in 0..3 {
                let nk = quad_type(s.apply(0), s.apply(k + 1));
                out[coords.quad_position(nt, nk)] = v.get(coords.quad_position(t, k));
            }
        }
        IntVec::from_big(out)
    }

    pub fn map_set(&self, set: &SolutionSet) -> SolutionSet {
        SolutionSet::new(set.coords(), set.tets(), set.rays().iter().map(|r| self.map_vector(set.coords(), r)))
    }
}
