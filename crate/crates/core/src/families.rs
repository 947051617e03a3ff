//! Generators for test and benchmark triangulations: an exhaustive catalog
//! of small triangulations up to isomorphism, a few fixed examples, and
//! local moves for growing larger ones.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::perm::Perm4;
use crate::triangulation::{build_skeleton, validate_compact, Triangulation};

/// The two-tetrahedron ideal triangulation of the figure eight knot
/// complement. Its single vertex link is a torus, so it is not compact.
pub fn figure_eight() -> Triangulation {
    let mut t = Triangulation::new(2);
    let p = |x: [u8; 4]| Perm4::new(x).expect("valid permutation");
    t.join(0, 0, 1, p([1, 3, 0, 2])).expect("free faces");
    t.join(0, 1, 1, p([2, 0, 3, 1])).expect("free faces");
    t.join(0, 2, 1, p([0, 3, 2, 1])).expect("free faces");
    t.join(0, 3, 1, p([2, 1, 0, 3])).expect("free faces");
    t
}

/// Two tetrahedra glued along all four faces by the identity: the
/// four-vertex 3-sphere.
pub fn doubled_tetrahedron() -> Triangulation {
    let mut t = Triangulation::new(2);
    for f in 0..4 {
        t.join(0, f, 1, Perm4::IDENTITY).expect("free faces");
    }
    t
}

/// Whether the triangulation has valid edges and every vertex link is a
/// sphere or a disc.
pub fn is_compact_valid(tri: &Triangulation) -> bool {
    match build_skeleton(tri) {
        Ok(s) => validate_compact(tri, &s).is_compact,
        Err(_) => false,
    }
}

fn perm_code(p: &Perm4) -> u8 {
    p.images().iter().fold(0u8, |acc, &x| acc * 4 + x)
}

/// Breadth-first relabelling from tetrahedron `start` with vertex map
/// `sigma`. Returns the code of the relabelled gluings and the maps, or
/// `None` when the code exceeds `bound` (so it cannot be minimal).
fn relabel_from(tri: &Triangulation, start: usize, sigma: Perm4, bound: Option<&[u8]>) -> Option<(Vec<u8>, Vec<usize>, Vec<Perm4>)> {
    let n = tri.size();
    let mut tet_map = vec![usize::MAX; n];
    let mut maps = vec![Perm4::IDENTITY; n];
    let mut order = vec![start];
    tet_map[start] = 0;
    maps[start] = sigma;
    let mut code = Vec::with_capacity(12 * n);
    let mut i = 0;
    let mut less = false;
    while i < order.len() {
        let t = order[i];
        for f in 0..4 {
            let old_face = maps[t].inverse().apply(f);
            let chunk: [u8; 3] = match tri.gluing(t, old_face) {
                None => [u8::MAX, 0, 0],
                Some(g) => {
                    if tet_map[g.tet] == usize::MAX {
                        tet_map[g.tet] = order.len();
                        order.push(g.tet);
                        maps[g.tet] = maps[t].compose(&g.perm.inverse());
                    }
                    let perm = maps[g.tet].compose(&g.perm).compose(&maps[t].inverse());
                    [tet_map[g.tet] as u8, maps[g.tet].apply(g.face) as u8, perm_code(&perm)]
                }
            };
            for x in chunk {
                if let (Some(b), false) = (bound, less) {
                    let pos = code.len();
                    match x.cmp(&b[pos]) {
                        std::cmp::Ordering::Greater => return None,
                        std::cmp::Ordering::Less => less = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
                code.push(x);
            }
        }
        i += 1;
    }
    if order.len() < n {
        return None;
    }
    Some((code, tet_map, maps))
}

/// The isomorphism-invariant relabelling of a connected triangulation,
/// with its code. Panics on a disconnected triangulation.
pub fn canonical_form(tri: &Triangulation) -> (Vec<u8>, Triangulation) {
    assert!(tri.is_connected(), "canonical form needs a connected triangulation");
    let mut best: Option<(Vec<u8>, Vec<usize>, Vec<Perm4>)> = None;
    for start in 0..tri.size() {
        for sigma in Perm4::all() {
            let bound = best.as_ref().map(|b| b.0.as_slice());
            if let Some(cand) = relabel_from(tri, start, sigma, bound) {
                if best.as_ref().is_none_or(|b| cand.0 < b.0) {
                    best = Some(cand);
                }
            }
        }
    }
    match best {
        Some((code, tet_map, maps)) => (code, tri.relabel(&tet_map, &maps)),
        None => (Vec::new(), tri.clone()),
    }
}

fn extend(tri: &mut Triangulation, face: usize, out: &mut Vec<Triangulation>) {
    let total = 4 * tri.size();
    let Some(next) = (face..total).find(|&x| tri.gluing(x / 4, x % 4).is_none()) else {
        out.push(tri.clone());
        return;
    };
    // leave this face on the boundary
    extend(tri, next + 1, out);
    for other in next + 1..total {
        if tri.gluing(other / 4, other % 4).is_some() {
            continue;
        }
        for p in Perm4::all().filter(|p| p.apply(next % 4) == other % 4) {
            tri.join(next / 4, next % 4, other / 4, p).expect("both faces are free");
            extend(tri, next + 1, out);
            tri.unjoin(next / 4, next % 4);
        }
    }
}

/// Every connected compact triangulation with `n` tetrahedra, boundary
/// allowed, one per isomorphism class, in canonical form and sorted by
/// code.
pub fn catalog(n: usize) -> Vec<Triangulation> {
    let mut all = Vec::new();
    extend(&mut Triangulation::new(n), 0, &mut all);
    let mut seen: HashMap<Vec<u8>, Triangulation> = HashMap::new();
    for t in all {
        if n > 0 && t.is_connected() && is_compact_valid(&t) {
            let (code, canon) = canonical_form(&t);
            seen.entry(code).or_insert(canon);
        }
    }
    let mut out: Vec<(Vec<u8>, Triangulation)> = seen.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, t)| t).collect()
}

/// Removes the tetrahedra in `removed`, appends `added` new ones, and
/// re-attaches the outside: `face_map` sends each old face of a removed
/// tetrahedron that stays on the outside of the replaced region to a face
/// of a new tetrahedron (by local index), together with the vertex map
/// from old labels to new ones. `internal` lists gluings between new
/// tetrahedra by local index.
pub fn rebuild(
    tri: &Triangulation,
    removed: &[usize],
    added: usize,
    internal: &[(usize, usize, usize, Perm4)],
    face_map: &HashMap<(usize, usize), (usize, usize, Perm4)>,
) -> Triangulation {
    let gone: HashSet<usize> = removed.iter().copied().collect();
    let mut index = vec![usize::MAX; tri.size()];
    let mut kept = 0;
    for (t, slot) in index.iter_mut().enumerate() {
        if !gone.contains(&t) {
            *slot = kept;
            kept += 1;
        }
    }
    let mut out = Triangulation::new(kept + added);
    let place = |t: usize, f: usize| -> Option<(usize, usize, Perm4)> {
        if gone.contains(&t) {
            face_map.get(&(t, f)).map(|&(l, nf, vm)| (kept + l, nf, vm))
        } else {
            Some((index[t], f, Perm4::IDENTITY))
        }
    };
    for fp in tri.face_pairs() {
        let (Some((a, fa, va)), Some((b, _, vb))) = (place(fp.tet, fp.face), place(fp.other_tet, fp.other_face)) else {
            continue;
        };
        let perm = vb.compose(&fp.perm).compose(&va.inverse());
        out.join(a, fa, b, perm).expect("rebuilt faces are glued once");
    }
    for &(a, fa, b, p) in internal {
        out.join(kept + a, fa, kept + b, p).expect("internal faces are glued once");
    }
    out
}

/// Subdivides tetrahedron `tet` into four by coning from a new interior
/// vertex.
pub fn one_four_move(tri: &Triangulation, tet: usize) -> Triangulation {
    // new tetrahedron i is the cone over face i, with vertex i at the apex
    let face_map = (0..4).map(|i| ((tet, i), (i, i, Perm4::IDENTITY))).collect();
    let mut internal = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            internal.push((i, j, j, Perm4::transposition(i, j)));
        }
    }
    rebuild(tri, &[tet], 4, &internal, &face_map)
}

/// Replaces the two distinct tetrahedra meeting at face `face` of `tet` by
/// three tetrahedra around a new edge. Returns `None` if that face is on
/// the boundary or glued to another face of `tet`.
pub fn two_three_move(tri: &Triangulation, tet: usize, face: usize) -> Option<Triangulation> {
    let g = tri.gluing(tet, face)?;
    if g.tet == tet {
        return None;
    }
    let (a, b, p) = (face, g.face, g.perm);
    let x: Vec<usize> = (0..4).filter(|&v| v != a).collect();
    let mut face_map = HashMap::new();
    let mut internal = Vec::new();
    // new tetrahedron k: 0 = apex of tet, 1 = apex of the other, 2 and 3 =
    // the shared vertices other than x[k]
    for k in 0..3 {
        let (x1, x2) = (x[(k + 1) % 3], x[(k + 2) % 3]);
        let mut img = [0u8; 4];
        img[a] = 0;
        img[x[k]] = 1;
        img[x1] = 2;
        img[x2] = 3;
        face_map.insert((tet, x[k]), (k, 1, Perm4::new(img).expect("bijection")));
        let mut img = [0u8; 4];
        img[b] = 1;
        img[p.apply(x[k])] = 0;
        img[p.apply(x1)] = 2;
        img[p.apply(x2)] = 3;
        face_map.insert((g.tet, p.apply(x[k])), (k, 0, Perm4::new(img).expect("bijection")));
        internal.push((k, 2, (k + 1) % 3, Perm4::new([0, 1, 3, 2]).expect("bijection")));
    }
    Some(rebuild(tri, &[tet, g.tet], 3, &internal, &face_map))
}

/// Applies random 2-3 and 1-4 moves until the triangulation has at least
/// `target` tetrahedra. `one_four_weight` is the chance of trying a 1-4
/// move at each step.
pub fn grow<R: Rng>(tri: &Triangulation, target: usize, one_four_weight: f64, rng: &mut R) -> Triangulation {
    let mut t = tri.clone();
    while t.size() < target {
        if t.size() == 0 {
            t = Triangulation::new(1);
            continue;
        }
        if t.size() + 3 <= target && rng.gen_bool(one_four_weight) {
            let k = rng.gen_range(0..t.size());
            t = one_four_move(&t, k);
            continue;
        }
        let mut faces: Vec<(usize, usize)> = (0..t.size()).flat_map(|k| (0..4).map(move |f| (k, f))).collect();
        faces.shuffle(rng);
        match faces.into_iter().find_map(|(k, f)| two_three_move(&t, k, f)) {
            Some(next) => t = next,
            None => {
                let k = rng.gen_range(0..t.size());
                t = one_four_move(&t, k);
            }
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::serialize_triangulation;

    #[test]
    fn figure_eight_is_not_compact() {
        let t = figure_eight();
        assert!(t.is_closed());
        assert!(!is_compact_valid(&t));
        assert!(build_skeleton(&t).is_ok());
    }

    #[test]
    fn moves_keep_compactness() {
        let s3 = doubled_tetrahedron();
        let a = one_four_move(&s3, 0);
        assert_eq!(a.size(), 5);
        assert!(a.is_closed() && is_compact_valid(&a));
        assert_eq!(build_skeleton(&a).unwrap().vertex_count(), 5);
        let b = two_three_move(&s3, 0, 0).unwrap();
        assert_eq!(b.size(), 3);
        assert!(b.is_closed() && is_compact_valid(&b));
        let s = build_skeleton(&b).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.edge_count(), 7);
        let lone = one_four_move(&Triangulation::new(1), 0);
        assert_eq!(lone.boundary_faces().len(), 4);
        assert!(is_compact_valid(&lone));
        assert!(two_three_move(&Triangulation::new(1), 0, 0).is_none());
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let t = two_three_move(&doubled_tetrahedron(), 0, 1).unwrap();
        let (code, canon) = canonical_form(&t);
        let relabelled = t.relabel(&[2, 0, 1], &[Perm4::transposition(0, 3), Perm4::IDENTITY, Perm4::transposition(1, 2)]);
        let (code2, canon2) = canonical_form(&relabelled);
        assert_eq!(code, code2);
        assert_eq!(serialize_triangulation(&canon), serialize_triangulation(&canon2));
    }

    #[test]
    fn one_tetrahedron_catalog() {
        let c = catalog(1);
        assert!(!c.is_empty());
        assert!(c.iter().all(is_compact_valid));
        // the lone tetrahedron is there, and so is a closed one
        assert!(c.iter().any(|t| t.boundary_faces().len() == 4));
        assert!(c.iter().any(|t| t.is_closed()));
        let codes: HashSet<Vec<u8>> = c.iter().map(|t| canonical_form(t).0).collect();
        assert_eq!(codes.len(), c.len());
    }

    #[test]
    fn growth_reaches_target() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let t = grow(&doubled_tetrahedron(), 9, 0.3, &mut rng);
        assert!(t.size() >= 9 && t.size() <= 10);
        assert!(is_compact_valid(&t));
    }
}
