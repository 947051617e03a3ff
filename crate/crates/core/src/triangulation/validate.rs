use std::collections::HashSet;

use super::{Skeleton, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLinkReport {
    pub euler_characteristic: i64,
    pub boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_compact: bool,
    pub per_vertex: Vec<VertexLinkReport>,
    pub failures: Vec<String>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// Assembles every vertex link from the corner triangles of the tetrahedra
/// and checks that each is a 2-sphere (closed, χ = 2) or a disc (bounded,
/// χ = 1).
pub fn validate_compact(tri: &Triangulation, skel: &Skeleton) -> ValidationReport {
    let n = tri.size();
    // Link vertices are the corners (t, v, w): the end of edge vw at v.
    let corner = |t: usize, v: usize, w: usize| 16 * t + 4 * v + w;
    let mut parent: Vec<usize> = (0..16 * n).collect();
    for fp in tri.face_pairs() {
        for v in (0..4).filter(|&v| v != fp.face) {
            for w in (0..4).filter(|&w| w != fp.face && w != v) {
                let a = find(&mut parent, corner(fp.tet, v, w));
                let b = find(&mut parent, corner(fp.other_tet, fp.perm.apply(v), fp.perm.apply(w)));
                parent[b] = a;
            }
        }
    }

    let m = skel.vertex_count();
    let mut per_vertex = Vec::with_capacity(m);
    let mut failures = Vec::new();
    for class in 0..m {
        let corners = skel.vertex_embeddings(class);
        let triangles = corners.len() as i64;
        let mut link_vertices = HashSet::new();
        let mut boundary_sides = 0i64;
        for &(t, v) in corners {
            for w in (0..4).filter(|&w| w != v) {
                link_vertices.insert(find(&mut parent, corner(t, v, w)));
                // the link triangle side opposite w lies in face w
                if tri.gluing(t, w).is_none() {
                    boundary_sides += 1;
                }
            }
        }
        let link_edges = (3 * triangles + boundary_sides) / 2;
        let chi = link_vertices.len() as i64 - link_edges + triangles;
        let boundary = boundary_sides > 0;
        let expected = if boundary { 1 } else { 2 };
        if chi != expected {
            failures.push(format!(
                "vertex class {class}: {} link has Euler characteristic {chi}, expected {expected}",
                if boundary { "bounded" } else { "closed" }
            ));
        }
        per_vertex.push(VertexLinkReport { euler_characteristic: chi, boundary });
    }

    ValidationReport { is_compact: failures.is_empty(), per_vertex, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::{build_skeleton, parse_triangulation};

    fn report(text: &str) -> ValidationReport {
        let t = parse_triangulation(text).unwrap();
        let s = build_skeleton(&t).unwrap();
        validate_compact(&t, &s)
    }

    #[test]
    fn lone_tetrahedron_has_disc_links() {
        let r = report("tetrahedra: 1\n");
        assert!(r.is_compact);
        assert_eq!(r.per_vertex.len(), 4);
        assert!(r.per_vertex.iter().all(|v| v.euler_characteristic == 1 && v.boundary));
    }

    #[test]
    fn figure_eight_complement_is_ideal() {
        let r = report(
            "tetrahedra: 2\nglue 0 0 : 1 1 : 1 3 0 2\nglue 0 1 : 1 0 : 2 0 3 1\nglue 0 2 : 1 2 : 0 3 2 1\nglue 0 3 : 1 3 : 2 1 0 3\n",
        );
        assert!(!r.is_compact);
        assert_eq!(r.per_vertex, vec![VertexLinkReport { euler_characteristic: 0, boundary: false }]);
        assert_eq!(r.failures.len(), 1);
    }

    #[test]
    fn two_tetrahedra_doubled_is_a_sphere() {
        // Two tetrahedra glued along all four faces by the identity: S^3.
        let r = report(
            "tetrahedra: 2\nglue 0 0 : 1 0 : 0 1 2 3\nglue 0 1 : 1 1 : 0 1 2 3\nglue 0 2 : 1 2 : 0 1 2 3\nglue 0 3 : 1 3 : 0 1 2 3\n",
        );
        assert!(r.is_compact);
        assert_eq!(r.per_vertex.len(), 4);
        assert!(r.per_vertex.iter().all(|v| v.euler_characteristic == 2 && !v.boundary));
    }
}
