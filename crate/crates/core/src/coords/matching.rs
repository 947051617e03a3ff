use super::{quad_type, triangle_position, Coords};
use crate::triangulation::{Skeleton, Triangulation};

/// A linear equation `row · x = 0`, as `(position, coefficient)` pairs with
/// distinct positions and non-zero coefficients.
pub type SparseRow = Vec<(usize, i64)>;

/// One step of the walk around a vertex link: crossing a glued face from a
/// triangle to its neighbour on the other side.
///
/// The matching equation across that face reads
/// `t[from] + q[own_quad] = t[to] + q[other_quad]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleStep {
    pub to: usize,
    pub own_quad: usize,
    pub other_quad: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingSystem {
    coords: Coords,
    tets: usize,
    rows: Vec<SparseRow>,
    /// For standard systems, indexed by `4 * tet + vertex`: the neighbours of
    /// each triangle type across each of its three faces.
    adjacency: Vec<[Option<TriangleStep>; 3]>,
}

fn merge(mut row: SparseRow) -> SparseRow {
    row.sort_unstable_by_key(|&(p, _)| p);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (p, c) in row {
        match out.last_mut() {
            Some((q, d)) if *q == p => *d += c,
            _ => out.push((p, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

impl MatchingSystem {
    pub fn coords(&self) -> Coords {
        self.coords
    }

    pub fn tets(&self) -> usize {
        self.tets
    }

    pub fn dim(&self) -> usize {
        self.coords.dim(self.tets)
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Positions of the three quadrilateral coordinates of each tetrahedron.
    pub fn quad_positions(&self) -> Vec<[usize; 3]> {
        self.coords.quad_positions(self.tets)
    }

    pub fn triangle_positions(&self) -> Vec<usize> {
        match self.coords {
            Coords::Standard => (0..self.tets).flat_map(|t| (0..4).map(move |v| triangle_position(t, v))).collect(),
            Coords::Quad => Vec::new(),
        }
    }

    /// Neighbours of the triangle cutting off vertex `v` of `tet`; empty for
    /// quadrilateral systems.
    pub fn triangle_steps(&self, tet: usize, v: usize) -> &[Option<TriangleStep>] {
        match self.coords {
            Coords::Standard => &self.adjacency[4 * tet + v],
            Coords::Quad => &[],
        }
    }

    /// The same system with its equations reordered: row `i` of the result
    /// is row `order[i]` of `self`.
    pub fn reordered(&self, order: &[usize]) -> MatchingSystem {
        MatchingSystem { rows: order.iter().map(|&i| self.rows[i].clone()).collect(), ..self.clone() }
    }

    /// The same system with row `i` negated.
    pub fn with_negated_row(&self, i: usize) -> MatchingSystem {
        let mut out = self.clone();
        for e in out.rows[i].iter_mut() {
            e.1 = -e.1;
        }
        out
    }
}

/// Three equations per internal face, one for each edge of the face, in
/// gluing-orbit order.
pub fn standard_matching_system(tri: &Triangulation, _skel: &Skeleton) -> MatchingSystem {
    let n = tri.size();
    let std = Coords::Standard;
    let mut rows = Vec::with_capacity(3 * n);
    for fp in tri.face_pairs() {
        for a in (0..4).filter(|&a| a != fp.face) {
            let c = fp.perm.apply(a);
            rows.push(merge(vec![
                (triangle_position(fp.tet, a), 1),
                (std.quad_position(fp.tet, quad_type(a, fp.face)), 1),
                (triangle_position(fp.other_tet, c), -1),
                (std.quad_position(fp.other_tet, quad_type(c, fp.other_face)), -1),
            ]));
        }
    }

    let mut adjacency = vec![[None; 3]; 4 * n];
    for t in 0..n {
        for a in 0..4 {
            for (slot, f) in (0..4).filter(|&f| f != a).enumerate() {
                if let Some(g) = tri.gluing(t, f) {
                    let c = g.perm.apply(a);
                    adjacency[4 * t + a][slot] = Some(TriangleStep {
                        to: 4 * g.tet + c,
                        own_quad: std.quad_position(t, quad_type(a, f)),
                        other_quad: std.quad_position(g.tet, quad_type(c, g.face)),
                    });
                }
            }
        }
    }

    MatchingSystem { coords: std, tets: n, rows, adjacency }
}

/// One equation per internal edge class: walking once around the edge, the
/// upward quadrilaterals minus the downward ones.
///
/// In an embedding entered through the face opposite `x` and left through
/// the face opposite `y`, the upward quadrilateral separates `{lower, y}`
/// from `{upper, x}`.
pub fn quad_matching_system(tri: &Triangulation, skel: &Skeleton) -> MatchingSystem {
    let quad = Coords::Quad;
    let rows = skel
        .edges()
        .iter()
        .filter(|e| !e.boundary)
        .map(|e| {
            merge(
                e.embeddings
                    .iter()
                    .flat_map(|emb| {
                        [
                            (quad.quad_position(emb.tet, quad_type(emb.lower, emb.exit)), 1),
                            (quad.quad_position(emb.tet, quad_type(emb.lower, emb.enter)), -1),
                        ]
                    })
                    .collect(),
            )
        })
        .collect();
    MatchingSystem { coords: quad, tets: tri.size(), rows, adjacency: Vec::new() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::IntVec;
    use crate::triangulation::{build_skeleton, parse_triangulation};

    const S3: &str = "tetrahedra: 2\nglue 0 0 : 1 0 : 0 1 2 3\nglue 0 1 : 1 1 : 0 1 2 3\nglue 0 2 : 1 2 : 0 1 2 3\nglue 0 3 : 1 3 : 0 1 2 3\n";

    #[test]
    fn lone_tetrahedron_has_no_equations() {
        let t = Triangulation::new(1);
        let s = build_skeleton(&t).unwrap();
        assert!(standard_matching_system(&t, &s).is_empty());
        assert!(quad_matching_system(&t, &s).is_empty());
    }

    #[test]
    fn closed_two_tetrahedra_have_six_n_standard_equations() {
        let t = parse_triangulation(S3).unwrap();
        let s = build_skeleton(&t).unwrap();
        let m = standard_matching_system(&t, &s);
        assert_eq!(m.len(), 12);
        assert_eq!(quad_matching_system(&t, &s).len(), s.edge_count());
    }

    #[test]
    fn face_equation_balances_discs() {
        // One triangle and one quad on the left meeting two triangles on
        // the right: 1 + 1 = 2 + 0.
        let t = parse_triangulation(S3).unwrap();
        let s = build_skeleton(&t).unwrap();
        let m = standard_matching_system(&t, &s);
        let row = &m.rows()[0];
        let mut x = vec![0i64; 14];
        for &(p, c) in row {
            let is_quad = p % 7 >= 4;
            x[p] = match (c > 0, is_quad) {
                (true, _) => 1,
                (false, false) => 2,
                (false, true) => 0,
            };
        }
        assert_eq!(IntVec::from_i64(x).dot_sparse(row), 0.into());
    }
}
