use super::Triangulation;
use crate::error::{Error, Result};

/// The six edges of a tetrahedron as ordered vertex pairs, indexed 0..6.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub(crate) fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => unreachable!("not an edge: {a}{b}"),
    }
}

/// One appearance of an edge class inside a tetrahedron, oriented from
/// `lower` to `upper` and traversed from face `enter` to face `exit`.
///
/// `enter` and `exit` are the two vertices of the tetrahedron off the edge;
/// the walk arrives through the face opposite `enter` and leaves through
/// the face opposite `exit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeEmbedding {
    pub tet: usize,
    pub lower: usize,
    pub upper: usize,
    pub enter: usize,
    pub exit: usize,
}

impl EdgeEmbedding {
    fn reversed(self) -> Self {
        EdgeEmbedding { enter: self.exit, exit: self.enter, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    /// The embeddings in walking order. For an internal edge this is a
    /// cycle; for a boundary edge it is an arc that starts and ends on
    /// boundary faces.
    pub embeddings: Vec<EdgeEmbedding>,
    pub boundary: bool,
}

/// Equivalence classes of vertices, edges and faces of a triangulation.
///
/// Vertex classes are numbered `0..m` in order of first appearance over
/// `(tet, vertex)` pairs, and likewise for edge and face classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    vertex_class: Vec<[usize; 4]>,
    vertices: Vec<Vec<(usize, usize)>>,
    edge_class: Vec<[usize; 6]>,
    edges: Vec<EdgeClass>,
    face_class: Vec<[usize; 4]>,
    face_count: usize,
    boundary_faces: Vec<(usize, usize)>,
}

impl Skeleton {
    pub fn tets(&self) -> usize {
        self.vertex_class.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_class(&self, tet: usize, vertex: usize) -> usize {
        self.vertex_class[tet][vertex]
    }

    /// The `(tet, vertex)` corners making up vertex class `v`, in order.
    pub fn vertex_embeddings(&self, v: usize) -> &[(usize, usize)] {
        &self.vertices[v]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_class(&self, tet: usize, edge: usize) -> usize {
        self.edge_class[tet][edge]
    }

    pub fn edges(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub fn face_class(&self, tet: usize, face: usize) -> usize {
        self.face_class[tet][face]
    }

    pub fn boundary_faces(&self) -> &[(usize, usize)] {
        &self.boundary_faces
    }

    pub fn internal_face_count(&self) -> usize {
        self.face_count - self.boundary_faces.len()
    }
}

/// Union-find that also tracks whether each element is identified with its
/// root preserving or reversing orientation.
struct ParityUnionFind {
    parent: Vec<usize>,
    flip: Vec<bool>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), flip: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, pf) = self.find(p);
        self.parent[x] = root;
        self.flip[x] ^= pf;
        (root, self.flip[x])
    }

    /// Records that `a` and `b` are identified with relative orientation
    /// `flip`. Returns `false` if this contradicts an earlier identification.
    fn union(&mut self, a: usize, b: usize, flip: bool) -> bool {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            return fa ^ fb == flip;
        }
        self.parent[rb] = ra;
        self.flip[rb] = fa ^ fb ^ flip;
        true
    }
}

fn number_classes<const K: usize>(roots: impl Iterator<Item = usize>, n: usize) -> (Vec<[usize; K]>, usize) {
    let mut label = std::collections::HashMap::new();
    let mut out = vec![[0usize; K]; n];
    for (idx, root) in roots.enumerate() {
        let next = label.len();
        out[idx / K][idx % K] = *label.entry(root).or_insert(next);
    }
    (out, label.len())
}

pub fn build_skeleton(tri: &Triangulation) -> Result<Skeleton> {
    let n = tri.size();

    let mut vuf = ParityUnionFind::new(4 * n);
    let mut euf = ParityUnionFind::new(6 * n);
    for fp in tri.face_pairs() {
        for a in (0..4).filter(|&v| v != fp.face) {
            vuf.union(4 * fp.tet + a, 4 * fp.other_tet + fp.perm.apply(a), false);
        }
        for (a, b) in EDGE_VERTICES {
            if a == fp.face || b == fp.face {
                continue;
            }
            let (pa, pb) = (fp.perm.apply(a), fp.perm.apply(b));
            let e = edge_index(a, b);
            if !euf.union(6 * fp.tet + e, 6 * fp.other_tet + edge_index(pa, pb), pa > pb) {
                return Err(Error::InvalidEdge { tet: fp.tet, edge: e });
            }
        }
    }

    let (vertex_class, m) = number_classes::<4>((0..4 * n).map(|i| vuf.find(i).0), n);
    let mut vertices = vec![Vec::new(); m];
    for t in 0..n {
        for v in 0..4 {
            vertices[vertex_class[t][v]].push((t, v));
        }
    }

    let (edge_class, edge_count) = number_classes::<6>((0..6 * n).map(|i| euf.find(i).0), n);
    let mut first = vec![None; edge_count];
    let mut sizes = vec![0usize; edge_count];
    for (t, classes) in edge_class.iter().enumerate() {
        for (e, &c) in classes.iter().enumerate() {
            sizes[c] += 1;
            first[c].get_or_insert((t, e));
        }
    }
    let mut edges = Vec::with_capacity(edge_count);
    for (c, start) in first.into_iter().enumerate() {
        let (t, e) = start.expect("every class has a member");
        let edge = walk_edge(tri, t, e)?;
        if edge.embeddings.len() != sizes[c] {
            return Err(Error::InvalidEdge { tet: t, edge: e });
        }
        edges.push(edge);
    }

    let mut face_class = vec![[usize::MAX; 4]; n];
    let mut face_count = 0;
    let mut boundary_faces = Vec::new();
    for t in 0..n {
        for f in 0..4 {
            if face_class[t][f] != usize::MAX {
                continue;
            }
            face_class[t][f] = face_count;
            match tri.gluing(t, f) {
                Some(g) => face_class[g.tet][g.face] = face_count,
                None => boundary_faces.push((t, f)),
            }
            face_count += 1;
        }
    }

    Ok(Skeleton { vertex_class, vertices, edge_class, edges, face_class, face_count, boundary_faces })
}

fn step(tri: &Triangulation, emb: EdgeEmbedding) -> Option<EdgeEmbedding> {
    let g = tri.gluing(emb.tet, emb.exit)?;
    Some(EdgeEmbedding {
        tet: g.tet,
        lower: g.perm.apply(emb.lower),
        upper: g.perm.apply(emb.upper),
        enter: g.perm.apply(emb.exit),
        exit: g.perm.apply(emb.enter),
    })
}

fn walk_edge(tri: &Triangulation, tet: usize, edge: usize) -> Result<EdgeClass> {
    let (lower, upper) = EDGE_VERTICES[edge];
    let mut others = (0..4).filter(|&v| v != lower && v != upper);
    let (enter, exit) = (others.next().unwrap(), others.next().unwrap());
    let start = EdgeEmbedding { tet, lower, upper, enter, exit };
    let limit = 6 * tri.size() + 1;

    let mut embeddings = vec![start];
    let mut cur = start;
    loop {
        match step(tri, cur) {
            Some(next) if next == start => return Ok(EdgeClass { embeddings, boundary: false }),
            Some(next) => {
                embeddings.push(next);
                cur = next;
                if embeddings.len() > limit {
                    return Err(Error::InvalidEdge { tet, edge });
                }
            }
            None => break,
        }
    }

    // Boundary edge: back up to the start of the arc, then walk forwards.
    let mut back = start.reversed();
    let mut steps = 0;
    while let Some(prev) = step(tri, back) {
        back = prev;
        steps += 1;
        if steps > limit {
            return Err(Error::InvalidEdge { tet, edge });
        }
    }
    let mut cur = back.reversed();
    let mut embeddings = vec![cur];
    while let Some(next) = step(tri, cur) {
        embeddings.push(next);
        cur = next;
        if embeddings.len() > limit {
            return Err(Error::InvalidEdge { tet, edge });
        }
    }
    Ok(EdgeClass { embeddings, boundary: true })
}
