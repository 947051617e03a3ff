//! Compact 3-manifold triangulations: tetrahedra with faces affinely
//! identified in pairs.
//!
//! Face `i` of a tetrahedron is the face opposite vertex `i`. A gluing of
//! face `f` of tetrahedron `t` to face `f'` of `t'` carries a permutation `p`
//! of vertex labels with `p(f) = f'`; vertex `v` of `t` is identified with
//! vertex `p(v)` of `t'`.

mod skeleton;
mod text;
mod validate;

pub use skeleton::{build_skeleton, EdgeClass, EdgeEmbedding, Skeleton, EDGE_VERTICES};
pub use text::{parse_triangulation, serialize_triangulation};
pub use validate::{validate_compact, ValidationReport, VertexLinkReport};

use crate::error::{Error, Result};
use crate::perm::Perm4;

/// One side of a face gluing: the partner face and the vertex map onto it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub face: usize,
    pub perm: Perm4,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Triangulation {
    faces: Vec<[Option<Gluing>; 4]>,
}

/// A gluing orbit listed from its lexicographically smaller side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacePair {
    pub tet: usize,
    pub face: usize,
    pub other_tet: usize,
    pub other_face: usize,
    pub perm: Perm4,
}

impl Triangulation {
    pub fn new(size: usize) -> Self {
        Triangulation { faces: vec![[None; 4]; size] }
    }

    /// Number of tetrahedra.
    pub fn size(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.faces[tet][face]
    }

    pub fn add_tetrahedron(&mut self) -> usize {
        self.faces.push([None; 4]);
        self.faces.len() - 1
    }

    /// Glues face `face` of `tet` to face `perm(face)` of `other`, recording
    /// both directions of the involution.
    pub fn join(&mut self, tet: usize, face: usize, other: usize, perm: Perm4) -> Result<()> {
        self.join_checked(0, tet, face, other, perm.apply(face), perm)
    }

    pub(crate) fn join_checked(
        &mut self,
        line: usize,
        tet: usize,
        face: usize,
        other: usize,
        other_face: usize,
        perm: Perm4,
    ) -> Result<()> {
        let size = self.size();
        for t in [tet, other] {
            if t >= size {
                return Err(Error::TetOutOfRange { line, tet: t, size });
            }
        }
        for f in [face, other_face] {
            if f > 3 {
                return Err(Error::FaceOutOfRange { line, face: f });
            }
        }
        if perm.apply(face) != other_face {
            return Err(Error::PermutationMismatch { line, face, target: other_face });
        }
        if tet == other && face == other_face {
            return Err(Error::Involution {
                line,
                tet,
                face,
                reason: "a face cannot be glued to itself".into(),
            });
        }
        for (t, f, partner, pf, p) in [
            (tet, face, other, other_face, perm),
            (other, other_face, tet, face, perm.inverse()),
        ] {
            if let Some(existing) = self.faces[t][f] {
                if existing.tet == partner && existing.face == pf && existing.perm != p {
                    return Err(Error::Involution {
                        line,
                        tet: t,
                        face: f,
                        reason: "reverse gluing uses a different permutation".into(),
                    });
                }
                return Err(Error::FaceGluedTwice { line, tet: t, face: f });
            }
        }
        self.faces[tet][face] = Some(Gluing { tet: other, face: other_face, perm });
        self.faces[other][other_face] = Some(Gluing { tet, face, perm: perm.inverse() });
        Ok(())
    }

    pub fn unjoin(&mut self, tet: usize, face: usize) {
        if let Some(g) = self.faces[tet][face].take() {
            self.faces[g.tet][g.face] = None;
        }
    }

    /// Every gluing orbit once, from the side with the smaller `(tet, face)`,
    /// in lexicographic order.
    pub fn face_pairs(&self) -> impl Iterator<Item = FacePair> + '_ {
        self.faces.iter().enumerate().flat_map(|(t, faces)| {
            faces.iter().enumerate().filter_map(move |(f, g)| {
                g.filter(|g| (t, f) < (g.tet, g.face)).map(|g| FacePair {
                    tet: t,
                    face: f,
                    other_tet: g.tet,
                    other_face: g.face,
                    perm: g.perm,
                })
            })
        })
    }

    pub fn boundary_faces(&self) -> Vec<(usize, usize)> {
        (0..self.size())
            .flat_map(|t| (0..4).map(move |f| (t, f)))
            .filter(|&(t, f)| self.faces[t][f].is_none())
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.faces.iter().all(|f| f.iter().all(Option::is_some))
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.size()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for g in self.faces[t].iter().flatten() {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    stack.push(g.tet);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Relabels the triangulation: tetrahedron `t` becomes `tet_map[t]`, and
    /// its vertex `v` becomes vertex `vertex_maps[t](v)` of the new
    /// tetrahedron.
    pub fn relabel(&self, tet_map: &[usize], vertex_maps: &[Perm4]) -> Triangulation {
        assert_eq!(tet_map.len(), self.size());
        assert_eq!(vertex_maps.len(), self.size());
        let mut out = Triangulation::new(self.size());
        for t in 0..self.size() {
            for f in 0..4 {
                if let Some(g) = self.faces[t][f] {
                    let perm = vertex_maps[g.tet].compose(&g.perm).compose(&vertex_maps[t].inverse());
                    out.faces[tet_map[t]][vertex_maps[t].apply(f)] = Some(Gluing {
                        tet: tet_map[g.tet],
                        face: vertex_maps[g.tet].apply(g.face),
                        perm,
                    });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: [u8; 4]) -> Perm4 {
        Perm4::new(images).unwrap()
    }

    #[test]
    fn join_records_both_directions() {
        let mut t = Triangulation::new(2);
        t.join(0, 1, 1, p([1, 0, 2, 3])).unwrap();
        let g = t.gluing(1, 0).unwrap();
        assert_eq!((g.tet, g.face), (0, 1));
        assert_eq!(g.perm, p([1, 0, 2, 3]).inverse());
        assert_eq!(t.face_pairs().count(), 1);
        assert_eq!(t.boundary_faces().len(), 6);
    }

    #[test]
    fn join_rejects_bad_input() {
        let mut t = Triangulation::new(1);
        assert!(matches!(
            t.join(0, 0, 0, Perm4::IDENTITY),
            Err(Error::Involution { .. })
        ));
        t.join(0, 0, 0, p([1, 0, 2, 3])).unwrap();
        assert!(matches!(
            t.join(0, 2, 0, p([1, 0, 2, 3]).compose(&Perm4::transposition(2, 0))),
            Err(Error::FaceGluedTwice { .. })
        ));
        assert!(matches!(
            t.join(0, 2, 3, Perm4::IDENTITY),
            Err(Error::TetOutOfRange { .. })
        ));
    }

    #[test]
    fn relabel_preserves_involution() {
        let mut t = Triangulation::new(2);
        t.join(0, 0, 1, p([1, 3, 0, 2])).unwrap();
        t.join(0, 1, 1, p([2, 0, 3, 1])).unwrap();
        let r = t.relabel(&[1, 0], &[p([3, 2, 1, 0]), p([1, 2, 3, 0])]);
        for tet in 0..2 {
            for f in 0..4 {
                if let Some(g) = r.gluing(tet, f) {
                    let back = r.gluing(g.tet, g.face).unwrap();
                    assert_eq!((back.tet, back.face), (tet, f));
                    assert_eq!(back.perm, g.perm.inverse());
                    assert_eq!(g.perm.apply(f), g.face);
                }
            }
        }
        assert_eq!(r.face_pairs().count(), 2);
    }
}
