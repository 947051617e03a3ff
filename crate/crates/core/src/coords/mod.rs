//! Coordinate systems for normal surfaces.
//!
//! Standard coordinates hold seven entries per tetrahedron, ordered
//! `t1 t2 t3 t4 q1 q2 q3`: triangle type `j` cuts off vertex `j - 1`, and
//! quadrilateral type `k` separates edge `{0, k}` from its opposite edge.
//! Quadrilateral coordinates keep only the three quadrilateral entries.

mod maps;
mod matching;

pub use maps::{
    canonical_extension, canonical_extension_seeded, canonical_part, dominates, is_admissible,
    is_canonical, partial_canonical_part, primitive, project, project_raw, satisfies_quad_constraints,
    strictly_dominates, truncate, vertex_link,
};
pub use matching::{quad_matching_system, standard_matching_system, MatchingSystem, SparseRow, TriangleStep};

use std::fmt;

use crate::int::IntVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coords {
    Standard,
    Quad,
}

impl Coords {
    /// Entries per tetrahedron.
    pub fn block(self) -> usize {
        match self {
            Coords::Standard => 7,
            Coords::Quad => 3,
        }
    }

    pub fn dim(self, tets: usize) -> usize {
        self.block() * tets
    }

    /// Position of quadrilateral type `k` (0-based) in tetrahedron `tet`.
    #[inline]
    pub fn quad_position(self, tet: usize, k: usize) -> usize {
        match self {
            Coords::Standard => 7 * tet + 4 + k,
            Coords::Quad => 3 * tet + k,
        }
    }

    pub fn quad_positions(self, tets: usize) -> Vec<[usize; 3]> {
        (0..tets)
            .map(|t| [self.quad_position(t, 0), self.quad_position(t, 1), self.quad_position(t, 2)])
            .collect()
    }
}

impl fmt::Display for Coords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coords::Standard => "std",
            Coords::Quad => "quad",
        })
    }
}

/// Position of the triangle cutting off vertex `v` of tetrahedron `tet`.
#[inline]
pub fn triangle_position(tet: usize, v: usize) -> usize {
    7 * tet + v
}

/// The 0-based quadrilateral type separating vertices `a, b` from the other
/// two.
#[inline]
pub fn quad_type(a: usize, b: usize) -> usize {
    debug_assert!(a != b && a < 4 && b < 4);
    if a == 0 {
        b - 1
    } else if b == 0 {
        a - 1
    } else {
        5 - a - b
    }
}

/// A vector in standard or quadrilateral coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalVector {
    coords: Coords,
    entries: IntVec,
}

impl NormalVector {
    /// Panics if the length is not a multiple of the block size.
    pub fn new(coords: Coords, entries: IntVec) -> Self {
        assert_eq!(entries.len() % coords.block(), 0, "length does not match {coords} coordinates");
        NormalVector { coords, entries }
    }

    pub fn zero(coords: Coords, tets: usize) -> Self {
        NormalVector::new(coords, IntVec::zeros(coords.dim(tets)))
    }

    pub fn from_i64(coords: Coords, entries: Vec<i64>) -> Self {
        NormalVector::new(coords, IntVec::from_i64(entries))
    }

    pub fn coords(&self) -> Coords {
        self.coords
    }

    pub fn tets(&self) -> usize {
        self.entries.len() / self.coords.block()
    }

    pub fn entries(&self) -> &IntVec {
        &self.entries
    }

    pub fn into_entries(self) -> IntVec {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }
}

/// A finite set of primitive rays, stored sorted and without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolutionSet {
    coords: Coords,
    tets: usize,
    rays: Vec<IntVec>,
}

impl SolutionSet {
    /// Reduces every ray to primitive form and stores them in canonical
    /// order. Zero vectors are dropped. Panics on a length mismatch.
    pub fn new(coords: Coords, tets: usize, rays: impl IntoIterator<Item = IntVec>) -> Self {
        let dim = coords.dim(tets);
        let mut rays: Vec<IntVec> = rays
            .into_iter()
            .inspect(|r| assert_eq!(r.len(), dim, "ray length does not match {coords} coordinates"))
            .filter(|r| !r.is_zero())
            .map(|r| r.primitive())
            .collect();
        rays.sort();
        rays.dedup();
        SolutionSet { coords, tets, rays }
    }

    pub fn empty(coords: Coords, tets: usize) -> Self {
        SolutionSet { coords, tets, rays: Vec::new() }
    }

    pub fn coords(&self) -> Coords {
        self.coords
    }

    pub fn tets(&self) -> usize {
        self.tets
    }

    pub fn dim(&self) -> usize {
        self.coords.dim(self.tets)
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn vectors(&self) -> impl Iterator<Item = NormalVector> + '_ {
        self.rays.iter().map(move |r| NormalVector::new(self.coords, r.clone()))
    }

    /// Whether some positive multiple of `v` is in the set.
    pub fn contains(&self, v: &IntVec) -> bool {
        self.rays.binary_search(&v.primitive()).is_ok()
    }
}
