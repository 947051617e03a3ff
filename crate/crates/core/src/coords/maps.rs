use num_bigint::BigInt;
use num_traits::Zero;

use super::{triangle_position, Coords, MatchingSystem, NormalVector};
use crate::error::{Error, Result};
use crate::int::{IntVec, PositionMask};
use crate::triangulation::Skeleton;

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// At most one non-zero quadrilateral coordinate per tetrahedron.
pub fn satisfies_quad_constraints(w: &NormalVector) -> bool {
    let c = w.coords();
    let e = w.entries();
    (0..w.tets()).all(|t| (0..3).filter(|&k| !e.is_zero_at(c.quad_position(t, k))).count() <= 1)
}

/// Non-negative, a solution of `m`, and within the quadrilateral
/// constraints.
pub fn is_admissible(w: &NormalVector, m: &MatchingSystem) -> Result<bool> {
    check_len(m.dim(), w.len())?;
    if w.coords() != m.coords() {
        return Err(Error::DimensionMismatch { expected: m.dim(), found: w.coords().dim(w.tets()) });
    }
    let e = w.entries();
    Ok(e.is_nonnegative() && satisfies_quad_constraints(w) && m.rows().iter().all(|r| e.dot_sparse(r).is_zero()))
}

/// The vertex link of class `v`: one copy of every triangle around it.
pub fn vertex_link(skel: &Skeleton, v: usize) -> Result<NormalVector> {
    if v >= skel.vertex_count() {
        return Err(Error::VertexOutOfRange(v));
    }
    let mut x = vec![0i64; Coords::Standard.dim(skel.tets())];
    for &(t, a) in skel.vertex_embeddings(v) {
        x[triangle_position(t, a)] = 1;
    }
    Ok(NormalVector::from_i64(Coords::Standard, x))
}

/// The quadrilateral entries of a standard vector, without normalisation.
///
/// Panics if `w` is not in standard coordinates.
pub fn project_raw(w: &NormalVector) -> NormalVector {
    assert_eq!(w.coords(), Coords::Standard, "projection takes a standard vector");
    let positions: Vec<usize> = Coords::Standard.quad_positions(w.tets()).into_iter().flatten().collect();
    NormalVector::new(Coords::Quad, w.entries().select(&positions))
}

/// The map π: quadrilateral entries of a standard vector, in primitive form.
pub fn project(w: &NormalVector) -> NormalVector {
    primitive(&project_raw(w))
}

pub fn primitive(w: &NormalVector) -> NormalVector {
    NormalVector::new(w.coords(), w.entries().primitive())
}

/// The map ε: the canonical standard vector whose projection is `q`.
///
/// Triangle coordinates are recovered one vertex link at a time by a
/// depth-first walk over adjacent triangle types, starting from the first
/// triangle of each class.
pub fn canonical_extension(q: &NormalVector, m: &MatchingSystem, skel: &Skeleton) -> Result<NormalVector> {
    canonical_extension_seeded(q, m, skel, &vec![0; skel.vertex_count()])
}

/// As [`canonical_extension`], starting the walk around class `v` at its
/// `seeds[v]`-th triangle.
pub fn canonical_extension_seeded(
    q: &NormalVector,
    m: &MatchingSystem,
    skel: &Skeleton,
    seeds: &[usize],
) -> Result<NormalVector> {
    let n = skel.tets();
    if q.coords() != Coords::Quad || m.coords() != Coords::Standard {
        return Err(Error::DimensionMismatch { expected: Coords::Quad.dim(n), found: q.len() });
    }
    check_len(Coords::Quad.dim(n), q.len())?;
    check_len(Coords::Standard.dim(n), m.dim())?;
    let qe = q.entries();
    if !qe.is_nonnegative() {
        return Err(Error::NotAdmissible("negative quadrilateral coordinate".into()));
    }
    if !satisfies_quad_constraints(q) {
        return Err(Error::NotAdmissible("two quadrilateral types in one tetrahedron".into()));
    }

    // quad value at a standard quad position
    let quad = |p: usize| qe.get(3 * (p / 7) + p % 7 - 4);
    let mut value: Vec<Option<BigInt>> = vec![None; 4 * n];
    let mut stack = Vec::new();
    for v in 0..skel.vertex_count() {
        let corners = skel.vertex_embeddings(v);
        let seed = *seeds.get(v).ok_or(Error::VertexOutOfRange(v))?;
        let &(t0, a0) = corners.get(seed).ok_or(Error::VertexOutOfRange(v))?;
        value[4 * t0 + a0] = Some(BigInt::zero());
        stack.push(4 * t0 + a0);
        while let Some(from) = stack.pop() {
            let base = value[from].clone().expect("visited triangles have values");
            for step in m.triangle_steps(from / 4, from % 4).iter().flatten() {
                let next = &base + quad(step.own_quad) - quad(step.other_quad);
                match &value[step.to] {
                    None => {
                        value[step.to] = Some(next);
                        stack.push(step.to);
                    }
                    Some(existing) if *existing == next => {}
                    Some(_) => {
                        return Err(Error::NotAdmissible(format!(
                            "quadrilateral matching fails around vertex class {v} (triangle {} of tetrahedron {})",
                            from % 4,
                            from / 4
                        )));
                    }
                }
            }
        }
        let min = corners
            .iter()
            .map(|&(t, a)| value[4 * t + a].clone().expect("vertex links are connected"))
            .min()
            .unwrap_or_default();
        for &(t, a) in corners {
            if let Some(x) = value[4 * t + a].as_mut() {
                *x -= &min;
            }
        }
    }

    let mut out = vec![BigInt::zero(); 7 * n];
    for t in 0..n {
        for a in 0..4 {
            out[triangle_position(t, a)] = value[4 * t + a].take().unwrap_or_default();
        }
        for k in 0..3 {
            out[Coords::Standard.quad_position(t, k)] = qe.get(Coords::Quad.quad_position(t, k));
        }
    }
    Ok(NormalVector::new(Coords::Standard, IntVec::from_big(out)))
}

fn subtract_link_minimum(x: &mut [BigInt], skel: &Skeleton, v: usize) {
    let corners = skel.vertex_embeddings(v);
    let Some(min) = corners.iter().map(|&(t, a)| &x[triangle_position(t, a)]).min().cloned() else {
        return;
    };
    if min.is_zero() {
        return;
    }
    for &(t, a) in corners {
        x[triangle_position(t, a)] -= &min;
    }
}

fn standard_entries(w: &NormalVector, skel: &Skeleton) -> Result<Vec<BigInt>> {
    if w.coords() != Coords::Standard {
        return Err(Error::DimensionMismatch { expected: Coords::Standard.dim(skel.tets()), found: w.len() });
    }
    check_len(Coords::Standard.dim(skel.tets()), w.len())?;
    Ok(w.entries().to_big_vec())
}

/// The map κ_v: subtracts from each vertex link the largest multiple that
/// can be removed, leaving a zero triangle coordinate around every vertex.
pub fn canonical_part(w: &NormalVector, skel: &Skeleton) -> Result<NormalVector> {
    let mut x = standard_entries(w, skel)?;
    for v in 0..skel.vertex_count() {
        subtract_link_minimum(&mut x, skel, v);
    }
    Ok(NormalVector::new(Coords::Standard, IntVec::from_big(x)))
}

/// The map κ_v^(r): as [`canonical_part`], for vertex class `r` only.
pub fn partial_canonical_part(w: &NormalVector, r: usize, skel: &Skeleton) -> Result<NormalVector> {
    if r >= skel.vertex_count() {
        return Err(Error::VertexOutOfRange(r));
    }
    let mut x = standard_entries(w, skel)?;
    subtract_link_minimum(&mut x, skel, r);
    Ok(NormalVector::new(Coords::Standard, IntVec::from_big(x)))
}

/// Whether every vertex class has a zero triangle coordinate around it.
pub fn is_canonical(w: &NormalVector, skel: &Skeleton) -> bool {
    (0..skel.vertex_count()).all(|v| {
        skel.vertex_embeddings(v).iter().any(|&(t, a)| w.entries().is_zero_at(triangle_position(t, a)))
    })
}

/// The truncation τ_i: zeroes the triangle coordinates around vertex
/// classes `i..m`, keeping classes `0..i`.
pub fn truncate(w: &NormalVector, i: usize, skel: &Skeleton) -> Result<NormalVector> {
    if i > skel.vertex_count() {
        return Err(Error::TruncationOutOfRange(i));
    }
    let mut x = standard_entries(w, skel)?;
    for v in i..skel.vertex_count() {
        for &(t, a) in skel.vertex_embeddings(v) {
            x[triangle_position(t, a)] = BigInt::zero();
        }
    }
    Ok(NormalVector::new(Coords::Standard, IntVec::from_big(x)))
}

/// `x` dominates `y` when `y` is zero wherever `x` is.
pub fn dominates(x: &IntVec, y: &IntVec) -> Result<bool> {
    check_len(x.len(), y.len())?;
    Ok(PositionMask::zero_set(x).is_subset_of(&PositionMask::zero_set(y)))
}

/// Domination with some coordinate zero in `y` but not in `x`.
pub fn strictly_dominates(x: &IntVec, y: &IntVec) -> Result<bool> {
    check_len(x.len(), y.len())?;
    let zx = PositionMask::zero_set(x);
    let zy = PositionMask::zero_set(y);
    Ok(zx.is_subset_of(&zy) && zx.count() < zy.count())
}
