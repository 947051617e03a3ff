//! Brute-force extreme ray search for small instances.
//!
//! Every admissible vertex of the solution cone is determined by its
//! support: it is the unique ray (up to scale) of the kernel of the
//! equations restricted to that support, and that ray is strictly positive
//! there. This module walks all supports compatible with the quadrilateral
//! constraints, smallest first, and solves each restricted system by exact
//! elimination. It shares nothing with the double description code and is
//! used to cross-check it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::coords::{triangle_position, Coords, MatchingSystem, SolutionSet};
use crate::error::{Error, Result};
use crate::int::IntVec;

/// Largest ambient dimension accepted by [`brute_force_rays`].
pub const MAX_DIM: usize = 24;

trait Scalar: Clone + PartialEq + Send + Sync + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v.into()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        v.into()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

enum Kernel<T> {
    /// The kernel is not a single strictly positive ray.
    None,
    Ray(Vec<T>),
}

fn reduce_row<T: Scalar>(row: &mut [T]) {
    let g = row.iter().fold(T::from_i64(0), |g, e| g.gcd(e));
    if !g.is_zero() && g != T::from_i64(1) {
        for e in row.iter_mut() {
            *e = e.div_exact(&g);
        }
    }
}

/// Solves `rows · x = 0` over the columns in `support`. Returns `None` on
/// overflow.
fn positive_kernel_ray<T: Scalar>(rows: &[Vec<(usize, i64)>], support: &[usize], dim: usize) -> Option<Kernel<T>> {
    let k = support.len();
    let mut col_of = vec![usize::MAX; dim];
    for (j, &p) in support.iter().enumerate() {
        col_of[p] = j;
    }
    let mut a: Vec<Vec<T>> = Vec::new();
    for r in rows {
        let mut dense = vec![T::from_i64(0); k];
        let mut any = false;
        for &(p, c) in r {
            if col_of[p] != usize::MAX {
                dense[col_of[p]] = T::from_i64(c);
                any = true;
            }
        }
        if any {
            a.push(dense);
        }
    }

    // fraction-free Gauss-Jordan elimination, rows kept gcd-reduced
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for c in 0..k {
        let Some(pr) = (next..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(next, pr);
        let piv_row = a[next].clone();
        let piv = piv_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == next || row[c].is_zero() {
                continue;
            }
            let e = row[c].clone();
            for j in 0..k {
                row[j] = row[j].mul(&piv)?.sub(&piv_row[j].mul(&e)?)?;
            }
            reduce_row(row);
        }
        pivots.push((next, c));
        next += 1;
        if k - pivots.len() > 1 && next == a.len() {
            return Some(Kernel::None);
        }
    }
    if k - pivots.len() != 1 {
        return Some(Kernel::None);
    }
    let free = (0..k).find(|c| !pivots.iter().any(|&(_, pc)| pc == *c)).expect("one free column");

    // x_free = product of pivots; x_pivot = -b * x_free / a
    let mut scale = T::from_i64(1);
    for &(r, c) in &pivots {
        scale = scale.mul(&a[r][c])?;
    }
    let mut x = vec![T::from_i64(0); k];
    x[free] = scale.clone();
    for &(r, c) in &pivots {
        x[c] = a[r][free].mul(&scale)?.div_exact(&a[r][c]).neg()?;
    }
    reduce_row(&mut x);
    if x[free].is_negative() {
        for e in x.iter_mut() {
            *e = e.neg()?;
        }
    }
    if x.iter().any(|e| e.is_zero() || e.is_negative()) {
        return Some(Kernel::None);
    }
    Some(Kernel::Ray(x))
}

fn ray_for_support(rows: &[Vec<(usize, i64)>], support: &[usize], dim: usize) -> Option<IntVec> {
    let entries: Vec<BigInt> = match positive_kernel_ray::<i128>(rows, support, dim) {
        Some(Kernel::None) => return None,
        Some(Kernel::Ray(x)) => x.iter().map(Scalar::to_big).collect(),
        None => match positive_kernel_ray::<BigInt>(rows, support, dim).expect("big integers do not overflow") {
            Kernel::None => return None,
            Kernel::Ray(x) => x,
        },
    };
    let mut out = vec![BigInt::zero(); dim];
    for (&p, e) in support.iter().zip(entries) {
        out[p] = e;
    }
    Some(IntVec::from_big(out))
}

/// All supports compatible with the quadrilateral constraints: any set of
/// triangle coordinates together with at most one quadrilateral per
/// tetrahedron.
fn admissible_supports(coords: Coords, tets: usize) -> Vec<u32> {
    let mut out = vec![0u32];
    for t in 0..tets {
        let mut local: Vec<u32> = Vec::new();
        let tri_subsets: Vec<u32> = match coords {
            Coords::Standard => (0u32..16)
                .map(|s| (0..4).filter(|v| s >> v & 1 == 1).map(|v| 1u32 << triangle_position(t, v)).sum())
                .collect(),
            Coords::Quad => vec![0],
        };
        for &tri in &tri_subsets {
            local.push(tri);
            for k in 0..3 {
                local.push(tri | 1u32 << coords.quad_position(t, k));
            }
        }
        out = out.iter().flat_map(|&a| local.iter().map(move |&b| a | b)).collect();
    }
    out
}

/// The solution set of `m` by exhaustive search over supports.
pub fn brute_force_rays(m: &MatchingSystem) -> Result<SolutionSet> {
    let dim = m.dim();
    if dim > MAX_DIM {
        return Err(Error::OracleTooLarge(dim, MAX_DIM));
    }
    let mut supports = admissible_supports(m.coords(), m.tets());
    supports.sort_by_key(|s| (s.count_ones(), *s));

    let mut kept: Vec<(u32, IntVec)> = Vec::new();
    let mut start = 0;
    while start < supports.len() {
        let size = supports[start].count_ones();
        let end = start + supports[start..].iter().take_while(|s| s.count_ones() == size).count();
        if size > 0 {
            let smaller: Vec<u32> = kept.iter().map(|(s, _)| *s).collect();
            let found: Vec<(u32, IntVec)> = supports[start..end]
                .par_iter()
                .filter(|&&s| !smaller.iter().any(|&k| k & !s == 0))
                .filter_map(|&s| {
                    let positions: Vec<usize> = (0..dim).filter(|&p| s >> p & 1 == 1).collect();
                    ray_for_support(m.rows(), &positions, dim).map(|r| (s, r))
                })
                .collect();
            kept.extend(found);
        }
        start = end;
    }

    // safety net: a vertex never strictly dominates another vertex
    let masks: Vec<u32> = kept.iter().map(|(s, _)| *s).collect();
    let rays = kept
        .iter()
        .filter(|(s, _)| !masks.iter().any(|&o| o != *s && o & s == o))
        .map(|(_, r)| r.clone());
    Ok(SolutionSet::new(m.coords(), m.tets(), rays))
}
