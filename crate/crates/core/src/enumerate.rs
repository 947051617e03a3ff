//! Direct enumeration of solution sets by the double description method.
//!
//! The cone starts as the non-negative orthant, generated by the unit rays,
//! and is cut by one matching equation at a time. Rays breaking the
//! quadrilateral constraints are discarded as soon as they appear: positive
//! entries survive non-negative combination, so such rays only ever produce
//! more of the same.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::coords::{MatchingSystem, SolutionSet};
use crate::error::{Error, Result};
use crate::int::{IntVec, PositionMask};

/// Working rays of the double description method with their cached zero
/// sets, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayList {
    dim: usize,
    rays: Vec<IntVec>,
    zeros: Vec<PositionMask>,
}

impl RayList {
    /// The unit rays of the non-negative orthant.
    pub fn units(dim: usize) -> Self {
        RayList::from_rays(
            dim,
            (0..dim).map(|i| {
                let mut v = vec![0i64; dim];
                v[i] = 1;
                IntVec::from_i64(v)
            }),
        )
    }

    /// Primitive, sorted and deduplicated. Zero vectors are dropped.
    pub fn from_rays(dim: usize, rays: impl IntoIterator<Item = IntVec>) -> Self {
        let mut rays: Vec<IntVec> = rays
            .into_iter()
            .inspect(|r| assert_eq!(r.len(), dim))
            .filter(|r| !r.is_zero())
            .map(|r| r.primitive())
            .collect();
        rays.sort();
        rays.dedup();
        let zeros = rays.iter().map(PositionMask::zero_set).collect();
        RayList { dim, rays, zeros }
    }

    pub fn dim(&self) -> usize {
        self.dim
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

    pub fn zero_sets(&self) -> &[PositionMask] {
        &self.zeros
    }

    pub fn into_rays(self) -> Vec<IntVec> {
        self.rays
    }
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Discard rays breaking the quadrilateral constraints as they appear.
    pub prune: bool,
    /// Evaluate candidate pairs on the rayon thread pool.
    pub parallel: bool,
    pub deadline: Option<Instant>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { prune: true, parallel: true, deadline: None }
    }
}

fn violates(v: &IntVec, quads: &[[usize; 3]]) -> bool {
    quads.iter().any(|q| q.iter().filter(|&&p| !v.is_zero_at(p)).count() > 1)
}

/// Whether the union of the supports of `u` and `w` still has at most one
/// quadrilateral per tetrahedron, given their zero sets.
fn compatible(zu: &PositionMask, zw: &PositionMask, quads: &[[usize; 3]]) -> bool {
    quads.iter().all(|q| q.iter().filter(|&&p| !(zu.contains(p) && zw.contains(p))).count() <= 1)
}

fn expired(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

struct Step<'a> {
    quads: Option<&'a [[usize; 3]]>,
    /// Necessary size of the common zero set of two adjacent rays.
    min_common: usize,
    parallel: bool,
    deadline: Option<Instant>,
}

fn check_row(dim: usize, h: &[(usize, i64)]) -> Result<()> {
    match h.iter().find(|&&(p, _)| p >= dim) {
        Some(&(p, _)) => Err(Error::DimensionMismatch { expected: dim, found: p + 1 }),
        None => Ok(()),
    }
}

fn run_step(rays: &RayList, h: &[(usize, i64)], cfg: &Step<'_>) -> Result<RayList> {
    let dots: Vec<BigInt> = rays.rays.iter().map(|r| r.dot_sparse(h)).collect();
    let pos: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_positive()).collect();
    let neg: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_negative()).collect();
    if pos.is_empty() && neg.is_empty() {
        return Ok(rays.clone());
    }

    let combine_from = |i: usize| -> Result<Vec<IntVec>> {
        if expired(cfg.deadline) {
            return Err(Error::Timeout);
        }
        let mut out = Vec::new();
        for &j in &neg {
            let (zu, zw) = (&rays.zeros[i], &rays.zeros[j]);
            if let Some(q) = cfg.quads {
                if !compatible(zu, zw, q) {
                    continue;
                }
            }
            let common = zu.intersection(zw);
            if common.count() < cfg.min_common {
                continue;
            }
            let blocked = rays
                .zeros
                .iter()
                .enumerate()
                .any(|(k, zk)| k != i && k != j && common.is_subset_of(zk));
            if blocked {
                continue;
            }
            let v = IntVec::combine_primitive(&dots[i], &rays.rays[j], &dots[j], &rays.rays[i]);
            if cfg.quads.is_some_and(|q| violates(&v, q)) {
                continue;
            }
            out.push(v);
        }
        Ok(out)
    };

    let created: Vec<Vec<IntVec>> = if cfg.parallel {
        pos.par_iter().map(|&i| combine_from(i)).collect::<Result<_>>()?
    } else {
        pos.iter().map(|&i| combine_from(i)).collect::<Result<_>>()?
    };

    let kept = (0..rays.len()).filter(|&i| dots[i].is_zero()).map(|i| rays.rays[i].clone());
    Ok(RayList::from_rays(rays.dim, kept.chain(created.into_iter().flatten())))
}

/// Intersects the cone generated by `rays` with the hyperplane `h · x = 0`.
///
/// `rays` must be the extreme rays of a pointed cone in the non-negative
/// orthant (or, when `quads` is given, those of its extreme rays that meet
/// the quadrilateral constraints on the given position triples).
pub fn dd_step(rays: &RayList, h: &[(usize, i64)], quads: Option<&[[usize; 3]]>) -> Result<RayList> {
    check_row(rays.dim, h)?;
    run_step(rays, h, &Step { quads, min_common: 0, parallel: false, deadline: None })
}

/// Incremental rank of the equations processed so far.
struct RankTracker {
    basis: Vec<(usize, Vec<BigInt>)>,
    dim: usize,
}

impl RankTracker {
    fn new(dim: usize) -> Self {
        RankTracker { basis: Vec::new(), dim }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    fn add(&mut self, row: &[(usize, i64)]) {
        let mut v = vec![BigInt::zero(); self.dim];
        for &(p, c) in row {
            v[p] += c;
        }
        for (pivot, b) in &self.basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let (a, e) = (b[*pivot].clone(), v[*pivot].clone());
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x * &a - y * &e;
            }
            let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() {
                for x in v.iter_mut() {
                    *x /= &g;
                }
            }
        }
        if let Some(pivot) = v.iter().position(|x| !x.is_zero()) {
            self.basis.push((pivot, v));
        }
    }
}

/// The solution set of `m` by direct enumeration.
pub fn enumerate_solution_set(m: &MatchingSystem) -> SolutionSet {
    enumerate_solution_set_with(m, &EnumerateOptions::default()).expect("no deadline was set")
}

pub fn enumerate_solution_set_with(m: &MatchingSystem, opts: &EnumerateOptions) -> Result<SolutionSet> {
    let dim = m.dim();
    let quads = m.quad_positions();
    let mut rays = RayList::units(dim);
    let mut rank = RankTracker::new(dim);
    for h in m.rows() {
        if expired(opts.deadline) {
            return Err(Error::Timeout);
        }
        check_row(dim, h)?;
        // two rays of a cone of dimension D are adjacent only if their
        // common zeros include D - 2 independent constraints
        let min_common = (dim - rank.rank()).saturating_sub(2);
        let cfg = Step {
            quads: opts.prune.then_some(quads.as_slice()),
            min_common,
            parallel: opts.parallel,
            deadline: opts.deadline,
        };
        rays = run_step(&rays, h, &cfg)?;
        rank.add(h);
    }
    let rays = rays.into_rays().into_iter().filter(|r| !violates(r, &quads));
    Ok(SolutionSet::new(m.coords(), m.tets(), rays))
}
