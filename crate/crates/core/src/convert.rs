//! Conversion between standard and quadrilateral solution sets.
//!
//! [`quad_to_std`] rebuilds the standard solution set from the much smaller
//! quadrilateral one: starting from the canonical extensions of the
//! quadrilateral vertices it reintroduces the triangle coordinates one
//! vertex link at a time, with a double description style elimination over
//! the triangle positions around that vertex.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::coords::{
    canonical_extension, partial_canonical_part, project_raw, quad_matching_system, standard_matching_system,
    triangle_position, vertex_link, Coords, MatchingSystem, NormalVector, SolutionSet,
};
use crate::enumerate::{enumerate_solution_set_with, EnumerateOptions};
use crate::error::{Error, Result};
use crate::int::{IntVec, PositionMask};
use crate::triangulation::{Skeleton, Triangulation};

/// Environment variable that turns on the working-list checks by default.
pub const DEBUG_INVARIANTS_ENV: &str = "NS_DEBUG_INVARIANTS";

#[derive(Clone, Debug)]
pub struct ConvertOptions {
    /// Check every working vector against the standard matching equations
    /// and the quadrilateral constraints after each elimination, and check
    /// that it is non-positive somewhere around the current vertex.
    pub check_invariants: bool,
    pub parallel: bool,
    pub deadline: Option<Instant>,
    /// Processing order of vertex classes and of the triangle positions
    /// around each; ascending when unset.
    pub order: Option<ConversionOrder>,
}

impl Default for ConvertOptions {
    fn default() -> Self {
        ConvertOptions {
            check_invariants: std::env::var(DEBUG_INVARIANTS_ENV).is_ok_and(|v| v == "1"),
            parallel: true,
            deadline: None,
            order: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConversionOrder {
    /// A permutation of the vertex classes.
    pub vertices: Vec<usize>,
    /// For each vertex class, a permutation of its triangle positions.
    pub positions: Vec<Vec<usize>>,
}

impl ConversionOrder {
    /// Classes in ascending order, positions ascending within each class.
    pub fn ascending(skel: &Skeleton) -> Self {
        let positions = (0..skel.vertex_count())
            .map(|r| {
                let mut tr: Vec<usize> =
                    skel.vertex_embeddings(r).iter().map(|&(t, a)| triangle_position(t, a)).collect();
                tr.sort_unstable();
                tr
            })
            .collect();
        ConversionOrder { vertices: (0..skel.vertex_count()).collect(), positions }
    }

    fn validate(&self, skel: &Skeleton) -> Result<()> {
        let base = ConversionOrder::ascending(skel);
        let mut v = self.vertices.clone();
        v.sort_unstable();
        if v != base.vertices {
            return Err(Error::InvalidOrder("vertices are not a permutation of the vertex classes".into()));
        }
        if self.positions.len() != base.positions.len() {
            return Err(Error::InvalidOrder("one position list is needed per vertex class".into()));
        }
        for (r, (mine, want)) in self.positions.iter().zip(&base.positions).enumerate() {
            let mut p = mine.clone();
            p.sort_unstable();
            if &p != want {
                return Err(Error::InvalidOrder(format!("positions for vertex class {r} are not its triangles")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceStage {
    /// The canonical extensions of the quadrilateral vertices.
    Extend,
    /// Partial canonical parts plus the negative vertex link.
    Seed,
    /// After eliminating one triangle position.
    Position,
    /// After inserting the positive vertex link.
    Link,
}

impl TraceStage {
    pub fn name(self) -> &'static str {
        match self {
            TraceStage::Extend => "extend",
            TraceStage::Seed => "seed",
            TraceStage::Position => "position",
            TraceStage::Link => "link",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub stage: TraceStage,
    pub vertex: Option<usize>,
    pub position: Option<usize>,
    pub list_size: usize,
    /// Largest working list seen so far.
    pub peak: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConversionTrace {
    pub rows: Vec<TraceRow>,
    /// Sizes of `L_0, ..., L_m`.
    pub per_vertex_sizes: Vec<usize>,
    pub max_intermediate: usize,
    pub final_size: usize,
}

pub const TRACE_CSV_HEADER: &str = "# normsurf conversion trace v1\nstage,vertex,position,listSize,peak,micros\n";

impl ConversionTrace {
    /// Peak working list size over final size; zero for an empty result.
    pub fn max_list_ratio(&self) -> f64 {
        if self.final_size == 0 {
            0.0
        } else {
            self.max_intermediate as f64 / self.final_size as f64
        }
    }

    fn record(&mut self, stage: TraceStage, vertex: Option<usize>, position: Option<usize>, size: usize, since: Instant) {
        self.max_intermediate = self.max_intermediate.max(size);
        self.rows.push(TraceRow {
            stage,
            vertex,
            position,
            list_size: size,
            peak: self.max_intermediate,
            elapsed: since.elapsed(),
        });
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(TRACE_CSV_HEADER);
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.stage.name(),
                opt(r.vertex),
                opt(r.position),
                r.list_size,
                r.peak,
                r.elapsed.as_micros()
            );
        }
        out
    }
}

/// Whether `u` and `w` together meet the quadrilateral constraints: in every
/// tetrahedron at least two quadrilateral coordinates vanish in both.
pub fn compatible_pair(u: &NormalVector, w: &NormalVector) -> bool {
    assert_eq!(u.len(), w.len(), "vectors of different dimension");
    let quads = u.coords().quad_positions(u.tets());
    compatible_masks(&PositionMask::zero_set(u.entries()), &PositionMask::zero_set(w.entries()), &quads)
}

fn compatible_masks(zu: &PositionMask, zw: &PositionMask, quads: &[[usize; 3]]) -> bool {
    quads.iter().all(|q| q.iter().filter(|&&p| zu.contains(p) && zw.contains(p)).count() >= 2)
}

/// True when no `z` in `list` other than `u` and `w` vanishes on every
/// position of `c` where both `u` and `w` vanish.
pub fn adjacency_witness_test(u: &IntVec, w: &IntVec, list: &[IntVec], c: &PositionMask) -> bool {
    let mut common = PositionMask::zero_set(u).intersection(&PositionMask::zero_set(w));
    common.intersect_with(c);
    !list.iter().any(|z| z != u && z != w && common.is_subset_of(&PositionMask::zero_set(z)))
}

/// Projects a standard solution set to quadrilateral coordinates, keeping
/// only projections that dominate no other projection.
pub fn std_to_quad(std_set: &SolutionSet) -> SolutionSet {
    let n = std_set.tets();
    let mut projected: Vec<IntVec> = std_set
        .vectors()
        .map(|w| project_raw(&w).into_entries())
        .filter(|q| !q.is_zero())
        .map(|q| q.primitive())
        .collect();
    projected.sort();
    projected.dedup();
    let masks: Vec<PositionMask> = projected.iter().map(PositionMask::zero_set).collect();
    let kept = (0..projected.len())
        .filter(|&i| !(0..masks.len()).any(|j| j != i && masks[i].is_subset_of(&masks[j])))
        .map(|i| projected[i].clone());
    SolutionSet::new(Coords::Quad, n, kept)
}

struct Working {
    vectors: Vec<IntVec>,
    zeros: Vec<PositionMask>,
}

impl Working {
    fn new(mut vectors: Vec<IntVec>) -> Self {
        vectors.retain(|v| !v.is_zero());
        for v in vectors.iter_mut() {
            v.make_primitive();
        }
        vectors.sort();
        vectors.dedup();
        let zeros = vectors.iter().map(PositionMask::zero_set).collect();
        Working { vectors, zeros }
    }

    fn len(&self) -> usize {
        self.vectors.len()
    }
}

fn check_working(list: &Working, m: &MatchingSystem, tr: &[usize], stage: &str) -> Result<()> {
    let quads = m.quad_positions();
    for v in &list.vectors {
        if let Some(row) = m.rows().iter().position(|r| !v.dot_sparse(r).is_zero()) {
            return Err(Error::InvariantViolated(format!("{stage}: {v} breaks matching equation {row}")));
        }
        if quads.iter().any(|q| q.iter().filter(|&&p| !v.is_zero_at(p)).count() > 1) {
            return Err(Error::InvariantViolated(format!("{stage}: {v} breaks the quadrilateral constraints")));
        }
        if !tr.iter().any(|&p| !v.get(p).is_positive()) {
            return Err(Error::InvariantViolated(format!(
                "{stage}: {v} is positive at every triangle around the current vertex"
            )));
        }
    }
    Ok(())
}

/// One elimination step over position `p`, keeping vectors with `x_p >= 0`
/// and adding the admissible combinations of adjacent pairs.
fn eliminate(list: &Working, p: usize, c: &PositionMask, quads: &[[usize; 3]], opts: &ConvertOptions) -> Result<Working> {
    let signs: Vec<std::cmp::Ordering> = list.vectors.iter().map(|v| v.signum(p)).collect();
    let pos: Vec<usize> = (0..list.len()).filter(|&i| signs[i].is_gt()).collect();
    let neg: Vec<usize> = (0..list.len()).filter(|&i| signs[i].is_lt()).collect();

    let combine_from = |i: usize| -> Result<Vec<IntVec>> {
        if opts.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Timeout);
        }
        let up: BigInt = list.vectors[i].get(p);
        let mut out = Vec::new();
        for &j in &neg {
            let (zu, zw) = (&list.zeros[i], &list.zeros[j]);
            if !compatible_masks(zu, zw, quads) {
                continue;
            }
            // p itself is never a common zero here, so restricting to C
            // is the same as restricting to C and p
            let mut common = zu.intersection(zw);
            common.intersect_with(c);
            let blocked = list
                .zeros
                .iter()
                .enumerate()
                .any(|(k, zk)| k != i && k != j && common.is_subset_of(zk));
            if blocked {
                continue;
            }
            let wp: BigInt = list.vectors[j].get(p);
            out.push(IntVec::combine_primitive(&up, &list.vectors[j], &wp, &list.vectors[i]));
        }
        Ok(out)
    };

    let created: Vec<Vec<IntVec>> = if opts.parallel {
        pos.par_iter().map(|&i| combine_from(i)).collect::<Result<_>>()?
    } else {
        pos.iter().map(|&i| combine_from(i)).collect::<Result<_>>()?
    };

    let kept = (0..list.len()).filter(|&i| !signs[i].is_lt()).map(|i| list.vectors[i].clone());
    Ok(Working::new(kept.chain(created.into_iter().flatten()).collect()))
}

/// Builds the standard solution set from the quadrilateral solution set.
pub fn quad_to_std(
    quad_set: &SolutionSet,
    std_system: &MatchingSystem,
    skel: &Skeleton,
    opts: &ConvertOptions,
) -> Result<(SolutionSet, ConversionTrace)> {
    let n = skel.tets();
    let start = Instant::now();
    if quad_set.coords() != Coords::Quad || quad_set.tets() != n {
        return Err(Error::DimensionMismatch { expected: Coords::Quad.dim(n), found: quad_set.dim() });
    }
    if std_system.coords() != Coords::Standard || std_system.tets() != n {
        return Err(Error::DimensionMismatch { expected: Coords::Standard.dim(n), found: std_system.dim() });
    }
    let quads = std_system.quad_positions();
    let mut trace = ConversionTrace::default();

    let extensions = quad_set
        .vectors()
        .map(|q| canonical_extension(&q, std_system, skel).map(NormalVector::into_entries))
        .collect::<Result<Vec<_>>>()?;
    let mut list = Working::new(extensions);
    trace.per_vertex_sizes.push(list.len());
    trace.record(TraceStage::Extend, None, None, list.len(), start);

    let mut c = PositionMask::empty(std_system.dim());
    for &p in quads.iter().flatten() {
        c.insert(p);
    }

    let order = match &opts.order {
        Some(o) => {
            o.validate(skel)?;
            o.clone()
        }
        None => ConversionOrder::ascending(skel),
    };
    for &r in &order.vertices {
        let tr = &order.positions[r];
        let link = vertex_link(skel, r)?.into_entries();

        let mut seeded = list
            .vectors
            .iter()
            .map(|x| {
                partial_canonical_part(&NormalVector::new(Coords::Standard, x.clone()), r, skel)
                    .map(NormalVector::into_entries)
            })
            .collect::<Result<Vec<_>>>()?;
        seeded.push(link.scaled(&BigInt::from(-1)));
        list = Working::new(seeded);
        trace.record(TraceStage::Seed, Some(r), None, list.len(), start);
        if opts.check_invariants {
            check_working(&list, std_system, tr, &format!("vertex {r} seed"))?;
        }

        for &p in tr {
            list = eliminate(&list, p, &c, &quads, opts)?;
            c.insert(p);
            trace.record(TraceStage::Position, Some(r), Some(p), list.len(), start);
            if opts.check_invariants {
                check_working(&list, std_system, tr, &format!("vertex {r} position {p}"))?;
            }
        }

        let mut vectors = list.vectors;
        vectors.push(link);
        list = Working::new(vectors);
        trace.per_vertex_sizes.push(list.len());
        trace.record(TraceStage::Link, Some(r), None, list.len(), start);
    }

    trace.final_size = list.len();
    Ok((SolutionSet::new(Coords::Standard, n, list.vectors), trace))
}

/// The standard solution set computed through quadrilateral coordinates:
/// direct enumeration of the quadrilateral solution set followed by
/// [`quad_to_std`].
pub fn enumerate_std_via_quad(
    tri: &Triangulation,
    skel: &Skeleton,
    opts: &ConvertOptions,
) -> Result<(SolutionSet, ConversionTrace)> {
    let quad = enumerate_solution_set_with(
        &quad_matching_system(tri, skel),
        &EnumerateOptions { deadline: opts.deadline, parallel: opts.parallel, ..Default::default() },
    )?;
    quad_to_std(&quad, &standard_matching_system(tri, skel), skel, opts)
}
