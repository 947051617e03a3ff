mod common;

use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use normsurf::convert::{enumerate_std_via_quad, quad_to_std, std_to_quad, ConversionOrder, ConvertOptions};
use normsurf::coords::*;
use normsurf::enumerate::enumerate_solution_set;
use normsurf::families::{doubled_tetrahedron, grow};
use normsurf::oracle::brute_force_rays;
use normsurf::{build_skeleton, IntVec, Skeleton, Triangulation};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::Relabelling;

struct Case {
    name: String,
    tri: Triangulation,
    skel: Skeleton,
    std_sys: MatchingSystem,
    quad_sys: MatchingSystem,
    std_set: SolutionSet,
    quad_set: SolutionSet,
}

impl std::fmt::Debug for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name)
    }
}

fn pool() -> &'static [Case] {
    static POOL: OnceLock<Vec<Case>> = OnceLock::new();
    POOL.get_or_init(|| {
        common::hand_built()
            .into_iter()
            .chain(common::corpus().into_iter().filter(|(_, t)| t.size() <= 8))
            .map(|(name, tri)| {
                let skel = build_skeleton(&tri).unwrap();
                let std_sys = standard_matching_system(&tri, &skel);
                let quad_sys = quad_matching_system(&tri, &skel);
                let std_set = enumerate_solution_set(&std_sys);
                let quad_set = enumerate_solution_set(&quad_sys);
                Case { name, tri, skel, std_sys, quad_sys, std_set, quad_set }
            })
            .collect()
    })
}

fn case() -> impl Strategy<Value = (&'static Case, u64)> {
    (0..pool().len(), any::<u64>()).prop_map(|(i, seed)| (&pool()[i], seed))
}

fn std_vec(x: IntVec) -> NormalVector {
    NormalVector::new(Coords::Standard, x)
}

/// A random non-negative combination of standard solution rays and vertex
/// links: always admissible if at most one non-link ray is used.
fn random_admissible(c: &Case, rng: &mut ChaCha8Rng) -> NormalVector {
    let mut x = IntVec::zeros(c.std_sys.dim());
    if let Some(r) = c.std_set.rays().choose(rng) {
        x = x.add_scaled(&BigInt::from(rng.gen_range(1..4)), r);
    }
    for v in 0..c.skel.vertex_count() {
        let l = vertex_link(&c.skel, v).unwrap();
        x = x.add_scaled(&BigInt::from(rng.gen_range(0..3)), l.entries());
    }
    std_vec(x)
}

/// Arbitrary integer vector, possibly negative.
fn random_vector(dim: usize, rng: &mut ChaCha8Rng) -> NormalVector {
    std_vec(IntVec::from_i64((0..dim).map(|_| rng.gen_range(-5..6)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn solution_sets_are_admissible_and_dominance_free((c, _) in case()) {
        for (set, sys) in [(&c.std_set, &c.std_sys), (&c.quad_set, &c.quad_sys)] {
            let masks: Vec<_> = set.rays().iter().map(normsurf::PositionMask::zero_set).collect();
            for (i, r) in set.rays().iter().enumerate() {
                prop_assert!(is_admissible(&NormalVector::new(set.coords(), r.clone()), sys).unwrap());
                prop_assert_eq!(r.content(), BigInt::from(1));
                for (j, m) in masks.iter().enumerate() {
                    prop_assert!(i == j || !masks[i].is_subset_of(m));
                }
            }
        }
    }

    #[test]
    fn every_vertex_link_is_a_standard_vertex((c, _) in case()) {
        for v in 0..c.skel.vertex_count() {
            prop_assert!(c.std_set.contains(vertex_link(&c.skel, v).unwrap().entries()));
        }
    }

    #[test]
    fn relabelling_permutes_solution_sets((c, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = Relabelling::random(c.tri.size(), &mut rng);
        let t2 = r.apply(&c.tri);
        let s2 = build_skeleton(&t2).unwrap();
        prop_assert_eq!(enumerate_solution_set(&quad_matching_system(&t2, &s2)), r.map_set(&c.quad_set));
        let (via, _) = enumerate_std_via_quad(&t2, &s2, &ConvertOptions::default()).unwrap();
        prop_assert_eq!(via, r.map_set(&c.std_set));
        if c.tri.size() <= 5 {
            prop_assert_eq!(enumerate_solution_set(&standard_matching_system(&t2, &s2)), r.map_set(&c.std_set));
        }
    }

    #[test]
    fn equation_order_and_sign_do_not_matter((c, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (sys, set) in [(&c.quad_sys, &c.quad_set), (&c.std_sys, &c.std_set)] {
            if sys.coords() == Coords::Standard && c.tri.size() > 5 {
                continue;
            }
            let mut order: Vec<usize> = (0..sys.len()).collect();
            order.shuffle(&mut rng);
            let mut shuffled = sys.reordered(&order);
            if !shuffled.is_empty() {
                shuffled = shuffled.with_negated_row(rng.gen_range(0..shuffled.len()));
            }
            prop_assert_eq!(&enumerate_solution_set(&shuffled), set);
        }
    }

    #[test]
    fn projection_is_linear((c, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_vector(c.std_sys.dim(), &mut rng);
        let y = random_vector(c.std_sys.dim(), &mut rng);
        let (a, b) = (BigInt::from(rng.gen_range(0..5)), BigInt::from(rng.gen_range(0..5)));
        let sum = std_vec(x.entries().scaled(&a).add_scaled(&b, y.entries()));
        let expected = project_raw(&x).entries().scaled(&a).add_scaled(&b, project_raw(&y).entries());
        prop_assert_eq!(project_raw(&sum).into_entries(), expected);
    }

    #[test]
    fn extension_inverts_projection((c, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for q in c.quad_set.vectors() {
            let e = canonical_extension(&q, &c.std_sys, &c.skel).unwrap();
            prop_assert_eq!(&project_raw(&e), &q);
            prop_assert!(is_admissible(&e, &c.std_sys).unwrap());
            prop_assert!(is_canonical(&e, &c.skel));
            prop_assert_eq!(&canonical_part(&e, &c.skel).unwrap(), &e);
            let seeds: Vec<usize> = (0..c.skel.vertex_count())
                .map(|v| rng.gen_range(0..c.skel.vertex_embeddings(v).len()))
                .collect();
            prop_assert_eq!(&canonical_extension_seeded(&q, &c.std_sys, &c.skel, &seeds).unwrap(), &e);
            // scaling commutes with the extension
            let q3 = NormalVector::new(Coords::Quad, q.entries().scaled(&BigInt::from(3)));
            let e3 = canonical_extension(&q3, &c.std_sys, &c.skel).unwrap();
            prop_assert_eq!(e3.entries(), &e.entries().scaled(&BigInt::from(3)));
            let shifted = std_vec(e.entries().add_scaled(&BigInt::from(3), vertex_link(&c.skel, 0).unwrap().entries()));
            prop_assert_eq!(&canonical_part(&shifted, &c.skel).unwrap(), &e);
        }
    }

    #[test]
    fn canonical_part_identities((c, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = c.skel.vertex_count();
        let w = random_admissible(c, &mut rng);
        let k = canonical_part(&w, &c.skel).unwrap();
        prop_assert!(is_admissible(&k, &c.std_sys).unwrap());
        prop_assert!(is_canonical(&k, &c.skel));
        prop_assert_eq!(&canonical_part(&k, &c.skel).unwrap(), &k);
        prop_assert_eq!(project_raw(&k), project_raw(&w));
        prop_assert_eq!(project(&k), project(&w));

        // composing the partial parts in any order gives the full one
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut rng);
        let mut acc = w.clone();
        for &r in &order {
            acc = partial_canonical_part(&acc, r, &c.skel).unwrap();
        }
        prop_assert_eq!(&acc, &k);

        let lambda = BigInt::from(rng.gen_range(0..6));
        let r = rng.gen_range(0..m);
        let scaled = std_vec(w.entries().scaled(&lambda));
        prop_assert_eq!(
            partial_canonical_part(&scaled, r, &c.skel).unwrap().into_entries(),
            partial_canonical_part(&w, r, &c.skel).unwrap().entries().scaled(&lambda)
        );
        if is_canonical(&w, &c.skel) {
            prop_assert_eq!(&k, &w);
        }
    }

    #[test]
    fn truncations_compose((c, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = c.skel.vertex_count();
        let w = random_vector(c.std_sys.dim(), &mut rng);
        let (i, j) = (rng.gen_range(0..=m), rng.gen_range(0..=m));
        let lhs = truncate(&truncate(&w, j, &c.skel).unwrap(), i, &c.skel).unwrap();
        prop_assert_eq!(lhs, truncate(&w, i.min(j), &c.skel).unwrap());
        prop_assert_eq!(&truncate(&w, m, &c.skel).unwrap(), &w);
        prop_assert!(project_raw(&truncate(&w, 0, &c.skel).unwrap()) == project_raw(&w));
        for v in 0..m {
            prop_assert!(truncate(&vertex_link(&c.skel, v).unwrap(), 0, &c.skel).unwrap().is_zero());
        }
    }

    #[test]
    fn conversion_is_order_independent_and_round_trips((c, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order = ConversionOrder::ascending(&c.skel);
        order.vertices.shuffle(&mut rng);
        for p in order.positions.iter_mut() {
            p.shuffle(&mut rng);
        }
        let opts = ConvertOptions { order: Some(order), check_invariants: true, ..Default::default() };
        let (std, _) = quad_to_std(&c.quad_set, &c.std_sys, &c.skel, &opts).unwrap();
        prop_assert_eq!(&std, &c.std_set);
        prop_assert_eq!(&std_to_quad(&std), &c.quad_set);
        for q in c.quad_set.vectors() {
            let e = canonical_extension(&q, &c.std_sys, &c.skel).unwrap();
            prop_assert!(std.contains(e.entries()));
        }
        for r in std.vectors() {
            let is_link = (0..c.skel.vertex_count()).any(|v| vertex_link(&c.skel, v).unwrap() == r);
            prop_assert!(is_link || is_canonical(&r, &c.skel));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn oracle_ignores_equation_order((i, seed) in (0..common::hand_built().len(), any::<u64>())) {
        let (_, tri) = &common::hand_built()[i];
        let skel = build_skeleton(tri).unwrap();
        let sys = quad_matching_system(tri, &skel);
        let mut order: Vec<usize> = (0..sys.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(brute_force_rays(&sys.reordered(&order)).unwrap(), brute_force_rays(&sys).unwrap());
    }
}

#[test]
fn extension_runs_in_linear_time() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut points = Vec::new();
    let mut tri = doubled_tetrahedron();
    for n in [100, 200, 400, 800, 1600] {
        tri = grow(&tri, n, 0.2, &mut rng);
        let skel = build_skeleton(&tri).unwrap();
        let sys = standard_matching_system(&tri, &skel);
        let q = NormalVector::zero(Coords::Quad, tri.size());
        let best = (0..5)
            .map(|_| {
                let t = Instant::now();
                canonical_extension(&q, &sys, &skel).unwrap();
                t.elapsed().as_secs_f64()
            })
            .fold(f64::INFINITY, f64::min);
        points.push(((tri.size() as f64).ln(), best.ln()));
    }
    let k = points.len() as f64;
    let (mx, my) = (points.iter().map(|p| p.0).sum::<f64>() / k, points.iter().map(|p| p.1).sum::<f64>() / k);
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!(slope <= 1.3, "extension time grows with slope {slope:.2} in n");
}
