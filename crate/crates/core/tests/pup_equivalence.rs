use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_rational::BigRational;
use parzono_core::e6::*;
use parzono_core::exact_core::{rat, QVector};
use parzono_core::symmetry::{indices_of, PermutationGroup};
use parzono_core::voronoi::{build_voronoi, VoronoiPolytope};
use parzono_core::zonosum::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Fixture {
    md: E6Model,
    v: VoronoiPolytope,
    group: PermutationGroup,
    adj: Vec<u32>,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let (md, e6, _) = build_e6();
        let v = build_voronoi(&e6);
        let group = m_line_group(&md);
        let adj = md.skew_graph();
        Fixture { md, v, group, adj }
    })
}

fn context() -> &'static SumContext<'static> {
    static C: OnceLock<SumContext<'static>> = OnceLock::new();
    C.get_or_init(|| SumContext::new(&fixture().v))
}

fn verdict(f: &Fixture, ctx: &SumContext, idx: &[usize]) -> bool {
    let gens: Vec<Vec<i64>> = idx.iter().map(|&i| f.md.line(i)).collect();
    ctx.venkov_check(&gens).is_parallelotope
}

/// Orbit representatives of all subsets of `M` with at most `k` elements.
fn small_orbits(g: &PermutationGroup, k: usize) -> Vec<Vec<u128>> {
    let mut levels = vec![vec![0u128]];
    for _ in 0..k {
        let next: BTreeSet<u128> = levels
            .last()
            .unwrap()
            .iter()
            .flat_map(|&t| (0..27).filter(move |&x| t >> x & 1 == 0).map(move |x| t | 1 << x))
            .map(|c| g.canonical_image(c).0)
            .collect();
        levels.push(next.into_iter().collect());
    }
    levels
}

#[test]
fn pup_matches_venkov_on_small_orbits() {
    let f = fixture();
    let ctx = context();
    let levels = small_orbits(&f.group, 6);
    let mut total = 0;
    for (size, level) in levels.iter().enumerate() {
        for &t in level {
            let idx = indices_of(t);
            assert_eq!(verdict(f, ctx, &idx), !pup_forbidden_with(&f.adj, &idx), "size {size}: {idx:?}");
            // orbit-stabilizer
            assert_eq!(f.group.order() % f.group.stabilizer_order(t), 0);
            total += 1;
        }
    }
    let counts: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 4, 8, 18, 39]);
    assert_eq!(total, 73);
}

#[test]
fn cliques_minus_one_are_feasible() {
    let f = fixture();
    let ctx = context();
    let census = five_clique_census(&f.md);
    for &c in &census.cliques {
        let idx: Vec<usize> = (0..27).filter(|i| c >> i & 1 == 1).collect();
        assert!(!verdict(f, ctx, &idx));
        for k in 0..5 {
            let mut sub = idx.clone();
            sub.remove(k);
            assert!(!pup_forbidden_with(&f.adj, &sub));
            assert!(verdict(f, ctx, &sub), "{sub:?}");
        }
    }
}

#[test]
fn verdict_does_not_depend_on_generator_lengths() {
    let f = fixture();
    let ctx = context();
    let levels = small_orbits(&f.group, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut feasible: Vec<u128> = Vec::new();
    let mut forbidden: Vec<u128> = Vec::new();
    for &t in levels[1..].iter().flatten() {
        if pup_forbidden_with(&f.adj, &indices_of(t)) {
            forbidden.push(t);
        } else {
            feasible.push(t);
        }
    }
    let mut picks = Vec::new();
    for pool in [&feasible, &forbidden] {
        for _ in 0..10 {
            picks.push(pool[rng.gen_range(0..pool.len())]);
        }
    }
    for t in picks {
        let idx = indices_of(t);
        let qs: Vec<QVector> = idx
            .iter()
            .map(|&i| {
                let s = rat(rng.gen_range(1..=9), rng.gen_range(3..=9));
                f.md.line(i).iter().map(|&x| BigRational::from_integer(x.into()) * &s).collect()
            })
            .collect();
        let hull = venkov_from_hull(&sum_hull(&f.v, &qs));
        assert_eq!(hull.is_parallelotope, verdict(f, ctx, &idx), "{idx:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pup_matches_venkov_on_random_subsets(set in prop::collection::btree_set(0usize..27, 0..=14)) {
        let f = fixture();
        let ctx = context();
        let idx: Vec<usize> = set.into_iter().collect();
        prop_assert_eq!(verdict(f, ctx, &idx), !pup_forbidden_with(&f.adj, &idx));
    }
}
