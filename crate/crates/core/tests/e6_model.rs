use std::collections::BTreeMap;

use parzono_core::e6::*;
use parzono_core::exact_core::QVector;
use parzono_core::voronoi::build_voronoi;
use parzono_core::zonosum::SumContext;

fn diff(md: &E6Model, x: &str, y: &str) -> QVector {
    md.get(x).iter().zip(md.get(y)).map(|(a, b)| a - b).collect()
}

#[test]
fn belt_triples_match_voronoi_belts() {
    let (md, e6, _) = build_e6();
    let v = build_voronoi(&e6);
    let c = check_belt_triples(&md, &v);
    assert_eq!(c.counts, [20, 10, 90]);
    assert!(c.matches_voronoi);
    assert_eq!(c.orbit_size, 120);
}

#[test]
fn five_cliques_are_facets_of_cross_polytopes() {
    let (md, _, _) = build_e6();
    let c = five_clique_census(&md);
    assert_eq!(c.cliques.len(), 648);
    assert!(c.all_of_form_tj);
    assert_eq!(c.by_cover, BTreeMap::from([(1, 432), (2, 216)]));
    assert_eq!(c.orbit_sizes, vec![216, 432]);
    let adj = md.skew_graph();
    for &x in &c.cliques {
        let idx: Vec<usize> = (0..27).filter(|i| x >> i & 1 == 1).collect();
        assert!(pup_forbidden_with(&adj, &idx));
        for k in 0..5 {
            let mut sub = idx.clone();
            sub.remove(k);
            assert!(!pup_forbidden_with(&adj, &sub));
        }
    }
}

#[test]
fn planar_sections_fall_into_five_types() {
    let (md, _, _) = build_e6();
    let census = plane_census(&md);
    let want = BTreeMap::from([
        (Some(PlaneType::A), 270),
        (Some(PlaneType::B), 120),
        (Some(PlaneType::C), 45),
        (Some(PlaneType::D), 720),
        (Some(PlaneType::E), 1080),
    ]);
    assert_eq!(census, want);
}

#[test]
fn standard_vectors_are_r_and_t() {
    let (md, e6, _) = build_e6();
    let (r, t) = r_and_t(&md);
    assert_eq!(r.len(), 72);
    assert_eq!(t.len(), 270);
    let mut both: Vec<QVector> = r.into_iter().chain(t.into_iter().map(|x| x.0)).collect();
    both.sort();
    assert_eq!(standard_vectors_a(&md, &e6), both);
}

#[test]
fn edges_are_r_or_m_edges() {
    let (md, e6, _) = build_e6();
    let v = build_voronoi(&e6);
    assert_eq!(edge_dichotomy(&md, &v), (432, 270, 0));
}

#[test]
fn free_lines_are_lines_of_m() {
    let (md, e6, _) = build_e6();
    let v = build_voronoi(&e6);
    let fr = parzono_core::freedom::free_lines(&v);
    let mut ours: Vec<Vec<i64>> = (0..27).map(|i| md.line(i)).collect();
    ours.sort();
    assert_eq!(fr.lines, ours);
}

#[test]
fn transversal_set_of_an_m_edge() {
    let (md, e6, _) = build_e6();
    let v = build_voronoi(&e6);
    let minus_b1: QVector = md.get("b1").iter().map(|x| -x).collect();
    let got = transversal_set(&md, &v, md.get("a2"), &minus_b1);
    let want = indices_of_labels(&md, &["a1", "b2", "c34", "c35", "c36", "c45", "c46", "c56"]);
    let mut want = want;
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn belt_with_b_vectors_needs_the_four_set() {
    let (md, e6, _) = build_e6();
    let v = build_voronoi(&e6);
    let ctx = SumContext::new(&v);
    let s = [diff(&md, "b2", "a1"), diff(&md, "b3", "a1"), diff(&md, "b3", "b2")];
    let u = indices_of_labels(&md, &["b1", "c45", "c46", "c56"]);
    assert!(has_corresponding_belt(&md, &ctx, &u, &s));
    let mut u5 = u.clone();
    u5.push(md.index("a4").unwrap());
    assert!(has_corresponding_belt(&md, &ctx, &u5, &s));
    for k in 0..4 {
        let mut sub = u.clone();
        sub.remove(k);
        assert!(!has_corresponding_belt(&md, &ctx, &sub, &s));
    }
}

#[test]
fn belt_with_a_and_b_vectors_needs_one_of_each_pair() {
    let (md, e6, _) = build_e6();
    let v = build_voronoi(&e6);
    let ctx = SumContext::new(&v);
    let s = [diff(&md, "a2", "a1"), diff(&md, "b1", "a1"), diff(&md, "b2", "a1")];
    let pairs = [["c34", "c56"], ["c35", "c46"], ["c36", "c45"], ["a2", "b1"]];
    for choice in 0..16u32 {
        let labels: Vec<&str> = (0..4).map(|k| pairs[k][(choice >> k & 1) as usize]).collect();
        let u = indices_of_labels(&md, &labels);
        assert!(has_corresponding_belt(&md, &ctx, &u, &s), "{labels:?}");
        assert!(!has_corresponding_belt(&md, &ctx, &u[..3], &s), "{labels:?}");
    }
    // both members of one pair and none of another
    let u = indices_of_labels(&md, &["c34", "c56", "c35", "a2"]);
    assert!(!has_corresponding_belt(&md, &ctx, &u, &s));
}
