use std::collections::BTreeMap;
use std::sync::OnceLock;

use parzono_core::e6::*;
use parzono_core::matroid::{self, Label, UnimodularSystem};
use parzono_core::symmetry::{indices_of, mask_of};
use parzono_core::voronoi::{build_voronoi, VoronoiPolytope};
use parzono_core::zonosum::*;

struct Fixture {
    md: E6Model,
    v: VoronoiPolytope,
    fs: FreeStructure,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let (md, e6, _) = build_e6();
        let v = build_voronoi(&e6);
        let fs = free_structure(&v, None).unwrap();
        Fixture { md, v, fs }
    })
}

fn gens_of(fs: &FreeStructure, mask: u128) -> Vec<Vec<i64>> {
    indices_of(mask).into_iter().map(|i| fs.lines[i].clone()).collect()
}

#[test]
fn e6_free_structure_row() {
    let f = fixture();
    let r = &f.fs.row;
    assert_eq!(
        (r.free_lines, r.min_forbidden_orbits, r.max_feasible_orbits, r.dim_max, r.size_max),
        TABLE3_E6
    );
    assert_eq!(f.fs.group.order(), 51840);
}

#[test]
fn minimal_forbidden_sets_are_five_cliques() {
    let f = fixture();
    let to_m = line_to_m(&f.md, &f.fs.lines);
    let mut stabs = Vec::new();
    for &m in &f.fs.enumeration.minimal_forbidden {
        let idx: Vec<usize> = indices_of(m).into_iter().map(|i| to_m[i]).collect();
        assert_eq!(idx.len(), 5);
        assert!(pup_forbidden(&f.md, &idx));
        stabs.push(f.fs.group.stabilizer_order(m));
    }
    stabs.sort();
    // orbits of 432 and 216 cliques
    assert_eq!(stabs, vec![120, 240]);
}

#[test]
fn maximal_feasible_orbits_match_reference_parameters() {
    let f = fixture();
    let mut got: Vec<(usize, usize, u128)> = f
        .fs
        .enumeration
        .maximal_feasible
        .iter()
        .map(|&m| (m.count_ones() as usize, subset_rank(&f.fs.lines, m), f.fs.group.stabilizer_order(m)))
        .collect();
    got.sort();
    let mut want: Vec<(usize, usize, u128)> = TABLE2.iter().map(|r| (r.1, r.2, r.3)).collect();
    want.sort();
    assert_eq!(got, want);
    for &(_, _, st) in &got {
        assert_eq!(51840 % st, 0);
    }
}

#[test]
fn extremal_sets_confirmed_by_direct_checks() {
    let f = fixture();
    let ctx = SumContext::new(&f.v);
    let k = f.fs.lines.len();
    for &m in &f.fs.enumeration.maximal_feasible {
        assert!(ctx.venkov_check(&gens_of(&f.fs, m)).is_parallelotope);
        for x in (0..k).filter(|&x| m >> x & 1 == 0) {
            assert!(!ctx.venkov_check(&gens_of(&f.fs, m | 1 << x)).is_parallelotope);
        }
    }
    for &m in &f.fs.enumeration.minimal_forbidden {
        assert!(!ctx.venkov_check(&gens_of(&f.fs, m)).is_parallelotope);
        for x in indices_of(m) {
            assert!(ctx.venkov_check(&gens_of(&f.fs, m & !(1 << x))).is_parallelotope);
        }
    }
}

#[test]
fn feasible_orbits_are_closed_under_subsets() {
    let f = fixture();
    let e = &f.fs.enumeration;
    let all: std::collections::HashSet<u128> = e.feasible.iter().flatten().copied().collect();
    for &t in &all {
        for x in indices_of(t) {
            assert!(all.contains(&f.fs.group.canonical_image(t & !(1 << x)).0));
        }
    }
    let sizes: Vec<usize> = e.feasible.iter().map(|l| l.len()).collect();
    assert_eq!(sizes.iter().skip(1).filter(|&&n| n > 0).count(), 15);
}

#[test]
fn table_of_maximal_systems() {
    let f = fixture();
    let rows = reproduce_table2(&f.md, &f.fs);
    let nrs: Vec<Option<usize>> = rows.iter().map(|r| r.0).collect();
    assert_eq!(nrs, (1..=10).map(Some).collect::<Vec<_>>());
    let mut statuses = BTreeMap::new();
    for (nr, row) in &rows {
        let nr = nr.unwrap();
        let reference = TABLE2[nr - 1];
        assert_eq!((row.size, row.dim, row.stab), (reference.1, reference.2, reference.3), "row {nr}");
        assert!(row.unimodular, "row {nr}");
        assert!(row.status_matches(reference.4), "row {nr}: {:?}", row.label);
        statuses.insert(nr, row.label);
    }
    assert!(rows[2].1.is_r12 && !rows[2].1.is_r10_sum_c3);
    assert!(rows[3].1.is_r10_sum_c3 && !rows[3].1.is_r12);
    assert_eq!(statuses[&3], Label::Neither);
    assert_eq!(statuses[&4], Label::Neither);
    for nr in [1, 8, 9] {
        assert!(matches!(statuses[&nr], Label::Graphic | Label::GraphicAndCographic));
    }
    for nr in [6, 7, 10] {
        assert_eq!(statuses[&nr], Label::Cographic);
    }
    // rows 2 and 5 are cographic matroids of planar graphs
    assert_eq!(statuses[&2], Label::GraphicAndCographic);
    assert_eq!(statuses[&5], Label::GraphicAndCographic);
}

#[test]
fn found_graphs_represent_the_systems() {
    let f = fixture();
    let to_m = line_to_m(&f.md, &f.fs.lines);
    for &m in &f.fs.enumeration.maximal_feasible {
        let idx: Vec<usize> = indices_of(m).into_iter().map(|i| to_m[i]).collect();
        let sys = UnimodularSystem::new(f.md.scaled_system(&idx));
        if let Some(g) = matroid::try_graphic(&sys, 10).graph() {
            assert_eq!(g.edges.len(), sys.len());
            let gs = UnimodularSystem::new(g.incidence_vectors());
            assert_eq!(gs.circuit_masks(), sys.circuit_masks());
        }
        if let Some(g) = matroid::try_cographic(&sys, 10).graph() {
            let gs = UnimodularSystem::new(g.incidence_vectors());
            let dual = matroid::dual_system(&sys);
            assert_eq!(gs.circuit_masks(), dual.circuit_masks());
            assert!(matroid::matroid_isomorphic(&matroid::dual_system(&gs), &sys));
        }
    }
}

#[test]
fn pup_example_from_case_three() {
    let f = fixture();
    let u = indices_of_labels(&f.md, &["b1", "b2", "c45", "c46", "c56"]);
    assert!(pup_forbidden(&f.md, &u));
    let ctx = SumContext::new(&f.v);
    let gens: Vec<Vec<i64>> = u.iter().map(|&i| f.md.line(i)).collect();
    assert!(!ctx.venkov_check(&gens).is_parallelotope);
    let one = mask_of(&[0]);
    assert!(ctx.venkov_check(&gens_of(&f.fs, one)).is_parallelotope);
}
