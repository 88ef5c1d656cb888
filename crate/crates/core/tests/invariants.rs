use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use parzono_core::e6::{build_e6, m_line_group};
use parzono_core::exact_core::{int, rat, to_qvector, QMatrix, Rational};
use parzono_core::freedom::*;
use parzono_core::lattice_core::Lattice;
use parzono_core::symmetry::*;
use parzono_core::voronoi::{build_voronoi, VoronoiPolytope};
use parzono_core::zint;
use proptest::prelude::*;

fn m_group() -> &'static PermutationGroup {
    static G: OnceLock<PermutationGroup> = OnceLock::new();
    G.get_or_init(|| m_line_group(&build_e6().0))
}

fn all_elements(g: &PermutationGroup) -> Vec<Perm> {
    let sizes = g.level_sizes();
    let total: usize = sizes.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut choice = vec![0; sizes.len()];
    for _ in 0..total {
        out.push(g.element(&choice));
        for (c, &s) in choice.iter_mut().zip(&sizes) {
            *c += 1;
            if *c < s {
                break;
            }
            *c = 0;
        }
    }
    out
}

fn m_elements() -> &'static Vec<Perm> {
    static E: OnceLock<Vec<Perm>> = OnceLock::new();
    E.get_or_init(|| all_elements(m_group()))
}

fn gram_from(b: &[Vec<i64>]) -> QMatrix {
    let n = b.len();
    QMatrix::from_rows(
        (0..n).map(|i| (0..n).map(|j| int(b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum())).collect()).collect(),
    )
}

fn brute_short(lat: &Lattice, bound: &Rational) -> Vec<Vec<i64>> {
    let n = lat.dim();
    let gi = lat.gram_inverse();
    let b = bound.to_f64().unwrap();
    let box_: Vec<i64> = (0..n).map(|i| (b * gi[(i, i)].to_f64().unwrap()).sqrt().floor() as i64 + 1).collect();
    let mut out = Vec::new();
    let mut z: Vec<i64> = box_.iter().map(|k| -k).collect();
    loop {
        if z.iter().any(|&x| x != 0) && lat.norm(&z) <= *bound {
            out.push(z.clone());
        }
        let mut i = 0;
        while i < n {
            z[i] += 1;
            if z[i] <= box_[i] {
                break;
            }
            z[i] = -box_[i];
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out.sort();
    out
}

fn square_basis() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=4)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-2i64..=2, n), n))
        .prop_filter("nonsingular", |b| !gram_from(b).determinant().eq(&int(0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn short_vectors_match_brute_force(b in square_basis(), num in 1i64..=12, den in 1i64..=2) {
        let lat = Lattice::new(gram_from(&b), None).unwrap();
        let bound = rat(num, den);
        prop_assert_eq!(lat.short_vectors(&bound), brute_short(&lat, &bound));
    }

    #[test]
    fn canonical_image_is_an_orbit_invariant(set in any::<u32>(), k in 0usize..51840) {
        let g = m_group();
        let t = (set & ((1 << 27) - 1)) as u128;
        let el = &m_elements()[k];
        prop_assert_eq!(g.canonical_image(apply_mask(el, t)), g.canonical_image(t));
    }

    #[test]
    fn orbit_times_stabilizer_is_the_order(set in any::<u32>()) {
        let g = m_group();
        let t = (set & ((1 << 27) - 1)) as u128;
        let orbit: BTreeSet<u128> = m_elements().iter().map(|e| apply_mask(e, t)).collect();
        prop_assert_eq!(orbit.len() as u128 * g.stabilizer_order(t), g.order());
        prop_assert_eq!(*orbit.iter().min_by_key(|&&x| indices_of(x)).unwrap(), g.canonical_image(t).0);
    }

    #[test]
    fn group_is_closed(word in prop::collection::vec((0usize..64, any::<bool>()), 1..12)) {
        let g = m_group();
        let gens = g.generators();
        let mut x = identity(27);
        for (i, inv) in word {
            let h = &gens[i % gens.len()];
            x = compose(&x, &if inv { inverse(h) } else { h.clone() });
        }
        prop_assert!(g.contains(&x));
        prop_assert!(g.contains(&inverse(&x)));
    }

    #[test]
    fn hermite_and_echelon_are_canonical(
        rows in (2usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i128..=4, n), 1..=4)),
        ops in prop::collection::vec((0usize..4, 0usize..4, -3i128..=3), 0..10),
    ) {
        let mut moved = rows.clone();
        let m = moved.len();
        for (a, b, k) in ops {
            let (a, b) = (a % m, b % m);
            if a == b {
                moved.swap(0, a);
                for x in &mut moved[0] {
                    *x = -*x;
                }
            } else {
                let rb = moved[b].clone();
                for (x, y) in moved[a].iter_mut().zip(rb) {
                    *x += k * y;
                }
            }
        }
        prop_assert_eq!(zint::hermite(&rows), zint::hermite(&moved));
        prop_assert_eq!(zint::reduced_echelon(&rows), zint::reduced_echelon(&moved));
    }
}

fn cells() -> &'static [(VoronoiPolytope, FreedomResult); 2] {
    static C: OnceLock<[(VoronoiPolytope, FreedomResult); 2]> = OnceLock::new();
    C.get_or_init(|| {
        ["E6", "E7"].map(|n| {
            let v = build_voronoi(&Lattice::builtin(n).unwrap());
            let f = free_lines(&v);
            (v, f)
        })
    })
}

/// Linear automorphisms of the lattice, as permutations of the relevant
/// vectors, carry free lines to free lines.
#[test]
fn free_lines_are_closed_under_automorphisms() {
    for (v, fr) in cells() {
        let vecs: Vec<_> = v.facet_normals.iter().map(|z| v.lattice.dual_coords(z)).collect();
        let g = gram_automorphisms(&vecs, v.lattice.gram_inverse(), None);
        let n = v.dim();
        let mut basis = Vec::new();
        let mut span = parzono_core::exact_core::Subspace::zero(n);
        for (i, x) in vecs.iter().enumerate() {
            if !span.contains(x) {
                span = span.sum(&parzono_core::exact_core::Subspace::span(n, std::slice::from_ref(x)));
                basis.push(i);
            }
        }
        let b = QMatrix::from_rows(basis.iter().map(|&i| vecs[i].clone()).collect());
        let binv = b.inverse().unwrap();
        let lines: BTreeSet<Vec<i64>> = fr.lines.iter().cloned().collect();
        for h in g.generators() {
            let c = QMatrix::from_rows(basis.iter().map(|&i| vecs[h[i] as usize].clone()).collect());
            let t = binv.mul(&c);
            for l in &fr.lines {
                let row = QMatrix::from_rows(vec![to_qvector(l)]).mul(&t);
                let img = parzono_core::zonosum::integral_direction(row.row(0));
                let img = parzono_core::exact_core::canonical_line_i64(&img);
                assert!(lines.contains(&img));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn only_returned_lines_are_free(k in 0usize..2, raw in prop::collection::vec(-3i64..=3, 7)) {
        let (v, fr) = &cells()[k];
        let d: Vec<i64> = raw[..v.dim()].to_vec();
        prop_assume!(d.iter().any(|&x| x != 0));
        let line = parzono_core::exact_core::canonical_line_i64(&d);
        let q = to_qvector(&d);
        prop_assert_eq!(is_free(v, &q), fr.lines.contains(&line));
        if sign_condition(v, &q).unwrap().holds {
            prop_assert!(is_free(v, &q));
        }
    }
}

#[test]
fn returned_lines_are_free_with_the_sign_pattern() {
    for (v, fr) in cells() {
        for l in &fr.lines {
            let q = to_qvector(l);
            assert!(is_free(v, &q));
            let s = sign_condition(v, &q).unwrap();
            assert!(s.holds && s.a.unwrap() > int(0));
        }
    }
}

#[test]
fn square_segment_map() {
    let v = build_voronoi(&Lattice::builtin("Z2").unwrap());
    let m = segment_sum_map(&v, &[rat(1, 2), int(0)]).unwrap();
    assert_eq!(m.e_v, vec![1, 0]);
    assert_eq!(m.apply(&v, &[1, 0]), vec![int(2), int(0)]);
    assert_eq!(m.apply(&v, &[0, 1]), vec![int(0), int(1)]);
    assert!(matches!(sign_condition(&v, &[int(1), int(0)]), Err(FreedomError::DecomposableInput)));
}
