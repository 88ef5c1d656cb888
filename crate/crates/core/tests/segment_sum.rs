use parzono_core::e6::*;
use parzono_core::exact_core::{to_qvector, QVector, Rational, Subspace};
use parzono_core::freedom::{in_segment_sum, segment_sum_map, SegmentSumLatticeMap};
use parzono_core::lattice_core::LatticeVector;
use parzono_core::voronoi::{build_voronoi, VoronoiPolytope};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn affine_rank(pts: &[QVector]) -> usize {
    let n = pts[0].len();
    let diffs: Vec<QVector> = pts[1..].iter().map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect();
    Subspace::span(n, &diffs).dim()
}

fn image(v: &VoronoiPolytope, m: &SegmentSumLatticeMap, z: &[i64]) -> QVector {
    m.apply(v, z)
}

fn standard(v: &VoronoiPolytope) -> Vec<LatticeVector> {
    v.lattice.standard_vectors().into_values().flatten().collect()
}

#[test]
fn layer_function_and_standard_vectors() {
    let (md, e6, _) = build_e6();
    let v = build_voronoi(&e6);
    let st = standard(&v);
    assert_eq!(st.len(), 342);
    let half = Rational::new(1.into(), 2.into());
    for i in 0..27 {
        let q = md.dual(&md.m[i]);
        let line = to_qvector(&md.line(i));
        let neg: QVector = line.iter().map(|x| -x).collect();
        assert!(q == line || q == neg);
        let m = segment_sum_map(&v, &q).unwrap();
        // n_v is onto Z on the facet vectors and vanishes on the parallel ones
        let values: Vec<i64> = v.facet_normals.iter().map(|z| m.n_v(z)).collect();
        assert!(values.iter().all(|x| x.abs() <= 1));
        assert!(values.contains(&1));
        let parallel: Vec<QVector> = v
            .facet_normals
            .iter()
            .filter(|z| m.n_v(z) == 0)
            .map(|z| v.lattice.dual_coords(z))
            .collect();
        assert_eq!(Subspace::span(6, &parallel).dim(), 5);
        let mut kept = 0;
        for z in &st {
            let n = m.n_v(z);
            let mid: QVector = image(&v, &m, z).iter().map(|x| x * &half).collect();
            assert_eq!(in_segment_sum(&v, &q, &mid), n.abs() <= 1, "line {i}, {z:?}");
            kept += usize::from(n.abs() <= 1);
        }
        // doubled vectors never become standard
        for z in &v.facet_normals {
            let z2: Vec<i64> = z.iter().map(|x| 2 * x).collect();
            let mid: QVector = image(&v, &m, &z2).iter().map(|x| x * &half).collect();
            assert!(!in_segment_sum(&v, &q, &mid));
        }
        assert!(kept < 342);
    }
}

#[test]
fn affine_dependence_is_preserved() {
    let (md, e6, _) = build_e6();
    let v = build_voronoi(&e6);
    let st = standard(&v);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let q = md.dual(&md.m[0]);
    let m = segment_sum_map(&v, &q).unwrap();
    let mut dependent = 0;
    for trial in 0..1000 {
        let pts: Vec<LatticeVector> = if trial % 2 == 0 {
            st.choose_multiple(&mut rng, 3).cloned().collect()
        } else {
            // two standard vectors and a third point on their line
            let s: Vec<LatticeVector> = st.choose_multiple(&mut rng, 2).cloned().collect();
            let third: LatticeVector = s[0].iter().zip(&s[1]).map(|(a, b)| 2 * a - b).collect();
            vec![s[0].clone(), s[1].clone(), third]
        };
        let before: Vec<QVector> = pts.iter().map(|z| v.lattice.dual_coords(z)).collect();
        let after: Vec<QVector> = pts.iter().map(|z| image(&v, &m, z)).collect();
        let (rb, ra) = (affine_rank(&before), affine_rank(&after));
        assert_eq!(rb < 2, ra < 2);
        dependent += usize::from(rb < 2);
    }
    assert!(dependent >= 500);
}
