use std::collections::BTreeMap;

use parzono_core::exact_core::{dot_iq, to_qvector, QMatrix, QVector, Subspace};
use parzono_core::lattice_core::Lattice;
use parzono_core::polytope::Polytope;
use parzono_core::voronoi::{build_voronoi, CellType};

/// Vertex and facet counts of the hull of a 3-dimensional point set.
fn hull_counts(pts: &[Vec<i64>]) -> (usize, usize) {
    let n = pts[0].len();
    let diffs: Vec<Vec<i64>> = pts[1..].iter().map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut span = Subspace::zero(n);
    for d in &diffs {
        let q = to_qvector(d);
        if !span.contains(&q) {
            span = span.sum(&Subspace::span(n, &[q]));
            basis.push(d.clone());
        }
    }
    assert_eq!(basis.len(), 3);
    let coords: Vec<QVector> =
        pts.iter().map(|p| basis.iter().map(|b| dot_iq(b, &to_qvector(p))).collect()).collect();
    let h = Polytope::from_v(3, &coords);
    (h.num_vertices(), h.num_facets())
}

fn expected_counts(t: CellType) -> Option<(usize, usize)> {
    match t {
        CellType::Tetrahedron => Some((4, 4)),
        CellType::Pyramid4 => Some((5, 5)),
        CellType::Prism3 => Some((6, 5)),
        CellType::Octahedron => Some((6, 8)),
        CellType::Cube => Some((8, 6)),
        _ => None,
    }
}

fn codim3_census(name: &str) -> BTreeMap<CellType, usize> {
    let v = build_voronoi(&Lattice::builtin(name).unwrap());
    let d = v.dim() - 3;
    let mut census = BTreeMap::new();
    for f in v.face_lattice(d).into_iter().filter(|f| f.face.dim == d) {
        let c = v.dual_cell(&f.face.vertices).unwrap();
        let want = expected_counts(c.combinatorial_type);
        assert_eq!(want, Some(hull_counts(&c.lattice_points)), "{name}: {:?}", c.lattice_points);
        *census.entry(c.combinatorial_type).or_insert(0) += 1;
    }
    census
}

#[test]
fn e6_codim3_cells_are_tetrahedra() {
    let c = codim3_census("E6");
    // 3-faces of its Delaunay cells are all simplices
    assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![CellType::Tetrahedron]);
}

#[test]
fn e7_codim3_cells_are_tetrahedra() {
    let c = codim3_census("E7");
    // 3-faces of its Delaunay cells are all simplices
    assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![CellType::Tetrahedron]);
}

#[test]
fn cube_codim3_cells_are_cubes() {
    for name in ["Z3", "Z4", "Z5"] {
        let c = codim3_census(name);
        assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![CellType::Cube]);
    }
}

fn vertex_census(gram: &[Vec<i64>]) -> Vec<CellType> {
    let v = build_voronoi(&Lattice::new(QMatrix::from_i64(gram), None).unwrap());
    let mut out = Vec::new();
    for f in v.face_lattice(0).into_iter().filter(|f| f.face.dim == 0) {
        let c = v.dual_cell(&f.face.vertices).unwrap();
        assert_eq!(expected_counts(c.combinatorial_type), Some(hull_counts(&c.lattice_points)));
        out.push(c.combinatorial_type);
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn three_dimensional_lattices_show_every_kind() {
    use CellType::*;
    assert_eq!(vertex_census(&[vec![2, -1, -1], vec![-1, 2, 0], vec![-1, 0, 2]]), vec![Tetrahedron, Octahedron]);
    assert_eq!(vertex_census(&[vec![2, 0, -1], vec![0, 2, -1], vec![-1, -1, 3]]), vec![Tetrahedron, Pyramid4]);
    assert_eq!(vertex_census(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 3]]), vec![Prism3]);
    assert_eq!(vertex_census(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]), vec![Cube]);
}
