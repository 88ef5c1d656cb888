use parzono_core::freedom::{free_lines, is_decomposable, is_free, sign_condition};
use parzono_core::exact_core::to_qvector;
use parzono_core::lattice_core::Lattice;
use parzono_core::voronoi::build_voronoi;

#[test]
fn e6_has_27_free_lines() {
    let v = build_voronoi(&Lattice::builtin("E6").unwrap());
    let r = free_lines(&v);
    assert!(r.finitely_free);
    assert_eq!(r.lines.len(), 27);
    assert!(!is_decomposable(&v));
    for l in &r.lines {
        let q = to_qvector(l);
        assert!(is_free(&v, &q));
        let s = sign_condition(&v, &q).unwrap();
        assert!(s.holds);
    }
}

#[test]
fn e7_has_28_free_lines() {
    let v = build_voronoi(&Lattice::builtin("E7").unwrap());
    let r = free_lines(&v);
    assert!(r.finitely_free);
    assert_eq!(r.lines.len(), 28);
}

#[test]
fn e7_dual_is_nonfree() {
    let v = build_voronoi(&Lattice::builtin("E7*").unwrap());
    let r = free_lines(&v);
    assert!(r.finitely_free);
    assert!(r.lines.is_empty());
}

#[test]
fn cube_is_not_finitely_free() {
    let v = build_voronoi(&Lattice::builtin("Z6").unwrap());
    let r = free_lines(&v);
    assert!(!r.finitely_free);
    assert!(is_decomposable(&v));
}
