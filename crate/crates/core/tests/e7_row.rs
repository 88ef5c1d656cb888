use parzono_core::e6::TABLE3_E7;
use parzono_core::lattice_core::Lattice;
use parzono_core::voronoi::build_voronoi;
use parzono_core::zonosum::{free_structure, ZonosumError};

#[test]
fn e7_free_structure_row() {
    let v = build_voronoi(&Lattice::builtin("E7").unwrap());
    let fs = free_structure(&v, None).unwrap();
    let r = &fs.row;
    assert_eq!(
        (r.free_lines, r.min_forbidden_orbits, r.max_feasible_orbits, r.dim_max, r.size_max),
        TABLE3_E7
    );
}

#[test]
fn e7_dual_row_is_empty() {
    let v = build_voronoi(&Lattice::builtin("E7*").unwrap());
    let fs = free_structure(&v, None).unwrap();
    let r = &fs.row;
    assert_eq!((r.free_lines, r.min_forbidden_orbits, r.max_feasible_orbits, r.dim_max, r.size_max), (0, 0, 0, 0, 0));
}

#[test]
fn cube_has_no_row() {
    let v = build_voronoi(&Lattice::builtin("Z6").unwrap());
    assert!(matches!(free_structure(&v, None), Err(ZonosumError::NotFinitelyFree)));
}
