//! Exact computations on Voronoi cells of lattices, their parallelohedral
//! zonotope sums, and the E6 case study.

pub mod exact_core;
pub mod lattice_core;
pub mod polytope;
pub mod zint;
pub mod voronoi;
pub mod freedom;
pub mod symmetry;
pub mod zonosum;
pub mod matroid;
pub mod e6;
