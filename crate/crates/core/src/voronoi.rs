//! Voronoi cells of lattices: exact H/V representation, faces, belts, dual
//! cells of faces, and the Delaunay polytope around a vertex.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact_core::{canonical_line, to_qvector, QVector, Rational, Subspace};
use crate::lattice_core::{Lattice, LatticeVector};
use crate::polytope::{point_set_centrally_symmetric, Face, Polytope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VoronoiError {
    #[error("vertex set is not a face of the polytope")]
    NotAFace,
}

/// `P_V(L) = {x : zᵀx ≤ ½ zᵀ·gram·z for every relevant z}` in dual
/// coordinates.
#[derive(Clone, Debug)]
pub struct VoronoiPolytope {
    pub lattice: Lattice,
    /// Relevant vectors, one per facet, in the facet order of `poly`.
    pub facet_normals: Vec<LatticeVector>,
    pub poly: Polytope,
}

/// A face together with its direction space.
#[derive(Clone, Debug)]
pub struct LinFace {
    pub face: Face,
    pub lin: Subspace,
}

/// Facets whose normals lie in a common 2-plane spanned by two normals of a
/// codim-2 face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Belt {
    /// Plane of the participating normals.
    pub plane: Subspace,
    pub facets: Vec<usize>,
    pub length: usize,
}

impl Belt {
    pub fn is_regular(&self) -> bool {
        self.length == 4 || self.length == 6
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellType {
    Point,
    Segment,
    Triangle,
    Tetrahedron,
    Octahedron,
    Pyramid4,
    Prism3,
    Cube,
    Other,
}

#[derive(Clone, Debug)]
pub struct DualCell {
    pub lattice_points: Vec<LatticeVector>,
    pub combinatorial_type: CellType,
}

pub fn build_voronoi(lat: &Lattice) -> VoronoiPolytope {
    let rel = lat.relevant_vectors();
    let n = lat.dim();
    let normals: Vec<QVector> = rel.iter().map(|z| to_qvector(z)).collect();
    let rhs: Vec<Rational> = rel.iter().map(|z| lat.half_norm(z)).collect();
    let poly = Polytope::from_h(n, normals, rhs);
    let facet_normals = poly
        .normals
        .iter()
        .map(|a| a.iter().map(|x| x.to_integer().to_i64().expect("integer normal")).collect())
        .collect();
    VoronoiPolytope { lattice: lat.clone(), facet_normals, poly }
}

impl VoronoiPolytope {
    pub fn dim(&self) -> usize {
        self.poly.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.poly.num_vertices()
    }

    pub fn num_facets(&self) -> usize {
        self.poly.num_facets()
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.poly.vertices
    }

    /// Index of the facet with normal `z`.
    pub fn facet_index(&self, z: &[i64]) -> Option<usize> {
        self.facet_normals.iter().position(|f| f.as_slice() == z)
    }

    /// Faces of dimension `≥ min_dim` (below the polytope itself).
    pub fn face_lattice(&self, min_dim: usize) -> Vec<LinFace> {
        self.poly
            .faces(min_dim)
            .into_iter()
            .skip(min_dim)
            .flatten()
            .map(|f| {
                let lin = self.poly.face_lin(&f);
                LinFace { face: f, lin }
            })
            .collect()
    }

    pub fn belts(&self) -> Vec<Belt> {
        polytope_belts(&self.poly)
    }

    /// The lattice points whose Voronoi cells contain the face, with the
    /// shape of their convex hull for faces of codimension at most 3.
    pub fn dual_cell(&self, g: &FixedBitSet) -> Result<DualCell, VoronoiError> {
        if g.count_ones(..) == 0 {
            return Err(VoronoiError::NotAFace);
        }
        let face = self.poly.closure(g);
        if face.vertices != *g {
            return Err(VoronoiError::NotAFace);
        }
        let y = self.poly.centroid(g);
        let x = self.lattice.primal_from_dual(&y);
        let pts = self.lattice.closest_vectors(&x);
        let codim = self.dim() - face.dim;
        let combinatorial_type = classify_cell(&pts, codim);
        Ok(DualCell { lattice_points: pts, combinatorial_type })
    }
}

/// Shape of a dual cell from its point count and central symmetry.
pub fn classify_cell(pts: &[LatticeVector], codim: usize) -> CellType {
    let q: Vec<QVector> = pts.iter().map(|p| to_qvector(p)).collect();
    let refs: Vec<&QVector> = q.iter().collect();
    let cs = point_set_centrally_symmetric(&refs);
    match (codim, pts.len()) {
        (0, 1) => CellType::Point,
        (1, 2) => CellType::Segment,
        (2, 3) => CellType::Triangle,
        (3, 4) => CellType::Tetrahedron,
        (3, 5) => CellType::Pyramid4,
        (3, 6) if cs => CellType::Octahedron,
        (3, 6) => CellType::Prism3,
        (3, 8) if cs => CellType::Cube,
        _ => CellType::Other,
    }
}

/// Belts of a full-dimensional polytope, one per distinct plane spanned by
/// the two normals of a codim-2 face, sorted by their facet lists.
pub fn polytope_belts(p: &Polytope) -> Vec<Belt> {
    let n = p.dim;
    let mut planes: Vec<Subspace> = if n < 2 {
        Vec::new()
    } else if n == 2 {
        vec![Subspace::full(2)]
    } else {
        let ridges = &p.faces(n - 2)[n - 2];
        let mut v: Vec<Subspace> = ridges
            .par_iter()
            .map(|r| {
                let ns: Vec<QVector> = r.facets.ones().map(|j| p.normals[j].clone()).collect();
                Subspace::span(n, &ns)
            })
            .collect();
        v.sort_by(|a, b| a.basis().cmp(b.basis()));
        v.dedup();
        v
    };
    let mut belts: Vec<Belt> = planes
        .drain(..)
        .map(|plane| {
            let facets: Vec<usize> = (0..p.num_facets()).filter(|&j| plane.contains(&p.normals[j])).collect();
            let length = facets.len();
            Belt { plane, facets, length }
        })
        .collect();
    belts.sort_by(|a, b| a.facets.cmp(&b.facets));
    belts
}

/// Normals of a belt up to sign, one representative per ± pair.
pub fn belt_normal_pairs(v: &VoronoiPolytope, b: &Belt) -> Vec<LatticeVector> {
    let mut out: Vec<LatticeVector> = b
        .facets
        .iter()
        .map(|&j| {
            let z = &v.facet_normals[j];
            let c = canonical_line(&to_qvector(z));
            c.iter().map(|x| x.to_i64().unwrap()).collect()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Face vector of a Delaunay polytope together with the split of faces by
/// vertex counts of the facets containing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelaunayFaces {
    /// Number of faces of each dimension `0..=n`.
    pub counts: Vec<usize>,
    /// Facets by vertex count.
    pub facet_sizes: BTreeMap<usize, usize>,
    /// Ridges by the (sorted) vertex counts of their two facets.
    pub ridge_split: BTreeMap<(usize, usize), usize>,
}

/// Convex hull of the lattice points closest to a vertex of `P_V`, as a
/// polytope in primal coordinates.
pub fn delaunay_polytope(v: &VoronoiPolytope, vertex: usize) -> Polytope {
    let mut g = FixedBitSet::with_capacity(v.num_vertices());
    g.insert(vertex);
    let cell = v.dual_cell(&g).expect("vertex is a face");
    let pts: Vec<QVector> = cell.lattice_points.iter().map(|p| to_qvector(p)).collect();
    Polytope::from_v(v.dim(), &pts)
}

pub fn delaunay_face_counts(d: &Polytope) -> DelaunayFaces {
    let n = d.dim;
    let faces = d.faces(0);
    let mut counts: Vec<usize> = faces.iter().map(|f| f.len()).collect();
    counts.push(1);
    let mut facet_sizes = BTreeMap::new();
    for f in &d.facet_vertices {
        *facet_sizes.entry(f.count_ones(..)).or_insert(0) += 1;
    }
    let mut ridge_split = BTreeMap::new();
    if n >= 2 {
        for r in &faces[n - 2] {
            let mut s: Vec<usize> = r.facets.ones().map(|j| d.facet_vertices[j].count_ones(..)).collect();
            s.sort();
            debug_assert_eq!(s.len(), 2);
            *ridge_split.entry((s[0], s[1])).or_insert(0) += 1;
        }
    }
    DelaunayFaces { counts, facet_sizes, ridge_split }
}

/// Volume of `P_V` in dual coordinates equals the Gram determinant.
pub fn volume_matches_det(v: &VoronoiPolytope) -> bool {
    crate::polytope::volume(&v.poly) == v.lattice.det()
}

/// Sign pattern `zᵀx` of a point against every facet normal, mostly for
/// diagnostics.
pub fn facet_values(v: &VoronoiPolytope, x: &[Rational]) -> Vec<Rational> {
    v.facet_normals.iter().map(|z| v.lattice.pair(z, x)).collect()
}

/// True iff `x ↦ −x` permutes the vertices.
pub fn vertices_symmetric(v: &VoronoiPolytope) -> bool {
    let set: std::collections::HashSet<&QVector> = v.vertices().iter().collect();
    v.vertices().iter().all(|x| {
        let m: QVector = x.iter().map(|c| -c.clone()).collect();
        set.contains(&m)
    })
}

/// Integer form of a rational vector known to be integral.
pub fn as_i64(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
        .collect()
}

/// `½ zᵀ·gram·z` for every facet, the right-hand sides.
pub fn facet_rhs(v: &VoronoiPolytope) -> Vec<Rational> {
    v.poly.rhs.clone()
}
