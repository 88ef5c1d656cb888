//! Minkowski sums `P + Z(U)` of a Voronoi cell with a zonotope: facets from
//! the refined normal fan, Venkov's conditions, and enumeration of feasible
//! generator subsets up to symmetry.

use std::collections::{BTreeMap, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use crate::exact_core::{dot_iq, primitive, to_qvector, QMatrix, QVector, Rational};
use crate::freedom::{free_lines, is_free_with, six_belts};
use crate::lattice_core::LatticeVector;
use crate::polytope::{point_set_centrally_symmetric, Polytope};
use crate::symmetry::{gram_automorphisms, indices_of, PermutationGroup};
use crate::voronoi::{polytope_belts, VoronoiPolytope};
use crate::zint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZonosumError {
    #[error("the polytope has a free subspace of dimension ≥ 2")]
    NotFinitelyFree,
    #[error("at most 64 generators are supported")]
    TooManyGenerators,
}

/// Position of a generator relative to a face: parallel to it (`U2`),
/// strongly transversal (`U3`) or neither (`U1`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceClassification {
    pub u1: Vec<usize>,
    pub u2: Vec<usize>,
    pub u3: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Generator that is orthogonal to no normal of some 6-belt.
    NotFree(usize),
    /// Belt of the sum with a length other than 4 or 6.
    Belt { plane: Vec<Vec<i64>>, length: usize },
    /// Facet normal of the sum whose facet is not centrally symmetric.
    Facet(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VenkovReport {
    pub is_parallelotope: bool,
    pub facet_count: usize,
    pub belt_histogram: BTreeMap<usize, usize>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug)]
struct PFace {
    verts: FixedBitSet,
    dim: usize,
    facets: Vec<usize>,
    /// Independent facet normals spanning the normal space.
    nbasis: Vec<Vec<i128>>,
    /// Integer basis of the direction space (dual coordinates).
    lin: Vec<Vec<i128>>,
    cs: bool,
}

/// A facet of the sum: its primitive normal and the face of `P` it
/// extends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumFacet {
    pub normal: Vec<i64>,
    pub base_face: usize,
    /// Generators parallel to the facet.
    pub zero: u64,
    pub pos: u64,
    pub neg: u64,
}

/// Face data of `P` reused for every generator set.
pub struct SumContext<'a> {
    pub p: &'a VoronoiPolytope,
    n: usize,
    verts: Vec<Vec<i128>>,
    faces: Vec<PFace>,
    face_index: HashMap<FixedBitSet, usize>,
    belts6: Vec<Vec<LatticeVector>>,
}

fn to_i128(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

fn dot128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl<'a> SumContext<'a> {
    pub fn new(p: &'a VoronoiPolytope) -> SumContext<'a> {
        let n = p.dim();
        let den = crate::polytope::common_denominator(p.vertices());
        let verts: Vec<Vec<i128>> = p
            .vertices()
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| (x * Rational::from_integer(den.clone())).to_integer().to_i128().unwrap())
                    .collect()
            })
            .collect();
        let normals: Vec<Vec<i128>> = p.facet_normals.iter().map(|z| to_i128(z)).collect();
        let all = p.poly.faces(0);
        let mut faces = Vec::new();
        for f in all.into_iter().flatten() {
            let facets: Vec<usize> = f.facets.ones().collect();
            let rows: Vec<Vec<i128>> = facets.iter().map(|&j| normals[j].clone()).collect();
            let mut nbasis = Vec::new();
            for r in &rows {
                let mut t = nbasis.clone();
                t.push(r.clone());
                if zint::rank(&t).unwrap() == t.len() {
                    nbasis = t;
                }
            }
            let lin = zint::nullspace(&rows, n).unwrap();
            let pts: Vec<&QVector> = f.vertices.ones().map(|k| &p.vertices()[k]).collect();
            let cs = point_set_centrally_symmetric(&pts);
            faces.push(PFace { verts: f.vertices, dim: f.dim, facets, nbasis, lin, cs });
        }
        let face_index = faces.iter().enumerate().map(|(i, f)| (f.verts.clone(), i)).collect();
        SumContext { p, n, verts, faces, face_index, belts6: six_belts(p) }
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Index of the face with exactly these vertices.
    pub fn face_id(&self, verts: &FixedBitSet) -> Option<usize> {
        self.face_index.get(verts).copied()
    }

    pub fn face_vertices(&self, id: usize) -> &FixedBitSet {
        &self.faces[id].verts
    }

    pub fn face_dim(&self, id: usize) -> usize {
        self.faces[id].dim
    }

    pub fn is_free(&self, u: &[i64]) -> bool {
        is_free_with(&self.belts6, &to_qvector(u))
    }

    /// Trichotomy of generators against a face via the signs of `uᵀp` over
    /// the facet normals `p` containing it.
    pub fn classify(&self, face: usize, gens: &[Vec<i64>]) -> FaceClassification {
        let mut out = FaceClassification::default();
        for (i, u) in gens.iter().enumerate() {
            let (pos, neg) = self.signs(face, &to_i128(u));
            if !pos && !neg {
                out.u2.push(i);
            } else if pos && neg {
                out.u3.push(i);
            } else {
                out.u1.push(i);
            }
        }
        out
    }

    fn signs(&self, face: usize, u: &[i128]) -> (bool, bool) {
        let mut pos = false;
        let mut neg = false;
        for &j in &self.faces[face].facets {
            let z = &self.p.facet_normals[j];
            let s: i128 = z.iter().zip(u).map(|(&a, b)| a as i128 * b).sum();
            pos |= s > 0;
            neg |= s < 0;
        }
        (pos, neg)
    }

    /// Does `c` attain its maximum over `P` exactly on the given face?
    fn exposes(&self, c: &[i128], face: usize) -> bool {
        let f = &self.faces[face].verts;
        let first = f.ones().next().unwrap();
        let h = dot128(c, &self.verts[first]);
        for (k, v) in self.verts.iter().enumerate() {
            let x = dot128(c, v);
            if f.contains(k) {
                if x != h {
                    return false;
                }
            } else if x >= h {
                return false;
            }
        }
        true
    }

    /// Facet normals of `P + Z(U)` (primal coordinates) with the face of
    /// `P` each facet extends.
    pub fn sum_facets(&self, gens: &[Vec<i64>]) -> Vec<SumFacet> {
        assert!(gens.len() <= 64);
        let n = self.n;
        let us: Vec<Vec<i128>> = gens.iter().map(|u| to_i128(u)).collect();
        let per_face: Vec<Vec<(Vec<i64>, usize)>> = self
            .faces
            .par_iter()
            .enumerate()
            .map(|(g, f)| {
                let k = n - f.dim;
                let mut found: Vec<(Vec<i64>, usize)> = Vec::new();
                if k == 1 {
                    let z = &self.p.facet_normals[f.facets[0]];
                    found.push((z.clone(), g));
                    return found;
                }
                let u3: Vec<usize> = (0..us.len())
                    .filter(|&i| {
                        let (a, b) = self.signs(g, &us[i]);
                        a && b
                    })
                    .collect();
                if u3.len() < k - 1 {
                    return found;
                }
                let mut seen = HashSet::new();
                for s in combinations(u3.len(), k - 1) {
                    let m: Vec<Vec<i128>> = s
                        .iter()
                        .map(|&i| f.nbasis.iter().map(|b| dot128(b, &us[u3[i]])).collect())
                        .collect();
                    let lam = zint::nullspace(&m, k).unwrap();
                    if lam.len() != 1 {
                        continue;
                    }
                    let mut c = vec![0i128; n];
                    for (l, b) in lam[0].iter().zip(&f.nbasis) {
                        for (x, y) in c.iter_mut().zip(b) {
                            *x += l * y;
                        }
                    }
                    zint::make_primitive(&mut c);
                    for sign in [1i128, -1] {
                        let cc: Vec<i128> = c.iter().map(|x| x * sign).collect();
                        if self.exposes(&cc, g) {
                            let c64: Vec<i64> = cc.iter().map(|&x| x as i64).collect();
                            if seen.insert(c64.clone()) {
                                found.push((c64, g));
                            }
                        }
                    }
                }
                found
            })
            .collect();
        let mut out: Vec<SumFacet> = per_face
            .into_iter()
            .flatten()
            .map(|(c, g)| {
                let c128 = to_i128(&c);
                let (mut zero, mut pos, mut neg) = (0u64, 0u64, 0u64);
                for (i, u) in us.iter().enumerate() {
                    let s = dot128(&c128, u);
                    match s.signum() {
                        0 => zero |= 1 << i,
                        1 => pos |= 1 << i,
                        _ => neg |= 1 << i,
                    }
                }
                SumFacet { normal: c, base_face: g, zero, pos, neg }
            })
            .collect();
        out.sort_by(|a, b| a.normal.cmp(&b.normal));
        out
    }

    /// Rank of `lin(face) + span{u_i : i ∈ mask}`.
    fn lin_rank(&self, face: usize, mask: u64, us: &[Vec<i128>]) -> usize {
        let mut rows = self.faces[face].lin.clone();
        rows.extend(indices64(mask).map(|i| us[i].clone()));
        zint::rank(&rows).unwrap()
    }

    /// Belts of `P + Z(U)`: facet index sets grouped by the 2-plane spanned
    /// by the normals of adjacent facets, keyed by that plane.
    fn belts_of(&self, facets: &[SumFacet], us: &[Vec<i128>]) -> Vec<(Vec<Vec<i128>>, Vec<usize>)> {
        let n = self.n;
        let mut memo: HashMap<(usize, u64), usize> = HashMap::new();
        let mut planes: HashMap<Vec<Vec<i128>>, HashSet<usize>> = HashMap::new();
        for a in 0..facets.len() {
            for b in a + 1..facets.len() {
                let (fa, fb) = (&facets[a], &facets[b]);
                if (fa.pos & fb.neg) | (fa.neg & fb.pos) != 0 {
                    continue;
                }
                let va = &self.faces[fa.base_face].verts;
                let vb = &self.faces[fb.base_face].verts;
                if va.is_disjoint(vb) {
                    continue;
                }
                let mut inter = va.clone();
                inter.intersect_with(vb);
                let h = self.face_index[&inter];
                let z = fa.zero & fb.zero;
                let r = *memo.entry((h, z)).or_insert_with(|| self.lin_rank(h, z, us));
                if r + 2 != n {
                    continue;
                }
                let rows = vec![to_i128(&fa.normal), to_i128(&fb.normal)];
                let (key, _) = zint::reduced_echelon(&rows).unwrap();
                let e = planes.entry(key).or_default();
                e.insert(a);
                e.insert(b);
            }
        }
        let mut out: Vec<(Vec<Vec<i128>>, Vec<usize>)> = planes
            .into_iter()
            .map(|(k, v)| {
                let mut v: Vec<usize> = v.into_iter().collect();
                v.sort_unstable();
                (k, v)
            })
            .collect();
        out.sort();
        out
    }

    /// Facets of `P + Z(U)` together with its belts, each belt a list of
    /// indices into the facet list.
    pub fn sum_belts(&self, gens: &[Vec<i64>]) -> (Vec<SumFacet>, Vec<Vec<usize>>) {
        let us: Vec<Vec<i128>> = gens.iter().map(|u| to_i128(u)).collect();
        let facets = self.sum_facets(gens);
        let belts = self.belts_of(&facets, &us).into_iter().map(|(_, v)| v).collect();
        (facets, belts)
    }

    /// Twice the centroid of a face of `P`, in dual coordinates. For a
    /// centrally symmetric face this is its standard vector.
    pub fn face_standard_vector(&self, id: usize) -> QVector {
        let c = self.p.poly.centroid(&self.faces[id].verts);
        c.iter().map(|x| x * Rational::from_integer(2.into())).collect()
    }

    /// Venkov's conditions on `P + Z(U)`: centrally symmetric facets and
    /// belts of length 4 or 6.
    pub fn venkov_check(&self, gens: &[Vec<i64>]) -> VenkovReport {
        for (i, u) in gens.iter().enumerate() {
            if !self.is_free(u) {
                return VenkovReport {
                    is_parallelotope: false,
                    facet_count: 0,
                    belt_histogram: BTreeMap::new(),
                    witness: Some(Witness::NotFree(i)),
                };
            }
        }
        self.venkov_fan(gens)
    }

    /// Venkov's conditions evaluated on the fan alone, without the freeness
    /// precheck on the generators.
    pub fn venkov_fan(&self, gens: &[Vec<i64>]) -> VenkovReport {
        let us: Vec<Vec<i128>> = gens.iter().map(|u| to_i128(u)).collect();
        let facets = self.sum_facets(gens);
        let mut witness = None;
        // a facet F_P(c) + Z(U_c) + shift is centrally symmetric iff F_P(c) is
        if let Some(f) = facets.iter().find(|f| !self.faces[f.base_face].cs) {
            witness = Some(Witness::Facet(f.normal.clone()));
        }
        let planes = self.belts_of(&facets, &us);
        let mut hist = BTreeMap::new();
        for (k, members) in &planes {
            let len = members.len();
            *hist.entry(len).or_insert(0) += 1;
            if witness.is_none() && len != 4 && len != 6 {
                let plane = k.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
                witness = Some(Witness::Belt { plane, length: len });
            }
        }
        VenkovReport { is_parallelotope: witness.is_none(), facet_count: facets.len(), belt_histogram: hist, witness }
    }
}

fn indices64(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn classify_generators(p: &VoronoiPolytope, face: &FixedBitSet, gens: &[Vec<i64>]) -> FaceClassification {
    let ctx = SumContext::new(p);
    let id = ctx.face_id(face).expect("not a face");
    ctx.classify(id, gens)
}

pub fn venkov_check(p: &VoronoiPolytope, gens: &[Vec<i64>]) -> VenkovReport {
    SumContext::new(p).venkov_check(gens)
}

/// Scales a rational direction to a primitive integer vector.
pub fn integral_direction(v: &[Rational]) -> Vec<i64> {
    primitive(v).iter().map(|x| x.to_i64().expect("small entries")).collect()
}

/// `P + Z(U)` by an explicit convex hull of all shifted vertices; used as an
/// independent check of the fan computation.
pub fn sum_hull(p: &VoronoiPolytope, gens: &[QVector]) -> Polytope {
    let mut pts: Vec<QVector> = p.vertices().to_vec();
    for u in gens {
        let mut next = Vec::with_capacity(pts.len() * 2);
        for x in &pts {
            next.push(x.iter().zip(u).map(|(a, b)| a + b).collect());
            next.push(x.iter().zip(u).map(|(a, b)| a - b).collect());
        }
        next.sort();
        next.dedup();
        pts = next;
    }
    Polytope::from_v(p.dim(), &pts)
}

/// Venkov's conditions read off an explicit polytope.
pub fn venkov_from_hull(q: &Polytope) -> VenkovReport {
    let belts = polytope_belts(q);
    let mut hist = BTreeMap::new();
    let mut witness = None;
    for (j, f) in q.facet_vertices.iter().enumerate() {
        if !q.is_centrally_symmetric(f) {
            witness = Some(Witness::Facet(integral_direction(&q.normals[j])));
            break;
        }
    }
    for b in &belts {
        *hist.entry(b.length).or_insert(0) += 1;
        if witness.is_none() && !b.is_regular() {
            let plane = b.plane.integer_basis().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect();
            witness = Some(Witness::Belt { plane, length: b.length });
        }
    }
    VenkovReport { is_parallelotope: witness.is_none(), facet_count: q.num_facets(), belt_histogram: hist, witness }
}

/// Sorted primitive facet normals of an explicit polytope.
pub fn hull_normals(q: &Polytope) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = q.normals.iter().map(|a| integral_direction(a)).collect();
    v.sort();
    v
}

/// Right-hand side `h_P(c) + Σ |cᵀu|` of a facet normal of the sum.
pub fn sum_rhs(p: &VoronoiPolytope, c: &[i64], gens: &[QVector]) -> Rational {
    let mut h = p.vertices().iter().map(|x| dot_iq(c, x)).max().unwrap();
    for u in gens {
        h += dot_iq(c, u).abs();
    }
    h
}

/// Symmetry group of a generator set of lines, acting on line indices:
/// linear automorphisms of the lattice permuting the lines, found as the
/// product-preserving permutations of `±u` together with the relevant
/// vectors.
pub fn line_group(p: &VoronoiPolytope, lines: &[Vec<i64>]) -> PermutationGroup {
    let k = lines.len();
    let mut vectors: Vec<QVector> = Vec::new();
    let mut colours = Vec::new();
    for u in lines {
        let q = to_qvector(u);
        vectors.push(q.clone());
        vectors.push(q.iter().map(|x| -x.clone()).collect());
        colours.extend([0, 0]);
    }
    for z in &p.facet_normals {
        vectors.push(p.lattice.dual_coords(z));
        colours.push(1);
    }
    let ginv: QMatrix = p.lattice.gram_inverse().clone();
    let full = gram_automorphisms(&vectors, &ginv, Some(&colours));
    full.induced(k, |i| i / 2, |line| 2 * line)
}

#[derive(Clone, Debug, Default)]
pub struct FeasibilityEnumeration {
    /// Orbit representatives of feasible subsets, by size.
    pub feasible: Vec<Vec<u128>>,
    pub minimal_forbidden: Vec<u128>,
    pub maximal_feasible: Vec<u128>,
    /// Number of Venkov checks performed.
    pub checks: usize,
}

/// Breadth-first search over orbits of generator subsets. A subset is
/// tested only when all its maximal proper subsets are feasible.
pub fn enumerate_feasible(
    ctx: &SumContext,
    lines: &[Vec<i64>],
    group: &PermutationGroup,
    max_size: Option<usize>,
) -> FeasibilityEnumeration {
    let k = lines.len();
    assert!(k <= 64);
    let limit = max_size.unwrap_or(k).min(k);
    let mut res = FeasibilityEnumeration { feasible: vec![vec![0u128]], ..Default::default() };
    let mut feasible_all: HashSet<u128> = HashSet::from([0u128]);
    let check = |mask: u128| -> bool {
        let gens: Vec<Vec<i64>> = indices_of(mask).into_iter().map(|i| lines[i].clone()).collect();
        ctx.venkov_check(&gens).is_parallelotope
    };
    for size in 1..=limit {
        let prev = res.feasible[size - 1].clone();
        let mut cands: Vec<u128> = prev
            .par_iter()
            .flat_map_iter(|&t| {
                (0..k).filter(move |&x| t >> x & 1 == 0).map(move |x| t | 1u128 << x).collect::<Vec<_>>()
            })
            .map(|c| group.canonical_image(c).0)
            .collect();
        cands.sort_by_key(|&c| crate::symmetry::indices_of(c));
        cands.dedup();
        let to_check: Vec<u128> = cands
            .into_iter()
            .filter(|&c| {
                indices_of(c).iter().all(|&x| {
                    let sub = group.canonical_image(c & !(1u128 << x)).0;
                    feasible_all.contains(&sub)
                })
            })
            .collect();
        let verdicts: Vec<(u128, bool)> = to_check.par_iter().map(|&c| (c, check(c))).collect();
        res.checks += verdicts.len();
        let mut level = Vec::new();
        for (c, ok) in verdicts {
            if ok {
                level.push(c);
                feasible_all.insert(c);
            } else {
                res.minimal_forbidden.push(c);
            }
        }
        let done = level.is_empty();
        res.feasible.push(level);
        if done {
            break;
        }
    }
    // maximal feasible: no one-element extension is feasible
    for (size, level) in res.feasible.iter().enumerate() {
        for &t in level {
            if size == limit {
                if limit == k {
                    res.maximal_feasible.push(t);
                }
                continue;
            }
            let extendable = (0..k)
                .filter(|&x| t >> x & 1 == 0)
                .any(|x| feasible_all.contains(&group.canonical_image(t | 1u128 << x).0));
            if !extendable {
                res.maximal_feasible.push(t);
            }
        }
    }
    res
}

/// Summary statistics of the free structure of a Voronoi cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreedomRow {
    pub free_lines: usize,
    pub min_forbidden_orbits: usize,
    pub max_feasible_orbits: usize,
    pub dim_max: usize,
    pub size_max: usize,
}

pub fn subset_rank(lines: &[Vec<i64>], mask: u128) -> usize {
    let rows: Vec<Vec<i128>> = indices_of(mask).into_iter().map(|i| to_i128(&lines[i])).collect();
    if rows.is_empty() {
        return 0;
    }
    zint::rank(&rows).unwrap()
}

pub struct FreeStructure {
    pub lines: Vec<Vec<i64>>,
    pub group: PermutationGroup,
    pub enumeration: FeasibilityEnumeration,
    pub row: FreedomRow,
}

/// Free lines, their symmetry group and the full subset enumeration.
pub fn free_structure(p: &VoronoiPolytope, max_size: Option<usize>) -> Result<FreeStructure, ZonosumError> {
    let fr = free_lines(p);
    if !fr.finitely_free {
        return Err(ZonosumError::NotFinitelyFree);
    }
    if fr.lines.len() > 64 {
        return Err(ZonosumError::TooManyGenerators);
    }
    let lines = fr.lines;
    let group = line_group(p, &lines);
    let ctx = SumContext::new(p);
    let enumeration = if lines.is_empty() {
        FeasibilityEnumeration { feasible: vec![vec![0]], ..Default::default() }
    } else {
        enumerate_feasible(&ctx, &lines, &group, max_size)
    };
    let row = freedom_report(&lines, &enumeration);
    Ok(FreeStructure { lines, group, enumeration, row })
}

pub fn freedom_report(lines: &[Vec<i64>], e: &FeasibilityEnumeration) -> FreedomRow {
    let feasible = e.feasible.iter().flatten();
    let size_max = if lines.is_empty() { 0 } else { feasible.clone().map(|t| t.count_ones() as usize).max().unwrap_or(0) };
    let dim_max = if lines.is_empty() { 0 } else { feasible.map(|&t| subset_rank(lines, t)).max().unwrap_or(0) };
    FreedomRow {
        free_lines: lines.len(),
        min_forbidden_orbits: e.minimal_forbidden.len(),
        max_feasible_orbits: e.maximal_feasible.len(),
        dim_max,
        size_max,
    }
}

/// Rational generators from integer directions.
pub fn as_rational(gens: &[Vec<i64>]) -> Vec<QVector> {
    gens.iter().map(|u| to_qvector(u)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::int;
    use crate::lattice_core::Lattice;
    use crate::voronoi::build_voronoi;

    #[test]
    fn square_plus_diagonal_is_hexagon() {
        let z2 = build_voronoi(&Lattice::builtin("Z2").unwrap());
        let ctx = SumContext::new(&z2);
        let f = ctx.sum_facets(&[vec![1, 1]]);
        let normals: Vec<Vec<i64>> = f.iter().map(|s| s.normal.clone()).collect();
        assert_eq!(normals, vec![vec![-1, 0], vec![-1, 1], vec![0, -1], vec![0, 1], vec![1, -1], vec![1, 0]]);
        let r = ctx.venkov_check(&[vec![1, 1]]);
        assert!(r.is_parallelotope);
        assert_eq!(r.belt_histogram, BTreeMap::from([(6, 1)]));
        let hull = sum_hull(&z2, &[vec![int(1), int(1)]]);
        assert_eq!(hull_normals(&hull), normals);
    }

    #[test]
    fn empty_generators_keep_polytope() {
        let a2 = build_voronoi(&Lattice::builtin("A2").unwrap());
        let r = venkov_check(&a2, &[]);
        assert!(r.is_parallelotope);
        assert_eq!(r.facet_count, 6);
    }

    #[test]
    fn square_classification() {
        let z2 = build_voronoi(&Lattice::builtin("Z2").unwrap());
        let ctx = SumContext::new(&z2);
        let edge = (0..ctx.num_faces()).find(|&i| ctx.face_dim(i) == 1).unwrap();
        let vertex = (0..ctx.num_faces()).find(|&i| ctx.face_dim(i) == 0).unwrap();
        let edge_dir: Vec<i64> = {
            let vs: Vec<usize> = ctx.face_vertices(edge).ones().collect();
            let a = &z2.vertices()[vs[0]];
            let b = &z2.vertices()[vs[1]];
            integral_direction(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
        };
        assert_eq!(ctx.classify(edge, &[edge_dir]).u2, vec![0]);
        let v = &z2.vertices()[ctx.face_vertices(vertex).ones().next().unwrap()];
        // the direction (1,−1) or (1,1) that leaves the square on both sides
        let d = if v[0] == v[1] { vec![1, -1] } else { vec![1, 1] };
        assert_eq!(ctx.classify(vertex, &[d]).u3, vec![0]);
    }

    #[test]
    fn hexagon_plus_nonfree_segment_fails() {
        let a2 = build_voronoi(&Lattice::builtin("A2").unwrap());
        let r = venkov_check(&a2, &[vec![1, 2]]);
        assert!(!r.is_parallelotope);
        assert_eq!(r.witness, Some(Witness::NotFree(0)));
    }
}
