//! Exact convex polytopes: double-description conversion between H- and
//! V-representations, vertex–facet incidence and the face lattice.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact_core::{dot, primitive, QVector, Rational, Subspace};
use crate::with_int_backend;
use crate::zint::{self, ZInt};

/// Extreme rays of the pointed cone `{y : a·y ≥ 0 for every row a}`.
///
/// Rows are processed in the given order; the result is sorted.
pub fn cone_extreme_rays(rows: &[Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
    let mut rays = with_int_backend!(dd_rays(rows, d));
    rays.sort();
    rays
}

struct Ray<T> {
    v: Vec<T>,
    zeros: FixedBitSet,
}

fn dd_rays<T: ZInt>(rows: &[Vec<BigInt>], d: usize) -> Option<Vec<Vec<BigInt>>> {
    let m = rows.len();
    let a: Vec<Vec<T>> = rows.iter().map(|r| zint::convert(r)).collect::<Option<_>>()?;
    // initial simplicial cone from the first d independent rows
    let mut basis: Vec<usize> = Vec::new();
    let mut cur: Vec<Vec<T>> = Vec::new();
    for (i, r) in a.iter().enumerate() {
        let mut t = cur.clone();
        t.push(r.clone());
        if zint::rank(&t)? == t.len() {
            cur = t;
            basis.push(i);
            if basis.len() == d {
                break;
            }
        }
    }
    assert_eq!(basis.len(), d, "cone is not pointed");
    let mut rays: Vec<Ray<T>> = Vec::with_capacity(d);
    for k in 0..d {
        let others: Vec<Vec<T>> = (0..d).filter(|&j| j != k).map(|j| a[basis[j]].clone()).collect();
        let ns = zint::nullspace(&others, d)?;
        debug_assert_eq!(ns.len(), 1);
        let mut v = ns.into_iter().next().unwrap();
        if zint::dot(&a[basis[k]], &v)?.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
        let mut zeros = FixedBitSet::with_capacity(m);
        for j in 0..d {
            if j != k {
                zeros.insert(basis[j]);
            }
        }
        rays.push(Ray { v, zeros });
    }
    let mut processed = FixedBitSet::with_capacity(m);
    for &b in &basis {
        processed.insert(b);
    }
    for i in 0..m {
        if processed.contains(i) {
            continue;
        }
        processed.insert(i);
        let s: Vec<T> = rays.iter().map(|r| zint::dot(&a[i], &r.v)).collect::<Option<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| s[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| s[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if s[k].is_zero() {
                    r.zeros.insert(i);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut z = rays[p].zeros.clone();
                z.intersect_with(&rays[q].zeros);
                if z.count_ones(..) + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !z.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let mut v = zint::comb(&s[p], &rays[q].v, &s[q], &rays[p].v)?;
                zint::make_primitive(&mut v);
                z.insert(i);
                fresh.push(Ray { v, zeros: z });
            }
        }
        let mut next = Vec::with_capacity(pos.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if s[k].is_zero() {
                r.zeros.insert(i);
                next.push(r);
            } else if s[k].is_positive() {
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    Some(rays.into_iter().map(|r| r.v.iter().map(|x| x.to_big()).collect()).collect())
}

/// A face of a polytope, stored as a pair of mutually closed incidence sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub vertices: FixedBitSet,
    pub facets: FixedBitSet,
    pub dim: usize,
}

/// Bounded full-dimensional polytope `{x : a_j·x ≤ b_j}` with its exact
/// vertices and incidences. Only facet-defining inequalities are kept.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub dim: usize,
    pub normals: Vec<QVector>,
    pub rhs: Vec<Rational>,
    pub vertices: Vec<QVector>,
    pub facet_vertices: Vec<FixedBitSet>,
    pub vertex_facets: Vec<FixedBitSet>,
    int_normals: Vec<Vec<BigInt>>,
}

fn scale_row(coeffs: &[Rational]) -> Vec<BigInt> {
    let mut p = primitive(coeffs);
    // primitive() keeps direction; sign already positive multiple
    if p.iter().all(Zero::is_zero) {
        p = vec![BigInt::zero(); coeffs.len()];
    }
    p
}

impl Polytope {
    /// Vertex enumeration from an H-representation. Redundant inequalities
    /// are dropped; panics if the region is unbounded or not full-dimensional.
    pub fn from_h(dim: usize, normals: Vec<QVector>, rhs: Vec<Rational>) -> Polytope {
        assert_eq!(normals.len(), rhs.len());
        let mut rows = Vec::with_capacity(normals.len() + 1);
        for (a, b) in normals.iter().zip(&rhs) {
            let mut h = Vec::with_capacity(dim + 1);
            h.push(b.clone());
            h.extend(a.iter().map(|x| -x.clone()));
            rows.push(scale_row(&h));
        }
        let mut h0 = vec![BigInt::zero(); dim + 1];
        h0[0] = BigInt::one();
        rows.push(h0);
        let rays = cone_extreme_rays(&rows, dim + 1);
        let mut vertices: Vec<QVector> = rays
            .iter()
            .map(|r| {
                assert!(r[0].is_positive(), "polytope is unbounded");
                let d = &r[0];
                r[1..].iter().map(|x| Rational::new(x.clone(), d.clone())).collect()
            })
            .collect();
        vertices.sort();
        Self::assemble(dim, normals, rhs, vertices)
    }

    /// Convex hull of a full-dimensional point set.
    pub fn from_v(dim: usize, points: &[QVector]) -> Polytope {
        let rows: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| {
                let mut h = Vec::with_capacity(dim + 1);
                h.push(Rational::one());
                h.extend(p.iter().map(|x| -x.clone()));
                scale_row(&h)
            })
            .collect();
        let rays = cone_extreme_rays(&rows, dim + 1);
        let mut normals = Vec::new();
        let mut rhs = Vec::new();
        for r in rays {
            normals.push(r[1..].iter().map(|x| Rational::from_integer(x.clone())).collect());
            rhs.push(Rational::from_integer(r[0].clone()));
        }
        // keep only extreme points
        let mut verts: Vec<QVector> = points.to_vec();
        verts.sort();
        verts.dedup();
        let mut poly = Self::assemble(dim, normals, rhs, verts);
        let keep: Vec<usize> = (0..poly.vertices.len())
            .filter(|&v| {
                let idx: Vec<usize> = poly.vertex_facets[v].ones().collect();
                poly.normal_rank(&idx) == dim
            })
            .collect();
        if keep.len() != poly.vertices.len() {
            let verts: Vec<QVector> = keep.iter().map(|&v| poly.vertices[v].clone()).collect();
            poly = Self::assemble(dim, poly.normals, poly.rhs, verts);
        }
        poly
    }

    fn assemble(dim: usize, normals: Vec<QVector>, rhs: Vec<Rational>, vertices: Vec<QVector>) -> Polytope {
        let nv = vertices.len();
        let tight = |a: &QVector, b: &Rational| -> FixedBitSet {
            let mut s = FixedBitSet::with_capacity(nv);
            for (k, v) in vertices.iter().enumerate() {
                if dot(a, v) == *b {
                    s.insert(k);
                }
            }
            s
        };
        let mut keep_n = Vec::new();
        let mut keep_b = Vec::new();
        let mut fv = Vec::new();
        let mut seen = HashSet::new();
        for (a, b) in normals.into_iter().zip(rhs) {
            let s = tight(&a, &b);
            if !seen.insert(s.clone()) {
                continue;
            }
            // facet iff tight vertices affinely span a hyperplane
            let pts: Vec<&QVector> = s.ones().map(|k| &vertices[k]).collect();
            if pts.len() < dim || affine_rank(&pts) != dim - 1 {
                continue;
            }
            keep_n.push(a);
            keep_b.push(b);
            fv.push(s);
        }
        let nf = keep_n.len();
        let mut vf = vec![FixedBitSet::with_capacity(nf); nv];
        for (j, s) in fv.iter().enumerate() {
            for k in s.ones() {
                vf[k].insert(j);
            }
        }
        let int_normals = keep_n.iter().map(|a| primitive(a)).collect();
        Polytope { dim, normals: keep_n, rhs: keep_b, vertices, facet_vertices: fv, vertex_facets: vf, int_normals }
    }

    pub fn num_facets(&self) -> usize {
        self.normals.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Primitive integer facet normals.
    pub fn int_normals(&self) -> &[Vec<BigInt>] {
        &self.int_normals
    }

    /// Rank of the normals of the given facets.
    pub fn normal_rank(&self, facets: &[usize]) -> usize {
        let rows: Vec<Vec<BigInt>> = facets.iter().map(|&j| self.int_normals[j].clone()).collect();
        with_int_backend!(rank_big(&rows))
    }

    /// Smallest face containing the given vertices.
    pub fn closure(&self, verts: &FixedBitSet) -> Face {
        let nf = self.num_facets();
        let mut facets = FixedBitSet::with_capacity(nf);
        facets.insert_range(..);
        for v in verts.ones() {
            facets.intersect_with(&self.vertex_facets[v]);
        }
        let mut vs = FixedBitSet::with_capacity(self.num_vertices());
        vs.insert_range(..);
        for f in facets.ones() {
            vs.intersect_with(&self.facet_vertices[f]);
        }
        let idx: Vec<usize> = facets.ones().collect();
        let dim = self.dim - self.normal_rank(&idx);
        Face { vertices: vs, facets, dim }
    }

    /// All faces of dimension `min_dim ..= dim-1`, grouped by dimension
    /// (index = dimension). Each face appears once.
    pub fn faces(&self, min_dim: usize) -> Vec<Vec<Face>> {
        let n = self.dim;
        let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); n];
        if n == 0 {
            return by_dim;
        }
        let mut top = Vec::new();
        for j in 0..self.num_facets() {
            let mut facets = FixedBitSet::with_capacity(self.num_facets());
            facets.insert(j);
            top.push(Face { vertices: self.facet_vertices[j].clone(), facets, dim: n - 1 });
        }
        by_dim[n - 1] = top;
        let mut rank_memo: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut k = n - 1;
        while k > min_dim {
            let mut seen: HashSet<FixedBitSet> = HashSet::new();
            let mut next = Vec::new();
            for f in &by_dim[k] {
                for j in 0..self.num_facets() {
                    if f.facets.contains(j) {
                        continue;
                    }
                    let mut cand = f.vertices.clone();
                    cand.intersect_with(&self.facet_vertices[j]);
                    if cand.count_ones(..) == 0 || seen.contains(&cand) {
                        continue;
                    }
                    let mut facets = FixedBitSet::with_capacity(self.num_facets());
                    facets.insert_range(..);
                    for v in cand.ones() {
                        facets.intersect_with(&self.vertex_facets[v]);
                    }
                    let mut vs = cand.clone();
                    vs.insert_range(..);
                    for g in facets.ones() {
                        vs.intersect_with(&self.facet_vertices[g]);
                    }
                    if vs != cand {
                        continue;
                    }
                    seen.insert(cand.clone());
                    let r = *rank_memo.entry(facets.clone()).or_insert_with(|| {
                        let idx: Vec<usize> = facets.ones().collect();
                        self.normal_rank(&idx)
                    });
                    if n - r == k - 1 {
                        next.push(Face { vertices: cand, facets, dim: k - 1 });
                    }
                }
            }
            next.sort_by(|a, b| a.vertices.ones().cmp(b.vertices.ones()));
            by_dim[k - 1] = next;
            k -= 1;
        }
        by_dim
    }

    /// Direction space of a face (differences of its points), the plain-dot
    /// orthogonal complement of its facet normals.
    pub fn face_lin(&self, face: &Face) -> Subspace {
        let normals: Vec<QVector> = face.facets.ones().map(|j| self.normals[j].clone()).collect();
        Subspace::span(self.dim, &normals).complement()
    }

    /// Barycenter of a set of vertices.
    pub fn centroid(&self, verts: &FixedBitSet) -> QVector {
        let k = verts.count_ones(..);
        let mut c = vec![Rational::zero(); self.dim];
        for v in verts.ones() {
            for (x, y) in c.iter_mut().zip(&self.vertices[v]) {
                *x += y;
            }
        }
        let kq = Rational::from_integer(BigInt::from(k));
        c.iter().map(|x| x / &kq).collect()
    }

    /// True iff the vertex set is invariant under reflection in its centroid.
    pub fn is_centrally_symmetric(&self, verts: &FixedBitSet) -> bool {
        let pts: Vec<&QVector> = verts.ones().map(|v| &self.vertices[v]).collect();
        point_set_centrally_symmetric(&pts)
    }
}

/// Central symmetry of a finite point set about its barycenter.
pub fn point_set_centrally_symmetric(pts: &[&QVector]) -> bool {
    if pts.is_empty() {
        return true;
    }
    let n = pts[0].len();
    let k = Rational::from_integer(BigInt::from(pts.len()));
    let mut c = vec![Rational::zero(); n];
    for p in pts {
        for (x, y) in c.iter_mut().zip(p.iter()) {
            *x += y;
        }
    }
    let two_c: QVector = c.iter().map(|x| x * Rational::from_integer(BigInt::from(2)) / &k).collect();
    let set: HashSet<&QVector> = pts.iter().copied().collect();
    pts.iter().all(|p| {
        let q: QVector = two_c.iter().zip(p.iter()).map(|(a, b)| a - b).collect();
        set.contains(&q)
    })
}

fn rank_big<T: ZInt>(rows: &[Vec<BigInt>]) -> Option<usize> {
    let r: Vec<Vec<T>> = rows.iter().map(|x| zint::convert(x)).collect::<Option<_>>()?;
    zint::rank(&r)
}

/// Affine rank (dimension of the affine hull) of a nonempty point set.
pub fn affine_rank(pts: &[&QVector]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|p| {
            let d: QVector = p.iter().zip(pts[0].iter()).map(|(a, b)| a - b).collect();
            primitive(&d)
        })
        .collect();
    with_int_backend!(rank_big(&diffs))
}

/// Unsigned volume of the simplex with the given `n+1` vertices, times `n!`.
pub fn simplex_volume_nfact(pts: &[&QVector]) -> Rational {
    let n = pts.len() - 1;
    let mut m = crate::exact_core::QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = &pts[i + 1][j] - &pts[0][j];
        }
    }
    m.determinant().abs()
}

/// Volume of the polytope via a pulling triangulation over its face lattice.
pub fn volume(p: &Polytope) -> Rational {
    let faces = p.faces(0);
    let n = p.dim;
    let mut total = Rational::zero();
    let all: FixedBitSet = {
        let mut s = FixedBitSet::with_capacity(p.num_vertices());
        s.insert_range(..);
        s
    };
    let mut simplices = Vec::new();
    pull(&faces, &all, n, &mut Vec::new(), &mut simplices);
    for s in simplices {
        let pts: Vec<&QVector> = s.iter().map(|&v| &p.vertices[v]).collect();
        total += simplex_volume_nfact(&pts);
    }
    let mut fact = BigInt::one();
    for k in 2..=n {
        fact *= BigInt::from(k);
    }
    total / Rational::from_integer(fact)
}

fn pull(
    faces: &[Vec<Face>],
    verts: &FixedBitSet,
    d: usize,
    apexes: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if d == 0 {
        let mut s = apexes.clone();
        s.push(verts.ones().next().unwrap());
        out.push(s);
        return;
    }
    let apex = verts.ones().next().unwrap();
    for f in &faces[d - 1] {
        if f.vertices.is_subset(verts) && !f.vertices.contains(apex) {
            apexes.push(apex);
            pull(faces, &f.vertices, d - 1, apexes, out);
            apexes.pop();
        }
    }
}

/// Integer least common multiple of the denominators of a family of vectors.
pub fn common_denominator<'a>(vs: impl IntoIterator<Item = &'a QVector>) -> BigInt {
    let mut l = BigInt::one();
    for v in vs {
        for x in v {
            l = l.lcm(x.denom());
        }
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::{int, rat};

    fn square() -> Polytope {
        let normals = vec![
            vec![int(1), int(0)],
            vec![int(-1), int(0)],
            vec![int(0), int(1)],
            vec![int(0), int(-1)],
        ];
        Polytope::from_h(2, normals, vec![rat(1, 2); 4])
    }

    #[test]
    fn square_vertices_and_faces() {
        let p = square();
        assert_eq!(p.num_vertices(), 4);
        assert_eq!(p.num_facets(), 4);
        let f = p.faces(0);
        assert_eq!(f[0].len(), 4);
        assert_eq!(f[1].len(), 4);
        assert_eq!(volume(&p), int(1));
    }

    #[test]
    fn redundant_inequality_dropped() {
        let mut normals = square().normals.clone();
        normals.push(vec![int(1), int(1)]);
        let mut rhs = vec![rat(1, 2); 4];
        rhs.push(int(5));
        let p = Polytope::from_h(2, normals, rhs);
        assert_eq!(p.num_facets(), 4);
    }

    #[test]
    fn cube_face_counts() {
        let n = 4;
        let mut normals = Vec::new();
        for i in 0..n {
            for s in [1, -1] {
                let mut v = vec![int(0); n];
                v[i] = int(s);
                normals.push(v);
            }
        }
        let p = Polytope::from_h(n, normals, vec![int(1); 2 * n]);
        let f = p.faces(0);
        let binom = |n: usize, k: usize| (0..k).fold(1usize, |a, i| a * (n - i) / (i + 1));
        for k in 0..n {
            assert_eq!(f[k].len(), binom(n, k) << (n - k));
        }
        assert_eq!(volume(&p), int(16));
    }

    #[test]
    fn hull_of_cross_polytope_points() {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut v = vec![int(0); 3];
                v[i] = int(s);
                pts.push(v);
            }
        }
        pts.push(vec![int(0); 3]);
        let p = Polytope::from_v(3, &pts);
        assert_eq!(p.num_vertices(), 6);
        assert_eq!(p.num_facets(), 8);
        assert_eq!(volume(&p), rat(4, 3));
    }
}
