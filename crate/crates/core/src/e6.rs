//! The lattices E6 and E6* in the frame of six vectors `a_i` with products
//! 4/3 and 1/3, the 27 minimal vectors of E6*, and the combinatorics of
//! `P_V(E6) + Z(U)` for `U` drawn from them.
//!
//! Points are stored in A-coordinates (coefficients on the `a_i`); lattice
//! vectors of E6 in E-coordinates (coefficients on the dual frame `e_i`).
//! The dual coordinates used by the Voronoi code are `ξ_k = b_k · x` for the
//! E6 basis `b_k`, a plain dot product of E- and A-coordinates.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::exact_core::{canonical_line_i64, dot, int, rat, to_qvector, QMatrix, QVector, Rational};
use crate::lattice_core::{Lattice, LatticeVector};
use crate::matroid::{self, GraphSearch, Label, UnimodularSystem};
use crate::polytope::Polytope;
use crate::symmetry::{gram_automorphisms, indices_of, mask_of, subset_orbits, PermutationGroup};
use crate::voronoi::{belt_normal_pairs, VoronoiPolytope};
use crate::zint;
use crate::zonosum::{subset_rank, sum_hull, FreeStructure, SumContext};

pub struct E6Model {
    pub gram_a: QMatrix,
    pub gram_e: QMatrix,
    /// `(a_1 + ... + a_6) / 3` in A-coordinates.
    pub h: QVector,
    pub labels: Vec<String>,
    /// The 27 vectors `a_i`, `b_i`, `c_ij` in A-coordinates, in that order.
    pub m: Vec<QVector>,
    /// Basis of E6 in E-coordinates.
    pub e6_basis: Vec<LatticeVector>,
    basis_inv: QMatrix,
}

fn unit(i: usize) -> QVector {
    (0..6).map(|j| if i == j { int(1) } else { int(0) }).collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[Rational]) -> QVector {
    a.iter().map(|x| -x).collect()
}

fn pairs6() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            v.push((i, j));
        }
    }
    v
}

impl E6Model {
    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn get(&self, label: &str) -> &QVector {
        &self.m[self.index(label).unwrap_or_else(|| panic!("unknown label {label}"))]
    }

    /// Inner product of two points in A-coordinates.
    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        dot(x, &self.gram_a.mul_vec(y))
    }

    pub fn product(&self, i: usize, j: usize) -> Rational {
        self.inner(&self.m[i], &self.m[j])
    }

    /// Dual coordinates `ξ_k = b_k · x` of a point in A-coordinates.
    pub fn dual(&self, x: &[Rational]) -> QVector {
        self.e6_basis
            .iter()
            .map(|b| b.iter().zip(x).map(|(&c, y)| Rational::from_integer(c.into()) * y).sum())
            .collect()
    }

    /// A-coordinates of a point given in dual coordinates.
    pub fn from_dual(&self, xi: &[Rational]) -> QVector {
        // x = B^{-1} ξ where B has rows b_k
        (0..6).map(|i| (0..6).map(|k| &self.basis_inv[(i, k)] * &xi[k]).sum()).collect()
    }

    pub fn dual_int(&self, x: &[Rational]) -> Vec<i64> {
        self.dual(x).iter().map(|q| q.to_integer().to_i64().expect("integral dual coordinates")).collect()
    }

    /// Primal coordinates in the E6 basis of a lattice vector given in
    /// A-coordinates (the point `x` itself as a vector of E6), if it lies
    /// in E6.
    pub fn lattice_coords(&self, lat: &Lattice, x: &[Rational]) -> Option<LatticeVector> {
        let z = lat.primal_from_dual(&self.dual(x));
        z.iter().map(|q| if q.is_integer() { q.to_integer().to_i64() } else { None }).collect()
    }

    /// Primal coordinates of a vector given in E-coordinates.
    pub fn from_e_coords(&self, w: &[i64]) -> LatticeVector {
        // w = Σ z_k b_k, so z = w B^{-1}
        (0..6)
            .map(|k| {
                let s: Rational = (0..6).map(|i| Rational::from_integer(w[i].into()) * &self.basis_inv[(i, k)]).sum();
                s.to_integer().to_i64().expect("vector of E6")
            })
            .collect()
    }

    /// Canonical primitive direction of `m_i` in dual coordinates.
    pub fn line(&self, i: usize) -> Vec<i64> {
        canonical_line_i64(&self.dual_int(&self.m[i]))
    }

    /// Integer representation `3 x` in A-coordinates.
    pub fn scaled(&self, i: usize) -> Vec<i64> {
        self.m[i].iter().map(|q| (q * int(3)).to_integer().to_i64().unwrap()).collect()
    }

    pub fn scaled_system(&self, idx: &[usize]) -> Vec<Vec<i64>> {
        idx.iter().map(|&i| self.scaled(i)).collect()
    }

    /// Adjacency of the graph on `M` joining vectors with product 1/3.
    pub fn skew_graph(&self) -> Vec<u32> {
        let third = rat(1, 3);
        (0..27)
            .map(|i| (0..27).filter(|&j| j != i && self.product(i, j) == third).fold(0u32, |m, j| m | 1 << j))
            .collect()
    }

    /// Unordered pairs `{q', q''}` with `q + q' + q'' = 0`.
    pub fn t_pairs(&self, q: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..27 {
            for j in i + 1..27 {
                if i != q && j != q && add(&add(&self.m[q], &self.m[i]), &self.m[j]).iter().all(Zero::is_zero) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Index of a point of `M`, or of `−M` with the flag set.
    pub fn signed_index(&self, x: &[Rational]) -> Option<(usize, bool)> {
        if let Some(i) = self.m.iter().position(|q| q.as_slice() == x) {
            return Some((i, false));
        }
        let nx = neg(x);
        self.m.iter().position(|q| *q == nx).map(|i| (i, true))
    }
}

/// The model together with E6 (Gram of the basis under `gram_e`) and E6*.
pub fn build_e6() -> (E6Model, Lattice, Lattice) {
    let mut gram_a = QMatrix::zeros(6, 6);
    let mut gram_e = QMatrix::zeros(6, 6);
    for i in 0..6 {
        for j in 0..6 {
            gram_a[(i, j)] = if i == j { rat(4, 3) } else { rat(1, 3) };
            gram_e[(i, j)] = if i == j { rat(8, 9) } else { rat(-1, 9) };
        }
    }
    let h: QVector = vec![rat(1, 3); 6];
    let mut labels = Vec::new();
    let mut m = Vec::new();
    for i in 0..6 {
        labels.push(format!("a{}", i + 1));
        m.push(unit(i));
    }
    for i in 0..6 {
        labels.push(format!("b{}", i + 1));
        m.push(sub(&unit(i), &h));
    }
    for (i, j) in pairs6() {
        labels.push(format!("c{}{}", i + 1, j + 1));
        m.push(sub(&sub(&h, &unit(i)), &unit(j)));
    }
    let e6_basis: Vec<LatticeVector> = vec![
        vec![1, -1, 0, 0, 0, 0],
        vec![0, 1, -1, 0, 0, 0],
        vec![0, 0, 1, -1, 0, 0],
        vec![0, 0, 0, 1, -1, 0],
        vec![0, 0, 0, 0, 1, -1],
        vec![0, 0, 0, 1, 1, 1],
    ];
    let bm = QMatrix::from_i64(&e6_basis);
    let basis_inv = bm.inverse().expect("basis is nonsingular");
    let gram = bm.mul(&gram_e).mul(&bm.transpose());
    let e6 = Lattice::new(gram.clone(), Some("E6".into())).expect("positive definite");
    let e6s = Lattice::new(gram.inverse().unwrap(), Some("E6*".into())).expect("positive definite");
    let model = E6Model { gram_a, gram_e, h, labels, m, e6_basis, basis_inv };
    check_model(&model);
    (model, e6, e6s)
}

fn check_model(md: &E6Model) {
    assert_eq!(md.gram_a.inverse().as_ref(), Some(&md.gram_e));
    for e in &md.e6_basis {
        assert_eq!(e.iter().sum::<i64>().rem_euclid(3), 0);
    }
    let idx = |s: String| md.index(&s).unwrap();
    for i in 1..=6 {
        for j in 1..=6 {
            if i == j {
                continue;
            }
            let c = if i < j { format!("c{i}{j}") } else { format!("c{j}{i}") };
            let s = add(&add(&md.m[idx(format!("a{i}"))], &md.m[idx(format!("b{j}"))]), &md.m[idx(c)]);
            assert!(s.iter().all(Zero::is_zero));
        }
    }
    for i in 0..27 {
        assert_eq!(md.product(i, i), rat(4, 3));
        for j in i + 1..27 {
            let p = md.product(i, j);
            assert!(p == rat(1, 3) || p == rat(-2, 3));
        }
    }
}

/// Belt triples in E-coordinates, grouped by type (i), (ii), (iii).
pub fn belt_triples() -> [Vec<[LatticeVector; 3]>; 3] {
    let e = |i: usize| -> Vec<i64> { (0..6).map(|k| i64::from(k == i)).collect() };
    let lin = |a: &[i64], b: &[i64], s: i64| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + s * y).collect() };
    let es = |s: &[usize]| -> Vec<i64> { (0..6).map(|k| i64::from(s.contains(&k))).collect() };
    let mut t1 = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                t1.push([lin(&e(i), &e(j), -1), lin(&e(j), &e(k), -1), lin(&e(k), &e(i), -1)]);
            }
        }
    }
    let triples3: Vec<Vec<usize>> = crate::zonosum::combinations(6, 3);
    let mut t2 = Vec::new();
    for s in triples3.iter().filter(|s| s.contains(&0)) {
        let comp: Vec<usize> = (0..6).filter(|k| !s.contains(k)).collect();
        t2.push([es(s), es(&comp), vec![1; 6]]);
    }
    let mut t3 = Vec::new();
    for s in &triples3 {
        for &i in s {
            for j in (0..6).filter(|k| !s.contains(k)) {
                let d = lin(&e(i), &e(j), -1);
                let tr = [es(s), d.clone(), lin(&es(s), &d, -1)];
                // (S, i, j) and (S - i + j, j, i) give the same triple
                if !t3.iter().any(|x: &[Vec<i64>; 3]| triple_key(x) == triple_key(&tr)) {
                    t3.push(tr);
                }
            }
        }
    }
    [t1, t2, t3]
}

/// Key of a belt: the sorted canonical lines of its normals.
fn triple_key(zs: &[LatticeVector]) -> Vec<Vec<i64>> {
    let mut k: Vec<Vec<i64>> = zs.iter().map(|z| canonical_line_i64(z)).collect();
    k.sort();
    k.dedup();
    k
}

pub struct BeltTripleCheck {
    pub counts: [usize; 3],
    pub matches_voronoi: bool,
    pub orbit_size: usize,
}

/// Compares the listed triples with the belts of `P_V(E6)` and computes
/// the orbit of one belt under the automorphisms of the root system.
pub fn check_belt_triples(md: &E6Model, v: &VoronoiPolytope) -> BeltTripleCheck {
    let t = belt_triples();
    let counts = [t[0].len(), t[1].len(), t[2].len()];
    let listed: BTreeSet<Vec<Vec<i64>>> = t
        .iter()
        .flatten()
        .map(|tr| triple_key(&tr.iter().map(|w| md.from_e_coords(w)).collect::<Vec<_>>()))
        .collect();
    let belts = v.belts();
    let actual: BTreeSet<Vec<Vec<i64>>> = belts.iter().map(|b| triple_key(&belt_normal_pairs(v, b))).collect();
    let matches_voronoi = listed.len() == 120 && listed == actual;
    // orbit under the automorphisms of the 72 roots
    let roots = &v.facet_normals;
    let vecs: Vec<QVector> = roots.iter().map(|z| to_qvector(z)).collect();
    let g = gram_automorphisms(&vecs, v.lattice.gram(), None);
    let index: HashMap<&Vec<i64>, usize> = roots.iter().enumerate().map(|(i, z)| (z, i)).collect();
    let as_set = |b: &Vec<Vec<i64>>| -> Vec<usize> {
        let mut s: Vec<usize> = b
            .iter()
            .flat_map(|z| [z.clone(), z.iter().map(|x| -x).collect::<Vec<i64>>()])
            .map(|z| index[&z])
            .collect();
        s.sort_unstable();
        s
    };
    let start = as_set(actual.iter().next().expect("belts exist"));
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(s) = queue.pop() {
        for gen in g.generators() {
            let mut img: Vec<usize> = s.iter().map(|&i| gen[i] as usize).collect();
            img.sort_unstable();
            if seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    BeltTripleCheck { counts, matches_voronoi, orbit_size: seen.len() }
}

/// Automorphisms of `M ∪ −M` preserving products, acting on the 27 lines.
pub fn m_line_group(md: &E6Model) -> PermutationGroup {
    let mut vecs = Vec::new();
    for q in &md.m {
        vecs.push(q.clone());
        vecs.push(neg(q));
    }
    let g = gram_automorphisms(&vecs, &md.gram_a, None);
    g.induced(27, |i| i / 2, |l| 2 * l)
}

fn has_clique(adj: &[u32], cand: u32, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < need {
        return false;
    }
    let mut c = cand;
    while c != 0 {
        let v = c.trailing_zeros() as usize;
        c &= c - 1;
        if has_clique(adj, c & adj[v], need - 1) {
            return true;
        }
    }
    false
}

/// Does `U` (indices into `M`) contain five vectors with pairwise product
/// 1/3?
pub fn pup_forbidden(md: &E6Model, u: &[usize]) -> bool {
    let adj = md.skew_graph();
    pup_forbidden_with(&adj, u)
}

pub fn pup_forbidden_with(adj: &[u32], u: &[usize]) -> bool {
    has_clique(adj, u.iter().fold(0u32, |m, &i| m | 1 << i), 5)
}

pub struct CliqueCensus {
    pub cliques: Vec<u32>,
    /// Number of cliques lying in exactly `k` of the sets `T(q)`.
    pub by_cover: BTreeMap<usize, usize>,
    pub all_of_form_tj: bool,
    /// Orbit sizes under the automorphisms of `M`, sorted.
    pub orbit_sizes: Vec<usize>,
}

fn cliques_of(adj: &[u32], k: usize) -> Vec<u32> {
    fn rec(adj: &[u32], cur: u32, cand: u32, left: usize, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros();
            c &= c - 1;
            rec(adj, cur | 1 << v, c & adj[v as usize], left - 1, out);
        }
    }
    let mut out = Vec::new();
    rec(adj, 0, (1u32 << adj.len()) - 1, k, &mut out);
    out
}

/// All five-element sets of pairwise product 1/3, each matched against the
/// sets `T_J(q)`.
pub fn five_clique_census(md: &E6Model) -> CliqueCensus {
    let adj = md.skew_graph();
    let cliques = cliques_of(&adj, 5);
    let tp: Vec<Vec<(usize, usize)>> = (0..27).map(|q| md.t_pairs(q)).collect();
    let is_tj = |x: u32, q: usize| -> bool {
        tp[q].iter().all(|&(a, b)| ((x >> a & 1) + (x >> b & 1)) == 1)
    };
    let mut by_cover = BTreeMap::new();
    let mut all = true;
    for &x in &cliques {
        let k = (0..27).filter(|&q| is_tj(x, q)).count();
        all &= k > 0;
        *by_cover.entry(k).or_insert(0) += 1;
    }
    let g = m_line_group(md);
    let masks: Vec<u128> = cliques.iter().map(|&x| x as u128).collect();
    let reps = subset_orbits(&g, &masks);
    let mut orbit_sizes: Vec<usize> = reps.iter().map(|&r| (g.order() / g.stabilizer_order(r)) as usize).collect();
    orbit_sizes.sort_unstable();
    CliqueCensus { cliques, by_cover, all_of_form_tj: all, orbit_sizes }
}

/// The vectors `p − p'` of E6 with `p·p' = 1/3` (`R`) and with
/// `p·p' = −2/3` (`T`), in A-coordinates. Each `T` vector comes with its
/// unique pair.
pub fn r_and_t(md: &E6Model) -> (Vec<QVector>, Vec<(QVector, usize, usize)>) {
    let mut r = BTreeSet::new();
    let mut t = Vec::new();
    for i in 0..27 {
        for j in 0..27 {
            if i == j {
                continue;
            }
            let d = sub(&md.m[i], &md.m[j]);
            if md.product(i, j) == rat(1, 3) {
                r.insert(d);
            } else {
                t.push((d, i, j));
            }
        }
    }
    (r.into_iter().collect(), t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaneType {
    A,
    B,
    C,
    D,
    E,
}

/// Invariants of a planar section of `R ∪ T`: counts of `R` and `T`
/// vectors and the number of distinct points of `M` used by its `T`
/// vectors.
pub fn plane_signature(md: &E6Model, members: &[QVector]) -> (usize, usize, usize) {
    let (rset, tlist) = r_and_t(md);
    let rset: HashSet<&QVector> = rset.iter().collect();
    let tmap: HashMap<&QVector, (usize, usize)> = tlist.iter().map(|(d, i, j)| (d, (*i, *j))).collect();
    let mut nr = 0;
    let mut nt = 0;
    let mut ends = BTreeSet::new();
    for x in members {
        if rset.contains(x) {
            nr += 1;
        } else if let Some(&(i, j)) = tmap.get(x) {
            nt += 1;
            ends.insert(i);
            ends.insert(j);
        }
    }
    (nr, nt, ends.len())
}

pub fn classify_signature(sig: (usize, usize, usize)) -> Option<PlaneType> {
    match sig {
        (4, 4, _) => Some(PlaneType::A),
        (6, 0, _) => Some(PlaneType::B),
        (0, 6, 3) => Some(PlaneType::C),
        (0, 6, 6) => Some(PlaneType::D),
        (2, 4, _) => Some(PlaneType::E),
        _ => None,
    }
}

/// Every 2-plane meeting `R ∪ T` in at least six vectors, with its members.
pub fn rich_planes(md: &E6Model) -> Vec<Vec<QVector>> {
    let (r, t) = r_and_t(md);
    let all: Vec<QVector> = r.into_iter().chain(t.into_iter().map(|x| x.0)).collect();
    let ints: Vec<Vec<i128>> =
        all.iter().map(|x| x.iter().map(|q| (q * int(3)).to_integer().to_i128().unwrap()).collect()).collect();
    let keyed: Vec<(Vec<Vec<i128>>, usize, usize)> = (0..all.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let ints = &ints;
            (i + 1..ints.len()).filter_map(move |j| {
                let rows = vec![ints[i].clone(), ints[j].clone()];
                let (e, _) = zint::reduced_echelon(&rows).unwrap();
                (e.len() == 2).then_some((e, i, j))
            })
        })
        .collect();
    let mut planes: HashMap<Vec<Vec<i128>>, BTreeSet<usize>> = HashMap::new();
    for (k, i, j) in keyed {
        let e = planes.entry(k).or_default();
        e.insert(i);
        e.insert(j);
    }
    let mut out: Vec<Vec<QVector>> = planes
        .into_values()
        .filter(|s| s.len() >= 6)
        .map(|s| s.into_iter().map(|i| all[i].clone()).collect())
        .collect();
    out.sort();
    out
}

/// Number of rich planes of each type; `None` collects unclassified ones.
pub fn plane_census(md: &E6Model) -> BTreeMap<Option<PlaneType>, usize> {
    let mut out = BTreeMap::new();
    for p in rich_planes(md) {
        *out.entry(classify_signature(plane_signature(md, &p))).or_insert(0) += 1;
    }
    out
}

/// The planar section of `R ∪ T` through two given vectors.
pub fn plane_through(md: &E6Model, x: &[Rational], y: &[Rational]) -> Vec<QVector> {
    let (r, t) = r_and_t(md);
    let span = crate::exact_core::Subspace::span(6, &[x.to_vec(), y.to_vec()]);
    let mut v: Vec<QVector> = r.into_iter().chain(t.into_iter().map(|x| x.0)).filter(|z| span.contains(z)).collect();
    v.sort();
    v
}

/// Lattice spanned by the facet vectors of an explicit parallelotope:
/// twice the centroid of every facet. Returned as a Hermite basis of the
/// vectors scaled by `scale`.
fn facet_lattice(q: &Polytope, scale: &Rational) -> Vec<Vec<num_bigint::BigInt>> {
    let rows: Vec<Vec<num_bigint::BigInt>> = q
        .facet_vertices
        .iter()
        .map(|f| {
            q.centroid(f)
                .iter()
                .map(|x| {
                    let y = x * int(2) * scale;
                    assert!(y.is_integer(), "scale must clear denominators");
                    y.to_integer()
                })
                .collect()
        })
        .collect();
    zint::hermite(&rows).unwrap()
}

fn lattice_contains(basis: &[Vec<num_bigint::BigInt>], x: &[num_bigint::BigInt]) -> bool {
    let mut rows = basis.to_vec();
    rows.push(x.to_vec());
    zint::hermite(&rows).unwrap() == basis
}

/// Is `[x, y] ⊕ z(p)` a standard 2-face of `P + z(p)`? Points are in dual
/// coordinates; `x` and `y` are adjacent vertices of `P`.
pub fn strongly_transversal(v: &VoronoiPolytope, x: &[Rational], y: &[Rational], p: &[Rational]) -> bool {
    let q = sum_hull(v, &[p.to_vec()]);
    let corners = [add(x, p), sub(x, p), add(y, p), sub(y, p)];
    let mut verts = FixedBitSet::with_capacity(q.num_vertices());
    for c in &corners {
        match q.vertices.iter().position(|w| w == c) {
            Some(k) => verts.insert(k),
            None => return false,
        }
    }
    let face = q.closure(&verts);
    if face.dim != 2 || face.vertices != verts {
        return false;
    }
    let den = crate::polytope::common_denominator(q.vertices.iter());
    let scale = Rational::from_integer(den);
    let lat = facet_lattice(&q, &scale);
    let t: Vec<num_bigint::BigInt> = add(x, y).iter().map(|c| (c * &scale).to_integer()).collect();
    lattice_contains(&lat, &t)
}

/// Indices `p` of `M` for which `[x, y] ⊕ z(p)` is standard.
pub fn transversal_set(md: &E6Model, v: &VoronoiPolytope, x: &[Rational], y: &[Rational]) -> Vec<usize> {
    let (dx, dy) = (md.dual(x), md.dual(y));
    (0..27)
        .into_par_iter()
        .filter(|&i| strongly_transversal(v, &dx, &dy, &md.dual(&md.m[i])))
        .collect()
}

/// Does `P_V(E6) + Z(U)` have a 6-belt whose facets extend faces of
/// `P_V(E6)` with standard vectors `±s_1, ±s_2, ±s_3` (A-coordinates)?
pub fn has_corresponding_belt(md: &E6Model, ctx: &SumContext, u: &[usize], s: &[QVector; 3]) -> bool {
    let gens: Vec<Vec<i64>> = u.iter().map(|&i| md.line(i)).collect();
    let (facets, belts) = ctx.sum_belts(&gens);
    let mut want: Vec<QVector> = s.iter().flat_map(|x| [md.dual(x), md.dual(&neg(x))]).collect();
    want.sort();
    belts.iter().filter(|b| b.len() == 6).any(|b| {
        let mut got: Vec<QVector> = b.iter().map(|&f| ctx.face_standard_vector(facets[f].base_face)).collect();
        got.sort();
        got == want
    })
}

/// Every edge of `P_V(E6)` is an r-edge (`q, q'` both in `M` or both in
/// `−M` with product 1/3) or an m-edge (`q` and `−q'` with `q·q' = −2/3`).
/// Returns the counts of both kinds and of edges of neither kind.
pub fn edge_dichotomy(md: &E6Model, v: &VoronoiPolytope) -> (usize, usize, usize) {
    let faces = v.poly.faces(1);
    let (mut r, mut m, mut other) = (0, 0, 0);
    for f in faces[1].iter() {
        let ends: Vec<(usize, bool)> = f
            .vertices
            .ones()
            .map(|k| md.signed_index(&md.from_dual(&v.vertices()[k])).expect("vertex in ±M"))
            .collect();
        let ((i, si), (j, sj)) = (ends[0], ends[1]);
        let p = md.product(i, j);
        if si == sj && p == rat(1, 3) {
            r += 1;
        } else if si != sj && p == rat(-2, 3) {
            m += 1;
        } else {
            other += 1;
        }
    }
    (r, m, other)
}

/// A row of the table of maximal feasible subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table2Row {
    pub size: usize,
    pub dim: usize,
    pub stab: u128,
    pub labels: Vec<String>,
    pub unimodular: bool,
    pub label: Label,
    pub graph: Option<matroid::Graph>,
    pub is_r12: bool,
    pub is_r10_sum_c3: bool,
}

/// Reference rows: `(nr, |U|, dim U, |Stab U|, status)`.
pub const TABLE2: [(usize, usize, usize, u128, &str); 10] = [
    (1, 9, 5, 384, "graphic"),
    (2, 12, 5, 96, "cographic"),
    (3, 12, 6, 12, "R12"),
    (4, 12, 6, 12, "R10+C3"),
    (5, 13, 6, 4, "cographic"),
    (6, 13, 6, 4, "cographic"),
    (7, 13, 6, 2, "cographic"),
    (8, 14, 6, 8, "graphic"),
    (9, 14, 6, 24, "graphic"),
    (10, 15, 6, 24, "cographic"),
];

/// Face numbers of the Schläfli polytope by dimension, with the splits of
/// dimensions 4 and 5.
pub const TABLE1: [usize; 7] = [27, 216, 720, 1080, 648, 99, 1];

/// `(free lines, min forbidden orbits, max feasible orbits, dim max, size max)`.
pub const TABLE3_E6: (usize, usize, usize, usize, usize) = (27, 2, 10, 6, 15);
pub const TABLE3_E7: (usize, usize, usize, usize, usize) = (28, 2, 4, 7, 14);

/// Maps line indices of a free structure to indices of `M`.
pub fn line_to_m(md: &E6Model, lines: &[Vec<i64>]) -> Vec<usize> {
    let by_line: HashMap<Vec<i64>, usize> = (0..27).map(|i| (md.line(i), i)).collect();
    lines.iter().map(|l| by_line[l]).collect()
}

pub fn table2_row(md: &E6Model, fs: &FreeStructure, mask: u128, max_vertices: usize) -> Table2Row {
    let to_m = line_to_m(md, &fs.lines);
    let idx: Vec<usize> = indices_of(mask).into_iter().map(|i| to_m[i]).collect();
    let vecs = md.scaled_system(&idx);
    let sys = UnimodularSystem::new(vecs.clone());
    let g = matroid::try_graphic(&sys, max_vertices);
    let label = matroid::classify(&sys, max_vertices);
    let r12 = UnimodularSystem::new(matroid::r12());
    let r10 = UnimodularSystem::new(matroid::r10_sum_c3());
    Table2Row {
        size: idx.len(),
        dim: subset_rank(&fs.lines, mask),
        stab: fs.group.stabilizer_order(mask),
        labels: idx.iter().map(|&i| md.labels[i].clone()).collect(),
        unimodular: matroid::is_unimodular(&vecs),
        label,
        graph: match g {
            GraphSearch::Found(gr) => Some(gr),
            GraphSearch::Unknown { .. } => None,
        },
        is_r12: matroid::matroid_isomorphic(&sys, &r12),
        is_r10_sum_c3: matroid::matroid_isomorphic(&sys, &r10),
    }
}

impl Table2Row {
    /// Status in the vocabulary of the reference table.
    pub fn status(&self) -> &'static str {
        if self.is_r12 {
            "R12"
        } else if self.is_r10_sum_c3 {
            "R10+C3"
        } else {
            match self.label {
                Label::Graphic | Label::GraphicAndCographic => "graphic",
                Label::Cographic => "cographic",
                Label::Neither => "neither",
                Label::Unknown => "unknown",
            }
        }
    }

    /// Does the row agree with a reference status? A matroid that is both
    /// graphic and cographic matches either.
    pub fn status_matches(&self, want: &str) -> bool {
        match want {
            "R12" => self.is_r12,
            "R10+C3" => self.is_r10_sum_c3,
            "graphic" => matches!(self.label, Label::Graphic | Label::GraphicAndCographic),
            "cographic" => matches!(self.label, Label::Cographic | Label::GraphicAndCographic),
            _ => false,
        }
    }
}

/// The maximal feasible orbits as table rows, each matched to a reference
/// row number. Rows are matched on `(|U|, dim, |Stab|)`, preferring rows
/// whose status also agrees.
pub fn reproduce_table2(md: &E6Model, fs: &FreeStructure) -> Vec<(Option<usize>, Table2Row)> {
    let rows: Vec<Table2Row> =
        fs.enumeration.maximal_feasible.par_iter().map(|&m| table2_row(md, fs, m, 10)).collect();
    let mut nr: Vec<Option<usize>> = vec![None; rows.len()];
    let mut used = [false; 10];
    // status first, so that rows sharing (|U|, dim, |Stab|) are told apart
    for with_status in [true, false] {
        for (i, row) in rows.iter().enumerate() {
            if nr[i].is_some() {
                continue;
            }
            let k = (0..10).find(|&k| {
                let (_, s, d, st, status) = TABLE2[k];
                !used[k] && s == row.size && d == row.dim && st == row.stab && (!with_status || row.status_matches(status))
            });
            if let Some(k) = k {
                used[k] = true;
                nr[i] = Some(TABLE2[k].0);
            }
        }
    }
    let mut out: Vec<(Option<usize>, Table2Row)> = nr.into_iter().zip(rows).collect();
    out.sort_by_key(|(nr, r)| (nr.unwrap_or(usize::MAX), r.size));
    out
}

/// Mask of a list of labels.
pub fn mask_of_labels(md: &E6Model, labels: &[&str]) -> u128 {
    mask_of(&labels.iter().map(|l| md.index(l).expect("label")).collect::<Vec<_>>())
}

pub fn indices_of_labels(md: &E6Model, labels: &[&str]) -> Vec<usize> {
    labels.iter().map(|l| md.index(l).expect("label")).collect()
}

/// Standard vectors of E6 (all coset minima) in A-coordinates.
pub fn standard_vectors_a(md: &E6Model, lat: &Lattice) -> Vec<QVector> {
    let mut out: Vec<QVector> = lat
        .standard_vectors()
        .into_values()
        .flatten()
        .map(|z| md.from_dual(&lat.dual_coords(&z)))
        .collect();
    out.sort();
    out
}
