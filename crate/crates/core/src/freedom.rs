//! Free directions of a Voronoi parallelotope: the per-belt orthogonality
//! test, enumeration of all free lines, the sign condition, the red Venkov
//! graph, and the lattice map of a single segment sum.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact_core::{dot_iq, int, QVector, Rational};
use crate::lattice_core::LatticeVector;
use crate::voronoi::{belt_normal_pairs, VoronoiPolytope};
use crate::with_int_backend;
use crate::zint::{self, ZInt};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreedomError {
    #[error("the red Venkov graph is disconnected")]
    DecomposableInput,
    #[error("vector is not free for the polytope")]
    NotFree,
    #[error("facets parallel to the vector span a lattice of rank {0}")]
    RankDefect(usize),
    #[error("zero vector")]
    ZeroVector,
}

/// Normal pairs of every 6-belt, one representative per ± pair.
pub fn six_belts(p: &VoronoiPolytope) -> Vec<Vec<LatticeVector>> {
    p.belts()
        .iter()
        .filter(|b| b.length == 6)
        .map(|b| belt_normal_pairs(p, b))
        .collect()
}

/// `v` (dual coordinates) is free iff it is orthogonal to a normal of every
/// 6-belt.
pub fn is_free(p: &VoronoiPolytope, v: &[Rational]) -> bool {
    is_free_with(&six_belts(p), v)
}

pub fn is_free_with(belts: &[Vec<LatticeVector>], v: &[Rational]) -> bool {
    belts.iter().all(|b| b.iter().any(|z| dot_iq(z, v).is_zero()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreedomResult {
    /// Primitive integer directions in dual coordinates, first nonzero
    /// entry positive, sorted.
    pub lines: Vec<Vec<i64>>,
    pub finitely_free: bool,
    /// Maximal solution subspaces of dimension ≥ 2, as integer bases.
    pub residual_subspaces: Vec<Vec<Vec<i64>>>,
}

type Key = Vec<Vec<i128>>;

struct Search<'a> {
    n: usize,
    belts: &'a [Vec<Vec<i128>>],
    seen: HashMap<Key, ()>,
    leaves: Vec<Key>,
}

impl Search<'_> {
    fn satisfied(&self, w: &Key, b: &[Vec<i128>]) -> bool {
        b.iter().any(|z| {
            let mut t = w.clone();
            t.push(z.clone());
            zint::rank(&t).unwrap() == w.len()
        })
    }

    fn run(&mut self, w: Key) {
        if self.seen.insert(w.clone(), ()).is_some() {
            return;
        }
        if w.len() == self.n {
            return;
        }
        let Some(b) = self.belts.iter().find(|b| !self.satisfied(&w, b)) else {
            self.leaves.push(w);
            return;
        };
        for z in b {
            let mut t = w.clone();
            t.push(z.clone());
            let (mut e, _) = zint::echelon(&t).unwrap();
            for r in e.iter_mut() {
                zint::canonical_line(r);
            }
            self.run(canonical_rows(e));
        }
    }
}

/// Reduced echelon rows, each primitive, as a canonical subspace key.
fn canonical_rows(rows: Key) -> Key {
    let n = rows.first().map_or(0, |r| r.len());
    let ns = zint::nullspace(&rows, n).unwrap();
    let comp = zint::nullspace(&ns, n).unwrap();
    let mut out = comp;
    for r in out.iter_mut() {
        zint::canonical_line(r);
    }
    out.sort();
    out
}

/// All maximal subspaces of free vectors, found by branching over the
/// three normal pairs of each 6-belt.
pub fn free_lines(p: &VoronoiPolytope) -> FreedomResult {
    let n = p.dim();
    let belts: Vec<Vec<Vec<i128>>> = six_belts(p)
        .into_iter()
        .map(|b| b.into_iter().map(|z| z.into_iter().map(|x| x as i128).collect()).collect())
        .collect();
    let mut s = Search { n, belts: &belts, seen: HashMap::new(), leaves: Vec::new() };
    s.run(Vec::new());
    let mut leaves = s.leaves;
    leaves.sort_by_key(|w| w.len());
    leaves.dedup();
    // minimal annihilators give maximal solution spaces
    let mut minimal: Vec<Key> = Vec::new();
    for w in leaves {
        let dominated = minimal.iter().any(|m| {
            let mut t = w.clone();
            t.extend(m.iter().cloned());
            zint::rank(&t).unwrap() == w.len()
        });
        if !dominated {
            minimal.push(w);
        }
    }
    let mut lines = Vec::new();
    let mut residual = Vec::new();
    for w in minimal {
        let mut sol = zint::nullspace(&w, n).unwrap();
        for r in sol.iter_mut() {
            zint::canonical_line(r);
        }
        let sol: Vec<Vec<i64>> = sol.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect();
        match sol.len() {
            0 => {}
            1 => lines.push(sol.into_iter().next().unwrap()),
            _ => residual.push(sol),
        }
    }
    lines.sort();
    residual.sort();
    FreedomResult { finitely_free: residual.is_empty(), lines, residual_subspaces: residual }
}

/// Connected components of the red Venkov graph on facet ± pairs. Each
/// component lists canonical normals.
pub fn red_venkov_components(p: &VoronoiPolytope) -> Vec<Vec<LatticeVector>> {
    let mut nodes: Vec<LatticeVector> = p
        .facet_normals
        .iter()
        .map(|z| canonical_i64(z))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    nodes.sort();
    let index: HashMap<LatticeVector, usize> = nodes.iter().cloned().enumerate().map(|(i, z)| (z, i)).collect();
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for b in six_belts(p) {
        let ids: Vec<usize> = b.iter().map(|z| index[z]).collect();
        for w in ids.windows(2) {
            let (a, c) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != c {
                parent[a.max(c)] = a.min(c);
            }
        }
    }
    let mut comps: HashMap<usize, Vec<LatticeVector>> = HashMap::new();
    for i in 0..nodes.len() {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(nodes[i].clone());
    }
    let mut out: Vec<Vec<LatticeVector>> = comps.into_values().collect();
    out.sort();
    out
}

pub fn is_decomposable(p: &VoronoiPolytope) -> bool {
    red_venkov_components(p).len() > 1
}

fn canonical_i64(z: &[i64]) -> Vec<i64> {
    crate::exact_core::canonical_line_i64(z)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignConditionResult {
    pub holds: bool,
    pub a: Option<Rational>,
}

/// Every 6-belt has products `vᵀp` all zero, or two zero and four equal to
/// `±a` for one global `a > 0`.
pub fn sign_condition(p: &VoronoiPolytope, v: &[Rational]) -> Result<SignConditionResult, FreedomError> {
    if v.iter().all(Zero::is_zero) {
        return Err(FreedomError::ZeroVector);
    }
    if is_decomposable(p) {
        return Err(FreedomError::DecomposableInput);
    }
    let mut a: Option<Rational> = None;
    let fail = SignConditionResult { holds: false, a: None };
    for b in six_belts(p) {
        let vals: Vec<Rational> = b.iter().map(|z| dot_iq(z, v).abs()).collect();
        let zeros = vals.iter().filter(|x| x.is_zero()).count();
        match zeros {
            3 => {}
            1 => {
                let nz: Vec<&Rational> = vals.iter().filter(|x| !x.is_zero()).collect();
                if nz[0] != nz[1] {
                    return Ok(fail);
                }
                match &a {
                    None => a = Some(nz[0].clone()),
                    Some(x) if x == nz[0] => {}
                    Some(_) => return Ok(fail),
                }
            }
            _ => return Ok(fail),
        }
    }
    Ok(SignConditionResult { holds: true, a: a.or_else(|| Some(int(1))) })
}

/// `A_v x = x + 2 n_v(x) v` on the lattice of facet vectors, with
/// `n_v(z) = e_vᵀ z` for `z` in primal coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentSumLatticeMap {
    pub v: QVector,
    pub e_v: Vec<i64>,
}

impl SegmentSumLatticeMap {
    /// Layer index of a lattice vector given in primal coordinates.
    pub fn n_v(&self, z: &[i64]) -> i64 {
        z.iter().zip(&self.e_v).map(|(a, b)| a * b).sum()
    }

    /// Image of a lattice vector given in primal coordinates, returned in
    /// dual coordinates.
    pub fn apply(&self, p: &VoronoiPolytope, z: &[i64]) -> QVector {
        let x = p.lattice.dual_coords(z);
        let k = int(2 * self.n_v(z));
        x.iter().zip(&self.v).map(|(a, b)| a + &k * b).collect()
    }
}

pub fn segment_sum_map(p: &VoronoiPolytope, v: &[Rational]) -> Result<SegmentSumLatticeMap, FreedomError> {
    if v.iter().all(Zero::is_zero) {
        return Err(FreedomError::ZeroVector);
    }
    if !is_free(p, v) {
        return Err(FreedomError::NotFree);
    }
    let n = p.dim();
    let parallel: Vec<Vec<BigInt>> = p
        .facet_normals
        .iter()
        .filter(|z| dot_iq(z, v).is_zero())
        .map(|z| z.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let r = with_int_backend!(rank_of(&parallel));
    if r != n - 1 {
        return Err(FreedomError::RankDefect(r));
    }
    // the functional vanishing on the parallel facets is proportional to v
    let dir = crate::exact_core::primitive(v);
    let mut e: Vec<i64> = dir.iter().map(|x| x.to_i64().expect("small entries")).collect();
    let g = p
        .facet_normals
        .iter()
        .fold(0i64, |g, z| g.gcd(&z.iter().zip(&e).map(|(a, b)| a * b).sum::<i64>()));
    if g > 1 {
        for x in e.iter_mut() {
            *x /= g;
        }
    }
    Ok(SegmentSumLatticeMap { v: v.to_vec(), e_v: e })
}

fn rank_of<T: ZInt>(rows: &[Vec<BigInt>]) -> Option<usize> {
    let r: Vec<Vec<T>> = rows.iter().map(|x| zint::convert(x)).collect::<Option<_>>()?;
    zint::rank(&r)
}

/// Is `y` in `P + [−v, v]`? A one-variable interval test on the H-form.
pub fn in_segment_sum(p: &VoronoiPolytope, v: &[Rational], y: &[Rational]) -> bool {
    let mut lo = int(-1);
    let mut hi = int(1);
    for (a, b) in p.poly.normals.iter().zip(&p.poly.rhs) {
        // a·y − λ a·v ≤ b
        let ay = crate::exact_core::dot(a, y);
        let av = crate::exact_core::dot(a, v);
        let slack = b - &ay;
        if av.is_zero() {
            if slack.is_negative() {
                return false;
            }
        } else if av.is_positive() {
            // λ ≥ −slack/av
            let t = -&slack / &av;
            if t > lo {
                lo = t;
            }
        } else {
            let t = -&slack / &av;
            if t < hi {
                hi = t;
            }
        }
    }
    lo <= hi
}
