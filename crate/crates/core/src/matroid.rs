//! Matroids represented by integer vector systems: unimodularity, circuits,
//! isomorphism, and a bounded search for graph realizations.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::exact_core::{QMatrix, Rational};
use crate::zint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularSystem {
    pub vectors: Vec<Vec<i64>>,
    pub rank: usize,
    pub circuits: Vec<Vec<usize>>,
}

impl UnimodularSystem {
    pub fn new(vectors: Vec<Vec<i64>>) -> Self {
        let rank = matrix_rank(&vectors);
        let circuits = circuits(&vectors);
        UnimodularSystem { vectors, rank, circuits }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn circuit_masks(&self) -> Vec<u64> {
        self.circuits.iter().map(|c| mask(c)).collect()
    }
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| m | 1 << i)
}

fn bits(m: u64) -> Vec<usize> {
    (0..64).filter(|i| m >> i & 1 == 1).collect()
}

fn to_i128(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn rank_i128(rows: &[Vec<i128>]) -> usize {
    match zint::rank::<i128>(rows) {
        Some(r) => r,
        None => {
            let big: Vec<Vec<num_bigint::BigInt>> =
                rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
            zint::rank(&big).expect("BigInt arithmetic cannot overflow")
        }
    }
}

pub fn matrix_rank(rows: &[Vec<i64>]) -> usize {
    rank_i128(&to_i128(rows))
}

/// Greedy basis: the lexicographically first maximal independent subset.
pub fn greedy_basis(rows: &[Vec<i64>]) -> Vec<usize> {
    let rows = to_i128(rows);
    let mut chosen: Vec<Vec<i128>> = Vec::new();
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        chosen.push(r.clone());
        if rank_i128(&chosen) == chosen.len() {
            out.push(i);
        } else {
            chosen.pop();
        }
    }
    out
}

/// Coordinates of every vector in the basis `basis` (indices into `rows`).
/// Row `i` of the result holds the coefficients of `rows[i]`.
pub fn basis_coordinates(rows: &[Vec<i64>], basis: &[usize]) -> Vec<Vec<Rational>> {
    let r = basis.len();
    if r == 0 {
        return vec![Vec::new(); rows.len()];
    }
    let b: Vec<Vec<i128>> = basis.iter().map(|&i| rows[i].iter().map(|&x| x as i128).collect()).collect();
    // independent columns of the basis rows
    let bt: Vec<Vec<i128>> = (0..rows[0].len()).map(|c| b.iter().map(|row| row[c]).collect()).collect();
    let mut cols = Vec::new();
    let mut acc: Vec<Vec<i128>> = Vec::new();
    for (c, col) in bt.iter().enumerate() {
        acc.push(col.clone());
        if rank_i128(&acc) == acc.len() {
            cols.push(c);
        } else {
            acc.pop();
        }
    }
    let square = QMatrix::from_i64(
        &basis.iter().map(|&i| cols.iter().map(|&c| rows[i][c]).collect()).collect::<Vec<Vec<i64>>>(),
    );
    let inv = square.inverse().expect("basis columns are independent");
    rows.iter()
        .map(|row| {
            let s: Vec<Rational> = cols.iter().map(|&c| Rational::from_integer(row[c].into())).collect();
            (0..r).map(|k| (0..r).map(|j| &s[j] * &inv[(j, k)]).sum()).collect()
        })
        .collect()
}

fn det_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    // Bareiss elimination
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let p = (k + 1..n).find(|&i| a[i][k] != 0)?;
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn det_or_zero(a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    if rank_i128(&a) < n {
        return 0;
    }
    match det_i128(a.clone()) {
        Some(d) => d,
        None => {
            let q = QMatrix::from_rows(
                a.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect(),
            );
            q.determinant().to_integer().to_i128().unwrap_or(i128::MAX)
        }
    }
}

/// True iff every nonzero maximal minor has the same absolute value, i.e.
/// every vector has integer coordinates in every basis drawn from the set.
pub fn is_unimodular(rows: &[Vec<i64>]) -> bool {
    let basis = greedy_basis(rows);
    let r = basis.len();
    if r == 0 {
        return true;
    }
    let coords = basis_coordinates(rows, &basis);
    if coords.iter().flatten().any(|x| !x.is_integer()) {
        return false;
    }
    let x: Vec<Vec<i128>> =
        coords.iter().map(|r| r.iter().map(|q| q.to_integer().to_i128().unwrap_or(i128::MAX)).collect()).collect();
    if x.iter().flatten().any(|v| v.abs() > 1) {
        return false;
    }
    let subsets = crate::zonosum::combinations(rows.len(), r);
    subsets.par_iter().all(|s| {
        let m: Vec<Vec<i128>> = s.iter().map(|&i| x[i].clone()).collect();
        det_or_zero(m).abs() <= 1
    })
}

/// All minimal dependent subsets, as sorted index lists in size-then-lex order.
pub fn circuits(rows: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let m = rows.len();
    assert!(m <= 64, "ground set larger than 64 elements");
    let rows = to_i128(rows);
    let mut out = Vec::new();
    let mut level: HashSet<u64> = HashSet::new();
    level.insert(0);
    let mut size = 0;
    while !level.is_empty() {
        size += 1;
        let mut cur: Vec<u64> = level.iter().copied().collect();
        cur.sort_unstable();
        let results: Vec<(Vec<u64>, Vec<u64>)> = cur
            .par_iter()
            .map(|&s| {
                let top = if s == 0 { 0 } else { 64 - s.leading_zeros() as usize };
                let mut ind = Vec::new();
                let mut circ = Vec::new();
                for j in top..m {
                    let t = s | 1 << j;
                    if !bits(s).iter().all(|&i| level.contains(&(t & !(1 << i)))) {
                        continue;
                    }
                    let sub: Vec<Vec<i128>> = bits(t).iter().map(|&i| rows[i].clone()).collect();
                    if rank_i128(&sub) == size {
                        ind.push(t);
                    } else {
                        circ.push(t);
                    }
                }
                (ind, circ)
            })
            .collect();
        let mut next = HashSet::new();
        let mut found = Vec::new();
        for (ind, circ) in results {
            next.extend(ind);
            found.extend(circ);
        }
        found.sort_unstable();
        out.extend(found.into_iter().map(bits));
        level = next;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Checks the two circuit axioms: no circuit contains another, and circuit
/// elimination.
pub fn circuit_axioms_hold(circuits: &[Vec<usize>]) -> bool {
    let masks: Vec<u64> = circuits.iter().map(|c| mask(c)).collect();
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            if a & b == a || a & b == b {
                return false;
            }
            let common = a & b;
            if common == 0 {
                continue;
            }
            let union = a | b;
            for e in bits(common) {
                let target = union & !(1 << e);
                if !masks.iter().any(|&c| c & target == c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Per-element invariant: the number of circuits of each size containing it.
fn profiles(m: usize, circuits: &[u64]) -> Vec<Vec<usize>> {
    let maxlen = circuits.iter().map(|c| c.count_ones() as usize).max().unwrap_or(0);
    let mut p = vec![vec![0; maxlen + 1]; m];
    for &c in circuits {
        let l = c.count_ones() as usize;
        for i in bits(c) {
            p[i][l] += 1;
        }
    }
    p
}

/// Bijection `f` from the ground set of `a` to that of `b` mapping circuits
/// onto circuits, if one exists.
pub fn matroid_isomorphism(a: &UnimodularSystem, b: &UnimodularSystem) -> Option<Vec<usize>> {
    let m = a.len();
    if m != b.len() || a.rank != b.rank || a.circuits.len() != b.circuits.len() {
        return None;
    }
    let ca = a.circuit_masks();
    let cb = b.circuit_masks();
    let pa = profiles(m, &ca);
    let pb = profiles(m, &cb);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    // order: repeatedly take the element sharing most circuits with the prefix
    let mut order = Vec::with_capacity(m);
    let mut placed = 0u64;
    while order.len() < m {
        let best = (0..m)
            .filter(|&i| placed >> i & 1 == 0)
            .max_by_key(|&i| {
                let shared = ca.iter().filter(|&&c| c >> i & 1 == 1 && c & placed != 0).count();
                (shared, std::cmp::Reverse(i))
            })
            .unwrap();
        order.push(best);
        placed |= 1 << best;
    }
    // circuits that become complete when order[k] is placed
    let mut pos = vec![0; m];
    for (k, &e) in order.iter().enumerate() {
        pos[e] = k;
    }
    let mut completes: Vec<Vec<u64>> = vec![Vec::new(); m];
    for &c in &ca {
        let last = bits(c).into_iter().map(|i| pos[i]).max().unwrap();
        completes[last].push(c);
    }
    let set_b: HashSet<u64> = cb.iter().copied().collect();
    let mut f = vec![usize::MAX; m];
    let mut used = 0u64;
    fn rec(
        k: usize,
        order: &[usize],
        completes: &[Vec<u64>],
        pa: &[Vec<usize>],
        pb: &[Vec<usize>],
        set_b: &HashSet<u64>,
        cb: &[u64],
        f: &mut Vec<usize>,
        used: &mut u64,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let e = order[k];
        for t in 0..pb.len() {
            if *used >> t & 1 == 1 || pa[e] != pb[t] {
                continue;
            }
            f[e] = t;
            *used |= 1 << t;
            let ok = completes[k].iter().all(|&c| set_b.contains(&bits(c).iter().fold(0u64, |m, &i| m | 1 << f[i])))
                && cb
                    .iter()
                    .filter(|&&c| c >> t & 1 == 1 && c & !*used == 0)
                    .count()
                    == completes[k].len();
            if ok && rec(k + 1, order, completes, pa, pb, set_b, cb, f, used) {
                return true;
            }
            *used &= !(1 << t);
            f[e] = usize::MAX;
        }
        false
    }
    if rec(0, &order, &completes, &pa, &pb, &set_b, &cb, &mut f, &mut used) {
        Some(f)
    } else {
        None
    }
}

pub fn matroid_isomorphic(a: &UnimodularSystem, b: &UnimodularSystem) -> bool {
    matroid_isomorphism(a, b).is_some()
}

/// A multigraph whose edge `i` corresponds to ground element `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph { vertices: n, edges }
    }

    /// Signed incidence vectors `e_v - e_u` of the edges; they represent the
    /// cycle matroid.
    pub fn incidence_vectors(&self) -> Vec<Vec<i64>> {
        self.edges
            .iter()
            .map(|&(u, v)| {
                let mut x = vec![0; self.vertices];
                x[u] -= 1;
                x[v] += 1;
                x
            })
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSearch {
    Found(Graph),
    /// No graph was found. `exhaustive` is true when the search space was
    /// covered completely, which certifies that no graph exists.
    Unknown { exhaustive: bool },
}

impl GraphSearch {
    pub fn graph(&self) -> Option<&Graph> {
        match self {
            GraphSearch::Found(g) => Some(g),
            GraphSearch::Unknown { .. } => None,
        }
    }
}

const NODE_BUDGET: usize = 5_000_000;

struct Uf(Vec<usize>);

impl Uf {
    fn find(&self, mut x: usize) -> usize {
        while self.0[x] != x {
            x = self.0[x];
        }
        x
    }
}

/// Searches for a graph with at most `max_vertices` vertices whose cycle
/// matroid equals the matroid of `sys` with the identity labelling. Elements
/// are placed basis first; every other element is forced by its fundamental
/// circuit, whose basis part must be a path.
pub fn try_graphic(sys: &UnimodularSystem, max_vertices: usize) -> GraphSearch {
    let m = sys.len();
    let r = sys.rank;
    if r + 1 > max_vertices {
        return GraphSearch::Unknown { exhaustive: false };
    }
    if m == 0 {
        return GraphSearch::Found(Graph { vertices: 1, edges: Vec::new() });
    }
    let basis = greedy_basis(&sys.vectors);
    let inb: u64 = mask(&basis);
    let masks = sys.circuit_masks();
    // fundamental circuit of each non-basis element
    let mut fund: Vec<u64> = vec![0; m];
    for e in (0..m).filter(|&e| inb >> e & 1 == 0) {
        fund[e] = *masks
            .iter()
            .find(|&&c| c >> e & 1 == 1 && c & !(inb | 1 << e) == 0)
            .expect("every non-basis element closes a fundamental circuit");
    }
    // placement schedule: basis elements in order, each followed by the
    // non-basis elements whose fundamental circuit is then complete
    let mut schedule: Vec<usize> = Vec::new();
    let mut placed = 0u64;
    let mut pending: Vec<usize> = (0..m).filter(|&e| inb >> e & 1 == 0).collect();
    let flush = |placed: &mut u64, pending: &mut Vec<usize>, schedule: &mut Vec<usize>| {
        pending.retain(|&e| {
            if fund[e] & !(1 << e) & !*placed == 0 {
                schedule.push(e);
                *placed |= 1 << e;
                false
            } else {
                true
            }
        });
    };
    flush(&mut placed, &mut pending, &mut schedule);
    for &b in &basis {
        schedule.push(b);
        placed |= 1 << b;
        flush(&mut placed, &mut pending, &mut schedule);
    }
    debug_assert_eq!(schedule.len(), m);

    struct St<'a> {
        schedule: Vec<usize>,
        inb: u64,
        fund: Vec<u64>,
        masks: &'a [u64],
        nv: usize,
        edges: Vec<(usize, usize)>,
        nodes: usize,
        budget_hit: bool,
    }
    fn path_ends(edges: &[(usize, usize)], elems: &[usize], nv: usize) -> Option<(usize, usize)> {
        if elems.is_empty() {
            return None;
        }
        let mut deg = vec![0usize; nv];
        let mut uf = Uf((0..nv).collect());
        for &i in elems {
            let (u, v) = edges[i];
            if u == v {
                return None;
            }
            deg[u] += 1;
            deg[v] += 1;
            let (a, b) = (uf.find(u), uf.find(v));
            if a == b {
                return None;
            }
            uf.0[a] = b;
        }
        if deg.iter().any(|&d| d > 2) {
            return None;
        }
        let ends: Vec<usize> = (0..nv).filter(|&x| deg[x] == 1).collect();
        if ends.len() == 2 {
            Some((ends[0], ends[1]))
        } else {
            None
        }
    }
    fn rec(st: &mut St, k: usize, used: usize) -> bool {
        st.nodes += 1;
        if st.nodes > NODE_BUDGET {
            st.budget_hit = true;
            return false;
        }
        if k == st.schedule.len() {
            let g = Graph { vertices: st.nv, edges: st.edges.clone() };
            let gm: HashSet<u64> = circuits(&g.incidence_vectors()).iter().map(|c| mask(c)).collect();
            return gm.len() == st.masks.len() && st.masks.iter().all(|c| gm.contains(c));
        }
        let e = st.schedule[k];
        if st.inb >> e & 1 == 0 {
            let rest: Vec<usize> = bits(st.fund[e] & !(1 << e));
            let edge = if rest.is_empty() {
                Some((0, 0))
            } else {
                path_ends(&st.edges, &rest, st.nv)
            };
            let Some(edge) = edge else { return false };
            st.edges[e] = edge;
            return rec(st, k + 1, used);
        }
        // basis element: an edge joining two components of the forest so far
        let mut uf = Uf((0..st.nv).collect());
        for i in 0..k {
            let x = st.schedule[i];
            if st.inb >> x & 1 == 1 {
                let (u, v) = st.edges[x];
                let (a, b) = (uf.find(u), uf.find(v));
                uf.0[a] = b;
            }
        }
        let limit = (used + 2).min(st.nv);
        for u in 0..limit.min(used + 1) {
            let vmax = if u == used { (used + 2).min(st.nv) } else { (used + 1).min(st.nv) };
            for v in u + 1..vmax {
                if u < used && v < used && uf.find(u) == uf.find(v) {
                    continue;
                }
                st.edges[e] = (u, v);
                if rec(st, k + 1, used.max(v + 1)) {
                    return true;
                }
                if st.budget_hit {
                    return false;
                }
            }
        }
        false
    }
    let mut st = St {
        schedule,
        inb,
        fund,
        masks: &masks,
        nv: r + 1,
        edges: vec![(0, 0); m],
        nodes: 0,
        budget_hit: false,
    };
    if rec(&mut st, 0, 0) {
        GraphSearch::Found(Graph { vertices: st.nv, edges: st.edges })
    } else {
        GraphSearch::Unknown { exhaustive: !st.budget_hit }
    }
}

/// A representation of the dual matroid: with coordinates `[I | X]` in a
/// basis, the dual is represented by `[-X^T | I]`.
pub fn dual_system(sys: &UnimodularSystem) -> UnimodularSystem {
    let m = sys.len();
    let basis = greedy_basis(&sys.vectors);
    let coords = basis_coordinates(&sys.vectors, &basis);
    let nonbasis: Vec<usize> = (0..m).filter(|i| !basis.contains(i)).collect();
    let d = nonbasis.len();
    // element i's dual vector, indexed by non-basis position
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); d]; m];
    for (j, &e) in nonbasis.iter().enumerate() {
        rows[e][j] = Rational::one();
        for (k, &b) in basis.iter().enumerate() {
            rows[b][j] = -coords[e][k].clone();
        }
    }
    let den = rows.iter().flatten().fold(num_bigint::BigInt::one(), |l, q| num_integer::Integer::lcm(&l, q.denom()));
    let vectors = rows
        .iter()
        .map(|r| r.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer().to_i64().unwrap()).collect())
        .collect();
    UnimodularSystem::new(vectors)
}

pub fn try_cographic(sys: &UnimodularSystem, max_vertices: usize) -> GraphSearch {
    if sys.len() - sys.rank + 1 > max_vertices {
        return GraphSearch::Unknown { exhaustive: false };
    }
    try_graphic(&dual_system(sys), max_vertices)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Graphic,
    Cographic,
    GraphicAndCographic,
    Neither,
    Unknown,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Graphic => "graphic",
            Label::Cographic => "cographic",
            Label::GraphicAndCographic => "graphic+cographic",
            Label::Neither => "neither",
            Label::Unknown => "unknown",
        }
    }
}

pub fn classify(sys: &UnimodularSystem, max_vertices: usize) -> Label {
    label_of(&try_graphic(sys, max_vertices), &try_cographic(sys, max_vertices))
}

/// The label given the outcomes of the graphic and cographic searches.
pub fn label_of(g: &GraphSearch, c: &GraphSearch) -> Label {
    match (g, c) {
        (GraphSearch::Found(_), GraphSearch::Found(_)) => Label::GraphicAndCographic,
        (GraphSearch::Found(_), GraphSearch::Unknown { exhaustive: true }) => Label::Graphic,
        (GraphSearch::Unknown { exhaustive: true }, GraphSearch::Found(_)) => Label::Cographic,
        (GraphSearch::Unknown { exhaustive: true }, GraphSearch::Unknown { exhaustive: true }) => Label::Neither,
        _ => Label::Unknown,
    }
}

/// Histogram of circuit sizes.
pub fn circuit_census(circuits: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut h: HashMap<usize, usize> = HashMap::new();
    for c in circuits {
        *h.entry(c.len()).or_default() += 1;
    }
    let mut v: Vec<(usize, usize)> = h.into_iter().collect();
    v.sort();
    v
}

/// The twelve-element system `R12`, rows in the order b2, c26, a2, a3, b1,
/// b5, b3, c36, a4, a1, c14, c15.
pub fn r12() -> Vec<Vec<i64>> {
    let mut v = identity6();
    v.extend([
        vec![1, 0, -1, 1, 0, 0],
        vec![0, 1, 1, -1, 0, 0],
        vec![0, 1, 0, -1, -1, -1],
        vec![-1, 0, 1, 0, 1, 0],
        vec![0, -1, 0, 1, 0, 1],
        vec![1, 0, -1, 0, -1, -1],
    ]);
    v
}

/// The twelve-element system `R10 ⊕1 C3`, rows in the order b2, c26, a2,
/// a3, b1, b5, b3, c36, a4, a1, c16, c45.
pub fn r10_sum_c3() -> Vec<Vec<i64>> {
    let mut v = identity6();
    v.extend([
        vec![1, 0, -1, 1, 0, 0],
        vec![0, 1, 1, -1, 0, 0],
        vec![0, 1, 0, -1, -1, -1],
        vec![-1, 0, 1, 0, 1, 0],
        vec![1, 1, 0, 0, -1, 0],
        vec![0, -1, 0, 1, 1, 0],
    ]);
    v
}

/// `R10`: the five unit vectors together with the rows of a signed
/// circulant.
pub fn r10() -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = (0..5).map(|i| (0..5).map(|j| i64::from(i == j)).collect()).collect();
    v.extend([
        vec![-1, 1, 0, 0, 1],
        vec![1, -1, 1, 0, 0],
        vec![0, 1, -1, 1, 0],
        vec![0, 0, 1, -1, 1],
        vec![1, 0, 0, 1, -1],
    ]);
    v
}

fn identity6() -> Vec<Vec<i64>> {
    (0..6).map(|i| (0..6).map(|j| i64::from(i == j)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(v: &[&[i64]]) -> UnimodularSystem {
        UnimodularSystem::new(v.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn triangle() {
        let s = sys(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(is_unimodular(&s.vectors));
        assert_eq!(s.circuits, vec![vec![0, 1, 2]]);
        assert!(!is_unimodular(&[vec![1, 0], vec![0, 1], vec![1, 2]]));
    }

    #[test]
    fn independent_has_no_circuits() {
        let s = sys(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]);
        assert!(s.circuits.is_empty());
        assert_eq!(s.rank, 3);
    }

    #[test]
    fn k4_is_graphic() {
        let k4 = Graph::complete(4);
        let s = UnimodularSystem::new(k4.incidence_vectors());
        assert_eq!(s.rank, 3);
        assert!(is_unimodular(&s.vectors));
        let g = try_graphic(&s, 6);
        let g = g.graph().expect("K4 is graphic");
        assert_eq!(g.vertices, 4);
        assert!(g.degrees().iter().all(|&d| d == 3));
        // K4 is self-dual
        assert!(try_cographic(&s, 6).graph().is_some());
    }

    #[test]
    fn r10_is_neither() {
        let s = UnimodularSystem::new(r10());
        assert!(is_unimodular(&s.vectors));
        assert_eq!(s.rank, 5);
        assert_eq!(try_graphic(&s, 10), GraphSearch::Unknown { exhaustive: true });
        assert_eq!(try_cographic(&s, 10), GraphSearch::Unknown { exhaustive: true });
    }

    #[test]
    fn reference_systems_are_unimodular() {
        assert!(is_unimodular(&r12()));
        assert!(is_unimodular(&r10_sum_c3()));
        let a = UnimodularSystem::new(r12());
        let b = UnimodularSystem::new(r10_sum_c3());
        assert!(!matroid_isomorphic(&a, &b));
        assert!(circuit_axioms_hold(&a.circuits));
    }

    #[test]
    fn permuted_copy_is_isomorphic() {
        let a = UnimodularSystem::new(r12());
        let perm = [5, 11, 0, 3, 7, 1, 9, 2, 10, 4, 8, 6];
        // unimodular change of coordinates
        let t = [[1, 1, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 0]];
        let rows: Vec<Vec<i64>> = perm
            .iter()
            .map(|&i| (0..6).map(|c| (0..6).map(|k| a.vectors[i][k] * t[k][c]).sum()).collect())
            .collect();
        let b = UnimodularSystem::new(rows);
        let f = matroid_isomorphism(&b, &a).expect("isomorphic");
        let ca: HashSet<u64> = a.circuit_masks().into_iter().collect();
        for c in &b.circuits {
            assert!(ca.contains(&c.iter().fold(0u64, |m, &i| m | 1 << f[i])));
        }
    }

    #[test]
    fn dual_rank() {
        let s = UnimodularSystem::new(r12());
        let d = dual_system(&s);
        assert_eq!(d.rank, 6);
        assert!(is_unimodular(&d.vectors));
        let dd = dual_system(&d);
        assert!(matroid_isomorphic(&dd, &s));
    }
}
