//! Permutation groups preserving the Gram matrix of a finite vector
//! configuration, with a stabilizer chain for orders, membership, minimal
//! images of subsets and stabilizer orders.

use std::collections::{HashMap, HashSet};

use crate::exact_core::{dot, QMatrix, QVector, Rational};

/// `p[i]` is the image of `i`.
pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

/// `compose(g, h)` applies `h` first, then `g`.
pub fn compose(g: &Perm, h: &Perm) -> Perm {
    h.iter().map(|&x| g[x as usize]).collect()
}

pub fn inverse(g: &Perm) -> Perm {
    let mut out = vec![0u32; g.len()];
    for (i, &x) in g.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

fn is_identity(g: &Perm) -> bool {
    g.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `trans[b]` maps `point` to `b`.
    trans: Vec<Option<Perm>>,
}

impl Level {
    fn recompute(&mut self, n: usize) {
        self.trans = vec![None; n];
        self.trans[self.point] = Some(identity(n));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in &self.gens {
                let y = g[x] as usize;
                if self.trans[y].is_none() {
                    self.trans[y] = Some(compose(g, self.trans[x].as_ref().unwrap()));
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// Permutation group on `0..degree` with a stabilizer chain on the base
/// `0, 1, …, degree−1`.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> PermutationGroup {
        let gens: Vec<Perm> = generators.into_iter().filter(|g| !is_identity(g)).collect();
        for g in &gens {
            assert_eq!(g.len(), degree, "permutation degree");
        }
        let mut levels: Vec<Level> = (0..degree)
            .map(|b| Level { point: b, gens: Vec::new(), orbit: Vec::new(), trans: Vec::new() })
            .collect();
        for g in &gens {
            let j = g.iter().enumerate().position(|(i, &x)| i as u32 != x).unwrap();
            for l in levels.iter_mut().take(j + 1) {
                l.gens.push(g.clone());
            }
        }
        for l in levels.iter_mut() {
            l.recompute(degree);
        }
        let mut grp = PermutationGroup { degree, generators: gens, levels };
        grp.complete();
        grp
    }

    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut g = g.clone();
        for l in from..self.degree {
            let lv = &self.levels[l];
            let x = g[lv.point] as usize;
            match &lv.trans[x] {
                None => return (g, l),
                Some(u) => g = compose(&inverse(u), &g),
            }
        }
        (g, self.degree)
    }

    fn complete(&mut self) {
        let n = self.degree;
        if n == 0 {
            return;
        }
        let mut i = n as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart = None;
            'outer: for &x in &self.levels[lvl].orbit.clone() {
                let ux = self.levels[lvl].trans[x].clone().unwrap();
                for s in self.levels[lvl].gens.clone() {
                    let y = s[x] as usize;
                    let uy = self.levels[lvl].trans[y].clone().unwrap();
                    let sg = compose(&inverse(&uy), &compose(&s, &ux));
                    let (h, j) = self.sift(&sg, lvl + 1);
                    if !is_identity(&h) {
                        assert!(j < n);
                        for l in lvl + 1..=j {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].recompute(n);
                        }
                        restart = Some(j);
                        break 'outer;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.len() == self.degree && is_identity(&self.sift(g, 0).0)
    }

    /// Element indexed by a choice of transversal position at every level.
    pub fn element(&self, choice: &[usize]) -> Perm {
        let mut g = identity(self.degree);
        for (l, &c) in self.levels.iter().zip(choice) {
            let b = l.orbit[c % l.orbit.len()];
            g = compose(&g, l.trans[b].as_ref().unwrap());
        }
        g
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut out = vec![x];
        seen[x] = true;
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let y = g[out[i]] as usize;
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }

    /// Lexicographically least image of a subset (as a sorted index list)
    /// and the order of its stabilizer.
    pub fn canonical_image(&self, set: u128) -> (u128, u128) {
        assert!(self.degree <= 128, "subset canonical forms limited to degree 128");
        let mut cands: HashMap<u128, u128> = HashMap::from([(set, 1u128)]);
        for (i, lv) in self.levels.iter().enumerate() {
            let bit = 1u128 << i;
            if lv.orbit.len() == 1 {
                if cands.keys().any(|t| t & bit != 0) {
                    cands.retain(|t, _| t & bit != 0);
                }
                continue;
            }
            let invs: Vec<(usize, Perm)> =
                lv.orbit.iter().map(|&s| (s, inverse(lv.trans[s].as_ref().unwrap()))).collect();
            let want = cands.keys().any(|t| invs.iter().any(|(s, _)| t >> s & 1 == 1));
            let mut next: HashMap<u128, u128> = HashMap::new();
            for (t, c) in &cands {
                for (s, r) in &invs {
                    if (t >> s & 1 == 1) != want {
                        continue;
                    }
                    let img = apply_mask(r, *t);
                    debug_assert_eq!(img & bit != 0, want);
                    *next.entry(img).or_insert(0) += c;
                }
            }
            cands = next;
        }
        let (&best, &count) = cands.iter().min_by_key(|(t, _)| sort_key(**t)).unwrap();
        debug_assert_eq!(cands.len(), 1);
        (best, count)
    }

    pub fn stabilizer_order(&self, set: u128) -> u128 {
        self.canonical_image(set).1
    }

    /// Action on a derived set of points, e.g. lines from signed vectors.
    pub fn induced(&self, degree: usize, map: impl Fn(usize) -> usize, rep: impl Fn(usize) -> usize) -> PermutationGroup {
        let gens = self
            .generators
            .iter()
            .map(|g| (0..degree).map(|k| map(g[rep(k)] as usize) as u32).collect())
            .collect();
        PermutationGroup::new(degree, gens)
    }
}

/// Bit-reversed order: smaller sets in the sorted-tuple order come first.
fn sort_key(t: u128) -> u128 {
    !t.reverse_bits()
}

pub fn apply_mask(g: &Perm, t: u128) -> u128 {
    let mut out = 0u128;
    let mut m = t;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1u128 << g[i];
        m &= m - 1;
    }
    out
}

pub fn mask_of(idx: &[usize]) -> u128 {
    idx.iter().fold(0u128, |m, &i| m | 1u128 << i)
}

pub fn indices_of(mask: u128) -> Vec<usize> {
    (0..128).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Canonical representatives of the orbits met by `subsets`, sorted.
pub fn subset_orbits(g: &PermutationGroup, subsets: &[u128]) -> Vec<u128> {
    let reps: HashSet<u128> = subsets.iter().map(|&s| g.canonical_image(s).0).collect();
    let mut out: Vec<u128> = reps.into_iter().collect();
    out.sort_by_key(|&t| (t.count_ones(), sort_key(t)));
    out
}

/// Matrix of pairwise products, with distinct values replaced by small
/// integer colours.
fn colour_matrix(vectors: &[QVector], gram: &QMatrix, colours: Option<&[usize]>) -> Vec<Vec<u32>> {
    let gv: Vec<QVector> = vectors.iter().map(|v| gram.mul_vec(v)).collect();
    let mut ids: HashMap<(Rational, usize), u32> = HashMap::new();
    let n = vectors.len();
    let mut m = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            let val = dot(&vectors[i], &gv[j]);
            let c = if i == j { colours.map_or(0, |c| c[i] + 1) } else { 0 };
            let next = ids.len() as u32;
            m[i][j] = *ids.entry((val, c)).or_insert(next);
        }
    }
    m
}

struct AutSearch<'a> {
    m: &'a [Vec<u32>],
    basis: Vec<usize>,
}

impl AutSearch<'_> {
    /// Completes a partial assignment of the basis to an automorphism.
    fn extend(&self, img: &mut Vec<usize>) -> Option<Perm> {
        let k = img.len();
        if k == self.basis.len() {
            return self.complete(img);
        }
        let b = self.basis[k];
        let n = self.m.len();
        for c in 0..n {
            if self.m[c][c] != self.m[b][b] {
                continue;
            }
            if (0..k).any(|l| self.m[c][img[l]] != self.m[b][self.basis[l]]) {
                continue;
            }
            img.push(c);
            if let Some(p) = self.extend(img) {
                img.pop();
                return Some(p);
            }
            img.pop();
        }
        None
    }

    fn complete(&self, img: &[usize]) -> Option<Perm> {
        let n = self.m.len();
        // a vector is determined by its products with a basis
        let mut by_profile: HashMap<Vec<u32>, usize> = HashMap::with_capacity(n);
        for j in 0..n {
            let key: Vec<u32> = img.iter().map(|&c| self.m[j][c]).collect();
            if by_profile.insert(key, j).is_some() {
                return None;
            }
        }
        let mut perm = vec![0u32; n];
        for i in 0..n {
            let src: Vec<u32> = self.basis.iter().map(|&b| self.m[i][b]).collect();
            perm[i] = *by_profile.get(&src)? as u32;
        }
        for i in 0..n {
            for j in 0..n {
                if self.m[perm[i] as usize][perm[j] as usize] != self.m[i][j] {
                    return None;
                }
            }
        }
        Some(perm)
    }
}

/// All permutations of `vectors` preserving every pairwise product under
/// `gram` (and the optional colours).
pub fn gram_automorphisms(vectors: &[QVector], gram: &QMatrix, colours: Option<&[usize]>) -> PermutationGroup {
    let n = vectors.len();
    let m = colour_matrix(vectors, gram, colours);
    // a basis among the vectors determines every permutation
    let mut basis = Vec::new();
    let mut span = crate::exact_core::Subspace::zero(vectors.first().map_or(0, |v| v.len()));
    for (i, v) in vectors.iter().enumerate() {
        if !span.contains(v) {
            span = span.sum(&crate::exact_core::Subspace::span(v.len(), std::slice::from_ref(v)));
            basis.push(i);
        }
    }
    let search = AutSearch { m: &m, basis: basis.clone() };
    let mut gens: Vec<Perm> = Vec::new();
    for k in (0..basis.len()).rev() {
        let b = basis[k];
        // orbit of b under generators found so far (they fix basis[..k])
        let mut orbit: HashSet<usize> = HashSet::from([b]);
        let mut queue = vec![b];
        let grow = |orbit: &mut HashSet<usize>, queue: &mut Vec<usize>, gens: &[Perm]| {
            while let Some(x) = queue.pop() {
                for g in gens {
                    let y = g[x] as usize;
                    if orbit.insert(y) {
                        queue.push(y);
                    }
                }
            }
        };
        grow(&mut orbit, &mut queue, &gens);
        let mut failed: HashSet<usize> = HashSet::new();
        for c in 0..n {
            if orbit.contains(&c) || failed.contains(&c) {
                continue;
            }
            if m[c][c] != m[b][b] || (0..k).any(|l| m[c][basis[l]] != m[b][basis[l]]) {
                continue;
            }
            let mut img: Vec<usize> = basis[..k].to_vec();
            img.push(c);
            match search.extend(&mut img) {
                Some(p) => {
                    gens.push(p);
                    orbit.insert(c);
                    queue.push(c);
                    queue.extend(orbit.iter().copied());
                    grow(&mut orbit, &mut queue, &gens);
                }
                None => {
                    failed.insert(c);
                }
            }
        }
    }
    PermutationGroup::new(n, gens)
}
