//! Exact rational scalars, vectors, matrices, subspaces, cones and linear
//! feasibility.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// A vector of rationals.
pub type QVector = Vec<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("zero pivot at index {0} with nonzero entries below; no LDL^T factorization")]
    ZeroPivot(usize),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim();
    let err = || ExactError::Parse(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| err())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Formats in lowest terms as `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Dot product of an integer vector with a rational vector.
pub fn dot_iq(a: &[i64], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if *x != 0 {
            acc += y * BigInt::from(*x);
        }
    }
    acc
}

pub fn to_qvector(v: &[i64]) -> QVector {
    v.iter().map(|&x| int(x)).collect()
}

/// Scales a rational vector to the unique coprime integer vector with the
/// same direction (positive multiple). The zero vector maps to zeros.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &out {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut out {
            *x /= &g;
        }
    }
    out
}

/// Primitive representative of the line through `v`: first nonzero entry positive.
pub fn canonical_line(v: &[Rational]) -> Vec<BigInt> {
    let mut p = primitive(v);
    if let Some(f) = p.iter().find(|x| !x.is_zero()) {
        if f.is_negative() {
            for x in &mut p {
                *x = -x.clone();
            }
        }
    }
    p
}

/// Same as [`canonical_line`] for machine integers.
pub fn canonical_line_i64(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return v.to_vec();
    }
    let sign = if v.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 { -1 } else { 1 };
    v.iter().map(|&x| sign * x / g).collect()
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<QVector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| to_qvector(r)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<QVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> QVector {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn mul_ivec(&self, v: &[i64]) -> QVector {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot_iq(v, self.row(i))).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// `xᵀ M y` for integer vectors.
    pub fn bilinear_i(&self, x: &[i64], y: &[i64]) -> Rational {
        let my = self.mul_ivec(y);
        dot_iq(x, &my)
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &piv;
                for k in c..n {
                    let t = &f * &a[(c, k)];
                    a[(r, k)] -= t;
                }
            }
        }
        det
    }

    /// Inverse of a nonsingular square matrix.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, rank) = rref(&aug);
        if rank < n || (0..n).any(|i| r[(i, i)] != Rational::one()) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form and rank. The result is canonical: equal row
/// spaces give identical matrices (zero rows are kept at the bottom).
pub fn rref(m: &QMatrix) -> (QMatrix, usize) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let piv = a[(r, c)].clone();
        if !piv.is_one() {
            for k in c..cols {
                a[(r, k)] = &a[(r, k)] / &piv;
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for k in c..cols {
                let t = &f * &a[(r, k)];
                a[(i, k)] -= t;
            }
        }
        r += 1;
    }
    (a, r)
}

/// `g = L·D·Lᵀ` with `L` unit lower triangular and `D` diagonal.
pub fn ldlt(g: &QMatrix) -> Result<(QMatrix, QMatrix), ExactError> {
    if !g.is_symmetric() {
        return Err(ExactError::NotSymmetric);
    }
    let n = g.rows;
    let mut l = QMatrix::identity(n);
    let mut d = vec![Rational::zero(); n];
    for j in 0..n {
        let mut dj = g[(j, j)].clone();
        for k in 0..j {
            dj -= &l[(j, k)] * &l[(j, k)] * &d[k];
        }
        for i in j + 1..n {
            let mut s = g[(i, j)].clone();
            for k in 0..j {
                s -= &l[(i, k)] * &l[(j, k)] * &d[k];
            }
            if dj.is_zero() {
                if !s.is_zero() {
                    return Err(ExactError::ZeroPivot(j));
                }
            } else {
                l[(i, j)] = s / &dj;
            }
        }
        d[j] = dj;
    }
    let mut dm = QMatrix::zeros(n, n);
    for (i, x) in d.into_iter().enumerate() {
        dm[(i, i)] = x;
    }
    Ok((l, dm))
}

/// True iff `g` is symmetric and all LDLᵀ pivots are positive.
pub fn is_positive_definite(g: &QMatrix) -> bool {
    match ldlt(g) {
        Ok((_, d)) => (0..d.rows).all(|i| d[(i, i)].is_positive()),
        Err(_) => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

/// One linear constraint `coeffs · x  rel  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: QVector,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: QVector, rel: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let v = dot(&self.coeffs, x);
        match self.rel {
            Relation::Le => v <= self.rhs,
            Relation::Lt => v < self.rhs,
            Relation::Eq => v == self.rhs,
        }
    }
}

enum Simplex {
    Infeasible,
    Optimal(QVector),
    Unbounded,
}

/// Maximizes `c·y` subject to `A y = b`, `y ≥ 0` with a two-phase tableau
/// simplex using Bland's rule.
fn simplex(a: &[QVector], b: &[Rational], c: &[Rational]) -> Simplex {
    let m = a.len();
    let nv = c.len();
    let width = nv + m + 1;
    let mut t: Vec<QVector> = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row = vec![Rational::zero(); width];
        for j in 0..nv {
            row[j] = if neg { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[nv + i] = Rational::one();
        row[width - 1] = if neg { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    let mut basis: Vec<usize> = (nv..nv + m).collect();

    let run = |t: &mut Vec<QVector>, basis: &mut Vec<usize>, obj: &[Rational], allowed: usize| -> bool {
        loop {
            // reduced costs r_j = obj_j - sum_i obj_{basis_i} t_ij
            let mut enter = None;
            for j in 0..allowed {
                if basis.contains(&j) {
                    continue;
                }
                let mut r = obj[j].clone();
                for (i, &bi) in basis.iter().enumerate() {
                    if !obj[bi].is_zero() && !t[i][j].is_zero() {
                        r -= &obj[bi] * &t[i][j];
                    }
                }
                if r.is_positive() {
                    enter = Some(j);
                    break;
                }
            }
            let Some(j) = enter else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..t.len() {
                if t[i][j].is_positive() {
                    let ratio = &t[i][width - 1] / &t[i][j];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((i, _)) = leave else { return false };
            pivot(t, i, j);
            basis[i] = j;
        }
    };

    // phase I: maximize -sum(artificials)
    let mut obj1 = vec![Rational::zero(); width - 1];
    for k in nv..nv + m {
        obj1[k] = -Rational::one();
    }
    run(&mut t, &mut basis, &obj1, nv + m);
    for i in 0..m {
        if basis[i] >= nv && !t[i][width - 1].is_zero() {
            return Simplex::Infeasible;
        }
    }
    // drive remaining artificials out of the basis
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= nv {
            if let Some(j) = (0..nv).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, i, j);
                basis[i] = j;
                i += 1;
            } else {
                t.remove(i);
                basis.remove(i);
            }
        } else {
            i += 1;
        }
    }
    let mut obj2 = vec![Rational::zero(); width - 1];
    obj2[..nv].clone_from_slice(c);
    if !run(&mut t, &mut basis, &obj2, nv) {
        return Simplex::Unbounded;
    }
    let mut y = vec![Rational::zero(); nv];
    for (i, &bi) in basis.iter().enumerate() {
        if bi < nv {
            y[bi] = t[i][width - 1].clone();
        }
    }
    Simplex::Optimal(y)
}

fn pivot(t: &mut [QVector], r: usize, c: usize) {
    let p = t[r][c].clone();
    if !p.is_one() {
        for x in t[r].iter_mut() {
            *x = &*x / &p;
        }
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, y) in row.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

/// Exact feasibility of a system of `≤`, `<` and `=` constraints in `n`
/// variables. Returns a witness satisfying every constraint, or `None`.
pub fn lp_feasible(n: usize, constraints: &[Constraint]) -> Option<QVector> {
    let strict = constraints.iter().any(|c| c.rel == Relation::Lt);
    let slacks: Vec<usize> = constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| c.rel != Relation::Eq)
        .map(|(i, _)| i)
        .collect();
    // variables: x+ (n), x- (n), [t], slacks, [t-slack]
    let t_col = 2 * n;
    let s0 = 2 * n + usize::from(strict);
    let nv = s0 + slacks.len() + usize::from(strict);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), n, "constraint dimension");
        let mut row = vec![Rational::zero(); nv];
        for j in 0..n {
            row[j] = c.coeffs[j].clone();
            row[n + j] = -c.coeffs[j].clone();
        }
        if c.rel == Relation::Lt {
            row[t_col] = Rational::one();
        }
        if let Some(k) = slacks.iter().position(|&s| s == i) {
            row[s0 + k] = Rational::one();
        }
        a.push(row);
        b.push(c.rhs.clone());
    }
    let mut obj = vec![Rational::zero(); nv];
    if strict {
        let mut row = vec![Rational::zero(); nv];
        row[t_col] = Rational::one();
        row[nv - 1] = Rational::one();
        a.push(row);
        b.push(Rational::one());
        obj[t_col] = Rational::one();
    }
    match simplex(&a, &b, &obj) {
        Simplex::Infeasible => None,
        Simplex::Unbounded => unreachable!("t is bounded above"),
        Simplex::Optimal(y) => {
            if strict && !y[t_col].is_positive() {
                return None;
            }
            let x: QVector = (0..n).map(|j| &y[j] - &y[n + j]).collect();
            debug_assert!(constraints.iter().all(|c| c.holds(&x)));
            Some(x)
        }
    }
}

/// Linear subspace of `Q^n` stored as the nonzero rows of its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<QVector>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient: n, basis: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Self::span(n, &QMatrix::identity(n).to_rows())
    }

    pub fn span(n: usize, vectors: &[QVector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(n);
        }
        for v in vectors {
            assert_eq!(v.len(), n, "vector dimension");
        }
        let (r, rank) = rref(&QMatrix::from_rows(vectors.to_vec()));
        Subspace { ambient: n, basis: (0..rank).map(|i| r.row(i).to_vec()).collect() }
    }

    pub fn span_i64(n: usize, vectors: &[Vec<i64>]) -> Self {
        let q: Vec<QVector> = vectors.iter().map(|v| to_qvector(v)).collect();
        Self::span(n, &q)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        self.contains(&to_qvector(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Orthogonal complement for the plain coordinate dot product.
    pub fn complement(&self) -> Subspace {
        let n = self.ambient;
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        let mut out = Vec::new();
        for f in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in self.basis.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            out.push(v);
        }
        Subspace::span(n, &out)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &v)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        subspace_intersect(self, other)
    }

    /// Primitive integer basis vectors (each row scaled to coprime integers).
    pub fn integer_basis(&self) -> Vec<Vec<BigInt>> {
        self.basis.iter().map(|r| primitive(r)).collect()
    }
}

/// Canonical RREF of `a ∩ b`.
pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Subspace {
    assert_eq!(a.ambient, b.ambient, "ambient dimension");
    a.complement().sum(&b.complement()).complement()
}

/// Convex cone given by primitive integer generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    generators: Vec<Vec<BigInt>>,
}

impl Cone {
    /// Canonicalizes generators to primitive integers and removes duplicates
    /// and generators that are nonnegative combinations of the others.
    pub fn new(dim: usize, gens: &[QVector]) -> Self {
        let mut g: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|v| primitive(v))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        g.sort();
        g.dedup();
        let mut i = 0;
        while i < g.len() {
            let others: Vec<QVector> = g
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| big_to_q(v))
                .collect();
            if !others.is_empty() && in_cone(dim, &others, &big_to_q(&g[i]), false) {
                g.remove(i);
            } else {
                i += 1;
            }
        }
        Cone { dim, generators: g }
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn contains(&self, c: &[Rational]) -> bool {
        let gens: Vec<QVector> = self.generators.iter().map(|v| big_to_q(v)).collect();
        in_cone(self.dim, &gens, c, false)
    }

    /// `c` is a strictly positive combination of all generators.
    pub fn contains_relint(&self, c: &[Rational]) -> bool {
        let gens: Vec<QVector> = self.generators.iter().map(|v| big_to_q(v)).collect();
        in_cone(self.dim, &gens, c, true)
    }
}

fn big_to_q(v: &[BigInt]) -> QVector {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Is `c = Σ λ_i g_i` with `λ ≥ 0` (or `λ > 0` when `strict`)?
fn in_cone(dim: usize, gens: &[QVector], c: &[Rational], strict: bool) -> bool {
    let k = gens.len();
    let mut cons = Vec::new();
    for r in 0..dim {
        let coeffs: QVector = gens.iter().map(|g| g[r].clone()).collect();
        cons.push(Constraint::new(coeffs, Relation::Eq, c[r].clone()));
    }
    for i in 0..k {
        let mut e = vec![Rational::zero(); k];
        e[i] = -Rational::one();
        let rel = if strict { Relation::Lt } else { Relation::Le };
        cons.push(Constraint::new(e, rel, Rational::zero()));
    }
    lp_feasible(k, &cons).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aibj(n: usize, a: Rational, b: Rational) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = if i == j { &a + &b } else { b.clone() };
            }
        }
        m
    }

    #[test]
    fn rref_identity_and_zero() {
        let (r, k) = rref(&QMatrix::identity(6));
        assert_eq!((r, k), (QMatrix::identity(6), 6));
        let (r, k) = rref(&QMatrix::zeros(3, 3));
        assert_eq!((r, k), (QMatrix::zeros(3, 3), 0));
    }

    #[test]
    fn rref_dual_frame_gram_has_full_rank() {
        let g = aibj(6, int(1), rat(-1, 9));
        assert_eq!(g[(0, 0)], rat(8, 9));
        assert_eq!(rref(&g).1, 6);
    }

    #[test]
    fn ldlt_small_cases() {
        let (l, d) = ldlt(&QMatrix::identity(3)).unwrap();
        assert_eq!(l, QMatrix::identity(3));
        assert_eq!(d, QMatrix::identity(3));
        let g = QMatrix::from_i64(&[vec![2, 1], vec![1, 2]]);
        let (l, d) = ldlt(&g).unwrap();
        assert_eq!(d[(0, 0)], int(2));
        assert_eq!(d[(1, 1)], rat(3, 2));
        assert_eq!(l[(1, 0)], rat(1, 2));
    }

    #[test]
    fn ldlt_pivot_product_of_a_frame_is_three() {
        let g = aibj(6, int(1), rat(1, 3));
        let (_, d) = ldlt(&g).unwrap();
        let prod = (0..6).fold(Rational::one(), |acc, i| acc * &d[(i, i)]);
        assert_eq!(prod, int(3));
        assert_eq!(g.determinant(), int(3));
    }

    #[test]
    fn ldlt_rejects_asymmetric() {
        let g = QMatrix::from_i64(&[vec![1, 2], vec![0, 1]]);
        assert_eq!(ldlt(&g), Err(ExactError::NotSymmetric));
    }

    #[test]
    fn lp_examples() {
        let c = |a: i64, rel, b: i64| Constraint::new(vec![int(a)], rel, int(b));
        let w = lp_feasible(1, &[c(-1, Relation::Le, 0), c(1, Relation::Le, 1)]).unwrap();
        assert!(w[0] >= int(0) && w[0] <= int(1));
        assert!(lp_feasible(1, &[c(1, Relation::Lt, 0), c(-1, Relation::Lt, 0)]).is_none());
        let cone = Cone::new(2, &[vec![int(1), int(0)], vec![int(0), int(1)]]);
        assert!(cone.contains_relint(&[int(1), int(1)]));
        assert!(!cone.contains_relint(&[int(1), int(0)]));
        assert!(cone.contains(&[int(1), int(0)]));
    }

    #[test]
    fn cone_drops_dominated_generators() {
        let cone = Cone::new(2, &[vec![int(1), int(0)], vec![int(0), int(2)], vec![int(1), int(1)], vec![int(2), int(0)]]);
        assert_eq!(cone.generators().len(), 2);
    }

    #[test]
    fn subspace_examples() {
        let e = |i: usize| {
            let mut v = vec![int(0); 3];
            v[i] = int(1);
            v
        };
        let x1 = Subspace::span(3, &[e(0)]).complement();
        let x2 = Subspace::span(3, &[e(1)]).complement();
        assert_eq!(subspace_intersect(&x1, &x2), Subspace::span(3, &[e(2)]));
        let full = Subspace::full(3);
        assert_eq!(subspace_intersect(&full, &x1), x1);
        let l1 = Subspace::span(2, &[vec![int(1), int(1)]]);
        let l2 = Subspace::span(2, &[vec![int(1), int(-1)]]);
        assert_eq!(subspace_intersect(&l1, &l2).dim(), 0);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
    }

    #[test]
    fn canonical_lines() {
        let v = vec![rat(0, 1), rat(-2, 3), rat(4, 3)];
        assert_eq!(canonical_line(&v), vec![BigInt::from(0), BigInt::from(1), BigInt::from(-2)]);
        assert_eq!(canonical_line_i64(&[0, -3, 6]), vec![0, 1, -2]);
    }
}
