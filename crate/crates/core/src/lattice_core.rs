//! Lattices given by a Gram matrix: short vectors, minima of the classes of
//! `L/2L`, relevant and standard vectors, closest vectors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exact_core::{dot_iq, int, ldlt, ExactError, QMatrix, QVector, Rational};

/// Integer coordinates in the lattice basis.
pub type LatticeVector = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix must be square and nonempty")]
    Shape,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("unknown built-in lattice {0:?}")]
    UnknownBuiltin(String),
}

/// A positive definite rational Gram matrix together with its LDLᵀ form.
#[derive(Clone, Debug)]
pub struct Lattice {
    name: Option<String>,
    gram: QMatrix,
    l: QMatrix,
    d: Vec<Rational>,
    gram_inv: QMatrix,
}

impl Lattice {
    pub fn new(gram: QMatrix, name: Option<String>) -> Result<Lattice, LatticeError> {
        if !gram.is_square() || gram.nrows() == 0 {
            return Err(LatticeError::Shape);
        }
        let (l, dm) = ldlt(&gram).map_err(|e| match e {
            ExactError::NotSymmetric => LatticeError::NotSymmetric,
            _ => LatticeError::NotPositiveDefinite,
        })?;
        let n = gram.nrows();
        let d: Vec<Rational> = (0..n).map(|i| dm[(i, i)].clone()).collect();
        if d.iter().any(|x| !x.is_positive()) {
            return Err(LatticeError::NotPositiveDefinite);
        }
        let gram_inv = gram.inverse().expect("positive definite");
        Ok(Lattice { name, gram, l, d, gram_inv })
    }

    /// Built-in lattices: `Z<n>` (n ≤ 10), `A<n>`, `D<n>` (n ≤ 8), `E6`,
    /// `E6*`, `E7`, `E7*`, `E8`.
    pub fn builtin(name: &str) -> Result<Lattice, LatticeError> {
        let unknown = || LatticeError::UnknownBuiltin(name.to_string());
        let (head, num) = name.split_at(1);
        let n: usize = match num.trim_end_matches('*').parse() {
            Ok(n) => n,
            Err(_) => return Err(unknown()),
        };
        let dual = name.ends_with('*');
        let gram = match (head, n, dual) {
            ("Z", 1..=10, false) => QMatrix::identity(n),
            ("A", 1..=8, false) => cartan(&chain_edges(n), n),
            ("D", 2..=8, false) => {
                let mut e = chain_edges(n - 1);
                if n >= 3 {
                    e.push((n - 3, n - 1));
                }
                cartan(&e, n)
            }
            ("E", 6..=8, _) => {
                if dual && n == 8 {
                    return Err(unknown());
                }
                let mut e = chain_edges(n - 1);
                e.push((2, n - 1));
                let c = cartan(&e, n);
                if dual {
                    c.inverse().expect("Cartan matrix is nonsingular")
                } else {
                    c
                }
            }
            _ => return Err(unknown()),
        };
        Lattice::new(gram, Some(name.to_string()))
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &QMatrix {
        &self.gram_inv
    }

    /// Diagonal of the LDLᵀ factor.
    pub fn ldl_diagonal(&self) -> &[Rational] {
        &self.d
    }

    pub fn det(&self) -> Rational {
        self.d.iter().fold(Rational::one(), |a, x| a * x)
    }

    pub fn norm(&self, v: &[i64]) -> Rational {
        self.gram.bilinear_i(v, v)
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> Rational {
        self.gram.bilinear_i(a, b)
    }

    /// `f(z) = ½ zᵀ·gram·z`, the right-hand side of the facet inequality.
    pub fn half_norm(&self, v: &[i64]) -> Rational {
        self.norm(v) / int(2)
    }

    /// Dual coordinates `gram·z` of a lattice vector.
    pub fn dual_coords(&self, z: &[i64]) -> QVector {
        self.gram.mul_ivec(z)
    }

    /// Primal coordinates of a point given in dual coordinates.
    pub fn primal_from_dual(&self, x: &[Rational]) -> QVector {
        self.gram_inv.mul_vec(x)
    }

    /// Inner product of two points given in dual coordinates.
    pub fn dual_inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        crate::exact_core::dot(x, &self.gram_inv.mul_vec(y))
    }

    /// Calls `visit` on every integer `x` with `(x−t)ᵀ·gram·(x−t) ≤ bound`,
    /// optionally restricted to `x ≡ parity (mod 2)`. `visit` may lower the
    /// bound.
    fn enumerate<F>(&self, t: &[Rational], bound: Rational, parity: Option<&[u8]>, mut visit: F)
    where
        F: FnMut(&[i64], &Rational, &mut Rational),
    {
        let n = self.dim();
        let mut x = vec![0i64; n];
        let mut bound = bound;
        self.enum_level(n, t, parity, &mut x, Rational::zero(), &mut bound, &mut visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn enum_level<F>(
        &self,
        level: usize,
        t: &[Rational],
        parity: Option<&[u8]>,
        x: &mut Vec<i64>,
        used: Rational,
        bound: &mut Rational,
        visit: &mut F,
    ) where
        F: FnMut(&[i64], &Rational, &mut Rational),
    {
        if level == 0 {
            visit(x, &used, bound);
            return;
        }
        let i = level - 1;
        let n = self.dim();
        // center c = t_i - sum_{j>i} L_ji (x_j - t_j)
        let mut c = t[i].clone();
        for j in i + 1..n {
            let lji = &self.l[(j, i)];
            if !lji.is_zero() {
                c -= lji * (Rational::from_integer(BigInt::from(x[j])) - &t[j]);
            }
        }
        let di = &self.d[i];
        let step: i64 = if parity.is_some() { 2 } else { 1 };
        let want = parity.map(|p| p[i] as i64);
        let fits = |k: i64, bound: &Rational, used: &Rational| -> Option<Rational> {
            let y = Rational::from_integer(BigInt::from(k)) - &c;
            let q = used + di * &y * &y;
            if q <= *bound {
                Some(q)
            } else {
                None
            }
        };
        let mut k0 = c.floor().to_integer().to_i64().expect("coordinate fits in i64");
        if let Some(w) = want {
            if (k0 - w).rem_euclid(2) != 0 {
                k0 -= 1;
            }
        }
        // downward from k0, then upward from k0+step
        let mut k = k0;
        while let Some(q) = fits(k, bound, &used) {
            x[i] = k;
            self.enum_level(i, t, parity, x, q, bound, visit);
            k -= step;
        }
        let mut k = k0 + step;
        while let Some(q) = fits(k, bound, &used) {
            x[i] = k;
            self.enum_level(i, t, parity, x, q, bound, visit);
            k += step;
        }
        x[i] = 0;
    }

    /// All nonzero `v` with `norm(v) ≤ bound`, sorted lexicographically.
    pub fn short_vectors(&self, bound: &Rational) -> Vec<LatticeVector> {
        let n = self.dim();
        let t = vec![Rational::zero(); n];
        let mut out = Vec::new();
        self.enumerate(&t, bound.clone(), None, |x, _, _| {
            if x.iter().any(|&c| c != 0) {
                out.push(x.to_vec());
            }
        });
        out.sort();
        out
    }

    /// Minimum-norm vectors of the class `rep + 2L`.
    pub fn coset_report(&self, rep: &[u8]) -> CosetReport {
        let n = self.dim();
        let t = vec![Rational::zero(); n];
        let r: Vec<i64> = rep.iter().map(|&b| b as i64).collect();
        let start = self.norm(&r);
        let mut best = start.clone();
        let mut minima: Vec<LatticeVector> = Vec::new();
        self.enumerate(&t, start, Some(rep), |x, q, bound| {
            if *q < best {
                best = q.clone();
                minima.clear();
                *bound = q.clone();
            }
            if *q == best {
                minima.push(x.to_vec());
            }
        });
        minima.sort();
        let simple = minima.len() == 2;
        CosetReport { rep: rep.to_vec(), min_norm: best, minima, simple }
    }

    /// One report per nonzero class of `L/2L`, in increasing binary order of
    /// the representative.
    pub fn coset_minima(&self) -> Vec<CosetReport> {
        let n = self.dim();
        assert!(n <= 16, "coset enumeration limited to n ≤ 16");
        let reps: Vec<Vec<u8>> = (1u32..(1 << n))
            .map(|m| (0..n).map(|i| ((m >> i) & 1) as u8).collect())
            .collect();
        reps.par_iter().map(|r| self.coset_report(r)).collect()
    }

    /// Union of the minima of the simple classes: the facet vectors of the
    /// Voronoi cell.
    pub fn relevant_vectors(&self) -> Vec<LatticeVector> {
        let mut out: Vec<LatticeVector> = self
            .coset_minima()
            .into_iter()
            .filter(|c| c.simple)
            .flat_map(|c| c.minima)
            .collect();
        out.sort();
        out
    }

    /// Minima of every nonzero class of `L/2L`, keyed by representative.
    pub fn standard_vectors(&self) -> BTreeMap<Vec<u8>, Vec<LatticeVector>> {
        self.coset_minima().into_iter().map(|c| (c.rep, c.minima)).collect()
    }

    /// All lattice vectors closest to `point` (primal coordinates).
    pub fn closest_vectors(&self, point: &[Rational]) -> Vec<LatticeVector> {
        let n = self.dim();
        assert_eq!(point.len(), n);
        let rounded: Vec<i64> = point
            .iter()
            .map(|x| x.round().to_integer().to_i64().expect("coordinate fits in i64"))
            .collect();
        let diff: QVector = rounded
            .iter()
            .zip(point)
            .map(|(&a, b)| Rational::from_integer(BigInt::from(a)) - b)
            .collect();
        let start = crate::exact_core::dot(&diff, &self.gram.mul_vec(&diff));
        let mut best = start.clone();
        let mut out: Vec<LatticeVector> = Vec::new();
        self.enumerate(point, start, None, |x, q, bound| {
            if *q < best {
                best = q.clone();
                out.clear();
                *bound = q.clone();
            }
            if *q == best {
                out.push(x.to_vec());
            }
        });
        out.sort();
        out
    }

    /// Pairing of a lattice vector with a point in dual coordinates.
    pub fn pair(&self, z: &[i64], x: &[Rational]) -> Rational {
        dot_iq(z, x)
    }
}

/// Minimum-norm vectors of one class of `L/2L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetReport {
    pub rep: Vec<u8>,
    pub min_norm: Rational,
    pub minima: Vec<LatticeVector>,
    pub simple: bool,
}

fn chain_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// Cartan matrix of a simply laced Dynkin diagram.
fn cartan(edges: &[(usize, usize)], n: usize) -> QMatrix {
    let mut m = QMatrix::identity(n);
    for i in 0..n {
        m[(i, i)] = int(2);
    }
    for &(a, b) in edges {
        m[(a, b)] = int(-1);
        m[(b, a)] = int(-1);
    }
    m
}

/// Greatest common divisor of the entries of an integer vector.
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}
