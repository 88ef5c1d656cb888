//! Integer linear-algebra kernels used on hot paths. Every routine is exact:
//! it is generic over a machine integer with checked arithmetic and over
//! `BigInt`, and reports overflow as `None` so callers can retry with
//! `BigInt`.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

pub trait ZInt:
    Clone + Debug + Eq + Ord + Hash + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + Send + Sync + 'static
{
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn from_i64(x: i64) -> Self;
}

impl ZInt for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_i64(x: i64) -> Self {
        x as i128
    }
}

impl ZInt for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
}

pub fn convert<T: ZInt>(v: &[BigInt]) -> Option<Vec<T>> {
    v.iter().map(T::from_big).collect()
}

pub fn dot<T: ZInt>(a: &[T], b: &[T]) -> Option<T> {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.checked_add(&x.checked_mul(y)?)?;
    }
    Some(acc)
}

/// `a*x - b*y` componentwise.
pub fn comb<T: ZInt>(a: &T, x: &[T], b: &T, y: &[T]) -> Option<Vec<T>> {
    x.iter()
        .zip(y)
        .map(|(p, q)| a.checked_mul(p)?.checked_sub(&b.checked_mul(q)?))
        .collect()
}

/// Divides by the gcd of the entries (keeps the sign).
pub fn make_primitive<T: ZInt>(v: &mut [T]) {
    let mut g = T::zero();
    for x in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = x.clone() / g.clone();
    }
}

/// Fraction-free row echelon form. Returns primitive rows and their pivot
/// columns.
pub fn echelon<T: ZInt>(rows: &[Vec<T>]) -> Option<(Vec<Vec<T>>, Vec<usize>)> {
    let mut a: Vec<Vec<T>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let n = rows.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut piv = Vec::new();
    for c in 0..n {
        let Some(p) = a.iter().position(|r| !r[c].is_zero()) else { continue };
        let pr = a.swap_remove(p);
        let mut next = Vec::with_capacity(a.len());
        for r in a.into_iter() {
            if r[c].is_zero() {
                next.push(r);
                continue;
            }
            let g = pr[c].gcd(&r[c]);
            let f1 = r[c].clone() / g.clone();
            let f2 = pr[c].clone() / g;
            let mut nr = comb(&f2, &r, &f1, &pr)?;
            if nr.iter().any(|x| !x.is_zero()) {
                make_primitive(&mut nr);
                next.push(nr);
            }
        }
        a = next;
        let mut pr = pr;
        make_primitive(&mut pr);
        out.push(pr);
        piv.push(c);
    }
    Some((out, piv))
}

pub fn rank<T: ZInt>(rows: &[Vec<T>]) -> Option<usize> {
    Some(echelon(rows)?.0.len())
}

/// Reduced echelon form with primitive rows and positive pivots; a
/// canonical description of the row space.
pub fn reduced_echelon<T: ZInt>(rows: &[Vec<T>]) -> Option<(Vec<Vec<T>>, Vec<usize>)> {
    let (mut e, piv) = echelon(rows)?;
    for i in (0..e.len()).rev() {
        for k in 0..i {
            let c = piv[i];
            if e[k][c].is_zero() {
                continue;
            }
            let g = e[i][c].gcd(&e[k][c]);
            let f1 = e[k][c].clone() / g.clone();
            let f2 = e[i][c].clone() / g;
            let mut nr = comb(&f2, &e[k], &f1, &e[i])?;
            make_primitive(&mut nr);
            e[k] = nr;
        }
    }
    for (row, &p) in e.iter_mut().zip(&piv) {
        if row[p].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    Some((e, piv))
}

/// Primitive integer basis of `{x : r·x = 0 for all rows r}` in `Z^n`.
pub fn nullspace<T: ZInt>(rows: &[Vec<T>], n: usize) -> Option<Vec<Vec<T>>> {
    let (e, piv) = reduced_echelon(rows)?;
    let mut out = Vec::new();
    for f in (0..n).filter(|c| !piv.contains(c)) {
        // x_f = L, x_{p_i} = -e_i[f] * L / e_i[p_i]
        let mut l = T::one();
        for (row, &p) in e.iter().zip(&piv) {
            if !row[f].is_zero() {
                l = l.lcm(&row[p]);
            }
        }
        let mut v = vec![T::zero(); n];
        v[f] = l.clone();
        for (row, &p) in e.iter().zip(&piv) {
            if !row[f].is_zero() {
                let q = l.clone() / row[p].clone();
                v[p] = -(row[f].checked_mul(&q)?);
            }
        }
        make_primitive(&mut v);
        out.push(v);
    }
    Some(out)
}

/// Canonical primitive generator of a line: first nonzero entry positive.
pub fn canonical_line<T: ZInt>(v: &mut [T]) {
    make_primitive(v);
    if let Some(f) = v.iter().find(|x| !x.is_zero()) {
        if f.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

/// Hermite normal form of the integer row span: positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. Equal spans give equal
/// output.
pub fn hermite<T: ZInt>(rows: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<T>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out: Vec<Vec<T>> = Vec::new();
    let mut piv = Vec::new();
    for c in 0..n {
        // gcd-combine all rows with a nonzero entry in column c
        let mut pivot: Option<Vec<T>> = None;
        let mut rest = Vec::with_capacity(a.len());
        for r in a.into_iter() {
            if r[c].is_zero() {
                rest.push(r);
                continue;
            }
            let Some(p) = pivot.take() else {
                pivot = Some(r);
                continue;
            };
            let g = p[c].extended_gcd(&r[c]);
            let (x, y) = (g.x, g.y);
            let d = g.gcd;
            let np: Vec<T> = p
                .iter()
                .zip(&r)
                .map(|(u, v)| x.checked_mul(u)?.checked_add(&y.checked_mul(v)?))
                .collect::<Option<_>>()?;
            let f1 = r[c].clone() / d.clone();
            let f2 = p[c].clone() / d;
            let nr = comb(&f2, &r, &f1, &p)?;
            if nr.iter().any(|x| !x.is_zero()) {
                rest.push(nr);
            }
            pivot = Some(np);
        }
        a = rest;
        if let Some(mut p) = pivot {
            if p[c].is_negative() {
                for x in p.iter_mut() {
                    *x = -x.clone();
                }
            }
            out.push(p);
            piv.push(c);
        }
    }
    for i in 0..out.len() {
        let c = piv[i];
        for k in 0..i {
            let q = out[k][c].div_floor(&out[i][c]);
            if q.is_zero() {
                continue;
            }
            let row = out[i].clone();
            for (x, y) in out[k].iter_mut().zip(&row) {
                *x = x.checked_sub(&q.checked_mul(y)?)?;
            }
        }
    }
    Some(out)
}

/// Runs `f` with `i128` arithmetic and falls back to `BigInt` on overflow.
#[macro_export]
macro_rules! with_int_backend {
    ($f:ident ( $($arg:expr),* )) => {
        match $f::<i128>($($arg),*) {
            Some(r) => r,
            None => $f::<num_bigint::BigInt>($($arg),*).expect("BigInt arithmetic cannot overflow"),
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_is_canonical() {
        let a: Vec<Vec<i128>> = vec![vec![2, 4, 0], vec![0, 3, 1]];
        let b: Vec<Vec<i128>> = vec![vec![2, 7, 1], vec![-2, -1, 1], vec![4, 11, 1]];
        assert_eq!(hermite(&a), hermite(&b));
        let c: Vec<Vec<i128>> = vec![vec![1, 2, 0], vec![0, 3, 1]];
        assert_ne!(hermite(&a), hermite(&c));
        assert_eq!(hermite(&[vec![4i128, 6], vec![6, 9]]).unwrap(), vec![vec![2, 3]]);
    }

    #[test]
    fn reduced_echelon_is_canonical() {
        let a: Vec<i128> = vec![-3, 3, 0];
        let b: Vec<i128> = vec![-3, 0, 3];
        let c: Vec<i128> = vec![0, -3, 3];
        let k1 = reduced_echelon(&[a.clone(), b.clone()]);
        assert_eq!(k1, reduced_echelon(&[b.clone(), c.clone()]));
        assert_eq!(k1, reduced_echelon(&[c, a]));
        assert_eq!(k1.unwrap().0, vec![vec![1, 0, -1], vec![0, 1, -1]]);
    }

    #[test]
    fn nullspace_of_plane() {
        let rows: Vec<Vec<i128>> = vec![vec![1, 1, 1]];
        let ns = nullspace(&rows, 3).unwrap();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(dot(&rows[0], v).unwrap(), 0);
        }
    }

    #[test]
    fn nullspace_matches_bigint() {
        let rows: Vec<Vec<i128>> = vec![vec![2, 4, -6, 1], vec![3, -1, 2, 5]];
        let a = nullspace(&rows, 4).unwrap();
        let rb: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect();
        let b = nullspace(&rb, 4).unwrap();
        let a2: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect();
        assert_eq!(a2, b);
        for v in &a {
            for r in &rows {
                assert_eq!(dot(r, v).unwrap(), 0);
            }
        }
    }

    #[test]
    fn rank_detects_dependence() {
        let rows: Vec<Vec<i128>> = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&rows), Some(2));
    }

    #[test]
    fn overflow_is_reported() {
        let big = i128::MAX / 2;
        assert_eq!(dot(&[big, big], &[4, 4]), None);
    }
}
