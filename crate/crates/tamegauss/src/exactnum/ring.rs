//! Ring contexts. Elements are plain data; the context carries the
//! modulus, precision or level needed to operate on them.

use std::fmt::Debug;

pub trait Ring {
    type El: Clone + Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_int(&self, n: i64) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;

    fn equal(&self, a: &Self::El, b: &Self::El) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn pow(&self, a: &Self::El, mut e: u64) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, it: I) -> Self::El
    where
        I: IntoIterator<Item = &'a Self::El>,
        Self::El: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn product<'a, I>(&self, it: I) -> Self::El
    where
        I: IntoIterator<Item = &'a Self::El>,
        Self::El: 'a,
    {
        it.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::El) -> Option<Self::El>;
}

/// Rings where some elements are units and the inverse is computable
/// (e.g. Z/p^N, where units are the elements prime to p).
pub trait UnitRing: Ring {
    fn unit_inv(&self, a: &Self::El) -> Option<Self::El>;
}

impl<F: Field> UnitRing for F {
    fn unit_inv(&self, a: &Self::El) -> Option<Self::El> {
        self.inv(a)
    }
}

pub type Matrix<E> = Vec<Vec<E>>;

/// Division-free characteristic polynomial (Berkowitz). Returns
/// `c` with det(xI - A) = sum_i c[i] x^(n-i).
pub fn charpoly<R: Ring>(ring: &R, a: &Matrix<R::El>) -> Vec<R::El> {
    let n = a.len();
    if n == 0 {
        return vec![ring.one()];
    }
    let mut v = vec![ring.one(), ring.neg(&a[0][0])];
    for r in 1..n {
        // column C = a[0..r][r], row R = a[r][0..r]
        let col: Vec<R::El> = (0..r).map(|i| a[i][r].clone()).collect();
        let mut t = Vec::with_capacity(r + 2);
        t.push(ring.one());
        t.push(ring.neg(&a[r][r]));
        let mut w = col;
        for _ in 0..r {
            let rc = ring.sum((0..r).map(|j| ring.mul(&a[r][j], &w[j])).collect::<Vec<_>>().iter());
            t.push(ring.neg(&rc));
            w = (0..r)
                .map(|i| ring.sum((0..r).map(|j| ring.mul(&a[i][j], &w[j])).collect::<Vec<_>>().iter()))
                .collect();
        }
        let mut nv = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = ring.zero();
            for j in 0..=i.min(r) {
                if i - j < t.len() && j < v.len() {
                    acc = ring.add(&acc, &ring.mul(&t[i - j], &v[j]));
                }
            }
            nv.push(acc);
        }
        v = nv;
    }
    v
}

pub fn det<R: Ring>(ring: &R, a: &Matrix<R::El>) -> R::El {
    let n = a.len();
    let c = charpoly(ring, a);
    if n % 2 == 0 {
        c[n].clone()
    } else {
        ring.neg(&c[n])
    }
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> Matrix<R::El> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = ring.zero();
                    for l in 0..k {
                        acc = ring.add(&acc, &ring.mul(&a[i][l], &b[l][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Rank by Gaussian elimination, pivoting on units. Over a field this
/// is the usual rank; over Z/p^N a full-rank answer means the matrix
/// is invertible.
pub fn unit_rank<R: UnitRing>(ring: &R, a: &Matrix<R::El>) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| ring.unit_inv(&m[r][c]).is_some()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = ring.unit_inv(&m[rank][c]).unwrap();
        for j in c..cols {
            m[rank][j] = ring.mul(&m[rank][j], &inv);
        }
        for r in 0..rows {
            if r != rank && !ring.is_zero(&m[r][c]) {
                let f = m[r][c].clone();
                for j in c..cols {
                    let d = ring.mul(&f, &m[rank][j]);
                    m[r][j] = ring.sub(&m[r][j], &d);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Solve A x = b for square A, pivoting on units. `None` when a unit
/// pivot cannot be found in some column.
pub fn unit_solve<R: UnitRing>(ring: &R, a: &Matrix<R::El>, b: &[R::El]) -> Option<Vec<R::El>> {
    let n = a.len();
    let mut m: Matrix<R::El> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| ring.unit_inv(&m[r][c]).is_some())?;
        m.swap(c, piv);
        let inv = ring.unit_inv(&m[c][c]).unwrap();
        for j in c..=n {
            m[c][j] = ring.mul(&m[c][j], &inv);
        }
        for r in 0..n {
            if r != c && !ring.is_zero(&m[r][c]) {
                let f = m[r][c].clone();
                for j in c..=n {
                    let d = ring.mul(&f, &m[c][j]);
                    m[r][j] = ring.sub(&m[r][j], &d);
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Integers as a ring, for testing generic code.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Ring for Integers {
    type El = i128;
    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn from_int(&self, n: i64) -> i128 {
        n as i128
    }
    fn add(&self, a: &i128, b: &i128) -> i128 {
        a + b
    }
    fn sub(&self, a: &i128, b: &i128) -> i128 {
        a - b
    }
    fn neg(&self, a: &i128) -> i128 {
        -a
    }
    fn mul(&self, a: &i128, b: &i128) -> i128 {
        a * b
    }
    fn is_zero(&self, a: &i128) -> bool {
        *a == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leibniz(a: &Matrix<i128>) -> i128 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for j in 0..n {
            let minor: Matrix<i128> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| a[i][c]).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            total += s * a[0][j] * leibniz(&minor);
        }
        total
    }

    #[test]
    fn berkowitz_matches_cofactor_expansion() {
        let mut seed = 7i128;
        for n in 0..6 {
            for _ in 0..5 {
                let a: Matrix<i128> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                seed = (seed * 1103515245 + 12345) % 2147483648;
                                seed % 11 - 5
                            })
                            .collect()
                    })
                    .collect();
                assert_eq!(det(&Integers, &a), leibniz(&a));
            }
        }
    }
}
