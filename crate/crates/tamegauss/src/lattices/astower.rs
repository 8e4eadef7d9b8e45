//! Towers of Artin-Schreier extensions theta_n^p - theta_n = beta_n over
//! a base ring R. Level n has rank p^n over R; an element is the flat
//! vector of its coordinates, theta_n being the most significant digit.
//!
//! With beta_1 of nonzero absolute trace and beta_n = beta_(n-1)
//! theta_(n-1)^(p-1), every step is irreducible mod p, so over F_q the
//! levels are F_(q^(p^n)) and over O_K / p^N they are the unramified
//! layers.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::ring::{det, Field, Matrix, Ring, UnitRing};
use crate::exactnum::ResidueField;

/// F_q with addition and multiplication tables, encoded as in
/// `ResidueField`.
#[derive(Debug)]
pub struct SmallField {
    pub p: u64,
    pub f: u32,
    pub q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    frob: Vec<u32>,
    pub field: Arc<ResidueField>,
}

pub const MAX_SMALL_FIELD: u64 = 1024;

impl SmallField {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        let field = ResidueField::get(p, f)?;
        if field.q > MAX_SMALL_FIELD {
            return Err(Error::FieldTooLarge(field.q));
        }
        let q = field.q as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q as u32 {
            for b in 0..q as u32 {
                add[a as usize * q + b as usize] = field.add(&a, &b);
                mul[a as usize * q + b as usize] = field.mul(&a, &b);
            }
        }
        let neg = (0..q as u32).map(|a| field.neg(&a)).collect();
        let inv = (0..q as u32).map(|a| field.inv(&a).unwrap_or(0)).collect();
        let frob = (0..q as u32).map(|a| field.frob(a)).collect();
        Ok(SmallField { p, f, q, add, mul, neg, inv, frob, field })
    }

    /// x -> x^p.
    pub fn frob(&self, a: u32) -> u32 {
        self.frob[a as usize]
    }
}

impl Ring for SmallField {
    type El = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add[*a as usize * self.q + *b as usize]
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add[*a as usize * self.q + self.neg[*b as usize] as usize]
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg[*a as usize]
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul[*a as usize * self.q + *b as usize]
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn equal(&self, a: &u32, b: &u32) -> bool {
        a == b
    }
}

impl Field for SmallField {
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.inv[*a as usize])
        }
    }
}

impl SmallField {
    /// Row rank of a matrix over F_q.
    pub fn rank(&self, rows: &[Vec<u32>]) -> usize {
        let mut m: Vec<Vec<u32>> = rows.to_vec();
        let nrows = m.len();
        let ncols = m.first().map_or(0, |r| r.len());
        let q = self.q;
        let mut rank = 0;
        for c in 0..ncols {
            let Some(piv) = (rank..nrows).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = self.inv[m[rank][c] as usize] as usize;
            let prow: Vec<u32> = m[rank].iter().map(|x| self.mul[inv * q + *x as usize]).collect();
            for r in rank + 1..nrows {
                let fct = m[r][c] as usize;
                if fct == 0 {
                    continue;
                }
                let mrow = &self.mul[self.neg[fct] as usize * q..][..q];
                for (x, y) in m[r][c..].iter_mut().zip(&prow[c..]) {
                    *x = self.add[*x as usize * q + mrow[*y as usize] as usize];
                }
            }
            m[rank] = prow;
            rank += 1;
        }
        rank
    }
}

/// Base rings carrying an absolute Frobenius x -> x^p.
pub trait Frobenius: Ring {
    fn frob(&self, a: &Self::El) -> Self::El;
}

impl Frobenius for SmallField {
    fn frob(&self, a: &u32) -> u32 {
        SmallField::frob(self, *a)
    }
}

#[derive(Debug)]
pub struct AsTower<R: Ring> {
    pub base: Arc<R>,
    pub p: usize,
    pub depth: usize,
    /// betas[n - 1] lives at level n - 1 and defines theta_n.
    betas: Vec<Vec<R::El>>,
    /// Images theta_n + beta_n of theta_n under x -> x^p, powers 0..p.
    frob_powers: Vec<Vec<Vec<R::El>>>,
}

impl<R: Ring> AsTower<R> {
    pub fn new(base: Arc<R>, p: u64, depth: usize, beta1: R::El) -> Self {
        let mut t = AsTower { base, p: p as usize, depth, betas: vec![vec![beta1]], frob_powers: vec![] };
        for n in 2..=depth {
            let prev = t.embed(n - 2, n - 1, &t.betas[n - 2]);
            let th = t.theta(n - 1);
            let b = t.mul(n - 1, &prev, &t.pow(n - 1, &th, p as u64 - 1));
            t.betas.push(b);
        }
        t.betas.truncate(depth.max(1));
        t.frob_powers.push(vec![]);
        for n in 1..=depth {
            let img = t.add(n, &t.theta(n), &t.embed(n - 1, n, &t.betas[n - 1]));
            let mut pw = vec![t.one(n)];
            for i in 1..t.p {
                pw.push(t.mul(n, &pw[i - 1], &img));
            }
            t.frob_powers.push(pw);
        }
        t
    }

    pub fn dim(&self, n: usize) -> usize {
        self.p.pow(n as u32)
    }

    pub fn beta(&self, n: usize) -> &[R::El] {
        &self.betas[n - 1]
    }

    pub fn zero(&self, n: usize) -> Vec<R::El> {
        vec![self.base.zero(); self.dim(n)]
    }

    pub fn one(&self, n: usize) -> Vec<R::El> {
        self.scalar(n, self.base.one())
    }

    pub fn scalar(&self, n: usize, c: R::El) -> Vec<R::El> {
        let mut v = self.zero(n);
        v[0] = c;
        v
    }

    pub fn theta(&self, n: usize) -> Vec<R::El> {
        let mut v = self.zero(n);
        v[self.dim(n - 1)] = self.base.one();
        v
    }

    /// Level `from` into level `to` >= from.
    pub fn embed(&self, from: usize, to: usize, x: &[R::El]) -> Vec<R::El> {
        let mut v = self.zero(to);
        v[..x.len()].clone_from_slice(x);
        debug_assert_eq!(x.len(), self.dim(from));
        v
    }

    pub fn add(&self, _n: usize, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    pub fn sub(&self, _n: usize, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    pub fn scale(&self, a: &[R::El], c: &R::El) -> Vec<R::El> {
        a.iter().map(|x| self.base.mul(x, c)).collect()
    }

    pub fn is_zero(&self, a: &[R::El]) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    pub fn mul(&self, n: usize, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
        let mut out = self.zero(n);
        let mut scratch = vec![self.base.zero(); self.scratch_len(n)];
        self.mul_into(n, a, b, &mut out, &mut scratch);
        out
    }

    fn scratch_len(&self, n: usize) -> usize {
        (1..=n).map(|k| 2 * self.p * self.dim(k - 1)).sum::<usize>() + 1
    }

    fn mul_into(&self, n: usize, a: &[R::El], b: &[R::El], out: &mut [R::El], scratch: &mut [R::El]) {
        if n == 0 {
            out[0] = self.base.mul(&a[0], &b[0]);
            return;
        }
        let p = self.p;
        let d = self.dim(n - 1);
        let (c, rest) = scratch.split_at_mut((2 * p - 1) * d);
        let (tmp, rest) = rest.split_at_mut(d);
        for x in c.iter_mut() {
            *x = self.base.zero();
        }
        for i in 0..p {
            let ai = &a[i * d..(i + 1) * d];
            if self.is_zero(ai) {
                continue;
            }
            for j in 0..p {
                let bj = &b[j * d..(j + 1) * d];
                if self.is_zero(bj) {
                    continue;
                }
                self.mul_into(n - 1, ai, bj, tmp, rest);
                for (x, y) in c[(i + j) * d..(i + j + 1) * d].iter_mut().zip(tmp.iter()) {
                    *x = self.base.add(x, y);
                }
            }
        }
        // theta^(p + r) = theta^(r + 1) + beta theta^r
        for k in (p..2 * p - 1).rev() {
            let (lo, hi) = c.split_at_mut(k * d);
            let top = &hi[..d];
            if self.is_zero(top) {
                continue;
            }
            for (x, y) in lo[(k - p + 1) * d..(k - p + 2) * d].iter_mut().zip(top) {
                *x = self.base.add(x, y);
            }
            self.mul_into(n - 1, &self.betas[n - 1], top, tmp, rest);
            for (x, y) in lo[(k - p) * d..(k - p + 1) * d].iter_mut().zip(tmp.iter()) {
                *x = self.base.add(x, y);
            }
        }
        out.clone_from_slice(&c[..p * d]);
    }

    pub fn pow(&self, n: usize, a: &[R::El], mut e: u64) -> Vec<R::El> {
        let mut base = a.to_vec();
        let mut acc = self.one(n);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(n, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(n, &base, &base);
            }
        }
        acc
    }

    /// Level-(n-1) scalar times a level-n element.
    fn scalar_mul(&self, n: usize, c: &[R::El], x: &[R::El]) -> Vec<R::El> {
        let d = self.dim(n - 1);
        (0..self.p).flat_map(|i| self.mul(n - 1, c, &x[i * d..(i + 1) * d])).collect()
    }

    /// Tr_(n / n-1): the traces of theta^k are p, 0, ..., 0, p - 1.
    pub fn rel_trace(&self, n: usize, x: &[R::El]) -> Vec<R::El> {
        let d = self.dim(n - 1);
        let c0 = self.scale(&x[..d], &self.base.from_int(self.p as i64));
        let top = self.scale(&x[(self.p - 1) * d..], &self.base.from_int(self.p as i64 - 1));
        self.add(n - 1, &c0, &top)
    }

    /// Trace from level n down to level `to`.
    pub fn trace_to(&self, n: usize, to: usize, x: &[R::El]) -> Vec<R::El> {
        let mut y = x.to_vec();
        for k in (to + 1..=n).rev() {
            y = self.rel_trace(k, &y);
        }
        y
    }

    /// Matrix of multiplication by x on the basis 1, theta, .., theta^(p-1)
    /// over level n - 1 (column j holds x theta^j).
    pub fn mult_matrix(&self, n: usize, x: &[R::El]) -> Matrix<Vec<R::El>> {
        let d = self.dim(n - 1);
        let th = self.theta(n);
        let mut cols = vec![x.to_vec()];
        for j in 1..self.p {
            cols.push(self.mul(n, &cols[j - 1], &th));
        }
        (0..self.p).map(|i| (0..self.p).map(|j| cols[j][i * d..(i + 1) * d].to_vec()).collect()).collect()
    }

    /// N_(n / n-1) as the determinant of multiplication.
    pub fn rel_norm(&self, n: usize, x: &[R::El]) -> Vec<R::El> {
        det(&self.level(n - 1), &self.mult_matrix(n, x))
    }

    pub fn level(&self, n: usize) -> TowerLevel<'_, R> {
        TowerLevel { tower: self, n }
    }
}

impl<R: UnitRing> AsTower<R> {
    /// Compatible sequence b_0 = 1, b_n = b_(n-1) theta_n^(p-1) / (p-1):
    /// Tr_(n / n-1)(b_n) = b_(n-1).
    pub fn trace_compatible_sequence(&self) -> Vec<Vec<R::El>> {
        let c = self.base.unit_inv(&self.base.from_int(self.p as i64 - 1)).expect("p - 1 is a unit");
        let mut out = vec![self.one(0)];
        for n in 1..=self.depth {
            let prev = self.embed(n - 1, n, &out[n - 1]);
            let tp = self.pow(n, &self.theta(n), self.p as u64 - 1);
            out.push(self.scale(&self.mul(n, &prev, &tp), &c));
        }
        out
    }
}

impl<R: Frobenius> AsTower<R> {
    /// x -> x^p on level n.
    pub fn frob(&self, n: usize, x: &[R::El]) -> Vec<R::El> {
        if n == 0 {
            return vec![self.base.frob(&x[0])];
        }
        let d = self.dim(n - 1);
        let mut acc = self.zero(n);
        for i in 0..self.p {
            let c = self.frob(n - 1, &x[i * d..(i + 1) * d]);
            if self.is_zero(&c) {
                continue;
            }
            acc = self.add(n, &acc, &self.scalar_mul(n, &c, &self.frob_powers[n][i]));
        }
        acc
    }

    pub fn frob_pow(&self, n: usize, x: &[R::El], k: u64) -> Vec<R::El> {
        let mut y = x.to_vec();
        for _ in 0..k {
            y = self.frob(n, &y);
        }
        y
    }
}

/// One level of a tower as a ring.
pub struct TowerLevel<'a, R: Ring> {
    pub tower: &'a AsTower<R>,
    pub n: usize,
}

impl<R: Ring> Ring for TowerLevel<'_, R> {
    type El = Vec<R::El>;
    fn zero(&self) -> Self::El {
        self.tower.zero(self.n)
    }
    fn one(&self) -> Self::El {
        self.tower.one(self.n)
    }
    fn from_int(&self, k: i64) -> Self::El {
        self.tower.scalar(self.n, self.tower.base.from_int(k))
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.tower.add(self.n, a, b)
    }
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.tower.sub(self.n, a, b)
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        a.iter().map(|x| self.tower.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.tower.mul(self.n, a, b)
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        self.tower.is_zero(a)
    }
}
