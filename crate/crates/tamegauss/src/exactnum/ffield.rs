//! Finite fields F_{p^f} with log/antilog tables, and the polynomial
//! helpers over F_p used to pick the defining polynomial.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::arith::{factorize, mod_inv, mod_pow};
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Largest field size for which tables are built.
pub const MAX_TABLE_FIELD: u64 = 1 << 22;

/// Polynomials over F_p, little-endian coefficient vectors.
pub mod fp_poly {
    use super::*;

    pub fn trim(a: &mut Vec<u64>) {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
        if a.is_empty() {
            a.push(0);
        }
    }

    pub fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|c| *c == 0)
    }

    pub fn deg(a: &[u64]) -> Option<usize> {
        a.iter().rposition(|c| *c != 0)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo `m` (m nonzero).
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let dm = deg(m).expect("division by zero polynomial");
        let inv = mod_inv(m[dm] as i128, p as i128).unwrap() as u64;
        let mut r = a.to_vec();
        while let Some(dr) = deg(&r) {
            if dr < dm {
                break;
            }
            let c = r[dr] * inv % p;
            for j in 0..=dm {
                r[dr - dm + j] = (r[dr - dm + j] + p - c * m[j] % p) % p;
            }
        }
        trim(&mut r);
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !is_zero(&y) {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(d) = deg(&x) {
            let inv = mod_inv(x[d] as i128, p as i128).unwrap() as u64;
            for c in x.iter_mut() {
                *c = *c * inv % p;
            }
        }
        x
    }

    pub fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Ben-Or irreducibility test for a monic polynomial.
    pub fn is_irreducible(h: &[u64], p: u64) -> bool {
        let d = match deg(h) {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let mut xp = x.clone();
        for _ in 0..d / 2 {
            xp = powmod(&xp, p, h, p);
            let g = gcd(h, &sub(&xp, &x, p), p);
            if deg(&g) != Some(0) {
                return false;
            }
        }
        true
    }

    /// Least monic irreducible of degree f, ordering candidates by the
    /// integer sum c_i p^i of their lower coefficients.
    pub fn least_irreducible(p: u64, f: u32) -> Vec<u64> {
        let f = f as usize;
        let total = p.pow(f as u32);
        for k in 0..total {
            let mut h = Vec::with_capacity(f + 1);
            let mut x = k;
            for _ in 0..f {
                h.push(x % p);
                x /= p;
            }
            h.push(1);
            if f > 1 && h[0] == 0 {
                continue;
            }
            if is_irreducible(&h, p) {
                return h;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}

/// The field F_{p^f} = F_p[x]/(h). Elements are encoded as sum c_i p^i.
#[derive(Debug)]
pub struct ResidueField {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub modulus: Vec<u64>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Element of a residue field in its encoded form.
pub type ResidueElem = u32;

static FIELD_CACHE: OnceLock<RwLock<HashMap<(u64, u32), Arc<ResidueField>>>> = OnceLock::new();

impl ResidueField {
    /// Shared instance for (p, f).
    pub fn get(p: u64, f: u32) -> Result<Arc<ResidueField>> {
        let cache = FIELD_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(k) = cache.read().unwrap().get(&(p, f)) {
            return Ok(k.clone());
        }
        let k = Arc::new(ResidueField::new(p, f)?);
        cache.write().unwrap().insert((p, f), k.clone());
        Ok(k)
    }

    pub fn new(p: u64, f: u32) -> Result<Self> {
        let q = p.checked_pow(f).filter(|q| *q <= MAX_TABLE_FIELD).ok_or(Error::FieldTooLarge(p.saturating_pow(f)))?;
        let modulus = fp_poly::least_irreducible(p, f);
        let mut field = ResidueField { p, f, q, modulus, generator: 0, exp: vec![], log: vec![] };
        let order = q - 1;
        let primes: Vec<u64> = factorize(order).into_iter().map(|(l, _)| l).collect();
        let mut g = 1u32;
        loop {
            let gp = field.decode(g);
            let ok = primes.iter().all(|l| {
                let r = fp_poly::powmod(&gp, order / l, &field.modulus, p);
                !(fp_poly::deg(&r) == Some(0) && r[0] == 1)
            });
            if ok || q == 2 {
                break;
            }
            g += 1;
        }
        field.generator = g;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let gp = field.decode(g);
        let mut cur = vec![1u64];
        for i in 0..order {
            let code = field.encode(&cur);
            exp.push(code);
            log[code as usize] = i as u32;
            cur = fp_poly::rem(&fp_poly::mul(&cur, &gp, p), &field.modulus, p);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn decode(&self, x: u32) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.f as usize);
        let mut v = x as u64;
        for _ in 0..self.f {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn encode(&self, c: &[u64]) -> u32 {
        let mut v = 0u64;
        for i in (0..self.f as usize).rev() {
            v = v * self.p + c.get(i).copied().unwrap_or(0) % self.p;
        }
        v as u32
    }

    /// Embed an element of F_p.
    pub fn scalar(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// Discrete logarithm to the fixed generator; `None` for 0.
    pub fn dlog(&self, x: u32) -> Option<u64> {
        if x == 0 {
            None
        } else {
            Some(self.log[x as usize] as u64)
        }
    }

    pub fn gen_pow(&self, k: i64) -> u32 {
        self.exp[k.rem_euclid((self.q - 1) as i64) as usize]
    }

    pub fn pow_el(&self, x: u32, e: i64) -> u32 {
        if x == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let l = self.log[x as usize] as i128;
        self.exp[(l * e as i128).rem_euclid((self.q - 1) as i128) as usize]
    }

    /// x -> x^p.
    pub fn frob(&self, x: u32) -> u32 {
        self.pow_el(x, self.p as i64)
    }

    pub fn frob_pow(&self, x: u32, k: u32) -> u32 {
        let e = mod_pow(self.p, k as u64, self.q - 1);
        self.pow_el(x, if e == 0 { (self.q - 1) as i64 } else { e as i64 })
    }

    /// Trace to F_p, returned as an integer in [0, p).
    pub fn trace(&self, x: u32) -> u64 {
        let mut acc = 0u32;
        let mut y = x;
        for _ in 0..self.f {
            acc = self.add(&acc, &y);
            y = self.frob(y);
        }
        acc as u64
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: u32) -> u64 {
        let n = self.q - 1;
        let l = self.log[x as usize] as u64;
        n / super::arith::gcd(l, n)
    }

    /// Smallest-encoded root of a polynomial with F_p coefficients.
    pub fn find_root(&self, poly: &[u64]) -> Option<u32> {
        (0..self.q as u32).find(|&x| {
            let mut acc = 0u32;
            for c in poly.iter().rev() {
                acc = self.add(&self.mul(&acc, &x), &self.scalar(*c as i64));
            }
            acc == 0
        })
    }

    /// Minimal polynomial over F_p of x, little-endian, monic.
    pub fn min_poly(&self, x: u32) -> Vec<u64> {
        let mut conj = vec![x];
        let mut y = self.frob(x);
        while y != x {
            conj.push(y);
            y = self.frob(y);
        }
        let mut poly = vec![1u32];
        for r in conj {
            // multiply by (X - r)
            let mut next = vec![0u32; poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = self.add(&next[i + 1], c);
                next[i] = self.sub(&next[i], &self.mul(c, &r));
            }
            poly = next;
        }
        poly.into_iter()
            .map(|c| {
                debug_assert!((c as u64) < self.p);
                c as u64
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }
}

impl Ring for ResidueField {
    type El = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_int(&self, n: i64) -> u32 {
        self.scalar(n)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let p = self.p as u32;
        let (mut x, mut y) = (*a, *b);
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        out
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let p = self.p as u32;
        let (mut x, mut y) = (*a, *b);
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 || y > 0 {
            let d = (x % p + p - y % p) % p;
            out += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        out
    }
    fn neg(&self, a: &u32) -> u32 {
        self.sub(&0, a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let n = self.q as usize - 1;
        let s = self.log[*a as usize] as usize + self.log[*b as usize] as usize;
        self.exp[if s >= n { s - n } else { s }]
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn equal(&self, a: &u32, b: &u32) -> bool {
        a == b
    }
}

impl Field for ResidueField {
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[*a as usize] as u64;
        Some(self.exp[((n - l) % n) as usize])
    }
}
