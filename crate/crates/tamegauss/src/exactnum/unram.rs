//! Truncated integers of the unramified extension of Q_p of degree f,
//! modelled as (Z/p^N)[x]/(h) with h the integer lift of the least
//! irreducible polynomial of degree f over F_p.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::arith::{ilog, mod_inv, mod_mul};
use super::ffield::{ResidueElem, ResidueField};
use super::padic::{check_odd_prime, modulus, PadicInt};
use super::ring::{Ring, UnitRing};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnramInt {
    prec: u32,
    coeffs: Vec<u64>,
}

impl UnramInt {
    pub fn prec(&self) -> u32 {
        self.prec
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// Ring context for O_K / p^N, K unramified of degree f.
#[derive(Debug)]
pub struct UnramRing {
    pub p: u64,
    pub f: u32,
    pub prec: u32,
    pub h: Vec<u64>,
    pub residue: Arc<ResidueField>,
    frob_x: Vec<u64>,
    frob_prec: u32,
}

static RING_CACHE: OnceLock<RwLock<HashMap<(u64, u32, u32), Arc<UnramRing>>>> = OnceLock::new();

impl UnramRing {
    pub fn get(p: u64, f: u32, prec: u32) -> Result<Arc<UnramRing>> {
        let cache = RING_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(r) = cache.read().unwrap().get(&(p, f, prec)) {
            return Ok(r.clone());
        }
        let r = Arc::new(UnramRing::new(p, f, prec)?);
        cache.write().unwrap().insert((p, f, prec), r.clone());
        Ok(r)
    }

    pub fn new(p: u64, f: u32, prec: u32) -> Result<Self> {
        check_odd_prime(p)?;
        modulus(p, prec)?;
        let residue = ResidueField::get(p, f)?;
        let h = residue.modulus.clone();
        let frob_prec = prec.max(1);
        let mut ring = UnramRing { p, f, prec, h, residue, frob_x: vec![], frob_prec };
        ring.frob_x = ring.compute_frobenius_root(frob_prec)?;
        Ok(ring)
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    fn m(&self, prec: u32) -> u64 {
        self.p.pow(prec)
    }

    pub fn element(&self, prec: u32, coeffs: &[i128]) -> UnramInt {
        let prec = prec.min(self.prec);
        let m = self.m(prec) as i128;
        let mut c: Vec<u64> = coeffs.iter().map(|x| x.rem_euclid(m) as u64).collect();
        c.resize(self.f as usize, 0);
        UnramInt { prec, coeffs: c }
    }

    pub fn from_padic(&self, a: &PadicInt) -> UnramInt {
        self.element(a.prec(), &[a.value() as i128])
    }

    pub fn at_prec(&self, x: &UnramInt, prec: u32) -> UnramInt {
        let prec = prec.min(x.prec);
        let m = self.m(prec);
        UnramInt { prec, coeffs: x.coeffs.iter().map(|c| c % m).collect() }
    }

    /// The constant term as a p-adic integer.
    pub fn constant(&self, x: &UnramInt) -> PadicInt {
        PadicInt::new(self.p, x.prec, x.coeffs[0] as i128).unwrap()
    }

    pub fn is_rational(&self, x: &UnramInt) -> bool {
        x.coeffs[1..].iter().all(|c| *c == 0)
    }

    pub fn reduce(&self, x: &UnramInt) -> ResidueElem {
        let d: Vec<u64> = x.coeffs.iter().map(|c| c % self.p).collect();
        self.residue.encode(&d)
    }

    /// Digit-wise lift of a residue element.
    pub fn lift(&self, xi: ResidueElem, prec: u32) -> UnramInt {
        let d = self.residue.decode(xi);
        self.element(prec, &d.iter().map(|c| *c as i128).collect::<Vec<_>>())
    }

    /// Minimum p-adic valuation of the coefficients, `None` if zero mod p^N.
    pub fn valuation(&self, x: &UnramInt) -> Option<u32> {
        x.coeffs
            .iter()
            .filter_map(|c| PadicInt::new(self.p, x.prec, *c as i128).unwrap().valuation())
            .min()
    }

    pub fn mul_prec(&self, a: &UnramInt, b: &UnramInt) -> UnramInt {
        let prec = a.prec.min(b.prec);
        let m = self.m(prec);
        let f = self.f as usize;
        let mut prod = vec![0u128; 2 * f - 1];
        let m128 = m as u128;
        for i in 0..f {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..f {
                prod[i + j] = (prod[i + j] + (a.coeffs[i] as u128 % m128) * (b.coeffs[j] as u128 % m128)) % m128;
            }
        }
        let mut prod: Vec<u64> = prod.into_iter().map(|x| x as u64).collect();
        for i in (f..2 * f - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..f {
                let t = mod_mul(c, self.h[j], m);
                prod[i - f + j] = (prod[i - f + j] + m - t) % m;
            }
        }
        prod.truncate(f);
        UnramInt { prec, coeffs: prod }
    }

    pub fn scale(&self, a: &UnramInt, c: i128) -> UnramInt {
        let m = self.m(a.prec);
        let c = c.rem_euclid(m as i128) as u64;
        UnramInt { prec: a.prec, coeffs: a.coeffs.iter().map(|x| mod_mul(*x, c, m)).collect() }
    }

    /// Exact division by p; the precision drops by one.
    pub fn div_p(&self, a: &UnramInt) -> Result<UnramInt> {
        if a.coeffs.iter().any(|c| c % self.p != 0) || a.prec == 0 {
            return Err(Error::NotPrincipalUnit);
        }
        Ok(UnramInt { prec: a.prec - 1, coeffs: a.coeffs.iter().map(|c| (c / self.p) % self.m(a.prec - 1)).collect() })
    }

    /// Multiply by p; the precision rises by one.
    pub fn mul_p(&self, a: &UnramInt) -> UnramInt {
        let prec = (a.prec + 1).min(self.prec);
        let m = self.m(prec);
        UnramInt { prec, coeffs: a.coeffs.iter().map(|c| (c * self.p) % m).collect() }
    }

    pub fn inv(&self, a: &UnramInt) -> Result<UnramInt> {
        let r = self.reduce(a);
        let r_inv = super::ring::Field::inv(&*self.residue, &r).ok_or(Error::NotInvertible)?;
        let mut y = self.lift(r_inv, a.prec);
        let two = self.element(a.prec, &[2]);
        let mut k = 1;
        while k < a.prec {
            let ay = self.mul_prec(a, &y);
            y = self.mul_prec(&y, &self.sub(&two, &ay));
            k *= 2;
        }
        Ok(y)
    }

    fn eval_poly_at(&self, poly: &[u64], x: &UnramInt) -> UnramInt {
        let mut acc = self.element(x.prec, &[0]);
        for c in poly.iter().rev() {
            acc = self.add(&self.mul_prec(&acc, x), &self.element(x.prec, &[*c as i128]));
        }
        acc
    }

    fn compute_frobenius_root(&self, prec: u32) -> Result<Vec<u64>> {
        if self.f == 1 {
            return Ok(vec![0]);
        }
        let x = self.element(prec, &[0, 1]);
        let mut r = self.pow(&x, self.p);
        let dh: Vec<u64> = (1..self.h.len()).map(|i| self.h[i] * i as u64).collect();
        for _ in 0..=(prec as usize).next_power_of_two().trailing_zeros() + 1 {
            let num = self.eval_poly_at(&self.h, &r);
            let den = self.eval_poly_at(&dh, &r);
            let step = self.mul_prec(&num, &self.inv(&den)?);
            r = self.sub(&r, &step);
        }
        Ok(r.coeffs)
    }

    /// The Frobenius lift sigma (x -> root of h near x^p).
    pub fn frobenius(&self, a: &UnramInt) -> UnramInt {
        if self.f == 1 {
            return a.clone();
        }
        let r = self.at_prec(&UnramInt { prec: self.frob_prec, coeffs: self.frob_x.clone() }, a.prec);
        let mut acc = self.element(a.prec, &[0]);
        for c in a.coeffs.iter().rev() {
            acc = self.add(&self.mul_prec(&acc, &r), &self.element(a.prec, &[*c as i128]));
        }
        acc
    }

    pub fn frobenius_pow(&self, a: &UnramInt, k: u32) -> UnramInt {
        let mut x = a.clone();
        for _ in 0..k % self.f.max(1) {
            x = self.frobenius(&x);
        }
        x
    }

    pub fn conjugates(&self, a: &UnramInt) -> Vec<UnramInt> {
        let mut out = vec![a.clone()];
        for _ in 1..self.f {
            let next = self.frobenius(out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// Teichmueller representative of a residue element (Newton on X^(q-1) - 1).
    pub fn teichmuller(&self, xi: ResidueElem, prec: u32) -> UnramInt {
        let prec = prec.min(self.prec);
        if xi == 0 {
            return self.element(prec, &[0]);
        }
        let q = self.q();
        let mut x = self.lift(xi, prec);
        let one = self.element(prec, &[1]);
        let mut k = 1;
        while k < prec {
            // x <- x - (x^(q-1) - 1) / ((q-1) x^(q-2))
            let xq2 = self.pow(&x, q - 2);
            let xq1 = self.mul_prec(&xq2, &x);
            let num = self.sub(&xq1, &one);
            let den = self.scale(&xq2, (q - 1) as i128);
            let step = self.mul_prec(&num, &self.inv(&den).expect("Teichmueller derivative is a unit"));
            x = self.sub(&x, &step);
            k *= 2;
        }
        x
    }

    /// (trace, norm) to Q_p, as sum and product over the conjugates.
    pub fn trace_norm(&self, a: &UnramInt) -> (PadicInt, PadicInt) {
        let conj = self.conjugates(a);
        let tr = conj.iter().skip(1).fold(conj[0].clone(), |acc, x| self.add(&acc, x));
        let nm = conj.iter().skip(1).fold(conj[0].clone(), |acc, x| self.mul_prec(&acc, x));
        debug_assert!(self.is_rational(&tr) && self.is_rational(&nm));
        (self.constant(&tr), self.constant(&nm))
    }

    /// p-adic logarithm of a principal unit.
    pub fn log(&self, u: &UnramInt) -> Result<LogValue> {
        let n = u.prec;
        let one = self.element(n, &[1]);
        let y = self.div_p(&self.sub(u, &one))?;
        let m = self.m(n) as i128;
        let mut acc = self.element(n, &[0]);
        let mut yk = self.element(n.saturating_sub(1), &[1]);
        let mut k: u64 = 1;
        // terms p^(k - v_p(k)) y^k / k' vanish once k - log_p(k) >= n
        while (k as u32).saturating_sub(ilog(k, self.p)) < n {
            let v = super::arith::vp(k as i128, self.p).unwrap();
            let shift = k as u32 - v;
            yk = self.mul_prec(&yk, &y);
            if shift < n {
                let kp = (k / self.p.pow(v)) as i128;
                let kinv = mod_inv(kp, m).unwrap();
                let sign = if k % 2 == 1 { 1 } else { -1 };
                let pw = (self.p as i128).pow(shift);
                let widened = UnramInt { prec: n, coeffs: yk.coeffs.clone() };
                let term = self.scale(&widened, (sign * pw % m) * kinv % m);
                acc = self.add(&acc, &term);
            }
            k += 1;
        }
        Ok(LogValue { value: acc, effective_prec: effective_log_precision(n, self.p) })
    }
}

/// Reported precision of a logarithm computed at precision n.
pub fn effective_log_precision(n: u32, p: u64) -> u32 {
    n.saturating_sub(ilog(n.max(1) as u64, p) + 1)
}

#[derive(Debug, Clone)]
pub struct LogValue {
    pub value: UnramInt,
    pub effective_prec: u32,
}

impl Ring for UnramRing {
    type El = UnramInt;
    fn zero(&self) -> UnramInt {
        self.element(self.prec, &[0])
    }
    fn one(&self) -> UnramInt {
        self.element(self.prec, &[1])
    }
    fn from_int(&self, n: i64) -> UnramInt {
        self.element(self.prec, &[n as i128])
    }
    fn add(&self, a: &UnramInt, b: &UnramInt) -> UnramInt {
        let prec = a.prec.min(b.prec);
        let m = self.m(prec);
        UnramInt { prec, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x % m + y % m) % m).collect() }
    }
    fn sub(&self, a: &UnramInt, b: &UnramInt) -> UnramInt {
        let prec = a.prec.min(b.prec);
        let m = self.m(prec);
        UnramInt { prec, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x % m + m - y % m) % m).collect() }
    }
    fn neg(&self, a: &UnramInt) -> UnramInt {
        let m = self.m(a.prec);
        UnramInt { prec: a.prec, coeffs: a.coeffs.iter().map(|x| (m - x % m) % m).collect() }
    }
    fn mul(&self, a: &UnramInt, b: &UnramInt) -> UnramInt {
        self.mul_prec(a, b)
    }
    fn is_zero(&self, a: &UnramInt) -> bool {
        a.coeffs.iter().all(|c| *c == 0)
    }
}

impl UnitRing for UnramRing {
    fn unit_inv(&self, a: &UnramInt) -> Option<UnramInt> {
        self.inv(a).ok()
    }
}
