//! Fixed-precision p-adic integers Z/p^N.

use std::fmt;

use super::arith::{is_prime, mod_inv, mod_mul, mod_pow};
use super::ring::{Ring, UnitRing};
use crate::error::{Error, Result};

/// p^n, or an error if it does not fit in 63 bits.
pub fn modulus(p: u64, n: u32) -> Result<u64> {
    match p.checked_pow(n) {
        Some(m) if m < (1 << 63) => Ok(m),
        _ => Err(Error::ModulusTooLarge { p, n }),
    }
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// An element of Z_p known modulo p^prec.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    prec: u32,
    value: u64,
}

impl PadicInt {
    pub fn new(p: u64, prec: u32, value: i128) -> Result<Self> {
        let m = modulus(p, prec)?;
        Ok(PadicInt { p, prec, value: value.rem_euclid(m as i128) as u64 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn prec(&self) -> u32 {
        self.prec
    }
    pub fn value(&self) -> u64 {
        self.value
    }
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.prec)
    }

    /// Symmetric representative in (-p^N/2, p^N/2].
    pub fn signed(&self) -> i128 {
        let m = self.modulus() as i128;
        let v = self.value as i128;
        if 2 * v > m {
            v - m
        } else {
            v
        }
    }

    /// v_p, or `None` when the value is 0 modulo p^N.
    pub fn valuation(&self) -> Option<u32> {
        if self.value == 0 {
            return None;
        }
        let mut v = 0;
        let mut x = self.value;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        Some(v)
    }

    pub fn reduce(&self, prec: u32) -> Self {
        let prec = prec.min(self.prec);
        PadicInt { p: self.p, prec, value: self.value % self.p.pow(prec) }
    }

    fn align(&self, o: &Self) -> Result<(u32, u64)> {
        if self.p != o.p {
            return Err(Error::PrimeMismatch(self.p, o.p));
        }
        let prec = self.prec.min(o.prec);
        Ok((prec, self.p.pow(prec)))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let (prec, m) = self.align(o)?;
        Ok(PadicInt { p: self.p, prec, value: ((self.value % m) + (o.value % m)) % m })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let (prec, m) = self.align(o)?;
        Ok(PadicInt { p: self.p, prec, value: ((self.value % m) + m - (o.value % m)) % m })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let (prec, m) = self.align(o)?;
        Ok(PadicInt { p: self.p, prec, value: mod_mul(self.value, o.value, m) })
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        PadicInt { p: self.p, prec: self.prec, value: (m - self.value) % m }
    }

    pub fn pow(&self, e: u64) -> Self {
        PadicInt { p: self.p, prec: self.prec, value: mod_pow(self.value, e, self.modulus()) }
    }

    pub fn inv(&self) -> Result<Self> {
        let m = self.modulus();
        match mod_inv(self.value as i128, m as i128) {
            Some(v) => Ok(PadicInt { p: self.p, prec: self.prec, value: v as u64 }),
            None => Err(Error::NotInvertible),
        }
    }

    /// Equality modulo the smaller of the two precisions.
    pub fn congruent(&self, o: &Self) -> bool {
        self.align(o).map(|(_, m)| self.value % m == o.value % m).unwrap_or(false)
    }
}

impl fmt::Debug for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.value, self.p, self.prec)
    }
}

/// Z/p^N as a ring context on raw residues.
#[derive(Debug, Clone, Copy)]
pub struct Zpn {
    pub p: u64,
    pub prec: u32,
    pub modulus: u64,
}

impl Zpn {
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        Ok(Zpn { p, prec, modulus: modulus(p, prec)? })
    }

    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(self.modulus as i128) as u64
    }
}

impl Ring for Zpn {
    type El = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce(n as i128)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mod_mul(*a, *b, self.modulus)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

impl UnitRing for Zpn {
    fn unit_inv(&self, a: &u64) -> Option<u64> {
        if a % self.p == 0 {
            return None;
        }
        mod_inv(*a as i128, self.modulus as i128).map(|v| v as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_precision_results() {
        let a = PadicInt::new(5, 4, 7).unwrap();
        let b = PadicInt::new(5, 2, 24).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c.prec(), 2);
        assert_eq!(c.value(), (7 * 24) % 25);
        assert_eq!(PadicInt::new(5, 3, 250).unwrap().valuation(), None);
        assert_eq!(PadicInt::new(5, 4, 250).unwrap().valuation(), Some(3));
        assert!(PadicInt::new(3, 2, 1).unwrap().add(&PadicInt::new(5, 2, 1).unwrap()).is_err());
    }

    #[test]
    fn inverses() {
        let a = PadicInt::new(3, 5, 7).unwrap();
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap().value(), 1);
        assert!(PadicInt::new(3, 5, 6).unwrap().inv().is_err());
    }
}
