//! Finite-order characters of K^x, K unramified over Q_p.

use super::units::UnitGroupPres;
use super::FieldDesc;
use crate::error::{Error, Result};
use crate::exactnum::arith::{gcd, lcm, vp};
use crate::exactnum::{RootOfUnity, UnramInt};

/// chi on K^x = p^Z x mu_(q-1) x U^1, given by its values on the
/// generators of `UnitGroupPres` (which do not depend on the modulus).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MulChar {
    pub field: FieldDesc,
    /// chi(w(g)) on the Teichmueller generator.
    pub teich: RootOfUnity,
    /// chi(1 + p w(x^i)), length f.
    pub principal: Vec<RootOfUnity>,
    /// chi(p).
    pub pival: RootOfUnity,
}

impl MulChar {
    pub fn new(field: FieldDesc, teich: RootOfUnity, principal: Vec<RootOfUnity>, pival: RootOfUnity) -> Result<Self> {
        if principal.len() != field.f as usize {
            return Err(Error::Config(format!("expected {} principal values", field.f)));
        }
        if (field.q - 1) % teich.order() != 0 {
            return Err(Error::Config(format!("teichmueller value of order {} in a group of order {}", teich.order(), field.q - 1)));
        }
        for r in &principal {
            let o = r.order();
            if field.p.pow(vp(o as i128, field.p).unwrap_or(0)) != o {
                return Err(Error::Config(format!("principal value of order {o}, not a power of {}", field.p)));
            }
        }
        Ok(MulChar { field, teich, principal, pival })
    }

    pub fn trivial(field: FieldDesc) -> Self {
        Self::unramified(field, RootOfUnity::one())
    }

    pub fn unramified(field: FieldDesc, pival: RootOfUnity) -> Self {
        MulChar { field, teich: RootOfUnity::one(), principal: vec![RootOfUnity::one(); field.f as usize], pival }
    }

    /// From exponents: chi(w(g)) = zeta_(q-1)^k0, chi(g_i) = zeta_(p^(m-1))^k_i.
    pub fn from_exponents(field: FieldDesc, m: u32, k0: u64, ks: &[u64], pival: RootOfUnity) -> Result<Self> {
        let pm1 = field.p.pow(m.saturating_sub(1));
        let principal = (0..field.f as usize)
            .map(|i| RootOfUnity::new(pm1, ks.get(i).copied().unwrap_or(0) as i64))
            .collect();
        Self::new(field, RootOfUnity::new(field.q - 1, k0 as i64), principal, pival)
    }

    /// All characters trivial on U^m with the given value at p, in
    /// exponent order (trivial first).
    pub fn enumerate(field: FieldDesc, m: u32, pival: RootOfUnity) -> Result<Vec<Self>> {
        let pm1 = field.p.pow(m.saturating_sub(1));
        let count = (field.q - 1) * pm1.pow(field.f);
        let mut out = Vec::with_capacity(count as usize);
        for idx in 0..count {
            let k0 = idx % (field.q - 1);
            let mut rest = idx / (field.q - 1);
            let ks: Vec<u64> = (0..field.f)
                .map(|_| {
                    let k = rest % pm1;
                    rest /= pm1;
                    k
                })
                .collect();
            out.push(Self::from_exponents(field, m, k0, &ks, pival)?);
        }
        Ok(out)
    }

    pub fn is_unramified(&self) -> bool {
        self.teich.is_one() && self.principal.iter().all(|r| r.is_one())
    }

    /// m_chi: least m with chi trivial on U^m.
    pub fn conductor(&self) -> u32 {
        if self.is_unramified() {
            return 0;
        }
        let v = self
            .principal
            .iter()
            .map(|r| vp(r.order() as i128, self.field.p).unwrap_or(0))
            .max()
            .unwrap_or(0);
        1 + v
    }

    /// Least common multiple of the value orders.
    pub fn order(&self) -> u64 {
        let mut o = lcm(self.teich.order(), self.pival.order());
        for r in &self.principal {
            o = lcm(o, r.order());
        }
        o
    }

    /// Order of the restriction to units.
    pub fn unit_order(&self) -> u64 {
        self.principal.iter().fold(self.teich.order(), |o, r| lcm(o, r.order()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.field, o.field);
        MulChar {
            field: self.field,
            teich: self.teich.mul(&o.teich),
            principal: self.principal.iter().zip(&o.principal).map(|(a, b)| a.mul(b)).collect(),
            pival: self.pival.mul(&o.pival),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        MulChar {
            field: self.field,
            teich: self.teich.pow(k),
            principal: self.principal.iter().map(|a| a.pow(k)).collect(),
            pival: self.pival.pow(k),
        }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// sigma_a o chi for a coprime to the order.
    pub fn galois(&self, a: i64) -> Result<Self> {
        if gcd(a.unsigned_abs() % self.order().max(1), self.order()) != 1 && self.order() > 1 {
            return Err(Error::NotCoprime { a, level: self.order() });
        }
        Ok(self.pow(a))
    }

    /// Value on a unit given by generator exponents.
    pub fn value_at_exps(&self, exps: &[u64]) -> RootOfUnity {
        let mut acc = self.teich.pow(exps[0] as i64);
        for (r, a) in self.principal.iter().zip(&exps[1..]) {
            acc = acc.mul(&r.pow(*a as i64));
        }
        acc
    }

    /// chi(u) for a unit u known modulo p^N with N >= m_chi.
    pub fn value(&self, u: &UnramInt) -> Result<RootOfUnity> {
        let m = self.conductor().max(1);
        let pres = UnitGroupPres::get(self.field, m)?;
        Ok(self.value_at_exps(&pres.dlog(u)?))
    }

    /// chi(-1) = chi(w(g))^((q-1)/2).
    pub fn sign(&self) -> RootOfUnity {
        self.teich.pow(((self.field.q - 1) / 2) as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ring::Ring;

    #[test]
    fn conductors() {
        let k = FieldDesc::qp(5).unwrap();
        assert_eq!(MulChar::trivial(k).conductor(), 0);
        assert_eq!(MulChar::unramified(k, RootOfUnity::new(3, 1)).conductor(), 0);
        let tame = MulChar::from_exponents(k, 2, 2, &[0], RootOfUnity::one()).unwrap();
        assert_eq!(tame.conductor(), 1);
        let wild = MulChar::from_exponents(k, 2, 0, &[1], RootOfUnity::one()).unwrap();
        assert_eq!(wild.conductor(), 2);
        assert_eq!(MulChar::enumerate(k, 3, RootOfUnity::one()).unwrap().len(), 100);
    }

    #[test]
    fn conductor_by_kernel_scan() {
        for (p, f, mmax) in [(3, 1, 3), (5, 1, 3), (3, 2, 2)] {
            let k = FieldDesc::new(p, f).unwrap();
            let pres = UnitGroupPres::new(k, mmax).unwrap();
            let mut elems = Vec::new();
            for a0 in 0..pres.orders[0] {
                for idx in 0..pres.principal_count() {
                    let mut exps = vec![a0];
                    exps.extend(pres.principal_exps(idx));
                    elems.push((exps.clone(), pres.element(&exps)));
                }
            }
            let r = &pres.ring;
            for chi in MulChar::enumerate(k, mmax, RootOfUnity::one()).unwrap() {
                // least m with chi trivial on the units congruent to 1 mod p^m
                let scan = (0..=mmax)
                    .find(|&m| {
                        elems.iter().all(|(exps, u)| {
                            let in_um = m == 0 || {
                                let d = r.sub(u, &r.one());
                                d.coeffs().iter().all(|c| c % p.pow(m) == 0)
                            };
                            !in_um || chi.value_at_exps(exps).is_one()
                        })
                    })
                    .unwrap();
                assert_eq!(chi.conductor(), scan);
            }
        }
    }

    #[test]
    fn products_and_conductors() {
        let k = FieldDesc::qp(3).unwrap();
        let chars = MulChar::enumerate(k, 3, RootOfUnity::one()).unwrap();
        for a in &chars {
            let rho = MulChar::unramified(k, RootOfUnity::new(9, 2));
            assert_eq!(a.mul(&rho).conductor(), a.conductor());
            for b in &chars {
                let c = a.mul(b).conductor();
                assert!(c <= a.conductor().max(b.conductor()));
                if a.conductor() != b.conductor() {
                    assert_eq!(c, a.conductor().max(b.conductor()));
                }
            }
        }
    }
}
