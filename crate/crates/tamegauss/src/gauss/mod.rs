//! Local Galois Gauss sums over unramified fields, twists, conductors
//! and Galois equivariance; non-abelian sums by induction in degree 0.

mod nonabelian;

pub use nonabelian::{artin_conductor, conductor_of_decomp, tame_conductor, NonabelianGauss};

use num_rational::BigRational;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::arith::{gcd, lcm, mod_inv};
use crate::exactnum::ring::Ring;
use crate::exactnum::{RootOfUnity, UnramInt};
use crate::groups::Deg0Decomp;
use crate::localfields::{MulChar, UnitGroupPres};
use crate::Cyc;

#[derive(Debug, Clone)]
pub enum Provenance {
    AbelianDirect,
    BrauerComposite(Deg0Decomp),
}

#[derive(Debug, Clone)]
pub struct GaussValue {
    pub value: Cyc,
    pub provenance: Provenance,
}

pub fn root(r: &RootOfUnity) -> Cyc {
    r.to_cyc()
}

/// tau_K(chi) = sum over u in U/U^m of chi(u c^-1) psi_K(u c^-1), c = p^m,
/// psi_K(u p^-m) = zeta_(p^m)^(Tr u mod p^m). Equal to 1 when m = 0.
pub fn gauss_abelian(chi: &MulChar) -> Result<GaussValue> {
    let m = chi.conductor();
    gauss_abelian_prec(chi, m)
}

/// As `gauss_abelian`, with unit traces read at precision `prec`.
pub fn gauss_abelian_prec(chi: &MulChar, prec: u32) -> Result<GaussValue> {
    let m = chi.conductor();
    if prec < m {
        return Err(Error::Precision { have: prec, need: m });
    }
    if m == 0 {
        return Ok(GaussValue { value: Cyc::one(), provenance: Provenance::AbelianDirect });
    }
    let pres = UnitGroupPres::get(chi.field, m)?;
    let table = pres.table()?;
    let pm = chi.field.p.pow(m);
    let level = lcm(chi.unit_order(), pm);
    let t_exp = chi.teich.exponent_at(level);
    let p_exps: Vec<u64> = chi.principal.iter().map(|r| r.exponent_at(level)).collect();
    // chi exponent on each principal class
    let pc = table.principal_count;
    let mut principal_val = Vec::with_capacity(pc);
    for idx in 0..pc as u64 {
        let exps = pres.principal_exps(idx);
        principal_val.push(exps.iter().zip(&p_exps).map(|(a, k)| a * k % level).sum::<u64>() % level);
    }
    let step = level / pm;
    let mut counts = vec![0i64; level as usize];
    for (i, tr) in table.traces.iter().enumerate() {
        let a0 = (i / pc) as u64;
        let e = (a0 * t_exp + principal_val[i % pc] + tr * step) % level;
        counts[e as usize] += 1;
    }
    let sum = Cyc::from_exponent_counts(level, &counts);
    let value = (&sum * &root(&chi.pival.pow(-(m as i64)))).normalized();
    debug_assert!(!value.is_zero());
    Ok(GaussValue { value, provenance: Provenance::AbelianDirect })
}

/// The same sum with c = v p^m for a unit v: chi(v)^-1 chi(p)^-m
/// sum chi(u) zeta^(Tr(u/v)). Enumerates elements directly.
pub fn gauss_with_unit(chi: &MulChar, v: &UnramInt) -> Result<Cyc> {
    let m = chi.conductor();
    if m == 0 {
        return Ok(Cyc::one());
    }
    let pres = UnitGroupPres::get(chi.field, m)?;
    let r = &pres.ring;
    let vinv = r.inv(&r.at_prec(v, m))?;
    let pm = chi.field.p.pow(m);
    let level = lcm(chi.unit_order(), pm);
    let mut counts = vec![0i64; level as usize];
    for a0 in 0..pres.orders[0] {
        for idx in 0..pres.principal_count() {
            let mut exps = vec![a0];
            exps.extend(pres.principal_exps(idx));
            let u = pres.element(&exps);
            let tr = pres.trace_mod(&r.mul(&u, &vinv));
            let e = chi.value_at_exps(&exps).exponent_at(level) + tr * (level / pm);
            counts[(e % level) as usize] += 1;
        }
    }
    let sum = Cyc::from_exponent_counts(level, &counts);
    let factor = chi.value(v)?.inv().mul(&chi.pival.pow(-(m as i64)));
    Ok((&sum * &root(&factor)).normalized())
}

/// (tau(chi) tau(chi^-1), chi(-1) q^m).
pub fn modulus_identity(chi: &MulChar) -> Result<(Cyc, Cyc)> {
    let a = gauss_abelian(chi)?.value;
    let b = gauss_abelian(&chi.inv())?.value;
    let q_m = BigInt::from(chi.field.q).pow(chi.conductor());
    let rhs = &root(&chi.sign()) * &Cyc::from_scalar(BigRational::from_integer(q_m));
    Ok(((&a * &b).normalized(), rhs.normalized()))
}

/// (tau(chi rho), rho(c_chi^-1) tau(chi)) for unramified rho.
pub fn gauss_twist(chi: &MulChar, rho: &MulChar) -> Result<(GaussValue, GaussValue)> {
    if !rho.is_unramified() {
        return Err(Error::Ramified);
    }
    let lhs = gauss_abelian(&chi.mul(rho))?;
    let tau = gauss_abelian(chi)?;
    let factor = rho.pival.pow(-(chi.conductor() as i64));
    let rhs = GaussValue { value: (&tau.value * &root(&factor)).normalized(), provenance: Provenance::AbelianDirect };
    Ok((lhs, rhs))
}

/// Exact inverse of a Gauss sum, from tau(chi) tau(chi^-1) = chi(-1) q^m,
/// confirmed by multiplication.
pub fn gauss_inverse(chi: &MulChar) -> Result<Cyc> {
    let tau = gauss_abelian(chi)?.value;
    let q_m = BigInt::from(chi.field.q).pow(chi.conductor());
    let inv_scalar = Cyc::from_scalar(BigRational::new(BigInt::from(1), q_m));
    let cand = &(&gauss_abelian(&chi.inv())?.value * &root(&chi.sign().inv())) * &inv_scalar;
    if (&cand * &tau) == Cyc::one() {
        return Ok(cand.normalized());
    }
    tau.inverse().ok_or(Error::NotInvertible)
}

/// sigma_a as an index modulo the even level 2L or L of the sums
/// attached to chi: Q(zeta_(2L)) = Q(zeta_L) for odd L, so a is moved to
/// its odd representative.
pub fn galois_index(chi: &MulChar, a: i64) -> Result<(i64, u64)> {
    let mut level = lcm(chi.order(), chi.field.p.pow(chi.conductor()));
    if level % 4 == 2 {
        level /= 2;
    }
    if gcd(a.rem_euclid(level as i64) as u64, level) != 1 {
        return Err(Error::NotCoprime { a, level });
    }
    let mut a = a.rem_euclid(level as i64);
    if level % 2 == 1 {
        if a % 2 == 0 {
            a += level as i64;
        }
        level *= 2;
    }
    Ok((a, level))
}

/// Over Q_p: (sigma_a^-1(tau(sigma_a o chi)), chi(a) tau(chi)) for a
/// coprime to the level of the sums.
pub fn galois_equivariance(chi: &MulChar, a: i64) -> Result<(Cyc, Cyc)> {
    if chi.field.f != 1 {
        return Err(Error::Config("galois equivariance check runs over Q_p".into()));
    }
    let m = chi.conductor();
    let (a, level) = galois_index(chi, a)?;
    let twisted = chi.galois(a)?;
    let tau_t = gauss_abelian(&twisted)?.value.lift(level)?;
    let ainv = mod_inv(a as i128, level as i128).unwrap() as i64;
    let lhs = tau_t.galois(ainv)?.normalized();
    let tau = gauss_abelian(chi)?.value;
    let chi_a = if m == 0 {
        RootOfUnity::one()
    } else {
        let pres = UnitGroupPres::get(chi.field, m)?;
        chi.value(&pres.ring.element(m, &[a as i128]))?
    };
    let rhs = (&tau * &root(&chi_a)).normalized();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfields::FieldDesc;

    fn quadratic(p: u64) -> MulChar {
        let k = FieldDesc::qp(p).unwrap();
        MulChar::from_exponents(k, 1, (p - 1) / 2, &[], RootOfUnity::one()).unwrap()
    }

    #[test]
    fn classical_quadratic_sums() {
        for p in [3u64, 5, 7, 13] {
            let chi = quadratic(p);
            let tau = gauss_abelian(&chi).unwrap().value;
            let sq = (&tau * &tau).normalized();
            let sign = if p % 4 == 1 { 1 } else { -1 };
            assert_eq!(sq, Cyc::from_int(sign * p as i64));
        }
    }

    #[test]
    fn quadratic_mod_5_by_hand() {
        // 4-term sum: zeta5 - zeta5^2 - zeta5^3 + zeta5^4
        let tau = gauss_abelian(&quadratic(5)).unwrap().value;
        let mut counts = vec![0i64; 5];
        for u in 1..5u64 {
            let leg = if u == 1 || u == 4 { 1 } else { -1 };
            counts[u as usize] += leg;
        }
        assert_eq!(tau, Cyc::from_exponent_counts(5, &counts));
    }

    #[test]
    fn unramified_is_one() {
        let k = FieldDesc::new(3, 2).unwrap();
        let rho = MulChar::unramified(k, RootOfUnity::new(4, 1));
        assert_eq!(gauss_abelian(&rho).unwrap().value, Cyc::one());
        assert!(gauss_abelian_prec(&quadratic(5), 0).is_err());
    }

    #[test]
    fn modulus_identity_small() {
        for (p, f, m) in [(3, 1, 2), (5, 1, 2), (3, 2, 2)] {
            let k = FieldDesc::new(p, f).unwrap();
            for chi in MulChar::enumerate(k, m, RootOfUnity::new(3, 1)).unwrap() {
                if chi.conductor() == 0 {
                    continue;
                }
                let (l, r) = modulus_identity(&chi).unwrap();
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn twist_by_zeta4() {
        let k = FieldDesc::qp(3).unwrap();
        let chi = quadratic(3);
        let rho = MulChar::unramified(k, RootOfUnity::new(4, 1));
        let (l, r) = gauss_twist(&chi, &rho).unwrap();
        assert_eq!(l.value, r.value);
        // direct: tau(chi rho) = rho(p)^-1 * tau(chi)
        let direct = &gauss_abelian(&chi).unwrap().value * &Cyc::zeta(4, -1);
        assert_eq!(l.value, direct);
        assert!(gauss_twist(&chi, &chi).is_err());
    }

    #[test]
    fn independent_of_unit_in_c() {
        let k = FieldDesc::new(3, 2).unwrap();
        let pres = UnitGroupPres::get(k, 2).unwrap();
        for chi in MulChar::enumerate(k, 2, RootOfUnity::new(2, 1)).unwrap().iter().step_by(7) {
            let tau = gauss_abelian(chi).unwrap().value;
            for v in [vec![2u64, 1, 0], vec![5, 0, 2]] {
                let u = pres.element(&v);
                assert_eq!(gauss_with_unit(chi, &u).unwrap(), tau);
            }
        }
    }

    #[test]
    fn galois_action_quadratic_mod_5() {
        let chi = quadratic(5);
        let (l, r) = galois_equivariance(&chi, 2).unwrap();
        assert_eq!(l, r);
        let tau = gauss_abelian(&chi).unwrap().value;
        assert_eq!(r, -tau);
        assert!(galois_equivariance(&chi, 5).is_err());
    }

    #[test]
    fn inverse_via_modulus() {
        let chi = quadratic(7);
        let inv = gauss_inverse(&chi).unwrap();
        assert_eq!(&inv * &gauss_abelian(&chi).unwrap().value, Cyc::one());
    }
}
