//! Tower Gauss sums as monomials a * phi_K^k, type-W twists and
//! restriction functoriality.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::arith::vp;
use crate::exactnum::RootOfUnity;
use crate::gauss::{gauss_abelian, galois_equivariance, galois_index, NonabelianGauss};
use crate::groups::{LinearChar, VirtualChar};
use crate::localfields::MulChar;
use crate::Cyc;

/// scalar * phi_K^exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerMonomial {
    pub scalar: Cyc,
    pub exponent: i64,
}

impl TowerMonomial {
    pub fn one() -> Self {
        TowerMonomial { scalar: Cyc::one(), exponent: 0 }
    }

    pub fn mul(&self, o: &Self) -> Self {
        TowerMonomial { scalar: (&self.scalar * &o.scalar).normalized(), exponent: self.exponent + o.exponent }
    }

    pub fn is_unit(&self) -> bool {
        !self.scalar.is_zero()
    }

    /// rho^#: (a, k) -> (a rho(phi)^k, k).
    pub fn twist(&self, rho: &TypeWChar) -> Self {
        TowerMonomial {
            scalar: (&self.scalar * &rho.value.pow(self.exponent).to_cyc()).normalized(),
            exponent: self.exponent,
        }
    }

    /// Rewrite phi_K'^k as phi_K^(k r) for K'/K unramified of degree r.
    pub fn descend(&self, r: u32) -> Self {
        TowerMonomial { scalar: self.scalar.clone(), exponent: self.exponent * r as i64 }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "scalar": self.scalar.to_json(), "exponent": self.exponent })
    }
}

impl fmt::Display for TowerMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) phi^{}", self.scalar, self.exponent)
    }
}

/// A character of Gamma_K, given by its value at phi_K (p-power order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeWChar {
    pub p: u64,
    pub value: RootOfUnity,
}

impl TypeWChar {
    pub fn new(p: u64, value: RootOfUnity) -> Result<Self> {
        let o = value.order();
        if p.pow(vp(o as i128, p).unwrap_or(0)) != o {
            return Err(Error::Config(format!("type W character of order {o}, not a power of {p}")));
        }
        Ok(TypeWChar { p, value })
    }

    /// All characters of order dividing p^k.
    pub fn all(p: u64, k: u32) -> Vec<Self> {
        let n = p.pow(k);
        (0..n).map(|j| TypeWChar { p, value: RootOfUnity::new(n, j as i64) }).collect()
    }

    /// As an unramified character of K^x (rho(p) = rho(phi_K)).
    pub fn as_mulchar(&self, chi: &MulChar) -> MulChar {
        MulChar::unramified(chi.field, self.value)
    }
}

/// chi -> phi_K^(-m_chi) tau_K(chi) for a linear chi over unramified K.
pub fn tau_tower_linear(chi: &MulChar) -> Result<TowerMonomial> {
    let d_k = 0i64;
    Ok(TowerMonomial { scalar: gauss_abelian(chi)?.value, exponent: -(chi.conductor() as i64 + d_k) })
}

/// Tower value of a virtual character of the tame group.
pub fn tau_tower(ng: &NonabelianGauss, v: &VirtualChar) -> Result<TowerMonomial> {
    let g = ng.gauss_virtual(v)?;
    let a = ng.conductor(v)?;
    Ok(TowerMonomial { scalar: g.value, exponent: -a })
}

/// (tau(chi rho), rho^#(tau(chi))) for linear chi.
pub fn homw_check_linear(chi: &MulChar, rho: &TypeWChar) -> Result<(TowerMonomial, TowerMonomial)> {
    let lhs = tau_tower_linear(&chi.mul(&rho.as_mulchar(chi)))?;
    let rhs = tau_tower_linear(chi)?.twist(rho);
    Ok((lhs, rhs))
}

/// (tau(chi_i rho), rho^#(tau(chi_i))): the left side from the monomial
/// data of chi_i (x) rho, the right side through the Brauer composite.
pub fn homw_check(ng: &NonabelianGauss, i: usize, rho: &TypeWChar) -> Result<(TowerMonomial, TowerMonomial)> {
    let (theta, d) = ng.inducing_character(i)?;
    let twisted = theta.mul(&MulChar::unramified(theta.field, rho.value.pow(d as i64)));
    let lhs = TowerMonomial {
        scalar: ng.twisted_by_unramified(i, rho.value)?,
        exponent: -(d as i64) * twisted.conductor() as i64,
    };
    let rhs = tau_tower(ng, &VirtualChar::basis(ng.table.len(), i))?.twist(rho);
    Ok((lhs, rhs))
}

/// Restriction functoriality for K' = K_U, U containing inertia:
/// tower value of ind_U(lambda) over K against that of the transported
/// character over K' rewritten with phi_K' = phi_K^f(K'/K). Returns
/// (lhs, rhs, v_K(c_ind), f * v_K'(c)).
pub fn res_functoriality(ng: &NonabelianGauss, lambda: &LinearChar) -> Result<(TowerMonomial, TowerMonomial, i64, i64)> {
    let v = ng.table.induced_coords(lambda);
    let lhs = tau_tower(ng, &v)?;
    let chi = ng.transport(lambda)?;
    let r = lambda.sub.index() as u32;
    let rhs = tau_tower_linear(&chi)?.descend(r);
    let v_ind = ng.conductor(&v)?;
    let v_sub = r as i64 * chi.conductor() as i64;
    Ok((lhs, rhs, v_ind, v_sub))
}

/// Galois equivariance in tower form over Q_p:
/// (sigma_a^-1(tau(sigma_a chi)), chi(a) tau(chi)) as monomials.
pub fn galois_tower_check(chi: &MulChar, a: i64) -> Result<(TowerMonomial, TowerMonomial)> {
    let (l, r) = galois_equivariance(chi, a)?;
    let twisted = chi.galois(galois_index(chi, a)?.0)?;
    Ok((
        TowerMonomial { scalar: l, exponent: -(twisted.conductor() as i64) },
        TowerMonomial { scalar: r, exponent: -(chi.conductor() as i64) },
    ))
}
