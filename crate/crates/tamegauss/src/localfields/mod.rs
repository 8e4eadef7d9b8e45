//! Unramified base fields, tame extensions, unit groups and characters
//! of K^x, and the tame Artin dictionary.

mod artin;
mod mulchar;
mod units;

pub use artin::{artin_dict, canonical_inertia_root, embeddings, Embedding};
pub use mulchar::MulChar;
pub use units::{UnitGroupPres, UnitTable};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::padic::check_odd_prime;
use crate::groups::{MetacyclicGroup, Subgroup};

/// The unramified extension K_f of Q_p, uniformizer p, different 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u64,
    pub f: u32,
    pub q: u64,
}

impl FieldDesc {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        check_odd_prime(p)?;
        if f == 0 {
            return Err(Error::Config("residue degree must be positive".into()));
        }
        let q = p.checked_pow(f).ok_or(Error::FieldTooLarge(u64::MAX))?;
        Ok(FieldDesc { p, f, q })
    }

    pub fn qp(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Exponent of the different; always 0 here.
    pub fn different_exponent(&self) -> u32 {
        0
    }

    /// v_K(p).
    pub fn valuation_of_p(&self) -> u32 {
        1
    }

    /// N(p_K) = q.
    pub fn norm_of_prime(&self) -> u64 {
        self.q
    }

    /// The unramified extension of relative degree r.
    pub fn extension(&self, r: u32) -> Result<Self> {
        Self::new(self.p, self.f * r)
    }
}

/// Sign of the tame symbol on units: `Inverse` sends u to t^(-k) where
/// the residue of u^((q-1)/e) is zeta^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Inverse,
    Direct,
}

/// L = K_f(pi), pi^e = p, over K; Galois group <t, s> with t the
/// inertia generator and s a Frobenius lift fixing pi.
#[derive(Debug, Clone)]
pub struct TameExtDesc {
    pub base: FieldDesc,
    pub group: Arc<MetacyclicGroup>,
    pub convention: Convention,
}

impl TameExtDesc {
    pub fn new(base: FieldDesc, e: u64, f: u64, convention: Convention) -> Result<Self> {
        let group = Arc::new(MetacyclicGroup::over(base.p, base.f, e, f)?);
        Ok(TameExtDesc { base, group, convention })
    }

    /// Over Q_p.
    pub fn over_qp(p: u64, e: u64, f: u64) -> Result<Self> {
        Self::new(FieldDesc::qp(p)?, e, f, Convention::default())
    }

    pub fn ramification_index(&self) -> u64 {
        self.group.e
    }

    pub fn residue_degree(&self) -> u64 {
        self.group.f
    }

    /// Fixed field of a subgroup containing inertia: unramified of
    /// degree [G : U] over K.
    pub fn fixed_field(&self, u: &Subgroup) -> Result<FieldDesc> {
        let d = u.residue_index().ok_or(Error::RamifiedBase)?;
        self.base.extension(d as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        let k = FieldDesc::new(5, 2).unwrap();
        assert_eq!(k.q, 25);
        assert_eq!(k.different_exponent(), 0);
        assert!(FieldDesc::new(2, 1).is_err());
        let e = TameExtDesc::over_qp(3, 4, 2).unwrap();
        assert_eq!(e.ramification_index() * e.residue_degree(), e.group.order() as u64);
        let st = e.group.stabilizer(2);
        assert_eq!(e.fixed_field(&st).unwrap().q, 9);
        assert!(e.fixed_field(&e.group.subgroup(&[e.group.s()])).is_err());
    }
}
