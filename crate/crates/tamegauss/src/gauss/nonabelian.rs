//! tau_K(chi) = prod_U tau_{K_U}(lambda_U)^(z_U) over a decomposition
//! chi - chi(1) 1 = sum z_U ind_U(lambda_U - 1), with every U containing
//! inertia so that each K_U is unramified over K.

use std::sync::Arc;

use super::{gauss_abelian, gauss_inverse, GaussValue, Provenance};
use crate::error::Result;
use crate::exactnum::RootOfUnity;
use crate::groups::{restrict, BrauerSolver, CharTable, Deg0Decomp, Family, LinearChar, RootSum, VirtualChar};
use crate::localfields::{artin_dict, MulChar, TameExtDesc};
use crate::Cyc;

#[derive(Debug, Clone)]
pub struct NonabelianGauss {
    pub ext: TameExtDesc,
    pub table: Arc<CharTable>,
    pub solver: BrauerSolver,
}

impl NonabelianGauss {
    pub fn new(ext: TameExtDesc) -> Result<Self> {
        let table = Arc::new(CharTable::new(ext.group.clone()));
        let solver = BrauerSolver::with_family(table.clone(), Family::OverInertia)?;
        Ok(NonabelianGauss { ext, table, solver })
    }

    /// Same extension, generators in a shuffled order.
    pub fn permuted(&self, seed: u64) -> Result<Self> {
        let solver = BrauerSolver::permuted(self.table.clone(), Family::OverInertia, seed)?;
        Ok(NonabelianGauss { ext: self.ext.clone(), table: self.table.clone(), solver })
    }

    /// v - deg(v) 1.
    pub fn degree_zero(&self, v: &VirtualChar) -> VirtualChar {
        let mut w = v.clone();
        w.coeffs[self.table.trivial_index()] -= self.table.degree(v);
        w
    }

    pub fn decompose(&self, v: &VirtualChar) -> Result<Deg0Decomp> {
        self.solver.decompose(&self.degree_zero(v))
    }

    /// The character of K_U^x attached to a term.
    pub fn transport(&self, lambda: &LinearChar) -> Result<MulChar> {
        artin_dict(&self.ext, lambda)
    }

    pub fn tau_of_decomp(&self, d: &Deg0Decomp) -> Result<Cyc> {
        let mut acc = Cyc::one();
        for t in &d.terms {
            let chi = self.transport(&t.lambda)?;
            let base = if t.z > 0 { gauss_abelian(&chi)?.value } else { gauss_inverse(&chi)? };
            for _ in 0..t.z.unsigned_abs() {
                acc = &acc * &base;
            }
        }
        Ok(acc.normalized())
    }

    pub fn gauss_virtual(&self, v: &VirtualChar) -> Result<GaussValue> {
        let d = self.decompose(v)?;
        let value = self.tau_of_decomp(&d)?;
        Ok(GaussValue { value, provenance: Provenance::BrauerComposite(d) })
    }

    /// tau_K of the i-th irreducible.
    pub fn gauss(&self, i: usize) -> Result<GaussValue> {
        self.gauss_virtual(&VirtualChar::basis(self.table.len(), i))
    }

    /// Artin conductor exponent of a virtual character.
    pub fn conductor(&self, v: &VirtualChar) -> Result<i64> {
        conductor_of_decomp(&self.ext, &self.decompose(v)?)
    }

    /// tau_K(chi_i (x) rho) for rho unramified with rho(p) = r, through
    /// the monomial data: chi_i (x) rho = ind_St(lambda (x) res rho), so the
    /// sum is tau_{K_St}(artin(lambda) rho o N).
    pub fn twisted_by_unramified(&self, i: usize, r: RootOfUnity) -> Result<Cyc> {
        let mono = &self.table.irr[i].monomial;
        let chi = self.transport(&mono.lambda)?;
        let rho = MulChar::unramified(chi.field, r.pow(mono.d as i64));
        Ok(gauss_abelian(&chi.mul(&rho))?.value)
    }

    /// Irreducible as ind_St(lambda): the transported character over K_St.
    pub fn inducing_character(&self, i: usize) -> Result<(MulChar, u64)> {
        let mono = &self.table.irr[i].monomial;
        Ok((self.transport(&mono.lambda)?, mono.d))
    }
}

/// sum z_U f(K_U/K) m(lambda_U).
pub fn conductor_of_decomp(ext: &TameExtDesc, d: &Deg0Decomp) -> Result<i64> {
    let mut a = 0i64;
    for t in &d.terms {
        let chi = artin_dict(ext, &t.lambda)?;
        a += t.z * t.sub.index() as i64 * chi.conductor() as i64;
    }
    Ok(a)
}

pub fn artin_conductor(ng: &NonabelianGauss, v: &VirtualChar) -> Result<i64> {
    ng.conductor(v)
}

/// Tame formula: chi(1) - dim of inertia invariants, extended linearly.
pub fn tame_conductor(table: &CharTable, v: &VirtualChar) -> i64 {
    let inertia = table.group.inertia();
    let one = vec![RootSum::int(1); inertia.order()];
    v.coeffs
        .iter()
        .zip(&table.irr)
        .map(|(c, chi)| {
            let res = restrict(&chi.values, &inertia);
            let inv = crate::groups::characters::inner_product(&res, &one, table.level).expect("restriction is a character");
            c * (chi.degree as i64 - inv)
        })
        .sum()
}
