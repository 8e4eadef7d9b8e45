//! Degree-0 Brauer decompositions chi0 = sum z_U ind_U(lambda_U - 1_U).

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::characters::{induce, CharTable, ClassFn, LinearChar, VirtualChar};
use super::metacyclic::{brauer_subgroups, Subgroup};
use super::snf::{smith, Snf};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Deg0Term {
    pub sub: Subgroup,
    pub lambda: LinearChar,
    pub z: i64,
}

#[derive(Debug, Clone)]
pub struct Deg0Decomp {
    pub terms: Vec<Deg0Term>,
}

impl Deg0Decomp {
    /// Sum z ind_U(lambda - 1) as a class function on G.
    pub fn recompose(&self, table: &CharTable) -> ClassFn {
        let mut out = ClassFn::zero(table.level, table.group.order());
        for t in &self.terms {
            let diff: Vec<_> = t
                .lambda
                .values()
                .iter()
                .map(|v| v.sub(&super::characters::RootSum::int(1)))
                .collect();
            out = out.add(&induce(&t.sub, &diff, table.level).scale(t.z));
        }
        out
    }

    pub fn l1(&self) -> i64 {
        self.terms.iter().map(|t| t.z.abs()).sum()
    }

    /// Canonical key for comparing decompositions.
    pub fn key(&self) -> Vec<(Vec<usize>, Vec<u32>, i64)> {
        let mut k: Vec<_> = self.terms.iter().map(|t| (t.sub.elements.clone(), t.lambda.exps.clone(), t.z)).collect();
        k.sort();
        k
    }
}

/// Which subgroups U contribute generators ind_U(lambda - 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// U cyclic or U containing <t>.
    CyclicOrOverInertia,
    /// U containing <t> only; the fixed fields are then unramified.
    OverInertia,
}

fn family_generators(table: &CharTable, family: Family) -> Vec<LinearChar> {
    let g = table.group.clone();
    let cyclic = family == Family::CyclicOrOverInertia;
    let mut gens = Vec::new();
    for u in brauer_subgroups(&g, cyclic, true) {
        for lambda in super::characters::linear_characters(&u, table.level) {
            if !lambda.is_trivial() {
                gens.push(lambda);
            }
        }
    }
    gens
}

/// The generating family and its coordinate matrix.
#[derive(Debug, Clone)]
pub struct BrauerSolver {
    pub table: Arc<CharTable>,
    pub gens: Vec<LinearChar>,
    pub columns: Vec<VirtualChar>,
    snf: Snf,
}

impl BrauerSolver {
    /// Generators (U, lambda) with U cyclic or containing <t>, lambda nontrivial.
    pub fn new(table: Arc<CharTable>) -> Result<Self> {
        Self::with_family(table, Family::CyclicOrOverInertia)
    }

    pub fn with_family(table: Arc<CharTable>, family: Family) -> Result<Self> {
        let gens = family_generators(&table, family);
        Self::with_generators(table, gens)
    }

    /// Same family, generator order shuffled by a seeded permutation.
    pub fn permuted(table: Arc<CharTable>, family: Family, seed: u64) -> Result<Self> {
        let mut gens = family_generators(&table, family);
        gens.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Self::with_generators(table, gens)
    }

    pub fn with_generators(table: Arc<CharTable>, gens: Vec<LinearChar>) -> Result<Self> {
        let columns: Vec<VirtualChar> = gens
            .iter()
            .map(|l| {
                let triv = LinearChar::trivial(&l.sub, l.level);
                table.induced_coords(l).sub(&table.induced_coords(&triv))
            })
            .collect();
        let rows = table.len();
        let a: Vec<Vec<i64>> = (0..rows).map(|i| columns.iter().map(|c| c.coeffs[i]).collect()).collect();
        let snf = smith(&a)?;
        Ok(BrauerSolver { table, gens, columns, snf })
    }

    fn to_decomp(&self, x: &[i128]) -> Result<Deg0Decomp> {
        let mut terms = Vec::new();
        for (i, &z) in x.iter().enumerate() {
            if z != 0 {
                let z = i64::try_from(z).map_err(|_| Error::Resource("coefficient overflow".into()))?;
                terms.push(Deg0Term { sub: self.gens[i].sub.clone(), lambda: self.gens[i].clone(), z });
            }
        }
        Ok(Deg0Decomp { terms })
    }

    fn check(&self, chi0: &VirtualChar, d: &Deg0Decomp) -> Result<()> {
        if !d.recompose(&self.table).same_values(&self.table.class_fn(chi0)) {
            return Err(Error::Unsolvable);
        }
        Ok(())
    }

    /// Some integer solution straight from the Smith form, no reduction.
    pub fn particular(&self, chi0: &VirtualChar) -> Result<Vec<i128>> {
        if self.table.degree(chi0) != 0 {
            return Err(Error::NonzeroDegree(self.table.degree(chi0)));
        }
        self.snf.solve(&chi0.coeffs)?.ok_or(Error::Unsolvable)
    }

    pub fn kernel(&self) -> Vec<Vec<i128>> {
        self.snf.kernel()
    }

    /// Unreduced decomposition in the solver's generator order.
    pub fn decompose_raw(&self, chi0: &VirtualChar) -> Result<Deg0Decomp> {
        let x = self.particular(chi0)?;
        let d = self.to_decomp(&x)?;
        self.check(chi0, &d)?;
        Ok(d)
    }

    /// Decomposition with small l1 norm: single-generator solutions when
    /// they exist, otherwise greedy descent over +-kernel moves with
    /// lexicographic tie-break.
    pub fn decompose(&self, chi0: &VirtualChar) -> Result<Deg0Decomp> {
        let x0 = self.particular(chi0)?;
        for (i, c) in self.columns.iter().enumerate() {
            for sgn in [1i64, -1] {
                if c.scale(sgn) == *chi0 {
                    let mut x = vec![0i128; self.gens.len()];
                    x[i] = sgn as i128;
                    let d = self.to_decomp(&x)?;
                    self.check(chi0, &d)?;
                    return Ok(d);
                }
            }
        }
        if chi0.coeffs.iter().all(|c| *c == 0) {
            return Ok(Deg0Decomp { terms: vec![] });
        }
        let x = l1_descent(x0, &self.kernel());
        let d = self.to_decomp(&x)?;
        self.check(chi0, &d)?;
        Ok(d)
    }

    /// A decomposition different from `d` (shifted by a kernel vector),
    /// if the kernel is nontrivial.
    pub fn alternate(&self, chi0: &VirtualChar, d: &Deg0Decomp, k: usize) -> Result<Option<Deg0Decomp>> {
        let ker = self.kernel();
        if ker.is_empty() {
            return Ok(None);
        }
        let mut x = vec![0i128; self.gens.len()];
        for t in &d.terms {
            let i = self.gens.iter().position(|g| g == &t.lambda).ok_or(Error::Unsolvable)?;
            x[i] += t.z as i128;
        }
        let v = &ker[k % ker.len()];
        for (a, b) in x.iter_mut().zip(v) {
            *a += b;
        }
        let alt = self.to_decomp(&x)?;
        self.check(chi0, &alt)?;
        Ok(Some(alt))
    }
}

fn l1(x: &[i128]) -> i128 {
    x.iter().map(|a| a.abs()).sum()
}

fn l1_descent(mut x: Vec<i128>, ker: &[Vec<i128>]) -> Vec<i128> {
    loop {
        let cur = l1(&x);
        let mut best: Option<Vec<i128>> = None;
        for k in ker {
            for sgn in [1i128, -1] {
                let y: Vec<i128> = x.iter().zip(k).map(|(a, b)| a + sgn * b).collect();
                let ly = l1(&y);
                let better = match &best {
                    None => ly < cur,
                    Some(b) => ly < l1(b) || (ly == l1(b) && y < *b),
                };
                if better {
                    best = Some(y);
                }
            }
        }
        match best {
            Some(y) => x = y,
            None => return x,
        }
    }
}

/// Canonical decomposition of chi0 over the default family.
pub fn deg0_decompose(table: &Arc<CharTable>, chi0: &VirtualChar) -> Result<Deg0Decomp> {
    BrauerSolver::new(table.clone())?.decompose(chi0)
}
