//! (O_K / p^m)^x = mu_(q-1) x (1 + pO_K)/(1 + p^m O_K).

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::FieldDesc;
use crate::error::{Error, Result};
use crate::exactnum::padic::Zpn;
use crate::exactnum::ring::{unit_solve, Ring};
use crate::exactnum::{ResidueField, UnramInt, UnramRing};

/// Generators: the Teichmueller lift of the residue generator, then
/// 1 + p w(x^i) for i < f (absent when m = 1).
#[derive(Debug)]
pub struct UnitGroupPres {
    pub field: FieldDesc,
    pub m: u32,
    pub ring: Arc<UnramRing>,
    pub residue: Arc<ResidueField>,
    pub teich_gen: UnramInt,
    pub principal_gens: Vec<UnramInt>,
    pub orders: Vec<u64>,
    // columns: log(g_i)/p in coordinates mod p^(m-1)
    log_matrix: Vec<Vec<u64>>,
    trace_basis: Vec<u64>,
    table: OnceLock<UnitTable>,
}

/// Flat listing of U / U^m: entry a0 * principal_count + idx is
/// teich_gen^a0 times the idx-th principal element (mixed radix in the
/// principal exponents, least significant first).
#[derive(Debug)]
pub struct UnitTable {
    pub principal_count: usize,
    pub traces: Vec<u64>,
}

/// Cap on |U/U^m| for tabulated sums.
pub const MAX_TABLE: u64 = 1 << 22;

static PRES_CACHE: OnceLock<RwLock<HashMap<(u64, u32, u32), Arc<UnitGroupPres>>>> = OnceLock::new();

impl UnitGroupPres {
    pub fn get(field: FieldDesc, m: u32) -> Result<Arc<UnitGroupPres>> {
        let cache = PRES_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        let key = (field.p, field.f, m);
        if let Some(u) = cache.read().unwrap().get(&key) {
            return Ok(u.clone());
        }
        let u = Arc::new(UnitGroupPres::new(field, m)?);
        cache.write().unwrap().insert(key, u.clone());
        Ok(u)
    }

    pub fn new(field: FieldDesc, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Config("unit group modulus exponent must be >= 1".into()));
        }
        let (p, f) = (field.p, field.f);
        let ring = UnramRing::get(p, f, m)?;
        let residue = ring.residue.clone();
        let teich_gen = ring.teichmuller(residue.generator(), m);
        let mut orders = vec![field.q - 1];
        let mut principal_gens = Vec::new();
        if m > 1 {
            for i in 0..f {
                let w = ring.teichmuller(residue.encode(&unit_vec(f as usize, i as usize)), m);
                principal_gens.push(ring.add(&ring.one(), &ring.mul_p(&w)));
                orders.push(p.pow(m - 1));
            }
        }
        let mut log_matrix = vec![vec![0u64; principal_gens.len()]; principal_gens.len()];
        for (j, g) in principal_gens.iter().enumerate() {
            let l = ring.div_p(&ring.log(g)?.value)?;
            for (i, c) in l.coeffs().iter().enumerate() {
                log_matrix[i][j] = *c;
            }
        }
        let mut trace_basis = Vec::with_capacity(f as usize);
        for i in 0..f as usize {
            let x = ring.element(m, &unit_vec(f as usize, i).iter().map(|c| *c as i128).collect::<Vec<_>>());
            trace_basis.push(ring.trace_norm(&x).0.value());
        }
        Ok(UnitGroupPres {
            field,
            m,
            ring,
            residue,
            teich_gen,
            principal_gens,
            orders,
            log_matrix,
            trace_basis,
            table: OnceLock::new(),
        })
    }

    /// |U / U^m| = (q - 1) q^(m-1).
    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn element(&self, exps: &[u64]) -> UnramInt {
        let r = &self.ring;
        let mut acc = r.pow(&self.teich_gen, exps[0] % self.orders[0]);
        for (g, (&a, &o)) in self.principal_gens.iter().zip(exps[1..].iter().zip(&self.orders[1..])) {
            acc = r.mul(&acc, &r.pow(g, a % o));
        }
        acc
    }

    /// Exponents of u against the generators.
    pub fn dlog(&self, u: &UnramInt) -> Result<Vec<u64>> {
        let r = &self.ring;
        let u = r.at_prec(u, self.m);
        if u.prec() < self.m {
            return Err(Error::Precision { have: u.prec(), need: self.m });
        }
        let a0 = self.residue.dlog(r.reduce(&u)).ok_or(Error::NotInvertible)?;
        let mut out = vec![a0];
        if self.m == 1 {
            return Ok(out);
        }
        let w = r.mul(&u, &r.inv(&r.pow(&self.teich_gen, a0))?);
        let l = r.div_p(&r.log(&w)?.value)?;
        let zr = Zpn::new(self.field.p, self.m - 1)?;
        let b: Vec<u64> = l.coeffs().to_vec();
        let a = unit_solve(&zr, &self.log_matrix, &b).ok_or(Error::NotInvertible)?;
        out.extend(a);
        Ok(out)
    }

    /// Tr_{K/Q_p}(u) mod p^m, in [0, p^m).
    pub fn trace_mod(&self, u: &UnramInt) -> u64 {
        let m = self.field.p.pow(self.m) as u128;
        let mut acc = 0u128;
        for (c, t) in u.coeffs().iter().zip(&self.trace_basis) {
            acc = (acc + (*c as u128 % m) * (*t as u128)) % m;
        }
        acc as u64
    }

    /// Number of principal-unit classes, q^(m-1).
    pub fn principal_count(&self) -> u64 {
        self.orders[1..].iter().product()
    }

    /// Split a flat principal index into exponents.
    pub fn principal_exps(&self, mut idx: u64) -> Vec<u64> {
        self.orders[1..]
            .iter()
            .map(|o| {
                let a = idx % o;
                idx /= o;
                a
            })
            .collect()
    }

    /// Tabulated traces of every class of U / U^m.
    pub fn table(&self) -> Result<&UnitTable> {
        if self.size() > MAX_TABLE {
            return Err(Error::Resource(format!("|U/U^{}| = {} exceeds {MAX_TABLE}", self.m, self.size())));
        }
        Ok(self.table.get_or_init(|| {
            let r = &self.ring;
            let pc = self.principal_count();
            // principal elements in mixed-radix order
            let mut principal = Vec::with_capacity(pc as usize);
            let mut cur = vec![0u64; self.principal_gens.len()];
            let mut elem = r.one();
            for _ in 0..pc {
                principal.push(elem.clone());
                // increment the mixed-radix counter, updating the product
                let mut i = 0;
                while i < cur.len() {
                    cur[i] += 1;
                    elem = r.mul(&elem, &self.principal_gens[i]);
                    if cur[i] < self.orders[i + 1] {
                        break;
                    }
                    cur[i] = 0;
                    i += 1;
                }
            }
            let mut traces = Vec::with_capacity(self.size() as usize);
            let mut w = r.one();
            for _ in 0..self.orders[0] {
                for x in &principal {
                    traces.push(self.trace_mod(&r.mul(&w, x)));
                }
                w = r.mul(&w, &self.teich_gen);
            }
            UnitTable { principal_count: pc as usize, traces }
        }))
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_presentations() {
        let k = FieldDesc::qp(5).unwrap();
        assert_eq!(UnitGroupPres::new(k, 1).unwrap().orders, vec![4]);
        assert_eq!(UnitGroupPres::new(k, 2).unwrap().orders, vec![4, 5]);
        let k2 = FieldDesc::new(3, 2).unwrap();
        let u = UnitGroupPres::new(k2, 3).unwrap();
        assert_eq!(u.orders, vec![8, 9, 9]);
        assert_eq!(u.size(), 8 * 81);
    }

    #[test]
    fn dlog_exhaustive() {
        for (p, f, m) in [(5, 1, 3), (3, 2, 2), (3, 1, 4), (5, 2, 2), (7, 1, 2)] {
            let u = UnitGroupPres::new(FieldDesc::new(p, f).unwrap(), m).unwrap();
            assert!(u.field.q.pow(m) <= 10_000);
            let mut seen = std::collections::HashSet::new();
            for a0 in 0..u.orders[0] {
                for idx in 0..u.principal_count() {
                    let mut exps = vec![a0];
                    exps.extend(u.principal_exps(idx));
                    let x = u.element(&exps);
                    assert_eq!(u.dlog(&x).unwrap(), exps);
                    assert!(seen.insert(x));
                }
            }
            assert_eq!(seen.len() as u64, u.size());
        }
    }

    #[test]
    fn table_matches_direct_traces() {
        let u = UnitGroupPres::new(FieldDesc::new(3, 2).unwrap(), 2).unwrap();
        let t = u.table().unwrap();
        for (i, tr) in t.traces.iter().enumerate() {
            let a0 = i as u64 / t.principal_count as u64;
            let mut exps = vec![a0];
            exps.extend(u.principal_exps(i as u64 % t.principal_count as u64));
            let x = u.element(&exps);
            assert_eq!(*tr, u.ring.trace_norm(&x).0.value() % 9);
        }
    }
}
