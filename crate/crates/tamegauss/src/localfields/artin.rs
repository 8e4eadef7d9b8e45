//! Linear characters of subgroups U = <t, s^d> as characters of K_U^x.
//!
//! The uniformizer p goes to s^d. A unit u goes to a power of t read off
//! from the residue of u^((q_U - 1)/e') with e' = gcd(e, q_U - 1), the
//! order of t in U^ab. The e'-th root of unity matched with t is the
//! least root in F_(q_U) of the minimal polynomial of zeta_e^(e/e'),
//! zeta_e the fixed power of the generator of F_(p^o), o = ord_e(p).
//! Any two such choices differ by a Frobenius, which leaves Gauss sums
//! unchanged, so the choice is coherent across subgroups.

use super::{Convention, FieldDesc, MulChar, TameExtDesc};
use crate::error::{Error, Result};
use crate::exactnum::arith::{gcd, mod_inv, mult_order};
use crate::exactnum::ring::Ring;
use crate::exactnum::{ResidueElem, ResidueField, RootOfUnity};
use crate::groups::LinearChar;

/// The e'-th root of unity in F_(p^f) identified with the image of t.
pub fn canonical_inertia_root(p: u64, e: u64, e_prime: u64, f: u32) -> Result<ResidueElem> {
    let k = ResidueField::get(p, f)?;
    if (k.q - 1) % e_prime != 0 || e % e_prime != 0 {
        return Err(Error::BadGroup(format!("no {e_prime}-th roots of unity to match in F_{}", k.q)));
    }
    let o = if e == 1 { 1 } else { mult_order(p % e, e) as u32 };
    let ko = ResidueField::get(p, o)?;
    let zeta_e = ko.gen_pow(((ko.q - 1) / e) as i64);
    let z = ko.pow_el(zeta_e, (e / e_prime) as i64);
    let poly = ko.min_poly(z);
    k.find_root(&poly).ok_or_else(|| Error::BadGroup("minimal polynomial has no root".into()))
}

/// The character of K_U^x attached to a linear character of U >= <t>.
pub fn artin_dict(ext: &TameExtDesc, lambda: &LinearChar) -> Result<MulChar> {
    let g = &ext.group;
    let u = &lambda.sub;
    if !u.contains_inertia() {
        return Err(Error::RamifiedBase);
    }
    let d = u.residue_index().unwrap();
    let field = ext.fixed_field(u)?;
    let e_prime = gcd(g.e, field.q - 1);
    let level = lambda.level;
    let pival = RootOfUnity::new(level, lambda.value(g.elem(0, d as i64)).unwrap() as i64);
    let at_t = RootOfUnity::new(level, lambda.value(g.t()).unwrap() as i64);
    if e_prime % at_t.order() != 0 {
        return Err(Error::BadGroup("character does not factor through U^ab".into()));
    }
    let teich = if at_t.is_one() {
        RootOfUnity::one()
    } else {
        let k = ResidueField::get(field.p, field.f)?;
        let zeta = canonical_inertia_root(field.p, g.e, e_prime, field.f)?;
        let y = k.gen_pow(((k.q - 1) / e_prime) as i64);
        let exp = (0..e_prime).find(|&j| k.pow_el(zeta, j as i64) == y).expect("zeta generates the e'-th roots");
        match ext.convention {
            Convention::Inverse => at_t.pow(-(exp as i64)),
            Convention::Direct => at_t.pow(exp as i64),
        }
    };
    MulChar::new(field, teich, vec![RootOfUnity::one(); field.f as usize], pival)
}

/// An embedding F_q -> F_q' given by the image of the class of x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Embedding {
    pub small: FieldDesc,
    pub big: FieldDesc,
    pub image_of_x: ResidueElem,
}

impl Embedding {
    pub fn apply(&self, a: ResidueElem) -> Result<ResidueElem> {
        let ks = ResidueField::get(self.small.p, self.small.f)?;
        let kb = ResidueField::get(self.big.p, self.big.f)?;
        let mut acc = 0;
        for c in ks.decode(a).iter().rev() {
            acc = kb.add(&kb.mul(&acc, &self.image_of_x), &kb.scalar(*c as i64));
        }
        Ok(acc)
    }

    /// chi o N_{K'/K} for tame chi over the small field.
    pub fn compose_norm(&self, chi: &MulChar) -> Result<MulChar> {
        if chi.conductor() > 1 {
            return Err(Error::Config("norm composition implemented for tame characters".into()));
        }
        let ks = ResidueField::get(self.small.p, self.small.f)?;
        let kb = ResidueField::get(self.big.p, self.big.f)?;
        let r = self.big.f / self.small.f;
        // iota(g_small) = g_big^(j (q'-1)/(q-1)); N(g_big) = g_big^((q'-1)/(q-1))
        let img = self.apply(ks.generator())?;
        let c = (kb.q - 1) / (ks.q - 1);
        let l = kb.dlog(img).unwrap();
        let j = l / c;
        let jinv = mod_inv(j as i128, (ks.q - 1) as i128).ok_or(Error::NotInvertible)?;
        let teich = if ks.q == 2 { chi.teich } else { chi.teich.pow(jinv as i64) };
        MulChar::new(self.big, teich, vec![RootOfUnity::one(); self.big.f as usize], chi.pival.pow(r as i64))
    }
}

/// All embeddings of the residue field of `small` into that of `big`.
pub fn embeddings(small: FieldDesc, big: FieldDesc) -> Result<Vec<Embedding>> {
    if big.f % small.f != 0 {
        return Ok(vec![]);
    }
    let ks = ResidueField::get(small.p, small.f)?;
    let kb = ResidueField::get(big.p, big.f)?;
    let h = &ks.modulus;
    Ok(kb
        .elements()
        .filter(|&x| {
            let mut acc = 0;
            for c in h.iter().rev() {
                acc = kb.add(&kb.mul(&acc, &x), &kb.scalar(*c as i64));
            }
            acc == 0
        })
        .map(|x| Embedding { small, big, image_of_x: x })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::linear_characters;
    use std::collections::HashSet;

    #[test]
    fn trivial_and_unramified() {
        let ext = TameExtDesc::over_qp(3, 4, 2).unwrap();
        let g = &ext.group;
        let st = g.stabilizer(1);
        let level = g.exponent();
        let chars = linear_characters(&st, level);
        let triv = artin_dict(&ext, &chars[0]).unwrap();
        assert!(triv.is_unramified() && triv.pival.is_one());
        for l in &chars {
            let chi = artin_dict(&ext, l).unwrap();
            let on_t = l.value(g.t()).unwrap() == 0;
            assert_eq!(chi.conductor(), if on_t { 0 } else { 1 });
            if on_t {
                assert_eq!(chi.pival, RootOfUnity::new(level, l.value(g.s()).unwrap() as i64));
            }
        }
        assert!(artin_dict(&ext, &linear_characters(&g.subgroup(&[g.s()]), level)[1]).is_err());
    }

    #[test]
    fn bijection_onto_tame_characters() {
        for (p, e, f) in [(3, 4, 2), (5, 3, 2), (3, 13, 3), (7, 9, 3), (3, 8, 2)] {
            let ext = TameExtDesc::over_qp(p, e, f).unwrap();
            let g = ext.group.clone();
            let level = g.exponent();
            for d in crate::exactnum::arith::divisors(f) {
                let st = g.stabilizer(d);
                let chars = linear_characters(&st, level);
                let field = ext.fixed_field(&st).unwrap();
                let e_prime = gcd(e, field.q - 1);
                assert_eq!(chars.len() as u64, e_prime * (f / d));
                let images: Vec<MulChar> = chars.iter().map(|l| artin_dict(&ext, l).unwrap()).collect();
                let set: HashSet<_> = images.iter().cloned().collect();
                assert_eq!(set.len(), chars.len());
                for (a, ia) in chars.iter().zip(&images) {
                    assert!(ia.conductor() <= 1);
                    assert_eq!(e_prime % ia.teich.order(), 0);
                    assert_eq!((f / d) % ia.pival.order(), 0);
                    for (b, ib) in chars.iter().zip(&images) {
                        assert_eq!(artin_dict(&ext, &a.mul(b)).unwrap(), ia.mul(ib));
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_matches_norm_composition() {
        for (p, e, f) in [(3, 13, 3), (7, 9, 3), (3, 8, 2), (5, 3, 2)] {
            let ext = TameExtDesc::over_qp(p, e, f).unwrap();
            let g = ext.group.clone();
            let level = g.exponent();
            let big = g.stabilizer(f);
            let small = g.stabilizer(1);
            let kb = ext.fixed_field(&big).unwrap();
            let ks = ext.fixed_field(&small).unwrap();
            let chars = linear_characters(&small, level);
            let found = embeddings(ks, kb).unwrap().into_iter().any(|iota| {
                chars.iter().all(|l| {
                    let lhs = artin_dict(&ext, &l.restrict(&big)).unwrap();
                    let rhs = iota.compose_norm(&artin_dict(&ext, l).unwrap()).unwrap();
                    lhs == rhs
                })
            });
            assert!(found, "({p}, {e}, {f})");
        }
    }
}
