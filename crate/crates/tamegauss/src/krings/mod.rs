//! Group rings of the layer groups G_n = Gal(L_n/K): reduced norms via
//! monomial representations, Det(g) at finite level, the star rule and
//! the tame correction element.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::arith::{gcd, vp};
use crate::exactnum::cyclo::DEFAULT_MAX_LEVEL;
use crate::exactnum::ring::{det, unit_solve, Matrix, Ring, UnitRing};
use crate::exactnum::{CycRing, RootOfUnity, Zpn};
use crate::groups::{CharTable, Elem, IrrChar, MetacyclicGroup, Subgroup};
use crate::tower::TowerMonomial;
use crate::Cyc;

/// R[G] for a layer group; elements are coefficient vectors indexed by
/// the group elements.
#[derive(Debug, Clone)]
pub struct GroupRing<R: Ring> {
    pub group: Arc<MetacyclicGroup>,
    pub ring: R,
}

impl<R: Ring> GroupRing<R> {
    pub fn new(group: Arc<MetacyclicGroup>, ring: R) -> Self {
        GroupRing { group, ring }
    }

    pub fn basis(&self, g: Elem) -> Vec<R::El> {
        let mut v = Ring::zero(self);
        v[g] = self.ring.one();
        v
    }

    pub fn scale(&self, x: &[R::El], c: &R::El) -> Vec<R::El> {
        x.iter().map(|a| self.ring.mul(a, c)).collect()
    }

    /// Matrix of y -> x y on the group basis.
    pub fn left_mult_matrix(&self, x: &[R::El]) -> Matrix<R::El> {
        let n = self.group.order();
        let mut m = vec![vec![self.ring.zero(); n]; n];
        for (g, c) in x.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            for h in 0..n {
                let gh = self.group.mul(g, h);
                m[gh][h] = self.ring.add(&m[gh][h], c);
            }
        }
        m
    }
}

impl<R: Ring> Ring for GroupRing<R> {
    type El = Vec<R::El>;
    fn zero(&self) -> Self::El {
        vec![self.ring.zero(); self.group.order()]
    }
    fn one(&self) -> Self::El {
        self.basis(self.group.identity())
    }
    fn from_int(&self, n: i64) -> Self::El {
        let mut v = Ring::zero(self);
        v[0] = self.ring.from_int(n);
        v
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        a.iter().zip(b).map(|(x, y)| self.ring.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        a.iter().zip(b).map(|(x, y)| self.ring.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        a.iter().map(|x| self.ring.neg(x)).collect()
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let mut out = Ring::zero(self);
        for (g, x) in a.iter().enumerate() {
            if self.ring.is_zero(x) {
                continue;
            }
            for (h, y) in b.iter().enumerate() {
                if self.ring.is_zero(y) {
                    continue;
                }
                let gh = self.group.mul(g, h);
                out[gh] = self.ring.add(&out[gh], &self.ring.mul(x, y));
            }
        }
        out
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        a.iter().all(|x| self.ring.is_zero(x))
    }
}

pub type CycGroupRing = GroupRing<CycRing<BigRational>>;

/// Layer group of L_n/K for L/K tame with invariants (e, f) over the
/// unramified K of degree f0: <t, s> with s of order f p^n.
pub fn layer_group(p: u64, f0: u32, e: u64, f: u64, n: u32) -> Result<Arc<MetacyclicGroup>> {
    Ok(Arc::new(MetacyclicGroup::over(p, f0, e, f * p.pow(n))?))
}

/// Matrix of x acting through the monomial representation of chi.
pub fn rep_matrix(chi: &IrrChar, x: &[Cyc]) -> Matrix<Cyc> {
    let d = chi.degree as usize;
    let level = chi.values.level;
    let mut m = vec![vec![Cyc::zero(1); d]; d];
    for (g, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (perm, exps) = chi.monomial_matrix(g);
        for j in 0..d {
            let entry = c * &Cyc::zeta(level, exps[j] as i64);
            m[perm[j]][j] = &m[perm[j]][j] + &entry;
        }
    }
    m
}

/// Reduced norm: det of x through each irreducible.
pub fn nrd(table: &CharTable, x: &[Cyc]) -> Vec<Cyc> {
    let ring = CycRing::<BigRational>::new(DEFAULT_MAX_LEVEL);
    table.irr.iter().map(|chi| det(&ring, &rep_matrix(chi, x)).normalized()).collect()
}

pub fn element(group: &MetacyclicGroup, g: Elem) -> Vec<Cyc> {
    let mut v = vec![Cyc::zero(1); group.order()];
    v[g] = Cyc::one();
    v
}

/// det_chi(g) from character values only: the top elementary symmetric
/// function of the eigenvalues, from the power sums chi(g^k) by Newton.
pub fn det_from_values(table: &CharTable, i: usize, g: Elem) -> Cyc {
    let chi = &table.irr[i];
    let d = chi.degree as usize;
    let grp = &table.group;
    let pk: Vec<Cyc> = (0..=d).map(|k| chi.values.value(grp.pow(g, k as i64))).collect();
    // k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) p_i
    let mut e = vec![Cyc::one()];
    for k in 1..=d {
        let mut acc = Cyc::zero(1);
        for i in 1..=k {
            let term = &e[k - i] * &pk[i];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(k))));
    }
    e[d].normalized()
}

/// Position of g in the Frobenius quotient G_n / <t>: g = t^a s^k.
pub fn frobenius_position(group: &MetacyclicGroup, g: Elem) -> u64 {
    group.parts(g).1
}

/// Det(g)(chi) = det_chi(g) phi^(k chi(1)) at finite level.
pub fn det_of_element(table: &CharTable, i: usize, g: Elem) -> TowerMonomial {
    let k = frobenius_position(&table.group, g);
    TowerMonomial { scalar: table.irr[i].det(g).to_cyc::<BigRational>().normalized(), exponent: (k * table.irr[i].degree) as i64 }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DetCheck {
    pub g: Elem,
    pub chi: usize,
    /// aug(Det(g)(chi)) equals the chi-component of Nrd(g).
    pub augmentation_matches_nrd: bool,
    /// ... and the determinant read from character values.
    pub matches_character_values: bool,
    pub exponent_matches: bool,
}

impl DetCheck {
    pub fn holds(&self) -> bool {
        self.augmentation_matches_nrd && self.matches_character_values && self.exponent_matches
    }
}

pub fn det_identity_check(table: &CharTable, g: Elem, nrd_g: &[Cyc], i: usize) -> DetCheck {
    let m = det_of_element(table, i, g);
    let k = frobenius_position(&table.group, g);
    DetCheck {
        g,
        chi: i,
        augmentation_matches_nrd: m.scalar == nrd_g[i],
        matches_character_values: m.scalar == det_from_values(table, i, g),
        exponent_matches: m.exponent == (k * table.irr[i].degree) as i64,
    }
}

/// Type-W characters of G_n: rho(t^a s^b) = zeta^(c b) with zeta of
/// order dividing the p-part of the order of s.
pub fn type_w_characters(group: &MetacyclicGroup) -> Vec<RootOfUnity> {
    let pn = group.p.pow(vp(group.f as i128, group.p).unwrap_or(0));
    (0..pn).map(|c| RootOfUnity::new(pn, c as i64)).collect()
}

/// Det(g)(chi (x) rho) against rho^#(Det(g)(chi)), rho(s) = r.
pub fn det_homw_check(table: &CharTable, i: usize, g: Elem, r: &RootOfUnity) -> Result<bool> {
    let grp = &table.group;
    let level = table.level;
    let rho_vals = crate::groups::ClassFn {
        level,
        vals: grp
            .elements()
            .map(|x| {
                let b = frobenius_position(grp, x);
                crate::groups::RootSum::root(r.pow(b as i64).exponent_at(level), level)
            })
            .collect(),
    };
    let twisted = table.irr[i].values.tensor(&rho_vals);
    let j = table.find(&twisted).ok_or(Error::NotVirtual)?;
    let lhs = det_of_element(table, j, g);
    let rhs = det_of_element(table, i, g).twist(&crate::tower::TypeWChar { p: grp.p, value: *r });
    let order = grp.f as i64;
    Ok(lhs.scalar == rhs.scalar && (lhs.exponent - rhs.exponent) % order == 0)
}

/// Inertia idempotent data of a layer.
#[derive(Debug, Clone)]
pub struct IdempotentData {
    pub inertia: Subgroup,
    pub e_i: Vec<Cyc>,
    pub sigma: Elem,
    pub q: u64,
}

impl IdempotentData {
    pub fn new(group: &Arc<MetacyclicGroup>) -> Self {
        let inertia = group.inertia();
        let w = Cyc::from_scalar(BigRational::new(BigInt::one(), BigInt::from(inertia.order())));
        let mut e_i = vec![Cyc::zero(1); group.order()];
        for &x in &inertia.elements {
            e_i[x] = w.clone();
        }
        IdempotentData { inertia, e_i, sigma: group.s(), q: group.p.pow(group.f0) }
    }
}

/// chi-component omega_chi(z) = chi(z) / chi(1) of a central element.
pub fn central_component(table: &CharTable, i: usize, z: &[Cyc]) -> Cyc {
    let chi = &table.irr[i];
    let mut acc = Cyc::zero(1);
    for (g, c) in z.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &(c * &chi.values.value(g));
        }
    }
    acc.scale(&BigRational::new(BigInt::one(), BigInt::from(chi.degree))).normalized()
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarValue {
    pub raw: Vec<Cyc>,
    pub components: Vec<Cyc>,
    pub starred: Vec<bool>,
}

/// Zero components replaced by 1.
pub fn star(components: &[Cyc]) -> StarValue {
    let starred: Vec<bool> = components.iter().map(|c| c.is_zero()).collect();
    let raw = components.to_vec();
    let components = components.iter().map(|c| if c.is_zero() { Cyc::one() } else { c.clone() }).collect();
    StarValue { raw, components, starred }
}

impl StarValue {
    /// Same as the raw value off the starred set, invertible everywhere.
    pub fn consistent(&self) -> bool {
        (0..self.raw.len()).all(|i| {
            !self.components[i].is_zero()
                && if self.starred[i] { self.raw[i].is_zero() && self.components[i] == Cyc::one() } else { self.components[i] == self.raw[i] }
        })
    }

    pub fn div(&self, o: &StarValue) -> Option<Vec<Cyc>> {
        self.components.iter().zip(&o.components).map(|(a, b)| Some((a * &b.inverse()?).normalized())).collect()
    }
}

/// N_(Q(zeta)/Q)(c) as a rational number.
pub fn norm_to_q(c: &Cyc) -> BigRational {
    let c = c.normalized();
    let l = c.level();
    let mut acc = Cyc::one();
    for a in 1..=l.max(1) {
        if gcd(a, l) == 1 {
            acc = &acc * &c.galois(a as i64).expect("a is coprime to the level");
        }
    }
    acc.as_rational().expect("norms are rational")
}

/// p-adic unit test for a cyclotomic number via its norm.
pub fn is_p_unit(c: &Cyc, p: u64) -> bool {
    let n = norm_to_q(c);
    if n.is_zero() {
        return false;
    }
    let pb = BigInt::from(p);
    !(n.numer() % &pb).is_zero() && !(n.denom() % &pb).is_zero()
}

#[derive(Debug, Clone)]
pub struct CorrectionReport {
    /// ^*((1 - sigma q^-1) e_I) and ^*((1 - sigma^-1) e_I).
    pub numerator: StarValue,
    pub denominator: StarValue,
    /// m = numerator / denominator, componentwise.
    pub quotient: Vec<Cyc>,
    pub prec: u32,
    /// (1 - q sigma^-1) e_I + (1 - e_I) in Z/p^N[G_n].
    pub unit: Vec<u64>,
    pub inverse: Option<Vec<u64>>,
    /// The inverse found by solving x y = 1 directly.
    pub solved_inverse: Option<Vec<u64>>,
}

impl CorrectionReport {
    pub fn invertible(&self) -> bool {
        self.inverse.is_some() && self.inverse == self.solved_inverse
    }
}

/// The correction-term data of a tame layer at precision N.
pub fn correction_element(table: &CharTable, prec: u32) -> Result<CorrectionReport> {
    let grp = table.group.clone();
    let p = grp.p;
    if grp.e % p == 0 {
        return Err(Error::BadGroup("wild inertia".into()));
    }
    let id = IdempotentData::new(&grp);
    let ring = CycGroupRing::new(grp.clone(), CycRing::new(DEFAULT_MAX_LEVEL));
    let sigma_inv = grp.inv(id.sigma);
    let q_inv = Cyc::from_scalar(BigRational::new(BigInt::one(), BigInt::from(id.q)));
    let one = Ring::one(&ring);
    let num_el = ring.mul(&ring.sub(&one, &ring.scale(&ring.basis(id.sigma), &q_inv)), &id.e_i);
    let den_el = ring.mul(&ring.sub(&one, &ring.basis(sigma_inv)), &id.e_i);
    let comps = |z: &Vec<Cyc>| -> Vec<Cyc> { (0..table.len()).map(|i| central_component(table, i, z)).collect() };
    let numerator = star(&comps(&num_el));
    let denominator = star(&comps(&den_el));
    let quotient = numerator.div(&denominator).ok_or(Error::NotInvertible)?;

    // the unit over Z/p^N: e_I has coefficients 1/e, a p-adic unit
    let zr = Zpn::new(p, prec)?;
    let zg = GroupRing::new(grp.clone(), zr.clone());
    let e_inv = zr.unit_inv(&zr.from_int(id.inertia.order() as i64)).ok_or(Error::NotInvertible)?;
    let mut e_i = Ring::zero(&zg);
    for &x in &id.inertia.elements {
        e_i[x] = e_inv;
    }
    let qz = zr.from_int(id.q as i64);
    let q_sig = zg.scale(&zg.basis(sigma_inv), &qz);
    let zone = Ring::one(&zg);
    let unit = zg.add(&zg.mul(&zg.sub(&zone, &q_sig), &e_i), &zg.sub(&zone, &e_i));
    // (1 - a e_I)^-1 = 1 + sum_k a^k e_I with a = q sigma^-1, a^k = 0 for k >= N
    let a_e = zg.mul(&q_sig, &e_i);
    let mut inv = zone.clone();
    let mut pw = a_e.clone();
    for _ in 0..prec {
        inv = zg.add(&inv, &pw);
        pw = zg.mul(&pw, &q_sig);
    }
    let inverse = (zg.mul(&unit, &inv) == zone && zg.mul(&inv, &unit) == zone).then_some(inv);
    let solved_inverse = unit_solve(&zr, &zg.left_mult_matrix(&unit), &zone);
    Ok(CorrectionReport { numerator, denominator, quotient, prec, unit, inverse, solved_inverse })
}

/// Det(g g') = Det(g) Det(g') at chi, exponents modulo the order of the
/// Frobenius quotient.
pub fn det_multiplicative(table: &CharTable, i: usize, g: Elem, h: Elem) -> bool {
    let lhs = det_of_element(table, i, table.group.mul(g, h));
    let rhs = det_of_element(table, i, g).mul(&det_of_element(table, i, h));
    let order = table.group.f as i64;
    lhs.scalar == rhs.scalar && (lhs.exponent - rhs.exponent).rem_euclid(order) == 0
}

#[derive(Debug, Clone, Serialize)]
pub struct DetLayerReport {
    pub p: u64,
    pub e: u64,
    pub f: u64,
    pub n: u32,
    pub group_order: usize,
    pub irreducibles: usize,
    pub checks: usize,
    pub failures: Vec<DetCheck>,
    pub homw_checks: usize,
    pub homw_failures: usize,
    pub product_checks: usize,
    pub product_failures: usize,
}

impl DetLayerReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.homw_failures == 0 && self.product_failures == 0
    }
}

/// Det(g) against Nrd(g) for every g and chi of one layer, Hom^W at s and
/// t s, and products on `pairs` sampled pairs.
pub fn det_layer_check(p: u64, e: u64, f: u64, n: u32, pairs: usize, seed: u64) -> Result<DetLayerReport> {
    use rand::{Rng as _, SeedableRng};
    let table = CharTable::new(layer_group(p, 1, e, f, n)?);
    let grp = table.group.clone();
    let mut failures = Vec::new();
    let mut checks = 0;
    for g in grp.elements() {
        let ng = nrd(&table, &element(&grp, g));
        for i in 0..table.len() {
            checks += 1;
            let c = det_identity_check(&table, g, &ng, i);
            if !c.holds() {
                failures.push(c);
            }
        }
    }
    let (mut homw_checks, mut homw_failures) = (0, 0);
    let ws = type_w_characters(&grp);
    for g in [grp.s(), grp.mul(grp.t(), grp.s())] {
        for i in 0..table.len() {
            for r in &ws {
                homw_checks += 1;
                if !det_homw_check(&table, i, g, r)? {
                    homw_failures += 1;
                }
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut product_failures = 0;
    for _ in 0..pairs {
        let g = rng.gen_range(0..grp.order());
        let h = rng.gen_range(0..grp.order());
        let i = rng.gen_range(0..table.len());
        if !det_multiplicative(&table, i, g, h) {
            product_failures += 1;
        }
    }
    Ok(DetLayerReport {
        p,
        e,
        f,
        n,
        group_order: grp.order(),
        irreducibles: table.len(),
        checks,
        failures,
        homw_checks,
        homw_failures,
        product_checks: pairs,
        product_failures,
    })
}

/// Random element of Z[G] with small sparse support.
pub fn random_integral(group: &MetacyclicGroup, rng: &mut impl rand::Rng) -> Vec<Cyc> {
    (0..group.order())
        .map(|_| Cyc::from_int(if rng.gen_bool(0.3) { rng.gen_range(-3..4) } else { 0 }))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct NrdLayerReport {
    pub p: u64,
    pub e: u64,
    pub f: u64,
    pub n: u32,
    pub pairs: usize,
    pub product_failures: usize,
    /// Components of Nrd of the units g and 1 + (1 - g)h(1 - g') type
    /// elements that fail the p-adic unit test.
    pub units: usize,
    pub unit_failures: usize,
}

impl NrdLayerReport {
    pub fn pass(&self) -> bool {
        self.product_failures == 0 && self.unit_failures == 0
    }
}

/// Nrd(xy) = Nrd(x) Nrd(y) on random pairs, and unit components for
/// units of Z[G]: group elements and 1 + p x.
pub fn nrd_layer_check(p: u64, e: u64, f: u64, n: u32, pairs: usize, seed: u64) -> Result<NrdLayerReport> {
    use rand::{Rng as _, SeedableRng};
    let table = CharTable::new(layer_group(p, 1, e, f, n)?);
    let grp = table.group.clone();
    let ring = CycGroupRing::new(grp.clone(), CycRing::new(DEFAULT_MAX_LEVEL));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut product_failures = 0;
    for _ in 0..pairs {
        let x = random_integral(&grp, &mut rng);
        let y = random_integral(&grp, &mut rng);
        let nxy = nrd(&table, &ring.mul(&x, &y));
        let nx = nrd(&table, &x);
        let ny = nrd(&table, &y);
        if (0..table.len()).any(|i| nxy[i] != (&nx[i] * &ny[i]).normalized()) {
            product_failures += 1;
        }
    }
    let (mut units, mut unit_failures) = (0, 0);
    let pc = Cyc::from_int(p as i64);
    for _ in 0..pairs.min(10) {
        let g = rng.gen_range(0..grp.order());
        // 1 + p x lies in Z_p[G]^x
        let x = random_integral(&grp, &mut rng);
        let u = ring.add(&Ring::one(&ring), &ring.scale(&x, &pc));
        for v in [element(&grp, g), u] {
            for c in nrd(&table, &v) {
                units += 1;
                if !is_p_unit(&c, p) {
                    unit_failures += 1;
                }
            }
        }
    }
    Ok(NrdLayerReport { p, e, f, n, pairs, product_failures, units, unit_failures })
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrectionLayerReport {
    pub p: u64,
    pub e: u64,
    pub f: u64,
    pub n: u32,
    pub precisions: Vec<u32>,
    pub invertible: Vec<bool>,
    /// The inverse at the higher precision reduces to the one at the lower.
    pub stable: bool,
    pub trivial_component_starred: bool,
    pub star_agrees: bool,
    /// Componentwise m = ^*((1 - sigma q^-1) e_I) / ^*((1 - sigma^-1) e_I).
    pub quotient: Vec<String>,
}

impl CorrectionLayerReport {
    pub fn pass(&self) -> bool {
        self.invertible.iter().all(|&b| b) && self.stable && self.trivial_component_starred && self.star_agrees
    }
}

fn grp_all(table: &CharTable, pred: impl Fn(Elem) -> bool) -> bool {
    table.group.elements().all(pred)
}

pub fn correction_layer_check(p: u64, e: u64, f: u64, n: u32, precs: [u32; 2]) -> Result<CorrectionLayerReport> {
    let table = CharTable::new(layer_group(p, 1, e, f, n)?);
    let lo = correction_element(&table, precs[0])?;
    let hi = correction_element(&table, precs[1])?;
    let m = p.pow(precs[0]);
    let stable = match (&lo.inverse, &hi.inverse) {
        (Some(a), Some(b)) => b.iter().map(|c| c % m).eq(a.iter().copied()),
        (None, None) => true,
        _ => false,
    };
    let trivial = table.irr.iter().position(|c| grp_all(&table, |g| c.values.value(g) == Cyc::one()));
    let trivial_component_starred = trivial.is_some_and(|i| lo.denominator.starred[i] && lo.denominator.components[i] == Cyc::one());
    let star_agrees = lo.numerator.consistent() && lo.denominator.consistent();
    Ok(CorrectionLayerReport {
        p,
        e,
        f,
        n,
        precisions: precs.to_vec(),
        invertible: vec![lo.invertible(), hi.invertible()],
        stable,
        trivial_component_starred,
        star_agrees,
        quotient: lo.quotient.iter().map(|c| c.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn table(p: u64, e: u64, f: u64, n: u32) -> CharTable {
        CharTable::new(layer_group(p, 1, e, f, n).unwrap())
    }

    #[test]
    fn abelian_nrd_is_character_values() {
        let t = table(7, 1, 3, 0);
        let x: Vec<Cyc> = (0..3).map(|k| Cyc::from_int(k + 2)).collect();
        let n = nrd(&t, &x);
        for (i, chi) in t.irr.iter().enumerate() {
            let v = (0..3).fold(Cyc::zero(1), |acc, g| &acc + &(&x[g] * &chi.values.value(g)));
            assert_eq!(n[i], v.normalized());
        }
    }

    #[test]
    fn nrd_of_group_elements_and_multiplicativity() {
        let t = table(3, 4, 2, 0);
        let grp = t.group.clone();
        for g in grp.elements() {
            let n = nrd(&t, &element(&grp, g));
            for i in 0..t.len() {
                let c = det_identity_check(&t, g, &n, i);
                assert!(c.holds(), "{c:?}");
                assert!(is_p_unit(&n[i], 3));
            }
        }
        let ring = CycGroupRing::new(grp.clone(), CycRing::default());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let mut rand_el = || -> Vec<Cyc> {
                (0..grp.order()).map(|_| Cyc::from_int(if rng.gen_bool(0.3) { rng.gen_range(-3..4) } else { 0 })).collect()
            };
            let x = rand_el();
            let y = rand_el();
            let nxy = nrd(&t, &ring.mul(&x, &y));
            let nx = nrd(&t, &x);
            let ny = nrd(&t, &y);
            for i in 0..t.len() {
                assert_eq!(nxy[i], (&nx[i] * &ny[i]).normalized());
            }
        }
    }

    #[test]
    fn det_of_sigma_has_degree_exponent() {
        let t = table(3, 4, 2, 1);
        let s = t.group.s();
        for i in 0..t.len() {
            let m = det_of_element(&t, i, s);
            assert_eq!(m.exponent, t.irr[i].degree as i64);
            for r in type_w_characters(&t.group) {
                assert!(det_homw_check(&t, i, s, &r).unwrap());
            }
        }
        let g = t.group.t();
        assert_eq!(det_of_element(&t, 1, g).exponent, 0);
    }

    #[test]
    fn correction_element_tame() {
        let t = table(3, 4, 2, 0);
        let r = correction_element(&t, 8).unwrap();
        assert!(r.invertible());
        assert!(r.denominator.starred[0]);
        assert_eq!(r.denominator.components[0], Cyc::one());
        // star leaves nonzero components alone, and all are invertible
        for (s, c) in r.numerator.starred.iter().zip(&r.numerator.components) {
            assert!(!c.is_zero());
            if !s {
                assert_ne!(*c, Cyc::one());
            }
        }
        let r12 = correction_element(&t, 12).unwrap();
        assert!(r12.invertible());
        let m = 3u64.pow(8);
        let reduced: Vec<u64> = r12.inverse.unwrap().iter().map(|c| c % m).collect();
        assert_eq!(reduced, r.inverse.unwrap());
    }

    #[test]
    fn unramified_layer_unit() {
        let t = table(5, 1, 2, 0);
        let r = correction_element(&t, 6).unwrap();
        assert!(r.invertible());
        assert!(r.numerator.starred.iter().all(|s| !s));
    }
    #[test]
    fn inertia_idempotent_is_central() {
        let grp = layer_group(3, 1, 4, 2, 1).unwrap();
        let id = IdempotentData::new(&grp);
        let ring = CycGroupRing::new(grp.clone(), CycRing::default());
        assert_eq!(ring.mul(&id.e_i, &id.e_i), id.e_i);
        for g in grp.elements() {
            let b = ring.basis(g);
            assert_eq!(ring.mul(&b, &id.e_i), ring.mul(&id.e_i, &b));
        }
        assert_eq!(id.q, 3);
    }

    #[test]
    fn finite_part_has_zero_exponent() {
        let t = table(5, 3, 2, 1);
        let g = t.group.t();
        for i in 0..t.len() {
            assert_eq!(det_of_element(&t, i, g).exponent, 0);
        }
        for g in t.group.elements() {
            for h in [t.group.s(), t.group.t(), g] {
                assert!(det_multiplicative(&t, 1, g, h));
            }
        }
    }

    #[test]
    fn p_unit_test() {
        assert!(is_p_unit(&Cyc::zeta(9, 2), 3));
        assert!(!is_p_unit(&Cyc::from_int(3), 3));
        assert!(!is_p_unit(&(&Cyc::one() - &Cyc::zeta(3, 1)), 3));
        assert!(is_p_unit(&(&Cyc::one() - &Cyc::zeta(5, 1)), 3));
    }

    #[test]
    fn layer_drivers() {
        assert!(det_layer_check(3, 4, 2, 1, 50, 7).unwrap().pass());
        assert!(nrd_layer_check(5, 3, 2, 0, 50, 7).unwrap().pass());
        let c = correction_layer_check(3, 4, 2, 1, [8, 12]).unwrap();
        assert!(c.pass(), "{c:?}");
    }
}
