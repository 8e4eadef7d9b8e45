//! Characters of metacyclic groups. Values are kept as unreduced
//! integer combinations of M-th roots of unity and reduced to exact
//! cyclotomic numbers only when compared or exported.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use super::metacyclic::{Elem, MetacyclicGroup, Subgroup};
use crate::error::{Error, Result};
use crate::exactnum::arith::{gcd, rem};
use crate::exactnum::RootOfUnity;
use crate::Cyc;

/// Sum of n_k zeta_M^k with the level kept outside.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RootSum(pub Vec<(u32, i64)>);

impl RootSum {
    pub fn zero() -> Self {
        RootSum(Vec::new())
    }

    pub fn root(k: u64, level: u64) -> Self {
        RootSum(vec![((k % level) as u32, 1)])
    }

    pub fn int(n: i64) -> Self {
        if n == 0 {
            RootSum(vec![])
        } else {
            RootSum(vec![(0, n)])
        }
    }

    fn from_map(m: BTreeMap<u32, i64>) -> Self {
        RootSum(m.into_iter().filter(|(_, c)| *c != 0).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m: BTreeMap<u32, i64> = self.0.iter().copied().collect();
        for &(k, c) in &o.0 {
            *m.entry(k).or_insert(0) += c;
        }
        Self::from_map(m)
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return RootSum::zero();
        }
        RootSum(self.0.iter().map(|&(k, n)| (k, n * c)).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self, level: u64) -> Self {
        let mut m: BTreeMap<u32, i64> = BTreeMap::new();
        for &(a, x) in &self.0 {
            for &(b, y) in &o.0 {
                let k = ((a as u64 + b as u64) % level) as u32;
                *m.entry(k).or_insert(0) += x * y;
            }
        }
        Self::from_map(m)
    }

    /// Multiply by the single root zeta_M^k.
    pub fn shift(&self, k: u64, level: u64) -> Self {
        let mut m: BTreeMap<u32, i64> = BTreeMap::new();
        for &(a, x) in &self.0 {
            *m.entry(((a as u64 + k) % level) as u32).or_insert(0) += x;
        }
        Self::from_map(m)
    }

    pub fn galois(&self, a: i64, level: u64) -> Self {
        let a = rem(a, level);
        let mut m: BTreeMap<u32, i64> = BTreeMap::new();
        for &(k, x) in &self.0 {
            *m.entry(((k as u64 * a) % level) as u32).or_insert(0) += x;
        }
        Self::from_map(m)
    }

    pub fn conj(&self, level: u64) -> Self {
        self.galois(-1, level)
    }

    pub fn to_cyc(&self, level: u64) -> Cyc {
        let mut counts = vec![0i64; level as usize];
        for &(k, c) in &self.0 {
            counts[k as usize] += c;
        }
        Cyc::from_exponent_counts(level, &counts)
    }

    /// Exact integer value, if the reduced element is a rational integer.
    pub fn to_integer(&self, level: u64) -> Option<i64> {
        let c = self.to_cyc(level);
        if c.coeffs()[1..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let v = &c.coeffs()[0];
        if v.is_integer() {
            v.numer().to_i64()
        } else {
            None
        }
    }
}

/// Class function on G (or values on a subgroup), one entry per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFn {
    pub level: u64,
    pub vals: Vec<RootSum>,
}

impl ClassFn {
    pub fn zero(level: u64, n: usize) -> Self {
        ClassFn { level, vals: vec![RootSum::zero(); n] }
    }

    pub fn add(&self, o: &Self) -> Self {
        ClassFn { level: self.level, vals: self.vals.iter().zip(&o.vals).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ClassFn { level: self.level, vals: self.vals.iter().zip(&o.vals).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: i64) -> Self {
        ClassFn { level: self.level, vals: self.vals.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn tensor(&self, o: &Self) -> Self {
        ClassFn { level: self.level, vals: self.vals.iter().zip(&o.vals).map(|(a, b)| a.mul(b, self.level)).collect() }
    }

    pub fn conj(&self) -> Self {
        ClassFn { level: self.level, vals: self.vals.iter().map(|a| a.conj(self.level)).collect() }
    }

    pub fn value(&self, g: Elem) -> Cyc {
        self.vals[g].to_cyc(self.level)
    }

    /// Exact equality of the reduced values.
    pub fn same_values(&self, o: &Self) -> bool {
        self.vals.len() == o.vals.len()
            && self.vals.iter().zip(&o.vals).all(|(a, b)| a.sub(b).to_cyc(self.level).is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(|a| a.to_cyc(self.level).is_zero())
    }
}

/// (1/n) sum a(x) conj(b(x)) over paired value lists.
pub fn inner_product(a: &[RootSum], b: &[RootSum], level: u64) -> Result<i64> {
    let mut acc = RootSum::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(&y.conj(level), level));
    }
    let total = acc.to_integer(level).ok_or(Error::NotVirtual)?;
    let n = a.len() as i64;
    if total % n != 0 {
        return Err(Error::NotVirtual);
    }
    Ok(total / n)
}

/// Linear character of a subgroup, with values zeta_M^exps[i] on the
/// i-th subgroup element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChar {
    pub sub: Subgroup,
    pub level: u64,
    pub exps: Vec<u32>,
}

impl LinearChar {
    pub fn trivial(sub: &Subgroup, level: u64) -> Self {
        LinearChar { sub: sub.clone(), level, exps: vec![0; sub.order()] }
    }

    pub fn value(&self, g: Elem) -> Option<u64> {
        self.sub.position(g).map(|i| self.exps[i] as u64)
    }

    pub fn root(&self, g: Elem) -> Option<RootOfUnity> {
        self.value(g).map(|k| RootOfUnity::new(self.level, k as i64))
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|k| *k == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.sub, o.sub);
        let exps = self.exps.iter().zip(&o.exps).map(|(a, b)| ((*a as u64 + *b as u64) % self.level) as u32).collect();
        LinearChar { sub: self.sub.clone(), level: self.level, exps }
    }

    pub fn inv(&self) -> Self {
        let exps = self.exps.iter().map(|a| ((self.level - *a as u64) % self.level) as u32).collect();
        LinearChar { sub: self.sub.clone(), level: self.level, exps }
    }

    pub fn restrict(&self, to: &Subgroup) -> Self {
        let exps = to.elements.iter().map(|&x| self.value(x).expect("restriction to a non-subgroup") as u32).collect();
        LinearChar { sub: to.clone(), level: self.level, exps }
    }

    pub fn values(&self) -> Vec<RootSum> {
        self.exps.iter().map(|&k| RootSum::root(k as u64, self.level)).collect()
    }

    /// Order of the character.
    pub fn order(&self) -> u64 {
        let g = self.exps.iter().fold(self.level, |acc, k| gcd(acc, *k as u64));
        self.level / g
    }

    /// Checks the homomorphism property on all pairs.
    pub fn is_homomorphism(&self) -> bool {
        let g = &self.sub.group;
        self.sub.elements.iter().all(|&x| {
            self.sub.elements.iter().all(|&y| {
                let xy = g.mul(x, y);
                (self.value(x).unwrap() + self.value(y).unwrap()) % self.level == self.value(xy).unwrap()
            })
        })
    }
}

/// All linear characters of a subgroup with values in mu_level, in a
/// deterministic order (trivial first).
pub fn linear_characters(sub: &Subgroup, level: u64) -> Vec<LinearChar> {
    let g = sub.group.clone();
    let gens = sub.generators();
    let orders: Vec<u64> = gens.iter().map(|&x| g.elem_order(x)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0u64; gens.len()];
    loop {
        // BFS extension of the assignment
        let mut exps: Vec<Option<u32>> = vec![None; sub.order()];
        let id = sub.position(g.identity()).unwrap();
        exps[id] = Some(0);
        let mut queue = vec![g.identity()];
        let mut ok = true;
        'bfs: while let Some(x) = queue.pop() {
            let vx = exps[sub.position(x).unwrap()].unwrap() as u64;
            for (i, &gen) in gens.iter().enumerate() {
                let y = g.mul(x, gen);
                let val = ((vx + choice[i] * (level / orders[i])) % level) as u32;
                let py = sub.position(y).unwrap();
                match exps[py] {
                    None => {
                        exps[py] = Some(val);
                        queue.push(y);
                    }
                    Some(v) if v != val => {
                        ok = false;
                        break 'bfs;
                    }
                    _ => {}
                }
            }
        }
        if ok {
            let lc = LinearChar { sub: sub.clone(), level, exps: exps.into_iter().map(|v| v.unwrap()).collect() };
            if lc.is_homomorphism() {
                out.push(lc);
            }
        }
        // next choice
        let mut i = 0;
        loop {
            if i == gens.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < orders[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// ind_U^G of values given on U's elements.
pub fn induce(sub: &Subgroup, vals: &[RootSum], level: u64) -> ClassFn {
    let g = &sub.group;
    let reps = sub.left_transversal();
    let vals_g = g
        .elements()
        .map(|x| {
            let mut acc = RootSum::zero();
            for &r in &reps {
                let y = g.mul(g.mul(g.inv(r), x), r);
                if let Some(i) = sub.position(y) {
                    acc = acc.add(&vals[i]);
                }
            }
            acc
        })
        .collect();
    ClassFn { level, vals: vals_g }
}

/// ind_U^V for U <= V, values indexed by subgroup positions.
pub fn induce_between(sub: &Subgroup, over: &Subgroup, vals: &[RootSum]) -> Vec<RootSum> {
    let g = &sub.group;
    let reps = sub.transversal_in(over);
    over.elements
        .iter()
        .map(|&x| {
            let mut acc = RootSum::zero();
            for &r in &reps {
                let y = g.mul(g.mul(g.inv(r), x), r);
                if let Some(i) = sub.position(y) {
                    acc = acc.add(&vals[i]);
                }
            }
            acc
        })
        .collect()
}

/// Restriction of a class function on G to a subgroup.
pub fn restrict(cf: &ClassFn, sub: &Subgroup) -> Vec<RootSum> {
    sub.elements.iter().map(|&x| cf.vals[x].clone()).collect()
}

/// Inducing data: chi = ind_{<t, s^d>} of lambda(t^a s^(dk)) = zeta_e^(ja) zeta_(f/d)^(lk).
#[derive(Debug, Clone)]
pub struct Monomial {
    pub stab: Subgroup,
    pub d: u64,
    pub j: u64,
    pub l: u64,
    pub lambda: LinearChar,
}

#[derive(Debug, Clone)]
pub struct IrrChar {
    pub degree: u64,
    pub values: ClassFn,
    pub monomial: Monomial,
}

impl IrrChar {
    pub fn is_linear(&self) -> bool {
        self.degree == 1
    }

    /// As a linear character of the whole group (degree 1 only).
    pub fn as_linear(&self) -> Option<LinearChar> {
        if self.degree == 1 {
            Some(self.monomial.lambda.clone())
        } else {
            None
        }
    }

    /// Monomial matrix of g: g r_j = r_{perm[j]} h_j with r_j = s^j, and
    /// entry exps[j] = lambda(h_j).
    pub fn monomial_matrix(&self, g: Elem) -> (Vec<usize>, Vec<u64>) {
        let grp = &self.monomial.stab.group;
        let d = self.monomial.d as usize;
        let mut perm = Vec::with_capacity(d);
        let mut exps = Vec::with_capacity(d);
        for j in 0..d {
            let x = grp.mul(g, grp.elem(0, j as i64));
            let (_, b) = grp.parts(x);
            let i = (b as usize) % d;
            let h = grp.mul(grp.inv(grp.elem(0, i as i64)), x);
            perm.push(i);
            exps.push(self.monomial.lambda.value(h).expect("coset decomposition"));
        }
        (perm, exps)
    }

    /// det_chi(g) from the monomial data.
    pub fn det(&self, g: Elem) -> RootOfUnity {
        let (perm, exps) = self.monomial_matrix(g);
        let level = self.values.level;
        let total: u64 = exps.iter().sum::<u64>() % level;
        let odd = permutation_is_odd(&perm);
        RootOfUnity::new(2 * level, 2 * total as i64 + if odd { level as i64 } else { 0 })
    }
}

pub fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 1
}

/// Integer coordinates over a character table's irreducibles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VirtualChar {
    pub coeffs: Vec<i64>,
}

impl VirtualChar {
    pub fn zero(n: usize) -> Self {
        VirtualChar { coeffs: vec![0; n] }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[i] = 1;
        v
    }

    pub fn add(&self, o: &Self) -> Self {
        VirtualChar { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        VirtualChar { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: i64) -> Self {
        VirtualChar { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }
}

/// Complete character table of a metacyclic group.
#[derive(Debug, Clone)]
pub struct CharTable {
    pub group: Arc<MetacyclicGroup>,
    pub level: u64,
    pub classes: Vec<Vec<Elem>>,
    pub class_of: Vec<usize>,
    pub irr: Vec<IrrChar>,
}

impl CharTable {
    /// Irreducibles from the s-orbits on characters of <t>: an orbit of
    /// size d has stabilizer <t, s^d>, and each of its f/d extensions
    /// induces to an irreducible of degree d.
    pub fn new(group: Arc<MetacyclicGroup>) -> Self {
        let level = group.exponent();
        let classes = group.classes();
        let mut class_of = vec![0; group.order()];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        let e = group.e;
        let f = group.f;
        let q = crate::exactnum::arith::mod_pow(group.p, group.f0 as u64, e.max(1));
        let mut seen = vec![false; e as usize];
        let mut irr = Vec::new();
        for j in 0..e {
            if seen[j as usize] {
                continue;
            }
            let mut d = 0u64;
            let mut x = j;
            loop {
                seen[x as usize] = true;
                d += 1;
                x = x * q % e;
                if x == j {
                    break;
                }
            }
            let stab = group.stabilizer(d);
            let fd = f / d;
            for l in 0..fd {
                let exps: Vec<u32> = stab
                    .elements
                    .iter()
                    .map(|&y| {
                        let (a, b) = group.parts(y);
                        let k = b / d;
                        ((j * a * (level / e) + l * k * (level / fd)) % level) as u32
                    })
                    .collect();
                let lambda = LinearChar { sub: stab.clone(), level, exps };
                let values = induce(&stab, &lambda.values(), level);
                irr.push(IrrChar { degree: d, values, monomial: Monomial { stab: stab.clone(), d, j, l, lambda } });
            }
        }
        CharTable { group, level, classes, class_of, irr }
    }

    pub fn len(&self) -> usize {
        self.irr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irr.is_empty()
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    /// <a, b>_G computed over conjugacy classes.
    pub fn inner(&self, a: &ClassFn, b: &ClassFn) -> Result<i64> {
        let level = self.level;
        let mut acc = RootSum::zero();
        for c in &self.classes {
            let x = c[0];
            acc = acc.add(&a.vals[x].mul(&b.vals[x].conj(level), level).scale(c.len() as i64));
        }
        let total = acc.to_integer(level).ok_or(Error::NotVirtual)?;
        let n = self.group.order() as i64;
        if total % n != 0 {
            return Err(Error::NotVirtual);
        }
        Ok(total / n)
    }

    /// Coordinates of a class function; fails unless it is a virtual character.
    pub fn coords(&self, cf: &ClassFn) -> Result<VirtualChar> {
        let coeffs = self.irr.iter().map(|chi| self.inner(cf, &chi.values)).collect::<Result<Vec<_>>>()?;
        let v = VirtualChar { coeffs };
        if !self.class_fn(&v).same_values(cf) {
            return Err(Error::NotVirtual);
        }
        Ok(v)
    }

    pub fn class_fn(&self, v: &VirtualChar) -> ClassFn {
        let mut out = ClassFn::zero(self.level, self.group.order());
        for (c, chi) in v.coeffs.iter().zip(&self.irr) {
            if *c != 0 {
                out = out.add(&chi.values.scale(*c));
            }
        }
        out
    }

    pub fn degree(&self, v: &VirtualChar) -> i64 {
        v.coeffs.iter().zip(&self.irr).map(|(c, chi)| c * chi.degree as i64).sum()
    }

    /// Coordinates of ind_U^G(lambda) via Frobenius reciprocity.
    pub fn induced_coords(&self, lambda: &LinearChar) -> VirtualChar {
        let lv = lambda.values();
        let coeffs = self
            .irr
            .iter()
            .map(|chi| {
                let res = restrict(&chi.values, &lambda.sub);
                inner_product(&lv, &res, self.level).expect("induced characters are characters")
            })
            .collect();
        VirtualChar { coeffs }
    }

    /// Coordinates of chi - chi(1) * 1 for the i-th irreducible.
    pub fn degree_zero_part(&self, i: usize) -> VirtualChar {
        let mut v = VirtualChar::basis(self.len(), i);
        v.coeffs[self.trivial_index()] -= self.irr[i].degree as i64;
        v
    }

    /// Index of the irreducible with the given values, if any.
    pub fn find(&self, cf: &ClassFn) -> Option<usize> {
        self.irr.iter().position(|chi| chi.values.same_values(cf))
    }

    /// CSV export: rows irreducibles, columns conjugacy classes (by
    /// representative t^a s^b), entries exact value dumps.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["chi".to_string(), "degree".to_string()];
        for c in &self.classes {
            let (a, b) = self.group.parts(c[0]);
            header.push(format!("t^{a} s^{b} [{}]", c.len()));
        }
        w.write_record(&header).unwrap();
        for (i, chi) in self.irr.iter().enumerate() {
            let mut row = vec![i.to_string(), chi.degree.to_string()];
            for c in &self.classes {
                row.push(chi.values.value(c[0]).to_json().to_string());
            }
            w.write_record(&row).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}
