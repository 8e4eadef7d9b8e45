//! Split metacyclic groups <t, s | t^e, s^f, s t s^-1 = t^q> with
//! q = p^f0, and their subgroups.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::arith::{gcd, lcm, mod_pow};

/// Group element index: t^a s^b is stored as a + e*b.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MetacyclicGroup {
    pub p: u64,
    /// Degree of the base field over Q_p; conjugation by s raises t to q = p^f0.
    pub f0: u32,
    pub e: u64,
    pub f: u64,
    qpow: Vec<u64>,
}

impl MetacyclicGroup {
    /// The tame model over Q_p: s t s^-1 = t^p.
    pub fn new(p: u64, e: u64, f: u64) -> Result<Self> {
        Self::over(p, 1, e, f)
    }

    /// The tame model over the unramified extension of degree f0.
    pub fn over(p: u64, f0: u32, e: u64, f: u64) -> Result<Self> {
        if e == 0 || f == 0 {
            return Err(Error::BadGroup("e and f must be positive".into()));
        }
        if gcd(e, p) != 1 {
            return Err(Error::BadGroup(format!("gcd(e = {e}, p = {p}) != 1")));
        }
        let q = mod_pow(p, f0 as u64, e);
        if mod_pow(q, f, e) != 1 % e {
            return Err(Error::BadGroup(format!("e = {e} does not divide q^f - 1 (q = {p}^{f0}, f = {f})")));
        }
        let qpow = (0..f).map(|b| mod_pow(q, b, e)).collect();
        Ok(MetacyclicGroup { p, f0, e, f, qpow })
    }

    pub fn order(&self) -> usize {
        (self.e * self.f) as usize
    }

    pub fn elem(&self, a: i64, b: i64) -> Elem {
        let a = a.rem_euclid(self.e as i64) as u64;
        let b = b.rem_euclid(self.f as i64) as u64;
        (a + self.e * b) as usize
    }

    pub fn parts(&self, x: Elem) -> (u64, u64) {
        let x = x as u64;
        (x % self.e, x / self.e)
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn t(&self) -> Elem {
        self.elem(1, 0)
    }

    pub fn s(&self) -> Elem {
        self.elem(0, 1)
    }

    /// (t^a s^b)(t^c s^d) = t^(a + c q^b) s^(b + d).
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        let (a, b) = self.parts(x);
        let (c, d) = self.parts(y);
        let na = (a + c * self.qpow[b as usize]) % self.e;
        let nb = (b + d) % self.f;
        (na + self.e * nb) as usize
    }

    pub fn inv(&self, x: Elem) -> Elem {
        let (a, b) = self.parts(x);
        let nb = (self.f - b) % self.f;
        // t^x s^-b with a + x q^b = 0
        let qb_inv = self.qpow[nb as usize];
        let na = (self.e - a % self.e) % self.e * qb_inv % self.e;
        (na + self.e * nb) as usize
    }

    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// g x g^-1.
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elem_order(&self, x: Elem) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order()).fold(1, |acc, x| lcm(acc, self.elem_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        self.e == 1 || self.f == 1 || self.qpow[1] == 1
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let cls: BTreeSet<Elem> = (0..n).map(|g| self.conj(g, x)).collect();
            for &y in &cls {
                seen[y] = true;
            }
            out.push(cls.into_iter().collect());
        }
        out
    }

    pub fn subgroup(self: &Arc<Self>, gens: &[Elem]) -> Subgroup {
        Subgroup::generated(self.clone(), gens)
    }

    /// The inertia subgroup <t>.
    pub fn inertia(self: &Arc<Self>) -> Subgroup {
        self.subgroup(&[self.t()])
    }

    /// <t, s^d> for d | f.
    pub fn stabilizer(self: &Arc<Self>, d: u64) -> Subgroup {
        self.subgroup(&[self.t(), self.elem(0, d as i64)])
    }
}

/// A subgroup, stored as its sorted element list.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub group: Arc<MetacyclicGroup>,
    pub elements: Vec<Elem>,
    pos: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, o: &Self) -> bool {
        self.group == o.group && self.elements == o.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn generated(group: Arc<MetacyclicGroup>, gens: &[Elem]) -> Self {
        let mut set = BTreeSet::new();
        set.insert(group.identity());
        let mut frontier = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = group.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Self::from_sorted(group, set.into_iter().collect())
    }

    /// Accepts an element set only if it is closed under multiplication.
    pub fn from_elements(group: Arc<MetacyclicGroup>, elems: &[Elem]) -> Result<Self> {
        let set: BTreeSet<Elem> = elems.iter().copied().collect();
        if !set.contains(&group.identity()) || set.iter().any(|x| *x >= group.order()) {
            return Err(Error::NotASubgroup);
        }
        for &x in &set {
            for &y in &set {
                if !set.contains(&group.mul(x, y)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Self::from_sorted(group, set.into_iter().collect()))
    }

    fn from_sorted(group: Arc<MetacyclicGroup>, elements: Vec<Elem>) -> Self {
        let mut pos = vec![u32::MAX; group.order()];
        for (i, &x) in elements.iter().enumerate() {
            pos[x] = i as u32;
        }
        Subgroup { group, elements, pos }
    }

    pub fn whole(group: Arc<MetacyclicGroup>) -> Self {
        let all: Vec<Elem> = group.elements().collect();
        Self::from_sorted(group, all)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.pos[x] != u32::MAX
    }

    pub fn position(&self, x: Elem) -> Option<usize> {
        match self.pos[x] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|x| other.contains(*x))
    }

    pub fn contains_inertia(&self) -> bool {
        self.contains(self.group.t())
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements.iter().any(|&x| self.group.elem_order(x) as usize == self.order())
    }

    /// For U containing <t>: the d with U = <t, s^d>.
    pub fn residue_index(&self) -> Option<u64> {
        if !self.contains_inertia() {
            return None;
        }
        Some(self.index() as u64)
    }

    /// Left transversal: representatives x with G = union of x U.
    pub fn left_transversal(&self) -> Vec<Elem> {
        let g = &self.group;
        let mut covered = vec![false; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if covered[x] {
                continue;
            }
            reps.push(x);
            for &u in &self.elements {
                covered[g.mul(x, u)] = true;
            }
        }
        reps
    }

    /// Left transversal of `self` inside a larger subgroup `over`.
    pub fn transversal_in(&self, over: &Subgroup) -> Vec<Elem> {
        let g = &self.group;
        let mut covered = vec![false; g.order()];
        let mut reps = Vec::new();
        for &x in &over.elements {
            if covered[x] {
                continue;
            }
            reps.push(x);
            for &u in &self.elements {
                covered[g.mul(x, u)] = true;
            }
        }
        reps
    }

    /// Greedy generating set.
    pub fn generators(&self) -> Vec<Elem> {
        let g = self.group.clone();
        let mut gens = Vec::new();
        let mut current = Subgroup::generated(g.clone(), &[]);
        let mut by_order: Vec<Elem> = self.elements.clone();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(g.elem_order(x)), x));
        for x in by_order {
            if current.order() == self.order() {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = Subgroup::generated(g.clone(), &gens);
            }
        }
        gens
    }
}

/// Cyclic subgroups and subgroups containing <t>, deduplicated, in a
/// deterministic order.
pub fn brauer_subgroups(g: &Arc<MetacyclicGroup>, cyclic: bool, over_inertia: bool) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut out = Vec::new();
    if over_inertia {
        for d in crate::exactnum::arith::divisors(g.f) {
            let u = g.stabilizer(d);
            if seen.insert(u.elements.clone()) {
                out.push(u);
            }
        }
    }
    if cyclic {
        for x in g.elements() {
            let u = g.subgroup(&[x]);
            if seen.insert(u.elements.clone()) {
                out.push(u);
            }
        }
    }
    out.sort_by(|a, b| (b.order(), &a.elements).cmp(&(a.order(), &b.elements)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_and_symmetric_models() {
        let d8 = Arc::new(MetacyclicGroup::new(3, 4, 2).unwrap());
        assert_eq!(d8.order(), 8);
        assert!(!d8.is_abelian());
        assert_eq!(d8.classes().len(), 5);
        assert_eq!(d8.exponent(), 4);
        let s3 = Arc::new(MetacyclicGroup::new(5, 3, 2).unwrap());
        assert_eq!(s3.classes().len(), 3);
        for x in s3.elements() {
            assert_eq!(s3.mul(x, s3.inv(x)), 0);
            for y in s3.elements() {
                for z in s3.elements() {
                    assert_eq!(s3.mul(s3.mul(x, y), z), s3.mul(x, s3.mul(y, z)));
                }
            }
        }
        assert!(MetacyclicGroup::new(5, 5, 2).is_err());
        assert!(MetacyclicGroup::new(5, 7, 2).is_err());
    }

    #[test]
    fn subgroups_over_inertia_are_normal() {
        let g = Arc::new(MetacyclicGroup::new(3, 13, 3).unwrap());
        for d in [1, 3] {
            let u = g.stabilizer(d);
            assert_eq!(u.index() as u64, d);
            for x in g.elements() {
                for &h in &u.elements {
                    assert!(u.contains(g.conj(x, h)));
                }
            }
        }
        assert!(g.inertia().elements.iter().all(|&x| g.parts(x).1 == 0));
        assert!(Subgroup::from_elements(g.clone(), &[0, 1]).is_err());
    }
}
