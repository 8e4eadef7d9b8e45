//! Exact elements of cyclotomic fields Q(zeta_M) in the power basis
//! modulo the M-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use super::arith::{divisors, euler_phi, factorize, gcd, lcm, radical, rem};
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Hard ceiling for levels reached through the operator overloads.
pub const DEFAULT_MAX_LEVEL: u64 = 1 << 16;

/// Sparse form of a cyclotomic polynomial: x^degree + sum terms.
#[derive(Debug)]
pub struct CycPoly {
    pub level: u64,
    pub degree: usize,
    pub terms: Vec<(usize, i64)>,
}

fn dense_phi(n: u64) -> Vec<i64> {
    let r = radical(n);
    if r != n {
        let base = dense_phi(r);
        let k = (n / r) as usize;
        let mut out = vec![0i64; (base.len() - 1) * k + 1];
        for (i, c) in base.iter().enumerate() {
            out[i * k] = *c;
        }
        return out;
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = dense_phi(d);
        num = exact_div(&num, &den);
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = r[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                r[i + j] -= c * d;
            }
        }
    }
    q
}

static PHI_CACHE: OnceLock<RwLock<HashMap<u64, Arc<CycPoly>>>> = OnceLock::new();

/// Cached sparse cyclotomic polynomial of the given level.
pub fn cyclotomic(level: u64) -> Arc<CycPoly> {
    let cache = PHI_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&level) {
        return p.clone();
    }
    let dense = dense_phi(level);
    let degree = dense.len() - 1;
    let terms = dense[..degree]
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (i, *c))
        .collect();
    let poly = Arc::new(CycPoly { level, degree, terms });
    cache.write().unwrap().insert(level, poly.clone());
    poly
}

/// Reduce a dense exponent vector (any length) modulo x^M - 1 and then Phi_M.
pub fn reduce_dense<T>(mut v: Vec<T>, poly: &CycPoly) -> Vec<T>
where
    T: Num + Clone + FromPrimitive,
{
    let m = poly.level as usize;
    if v.len() > m {
        let tail: Vec<T> = v.drain(m..).collect();
        for (i, c) in tail.into_iter().enumerate() {
            let k = (i + m) % m;
            v[k] = std::mem::replace(&mut v[k], T::zero()) + c;
        }
    }
    let phi = poly.degree;
    for i in (phi..v.len()).rev() {
        let c = std::mem::replace(&mut v[i], T::zero());
        if c.is_zero() {
            continue;
        }
        for &(j, a) in &poly.terms {
            let k = i - phi + j;
            let old = std::mem::replace(&mut v[k], T::zero());
            v[k] = match a {
                1 => old - c.clone(),
                -1 => old + c.clone(),
                _ => old - c.clone() * T::from_i64(a).unwrap(),
            };
        }
    }
    v.truncate(phi);
    while v.len() < phi {
        v.push(T::zero());
    }
    v
}

fn reduce_i128(mut v: Vec<i128>, poly: &CycPoly) -> Option<Vec<i128>> {
    let m = poly.level as usize;
    if v.len() > m {
        for i in m..v.len() {
            let c = v[i];
            v[i % m] = v[i % m].checked_add(c)?;
        }
        v.truncate(m);
    }
    let phi = poly.degree;
    for i in (phi..v.len()).rev() {
        let c = v[i];
        if c == 0 {
            continue;
        }
        for &(j, a) in &poly.terms {
            let k = i - phi + j;
            v[k] = v[k].checked_sub(c.checked_mul(a as i128)?)?;
        }
    }
    v.truncate(phi);
    v.resize(phi, 0);
    Some(v)
}

/// Coefficient scalars for cyclotomic numbers. The multiply hook lets
/// exact types take an integer fast path.
pub trait Scalar:
    Num + Clone + fmt::Debug + PartialEq + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn cyclo_mul(a: &[Self], b: &[Self], poly: &CycPoly) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let old = std::mem::replace(&mut out[i + j], Self::zero());
                out[i + j] = old + x.clone() * y.clone();
            }
        }
        reduce_dense(out, poly)
    }
    fn approx(&self) -> f64;
    fn is_integer(&self) -> bool;
    fn dump(&self) -> String;
}

impl Scalar for f64 {
    fn approx(&self) -> f64 {
        *self
    }
    fn is_integer(&self) -> bool {
        self.fract() == 0.0
    }
    fn dump(&self) -> String {
        format!("{self}")
    }
}

fn common_denominator(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for x in a {
        if !x.denom().is_one() {
            den = den.lcm(x.denom());
        }
    }
    let nums = a
        .iter()
        .map(|x| {
            if x.denom() == &den {
                x.numer().clone()
            } else {
                x.numer() * (&den / x.denom())
            }
        })
        .collect();
    (nums, den)
}

fn conv_i128(a: &[BigInt], b: &[BigInt]) -> Option<Vec<i128>> {
    let a: Vec<i64> = a.iter().map(|x| x.to_i64()).collect::<Option<_>>()?;
    let b: Vec<i64> = b.iter().map(|x| x.to_i64()).collect::<Option<_>>()?;
    let amax = a.iter().map(|x| x.unsigned_abs() as u128).max().unwrap_or(0);
    let bmax = b.iter().map(|x| x.unsigned_abs() as u128).max().unwrap_or(0);
    let bound = amax
        .checked_mul(bmax)?
        .checked_mul(a.len().min(b.len()).max(1) as u128)?;
    if bound >= (1u128 << 100) {
        return None;
    }
    let mut out = vec![0i128; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += *x as i128 * *y as i128;
        }
    }
    Some(out)
}

impl Scalar for BigRational {
    fn cyclo_mul(a: &[Self], b: &[Self], poly: &CycPoly) -> Vec<Self> {
        let (an, ad) = common_denominator(a);
        let (bn, bd) = common_denominator(b);
        let den = ad * bd;
        let ints: Vec<BigInt> = match conv_i128(&an, &bn).and_then(|v| reduce_i128(v, poly)) {
            Some(v) => v.into_iter().map(BigInt::from).collect(),
            None => {
                let mut out = vec![BigInt::zero(); an.len() + bn.len()];
                for (i, x) in an.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in bn.iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                reduce_dense(out, poly)
            }
        };
        ints.into_iter()
            .map(|n| BigRational::new(n, den.clone()))
            .collect()
    }
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn is_integer(&self) -> bool {
        self.denom().is_one()
    }
    fn dump(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Element of Q(zeta_level) as coefficients on 1, zeta, ..., zeta^(phi-1).
#[derive(Clone)]
pub struct CycNum<T> {
    level: u64,
    coeffs: Vec<T>,
}

impl<T: Scalar> CycNum<T> {
    pub fn new(level: u64, coeffs: Vec<T>) -> Result<Self> {
        let phi = euler_phi(level) as usize;
        if level == 0 || coeffs.len() != phi {
            return Err(Error::Resource(format!(
                "coefficient vector of length {} at level {level}",
                coeffs.len()
            )));
        }
        Ok(CycNum { level, coeffs })
    }

    pub fn zero(level: u64) -> Self {
        let phi = euler_phi(level) as usize;
        CycNum { level, coeffs: vec![T::zero(); phi] }
    }

    pub fn from_scalar(c: T) -> Self {
        CycNum { level: 1, coeffs: vec![c] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_scalar(T::from_i64(n).unwrap())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// zeta_level^k.
    pub fn zeta(level: u64, k: i64) -> Self {
        let mut v = vec![T::zero(); level as usize];
        v[rem(k, level) as usize] = T::one();
        Self::from_dense(level, v)
    }

    /// Reduce a dense vector indexed by exponents of zeta_level.
    pub fn from_dense(level: u64, v: Vec<T>) -> Self {
        let poly = cyclotomic(level);
        CycNum { level, coeffs: reduce_dense(v, &poly) }
    }

    /// Sum of zeta_level^i with multiplicity `counts[i]`; `counts` has
    /// length `level`. Used for character sums.
    pub fn from_exponent_counts(level: u64, counts: &[i64]) -> Self {
        let poly = cyclotomic(level);
        let v: Vec<i128> = counts.iter().map(|&c| c as i128).collect();
        match reduce_i128(v, &poly) {
            Some(r) => CycNum {
                level,
                coeffs: r.into_iter().map(|c| T::from_i128(c).unwrap()).collect(),
            },
            None => Self::from_dense(level, counts.iter().map(|&c| T::from_i64(c).unwrap()).collect()),
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Integer coefficients in the power basis (an algebraic integer).
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<T> {
        let n = self.normalized();
        if n.level == 1 {
            Some(n.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embed into level `m`, a multiple of the current level.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m % self.level != 0 {
            return Err(Error::Resource(format!("level {} does not divide {m}", self.level)));
        }
        if m == self.level {
            return Ok(self.clone());
        }
        let k = (m / self.level) as usize;
        let mut v = vec![T::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Ok(Self::from_dense(m, v))
    }

    fn common(&self, other: &Self, max: u64) -> Result<(Self, Self)> {
        let m = lcm(self.level, other.level);
        if m > max {
            return Err(Error::LevelOverflow { level: m, max });
        }
        Ok((self.lift(m)?, other.lift(m)?))
    }

    pub fn try_add(&self, other: &Self, max: u64) -> Result<Self> {
        let (a, b) = self.common(other, max)?;
        let coeffs = a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| x + y).collect();
        Ok(CycNum { level: a.level, coeffs })
    }

    pub fn try_mul(&self, other: &Self, max: u64) -> Result<Self> {
        let (a, b) = self.common(other, max)?;
        if a.level == 1 {
            return Ok(Self::from_scalar(a.coeffs[0].clone() * b.coeffs[0].clone()));
        }
        let poly = cyclotomic(a.level);
        Ok(CycNum { level: a.level, coeffs: T::cyclo_mul(&a.coeffs, &b.coeffs, &poly) })
    }

    pub fn scale(&self, c: &T) -> Self {
        CycNum { level: self.level, coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// The automorphism zeta -> zeta^a.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let m = self.level;
        if gcd(rem(a, m), m) != 1 {
            return Err(Error::NotCoprime { a, level: m });
        }
        if m <= 2 {
            return Ok(self.clone());
        }
        let a = rem(a, m);
        let mut v = vec![T::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[((i as u64 * a) % m) as usize] = c.clone();
        }
        Ok(Self::from_dense(m, v))
    }

    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always coprime")
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Some(acc)
    }

    /// Inverse via the linear system x * y = 1 in the power basis.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        if n == 1 {
            return Some(Self::from_scalar(T::one() / self.coeffs[0].clone()));
        }
        let poly = cyclotomic(self.level);
        // column j = coefficients of x * zeta^j
        let mut cols: Vec<Vec<T>> = Vec::with_capacity(n);
        let mut cur = self.coeffs.clone();
        for _ in 0..n {
            cols.push(cur.clone());
            let mut shifted = vec![T::zero()];
            shifted.extend(cur.into_iter());
            cur = reduce_dense(shifted, &poly);
        }
        let mut m: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut row: Vec<T> = (0..n).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { T::one() } else { T::zero() });
                row
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&r| !m[r][c].is_zero())?;
            m.swap(c, piv);
            let inv = T::one() / m[c][c].clone();
            for j in c..=n {
                m[c][j] = m[c][j].clone() * inv.clone();
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for j in c..=n {
                        m[r][j] = m[r][j].clone() - f.clone() * m[c][j].clone();
                    }
                }
            }
        }
        Some(CycNum { level: self.level, coeffs: m.into_iter().map(|mut r| r.pop().unwrap()).collect() })
    }

    /// Representation at the smallest level containing the element.
    pub fn normalized(&self) -> Self {
        let mut x = self.clone();
        loop {
            let m = x.level;
            if m == 1 {
                return x;
            }
            if m % 4 == 2 {
                x = x.halve_level();
                continue;
            }
            let mut changed = false;
            for (l, k) in factorize(m) {
                if k >= 2 {
                    if x.coeffs.iter().enumerate().all(|(i, c)| c.is_zero() || i as u64 % l == 0) {
                        let coeffs = x.coeffs.iter().step_by(l as usize).cloned().collect();
                        x = CycNum { level: m / l, coeffs };
                        changed = true;
                        break;
                    }
                } else if let Some(y) = x.drop_prime(l) {
                    x = y;
                    changed = true;
                    break;
                }
            }
            if !changed {
                return x;
            }
        }
    }

    // Q(zeta_2k) = Q(zeta_k) for odd k via zeta_2k = -zeta_k^((k+1)/2).
    fn halve_level(&self) -> Self {
        let k = self.level / 2;
        if k == 1 {
            // level 2: zeta_2 = -1 and phi(2) = 1
            return Self::from_scalar(self.coeffs[0].clone());
        }
        let h = (k + 1) / 2;
        let mut v = vec![T::zero(); k as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = ((i as u64 * h) % k) as usize;
            let old = std::mem::replace(&mut v[e], T::zero());
            v[e] = if i % 2 == 0 { old + c.clone() } else { old - c.clone() };
        }
        Self::from_dense(k, v)
    }

    // For a prime l exactly dividing the level, write zeta_M^i as
    // zeta_{M/l}^a zeta_l^b and test whether the zeta_l-components vanish.
    fn drop_prime(&self, l: u64) -> Option<Self> {
        let m = self.level;
        let mp = m / l;
        // zeta_M = zeta_{M/l}^u zeta_l^v with u*l + v*mp = 1 mod M
        let u = super::arith::mod_inv(l as i128, mp as i128).unwrap_or(0) as u64;
        let vv = super::arith::mod_inv(mp as i128, l as i128).unwrap_or(0) as u64;
        let mut parts: Vec<Vec<T>> = vec![vec![T::zero(); mp as usize]; l as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = ((i as u64 * u) % mp) as usize;
            let b = ((i as u64 * vv) % l) as usize;
            let old = std::mem::replace(&mut parts[b][a], T::zero());
            parts[b][a] = old + c.clone();
        }
        let parts: Vec<CycNum<T>> = parts.into_iter().map(|p| Self::from_dense(mp, p)).collect();
        let last = &parts[l as usize - 1];
        for p in &parts[1..l as usize - 1] {
            if !(p - last).is_zero() {
                return None;
            }
        }
        Some(&parts[0] - last)
    }

    pub fn to_complex(&self) -> Complex64 {
        let m = self.level as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| Complex64::from_polar(c.approx(), std::f64::consts::TAU * i as f64 / m))
            .sum()
    }

    /// Exact dump: level plus the coefficient list as rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "level": self.level,
            "coeffs": self.coeffs.iter().map(|c| c.dump()).collect::<Vec<_>>(),
        })
    }
}

impl<T: Scalar> PartialEq for CycNum<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        match self.common(other, u64::MAX) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl<T: Scalar> fmt::Debug for CycNum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.dump(),
                _ => format!("{}*z{}^{}", c.dump(), self.level, i),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<T: Scalar> fmt::Display for CycNum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<T: Scalar> Add for &CycNum<T> {
    type Output = CycNum<T>;
    fn add(self, rhs: Self) -> CycNum<T> {
        self.try_add(rhs, DEFAULT_MAX_LEVEL).expect("cyclotomic level overflow")
    }
}

impl<T: Scalar> Sub for &CycNum<T> {
    type Output = CycNum<T>;
    fn sub(self, rhs: Self) -> CycNum<T> {
        self.try_add(&-rhs, DEFAULT_MAX_LEVEL).expect("cyclotomic level overflow")
    }
}

impl<T: Scalar> Mul for &CycNum<T> {
    type Output = CycNum<T>;
    fn mul(self, rhs: Self) -> CycNum<T> {
        self.try_mul(rhs, DEFAULT_MAX_LEVEL).expect("cyclotomic level overflow")
    }
}

impl<T: Scalar> Neg for &CycNum<T> {
    type Output = CycNum<T>;
    fn neg(self) -> CycNum<T> {
        CycNum { level: self.level, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for CycNum<T> {
            type Output = CycNum<T>;
            fn $m(self, rhs: Self) -> CycNum<T> {
                (&self).$m(&rhs)
            }
        }
        impl<T: Scalar> $tr<&CycNum<T>> for CycNum<T> {
            type Output = CycNum<T>;
            fn $m(self, rhs: &CycNum<T>) -> CycNum<T> {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<T: Scalar> Neg for CycNum<T> {
    type Output = CycNum<T>;
    fn neg(self) -> CycNum<T> {
        -&self
    }
}

/// zeta_order^exponent, stored with order minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, exponent: i64) -> Self {
        assert!(order > 0);
        let e = rem(exponent, order);
        let g = gcd(e, order);
        if e == 0 {
            return RootOfUnity { order: 1, exponent: 0 };
        }
        RootOfUnity { order: order / g, exponent: e / g }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exponent: 0 }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// Exponent k with self = zeta_level^k; the order must divide `level`.
    pub fn exponent_at(&self, level: u64) -> u64 {
        assert!(level % self.order == 0, "order {} does not divide {level}", self.order);
        self.exponent * (level / self.order)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = lcm(self.order, o.order);
        RootOfUnity::new(m, (self.exponent_at(m) + o.exponent_at(m)) as i64)
    }

    pub fn inv(&self) -> Self {
        RootOfUnity::new(self.order, -(self.exponent as i64))
    }

    pub fn pow(&self, k: i64) -> Self {
        RootOfUnity::new(self.order, (self.exponent as i128 * k as i128).rem_euclid(self.order as i128) as i64)
    }

    pub fn to_cyc<T: Scalar>(&self) -> CycNum<T> {
        CycNum::zeta(self.order, self.exponent as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}^{}", self.order, self.exponent)
    }
}

/// Ring context for cyclotomic numbers; levels are lifted on demand.
#[derive(Debug, Clone)]
pub struct CycRing<T> {
    pub max_level: u64,
    _t: std::marker::PhantomData<T>,
}

impl<T> CycRing<T> {
    pub fn new(max_level: u64) -> Self {
        CycRing { max_level, _t: std::marker::PhantomData }
    }
}

impl<T> Default for CycRing<T> {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_LEVEL)
    }
}

impl<T: Scalar> Ring for CycRing<T> {
    type El = CycNum<T>;
    fn zero(&self) -> CycNum<T> {
        CycNum::zero(1)
    }
    fn one(&self) -> CycNum<T> {
        CycNum::one()
    }
    fn from_int(&self, n: i64) -> CycNum<T> {
        CycNum::from_int(n)
    }
    fn add(&self, a: &CycNum<T>, b: &CycNum<T>) -> CycNum<T> {
        a.try_add(b, self.max_level).expect("cyclotomic level overflow")
    }
    fn sub(&self, a: &CycNum<T>, b: &CycNum<T>) -> CycNum<T> {
        a.try_add(&-b, self.max_level).expect("cyclotomic level overflow")
    }
    fn neg(&self, a: &CycNum<T>) -> CycNum<T> {
        -a
    }
    fn mul(&self, a: &CycNum<T>, b: &CycNum<T>) -> CycNum<T> {
        a.try_mul(b, self.max_level).expect("cyclotomic level overflow")
    }
    fn is_zero(&self, a: &CycNum<T>) -> bool {
        a.is_zero()
    }
    fn equal(&self, a: &CycNum<T>, b: &CycNum<T>) -> bool {
        a == b
    }
}

impl<T: Scalar> Field for CycRing<T> {
    fn inv(&self, a: &CycNum<T>) -> Option<CycNum<T>> {
        a.inverse()
    }
}

/// Exact rational helper.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// True when every coefficient of `x` is an integer divisible by `p`.
pub fn divisible_by(x: &CycNum<BigRational>, p: u64) -> bool {
    let pb = BigInt::from(p);
    x.coeffs().iter().all(|c| c.is_integer() && (c.numer() % &pb).is_zero())
}

/// Absolute value bound, used in diagnostics.
pub fn max_abs_coeff(x: &CycNum<BigRational>) -> BigRational {
    x.coeffs().iter().map(|c| c.abs()).fold(BigRational::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;
    type Cyc = CycNum<BigRational>;

    #[test]
    fn phi_small_levels() {
        assert_eq!(dense_phi(1), vec![-1, 1]);
        assert_eq!(dense_phi(4), vec![1, 0, 1]);
        assert_eq!(dense_phi(6), vec![1, -1, 1]);
        assert_eq!(dense_phi(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(dense_phi(105).len() - 1, 48);
        assert!(dense_phi(105).contains(&-2));
    }

    #[test]
    fn roots_of_unity() {
        let z3 = Cyc::zeta(3, 1);
        assert_eq!(&(&z3 * &z3) * &z3, Cyc::one());
        let z8 = Cyc::zeta(8, 1);
        let sq = (&z8 * &z8).normalized();
        assert_eq!(sq.level(), 4);
        assert_eq!(sq, Cyc::zeta(4, 1));
        assert_eq!(Cyc::zeta(2, 1), Cyc::from_int(-1));
    }

    #[test]
    fn galois_action() {
        let z5 = Cyc::zeta(5, 1);
        assert_eq!(z5.galois(2).unwrap(), Cyc::zeta(5, 2));
        let x = &Cyc::zeta(7, 1) + &Cyc::zeta(7, -1);
        assert_eq!(x.galois(-1).unwrap(), x);
        assert!(z5.galois(5).is_err());
    }

    #[test]
    fn normalization_drops_primes() {
        // sqrt(-3) = 2 zeta_3 + 1, seen at level 15
        let s = &(&Cyc::zeta(3, 1) * &Cyc::from_int(2)) + &Cyc::one();
        let lifted = s.lift(15).unwrap();
        assert_eq!(lifted.normalized().level(), 3);
        assert_eq!(lifted.normalized(), s);
        let r = Cyc::from_int(7).lift(60).unwrap();
        assert_eq!(r.normalized().level(), 1);
        let z = Cyc::zeta(12, 5);
        assert_eq!(z.normalized().level(), 12);
    }

    #[test]
    fn inverse_roundtrip() {
        let x = &Cyc::zeta(12, 1) + &Cyc::from_int(3);
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, Cyc::one());
    }

    #[test]
    fn root_of_unity_normalizes() {
        assert_eq!(RootOfUnity::new(8, 2), RootOfUnity::new(4, 1));
        assert!(RootOfUnity::new(6, 12).is_one());
        let z: Cyc = RootOfUnity::new(12, 4).to_cyc();
        assert_eq!(z.pow(3).unwrap(), Cyc::one());
    }
}
