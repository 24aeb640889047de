//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`, elements stored as
//! residues modulo the cyclotomic polynomial.

use crate::linalg::{q, Mat, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn units_mod(n: u32) -> Vec<u32> {
    (1..=n.max(1)).map(|k| k % n.max(1)).filter(|k| k.gcd(&n) == 1 || n == 1).collect()
}

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u32, Vec<BigInt>>> = RefCell::new(HashMap::new());
}

/// Integer coefficients of `Phi_n`, constant term first.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    if let Some(p) = PHI_CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    let p = cyclotomic_poly_uncached(n);
    PHI_CACHE.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

fn cyclotomic_poly_uncached(n: u32) -> Vec<BigInt> {
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        num = poly_div_exact(&num, &cyclotomic_poly(d));
    }
    num
}

fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for i in (0..quo.len()).rev() {
        let c = r[i + db].clone() / &b[db];
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        quo[i] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    quo
}

/// Element of `Q(zeta_n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    n: u32,
    c: Vec<Q>,
}

impl CycNum {
    pub fn zero(n: u32) -> Self {
        CycNum { n, c: vec![Q::zero(); euler_phi(n) as usize] }
    }

    pub fn from_q(n: u32, x: Q) -> Self {
        let mut z = CycNum::zero(n);
        z.c[0] = x;
        z
    }

    pub fn one(n: u32) -> Self {
        CycNum::from_q(n, Q::one())
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![Q::zero(); e + 1];
        raw[e] = Q::one();
        CycNum::from_poly(n, raw)
    }

    /// Reduce a polynomial in `zeta_n` modulo `Phi_n`.
    pub fn from_poly(n: u32, mut raw: Vec<Q>) -> Self {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        while raw.len() > deg {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = raw.len() - deg;
            for (j, pj) in phi.iter().enumerate().take(deg) {
                raw[shift + j] -= &top * Q::from_integer(pj.clone());
            }
        }
        raw.resize(deg, Q::zero());
        CycNum { n, c: raw }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(|x| x.is_zero())
    }

    pub fn to_rational(&self) -> Option<Q> {
        self.is_rational().then(|| self.c[0].clone())
    }

    /// View inside `Q(zeta_target)`; `n` must divide `target`.
    pub fn embed(&self, target: u32) -> Self {
        assert!(target % self.n == 0, "Q(zeta_{}) is not inside Q(zeta_{})", self.n, target);
        if target == self.n {
            return self.clone();
        }
        let step = (target / self.n) as usize;
        let mut raw = vec![Q::zero(); step * self.c.len().max(1)];
        for (i, x) in self.c.iter().enumerate() {
            raw[i * step] = x.clone();
        }
        CycNum::from_poly(target, raw)
    }

    fn lift_pair(&self, other: &Self) -> (Self, Self) {
        let l = self.n.lcm(&other.n);
        (self.embed(l), other.embed(l))
    }

    /// Automorphism `zeta_n -> zeta_n^s`, `s` a unit mod `n`.
    pub fn galois(&self, s: u32) -> Self {
        assert_eq!(s.gcd(&self.n), 1, "{s} is not a unit mod {}", self.n);
        let n = self.n as usize;
        let mut raw = vec![Q::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                raw[(i * s as usize) % n] += x;
            }
        }
        CycNum::from_poly(self.n, raw)
    }

    pub fn conj(&self) -> Self {
        if self.n <= 2 {
            return self.clone();
        }
        self.galois(self.n - 1)
    }

    pub fn scale(&self, x: &Q) -> Self {
        CycNum { n: self.n, c: self.c.iter().map(|y| y * x).collect() }
    }

    fn mul_matrix(&self) -> Mat {
        let d = self.c.len();
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            let mut raw = vec![Q::zero(); i];
            raw.extend(self.c.iter().cloned());
            let row = CycNum::from_poly(self.n, raw);
            for j in 0..d {
                m.set(i, j, row.c[j].clone());
            }
        }
        m
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.mul_matrix();
        let mut e = vec![Q::zero(); self.c.len()];
        e[0] = Q::one();
        let x = m.solve_left(&e)?;
        Some(CycNum { n: self.n, c: x })
    }

    /// Trace down to `Q`.
    pub fn trace(&self) -> Q {
        let mut s = CycNum::zero(self.n);
        for u in units_mod(self.n) {
            s = &s + &self.galois(u);
        }
        s.to_rational().expect("trace is rational")
    }

    /// True when the element lies in `Q(zeta_d)` for `d | n`.
    pub fn lies_in(&self, d: u32) -> bool {
        if self.n % d != 0 {
            return false;
        }
        units_mod(self.n).into_iter().filter(|s| s % d == 1 % d).all(|s| self.galois(s) == *self)
    }

    /// Smallest `d` with the element in `Q(zeta_d)`, with `d` not `2 mod 4`.
    pub fn conductor(&self) -> u32 {
        let d = divisors(self.n).into_iter().find(|&d| self.lies_in(d)).unwrap_or(self.n);
        normalize_conductor(d)
    }
}

pub fn normalize_conductor(d: u32) -> u32 {
    if d % 4 == 2 {
        d / 2
    } else {
        d
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{x}"),
                1 => format!("{x}*z{}", self.n),
                _ => format!("{x}*z{}^{i}", self.n),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        if self.n != o.n {
            let (a, b) = self.lift_pair(o);
            return &a + &b;
        }
        CycNum { n: self.n, c: self.c.iter().zip(&o.c).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        self + &(-o)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        if self.n != o.n {
            let (a, b) = self.lift_pair(o);
            return &a * &b;
        }
        let d = self.c.len();
        let mut raw = vec![Q::zero(); 2 * d.max(1) - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        CycNum::from_poly(self.n, raw)
    }
}

/// Square matrix over a fixed cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMat {
    pub n: u32,
    pub dim: usize,
    pub data: Vec<CycNum>,
}

impl CMat {
    pub fn zeros(n: u32, dim: usize) -> Self {
        CMat { n, dim, data: vec![CycNum::zero(n); dim * dim] }
    }

    pub fn identity(n: u32, dim: usize) -> Self {
        let mut m = CMat::zeros(n, dim);
        for i in 0..dim {
            m.data[i * dim + i] = CycNum::one(n);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycNum) {
        self.data[i * self.dim + j] = x.embed(self.n);
    }

    pub fn mul(&self, o: &CMat) -> CMat {
        assert_eq!(self.dim, o.dim);
        let mut out = CMat::zeros(self.n, self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let s = &out.data[i * self.dim + j] + &(a * b);
                        out.data[i * self.dim + j] = s;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, x: &CycNum) -> CMat {
        CMat { n: self.n, dim: self.dim, data: self.data.iter().map(|y| y * x).collect() }
    }

    pub fn add(&self, o: &CMat) -> CMat {
        CMat { n: self.n, dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn pow(&self, e: u32) -> CMat {
        let mut r = CMat::identity(self.n, self.dim);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn trace(&self) -> CycNum {
        let mut s = CycNum::zero(self.n);
        for i in 0..self.dim {
            s = &s + self.get(i, i);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

pub fn qnum(n: u32, k: i64) -> CycNum {
    CycNum::from_q(n, q(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        let p = |n| cyclotomic_poly(n).iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(p(1), vec![-1, 1]);
        assert_eq!(p(4), vec![1, 0, 1]);
        assert_eq!(p(6), vec![1, -1, 1]);
        assert_eq!(p(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..13 {
            let mut s = CycNum::zero(n);
            for k in 0..n as i64 {
                s = &s + &CycNum::zeta(n, k);
            }
            assert!(s.is_zero(), "n={n}");
        }
    }

    #[test]
    fn inverse_and_conductor() {
        let x = &CycNum::zeta(12, 1) + &qnum(12, 2);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, CycNum::one(12));
        assert_eq!(CycNum::zeta(12, 4).conductor(), 3);
        assert_eq!(CycNum::zeta(12, 2).conductor(), 3);
        assert_eq!(CycNum::zeta(12, 3).conductor(), 4);
        assert_eq!(CycNum::zeta(12, 6).conductor(), 1);
        let s = &CycNum::zeta(5, 1) + &CycNum::zeta(5, 4);
        assert_eq!(s.conj(), s);
        assert_eq!(CycNum::zeta(3, 1).trace(), q(-1));
    }
}
