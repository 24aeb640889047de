//! The finite Heisenberg group `H = <sigma, tau, zeta>` over `Z/m`, its rational
//! group ring with the bar involution, and its representation theory.
//!
//! Elements are kept in normal form `sigma^a tau^b zeta^c` with product
//! `(a,b,c)(a',b',c') = (a+a', b+b', c+c'-b*a')`, so `[sigma,tau] = zeta`.

use crate::cyclotomic::{normalize_conductor, units_mod, CMat, CycNum};
use crate::linalg::{q, Q};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeisenbergError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u32),
    #[error("cannot combine elements over Z/{0} and Z/{1}")]
    MismatchedModulus(u32, u32),
    #[error("irrep parameters out of range: m={m} k={k} a={a} b={b} c={c}")]
    BadIrrep { m: u32, k: u32, a: u32, b: u32, c: u32 },
}

pub fn check_modulus(m: u32) -> Result<(), HeisenbergError> {
    if m < 2 {
        Err(HeisenbergError::BadModulus(m))
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct HElem {
    pub m: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl HElem {
    pub fn new(m: u32, a: i64, b: i64, c: i64) -> Self {
        let r = |x: i64| x.rem_euclid(m as i64) as u32;
        HElem { m, a: r(a), b: r(b), c: r(c) }
    }

    pub fn identity(m: u32) -> Self {
        HElem { m, a: 0, b: 0, c: 0 }
    }

    pub fn sigma(m: u32) -> Self {
        HElem::new(m, 1, 0, 0)
    }

    pub fn tau(m: u32) -> Self {
        HElem::new(m, 0, 1, 0)
    }

    pub fn zeta(m: u32) -> Self {
        HElem::new(m, 0, 0, 1)
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }

    pub fn try_mul(&self, o: &HElem) -> Result<HElem, HeisenbergError> {
        if self.m != o.m {
            return Err(HeisenbergError::MismatchedModulus(self.m, o.m));
        }
        Ok(self.mul(o))
    }

    /// Product, assuming equal moduli.
    pub fn mul(&self, o: &HElem) -> HElem {
        debug_assert_eq!(self.m, o.m);
        let m = self.m as u64;
        let c = (self.c as u64 + o.c as u64 + m * m - (self.b as u64 * o.a as u64) % m) % m;
        HElem { m: self.m, a: (self.a + o.a) % self.m, b: (self.b + o.b) % self.m, c: c as u32 }
    }

    pub fn inv(&self) -> HElem {
        let ab = (self.a as i64) * (self.b as i64);
        HElem::new(self.m, -(self.a as i64), -(self.b as i64), -(self.c as i64) - ab)
    }

    pub fn pow(&self, e: i64) -> HElem {
        let base = if e < 0 { self.inv() } else { *self };
        let mut r = HElem::identity(self.m);
        for _ in 0..e.unsigned_abs() {
            r = r.mul(&base);
        }
        r
    }

    pub fn commutator(&self, o: &HElem) -> HElem {
        self.mul(o).mul(&self.inv()).mul(&o.inv())
    }

    pub fn index(&self) -> usize {
        let m = self.m as usize;
        (self.a as usize * m + self.b as usize) * m + self.c as usize
    }

    pub fn from_index(m: u32, i: usize) -> HElem {
        let mu = m as usize;
        HElem { m, a: (i / (mu * mu)) as u32, b: ((i / mu) % mu) as u32, c: (i % mu) as u32 }
    }

    pub fn all(m: u32) -> Vec<HElem> {
        (0..(m as usize).pow(3)).map(|i| HElem::from_index(m, i)).collect()
    }
}

impl fmt::Display for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (name, e) in [("s", self.a), ("t", self.b), ("z", self.c)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

pub fn order(m: u32) -> usize {
    (m as usize).pow(3)
}

/// Element of `Q[H]`, dense in the normal-form index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElem {
    pub m: u32,
    pub coeffs: Vec<Q>,
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(g, x)| if x.is_one() { format!("{g}") } else { format!("({x})*{g}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl GroupRingElem {
    pub fn zero(m: u32) -> Self {
        GroupRingElem { m, coeffs: vec![Q::zero(); order(m)] }
    }

    pub fn scalar(m: u32, x: Q) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = x;
        z
    }

    pub fn one(m: u32) -> Self {
        Self::scalar(m, Q::one())
    }

    pub fn basis(g: HElem) -> Self {
        let mut z = Self::zero(g.m);
        z.coeffs[g.index()] = Q::one();
        z
    }

    pub fn from_terms(m: u32, terms: impl IntoIterator<Item = (HElem, Q)>) -> Self {
        let mut z = Self::zero(m);
        for (g, x) in terms {
            z.coeffs[g.index()] += x;
        }
        z
    }

    pub fn coeff(&self, g: &HElem) -> &Q {
        &self.coeffs[g.index()]
    }

    pub fn terms(&self) -> impl Iterator<Item = (HElem, &Q)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, x)| (HElem::from_index(self.m, i), x))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        GroupRingElem { m: self.m, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GroupRingElem { m: self.m, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        GroupRingElem { m: self.m, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, x: &Q) -> Self {
        GroupRingElem { m: self.m, coeffs: self.coeffs.iter().map(|a| a * x).collect() }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, HeisenbergError> {
        if self.m != o.m {
            return Err(HeisenbergError::MismatchedModulus(self.m, o.m));
        }
        Ok(self.mul(o))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = self.m;
        let mut out = Self::zero(m);
        let lhs: Vec<(HElem, &Q)> = self.terms().collect();
        let rhs: Vec<(HElem, &Q)> = o.terms().collect();
        for (g, x) in &lhs {
            for (h, y) in &rhs {
                out.coeffs[g.mul(h).index()] += *x * *y;
            }
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul_elem(&self, g: &HElem) -> Self {
        let mut out = Self::zero(self.m);
        for (h, x) in self.terms() {
            out.coeffs[g.mul(&h).index()] = x.clone();
        }
        out
    }

    /// The involution `g -> g^{-1}`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.m);
        for (g, x) in self.terms() {
            out.coeffs[g.inv().index()] = x.clone();
        }
        out
    }

    pub fn augmentation(&self) -> Q {
        self.coeffs.iter().sum()
    }

    /// Image under a representation.
    pub fn image(&self, rep: &Irrep) -> CMat {
        let mut acc = CMat::zeros(rep.m, rep.k as usize);
        for (g, x) in self.terms() {
            acc = acc.add(&rep.matrix(&g).scale(&CycNum::from_q(rep.m, x.clone())));
        }
        acc
    }
}

/// `m - (1 + zeta + ... + zeta^{m-1})`.
pub fn pi_na(m: u32) -> GroupRingElem {
    let mut z = GroupRingElem::scalar(m, q(m as i64));
    for c in 0..m as i64 {
        z.coeffs[HElem::new(m, 0, 0, c).index()] -= Q::one();
    }
    z
}

/// `pi_na / m`, the unit of the nonabelian part.
pub fn e_na(m: u32) -> GroupRingElem {
    pi_na(m).scale(&Q::new(1.into(), (m as i64).into()))
}

/// Sum of the powers of a group element.
pub fn cyclic_sum(g: HElem) -> GroupRingElem {
    let mut z = GroupRingElem::zero(g.m);
    let mut p = HElem::identity(g.m);
    loop {
        z.coeffs[p.index()] += Q::one();
        p = p.mul(&g);
        if p.is_identity() {
            return z;
        }
    }
}

pub fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

/// Ramanujan sum `sum over units s mod k of zeta_k^{s j}`.
pub fn ramanujan(k: u32, j: i64) -> i64 {
    let g = (j.rem_euclid(k as i64) as u32).gcd(&k);
    let g = if g == 0 { k } else { g };
    crate::cyclotomic::divisors(g).into_iter().map(|d| mobius(k / d) * d as i64).sum()
}

/// Idempotent of `Q[<zeta>]` cutting out the part where `zeta` has order exactly `k`.
pub fn zeta_order_idempotent(m: u32, k: u32) -> GroupRingElem {
    assert!(m % k == 0, "{k} does not divide {m}");
    let mut z = GroupRingElem::zero(m);
    for j in 0..m as i64 {
        z.coeffs[HElem::new(m, 0, 0, j).index()] = Q::new(ramanujan(k, j).into(), (m as i64).into());
    }
    z
}

/// `(1/m) sum tau^l`, the projector onto tau-invariants.
pub fn tau_average(m: u32) -> GroupRingElem {
    cyclic_sum(HElem::tau(m)).scale(&Q::new(1.into(), (m as i64).into()))
}

/// One factor `Q(zeta_k)` of `Q[Z/m]` per divisor `k`.
pub fn cyclic_wedderburn(m: u32) -> Vec<(u32, String)> {
    crate::cyclotomic::divisors(m.max(1)).into_iter().map(|k| (k, field_label(normalize_conductor(k)))).collect()
}

/// Irreducible complex representation `rho_{a,b,c}` of dimension `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Irrep {
    pub m: u32,
    pub k: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Irrep {
    pub fn new(m: u32, k: u32, a: u32, b: u32, c: u32) -> Result<Self, HeisenbergError> {
        check_modulus(m)?;
        let bad = HeisenbergError::BadIrrep { m, k, a, b, c };
        if k == 0 || m % k != 0 {
            return Err(bad);
        }
        let l = m / k;
        let c = if k == 1 { 0 } else { c };
        if a >= l || b >= l || (k > 1 && (c >= k || c.gcd(&k) != 1)) {
            return Err(bad);
        }
        Ok(Irrep { m, k, a, b, c })
    }

    pub fn ell(&self) -> u32 {
        self.m / self.k
    }

    pub fn dim(&self) -> u32 {
        self.k
    }

    pub fn is_abelian(&self) -> bool {
        self.k == 1
    }

    fn zk(&self, e: i64) -> CycNum {
        CycNum::zeta(self.m, e * self.ell() as i64)
    }

    pub fn sigma_matrix(&self) -> CMat {
        let k = self.k as usize;
        let mut p = CMat::zeros(self.m, k);
        let s = CycNum::zeta(self.m, self.a as i64);
        for i in 0..k {
            p.set((i + 1) % k, i, s.clone());
        }
        p
    }

    pub fn tau_matrix(&self) -> CMat {
        let k = self.k as usize;
        let mut d = CMat::zeros(self.m, k);
        let s = CycNum::zeta(self.m, self.b as i64);
        for j in 0..k {
            d.set(j, j, &s * &self.zk(j as i64 * self.c as i64));
        }
        d
    }

    pub fn zeta_matrix(&self) -> CMat {
        CMat::identity(self.m, self.k as usize).scale(&self.zk(-(self.c as i64)))
    }

    pub fn matrix(&self, g: &HElem) -> CMat {
        self.sigma_matrix().pow(g.a).mul(&self.tau_matrix().pow(g.b)).mul(&self.zeta_matrix().pow(g.c))
    }

    /// Trace of `rho(g)` computed from the matrices.
    pub fn character(&self, g: &HElem) -> CycNum {
        self.matrix(g).trace()
    }

    /// Closed form: zero unless `k` divides both exponents.
    pub fn character_closed(&self, g: &HElem) -> CycNum {
        if g.a % self.k != 0 || g.b % self.k != 0 {
            return CycNum::zero(self.m);
        }
        let ph = CycNum::zeta(self.m, (self.a * g.a + self.b * g.b) as i64);
        (&ph * &self.zk(-((self.c * g.c) as i64))).scale(&q(self.k as i64))
    }

    /// `lcm(k, l / gcd(a, b, l))`.
    pub fn trace_field(&self) -> u32 {
        let l = self.ell();
        let g = self.a.gcd(&self.b).gcd(&l);
        self.k.lcm(&(l / g))
    }

    /// Conductor of the field generated by all character values.
    pub fn character_field_conductor(&self) -> u32 {
        let mut n = 1;
        for g in HElem::all(self.m) {
            n = n.lcm(&self.character_closed(&g).conductor());
        }
        normalize_conductor(n)
    }

    /// Galois conjugate under `zeta_m -> zeta_m^s`.
    pub fn galois(&self, s: u32) -> Irrep {
        let l = self.ell();
        Irrep { m: self.m, k: self.k, a: self.a * s % l, b: self.b * s % l, c: if self.k == 1 { 0 } else { self.c * s % self.k } }
    }

    pub fn galois_orbit(&self) -> Vec<Irrep> {
        let mut o: Vec<Irrep> = units_mod(self.m).into_iter().map(|s| self.galois(s)).collect();
        o.sort();
        o.dedup();
        o
    }

    /// Dimension of the tau-fixed subspace and the order of zeta on it.
    pub fn tau_invariant_flag(&self) -> (bool, u32) {
        let t = self.tau_matrix();
        let fixed = (0..self.k as usize).filter(|&j| *t.get(j, j) == CycNum::one(self.m)).count();
        (fixed > 0, if fixed > 0 { self.k } else { 0 })
    }

    pub fn tau_fixed_dim(&self) -> usize {
        let t = self.tau_matrix();
        (0..self.k as usize).filter(|&j| *t.get(j, j) == CycNum::one(self.m)).count()
    }
}

pub fn all_irreps(m: u32) -> Vec<Irrep> {
    let mut out = Vec::new();
    for k in crate::cyclotomic::divisors(m) {
        let l = m / k;
        for a in 0..l {
            for b in 0..l {
                if k == 1 {
                    out.push(Irrep { m, k, a, b, c: 0 });
                } else {
                    for c in units_mod(k) {
                        out.push(Irrep { m, k, a, b, c });
                    }
                }
            }
        }
    }
    out
}

/// Inner product `(1/|H|) sum chi(g) conj(psi(g))` of two class functions.
pub fn char_inner(m: u32, chi: &[CycNum], psi: &[CycNum]) -> CycNum {
    let mut s = CycNum::zero(m);
    for (x, y) in chi.iter().zip(psi) {
        s = &s + &(x * &y.conj());
    }
    s.scale(&Q::new(1.into(), (order(m) as i64).into()))
}

pub fn field_label(conductor: u32) -> String {
    match conductor {
        1 | 2 => "ℚ".to_string(),
        4 => "ℚ(i)".to_string(),
        n => format!("ℚ(ζ{})", subscript(n)),
    }
}

pub fn subscript(n: u32) -> String {
    n.to_string().chars().map(|d| char::from_u32(0x2080 + d.to_digit(10).unwrap()).unwrap()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct WedderburnFactor {
    pub k: u32,
    pub representative: Irrep,
    pub orbit: Vec<Irrep>,
    pub trace_field: u32,
    pub conductor: u32,
    pub field: String,
    pub abelian: bool,
    pub tau_invariants: bool,
}

impl WedderburnFactor {
    pub fn label(&self) -> String {
        format!("M{}({})", subscript(self.k), self.field)
    }

    pub fn rational_dim(&self) -> usize {
        (self.k * self.k) as usize * self.orbit.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WedderburnReport {
    pub m: u32,
    pub factors: Vec<WedderburnFactor>,
}

impl WedderburnReport {
    pub fn nonabelian(&self) -> impl Iterator<Item = &WedderburnFactor> {
        self.factors.iter().filter(|f| !f.abelian)
    }

    /// Nonabelian factors grouped with multiplicities, e.g. `M₂(ℚ)^{×4} × M₄(ℚ(i))`.
    pub fn render_nonabelian(&self) -> String {
        let mut groups: Vec<(String, usize)> = Vec::new();
        for f in self.nonabelian() {
            let l = f.label();
            match groups.iter_mut().find(|(x, _)| *x == l) {
                Some(g) => g.1 += 1,
                None => groups.push((l, 1)),
            }
        }
        groups
            .into_iter()
            .map(|(l, n)| if n == 1 { l } else { format!("{l}^{{×{n}}}") })
            .collect::<Vec<_>>()
            .join(" × ")
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.rational_dim()).sum()
    }
}

pub fn wedderburn(m: u32) -> Result<WedderburnReport, HeisenbergError> {
    check_modulus(m)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut factors = Vec::new();
    for rep in all_irreps(m) {
        if seen.contains(&rep) {
            continue;
        }
        let orbit = rep.galois_orbit();
        seen.extend(orbit.iter().copied());
        let l = rep.trace_field();
        // the top factor is conventionally written over Q(zeta_m)
        let conductor = if rep.k == m { m } else { normalize_conductor(l) };
        factors.push(WedderburnFactor {
            k: rep.k,
            representative: rep,
            orbit,
            trace_field: l,
            conductor,
            field: field_label(conductor),
            abelian: rep.is_abelian(),
            tau_invariants: rep.tau_invariant_flag().0,
        });
    }
    Ok(WedderburnReport { m, factors })
}

/// Central idempotent of a Wedderburn factor built from its characters.
pub fn factor_idempotent(f: &WedderburnFactor) -> GroupRingElem {
    let m = f.representative.m;
    let mut z = GroupRingElem::zero(m);
    let scale = Q::new((f.k as i64).into(), (order(m) as i64).into());
    for g in HElem::all(m) {
        let ginv = g.inv();
        let mut s = CycNum::zero(m);
        for psi in &f.orbit {
            s = &s + &psi.character_closed(&ginv);
        }
        let r = s.to_rational().expect("orbit sum of characters is rational");
        z.coeffs[g.index()] = r * &scale;
    }
    z
}

pub fn central_idempotents(m: u32) -> Result<Vec<GroupRingElem>, HeisenbergError> {
    Ok(wedderburn(m)?.factors.iter().map(factor_idempotent).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        for m in 2..7 {
            let (s, t, z) = (HElem::sigma(m), HElem::tau(m), HElem::zeta(m));
            assert_eq!(s.commutator(&t), z);
            assert!(s.pow(m as i64).is_identity());
            assert_eq!(t.mul(&s), HElem::new(m, 1, 1, m as i64 - 1));
            assert_eq!(z.inv(), HElem::new(m, 0, 0, m as i64 - 1));
        }
    }

    #[test]
    fn pi_na_small() {
        let p = pi_na(2);
        let expect = GroupRingElem::one(2).sub(&GroupRingElem::basis(HElem::zeta(2)));
        assert_eq!(p, expect);
        assert_eq!(p.mul(&p), p.scale(&q(2)));
    }

    #[test]
    fn ramanujan_values() {
        assert_eq!(ramanujan(4, 0), 2);
        assert_eq!(ramanujan(4, 1), 0);
        assert_eq!(ramanujan(4, 2), -2);
        assert_eq!(ramanujan(3, 1), -1);
        assert_eq!(ramanujan(1, 5), 1);
    }

    #[test]
    fn mismatched_moduli() {
        assert_eq!(HElem::sigma(2).try_mul(&HElem::sigma(3)), Err(HeisenbergError::MismatchedModulus(2, 3)));
        assert!(Irrep::new(4, 3, 0, 0, 1).is_err());
        assert!(Irrep::new(4, 2, 0, 0, 2).is_err());
    }
}
