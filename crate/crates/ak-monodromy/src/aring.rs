//! Fast exact arithmetic in `Q[H]`: machine-integer numerators over one
//! common denominator, plus square matrices over the group ring.
//!
//! Overflow of the 128-bit numerators panics.

use crate::heisenberg::{order, GroupRingElem, HElem};
use crate::linalg::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

thread_local! {
    static TABLES: RefCell<HashMap<u32, Rc<Tables>>> = RefCell::new(HashMap::new());
}

struct Tables {
    prod: Vec<u16>,
    inv: Vec<u16>,
}

fn tables(m: u32) -> Rc<Tables> {
    TABLES.with(|t| {
        t.borrow_mut()
            .entry(m)
            .or_insert_with(|| {
                let all = HElem::all(m);
                let n = all.len();
                let mut prod = vec![0u16; n * n];
                for (i, g) in all.iter().enumerate() {
                    for (j, h) in all.iter().enumerate() {
                        prod[i * n + j] = g.mul(h).index() as u16;
                    }
                }
                let inv = all.iter().map(|g| g.inv().index() as u16).collect();
                Rc::new(Tables { prod, inv })
            })
            .clone()
    })
}

fn ck_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("group ring coefficient overflow")
}

fn ck_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("group ring coefficient overflow")
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RElem {
    pub m: u32,
    den: i128,
    num: Vec<i128>,
}

impl RElem {
    pub fn zero(m: u32) -> Self {
        RElem { m, den: 1, num: vec![0; order(m)] }
    }

    pub fn one(m: u32) -> Self {
        Self::basis(HElem::identity(m))
    }

    pub fn basis(g: HElem) -> Self {
        let mut r = Self::zero(g.m);
        r.num[g.index()] = 1;
        r
    }

    pub fn from_ints(m: u32, num: Vec<i128>, den: i128) -> Self {
        assert_eq!(num.len(), order(m));
        assert!(den != 0);
        let mut r = RElem { m, den, num };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            for x in self.num.iter_mut() {
                *x = -*x;
            }
        }
        let mut g = self.den;
        for x in &self.num {
            if g == 1 {
                break;
            }
            g = g.gcd(x);
        }
        if g > 1 {
            self.den /= g;
            for x in self.num.iter_mut() {
                *x /= g;
            }
        }
        if self.num.iter().all(|x| *x == 0) {
            self.den = 1;
        }
    }

    pub fn from_gre(a: &GroupRingElem) -> Self {
        let mut den = BigInt::one();
        for x in &a.coeffs {
            den = den.lcm(x.denom());
        }
        let num = a
            .coeffs
            .iter()
            .map(|x| (x.numer() * (&den / x.denom())).to_i128().expect("coefficient too large"))
            .collect();
        Self::from_ints(a.m, num, den.to_i128().expect("denominator too large"))
    }

    pub fn to_gre(&self) -> GroupRingElem {
        let d = BigInt::from(self.den);
        GroupRingElem { m: self.m, coeffs: self.num.iter().map(|x| Q::new(BigInt::from(*x), d.clone())).collect() }
    }

    pub fn coeff(&self, g: &HElem) -> Q {
        Q::new(BigInt::from(self.num[g.index()]), BigInt::from(self.den))
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn numerators(&self) -> &[i128] {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| *x == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let l = self.den.lcm(&o.den);
        let (fa, fb) = (l / self.den, l / o.den);
        let num = self.num.iter().zip(&o.num).map(|(a, b)| ck_add(ck_mul(*a, fa), ck_mul(*b, fb))).collect();
        let mut r = RElem { m: self.m, den: l, num };
        r.normalize();
        r
    }

    pub fn neg(&self) -> Self {
        RElem { m: self.m, den: self.den, num: self.num.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, n: i128, d: i128) -> Self {
        let mut r = RElem { m: self.m, den: ck_mul(self.den, d), num: self.num.iter().map(|x| ck_mul(*x, n)).collect() };
        r.normalize();
        r
    }

    pub fn scale_q(&self, x: &Q) -> Self {
        self.scale(x.numer().to_i128().expect("scalar too large"), x.denom().to_i128().expect("scalar too large"))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let t = tables(self.m);
        let n = self.num.len();
        let mut num = vec![0i128; n];
        for (i, a) in self.num.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            let row = &t.prod[i * n..(i + 1) * n];
            for (j, b) in o.num.iter().enumerate() {
                if *b != 0 {
                    let k = row[j] as usize;
                    num[k] = ck_add(num[k], ck_mul(*a, *b));
                }
            }
        }
        let mut r = RElem { m: self.m, den: ck_mul(self.den, o.den), num };
        r.normalize();
        r
    }

    pub fn left_mul_elem(&self, g: &HElem) -> Self {
        let t = tables(self.m);
        let n = self.num.len();
        let gi = g.index();
        let mut num = vec![0i128; n];
        for (j, b) in self.num.iter().enumerate() {
            num[t.prod[gi * n + j] as usize] = *b;
        }
        RElem { m: self.m, den: self.den, num }
    }

    pub fn bar(&self) -> Self {
        let t = tables(self.m);
        let mut num = vec![0i128; self.num.len()];
        for (i, x) in self.num.iter().enumerate() {
            num[t.inv[i] as usize] = *x;
        }
        RElem { m: self.m, den: self.den, num }
    }

    /// Coefficients on the central subgroup `<zeta>`, as an element of `Q[<zeta>]`.
    pub fn zeta_part(&self) -> Self {
        let mut r = Self::zero(self.m);
        r.den = self.den;
        for c in 0..self.m {
            let i = HElem::new(self.m, 0, 0, c as i64).index();
            r.num[i] = self.num[i];
        }
        r.normalize();
        r
    }

    /// Dense rational coefficient vector indexed by `HElem::index`.
    pub fn to_q_vec(&self) -> Vec<Q> {
        let d = BigInt::from(self.den);
        self.num.iter().map(|x| Q::new(BigInt::from(*x), d.clone())).collect()
    }

    pub fn from_q_vec(m: u32, v: &[Q]) -> Self {
        Self::from_gre(&GroupRingElem { m, coeffs: v.to_vec() })
    }

    pub fn max_abs_numerator(&self) -> i128 {
        self.num.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for RElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_gre())
    }
}

impl fmt::Debug for RElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Row vector over the group ring.
pub type RVec = Vec<RElem>;

pub fn rvec_zero(m: u32, d: usize) -> RVec {
    vec![RElem::zero(m); d]
}

pub fn rvec_add(a: &RVec, b: &RVec) -> RVec {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn rvec_sub(a: &RVec, b: &RVec) -> RVec {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

/// Left scalar multiple `a · v`.
pub fn rvec_lmul(a: &RElem, v: &RVec) -> RVec {
    v.iter().map(|x| a.mul(x)).collect()
}

pub fn rvec_is_zero(v: &RVec) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Square matrix over `Q[H]`, acting on row vectors from the right.
#[derive(Clone, PartialEq, Eq)]
pub struct RMat {
    pub m: u32,
    pub d: usize,
    data: Vec<RElem>,
}

impl RMat {
    pub fn zeros(m: u32, d: usize) -> Self {
        RMat { m, d, data: vec![RElem::zero(m); d * d] }
    }

    pub fn scalar(unit: &RElem, d: usize) -> Self {
        let mut r = Self::zeros(unit.m, d);
        for i in 0..d {
            r.data[i * d + i] = unit.clone();
        }
        r
    }

    pub fn diagonal(diag: &[RElem]) -> Self {
        let d = diag.len();
        let mut r = Self::zeros(diag[0].m, d);
        for (i, x) in diag.iter().enumerate() {
            r.data[i * d + i] = x.clone();
        }
        r
    }

    pub fn from_rows(rows: &[RVec]) -> Self {
        let d = rows.len();
        let m = rows[0][0].m;
        let mut data = Vec::with_capacity(d * d);
        for r in rows {
            assert_eq!(r.len(), d);
            data.extend(r.iter().cloned());
        }
        RMat { m, d, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &RElem {
        &self.data[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RElem) {
        self.data[i * self.d + j] = x;
    }

    pub fn row(&self, i: usize) -> RVec {
        self.data[i * self.d..(i + 1) * self.d].to_vec()
    }

    pub fn col(&self, j: usize) -> RVec {
        (0..self.d).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, o: &RMat) -> RMat {
        let d = self.d;
        let mut out = Self::zeros(self.m, d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = &out.data[i * d + j];
                    out.data[i * d + j] = cur.add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &RMat) -> RMat {
        RMat { m: self.m, d: self.d, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &RMat) -> RMat {
        RMat { m: self.m, d: self.d, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    /// Conjugate transpose `g*` with `(g*)_ij = bar(g_ji)`.
    pub fn star(&self) -> RMat {
        let d = self.d;
        let mut out = Self::zeros(self.m, d);
        for i in 0..d {
            for j in 0..d {
                out.data[i * d + j] = self.get(j, i).bar();
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &RVec) -> RVec {
        let d = self.d;
        let mut out = rvec_zero(self.m, d);
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if !b.is_zero() {
                    *o = o.add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> &[RElem] {
        &self.data
    }
}

impl fmt::Debug for RMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.d {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
