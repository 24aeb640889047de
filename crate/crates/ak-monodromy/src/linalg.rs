//! Exact rational linear algebra: dense matrices, echelon forms, kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

pub type Q = BigRational;

/// Sparse rational vector keyed by coordinate index.
pub type SVec = BTreeMap<usize, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `dst += c * src` on sparse vectors, dropping cancelled entries.
pub fn sadd(dst: &mut SVec, src: &SVec, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (k, v) in src {
        let e = dst.entry(*k).or_insert_with(Q::zero);
        *e += v * c;
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

pub fn sadd_one(dst: &mut SVec, k: usize, c: &Q) {
    if c.is_zero() {
        return;
    }
    let e = dst.entry(k).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        dst.remove(&k);
    }
}

pub fn dense_of(v: &SVec, n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

pub fn sparse_of(v: &[Q]) -> SVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Q::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let b = self.get(i, j);
                if !b.is_zero() {
                    out[j] += a * b;
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let x = &m.data[r * m.cols + j] * &inv;
                m.data[r * m.cols + j] = x;
            }
            let prow: Vec<(usize, Q)> = (c..m.cols)
                .filter(|&j| !m.get(r, j).is_zero())
                .map(|j| (j, m.get(r, j).clone()))
                .collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, x) in &prow {
                    let y = &m.data[i * m.cols + j] - &f * x;
                    m.data[i * m.cols + j] = y;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.rank()
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (r, piv) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !piv.contains(c)) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (i, &p) in piv.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Solve `x M = b` for a row vector `x`, if consistent.
    pub fn solve_left(&self, b: &[Q]) -> Option<Vec<Q>> {
        let t = self.transpose();
        let mut aug = Mat::zeros(t.rows, t.cols + 1);
        for i in 0..t.rows {
            for j in 0..t.cols {
                aug.set(i, j, t.get(i, j).clone());
            }
            aug.set(i, t.cols, b[i].clone());
        }
        let (r, piv) = aug.rref();
        if piv.last() == Some(&t.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); t.cols];
        for (i, &p) in piv.iter().enumerate() {
            x[p] = r.get(i, t.cols).clone();
        }
        Some(x)
    }
}

/// Incrementally built semi-echelon basis. Rows are stored with a unit
/// pivot and are reduced against every earlier row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub dim: usize,
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [Q]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[j] -= &f * x;
                }
            }
        }
    }

    /// Returns true when `v` enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn basis(&self) -> Vec<Vec<Q>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(x.denom());
    }
    l
}

pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_left_finds_combination() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let x = a.solve_left(&[q(3), q(-2), q(1)]).unwrap();
        assert_eq!(x, vec![q(3), q(-2)]);
        assert!(a.solve_left(&[q(1), q(1), q(0)]).is_none());
    }
}
