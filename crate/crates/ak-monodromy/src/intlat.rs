//! Integer lattices: Hermite and Smith normal forms over `BigInt`.

use crate::linalg::{Mat, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-style Hermite normal form: the nonzero rows span the same lattice,
/// pivots are positive and entries above each pivot lie in `[0, pivot)`.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(ncols) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut work: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for c in 0..ncols {
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(work.len());
        for row in work.drain(..) {
            if row[c].is_zero() {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (g, x, y) = egcd(&p[c], &row[c]);
                    let a = &p[c] / &g;
                    let b = &row[c] / &g;
                    let np: Vec<BigInt> = p.iter().zip(&row).map(|(u, v)| &x * u + &y * v).collect();
                    let nr: Vec<BigInt> = p.iter().zip(&row).map(|(u, v)| &a * v - &b * u).collect();
                    pivot = Some(np);
                    if nr.iter().any(|z| !z.is_zero()) {
                        rest.push(nr);
                    }
                }
            }
        }
        work = rest;
        if let Some(mut p) = pivot {
            if p[c].is_negative() {
                for z in p.iter_mut() {
                    *z = -&*z;
                }
            }
            for prev in out.iter_mut() {
                let f = prev[c].div_floor(&p[c]);
                if !f.is_zero() {
                    for (u, v) in prev.iter_mut().zip(&p) {
                        *u -= &f * v;
                    }
                }
            }
            out.push(p);
        }
    }
    out
}

fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Rank and, when the lattice has full rank in its ambient space, the index
/// of the lattice in `Z^n`.
pub fn rank_and_index(rows: &[Vec<BigInt>]) -> (usize, Option<BigInt>) {
    let h = hnf(rows);
    let n = rows.first().map_or(0, |r| r.len());
    let r = h.len();
    if r < n {
        return (r, None);
    }
    let mut det = BigInt::one();
    for (i, row) in h.iter().enumerate() {
        let c = row.iter().position(|x| !x.is_zero()).unwrap();
        debug_assert!(c >= i);
        det *= &row[c];
    }
    (r, Some(det))
}

/// Elementary divisors of an integer matrix.
pub fn smith_diagonal(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = hnf(rows);
    let mut diag = Vec::new();
    while !a.is_empty() {
        let ncols = a[0].len();
        // smallest nonzero entry to the corner, then clear its row and column
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return diag;
            };
            a.swap(0, bi);
            for row in a.iter_mut() {
                row.swap(0, bj);
            }
            let p = a[0][0].clone();
            let mut dirty = false;
            for i in 1..a.len() {
                let f = a[i][0].div_floor(&p);
                if !f.is_zero() {
                    let top = a[0].clone();
                    for (u, v) in a[i].iter_mut().zip(&top) {
                        *u -= &f * v;
                    }
                }
                dirty |= !a[i][0].is_zero();
            }
            for j in 1..ncols {
                let f = a[0][j].div_floor(&p);
                if !f.is_zero() {
                    for row in a.iter_mut() {
                        let t = &f * &row[0];
                        row[j] -= t;
                    }
                }
                dirty |= !a[0][j].is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (1..a.len()).flat_map(|i| (1..ncols).map(move |j| (i, j))).find(|&(i, j)| !(&a[i][j] % &p).is_zero());
            if let Some((i, _)) = bad {
                let r = a[i].clone();
                for (u, v) in a[0].iter_mut().zip(&r) {
                    *u += v;
                }
                continue;
            }
            break;
        }
        diag.push(a[0][0].abs());
        a = a.into_iter().skip(1).map(|r| r.into_iter().skip(1).collect::<Vec<_>>()).filter(|r: &Vec<BigInt>| !r.is_empty() && r.iter().any(|x| !x.is_zero())).collect();
    }
    diag
}

/// Scale rational row vectors by one common denominator.
pub fn clear_denominators(rows: &[Vec<Q>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let l = crate::linalg::lcm_denominators(rows.iter().flatten());
    let out = rows
        .iter()
        .map(|r| r.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect())
        .collect();
    (out, l)
}

/// Index of the lattice spanned by `sub` inside the lattice spanned by `sup`,
/// when both have the same rank and `sub` lies in `sup`.
pub fn index_in(sub: &[Vec<BigInt>], sup: &[Vec<BigInt>]) -> Option<BigInt> {
    let hs = hnf(sub);
    let hp = hnf(sup);
    if hs.len() != hp.len() || hs.is_empty() {
        return None;
    }
    let to_q = |r: &Vec<BigInt>| r.iter().map(|x| Q::from_integer(x.clone())).collect::<Vec<_>>();
    let basis = Mat::from_rows(&hp.iter().map(to_q).collect::<Vec<_>>());
    let mut coords = Vec::new();
    for r in &hs {
        let c = basis.solve_left(&to_q(r))?;
        if c.iter().any(|x| !x.is_integer()) {
            return None;
        }
        coords.push(c.iter().map(|x| x.to_integer()).collect::<Vec<_>>());
    }
    let (_, idx) = rank_and_index(&coords);
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_index() {
        let (r, idx) = rank_and_index(&z(&[&[2, 0], &[0, 3], &[4, 6]]));
        assert_eq!(r, 2);
        assert_eq!(idx, Some(BigInt::from(6)));
        let (r, idx) = rank_and_index(&z(&[&[2, 4], &[1, 2]]));
        assert_eq!((r, idx), (1, None));
    }

    #[test]
    fn smith_of_small_matrix() {
        let d = smith_diagonal(&z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn sublattice_index() {
        let sup = z(&[&[1, 0], &[0, 1]]);
        let sub = z(&[&[2, 1], &[0, 3]]);
        assert_eq!(index_in(&sub, &sup), Some(BigInt::from(6)));
    }
}
