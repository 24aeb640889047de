//! Free groups, their integral group rings, and Fox derivatives.
//!
//! Letters are nonzero integers: `i + 1` for generator `i`, `-(i + 1)` for
//! its inverse.

use std::collections::BTreeMap;

pub type Letter = i32;

pub fn gen(i: usize) -> Letter {
    i as Letter + 1
}

pub fn inv(i: usize) -> Letter {
    -(i as Letter + 1)
}

pub fn letter_gen(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

pub fn reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| -l).collect()
}

pub fn concat(u: &[Letter], v: &[Letter]) -> Vec<Letter> {
    let mut w = u.to_vec();
    w.extend_from_slice(v);
    reduce(&w)
}

/// Element of `Z[F]` keyed by reduced words.
pub type FreeRingElem = BTreeMap<Vec<Letter>, i64>;

pub fn ring_add(a: &mut FreeRingElem, w: Vec<Letter>, c: i64) {
    if c == 0 {
        return;
    }
    let e = a.entry(w.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        a.remove(&w);
    }
}

pub fn ring_sum(a: &FreeRingElem, b: &FreeRingElem) -> FreeRingElem {
    let mut out = a.clone();
    for (w, c) in b {
        ring_add(&mut out, w.clone(), *c);
    }
    out
}

/// Left multiplication by a group element.
pub fn ring_left_mul(u: &[Letter], a: &FreeRingElem) -> FreeRingElem {
    let mut out = FreeRingElem::new();
    for (w, c) in a {
        ring_add(&mut out, concat(u, w), *c);
    }
    out
}

pub fn ring_mul(a: &FreeRingElem, b: &FreeRingElem) -> FreeRingElem {
    let mut out = FreeRingElem::new();
    for (u, c) in a {
        for (v, d) in b {
            ring_add(&mut out, concat(u, v), c * d);
        }
    }
    out
}

/// Fox derivative `d w / d x_i`.
pub fn fox_derivative(w: &[Letter], i: usize) -> FreeRingElem {
    let mut out = FreeRingElem::new();
    let mut prefix: Vec<Letter> = Vec::new();
    for &l in w {
        if letter_gen(l) == i {
            if l > 0 {
                ring_add(&mut out, reduce(&prefix), 1);
            } else {
                let mut p = prefix.clone();
                p.push(l);
                ring_add(&mut out, reduce(&p), -1);
            }
        }
        prefix.push(l);
    }
    out
}

/// Push a free group ring element through a map on words.
pub fn ring_map<T, F>(a: &FreeRingElem, mut f: F) -> Vec<(T, i64)>
where
    F: FnMut(&[Letter]) -> T,
{
    a.iter().map(|(w, c)| (f(w), *c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_commutator() {
        // d[x,y]/dx = 1 - x y x^-1
        let w = vec![gen(0), gen(1), inv(0), inv(1)];
        let d = fox_derivative(&w, 0);
        let mut expect = FreeRingElem::new();
        ring_add(&mut expect, vec![], 1);
        ring_add(&mut expect, vec![gen(0), gen(1), inv(0)], -1);
        assert_eq!(d, expect);
    }
}
