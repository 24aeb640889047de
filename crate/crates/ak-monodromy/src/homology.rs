//! First homology of a cover via a spanning tree: a 1-cycle is determined by
//! its coefficients on non-tree edges, and boundaries of faces are eliminated
//! there by a sparse reduced echelon form.

use crate::covers::{Chain, Cover, CoverError};
use crate::heisenberg::HElem;
use crate::linalg::{sadd, sadd_one, Echelon, Mat, Q, SVec};
use num_traits::{One, Zero};
use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub struct Homology {
    pub dim: usize,
    pub h0: usize,
    pub h2: usize,
    pos_of_edge: Vec<usize>,
    rows: Vec<(usize, SVec)>,
    basis_of_pos: Vec<usize>,
    /// fundamental cycles of the free non-tree edges
    pub basis: Vec<Chain>,
}

impl Homology {
    pub fn new(cover: &Cover) -> Homology {
        let nv = cover.n_vertices();
        let ne = cover.n_edges();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for e in 0..ne {
            adj[cover.tail[e]].push(e);
            adj[cover.head[e]].push(e);
        }
        let mut parent_edge = vec![usize::MAX; nv];
        let mut seen = vec![false; nv];
        let mut in_tree = vec![false; ne];
        let mut h0 = 0;
        for root in 0..nv {
            if seen[root] {
                continue;
            }
            h0 += 1;
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &e in &adj[x] {
                    let y = if cover.tail[e] == x { cover.head[e] } else { cover.tail[e] };
                    if !seen[y] {
                        seen[y] = true;
                        parent_edge[y] = e;
                        in_tree[e] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        let up = |mut v: usize| {
            let mut c = Chain::new();
            while parent_edge[v] != usize::MAX {
                let e = parent_edge[v];
                if cover.tail[e] == v {
                    sadd_one(&mut c, e, &Q::one());
                    v = cover.head[e];
                } else {
                    sadd_one(&mut c, e, &-Q::one());
                    v = cover.tail[e];
                }
            }
            c
        };
        let mut pos_of_edge = vec![usize::MAX; ne];
        let mut nontree = Vec::new();
        for e in 0..ne {
            if !in_tree[e] {
                pos_of_edge[e] = nontree.len();
                nontree.push(e);
            }
        }
        let restrict = |c: &Chain| -> SVec {
            c.iter().filter(|(e, _)| pos_of_edge[**e] != usize::MAX).map(|(e, x)| (pos_of_edge[*e], x.clone())).collect()
        };
        let mut rows: Vec<(usize, SVec)> = Vec::new();
        for f in 0..cover.faces.len() {
            let mut r = restrict(&cover.face_chain(f));
            for (p, row) in &rows {
                if let Some(x) = r.get(p).cloned() {
                    sadd(&mut r, row, &-x);
                }
            }
            let Some((&p, x)) = r.iter().next() else {
                continue;
            };
            let inv = x.recip();
            for v in r.values_mut() {
                *v *= &inv;
            }
            for (_, row) in rows.iter_mut() {
                if let Some(y) = row.get(&p).cloned() {
                    sadd(row, &r, &-y);
                }
            }
            rows.push((p, r));
        }
        let h2 = cover.faces.len() - rows.len();
        let mut is_pivot = vec![false; nontree.len()];
        for (p, _) in &rows {
            is_pivot[*p] = true;
        }
        let mut basis_of_pos = vec![usize::MAX; nontree.len()];
        let mut basis = Vec::new();
        for (p, &e) in nontree.iter().enumerate() {
            if is_pivot[p] {
                continue;
            }
            basis_of_pos[p] = basis.len();
            let mut c = Chain::new();
            sadd_one(&mut c, e, &Q::one());
            sadd(&mut c, &up(cover.head[e]), &Q::one());
            sadd(&mut c, &up(cover.tail[e]), &-Q::one());
            debug_assert!(cover.is_cycle(&c));
            basis.push(c);
        }
        Homology { dim: basis.len(), h0, h2, pos_of_edge, rows, basis_of_pos, basis }
    }

    /// Coordinates of a cycle in the fundamental-cycle basis.
    pub fn coords(&self, z: &Chain) -> Vec<Q> {
        let mut r: SVec = z
            .iter()
            .filter(|(e, _)| self.pos_of_edge[**e] != usize::MAX)
            .map(|(e, x)| (self.pos_of_edge[*e], x.clone()))
            .collect();
        for (p, row) in &self.rows {
            if let Some(x) = r.get(p).cloned() {
                sadd(&mut r, row, &-x);
            }
        }
        let mut out = vec![Q::zero(); self.dim];
        for (p, x) in r {
            let b = self.basis_of_pos[p];
            debug_assert!(b != usize::MAX);
            out[b] = x;
        }
        out
    }

    pub fn try_coords(&self, cover: &Cover, z: &Chain) -> Result<Vec<Q>, CoverError> {
        if !cover.is_cycle(z) {
            return Err(CoverError::NotClosed(HElem::identity(cover.m)));
        }
        Ok(self.coords(z))
    }

    pub fn is_null(&self, z: &Chain) -> bool {
        self.coords(z).iter().all(|x| x.is_zero())
    }

    /// Chain representing a coordinate vector.
    pub fn chain_of(&self, v: &[Q]) -> Chain {
        let mut c = Chain::new();
        for (i, x) in v.iter().enumerate() {
            sadd(&mut c, &self.basis[i], x);
        }
        c
    }

    /// Matrix of a deck transformation, row `i` holding the image of basis vector `i`.
    pub fn deck_matrix(&self, cover: &Cover, g: &HElem) -> Mat {
        let rows: Vec<Vec<Q>> = self.basis.iter().map(|b| self.coords(&cover.act(g, b))).collect();
        Mat::from_rows(&rows)
    }

    pub fn trace(&self, cover: &Cover, g: &HElem) -> Q {
        let mut t = Q::zero();
        for (i, b) in self.basis.iter().enumerate() {
            let img = cover.act(g, b);
            // only coordinate i is needed
            let c = self.coords(&img);
            t += &c[i];
        }
        t
    }

    pub fn rank_of<'a>(&self, chains: impl IntoIterator<Item = &'a Chain>) -> usize {
        let mut e = Echelon::new(self.dim);
        for c in chains {
            e.insert(self.coords(c));
        }
        e.rank()
    }
}
