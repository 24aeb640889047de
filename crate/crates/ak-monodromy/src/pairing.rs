//! Algebraic intersection numbers on a closed cover, computed by pushing one
//! cycle off to the left and counting crossings around each vertex, and the
//! Reidemeister pairing `<x, y> = sum_g (x, g y) g` with values in `Q[H]`.

use crate::covers::{Chain, Cover, CoverError, CoverSpec, EdgeKind};
use crate::heisenberg::{factor_idempotent, pi_na, wedderburn, GroupRingElem, HElem, HeisenbergError};
use crate::homology::Homology;
use crate::linalg::{sadd_one, Echelon, Mat, Q, SVec};
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct IntersectionForm {
    rows: Vec<SVec>,
}

fn raw_rows(cover: &Cover) -> Result<Vec<SVec>, CoverError> {
    let succ = cover.rotation()?;
    let nh = succ.len();
    let mut rows = vec![SVec::new(); cover.n_edges()];
    let mut visited = vec![false; nh];
    for start in 0..nh {
        if visited[start] {
            continue;
        }
        let mut order = Vec::new();
        let mut h = start;
        loop {
            visited[h] = true;
            order.push(h);
            h = succ[h];
            if h == start {
                break;
            }
        }
        let d = order.len();
        for (il, &hl) in order.iter().enumerate() {
            let (corner, kappa) = if hl % 2 == 0 { (il, -Q::one()) } else { ((il + d - 1) % d, Q::one()) };
            for (j, &hj) in order.iter().enumerate().skip(corner + 1) {
                let _ = j;
                let xs = if hj % 2 == 0 { kappa.clone() } else { -kappa.clone() };
                sadd_one(&mut rows[hj / 2], hl / 2, &xs);
            }
        }
    }
    Ok(rows)
}

impl IntersectionForm {
    /// Orientation fixed so that `(E_i, F_i) = +1` on the base surface.
    pub fn new(cover: &Cover) -> Result<Self, CoverError> {
        let mut rows = raw_rows(cover)?;
        let base = Cover::new(CoverSpec::base(cover.g0, cover.m, true))?;
        let brows = raw_rows(&base)?;
        let a = base.edge(0, EdgeKind::A(1));
        let b = base.edge(0, EdgeKind::B(1));
        let s = brows[a].get(&b).cloned().unwrap_or_else(Q::zero);
        assert!(s == Q::one() || s == -Q::one(), "base pairing of first handle is {s}");
        if s != Q::one() {
            for r in rows.iter_mut() {
                for v in r.values_mut() {
                    *v = -&*v;
                }
            }
        }
        Ok(IntersectionForm { rows })
    }

    pub fn pair(&self, x: &Chain, y: &Chain) -> Q {
        let mut s = Q::zero();
        for (ex, a) in x {
            let row = &self.rows[*ex];
            if row.len() < y.len() {
                for (ey, qv) in row {
                    if let Some(b) = y.get(ey) {
                        s += a * qv * b;
                    }
                }
            } else {
                for (ey, b) in y {
                    if let Some(qv) = row.get(ey) {
                        s += a * qv * b;
                    }
                }
            }
        }
        s
    }

    /// `sum_g (x, g y) g` over the deck group `H` of the full Heisenberg cover.
    pub fn reidemeister(&self, cover: &Cover, x: &Chain, y: &Chain) -> GroupRingElem {
        let mut out = GroupRingElem::zero(cover.m);
        for g in HElem::all(cover.m) {
            out.coeffs[g.index()] = self.pair(x, &cover.act(&g, y));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct IsotypicBlock {
    pub label: String,
    pub k: u32,
    pub abelian: bool,
    /// homology coordinates of a basis of `e_f H_1`
    pub basis: Vec<Vec<Q>>,
    pub gram: Mat,
}

impl IsotypicBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }
}

/// Image of a group ring element acting on homology, as a row span.
pub fn ring_image(cover: &Cover, hom: &Homology, a: &GroupRingElem) -> Vec<Vec<Q>> {
    let mut ech = Echelon::new(hom.dim);
    for b in &hom.basis {
        ech.insert(hom.coords(&cover.act_ring(a, b)));
    }
    ech.basis()
}

/// One block per Wedderburn factor, cut out by its central idempotent and
/// optionally after projecting by `Π_na`.
pub fn isotypic_blocks(
    cover: &Cover,
    hom: &Homology,
    form: &IntersectionForm,
    projected: bool,
) -> Result<Vec<IsotypicBlock>, HeisenbergError> {
    let w = wedderburn(cover.m)?;
    let pi = pi_na(cover.m);
    let mut out = Vec::new();
    for f in &w.factors {
        let mut ef = factor_idempotent(f);
        if projected {
            ef = ef.mul(&pi);
        }
        let basis = ring_image(cover, hom, &ef);
        let chains: Vec<Chain> = basis.iter().map(|v| hom.chain_of(v)).collect();
        let rows: Vec<Vec<Q>> = chains.iter().map(|x| chains.iter().map(|y| form.pair(x, y)).collect()).collect();
        let gram = if rows.is_empty() { Mat::zeros(0, 0) } else { Mat::from_rows(&rows) };
        out.push(IsotypicBlock { label: f.label(), k: f.k, abelian: f.abelian, basis, gram });
    }
    Ok(out)
}

/// Intersection pairing between two blocks.
pub fn cross_pairing(hom: &Homology, form: &IntersectionForm, a: &IsotypicBlock, b: &IsotypicBlock) -> Mat {
    let ca: Vec<Chain> = a.basis.iter().map(|v| hom.chain_of(v)).collect();
    let cb: Vec<Chain> = b.basis.iter().map(|v| hom.chain_of(v)).collect();
    let rows: Vec<Vec<Q>> = ca.iter().map(|x| cb.iter().map(|y| form.pair(x, y)).collect()).collect();
    if rows.is_empty() || cb.is_empty() {
        Mat::zeros(rows.len(), cb.len())
    } else {
        Mat::from_rows(&rows)
    }
}

pub use crate::nonnormal::gram_top;
