//! The nonabelian part `M = e·H_1(W; Q)` as a free module over
//! `A = e·Q[H]`, built from the computed topology of the closed cover.
//!
//! Basis order is `E_2, F_2, ..., E_g, F_g, x` where `x` generates the
//! orthogonal complement of the higher handles. Vectors are rows and a
//! matrix `T` acts by `v ↦ v T`, so `M_{f∘g} = M_g M_f`.

use crate::aring::{rvec_add, rvec_lmul, rvec_zero, RElem, RMat, RVec};
use crate::covers::{Chain, Cover, CoverError, CoverSpec, NamedClasses};
use crate::heisenberg::{e_na, pi_na, GroupRingElem, HElem};
use crate::homology::Homology;
use crate::linalg::{sadd, Echelon, Mat, Q};
use crate::pairing::IntersectionForm;
use num_traits::One;
use std::cell::OnceCell;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("genus {0} too small, need at least {1}")]
    GenusTooSmall(u32, u32),
    #[error("no free generator found for the complement of the higher handles")]
    NoFreeGenerator,
    #[error("class {0} is not isotropic")]
    NotIsotropic(String),
    #[error("twist denominator is zero")]
    ZeroDenominator,
}

/// Cover, homology and intersection form of the closed Heisenberg cover.
pub struct Topology {
    pub cover: Cover,
    pub hom: Homology,
    pub form: IntersectionForm,
    pub named: NamedClasses,
}

impl Topology {
    pub fn new(g0: u32, m: u32) -> Result<Self, ModelError> {
        let cover = Cover::new(CoverSpec::w(g0, m, true))?;
        let hom = Homology::new(&cover);
        let form = IntersectionForm::new(&cover)?;
        let named = NamedClasses::new(&cover);
        Ok(Topology { cover, hom, form, named })
    }

    pub fn reidemeister(&self, x: &Chain, y: &Chain) -> GroupRingElem {
        self.form.reidemeister(&self.cover, x, y)
    }

    /// Chain for a named class: `E1`, `F3`, `Gh`, `Gv`.
    pub fn class(&self, name: &str) -> Option<Chain> {
        match name {
            "Gh" => Some(self.named.g_h.clone()),
            "Gv" => Some(self.named.g_v.clone()),
            _ => {
                let (h, i) = name.split_at(1);
                let i: u32 = i.parse().ok()?;
                if i == 0 || i > self.cover.g0 {
                    return None;
                }
                match h {
                    "E" => Some(self.named.ei(i).clone()),
                    "F" => Some(self.named.fi(i).clone()),
                    _ => None,
                }
            }
        }
    }
}

/// Left multiplication by `a` on `Q[H]` has rank equal to `dim_Q(a Q[H])`.
pub fn left_ideal_dim(a: &RElem) -> usize {
    let mut ech = Echelon::new(crate::heisenberg::order(a.m));
    for g in HElem::all(a.m) {
        ech.insert(a.mul(&RElem::basis(g)).to_q_vec());
    }
    ech.rank()
}

/// Inverse of `a` inside `A = e Q[H]`, if `a` is a unit there.
pub fn inverse_in(a: &RElem, e: &RElem) -> Option<RElem> {
    let m = a.m;
    let rows: Vec<Vec<Q>> = HElem::all(m).into_iter().map(|g| a.mul(&RElem::basis(g)).to_q_vec()).collect();
    let y = Mat::from_rows(&rows).solve_left(&e.to_q_vec())?;
    let inv = e.mul(&RElem::from_q_vec(m, &y));
    (a.mul(&inv) == *e && inv.mul(a) == *e).then_some(inv)
}

pub struct ModuleModel {
    pub g0: u32,
    pub m: u32,
    pub d: usize,
    pub e: RElem,
    pub pi: RElem,
    pub names: Vec<String>,
    pub gram: RMat,
    /// `x` as a sum of named classes.
    pub x_recipe: Vec<String>,
    pub x_chain: Chain,
    omega_inv: RElem,
    gram_inv: RMat,
    classes: BTreeMap<String, RVec>,
    hom_gram: OnceCell<Mat>,
    pub topo: Topology,
}

/// Checks of a model matrix against the topology of the cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealizedCheck {
    pub commutes_with_deck: bool,
    pub preserves_intersection: bool,
}

impl RealizedCheck {
    pub fn passed(&self) -> bool {
        self.commutes_with_deck && self.preserves_intersection
    }
}

const X_CANDIDATES: [&[&str]; 15] = [
    &["E1"],
    &["F1"],
    &["Gh"],
    &["Gv"],
    &["E1", "F1"],
    &["E1", "Gh"],
    &["E1", "Gv"],
    &["F1", "Gh"],
    &["F1", "Gv"],
    &["Gh", "Gv"],
    &["E1", "F1", "Gh"],
    &["E1", "F1", "Gv"],
    &["E1", "Gh", "Gv"],
    &["F1", "Gh", "Gv"],
    &["E1", "F1", "Gh", "Gv"],
];

impl ModuleModel {
    pub fn new(g0: u32, m: u32) -> Result<Self, ModelError> {
        if g0 < 3 {
            return Err(ModelError::GenusTooSmall(g0, 3));
        }
        let topo = Topology::new(g0, m)?;
        let e = RElem::from_gre(&e_na(m));
        let pi = RElem::from_gre(&pi_na(m));
        let full = crate::heisenberg::order(m) - (m * m) as usize;
        let mut found = None;
        for cand in X_CANDIDATES {
            let mut chain = Chain::new();
            for n in cand {
                sadd(&mut chain, &topo.class(n).expect("named class"), &Q::one());
            }
            let omega = e.mul(&RElem::from_gre(&topo.reidemeister(&chain, &chain)));
            if left_ideal_dim(&omega) != full {
                continue;
            }
            if let Some(inv) = inverse_in(&omega, &e) {
                found = Some((cand, chain, omega, inv));
                break;
            }
        }
        let (cand, x_chain, _, omega_inv) = found.ok_or(ModelError::NoFreeGenerator)?;
        let d = 2 * g0 as usize - 1;
        let mut names = Vec::with_capacity(d);
        let mut chains = Vec::with_capacity(d);
        for i in 2..=g0 {
            names.push(format!("E{i}"));
            names.push(format!("F{i}"));
            chains.push(topo.named.ei(i).clone());
            chains.push(topo.named.fi(i).clone());
        }
        names.push("x".to_string());
        chains.push(x_chain.clone());
        let mut gram = RMat::zeros(m, d);
        for i in 0..d {
            for j in 0..d {
                gram.set(i, j, e.mul(&RElem::from_gre(&topo.reidemeister(&chains[i], &chains[j]))));
            }
        }
        let mut gram_inv = RMat::zeros(m, d);
        for j in 0..(d - 1) / 2 {
            gram_inv.set(2 * j, 2 * j + 1, e.neg());
            gram_inv.set(2 * j + 1, 2 * j, e.clone());
        }
        gram_inv.set(d - 1, d - 1, omega_inv.clone());
        if gram.mul(&gram_inv) != RMat::scalar(&e, d) {
            return Err(ModelError::NoFreeGenerator);
        }
        let mut model = ModuleModel {
            g0,
            m,
            d,
            e,
            pi,
            names,
            gram,
            x_recipe: cand.iter().map(|s| s.to_string()).collect(),
            x_chain,
            omega_inv,
            gram_inv,
            classes: BTreeMap::new(),
            hom_gram: OnceCell::new(),
            topo,
        };
        for n in ["E1", "F1", "Gh", "Gv"] {
            let c = model.topo.class(n).expect("named class");
            let v = model.coords_in_complement(&c);
            model.classes.insert(n.to_string(), v);
        }
        Ok(model)
    }

    /// Coordinates of `e·c` for a class `c` orthogonal to the higher handles.
    fn coords_in_complement(&self, c: &Chain) -> RVec {
        let p = self.e.mul(&RElem::from_gre(&self.topo.reidemeister(c, &self.x_chain)));
        let mut v = rvec_zero(self.m, self.d);
        v[self.d - 1] = p.mul(&self.omega_inv);
        v
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn unit(&self, i: usize) -> RVec {
        let mut v = rvec_zero(self.m, self.d);
        v[i] = self.e.clone();
        v
    }

    /// Model coordinates of a named class (`E2`..`Fg`, `E1`, `F1`, `Gh`, `Gv`, `x`).
    pub fn class(&self, name: &str) -> Option<RVec> {
        if let Some(i) = self.index_of(name) {
            return Some(self.unit(i));
        }
        self.classes.get(name).cloned()
    }

    pub fn elem(&self, g: &HElem) -> RElem {
        self.e.left_mul_elem(g)
    }

    /// `<v, w>_H = v Ω w*`.
    pub fn pair(&self, v: &RVec, w: &RVec) -> RElem {
        let mut s = RElem::zero(self.m);
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in w.iter().enumerate() {
                let o = self.gram.get(i, j);
                if b.is_zero() || o.is_zero() {
                    continue;
                }
                s = s.add(&a.mul(o).mul(&b.bar()));
            }
        }
        s
    }

    pub fn identity(&self) -> RMat {
        RMat::scalar(&self.e, self.d)
    }

    /// Checks `T Ω T* = Ω`.
    pub fn preserves_form(&self, t: &RMat) -> bool {
        t.mul(&self.gram).mul(&t.star()) == self.gram
    }

    /// Inverse of a form-preserving matrix, `Ω T* Ω⁻¹`.
    pub fn inverse(&self, t: &RMat) -> Option<RMat> {
        let inv = self.gram.mul(&t.star()).mul(&self.gram_inv);
        (t.mul(&inv) == self.identity()).then_some(inv)
    }

    pub fn gram_inverse(&self) -> &RMat {
        &self.gram_inv
    }

    /// `x ↦ x + d⁻¹ <x, c> c`.
    pub fn lifted_twist(&self, c: &RVec, d: i64) -> Result<RMat, ModelError> {
        if d == 0 {
            return Err(ModelError::ZeroDenominator);
        }
        Ok(self.rank_one(c, &RElem::one(self.m).scale(1, d as i128)))
    }

    /// `x ↦ x + Π <x, u> u`, defined for isotropic `u`.
    pub fn clean_transvection(&self, u: &RVec) -> Result<RMat, ModelError> {
        if !self.pi.mul(&self.pair(u, u)).is_zero() {
            return Err(ModelError::NotIsotropic(self.render(u)));
        }
        Ok(self.rank_one(u, &self.pi))
    }

    /// Inverse of a clean transvection.
    pub fn clean_transvection_inv(&self, u: &RVec) -> Result<RMat, ModelError> {
        if !self.pi.mul(&self.pair(u, u)).is_zero() {
            return Err(ModelError::NotIsotropic(self.render(u)));
        }
        Ok(self.rank_one(u, &self.pi.neg()))
    }

    fn rank_one(&self, u: &RVec, s: &RElem) -> RMat {
        let mut t = self.identity();
        let su: RVec = rvec_lmul(s, u);
        for i in 0..self.d {
            // <b_i, u> = sum_k Ω_ik bar(u_k)
            let mut c = RElem::zero(self.m);
            for (k, uk) in u.iter().enumerate() {
                let o = self.gram.get(i, k);
                if !o.is_zero() && !uk.is_zero() {
                    c = c.add(&o.mul(&uk.bar()));
                }
            }
            if c.is_zero() {
                continue;
            }
            for j in 0..self.d {
                let add = c.mul(&su[j]);
                if !add.is_zero() {
                    let cur = t.get(i, j).add(&add);
                    t.set(i, j, cur);
                }
            }
        }
        t
    }

    /// Fixes `E_2, F_2` and multiplies the rest of the basis by `zeta⁻¹`.
    pub fn separating_operator(&self) -> RMat {
        let zi = self.elem(&HElem::zeta(self.m).inv());
        let diag: Vec<RElem> = (0..self.d).map(|i| if i < 2 { self.e.clone() } else { zi.clone() }).collect();
        RMat::diagonal(&diag)
    }

    pub fn separating_operator_inv(&self) -> RMat {
        let z = self.elem(&HElem::zeta(self.m));
        let diag: Vec<RElem> = (0..self.d).map(|i| if i < 2 { self.e.clone() } else { z.clone() }).collect();
        RMat::diagonal(&diag)
    }

    pub fn render(&self, v: &RVec) -> String {
        let parts: Vec<String> =
            v.iter().zip(&self.names).filter(|(a, _)| !a.is_zero()).map(|(a, n)| format!("({a})·{n}")).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// `Q`-basis of `A`: `e·σ^a τ^b ζ^c` with `c ≤ m-2`.
    pub fn a_basis(&self) -> Vec<RElem> {
        let m = self.m as i64;
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m - 1 {
                    out.push(self.elem(&HElem::new(self.m, a, 0, 0).mul(&HElem::new(self.m, 0, b, c))));
                }
            }
        }
        out
    }

    /// Chain realizing a model vector.
    pub fn chain_of(&self, v: &RVec) -> Chain {
        let mut out = Chain::new();
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let basis_chain = if i + 1 == self.d {
                self.x_chain.clone()
            } else {
                let n = &self.names[i];
                self.topo.class(n).expect("basis class")
            };
            sadd(&mut out, &self.topo.cover.act_ring(&a.to_gre(), &basis_chain), &Q::one());
        }
        out
    }

    /// Homology coordinates of a model vector.
    pub fn homology_coords(&self, v: &RVec) -> Vec<Q> {
        self.topo.hom.coords(&self.chain_of(v))
    }

    /// The rational expansion of `T` on `M ⊂ H_1(W)`: one row of homology
    /// coordinates per element of the rational basis `a·b_i`.
    pub fn expand(&self, t: &RMat) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
        let mut src = Vec::new();
        let mut dst = Vec::new();
        for i in 0..self.d {
            for a in self.a_basis() {
                let mut v = rvec_zero(self.m, self.d);
                v[i] = a;
                src.push(self.homology_coords(&v));
                dst.push(self.homology_coords(&t.apply(&v)));
            }
        }
        (src, dst)
    }

    /// Adds `a·w` to `v`.
    pub fn axpy(&self, v: &RVec, a: &RElem, w: &RVec) -> RVec {
        rvec_add(v, &rvec_lmul(a, w))
    }

    /// Intersection matrix of the homology basis.
    pub fn homology_gram(&self) -> &Mat {
        self.hom_gram.get_or_init(|| {
            let b = &self.topo.hom.basis;
            let rows: Vec<Vec<Q>> = b.iter().map(|x| b.iter().map(|y| self.topo.form.pair(x, y)).collect()).collect();
            Mat::from_rows(&rows)
        })
    }

    /// Expands `T` on the rational basis of `M` inside `H_1(W)` and checks that
    /// it commutes with `σ, τ` and preserves the intersection form there.
    pub fn check_realized(&self, t: &RMat) -> RealizedCheck {
        let (src, dst) = self.expand(t);
        let g = self.homology_gram();
        let gram_of = |rows: &[Vec<Q>]| Mat::from_rows(rows).mul(g).mul(&Mat::from_rows(rows).transpose());
        let preserves_intersection = gram_of(&src) == gram_of(&dst);
        let mut commutes_with_deck = true;
        for gen in [HElem::sigma(self.m), HElem::tau(self.m)] {
            for i in 0..self.d {
                for a in self.a_basis() {
                    let mut v = rvec_zero(self.m, self.d);
                    v[i] = a;
                    let moved_after = self.topo.cover.act(&gen, &self.chain_of(&t.apply(&v)));
                    let gv: RVec = v.iter().map(|x| x.left_mul_elem(&gen)).collect();
                    let moved_before = self.chain_of(&t.apply(&gv));
                    let mut diff = moved_after;
                    sadd(&mut diff, &moved_before, &-Q::one());
                    if !self.topo.hom.is_null(&diff) {
                        commutes_with_deck = false;
                    }
                }
            }
        }
        RealizedCheck { commutes_with_deck, preserves_intersection }
    }
}
