//! Descent to the τ-invariants: the modules `N_k`, the restriction maps
//! `α_k`, kernel accounting over Wedderburn factors and the comparison of
//! Gram matrices on the top component.

use crate::amodule::ModuleModel;
use crate::aring::{rvec_zero, RElem, RMat, RVec};
use crate::covers::{Cover, CoverError, CoverSpec};
use crate::cyclotomic::{cyclotomic_poly, divisors, CMat, CycNum};
use crate::heisenberg::{
    factor_idempotent, order, tau_average, wedderburn, zeta_order_idempotent, HElem, HeisenbergError, Irrep,
};
use crate::homology::Homology;
use crate::linalg::{Echelon, Mat, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DescentError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Group(#[from] HeisenbergError),
    #[error("{k} does not divide {m}")]
    BadDivisor { k: u32, m: u32 },
    #[error("matrix does not commute with the deck action")]
    NotEquivariant,
}

/// Trace of `g` on `H_1(W; Q)` for the closed cover.
pub fn closed_character(g0: u32, m: u32, g: &HElem) -> i64 {
    let n = order(m) as i64;
    let reg = if g.is_identity() { n } else { 0 };
    let ab = if g.a == 0 && g.b == 0 { (m * m) as i64 } else { 0 };
    2 + (2 * g0 as i64 - 1) * reg - ab
}

/// Genus of `Z = W / <τ>`.
pub fn genus_z(g0: u32, m: u32) -> i64 {
    // Riemann–Hurwitz for the m^2 sheeted cover branched at one point with
    // m points of ramification index m above it
    let mm = (m * m) as i64;
    let chi = mm * (2 - 2 * g0 as i64) - m as i64 * (m as i64 - 1);
    (2 - chi) / 2
}

#[derive(Clone, Debug, Serialize)]
pub struct TauInvariantDims {
    pub k: u32,
    /// kernel of `Φ_k(ζ)` on `H_1(Z)`
    pub from_quotient: usize,
    /// trace of the projector `e_k · τ-average` using the character of `H_1(W)`
    pub from_character: i64,
    /// `d · dim(e_k t A)` in the free-module model, for `k > 1`
    pub from_model: Option<usize>,
}

/// Per-divisor dimensions of `N_k` computed three ways.
pub fn tau_invariant_dims(g0: u32, m: u32, model: Option<&ModuleModel>) -> Result<Vec<TauInvariantDims>, DescentError> {
    let cover = Cover::new(CoverSpec::z(g0, m, true))?;
    let hom = Homology::new(&cover);
    let zmat = hom.deck_matrix(&cover, &HElem::zeta(m));
    let t = tau_average(m);
    let mut out = Vec::new();
    for k in divisors(m) {
        let phi = cyclotomic_poly(k);
        let mut acc = Mat::zeros(hom.dim, hom.dim);
        let mut pw = Mat::identity(hom.dim);
        for c in &phi {
            let scaled = Mat::from_rows(
                &pw.row_vecs().iter().map(|r| r.iter().map(|x| x * Q::from_integer(c.clone())).collect()).collect::<Vec<_>>(),
            );
            acc = add_mat(&acc, &scaled);
            pw = pw.mul(&zmat);
        }
        let from_quotient = hom.dim - acc.rank();
        let p = zeta_order_idempotent(m, k).mul(&t);
        let mut tr = Q::zero();
        for (g, x) in p.terms() {
            tr += x * Q::from_integer(BigInt::from(closed_character(g0, m, &g)));
        }
        let from_character = tr.to_integer().try_into().expect("small dimension");
        let from_model = model.filter(|_| k > 1).map(|md| tau_basis(md, k).len() * md.d);
        out.push(TauInvariantDims { k, from_quotient, from_character, from_model });
    }
    Ok(out)
}

fn add_mat(a: &Mat, b: &Mat) -> Mat {
    let rows: Vec<Vec<Q>> = a.row_vecs().iter().zip(b.row_vecs()).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect()).collect();
    Mat::from_rows(&rows)
}

/// A `Q`-basis of `e_k t A`, the τ-fixed part of one coordinate of `M_k`.
pub fn tau_basis(model: &ModuleModel, k: u32) -> Vec<RElem> {
    let p = RElem::from_gre(&zeta_order_idempotent(model.m, k).mul(&tau_average(model.m))).mul(&model.e);
    let mut ech = Echelon::new(order(model.m));
    let mut out = Vec::new();
    for g in HElem::all(model.m) {
        let v = p.mul(&RElem::basis(g));
        if ech.insert(v.to_q_vec()) {
            out.push(v);
        }
    }
    out
}

/// `N_k` inside the model, with a solver for coordinates.
pub struct TauInvariantModule {
    pub k: u32,
    pub basis: Vec<RElem>,
    pub d: usize,
    solver: Mat,
}

impl TauInvariantModule {
    pub fn new(model: &ModuleModel, k: u32) -> Result<Self, DescentError> {
        if model.m % k != 0 {
            return Err(DescentError::BadDivisor { k, m: model.m });
        }
        let basis = tau_basis(model, k);
        let rows: Vec<Vec<Q>> = basis.iter().map(|b| b.to_q_vec()).collect();
        let solver = if rows.is_empty() { Mat::zeros(0, order(model.m)) } else { Mat::from_rows(&rows) };
        Ok(TauInvariantModule { k, basis, d: model.d, solver })
    }

    pub fn dim(&self) -> usize {
        self.basis.len() * self.d
    }

    /// Model vector of basis element `(slot, s)`.
    pub fn vector(&self, model: &ModuleModel, idx: usize) -> RVec {
        let r = self.basis.len();
        let mut v = rvec_zero(model.m, model.d);
        v[idx / r] = self.basis[idx % r].clone();
        v
    }

    fn coords(&self, v: &RVec) -> Option<Vec<Q>> {
        let mut out = Vec::with_capacity(self.dim());
        for a in v {
            if self.basis.is_empty() {
                continue;
            }
            out.extend(self.solver.solve_left(&a.to_q_vec())?);
        }
        Some(out)
    }
}

/// Rational matrix of `T` restricted to `N_k`, rows indexed like `vector`.
pub fn alpha_restrict(model: &ModuleModel, n: &TauInvariantModule, t: &RMat) -> Result<Mat, DescentError> {
    let mut rows = Vec::with_capacity(n.dim());
    for i in 0..n.dim() {
        let img = t.apply(&n.vector(model, i));
        rows.push(n.coords(&img).ok_or(DescentError::NotEquivariant)?);
    }
    Ok(if rows.is_empty() { Mat::zeros(0, 0) } else { Mat::from_rows(&rows) })
}

/// `<x, y>_Q`: the part of `<x, y>_H` supported on `<ζ>`.
pub fn pair_q(model: &ModuleModel, x: &RVec, y: &RVec) -> RElem {
    model.pair(x, y).zeta_part()
}

/// Checks `<α x, α y>_Q = <x, y>_Q` on all basis pairs of `N_k`.
pub fn alpha_preserves_form(model: &ModuleModel, n: &TauInvariantModule, t: &RMat) -> bool {
    let vs: Vec<RVec> = (0..n.dim()).map(|i| n.vector(model, i)).collect();
    let ws: Vec<RVec> = vs.iter().map(|v| t.apply(v)).collect();
    for i in 0..vs.len() {
        for j in 0..vs.len() {
            if pair_q(model, &vs[i], &vs[j]) != pair_q(model, &ws[i], &ws[j]) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorClass {
    pub label: String,
    pub representative: Irrep,
    pub rational_dim: usize,
    /// `e_f · t ≠ 0`
    pub tau_invariants: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub k: u32,
    /// classes without τ-invariants, whose blocks form the kernel of `α_k`
    pub kernel_classes: Vec<FactorClass>,
    pub surviving_classes: Vec<FactorClass>,
    /// `d · Σ dim_Q(e_f A)` over the kernel classes
    pub kernel_dim: usize,
    /// τ-fixed dimension of the model predicted from the surviving classes, for `k > 1`
    pub predicted_tau_dim: Option<usize>,
    /// group-ring check that the flags agree with `e_f t = 0`
    pub idempotent_check: bool,
}

pub fn kernel_dimensions(m: u32, k: u32, d: usize) -> Result<KernelReport, DescentError> {
    if m % k != 0 {
        return Err(DescentError::BadDivisor { k, m });
    }
    let w = wedderburn(m)?;
    let t = tau_average(m);
    let mut kernel_classes = Vec::new();
    let mut surviving_classes = Vec::new();
    let mut idempotent_check = true;
    let mut predicted = 0;
    for f in w.factors.iter().filter(|f| f.k == k) {
        let ef = factor_idempotent(f);
        let et = ef.mul(&t);
        idempotent_check &= et.is_zero() != f.tau_invariants;
        let fc = FactorClass {
            label: f.label(),
            representative: f.representative,
            rational_dim: f.rational_dim(),
            tau_invariants: f.tau_invariants,
        };
        if f.tau_invariants {
            // one τ-fixed line in each of the k columns of every conjugate
            predicted += d * f.k as usize * f.orbit.len() * f.representative.tau_fixed_dim();
            surviving_classes.push(fc);
        } else {
            kernel_classes.push(fc);
        }
    }
    let kernel_dim = d * kernel_classes.iter().map(|f| f.rational_dim).sum::<usize>();
    let predicted_tau_dim = (k > 1).then_some(predicted);
    Ok(KernelReport { k, kernel_classes, surviving_classes, kernel_dim, predicted_tau_dim, idempotent_check })
}

/// `e_f T + (1 - e_f)` for a central idempotent `e_f`, acting only on one block.
pub fn restrict_to_block(model: &ModuleModel, t: &RMat, ef: &RElem) -> RMat {
    let comp = model.e.sub(&ef.mul(&model.e));
    let mut out = RMat::zeros(model.m, model.d);
    for i in 0..model.d {
        for j in 0..model.d {
            let mut x = ef.mul(t.get(i, j));
            if i == j {
                x = x.add(&comp);
            }
            out.set(i, j, x);
        }
    }
    out
}

/// Matrix unit `E_ij = σ^{i-1} E_11 σ^{1-j}` of the top factor, 1-based.
pub fn matrix_unit(m: u32, i: i64, j: i64) -> RElem {
    let etop = RElem::from_gre(&zeta_order_idempotent(m, m));
    let e11 = RElem::from_gre(&tau_average(m)).mul(&etop);
    let s = HElem::sigma(m);
    RElem::basis(s.pow(i - 1)).mul(&e11).mul(&RElem::basis(s.pow(1 - j)))
}

/// `(1/m) Σ_l (ζ^a τ)^l σ^{i-j} e_top` with `a = i-1` or `a = 1-i`.
pub fn matrix_unit_formula(m: u32, i: i64, j: i64, sign: i64) -> RElem {
    let etop = RElem::from_gre(&zeta_order_idempotent(m, m));
    let g = HElem::zeta(m).pow(sign * (i - 1)).mul(&HElem::tau(m));
    let mut s = RElem::zero(m);
    let mut p = HElem::identity(m);
    for _ in 0..m {
        s = s.add(&RElem::basis(p));
        p = p.mul(&g);
    }
    s.scale(1, m as i128).mul(&RElem::basis(HElem::sigma(m).pow(i - j))).mul(&etop)
}

fn top_irrep(m: u32) -> Irrep {
    Irrep::new(m, m, 0, 0, 1).expect("top irrep")
}

/// Element of `Q[<ζ>]` sent to `Q(ζ_m)` by `ζ ↦ ζ_m^{-1}`.
pub fn zeta_part_to_cyc(m: u32, a: &RElem) -> CycNum {
    let mut raw = vec![Q::zero(); m as usize];
    for c in 0..m as i64 {
        let x = a.coeff(&HElem::new(m, 0, 0, c));
        raw[((m as i64 - c) % m as i64) as usize] += x;
    }
    CycNum::from_poly(m, raw)
}

/// Block matrix `C` of `<·,·>_H` on the basis `E_2, F_2, ..., x`, each entry
/// an `m × m` block in the top factor.
pub fn gram_top(model: &ModuleModel) -> CMat {
    let m = model.m;
    let rep = top_irrep(m);
    let d = model.d;
    let mut c = CMat::zeros(m, d * m as usize);
    for p in 0..d {
        for q in 0..d {
            let blk = model.gram.get(p, q).to_gre().image(&rep);
            for i in 0..m as usize {
                for j in 0..m as usize {
                    c.set(p * m as usize + i, q * m as usize + j, blk.get(i, j).clone());
                }
            }
        }
    }
    c
}

#[derive(Clone, Debug, Serialize)]
pub struct TopComponentReport {
    pub m: u32,
    pub matrix_units: bool,
    /// `E_ij = (1/m) Σ (ζ^{i-1} τ)^l σ^{i-j} e_top` for all `i, j`
    pub unit_formula: bool,
    /// the same with `ζ^{1-i}`
    pub unit_formula_opposite_exponent: bool,
    /// `ρ(<x,x>_H)_{ij} = m Σ_k (x, ζ^k E_ij x) ζ_m^{-k}`
    pub entry_expansion: bool,
    /// `β = C / m` entrywise
    pub beta_identity: bool,
    /// handle blocks of `C` are `±I`
    pub c_handle_blocks_identity: bool,
    /// handle blocks of `B` are `±I`
    pub b_handle_blocks_identity: bool,
    pub gram_skew_hermitian: bool,
}

impl TopComponentReport {
    pub fn passed(&self) -> bool {
        self.matrix_units && self.unit_formula && self.entry_expansion && self.beta_identity && self.gram_skew_hermitian
    }
}

fn cmat_conj_transpose(a: &CMat, n: usize) -> CMat {
    let mut out = CMat::zeros(a.get(0, 0).order(), n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, a.get(j, i).conj());
        }
    }
    out
}

fn handle_blocks_are_identity(mat: &CMat, model: &ModuleModel, scale: &Q) -> bool {
    let m = model.m as usize;
    let handles = model.d - 1;
    for p in 0..handles {
        for q in 0..handles {
            let sign = if p / 2 == q / 2 && p != q { if p % 2 == 0 { Q::one() } else { -Q::one() } } else { Q::zero() };
            for i in 0..m {
                for j in 0..m {
                    let want = if i == j { sign.clone() * scale } else { Q::zero() };
                    if *mat.get(p * m + i, q * m + j) != CycNum::from_q(model.m, want) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn verify_top_component(model: &ModuleModel) -> TopComponentReport {
    let m = model.m;
    let mi = m as i64;
    let rep = top_irrep(m);
    let etop = RElem::from_gre(&zeta_order_idempotent(m, m));
    let units: Vec<Vec<RElem>> = (1..=mi).map(|i| (1..=mi).map(|j| matrix_unit(m, i, j)).collect()).collect();
    let mut matrix_units = units.iter().enumerate().fold(RElem::zero(m), |s, (i, r)| s.add(&r[i])) == etop;
    for i in 0..m as usize {
        for j in 0..m as usize {
            let img = units[i][j].to_gre().image(&rep);
            for a in 0..m as usize {
                for b in 0..m as usize {
                    let want = if (a, b) == (i, j) { CycNum::one(m) } else { CycNum::zero(m) };
                    matrix_units &= *img.get(a, b) == want;
                }
            }
        }
    }
    let formula = |sign: i64| {
        (1..=mi).all(|i| (1..=mi).all(|j| matrix_unit_formula(m, i, j, sign) == units[i as usize - 1][j as usize - 1]))
    };
    let unit_formula = formula(1);
    let unit_formula_opposite_exponent = formula(-1);

    let d = model.d;
    let x = d - 1;
    let omega = model.gram.get(x, x).clone();
    let omega_img = omega.to_gre().image(&rep);
    let mut entry_expansion = true;
    for i in 0..m as usize {
        for j in 0..m as usize {
            let mut raw = vec![Q::zero(); m as usize];
            for k in 0..mi {
                // (x, g x) is the identity coefficient of <x, g x> = <x,x> bar(g)
                let g = RElem::basis(HElem::zeta(m).pow(k)).mul(&units[i][j]);
                let v = omega.mul(&g.bar()).coeff(&HElem::identity(m));
                raw[((mi - k) % mi) as usize] += v * Q::from_integer(BigInt::from(mi));
            }
            entry_expansion &= CycNum::from_poly(m, raw) == *omega_img.get(i, j);
        }
    }

    let c = gram_top(model);
    let n = d * m as usize;
    let e11 = &units[0][0];
    let vecs: Vec<RVec> = (0..n)
        .map(|idx| {
            let (p, i) = (idx / m as usize, idx % m as usize);
            let mut v = rvec_zero(m, d);
            v[p] = e11.mul(&RElem::basis(HElem::sigma(m).pow(-(i as i64)))).mul(&model.e);
            v
        })
        .collect();
    let mut b = CMat::zeros(m, n);
    for (a, va) in vecs.iter().enumerate() {
        for (bb, vb) in vecs.iter().enumerate() {
            b.set(a, bb, zeta_part_to_cyc(m, &pair_q(model, va, vb)));
        }
    }
    let inv_m = Q::new(BigInt::one(), BigInt::from(mi));
    let mut beta_identity = true;
    for a in 0..n {
        for bb in 0..n {
            beta_identity &= *b.get(a, bb) == c.get(a, bb).scale(&inv_m);
        }
    }
    let ct = cmat_conj_transpose(&c, n);
    let gram_skew_hermitian = (0..n).all(|a| (0..n).all(|bb| *ct.get(a, bb) == c.get(a, bb).scale(&-Q::one())));
    TopComponentReport {
        m,
        matrix_units,
        unit_formula,
        unit_formula_opposite_exponent,
        entry_expansion,
        beta_identity,
        c_handle_blocks_identity: handle_blocks_are_identity(&c, model, &Q::one()),
        b_handle_blocks_identity: handle_blocks_are_identity(&b, model, &Q::one()),
        gram_skew_hermitian,
    }
}
