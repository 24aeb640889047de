//! Monodromy operators on `M = e·H_1(W; Q)`: clean transvections, the
//! separating operator `R`, the clean classes used by the exhibition
//! families, commutators and parabolic conjugates.

use crate::amodule::{ModelError, ModuleModel};
use crate::aring::{rvec_add, rvec_zero, RElem, RMat, RVec};
use crate::heisenberg::HElem;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MonodromyError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("genus {0} too small, need at least {1}")]
    GenusTooSmall(u32, u32),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("matrix does not preserve the Reidemeister form")]
    NotUnitary,
    #[error("no isotropic correction found for G_{0}")]
    NoCorrection(char),
}

#[derive(Clone, Debug)]
pub struct MonodromyMatrix {
    pub mat: RMat,
    pub provenance: String,
}

#[derive(Clone, Debug)]
pub struct CleanClass {
    pub vec: RVec,
    pub label: String,
    pub witness: Option<String>,
}

/// Parameters `(ξ_3, η_3, ξ_4, η_4, ξ_5, η_5)` of a corrected G-class.
pub type GParams = [HElem; 6];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GWhich {
    H,
    V,
}

impl GWhich {
    pub fn name(self) -> &'static str {
        match self {
            GWhich::H => "Gh",
            GWhich::V => "Gv",
        }
    }
}

fn class_of(model: &ModuleModel, name: &str) -> Result<RVec, MonodromyError> {
    model.class(name).ok_or_else(|| MonodromyError::UnknownClass(name.to_string()))
}

pub fn lifted_twist(model: &ModuleModel, c: &CleanClass, d: i64) -> Result<MonodromyMatrix, MonodromyError> {
    Ok(MonodromyMatrix { mat: model.lifted_twist(&c.vec, d)?, provenance: format!("twist({}, {d})", c.label) })
}

pub fn clean_transvection(model: &ModuleModel, u: &CleanClass) -> Result<MonodromyMatrix, MonodromyError> {
    Ok(MonodromyMatrix { mat: model.clean_transvection(&u.vec)?, provenance: format!("T[{}]", u.label) })
}

pub fn separating_operator(model: &ModuleModel) -> MonodromyMatrix {
    MonodromyMatrix { mat: model.separating_operator(), provenance: "R".into() }
}

/// `anchor + ζ^k ξ v` where the anchor is `E2` or `F2` and `v` a handle generator of index ≥ 3.
pub fn gamma_class_anchor(
    model: &ModuleModel,
    anchor: &str,
    v: &str,
    xi: &HElem,
    k: i64,
) -> Result<CleanClass, MonodromyError> {
    let a = model.index_of(anchor).filter(|i| *i < 2).ok_or_else(|| MonodromyError::UnknownClass(anchor.into()))?;
    let j = model.index_of(v).filter(|i| *i >= 2 && *i + 1 < model.d).ok_or_else(|| MonodromyError::UnknownClass(v.into()))?;
    let mut vec = model.unit(a);
    vec[j] = model.elem(&HElem::zeta(model.m).pow(k).mul(xi));
    Ok(CleanClass { vec, label: format!("{anchor}+z^{k}·{xi}·{v}"), witness: None })
}

/// `E_2 + ζ^k ξ v`.
pub fn gamma_class_v_xi(model: &ModuleModel, v: &str, xi: &HElem, k: i64) -> Result<CleanClass, MonodromyError> {
    gamma_class_anchor(model, "E2", v, xi, k)
}

/// `w_E = ζ(E_3 + m F_3 - Σ σ^i ζ^{-i} F_3)` and `w_F = ζ⁻¹(E_3 + m F_3 - Σ τ^i F_3)`.
pub fn w_corrections(model: &ModuleModel) -> (RVec, RVec) {
    let m = model.m;
    let (s, t, z) = (HElem::sigma(m), HElem::tau(m), HElem::zeta(m));
    let e3 = model.index_of("E3").expect("g0 >= 3");
    let build = |outer: HElem, step: &dyn Fn(i64) -> HElem| {
        let mut f = model.e.scale(m as i128, 1);
        for i in 0..m as i64 {
            f = f.sub(&model.elem(&step(i)));
        }
        let o = model.elem(&outer);
        let mut v = rvec_zero(m, model.d);
        v[e3] = o.clone();
        v[e3 + 1] = o.mul(&f);
        v
    };
    let we = build(z, &|i| s.pow(i).mul(&z.pow(-i)));
    let wf = build(z.inv(), &|i| t.pow(i));
    (we, wf)
}

pub fn gamma_class_ef(model: &ModuleModel) -> Result<(CleanClass, CleanClass), MonodromyError> {
    let (we, wf) = w_corrections(model);
    let e1 = class_of(model, "E1")?;
    let f1 = class_of(model, "F1")?;
    Ok((
        CleanClass { vec: rvec_add(&e1, &we), label: "E1+w_E".into(), witness: None },
        CleanClass { vec: rvec_add(&f1, &wf), label: "F1+w_F".into(), witness: None },
    ))
}

/// `G + Σ_{i=3}^{5} (ξ_i E_i + η_i F_i)`.
pub fn gamma_class_g(model: &ModuleModel, which: GWhich, params: &GParams) -> Result<CleanClass, MonodromyError> {
    if model.g0 < 5 {
        return Err(MonodromyError::GenusTooSmall(model.g0, 5));
    }
    let mut vec = class_of(model, which.name())?;
    for (n, i) in (3..=5).enumerate() {
        let ei = model.index_of(&format!("E{i}")).expect("g0 >= 5");
        vec[ei] = model.elem(&params[2 * n]);
        vec[ei + 1] = model.elem(&params[2 * n + 1]);
    }
    let label = format!("{}+corr[{}]", which.name(), params.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(","));
    Ok(CleanClass { vec, label, witness: None })
}

/// Corrections with `ξ_3 = 1` making the corrected G-class isotropic.
///
/// The self-pairing of the corrected class is `<G,G> + c - bar(c)` with
/// `c = Σ ξ_i η_i⁻¹`, so the search runs over triples of group elements.
pub fn isotropic_g_params(model: &ModuleModel, which: GWhich) -> Result<GParams, MonodromyError> {
    let gg = class_of(model, which.name())?;
    let self_pair = model.pi.mul(&model.pair(&gg, &gg));
    let m = model.m;
    let all = HElem::all(m);
    let one = HElem::identity(m);
    let rel = |g: &HElem| model.pi.mul(&RElem::basis(*g).sub(&RElem::basis(g.inv())));
    let terms: Vec<RElem> = all.iter().map(rel).collect();
    for (i3, c3) in all.iter().enumerate() {
        let s3 = self_pair.add(&terms[i3]);
        for (i4, c4) in all.iter().enumerate() {
            let s4 = s3.add(&terms[i4]);
            for (i5, c5) in all.iter().enumerate() {
                if s4.add(&terms[i5]).is_zero() {
                    return Ok([one, c3.inv(), *c4, one, *c5, one]);
                }
            }
        }
    }
    Err(MonodromyError::NoCorrection(if which == GWhich::H { 'h' } else { 'v' }))
}

/// `[T, R] = T R T⁻¹ R⁻¹` as a composite of maps.
pub fn commutator_to_unipotent(
    model: &ModuleModel,
    t: &MonodromyMatrix,
    r: &MonodromyMatrix,
) -> Result<MonodromyMatrix, MonodromyError> {
    let ti = model.inverse(&t.mat).ok_or(MonodromyError::NotUnitary)?;
    let ri = model.inverse(&r.mat).ok_or(MonodromyError::NotUnitary)?;
    let mat = ri.mul(&ti).mul(&r.mat).mul(&t.mat);
    Ok(MonodromyMatrix { mat, provenance: format!("[{}, {}]", t.provenance, r.provenance) })
}

/// `h g h⁻¹` as a composite of maps.
pub fn parabolic_conjugate(
    model: &ModuleModel,
    h: &MonodromyMatrix,
    g: &MonodromyMatrix,
) -> Result<MonodromyMatrix, MonodromyError> {
    let hi = model.inverse(&h.mat).ok_or(MonodromyError::NotUnitary)?;
    let mat = hi.mul(&g.mat).mul(&h.mat);
    Ok(MonodromyMatrix { mat, provenance: format!("{}·{}·{}⁻¹", h.provenance, g.provenance, h.provenance) })
}

/// Composite `f ∘ g`.
pub fn compose(f: &MonodromyMatrix, g: &MonodromyMatrix) -> MonodromyMatrix {
    MonodromyMatrix { mat: g.mat.mul(&f.mat), provenance: format!("{}∘{}", f.provenance, g.provenance) }
}

pub fn matrix_power(model: &ModuleModel, t: &MonodromyMatrix, n: u32) -> RMat {
    let mut p = model.identity();
    for _ in 0..n {
        p = p.mul(&t.mat);
    }
    p
}
