use ak_monodromy::amodule::{ModelError, ModuleModel};
use ak_monodromy::arithmeticity::{conjugate_pi_from_levi, generate_suite, in_parabolic, project_pi, FlagBasis};
use ak_monodromy::aring::{rvec_add, rvec_zero, RElem, RMat, RVec};
use ak_monodromy::heisenberg::HElem;
use ak_monodromy::linalg::{sadd, Q};
use ak_monodromy::monodromy::*;
use num_traits::One;

fn model(g0: u32, m: u32) -> ModuleModel {
    ModuleModel::new(g0, m).unwrap()
}

fn sub_i(md: &ModuleModel, t: &RMat) -> RMat {
    t.sub(&md.identity())
}

fn mm(mat: RMat, p: &str) -> MonodromyMatrix {
    MonodromyMatrix { mat, provenance: p.into() }
}

#[test]
fn a_basis_has_rank_m3_minus_m2() {
    for m in [2, 3] {
        let md = model(3, m);
        let basis = md.a_basis();
        assert_eq!(basis.len() as u32, m * m * m - m * m);
        let mut ech = ak_monodromy::linalg::Echelon::new((m * m * m) as usize);
        for a in &basis {
            ech.insert(a.to_q_vec());
        }
        assert_eq!(ech.rank(), basis.len());
    }
}

#[test]
fn model_dimension_and_identity() {
    let md = model(4, 2);
    assert_eq!(md.d, 7);
    assert_eq!(md.names.len(), 7);
    assert_eq!(md.identity(), RMat::scalar(&md.e, 7));
    assert!(md.preserves_form(&md.identity()));
}

#[test]
fn genus_two_is_rejected() {
    assert!(matches!(ModuleModel::new(2, 2), Err(ModelError::GenusTooSmall(2, 3))));
}

#[test]
fn class_coordinates_match_homology() {
    for m in [2, 3] {
        let md = model(3, m);
        for name in ["E1", "F1", "E2", "F3", "Gh", "Gv"] {
            let coords = md.class(name).unwrap();
            let raw = md.topo.class(name).unwrap();
            let projected = md.topo.cover.act_ring(&md.e.to_gre(), &raw);
            let mut diff = projected;
            sadd(&mut diff, &md.chain_of(&coords), &-Q::one());
            assert!(md.topo.hom.is_null(&diff), "m={m} {name}");
        }
    }
}

#[test]
fn gram_is_skew_hermitian() {
    for m in [2, 3] {
        let md = model(4, m);
        assert_eq!(md.gram.star(), RMat::zeros(m, md.d).sub(&md.gram));
    }
}

#[test]
fn transvection_basic_identities() {
    for m in [2, 3] {
        let md = model(4, m);
        let c = gamma_class_v_xi(&md, "F3", &HElem::tau(m), 1).unwrap();
        let t = clean_transvection(&md, &c).unwrap();
        let n = sub_i(&md, &t.mat);
        assert!(!n.is_zero());
        assert!(n.mul(&n).is_zero());
        assert!(md.preserves_form(&t.mat));
        assert_eq!(t.mat.apply(&c.vec), c.vec);
        let inv = md.clean_transvection_inv(&c.vec).unwrap();
        assert_eq!(inv.mul(&t.mat), md.identity());
        assert_eq!(md.inverse(&t.mat).unwrap(), inv);
    }
}

#[test]
fn transvection_rejects_non_isotropic() {
    for m in [2, 3, 4] {
        let md = model(3, m);
        let x = md.unit(md.d - 1);
        assert!(matches!(md.clean_transvection(&x), Err(ModelError::NotIsotropic(_))));
    }
}

#[test]
fn lifted_twist_zero_denominator() {
    let md = model(3, 2);
    let c = CleanClass { vec: md.unit(0), label: "E2".into(), witness: None };
    assert!(matches!(
        lifted_twist(&md, &c, 0),
        Err(MonodromyError::Model(ModelError::ZeroDenominator))
    ));
    let t = lifted_twist(&md, &c, 3).unwrap();
    let f2 = md.unit(1);
    // <F2, E2> = -e
    let want = rvec_add(&f2, &rvec_zero(2, md.d).iter().enumerate().map(|(i, z)| if i == 0 { md.e.scale(-1, 3) } else { z.clone() }).collect());
    assert_eq!(t.mat.apply(&f2), want);
}

#[test]
fn transvection_expansion_matches_chain_formula() {
    let md = model(3, 2);
    let c = gamma_class_v_xi(&md, "E3", &HElem::sigma(2), 0).unwrap();
    let t = clean_transvection(&md, &c).unwrap();
    let uc = md.chain_of(&c.vec);
    let pi = md.pi.to_gre();
    for i in 0..md.d {
        for a in md.a_basis().into_iter().take(3) {
            let mut v = rvec_zero(2, md.d);
            v[i] = a;
            let vc = md.chain_of(&v);
            let coeff = pi.mul(&md.topo.reidemeister(&vc, &uc));
            let mut direct = vc.clone();
            sadd(&mut direct, &md.topo.cover.act_ring(&coeff, &uc), &Q::one());
            assert_eq!(md.topo.hom.coords(&direct), md.homology_coords(&t.mat.apply(&v)));
        }
    }
}

#[test]
fn separating_operator_facts() {
    for m in [2, 3] {
        let md = model(5, m);
        let r = separating_operator(&md);
        let e2 = md.unit(0);
        assert_eq!(r.mat.apply(&e2), e2);
        let e3 = md.unit(2);
        let zi = md.elem(&HElem::zeta(m).inv());
        let mut want = rvec_zero(m, md.d);
        want[2] = zi;
        assert_eq!(r.mat.apply(&e3), want);
        assert_eq!(matrix_power(&md, &r, m), md.identity());
        assert!(md.preserves_form(&r.mat));
        assert_eq!(md.separating_operator_inv().mul(&r.mat), md.identity());
        assert!(in_parabolic(&md, &r.mat, &FlagBasis::e2(&md)));
        assert!(in_parabolic(&md, &r.mat, &FlagBasis::f2(&md)));
    }
}

#[test]
fn conjugating_transvection_by_r() {
    let m = 3;
    let md = model(4, m);
    let r = separating_operator(&md);
    let c = gamma_class_v_xi(&md, "F3", &HElem::sigma(m), 0).unwrap();
    let t = clean_transvection(&md, &c).unwrap();
    let conj = parabolic_conjugate(&md, &r, &t).unwrap();
    let moved = md.clean_transvection(&r.mat.apply(&c.vec)).unwrap();
    assert_eq!(conj.mat, moved);
}

#[test]
fn compose_is_map_composition() {
    let md = model(3, 2);
    let r = separating_operator(&md);
    let c = gamma_class_v_xi(&md, "E3", &HElem::identity(2), 0).unwrap();
    let t = clean_transvection(&md, &c).unwrap();
    let v = md.unit(1);
    let ft = compose(&r, &t);
    assert_eq!(ft.mat.apply(&v), r.mat.apply(&t.mat.apply(&v)));
}

#[test]
fn first_handle_correction_pairings() {
    for m in [2, 3] {
        let md = model(4, m);
        let (we, _) = w_corrections(&md);
        let f3 = md.index_of("F3").unwrap();
        let zi = md.elem(&HElem::zeta(m).inv());
        for xi in HElem::all(m) {
            let mut v = rvec_zero(m, md.d);
            v[f3] = md.elem(&xi);
            assert_eq!(md.pair(&v, &we), md.elem(&xi).mul(&zi).neg());
        }
        let (ce, cf) = gamma_class_ef(&md).unwrap();
        assert!(clean_transvection(&md, &ce).is_ok(), "m={m}");
        assert!(clean_transvection(&md, &cf).is_ok(), "m={m}");
    }
}

#[test]
fn first_handle_correction_m2_explicit() {
    let md = model(3, 2);
    let (we, _) = w_corrections(&md);
    let e3 = md.index_of("E3").unwrap();
    let z = HElem::zeta(2);
    let s = HElem::sigma(2);
    assert_eq!(we[e3], md.elem(&z));
    let want = md.elem(&z).mul(
        &md.e.scale(2, 1).sub(&md.e).sub(&md.elem(&s.mul(&z.inv()))),
    );
    assert_eq!(we[e3 + 1], want);
}

#[test]
fn g_corrections_are_isotropic() {
    for m in [2, 3] {
        let md = model(5, m);
        for which in [GWhich::H, GWhich::V] {
            let params = isotropic_g_params(&md, which).unwrap();
            assert!(params[0].is_identity());
            let c = gamma_class_g(&md, which, &params).unwrap();
            assert!(md.pi.mul(&md.pair(&c.vec, &c.vec)).is_zero());
            assert!(clean_transvection(&md, &c).is_ok());
            let f3 = md.index_of("F3").unwrap();
            for chi in HElem::all(m) {
                let mut v = rvec_zero(m, md.d);
                v[f3] = md.elem(&chi);
                assert_eq!(md.pair(&v, &c.vec), md.elem(&chi).neg());
            }
        }
    }
}

#[test]
fn g_correction_all_ones_fails_for_m3() {
    let md = model(5, 3);
    let one = HElem::identity(3);
    let c = gamma_class_g(&md, GWhich::H, &[one; 6]).unwrap();
    assert!(!md.pi.mul(&md.pair(&c.vec, &c.vec)).is_zero());
    assert!(clean_transvection(&md, &c).is_err());
}

#[test]
fn g_correction_all_ones_works_for_m2() {
    let md = model(5, 2);
    let one = HElem::identity(2);
    for which in [GWhich::H, GWhich::V] {
        let c = gamma_class_g(&md, which, &[one; 6]).unwrap();
        assert!(clean_transvection(&md, &c).is_ok());
    }
}

#[test]
fn g_class_needs_genus_five() {
    let md = model(4, 2);
    let one = HElem::identity(2);
    assert!(matches!(gamma_class_g(&md, GWhich::H, &[one; 6]), Err(MonodromyError::GenusTooSmall(4, 5))));
}

#[test]
fn unknown_class_names() {
    let md = model(4, 2);
    let one = HElem::identity(2);
    assert!(matches!(gamma_class_v_xi(&md, "E9", &one, 0), Err(MonodromyError::UnknownClass(_))));
    assert!(matches!(gamma_class_v_xi(&md, "F2", &one, 0), Err(MonodromyError::UnknownClass(_))));
    assert!(matches!(gamma_class_anchor(&md, "E3", "F3", &one, 0), Err(MonodromyError::UnknownClass(_))));
}

#[test]
fn commutator_facts() {
    for m in [2, 3] {
        let md = model(4, m);
        let r = separating_operator(&md);
        let id = mm(md.identity(), "1");
        assert_eq!(commutator_to_unipotent(&md, &id, &r).unwrap().mat, md.identity());
        let flag = FlagBasis::e2(&md);
        for xi in [HElem::identity(m), HElem::sigma(m), HElem::tau(m).mul(&HElem::zeta(m))] {
            let c = gamma_class_v_xi(&md, "E3", &xi, 0).unwrap();
            let t = clean_transvection(&md, &c).unwrap();
            let g = commutator_to_unipotent(&md, &t, &r).unwrap();
            let n = sub_i(&md, &g.mat);
            assert!(n.mul(&n).mul(&n).is_zero());
            assert!(md.preserves_form(&g.mat));
            // π([T, R]) = Π(ζ⁻¹ - 1) ξ v
            let pi = project_pi(&md, &g.mat, &flag).unwrap();
            let coef = md.pi.mul(&md.elem(&HElem::zeta(m).inv()).sub(&md.e)).mul(&md.elem(&xi));
            let mut want = rvec_zero(m, md.d - 2);
            want[0] = coef;
            assert_eq!(pi, want);
        }
    }
}

#[test]
fn parabolic_conjugate_by_identity_and_r() {
    let m = 3;
    let md = model(4, m);
    let flag = FlagBasis::e2(&md);
    let r = separating_operator(&md);
    let c = gamma_class_v_xi(&md, "F3", &HElem::tau(m), 0).unwrap();
    let g = commutator_to_unipotent(&md, &clean_transvection(&md, &c).unwrap(), &r).unwrap();
    let id = mm(md.identity(), "1");
    assert_eq!(parabolic_conjugate(&md, &id, &g).unwrap().mat, g.mat);
    let h = parabolic_conjugate(&md, &r, &g).unwrap();
    assert_eq!(project_pi(&md, &h.mat, &flag).unwrap(), conjugate_pi_from_levi(&md, &r.mat, &g.mat, &flag).unwrap());
}

fn synthetic_levi(md: &ModuleModel) -> RMat {
    let m = md.m;
    let s = HElem::sigma(m);
    let c = md.elem(&s).scale(2, 1);
    let cbar_inv = md.elem(&s).scale(1, 2);
    let g = md.elem(&HElem::tau(m).mul(&s));
    let mut diag: Vec<RElem> = vec![md.e.clone(); md.d];
    diag[0] = c;
    diag[1] = cbar_inv;
    diag[2] = g.clone();
    diag[3] = g;
    RMat::diagonal(&diag)
}

#[test]
fn parabolic_conjugate_levi_formula() {
    for m in [2, 3] {
        let md = model(4, m);
        let flag = FlagBasis::e2(&md);
        let h = mm(synthetic_levi(&md), "h");
        assert!(md.preserves_form(&h.mat));
        let r = separating_operator(&md);
        for v in ["E3", "F3"] {
            let c = gamma_class_v_xi(&md, v, &HElem::sigma(m), 0).unwrap();
            let g = commutator_to_unipotent(&md, &clean_transvection(&md, &c).unwrap(), &r).unwrap();
            let conj = parabolic_conjugate(&md, &h, &g).unwrap();
            let got = project_pi(&md, &conj.mat, &flag).unwrap();
            assert_eq!(got, conjugate_pi_from_levi(&md, &h.mat, &g.mat, &flag).unwrap());
            // c π B and c⁻¹ π B differ when c is not unitary
            let pg = project_pi(&md, &g.mat, &flag).unwrap();
            let (lc, b) = ak_monodromy::arithmeticity::levi_blocks(&md, &h.mat, &flag).unwrap();
            let wrong: RVec = b.apply(&pg).iter().map(|x| lc.mul(x)).collect();
            if m > 2 {
                // σ is an involution for m = 2
                assert_ne!(got, wrong);
            }
            let cinv = ak_monodromy::amodule::inverse_in(&lc, &md.e).unwrap();
            let wrong: RVec = b.apply(&pg).iter().map(|x| cinv.mul(x)).collect();
            assert_ne!(got, wrong);
        }
    }
}

#[test]
fn non_unitary_inverse_is_rejected() {
    let md = model(3, 2);
    let mut diag: Vec<RElem> = vec![md.e.clone(); md.d];
    diag[0] = md.e.scale(2, 1);
    let bad = mm(RMat::diagonal(&diag), "bad");
    assert!(!md.preserves_form(&bad.mat));
    assert!(matches!(parabolic_conjugate(&md, &bad, &bad), Err(MonodromyError::NotUnitary)));
}

#[test]
fn suite_elements_are_realized_on_homology() {
    let md = model(5, 2);
    let suite = generate_suite(&md, &FlagBasis::e2(&md)).unwrap();
    let picks = [0, suite.elements.len() / 2, suite.elements.len() - 1];
    for i in picks {
        let check = md.check_realized(&suite.elements[i].matrix.mat);
        assert!(check.passed(), "element {i}: {check:?}");
    }
}

#[test]
fn transvection_is_realized_on_homology() {
    let md = model(3, 2);
    let c = gamma_class_v_xi(&md, "E3", &HElem::sigma(2), 0).unwrap();
    let t = clean_transvection(&md, &c).unwrap();
    assert!(md.check_realized(&t.mat).passed());
    let bad = t.mat.add(&RMat::scalar(&md.elem(&HElem::sigma(2)), md.d));
    let check = md.check_realized(&bad);
    assert!(!check.preserves_intersection || !check.commutes_with_deck);
}

#[test]
fn conjugating_by_r_scales_pi_by_zeta_inverse() {
    for m in [2, 3] {
        let md = model(4, m);
        let flag = FlagBasis::e2(&md);
        let r = separating_operator(&md);
        let xi = HElem::tau(m);
        let c = gamma_class_v_xi(&md, "F3", &xi, 0).unwrap();
        let g = commutator_to_unipotent(&md, &clean_transvection(&md, &c).unwrap(), &r).unwrap();
        let pg = project_pi(&md, &g.mat, &flag).unwrap();
        let h = parabolic_conjugate(&md, &r, &g).unwrap();
        let zi = md.elem(&HElem::zeta(m).inv());
        let want: RVec = pg.iter().map(|x| x.mul(&zi)).collect();
        assert_eq!(project_pi(&md, &h.mat, &flag).unwrap(), want);
    }
}

#[test]
fn lift_exponents_form_one_r_orbit() {
    for m in [2, 3] {
        let md = model(4, m);
        let r = separating_operator(&md);
        let xi = HElem::sigma(m).mul(&HElem::tau(m));
        for v in ["E3", "F4"] {
            let base = clean_transvection(&md, &gamma_class_v_xi(&md, v, &xi, 0).unwrap()).unwrap();
            for k in 0..m as i64 {
                let tk = clean_transvection(&md, &gamma_class_v_xi(&md, v, &xi, k).unwrap()).unwrap();
                // R^j T_0 R^{-j} = T_{-j}
                let j = ((m as i64 - k) % m as i64) as u32;
                let rj = mm(matrix_power(&md, &r, j), "R^j");
                assert_eq!(parabolic_conjugate(&md, &rj, &base).unwrap().mat, tk.mat, "m={m} v={v} k={k}");
            }
        }
    }
}
