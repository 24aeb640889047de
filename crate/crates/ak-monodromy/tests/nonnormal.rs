use ak_monodromy::amodule::ModuleModel;
use ak_monodromy::aring::RElem;
use ak_monodromy::heisenberg::{factor_idempotent, wedderburn, HElem};
use ak_monodromy::linalg::Mat;
use ak_monodromy::monodromy::{clean_transvection, gamma_class_v_xi, separating_operator};
use ak_monodromy::nonnormal::*;

fn model(g0: u32, m: u32) -> ModuleModel {
    ModuleModel::new(g0, m).unwrap()
}

#[test]
fn genus_of_quotient() {
    assert_eq!(genus_z(5, 4), 71);
    assert_eq!(genus_z(5, 2), 18);
    // closed character at the identity is the first Betti number of W
    for (g0, m) in [(3, 2), (5, 3)] {
        let n = (m * m * m) as i64;
        let gw = 1 + n * (g0 as i64 - 1) + (m * m * (m - 1)) as i64 / 2;
        assert_eq!(closed_character(g0, m, &HElem::identity(m)), 2 * gw);
    }
}

#[test]
fn dims_g5_m4_agree_three_ways() {
    let md = model(5, 4);
    let dims = tau_invariant_dims(5, 4, Some(&md)).unwrap();
    let got: Vec<(u32, usize, i64, Option<usize>)> =
        dims.iter().map(|x| (x.k, x.from_quotient, x.from_character, x.from_model)).collect();
    assert_eq!(got, vec![(1, 34, 34, None), (2, 36, 36, Some(36)), (4, 72, 72, Some(72))]);
    let total: usize = dims.iter().map(|x| x.from_quotient).sum();
    assert_eq!(total as i64, 2 * genus_z(5, 4));
}

#[test]
fn dims_prime_moduli() {
    let d2 = tau_invariant_dims(5, 2, None).unwrap();
    assert_eq!(d2.iter().map(|x| x.from_quotient).collect::<Vec<_>>(), vec![18, 18]);
    let md = model(5, 3);
    let d3 = tau_invariant_dims(5, 3, Some(&md)).unwrap();
    assert_eq!(d3.iter().map(|x| x.from_quotient).collect::<Vec<_>>(), vec![26, 54]);
    assert_eq!(d3[1].from_model, Some(54));
    assert!(d3.iter().all(|x| x.from_character == x.from_quotient as i64));
}

#[test]
fn bad_divisor_rejected() {
    let md = model(3, 4);
    assert!(matches!(TauInvariantModule::new(&md, 3), Err(DescentError::BadDivisor { k: 3, m: 4 })));
    assert!(matches!(kernel_dimensions(4, 3, 5), Err(DescentError::BadDivisor { .. })));
}

#[test]
fn alpha_is_multiplicative_and_form_preserving() {
    for (m, k) in [(2, 2), (3, 3), (4, 2), (4, 4)] {
        let md = model(3, m);
        let n = TauInvariantModule::new(&md, k).unwrap();
        assert_eq!(n.dim(), tau_basis(&md, k).len() * md.d);
        let t = clean_transvection(&md, &gamma_class_v_xi(&md, "E3", &HElem::sigma(m), 0).unwrap()).unwrap().mat;
        let s = clean_transvection(&md, &gamma_class_v_xi(&md, "F3", &HElem::tau(m), 0).unwrap()).unwrap().mat;
        let r = separating_operator(&md).mat;
        let at = alpha_restrict(&md, &n, &t).unwrap();
        let as_ = alpha_restrict(&md, &n, &s).unwrap();
        // matrices compose as rows: α(T ∘ S) = α(S) α(T)
        assert_eq!(alpha_restrict(&md, &n, &s.mul(&t)).unwrap(), as_.mul(&at));
        assert_eq!(alpha_restrict(&md, &n, &md.identity()).unwrap(), Mat::identity(n.dim()));
        for g in [&t, &s, &r] {
            assert!(alpha_preserves_form(&md, &n, g), "m={m} k={k}");
        }
        assert_ne!(at, Mat::identity(n.dim()));
    }
}

#[test]
fn kernel_accounting_m4() {
    let rep = kernel_dimensions(4, 2, 9).unwrap();
    assert_eq!(rep.kernel_classes.len(), 2);
    assert_eq!(rep.surviving_classes.len(), 2);
    assert!(rep.idempotent_check);
    assert_eq!(rep.predicted_tau_dim, Some(36));
    let top = kernel_dimensions(4, 4, 9).unwrap();
    assert!(top.kernel_classes.is_empty());
    assert_eq!(top.kernel_dim, 0);
    assert_eq!(top.predicted_tau_dim, Some(72));
    assert_eq!(kernel_dimensions(4, 1, 9).unwrap().predicted_tau_dim, None);
    for m in [2, 3] {
        let r = kernel_dimensions(m, m, 9).unwrap();
        assert!(r.kernel_classes.is_empty());
        assert!(r.idempotent_check);
    }
}

#[test]
fn kernel_blocks_act_trivially_on_invariants() {
    let m = 4;
    let md = model(3, m);
    let n = TauInvariantModule::new(&md, 2).unwrap();
    let t = clean_transvection(&md, &gamma_class_v_xi(&md, "E3", &HElem::sigma(m), 0).unwrap()).unwrap().mat;
    let id = Mat::identity(n.dim());
    let w = wedderburn(m).unwrap();
    let mut seen = (0, 0);
    for f in w.factors.iter().filter(|f| f.k == 2) {
        let ef = RElem::from_gre(&factor_idempotent(f));
        let tf = restrict_to_block(&md, &t, &ef);
        // the block restriction is a nontrivial map on M
        assert!(!tf.sub(&md.identity()).is_zero());
        assert!(md.preserves_form(&tf));
        let a = alpha_restrict(&md, &n, &tf).unwrap();
        if f.tau_invariants {
            assert_ne!(a, id, "{}", f.label());
            seen.1 += 1;
        } else {
            assert_eq!(a, id, "{}", f.label());
            seen.0 += 1;
        }
    }
    assert_eq!(seen, (2, 2));
}

#[test]
fn top_component_identities() {
    for m in [2, 3, 4] {
        let md = model(3, m);
        let rep = verify_top_component(&md);
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.c_handle_blocks_identity);
        assert_eq!(rep.unit_formula_opposite_exponent, m == 2);
        // the inner-product blocks on handles carry the factor 1/m
        assert!(!rep.b_handle_blocks_identity);
    }
}

#[test]
fn matrix_units_multiply() {
    for m in [2, 3] {
        let mi = m as i64;
        for i in 1..=mi {
            for j in 1..=mi {
                for k in 1..=mi {
                    for l in 1..=mi {
                        let p = matrix_unit(m, i, j).mul(&matrix_unit(m, k, l));
                        let want = if j == k { matrix_unit(m, i, l) } else { RElem::zero(m) };
                        assert_eq!(p, want);
                    }
                }
            }
        }
    }
}
