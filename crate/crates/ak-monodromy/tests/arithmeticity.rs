use ak_monodromy::amodule::ModuleModel;
use ak_monodromy::arithmeticity::*;
use ak_monodromy::aring::{rvec_add, rvec_zero, RElem, RVec};
use ak_monodromy::heisenberg::HElem;
use ak_monodromy::monodromy::{clean_transvection, commutator_to_unipotent, gamma_class_anchor, separating_operator};
use proptest::prelude::*;

const M: u32 = 2;

thread_local! {
    static SMALL: ModuleModel = ModuleModel::new(3, M).unwrap();
}

fn elem_strategy() -> impl Strategy<Value = Vec<i128>> {
    prop::collection::vec(-3i128..=3, (M * M * M) as usize)
}

fn to_elem(md: &ModuleModel, num: Vec<i128>) -> RElem {
    md.e.mul(&RElem::from_ints(md.m, num, 1))
}

fn coords_strategy(d2: usize) -> impl Strategy<Value = (Vec<Vec<i128>>, Vec<i128>)> {
    (prop::collection::vec(elem_strategy(), d2), elem_strategy())
}

fn build(md: &ModuleModel, raw: (Vec<Vec<i128>>, Vec<i128>)) -> UnipotentCoords {
    let u: RVec = raw.0.into_iter().map(|n| to_elem(md, n)).collect();
    let a = to_elem(md, raw.1);
    UnipotentCoords { u, z: a.add(&a.bar()) }
}

fn cases() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn pi_is_additive(a in coords_strategy(3), b in coords_strategy(3)) {
        SMALL.with(|md| {
            for flag in [FlagBasis::e2(md), FlagBasis::f2(md)] {
                let g = build(md, a.clone()).to_matrix(md, &flag);
                let h = build(md, b.clone()).to_matrix(md, &flag);
                let gh = h.mul(&g);
                prop_assert!(in_unipotent(md, &gh, &flag));
                prop_assert_eq!(
                    project_pi(md, &gh, &flag).unwrap(),
                    rvec_add(&project_pi(md, &g, &flag).unwrap(), &project_pi(md, &h, &flag).unwrap())
                );
            }
            Ok(())
        })?;
    }

    #[test]
    fn coordinate_law_matches_matrices(a in coords_strategy(3), b in coords_strategy(3), c in coords_strategy(3)) {
        SMALL.with(|md| {
            let flag = FlagBasis::e2(md);
            let (x, y, w) = (build(md, a), build(md, b), build(md, c));
            let gx = x.to_matrix(md, &flag);
            prop_assert!(md.preserves_form(&gx));
            prop_assert_eq!(UnipotentCoords::from_matrix(md, &gx, &flag).unwrap(), x.clone());
            let xy = x.mul(&y, md, &flag);
            let composite = y.to_matrix(md, &flag).mul(&gx);
            prop_assert_eq!(UnipotentCoords::from_matrix(md, &composite, &flag).unwrap(), xy.clone());
            prop_assert_eq!(xy.mul(&w, md, &flag), x.mul(&y.mul(&w, md, &flag), md, &flag));
            prop_assert_eq!(x.mul(&x.inv(), md, &flag), UnipotentCoords::identity(md));
            // [x, y] = (0, 2δ(u, u'))
            let comm = x.mul(&y, md, &flag).mul(&x.inv(), md, &flag).mul(&y.inv(), md, &flag);
            prop_assert!(comm.u.iter().all(|e| e.is_zero()));
            prop_assert_eq!(comm.z, delta(md, &flag, &x.u, &y.u).scale(2, 1));
            let n = gx.sub(&md.identity());
            prop_assert!(n.mul(&n).mul(&n).is_zero());
            Ok(())
        })?;
    }
}

fn model(g0: u32, m: u32) -> ModuleModel {
    ModuleModel::new(g0, m).unwrap()
}

#[test]
fn flag_orders() {
    let md = model(3, 2);
    let e2 = FlagBasis::e2(&md);
    let f2 = FlagBasis::f2(&md);
    assert_eq!(e2.order, vec![(0, false), (2, false), (3, false), (4, false), (1, false)]);
    assert_eq!(f2.order, vec![(1, false), (2, false), (3, false), (4, false), (0, true)]);
    assert_eq!(e2.anchor_name(), "E2");
    assert_eq!(f2.anchor_name(), "F2");
    let r = md.separating_operator();
    assert_eq!(e2.from_flag(&e2.to_flag(&r)), r);
    let u: RVec = vec![md.e.clone(), RElem::zero(2), md.elem(&HElem::sigma(2))];
    assert_eq!(e2.mprime_part(&e2.embed_mprime(&md, &u)), u);
}

#[test]
fn membership_examples() {
    for m in [2, 3] {
        let md = model(3, m);
        for flag in [FlagBasis::e2(&md), FlagBasis::f2(&md)] {
            let id = md.identity();
            assert!(in_parabolic(&md, &id, &flag));
            assert!(in_unipotent(&md, &id, &flag));
            assert_eq!(UnipotentCoords::from_matrix(&md, &id, &flag).unwrap(), UnipotentCoords::identity(&md));
            assert!(rvec_zero(m, md.d - 2) == project_pi(&md, &id, &flag).unwrap());
            let r = md.separating_operator();
            assert!(in_parabolic(&md, &r, &flag));
            assert!(!in_unipotent(&md, &r, &flag));
            assert!(matches!(project_pi(&md, &r, &flag), Err(ArithmeticityError::NotUnipotent(_))));
        }
        let e2 = FlagBasis::e2(&md);
        let tf2 = md.clean_transvection(&md.unit(1)).unwrap();
        assert!(!in_parabolic(&md, &tf2, &e2));
        assert!(matches!(levi_blocks(&md, &tf2, &e2), Err(ArithmeticityError::NotParabolic(_))));
        let te2 = md.clean_transvection(&md.unit(0)).unwrap();
        assert!(in_parabolic(&md, &te2, &e2));
    }
}

#[test]
fn unipotent_shape_needs_both_constraints() {
    let md = model(3, 2);
    let flag = FlagBasis::e2(&md);
    let u: RVec = vec![RElem::zero(2), md.e.clone(), RElem::zero(2)];
    let good = UnipotentCoords { u, z: RElem::zero(2) }.to_matrix(&md, &flag);
    assert!(in_unipotent(&md, &good, &flag));
    let mut f = flag.to_flag(&good);
    assert!(!f.get(1, 0).is_zero());
    // break t_j = -<y_j, v>
    f.set(1, 0, RElem::zero(2));
    assert!(!in_unipotent(&md, &flag.from_flag(&f), &flag));
    let mut f = flag.to_flag(&good);
    // break <v,v> = bar(w) - w
    let skew = md.elem(&HElem::sigma(2).mul(&HElem::tau(2)));
    assert_ne!(skew.bar(), skew);
    let w = f.get(md.d - 1, 0).add(&skew);
    f.set(md.d - 1, 0, w);
    assert!(!in_unipotent(&md, &flag.from_flag(&f), &flag));
}

#[test]
fn commutator_images_both_flags() {
    for m in [2, 3] {
        let md = model(3, m);
        let r = separating_operator(&md);
        for flag in [FlagBasis::e2(&md), FlagBasis::f2(&md)] {
            for xi in [HElem::identity(m), HElem::tau(m)] {
                let c = gamma_class_anchor(&md, flag.anchor_name(), "F3", &xi, 0).unwrap();
                let g = commutator_to_unipotent(&md, &clean_transvection(&md, &c).unwrap(), &r).unwrap();
                assert!(in_unipotent(&md, &g.mat, &flag));
                let pi = project_pi(&md, &g.mat, &flag).unwrap();
                let coef = md.pi.mul(&md.elem(&HElem::zeta(m).inv()).sub(&md.e)).mul(&md.elem(&xi));
                let mut want = rvec_zero(m, md.d - 2);
                want[1] = coef;
                assert_eq!(pi, want);
            }
        }
    }
}

#[test]
fn hypothesis_holds_for_both_flags() {
    for (g0, m) in [(3, 2), (3, 3), (4, 4), (5, 2)] {
        let md = model(g0, m);
        for flag in [FlagBasis::e2(&md), FlagBasis::f2(&md)] {
            let rep = hypothesis_check(&md, &flag);
            assert!(rep.passed(), "{g0} {m} {rep:?}");
        }
        assert!(md.pair(&md.unit(0), &md.unit(2)).is_zero());
    }
}

#[test]
fn lattice_coordinates_of_pi_multiples() {
    let md = model(3, 3);
    let (sg, tu, ze) = (HElem::sigma(3), HElem::tau(3), HElem::zeta(3));
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let g = sg.pow(a).mul(&tu.pow(b)).mul(&ze.pow(c));
                let coords = lattice_coords(&md, &md.pi.mul(&RElem::basis(g)));
                assert_eq!(coords.len(), 18);
                assert!(coords.iter().all(|q| q.is_integer()));
                let nonzero = coords.iter().filter(|q| !num_traits::Zero::is_zero(*q)).count();
                assert_eq!(nonzero, if c == 2 { 2 } else { 1 });
            }
        }
    }
}

#[test]
fn suite_counts_and_membership() {
    let md = model(5, 2);
    for flag in [FlagBasis::e2(&md), FlagBasis::f2(&md)] {
        let suite = generate_suite(&md, &flag).unwrap();
        let handles = suite.elements.iter().filter(|s| s.family == Family::Handles).count();
        assert_eq!(handles, 8 * 6);
        assert_eq!(suite.elements.len(), 80);
        for s in &suite.elements {
            assert!(in_unipotent(&md, &s.matrix.mat, &flag));
            let n = s.matrix.mat.sub(&md.identity());
            assert!(n.mul(&n).mul(&n).is_zero());
        }
    }
    assert!(matches!(generate_suite(&model(4, 2), &FlagBasis::e2(&model(4, 2))), Err(ArithmeticityError::GenusTooSmall(4))));
}

#[test]
fn lattice_report_m2_full_rank() {
    let md = model(5, 2);
    for flag in [FlagBasis::e2(&md), FlagBasis::f2(&md)] {
        let suite = generate_suite(&md, &flag).unwrap();
        let rep = lattice_report(&md, &suite);
        assert_eq!(rep.target_rank, 28);
        assert_eq!(rep.achieved_rank, 28);
        assert!(rep.finite_index);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.central_target, 3);
        assert_eq!(rep.central_achieved, 3);
    }
}

#[test]
fn lattice_report_m3_full_rank() {
    let md = model(5, 3);
    let flag = FlagBasis::e2(&md);
    let suite = generate_suite(&md, &flag).unwrap();
    assert_eq!(suite.elements.len(), 270);
    let rep = lattice_report(&md, &suite);
    assert_eq!(rep.target_rank, 126);
    assert_eq!(rep.achieved_rank, 126);
    assert!(rep.passed(), "{rep:?}");
    let cov: Vec<(usize, usize)> = rep.coverage.iter().map(|c| (c.target, c.achieved)).collect();
    assert_eq!(cov, vec![(108, 108), (12, 12), (18, 18)]);
}

#[test]
fn empty_suite_has_rank_zero() {
    let md = model(5, 2);
    let flag = FlagBasis::e2(&md);
    let suite = Suite { flag, elements: vec![], conjugators: vec![] };
    let rep = lattice_report(&md, &suite);
    assert_eq!(rep.achieved_rank, 0);
    assert!(!rep.finite_index);
    assert!(!rep.passed());
}

#[test]
fn handles_alone_miss_the_x_summand() {
    let md = model(5, 2);
    let flag = FlagBasis::e2(&md);
    let mut suite = generate_suite(&md, &flag).unwrap();
    suite.elements.retain(|s| s.family == Family::Handles);
    let rep = lattice_report(&md, &suite);
    assert_eq!(rep.achieved_rank, 24);
    assert!(!rep.passed());
}

#[test]
fn delta_is_skew() {
    SMALL.with(|md| {
        let flag = FlagBasis::e2(md);
        let u: RVec = vec![md.e.clone(), RElem::zero(M), RElem::zero(M)];
        let w: RVec = vec![RElem::zero(M), md.elem(&HElem::sigma(M)), RElem::zero(M)];
        assert_eq!(delta(md, &flag, &u, &w), delta(md, &flag, &w, &u).neg());
        let d = delta(md, &flag, &u, &w);
        assert_eq!(d.bar(), d);
    });
}

#[test]
fn formula_report_g5_m2() {
    let md = model(5, 2);
    for flag in [FlagBasis::e2(&md), FlagBasis::f2(&md)] {
        let rep = formula_report(&md, &flag, 10).unwrap();
        assert_eq!(rep.commutators, 48);
        assert_eq!(rep.conjugates, 32);
        assert!(rep.instances() >= 50);
        assert!(rep.realized_checked > 0);
        assert!(rep.passed(), "{rep:?}");
    }
}

#[test]
fn formula_report_small_genus_has_no_g_family() {
    let md = model(3, 3);
    let rep = formula_report(&md, &FlagBasis::e2(&md), 0).unwrap();
    assert_eq!(rep.commutators, 27 * 2);
    assert_eq!(rep.conjugates, 2 * 27);
    assert_eq!(rep.realized_checked, 0);
    assert!(rep.passed(), "{rep:?}");
}
