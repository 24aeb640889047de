use crate::report::Section;
use ak_monodromy::amodule::{ModuleModel, Topology};
use ak_monodromy::arithmeticity::{formula_report, generate_suite, hypothesis_check, lattice_report, FlagBasis};
use ak_monodromy::covers::{Cover, CoverSpec};
use ak_monodromy::cyclotomic::{divisors, euler_phi};
use ak_monodromy::heisenberg::{all_irreps, wedderburn, GroupRingElem, HElem};
use ak_monodromy::homology::Homology;
use ak_monodromy::linalg::{Mat, Q};
use ak_monodromy::nonnormal::{genus_z, kernel_dimensions, tau_invariant_dims, verify_top_component};
use ak_monodromy::pairing::{cross_pairing, isotypic_blocks};
use anyhow::Result;
use serde_json::json;

fn expected_wedderburn(m: u32) -> Option<&'static str> {
    match m {
        4 => Some("M₂(ℚ)^{×4} × M₄(ℚ(i))"),
        6 => Some("M₂(ℚ) × M₂(ℚ(ζ₃))^{×4} × M₃(ℚ(ζ₃))^{×4} × M₆(ℚ(ζ₆))"),
        _ => None,
    }
}

pub fn reps(m: u32) -> Result<Section> {
    let mut sec = Section::new("reps");
    let w = wedderburn(m)?;
    let irreps = all_irreps(m);
    for k in divisors(m) {
        let n = irreps.iter().filter(|r| r.dim() == k).count() as u32;
        let want = (m / k) * (m / k) * euler_phi(k);
        sec.check(format!("census_dim_{k}"), n == want, format!("{n} irreducibles, expected {want}"));
    }
    let sq: u32 = irreps.iter().map(|r| r.dim() * r.dim()).sum();
    sec.check("sum_of_squares", sq == m * m * m, format!("{sq}"));
    sec.check("rational_dimension", w.total_dim() == (m * m * m) as usize, format!("{}", w.total_dim()));
    let rendered = w.render_nonabelian();
    if let Some(want) = expected_wedderburn(m) {
        sec.check("wedderburn_list", rendered == want, rendered.clone());
    }
    let factors: Vec<_> = w
        .factors
        .iter()
        .map(|f| json!({"label": f.label(), "k": f.k, "abelian": f.abelian, "orbit": f.orbit.len(), "tau_invariants": f.tau_invariants}))
        .collect();
    sec.data = json!({"wedderburn": rendered, "factors": factors});
    Ok(sec)
}

fn traces(c: &Cover, h: &Homology) -> Vec<Q> {
    HElem::all(c.m).iter().map(|g| h.trace(c, g)).collect()
}

pub fn homology(g0: u32, m: u32) -> Result<Section> {
    let mut sec = Section::new("homology");
    let n = (m * m * m) as i64;
    let (g, mm) = (g0 as i64, (m * m) as i64);
    let closed = Cover::new(CoverSpec::w(g0, m, true))?;
    let hc = Homology::new(&closed);
    let want = 2 + (2 * g - 1) * n - mm;
    sec.check("closed_dimension", hc.dim as i64 == want, format!("{} (Riemann–Hurwitz {want})", hc.dim));
    let ok = HElem::all(m)
        .iter()
        .zip(traces(&closed, &hc))
        .all(|(el, t)| t == Q::from_integer(ak_monodromy::nonnormal::closed_character(g0, m, el).into()));
    sec.check("closed_character", ok, "");
    let open = Cover::new(CoverSpec::w(g0, m, false))?;
    let ho = Homology::new(&open);
    let want_open = (2 * g - 1) * n + 1;
    sec.check("punctured_dimension", ho.dim as i64 == want_open, format!("{}", ho.dim));
    let ok = HElem::all(m).iter().zip(traces(&open, &ho)).all(|(el, t)| {
        let want = if el.is_identity() { want_open } else { 1 };
        t == Q::from_integer(want.into())
    });
    sec.check("punctured_character", ok, "free of rank 2g0-1 plus trivial");
    sec.data = json!({"closed_dim": hc.dim, "punctured_dim": ho.dim});
    Ok(sec)
}

fn neg_mat(a: &Mat) -> Mat {
    Mat::zeros(a.row_vecs().len(), a.row_vecs().first().map_or(0, |r| r.len())).sub(a)
}

pub fn pairing(g0: u32, m: u32) -> Result<Section> {
    let mut sec = Section::new("pairing");
    let topo = Topology::new(g0, m)?;
    let (c, h, f) = (&topo.cover, &topo.hom, &topo.form);
    let rows: Vec<Vec<Q>> = h.basis.iter().map(|x| h.basis.iter().map(|y| f.pair(x, y)).collect()).collect();
    let gram = Mat::from_rows(&rows);
    sec.check("skew_symmetric", gram.transpose() == neg_mat(&gram), "");
    sec.check("nondegenerate", gram.rank() == h.dim, format!("rank {} of {}", gram.rank(), h.dim));
    let inv = [HElem::sigma(m), HElem::tau(m)].iter().all(|el| {
        let d = h.deck_matrix(c, el);
        d.mul(&gram).mul(&d.transpose()) == gram
    });
    sec.check("deck_invariant", inv, "");

    let mut names: Vec<String> = Vec::new();
    for i in 1..=g0 {
        names.push(format!("E{i}"));
        names.push(format!("F{i}"));
    }
    names.push("Gh".into());
    names.push("Gv".into());
    let chains: Vec<_> = names.iter().map(|n| topo.class(n).expect("named class")).collect();
    let r = |i: usize, j: usize| topo.reidemeister(&chains[i], &chains[j]);
    let nn = names.len();
    let table: Vec<Vec<GroupRingElem>> = (0..nn).map(|i| (0..nn).map(|j| r(i, j)).collect()).collect();
    let skew_herm = (0..nn).all(|i| (0..nn).all(|j| table[j][i] == table[i][j].bar().neg()));
    sec.check("skew_hermitian", skew_herm, "");
    let mut equivariant = true;
    for el in [HElem::sigma(m), HElem::tau(m)] {
        let gb = GroupRingElem::basis(el);
        let gi = GroupRingElem::basis(el.inv());
        for i in 0..nn {
            let gx = c.act(&el, &chains[i]);
            for j in 0..nn {
                let gy = c.act(&el, &chains[j]);
                equivariant &= topo.reidemeister(&gx, &chains[j]) == gb.mul(&table[i][j]);
                equivariant &= topo.reidemeister(&chains[i], &gy) == table[i][j].mul(&gi);
            }
        }
    }
    sec.check("sesquilinear", equivariant, "<gx,y> = g<x,y>, <x,gy> = <x,y>g⁻¹");
    let handles = 2 * g0 as usize;
    let iso: Vec<&str> = (0..handles).filter(|&i| !table[i][i].is_zero()).map(|i| names[i].as_str()).collect();
    sec.check("handles_isotropic", iso.is_empty(), iso.join(","));
    let one = GroupRingElem::one(m);
    for i in 0..g0 as usize {
        let v = &table[2 * i][2 * i + 1];
        sec.check(format!("dual_pair_{}", i + 1), *v == one, format!("<E{0},F{0}> = {v}", i + 1));
    }
    let mut cross = Vec::new();
    for i in 0..handles {
        for j in 0..handles {
            if i / 2 != j / 2 && !table[i][j].is_zero() {
                cross.push(format!("{},{}", names[i], names[j]));
            }
        }
    }
    sec.check("distinct_handles_orthogonal", cross.is_empty(), cross.join(" "));
    let mut bad = Vec::new();
    for i in 0..handles {
        for j in handles..nn {
            if !table[i][j].is_zero() {
                bad.push(format!("<{},{}> = {}", names[i], names[j], table[i][j]));
            }
        }
    }
    sec.check("handle_span_orthogonal_to_g_span", bad.is_empty(), bad.join("; "));

    let blocks = isotypic_blocks(c, h, f, false)?;
    let nondeg = blocks.iter().all(|b| b.nondegenerate());
    sec.check("isotypic_blocks_nondegenerate", nondeg, format!("{} blocks", blocks.len()));
    let mut orth = true;
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            orth &= cross_pairing(h, f, a, b).is_zero();
        }
    }
    sec.check("isotypic_blocks_orthogonal", orth, "");
    let projected = isotypic_blocks(c, h, f, true)?;
    sec.check("projected_abelian_blocks_zero", projected.iter().filter(|b| b.abelian).all(|b| b.dim() == 0), "");
    let dims: Vec<_> = blocks.iter().map(|b| json!({"label": b.label, "dim": b.dim()})).collect();
    let render: Vec<Vec<String>> = table.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    sec.data = json!({"classes": names, "reidemeister": render, "blocks": dims});
    Ok(sec)
}

pub fn monodromy(model: &ModuleModel) -> Result<Section> {
    let mut sec = Section::new("monodromy");
    let every = if model.m == 2 { 1 } else { 5 };
    let mut reports = Vec::new();
    for flag in [FlagBasis::e2(model), FlagBasis::f2(model)] {
        let rep = formula_report(model, &flag, every)?;
        let n = rep.instances();
        sec.check(
            format!("{}_transvections_two_step", flag.name),
            rep.transvections_two_step == rep.transvections,
            format!("{}/{}", rep.transvections_two_step, rep.transvections),
        );
        sec.check(
            format!("{}_commutator_formula", flag.name),
            rep.commutator_formula == rep.commutators,
            format!("{}/{}", rep.commutator_formula, rep.commutators),
        );
        sec.check(
            format!("{}_conjugate_formula", flag.name),
            rep.conjugate_formula == rep.conjugates,
            format!("{}/{}", rep.conjugate_formula, rep.conjugates),
        );
        sec.check(
            format!("{}_preserve_form", flag.name),
            rep.preserve_form == n + rep.transvections,
            format!("{}/{}", rep.preserve_form, n + rep.transvections),
        );
        sec.check(format!("{}_cube_zero", flag.name), rep.cube_zero == n, format!("{}/{n}", rep.cube_zero));
        sec.check(
            format!("{}_realized_on_homology", flag.name),
            rep.realized_ok == rep.realized_checked,
            format!("{}/{} expanded on H_1(W)", rep.realized_ok, rep.realized_checked),
        );
        reports.push(rep);
    }
    sec.data = json!({"x_generator": model.x_recipe, "d": model.d, "formulas": reports});
    Ok(sec)
}

pub fn lattice(model: &ModuleModel) -> Result<Section> {
    let mut sec = Section::new("lattice");
    let mut reports = Vec::new();
    let mut hyps = Vec::new();
    for flag in [FlagBasis::e2(model), FlagBasis::f2(model)] {
        let hyp = hypothesis_check(model, &flag);
        sec.check(format!("{}_hypotheses", flag.name), hyp.passed(), format!("{hyp:?}"));
        let suite = generate_suite(model, &flag)?;
        let rep = lattice_report(model, &suite);
        sec.check(
            format!("{}_rank", flag.name),
            rep.finite_index,
            format!("{}/{} det {}", rep.achieved_rank, rep.target_rank, rep.determinant.clone().unwrap_or_else(|| "-".into())),
        );
        for c in &rep.coverage {
            sec.check(format!("{}_{}", flag.name, c.summand), c.achieved == c.target, format!("{}/{}", c.achieved, c.target));
        }
        sec.check(
            format!("{}_central", flag.name),
            rep.central_achieved == rep.central_target,
            format!("{}/{}", rep.central_achieved, rep.central_target),
        );
        reports.push(rep);
        hyps.push(hyp);
    }
    sec.data = json!({"lattice": reports, "hypotheses": hyps});
    Ok(sec)
}

pub fn nonnormal(g0: u32, m: u32, model: Option<&ModuleModel>) -> Result<Section> {
    let mut sec = Section::new("nonnormal");
    let dims = tau_invariant_dims(g0, m, model)?;
    for d in &dims {
        let model_ok = d.from_model.map_or(true, |x| x == d.from_quotient);
        sec.check(
            format!("N{}_dimension", d.k),
            d.from_character == d.from_quotient as i64 && model_ok,
            format!(
                "quotient {} character {} model {}",
                d.from_quotient,
                d.from_character,
                d.from_model.map_or("-".into(), |x| x.to_string())
            ),
        );
    }
    let total: usize = dims.iter().map(|d| d.from_quotient).sum();
    let gz = genus_z(g0, m);
    sec.check("transfer_sum", total as i64 == 2 * gz, format!("{total} = 2·{gz}"));
    let d = 2 * g0 as usize - 1;
    let mut kernels = Vec::new();
    for k in divisors(m) {
        let rep = kernel_dimensions(m, k, d)?;
        sec.check(format!("kernel_{k}_idempotents"), rep.idempotent_check, "");
        if k == m {
            sec.check("kernel_top_empty", rep.kernel_classes.is_empty(), "");
        }
        if let Some(p) = rep.predicted_tau_dim {
            let got = dims.iter().find(|x| x.k == k).map(|x| x.from_quotient);
            sec.check(format!("kernel_{k}_accounting"), Some(p) == got, format!("{p} predicted from surviving classes"));
        }
        kernels.push(rep);
    }
    let top = model.map(verify_top_component);
    if let Some(t) = &top {
        sec.check("top_component", t.passed(), format!("{t:?}"));
    }
    sec.data = json!({"dims": dims, "genus_z": gz, "kernels": kernels, "top_component": top});
    Ok(sec)
}
