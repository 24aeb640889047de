//! Witness words: one `name | target | word` line per clean class.

use crate::report::Section;
use ak_monodromy::amodule::ModuleModel;
use ak_monodromy::aring::{rvec_add, rvec_lmul, rvec_zero, RVec};
use ak_monodromy::covers::parse_word;
use ak_monodromy::heisenberg::HElem;
use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;

pub struct WitnessWord {
    pub name: String,
    pub target: String,
    pub word: String,
}

pub fn parse_file(text: &str) -> Result<Vec<WitnessWord>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() != 3 {
            bail!("line {}: expected `name | target | word`", n + 1);
        }
        out.push(WitnessWord { name: parts[0].into(), target: parts[1].into(), word: parts[2].into() });
    }
    Ok(out)
}

/// Group element written in `s, t, z` with optional integer exponents, e.g. `s^2 t z^-1`.
fn parse_coef(s: &str, m: u32) -> Result<HElem> {
    let mut g = HElem::identity(m);
    let cs: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    while i < cs.len() {
        let base = match cs[i] {
            's' => HElem::sigma(m),
            't' => HElem::tau(m),
            'z' => HElem::zeta(m),
            c => bail!("bad coefficient letter `{c}`"),
        };
        i += 1;
        let mut e = 1i64;
        if i < cs.len() && cs[i] == '^' {
            let start = i + 1;
            let mut j = start;
            if j < cs.len() && cs[j] == '-' {
                j += 1;
            }
            while j < cs.len() && cs[j].is_ascii_digit() {
                j += 1;
            }
            let txt: String = cs[start..j].iter().collect();
            e = txt.parse().map_err(|_| anyhow!("bad exponent `{txt}`"))?;
            i = j;
        }
        g = g.mul(&base.pow(e));
    }
    Ok(g)
}

pub fn parse_target(model: &ModuleModel, s: &str) -> Result<RVec> {
    let mut v = rvec_zero(model.m, model.d);
    for term in s.split('+').map(str::trim) {
        let (neg, term) = match term.strip_prefix('-') {
            Some(t) => (true, t.trim()),
            None => (false, term),
        };
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => (parse_coef(c, model.m)?, n.trim()),
            None => (HElem::identity(model.m), term),
        };
        let class = model.class(name).ok_or_else(|| anyhow!("unknown class `{name}`"))?;
        let mut a = model.elem(&coef);
        if neg {
            a = a.neg();
        }
        v = rvec_add(&v, &rvec_lmul(&a, &class));
    }
    Ok(v)
}

pub fn run(model: &ModuleModel, path: &str) -> Result<Section> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading witness words from {path}"))?;
    let words = parse_file(&text)?;
    let mut sec = Section::new("tier2-words");
    let topo = &model.topo;
    let e = model.e.to_gre();
    let mut rows = Vec::new();
    for w in &words {
        let target = parse_target(model, &w.target)?;
        let letters = match parse_word(&w.word, model.g0) {
            Ok(l) => l,
            Err(err) => {
                sec.check(format!("{}_parse", w.name), false, err.to_string());
                continue;
            }
        };
        let clean = topo.cover.clean_check(&letters);
        sec.check(format!("{}_clean", w.name), clean, format!("holonomy {}", topo.cover.holonomy(&letters)));
        if !clean {
            continue;
        }
        let lift = topo.cover.lift_word(&letters, 0)?;
        let got = topo.hom.coords(&topo.cover.act_ring(&e, &lift));
        let z = HElem::zeta(model.m);
        let k = (0..model.m as i64).find(|&k| model.homology_coords(&rvec_lmul(&model.elem(&z.pow(k)), &target)) == got);
        sec.check(
            format!("{}_class", w.name),
            k.is_some(),
            match k {
                Some(k) => format!("matches ζ^{k}·({})", w.target),
                None => format!("lift differs from {}", w.target),
            },
        );
        rows.push(json!({"name": w.name, "target": w.target, "word": w.word, "zeta_power": k}));
    }
    sec.data = json!({ "file": path, "words": rows });
    Ok(sec)
}
