//! Finite covers of the punctured surface and their cellular chain complexes.
//!
//! The base surface `X°` has two vertices `v`, `w`, loops `a_i`, `b_i` at `v`
//! (the curves `E_i`, `F_i`), a connector `e` from `v` to `w`, the puncture
//! loop `c` at `w`, and one face bounded by `prod [a_i, b_i] · e · c⁻¹ · e⁻¹`.
//! Filling the puncture glues a disk along `c`.
//!
//! A cover is given by images of `e_i, f_i` in `H` and a subgroup `K`; sheets
//! are the right cosets `K g`, an edge on sheet `s` runs from `s` to `s·h(x)`,
//! and deck transformations act on the left.

use crate::fox::{self, Letter};
use crate::heisenberg::{check_modulus, GroupRingElem, HElem, HeisenbergError};
use crate::linalg::{sadd, sadd_one, Q, SVec};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("genus must be at least 1, got {0}")]
    BadGenus(u32),
    #[error(transparent)]
    Group(#[from] HeisenbergError),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("cover is disconnected: only {reached} of {total} sheets are reachable")]
    Disconnected { reached: usize, total: usize },
    #[error("word does not close up: its holonomy {0} lies outside the covering subgroup")]
    NotClosed(HElem),
    #[error("cannot parse word token `{0}`")]
    BadToken(String),
    #[error("generator {name}{index} out of range for genus {g0}")]
    BadGenerator { name: char, index: u32, g0: u32 },
    #[error("{0} does not normalize the covering subgroup")]
    NotNormalizing(HElem),
    #[error("operation needs the closed surface")]
    Open,
}

/// Edge kinds of the base complex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum EdgeKind {
    A(u32),
    B(u32),
    Connector,
    Puncture,
}

impl EdgeKind {
    pub fn index(&self, g0: u32) -> usize {
        match *self {
            EdgeKind::A(i) => 2 * (i as usize - 1),
            EdgeKind::B(i) => 2 * (i as usize - 1) + 1,
            EdgeKind::Connector => 2 * g0 as usize,
            EdgeKind::Puncture => 2 * g0 as usize + 1,
        }
    }

    pub fn from_index(k: usize, g0: u32) -> EdgeKind {
        let n = 2 * g0 as usize;
        if k < n {
            let i = (k / 2) as u32 + 1;
            if k % 2 == 0 {
                EdgeKind::A(i)
            } else {
                EdgeKind::B(i)
            }
        } else if k == n {
            EdgeKind::Connector
        } else {
            EdgeKind::Puncture
        }
    }
}

/// Words in `e_i, f_i, c` use fox letters: `e_i` is generator `2(i-1)`,
/// `f_i` is `2(i-1)+1`, `c` is `2 g0`.
pub fn parse_word(s: &str, g0: u32) -> Result<Vec<Letter>, CoverError> {
    let mut w = Vec::new();
    for tok in s.split(|ch: char| ch.is_whitespace() || ch == '*' || ch == '·').filter(|t| !t.is_empty()) {
        let bad = || CoverError::BadToken(tok.to_string());
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b, e.trim_start_matches('{').trim_end_matches('}').parse::<i64>().map_err(|_| bad())?),
            None => (tok, 1),
        };
        let mut chars = base.chars();
        let name = chars.next().ok_or_else(bad)?.to_ascii_lowercase();
        let rest: String = chars.collect();
        let g = match name {
            'c' if rest.is_empty() => 2 * g0 as usize,
            'e' | 'f' => {
                let i: u32 = rest.trim_start_matches('_').parse().map_err(|_| bad())?;
                if i == 0 || i > g0 {
                    return Err(CoverError::BadGenerator { name, index: i, g0 });
                }
                2 * (i as usize - 1) + usize::from(name == 'f')
            }
            _ => return Err(bad()),
        };
        let l = if exp >= 0 { fox::gen(g) } else { fox::inv(g) };
        for _ in 0..exp.unsigned_abs() {
            w.push(l);
        }
    }
    Ok(fox::reduce(&w))
}

pub fn render_word(w: &[Letter], g0: u32) -> String {
    w.iter()
        .map(|&l| {
            let g = fox::letter_gen(l);
            let name = if g == 2 * g0 as usize { "c".to_string() } else { format!("{}{}", if g % 2 == 0 { 'e' } else { 'f' }, g / 2 + 1) };
            if l < 0 {
                format!("{name}^-1")
            } else {
                name
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Description of a cover: generator images and the covering subgroup.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    pub name: String,
    pub g0: u32,
    pub m: u32,
    /// images of `e_1, f_1, e_2, f_2, ...`
    pub images: Vec<HElem>,
    pub subgroup_gens: Vec<HElem>,
    pub filled: bool,
}

impl CoverSpec {
    pub fn standard_images(g0: u32, m: u32) -> Vec<HElem> {
        let mut v = vec![HElem::identity(m); 2 * g0 as usize];
        v[0] = HElem::sigma(m);
        if g0 >= 1 {
            v[1] = HElem::tau(m);
        }
        v
    }

    fn standard(name: &str, g0: u32, m: u32, subgroup_gens: Vec<HElem>, filled: bool) -> Self {
        CoverSpec { name: name.to_string(), g0, m, images: Self::standard_images(g0, m), subgroup_gens, filled }
    }

    /// The full Heisenberg cover.
    pub fn w(g0: u32, m: u32, filled: bool) -> Self {
        Self::standard("W", g0, m, vec![], filled)
    }

    /// Quotient by the center.
    pub fn v(g0: u32, m: u32, filled: bool) -> Self {
        Self::standard("V", g0, m, vec![HElem::zeta(m)], filled)
    }

    /// Cyclic cover unwrapping `e_1`.
    pub fn y(g0: u32, m: u32, filled: bool) -> Self {
        Self::standard("Y", g0, m, vec![HElem::tau(m), HElem::zeta(m)], filled)
    }

    /// Quotient by `<tau>`.
    pub fn z(g0: u32, m: u32, filled: bool) -> Self {
        Self::standard("Z", g0, m, vec![HElem::tau(m)], filled)
    }

    /// The base surface itself.
    pub fn base(g0: u32, m: u32, filled: bool) -> Self {
        Self::standard("X", g0, m, vec![HElem::sigma(m), HElem::tau(m)], filled)
    }
}

/// Oriented edge occurrence in a boundary walk.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

#[derive(Clone, Debug)]
pub struct Cover {
    pub spec: CoverSpec,
    pub m: u32,
    pub g0: u32,
    kinds: usize,
    kind_image: Vec<HElem>,
    subgroup: Vec<HElem>,
    pub sheets: Vec<HElem>,
    sheet_of: Vec<usize>,
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    /// lifted base faces first, then puncture disks when filled
    pub faces: Vec<Vec<Step>>,
    pub n_base_faces: usize,
}

pub type Chain = SVec;

fn closure(m: u32, gens: &[HElem]) -> Vec<HElem> {
    let mut seen = BTreeSet::from([HElem::identity(m)]);
    let mut stack = vec![HElem::identity(m)];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

impl Cover {
    pub fn new(spec: CoverSpec) -> Result<Cover, CoverError> {
        let (m, g0) = (spec.m, spec.g0);
        check_modulus(m)?;
        if g0 == 0 {
            return Err(CoverError::BadGenus(g0));
        }
        let n_img = 2 * g0 as usize;
        if spec.images.len() != n_img {
            return Err(CoverError::ImageCount { expected: n_img, got: spec.images.len() });
        }
        for g in spec.images.iter().chain(&spec.subgroup_gens) {
            if g.m != m {
                return Err(HeisenbergError::MismatchedModulus(m, g.m).into());
            }
        }
        let subgroup = closure(m, &spec.subgroup_gens);
        let mut sheet_of = vec![usize::MAX; crate::heisenberg::order(m)];
        let mut sheets = Vec::new();
        for g in HElem::all(m) {
            if sheet_of[g.index()] != usize::MAX {
                continue;
            }
            let s = sheets.len();
            sheets.push(g);
            for k in &subgroup {
                sheet_of[k.mul(&g).index()] = s;
            }
        }
        let mut hc = HElem::identity(m);
        for i in 0..g0 as usize {
            hc = hc.mul(&spec.images[2 * i].commutator(&spec.images[2 * i + 1]));
        }
        let mut kind_image = spec.images.clone();
        kind_image.push(HElem::identity(m));
        kind_image.push(hc);
        let kinds = kind_image.len();
        let mut cover = Cover {
            m,
            g0,
            kinds,
            kind_image,
            subgroup,
            sheets,
            sheet_of,
            tail: Vec::new(),
            head: Vec::new(),
            faces: Vec::new(),
            n_base_faces: 0,
            spec,
        };
        cover.check_connected()?;
        cover.build_cells();
        Ok(cover)
    }

    fn check_connected(&self) -> Result<(), CoverError> {
        let n = self.sheets.len();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(s) = stack.pop() {
            for k in 0..2 * self.g0 as usize {
                for t in [self.sheet_mul(s, &self.kind_image[k]), self.sheet_mul(s, &self.kind_image[k].inv())] {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        let reached = seen.iter().filter(|x| **x).count();
        if reached < n {
            return Err(CoverError::Disconnected { reached, total: n });
        }
        Ok(())
    }

    pub fn n_sheets(&self) -> usize {
        self.sheets.len()
    }

    pub fn n_edges(&self) -> usize {
        self.sheets.len() * self.kinds
    }

    pub fn n_vertices(&self) -> usize {
        self.sheets.len() * 2
    }

    pub fn kinds(&self) -> usize {
        self.kinds
    }

    pub fn subgroup(&self) -> &[HElem] {
        &self.subgroup
    }

    pub fn image(&self, k: EdgeKind) -> HElem {
        self.kind_image[k.index(self.g0)]
    }

    /// Holonomy of the puncture loop.
    pub fn puncture_image(&self) -> HElem {
        self.kind_image[self.kinds - 1]
    }

    pub fn edge(&self, sheet: usize, k: EdgeKind) -> usize {
        sheet * self.kinds + k.index(self.g0)
    }

    pub fn edge_info(&self, e: usize) -> (usize, EdgeKind) {
        (e / self.kinds, EdgeKind::from_index(e % self.kinds, self.g0))
    }

    pub fn sheet_of(&self, g: &HElem) -> usize {
        self.sheet_of[g.index()]
    }

    pub fn sheet_mul(&self, s: usize, g: &HElem) -> usize {
        self.sheet_of[self.sheets[s].mul(g).index()]
    }

    fn build_cells(&mut self) {
        let g0 = self.g0;
        let ns = self.sheets.len();
        for s in 0..ns {
            for k in 0..self.kinds {
                let kind = EdgeKind::from_index(k, g0);
                let (tv, hv) = match kind {
                    EdgeKind::Connector => (0, 1),
                    EdgeKind::Puncture => (1, 1),
                    _ => (0, 0),
                };
                let t = self.sheet_mul(s, &self.kind_image[k]);
                self.tail.push(2 * s + tv);
                self.head.push(2 * t + hv);
            }
        }
        let mut relator: Vec<(EdgeKind, bool)> = Vec::new();
        for i in 1..=g0 {
            relator.extend([(EdgeKind::A(i), true), (EdgeKind::B(i), true), (EdgeKind::A(i), false), (EdgeKind::B(i), false)]);
        }
        relator.extend([(EdgeKind::Connector, true), (EdgeKind::Puncture, false), (EdgeKind::Connector, false)]);
        for s in 0..ns {
            let mut cur = s;
            let mut walk = Vec::new();
            for &(kind, fwd) in &relator {
                let img = self.image(kind);
                if fwd {
                    walk.push(Step { edge: self.edge(cur, kind), forward: true });
                    cur = self.sheet_mul(cur, &img);
                } else {
                    cur = self.sheet_mul(cur, &img.inv());
                    walk.push(Step { edge: self.edge(cur, kind), forward: false });
                }
            }
            debug_assert_eq!(cur, s);
            self.faces.push(walk);
        }
        self.n_base_faces = ns;
        if self.spec.filled {
            let hc = self.puncture_image();
            let mut done = vec![false; ns];
            for s in 0..ns {
                if done[s] {
                    continue;
                }
                let mut walk = Vec::new();
                let mut cur = s;
                loop {
                    done[cur] = true;
                    walk.push(Step { edge: self.edge(cur, EdgeKind::Puncture), forward: true });
                    cur = self.sheet_mul(cur, &hc);
                    if cur == s {
                        break;
                    }
                }
                self.faces.push(walk);
            }
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices() as i64 - self.n_edges() as i64 + self.faces.len() as i64
    }

    pub fn face_chain(&self, f: usize) -> Chain {
        let mut c = Chain::new();
        for st in &self.faces[f] {
            sadd_one(&mut c, st.edge, &if st.forward { Q::one() } else { -Q::one() });
        }
        c
    }

    pub fn boundary(&self, chain: &Chain) -> SVec {
        let mut b = SVec::new();
        for (e, x) in chain {
            sadd_one(&mut b, self.head[*e], x);
            sadd_one(&mut b, self.tail[*e], &-x);
        }
        b
    }

    pub fn is_cycle(&self, chain: &Chain) -> bool {
        self.boundary(chain).is_empty()
    }

    /// Whether `n` normalizes the covering subgroup, so that it acts by deck transformations.
    pub fn normalizes(&self, n: &HElem) -> bool {
        let ninv = n.inv();
        self.subgroup.iter().all(|k| self.subgroup.binary_search(&n.mul(k).mul(&ninv)).is_ok())
    }

    /// Deck group representatives: normalizer elements modulo the subgroup.
    pub fn deck_group(&self) -> Vec<HElem> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for g in HElem::all(self.m) {
            if self.normalizes(&g) && seen.insert(self.sheet_of(&g)) {
                out.push(g);
            }
        }
        out
    }

    pub fn deck_edge(&self, n: &HElem, e: usize) -> usize {
        let (s, _) = (e / self.kinds, ());
        let t = self.sheet_of[n.mul(&self.sheets[s]).index()];
        t * self.kinds + e % self.kinds
    }

    pub fn try_act(&self, n: &HElem, chain: &Chain) -> Result<Chain, CoverError> {
        if !self.normalizes(n) {
            return Err(CoverError::NotNormalizing(*n));
        }
        Ok(self.act(n, chain))
    }

    /// Left deck action, assuming `n` normalizes the subgroup.
    pub fn act(&self, n: &HElem, chain: &Chain) -> Chain {
        chain.iter().map(|(e, x)| (self.deck_edge(n, *e), x.clone())).collect()
    }

    /// Action of a group ring element supported on deck elements.
    pub fn act_ring(&self, a: &GroupRingElem, chain: &Chain) -> Chain {
        let mut out = Chain::new();
        for (g, x) in a.terms() {
            sadd(&mut out, &self.act(&g, chain), x);
        }
        out
    }

    /// Holonomy of a word in `e_i, f_i, c`.
    pub fn holonomy(&self, w: &[Letter]) -> HElem {
        let mut h = HElem::identity(self.m);
        for &l in w {
            let g = self.letter_image(fox::letter_gen(l));
            h = h.mul(&if l > 0 { g } else { g.inv() });
        }
        h
    }

    fn letter_image(&self, g: usize) -> HElem {
        if g == 2 * self.g0 as usize {
            self.puncture_image()
        } else {
            self.kind_image[g]
        }
    }

    /// Chain of the lift of one generator starting on `sheet`.
    fn letter_chain(&self, g: usize, sheet: usize) -> Chain {
        let mut c = Chain::new();
        if g == 2 * self.g0 as usize {
            // c = e · (puncture loop) · e⁻¹
            let t = self.sheet_mul(sheet, &self.puncture_image());
            sadd_one(&mut c, self.edge(sheet, EdgeKind::Connector), &Q::one());
            sadd_one(&mut c, self.edge(sheet, EdgeKind::Puncture), &Q::one());
            sadd_one(&mut c, self.edge(t, EdgeKind::Connector), &-Q::one());
        } else {
            sadd_one(&mut c, sheet * self.kinds + g, &Q::one());
        }
        c
    }

    /// Class of the lift of a closed word, computed from its Fox derivatives.
    pub fn lift_word(&self, w: &[Letter], base_sheet: usize) -> Result<Chain, CoverError> {
        let h = self.holonomy(w);
        if self.sheet_mul(base_sheet, &h) != base_sheet {
            return Err(CoverError::NotClosed(h));
        }
        let mut out = Chain::new();
        for g in 0..=2 * self.g0 as usize {
            let d = fox::fox_derivative(w, g);
            for (u, c) in d {
                let s = self.sheet_mul(base_sheet, &self.holonomy(&u));
                sadd(&mut out, &self.letter_chain(g, s), &Q::from_integer(c.into()));
            }
        }
        Ok(out)
    }

    /// A word is clean when its holonomy is trivial, so every lift closes up.
    pub fn clean_check(&self, w: &[Letter]) -> bool {
        self.holonomy(w).is_identity()
    }

    /// Lift by walking the word letter by letter (independent of Fox calculus).
    pub fn walk_word(&self, w: &[Letter], base_sheet: usize) -> (Chain, usize) {
        let mut cur = base_sheet;
        let mut out = Chain::new();
        for &l in w {
            let g = fox::letter_gen(l);
            let img = self.letter_image(g);
            if l > 0 {
                sadd(&mut out, &self.letter_chain(g, cur), &Q::one());
                cur = self.sheet_mul(cur, &img);
            } else {
                cur = self.sheet_mul(cur, &img.inv());
                sadd(&mut out, &self.letter_chain(g, cur), &-Q::one());
            }
        }
        (out, cur)
    }

    /// Closed lift of the smallest power of a generator loop that closes up.
    pub fn power_lift(&self, k: EdgeKind, base_sheet: usize) -> Chain {
        let img = self.image(k);
        let mut c = Chain::new();
        let mut s = base_sheet;
        loop {
            sadd_one(&mut c, self.edge(s, k), &Q::one());
            s = self.sheet_mul(s, &img);
            if s == base_sheet {
                return c;
            }
        }
    }

    pub fn class_e(&self, i: u32) -> Chain {
        self.power_lift(EdgeKind::A(i), 0)
    }

    pub fn class_f(&self, i: u32) -> Chain {
        self.power_lift(EdgeKind::B(i), 0)
    }

    /// Cycle made of two lifts of the arc `e⁻¹ λ e` (with `λ` the first
    /// handle's `a` or `b` loop) on sheets differing by the puncture holonomy,
    /// closed up along puncture edges.
    pub fn g_curve(&self, horizontal: bool) -> Chain {
        let lam = if horizontal { EdgeKind::A(1) } else { EdgeKind::B(1) };
        let hl = self.image(lam);
        let hc = self.puncture_image();
        let arc = |s: usize| {
            let mut c = Chain::new();
            let t = self.sheet_mul(s, &hl);
            sadd_one(&mut c, self.edge(s, EdgeKind::Connector), &-Q::one());
            sadd_one(&mut c, self.edge(s, lam), &Q::one());
            sadd_one(&mut c, self.edge(t, EdgeKind::Connector), &Q::one());
            c
        };
        let k = 0;
        let kz = self.sheet_mul(k, &hc);
        let kl = self.sheet_mul(k, &hl);
        let mut out = arc(k);
        sadd_one(&mut out, self.edge(kl, EdgeKind::Puncture), &Q::one());
        sadd(&mut out, &arc(kz), &-Q::one());
        sadd_one(&mut out, self.edge(k, EdgeKind::Puncture), &-Q::one());
        debug_assert!(self.is_cycle(&out));
        out
    }

    /// Boundary cycles of the lifted punctures (one per orbit of the puncture holonomy).
    pub fn puncture_cycles(&self) -> Vec<Chain> {
        let hc = self.puncture_image();
        let mut done = vec![false; self.n_sheets()];
        let mut out = Vec::new();
        for s in 0..self.n_sheets() {
            if done[s] {
                continue;
            }
            let mut c = Chain::new();
            let mut cur = s;
            loop {
                done[cur] = true;
                sadd_one(&mut c, self.edge(cur, EdgeKind::Puncture), &Q::one());
                cur = self.sheet_mul(cur, &hc);
                if cur == s {
                    break;
                }
            }
            out.push(c);
        }
        out
    }

    /// Rotation system: for every half-edge the next half-edge counterclockwise
    /// around its vertex. Half-edge `2e` is the tail end of edge `e`, `2e+1` the head end.
    pub fn rotation(&self) -> Result<Vec<usize>, CoverError> {
        if !self.spec.filled {
            return Err(CoverError::Open);
        }
        let mut succ = vec![usize::MAX; 2 * self.n_edges()];
        for walk in &self.faces {
            let n = walk.len();
            for j in 0..n {
                let a = walk[j];
                let b = walk[(j + 1) % n];
                let h_in = 2 * a.edge + usize::from(a.forward);
                let h_out = 2 * b.edge + usize::from(!b.forward);
                debug_assert_eq!(succ[h_out], usize::MAX, "half-edge used twice");
                succ[h_out] = h_in;
            }
        }
        debug_assert!(succ.iter().all(|&x| x != usize::MAX));
        Ok(succ)
    }

    pub fn half_vertex(&self, h: usize) -> usize {
        if h % 2 == 0 {
            self.tail[h / 2]
        } else {
            self.head[h / 2]
        }
    }
}

/// Standard generator classes of the Heisenberg cover `W`.
#[derive(Clone, Debug)]
pub struct NamedClasses {
    pub e: Vec<Chain>,
    pub f: Vec<Chain>,
    pub g_h: Chain,
    pub g_v: Chain,
}

impl NamedClasses {
    pub fn new(cover: &Cover) -> Self {
        NamedClasses {
            e: (1..=cover.g0).map(|i| cover.class_e(i)).collect(),
            f: (1..=cover.g0).map(|i| cover.class_f(i)).collect(),
            g_h: cover.g_curve(true),
            g_v: cover.g_curve(false),
        }
    }

    /// `E_i` with 1-based index.
    pub fn ei(&self, i: u32) -> &Chain {
        &self.e[i as usize - 1]
    }

    pub fn fi(&self, i: u32) -> &Chain {
        &self.f[i as usize - 1]
    }
}

pub fn is_zero_chain(c: &Chain) -> bool {
    c.values().all(|x| x.is_zero())
}
