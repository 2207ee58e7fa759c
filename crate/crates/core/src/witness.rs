//! The weak-amalgamation failure witness over the three-point base pair
//! `x < y < z`, `f = {(x,y),(z,z)}`, `g = {(x,z)}`.
//!
//! For an extension `Ã` of the base, `f` gets a free interval `(a_f, b_f)`
//! at the end of the orbit of `x`, a point `c` is sent there by `f`, and `g`
//! gets a free interval `(a_g, b_g)` at the end of the orbit of `c`.
//!
//! Two versions of the final step are provided. The literal one
//! ([`build_a0`], [`build_a1`], [`build_a2`]) adds copies `d_i` of the
//! `g`-orbit of `c` chained by `g`, and then asks for `g(a_g) = d_m`. Since
//! `d_m` is already `g(d_{m-1})`, that map is not injective and the step
//! fails. The repaired one ([`build_witness`]) instead sends an orbit point
//! `c_i` by `f` to a fresh `w` inside `(a_g, b_g)`. Freeness of `g` then allows
//! both `g(a_g) = w` (in `A₁`) and `g(a_g) = e < w` (in `A₂`), so the words
//! `G^{m+1}F^{n+1}` and `F G^i F^{n+1}` agree at `x` in `A₁` and are strictly
//! ordered in `A₂`. An amalgam over the base would have to identify both pairs
//! of images, so none exists.
//!
//! The construction is deterministic: the auxiliary `g`-extension placing
//! `g(c)` takes admissible types in enumeration order, and every "extend
//! further if necessary" step copies the relevant row of the order matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lemma1::{image_constraints, lemma1_extend, tip_state, Lemma1Bounds, Lemma1Trace};
use crate::partial_auto::{
    check_partial_iso, is_pa_extension, Generator, PaEmbedding, PaPair, PartialAutomorphism, PartialMap,
};
use crate::point_types::{first_type, for_each_type};
use crate::poset::{qf_type, Elem, Poset};

pub const X: Elem = 0;
pub const Y: Elem = 1;
pub const Z: Elem = 2;

pub fn base_pair() -> PaPair {
    let poset = Poset::chain(&[X, Y, Z])
        .expect("chain")
        .with_labels([(X, "x".into()), (Y, "y".into()), (Z, "z".into())]);
    PaPair::new(poset, [(X, Y), (Z, Z)], [(X, Z)]).expect("base pair is valid")
}

/// Named points of the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessMeta {
    pub a_f: Elem,
    pub b_f: Elem,
    pub c: Elem,
    /// `f^n(x) = a_f`.
    pub n: usize,
    pub a_g: Elem,
    pub b_g: Elem,
    /// `g^m(c) = a_g`.
    pub m: usize,
    /// `c_i = g^i(c)` for `0 ≤ i ≤ m`.
    pub c_chain: Vec<Elem>,
    /// Copies `d_0, …, d_m` (literal construction only).
    #[serde(default)]
    pub d: Vec<Elem>,
    pub e: Option<Elem>,
    /// Repaired construction: `f(c_i) = w` for `i = source`, with `a_g < w < b_g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Elem>,
}

/// Composition of generator powers, written left to right and applied right
/// to left: `[(G,t),(F,s)]` is `g^t ∘ f^s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Generator, u32)>", into = "Vec<(Generator, u32)>")]
pub struct Word(Vec<(Generator, u32)>);

impl Word {
    pub fn new(letters: Vec<(Generator, u32)>) -> Result<Self> {
        if letters.iter().any(|&(_, k)| k == 0) {
            return Err(Error::PreconditionViolation("word exponents must be positive".into()));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[(Generator, u32)] {
        &self.0
    }
}

impl TryFrom<Vec<(Generator, u32)>> for Word {
    type Error = Error;
    fn try_from(v: Vec<(Generator, u32)>) -> Result<Self> {
        Word::new(v)
    }
}

impl From<Word> for Vec<(Generator, u32)> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(g, k)| format!("{g:?}^{k}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Applies `w` to `start`; `None` as soon as a step is undefined.
pub fn eval_word(pair: &PaPair, w: &Word, start: Elem) -> Option<Elem> {
    if !pair.poset.contains(start) {
        return None;
    }
    w.0.iter().rev().try_fold(start, |x, &(g, k)| {
        (0..k).try_fold(x, |y, _| pair.map(g).get(y))
    })
}

fn power(pair: &PaPair, g: Generator, start: Elem, k: usize) -> Option<Elem> {
    (0..k).try_fold(start, |y, _| pair.map(g).get(y))
}

fn internal<T>(r: Result<T>, what: &str) -> Result<T> {
    r.map_err(|e| Error::InternalInvariantBroken(format!("{what}: {e}")))
}

/// State after both free intervals exist, before any `d` or `w` points.
struct Sides {
    poset: Poset,
    f_b: PartialMap,
    g_c: PartialMap,
    a_f: Elem,
    b_f: Elem,
    c: Elem,
    n: usize,
    a_g: Elem,
    b_g: Elem,
    m: usize,
    c_chain: Vec<Elem>,
    f_trace: Lemma1Trace,
    g_trace: Lemma1Trace,
}

/// Runs both free-interval constructions. `choice` selects which admissible
/// type `g(c)` receives; `None` once the choices are used up.
fn build_sides(atilde: &PaPair, bounds: Lemma1Bounds, choice: usize) -> Result<Option<Sides>> {
    if !is_pa_extension(&base_pair(), atilde) {
        return Err(Error::PreconditionViolation("input does not extend the base pair".into()));
    }

    let f_trace = lemma1_extend(&atilde.pa_f(), X, bounds)?;
    let (a_f, b_f, n) = (f_trace.a, f_trace.b, f_trace.n);
    let f_b = f_trace.result.map.clone();
    let mut poset = f_trace.result.poset.clone();

    // a_f < c < b_f, with a_f's relations elsewhere
    let c = poset.fresh_id();
    poset = poset.copy_point_above(a_f, c)?;

    let g_on_b = PartialAutomorphism { poset: poset.clone(), map: atilde.g.clone() };
    let constraints = image_constraints(&g_on_b, tip_state(&poset, c));
    let mut k = 0;
    let mut picked = None;
    for_each_type(&poset, &constraints, |ty| {
        if k == choice {
            picked = Some(ty);
            return false;
        }
        k += 1;
        true
    });
    let Some(ty) = picked else { return Ok(None) };
    let gc = poset.fresh_id();
    let e_poset = poset.with_point_masks(gc, ty.below, ty.above)?;
    let mut g_e = atilde.g.clone();
    g_e.insert(c, gc)?;
    if !e_poset.lt(c, gc) {
        return Err(Error::InternalInvariantBroken("c < g(c) fails".into()));
    }
    let g_trace = lemma1_extend(&PartialAutomorphism { poset: e_poset, map: g_e }, c, bounds)?;
    let (a_g, b_g, m) = (g_trace.a, g_trace.b, g_trace.n);
    let c_chain: Vec<Elem> = (0..=m)
        .map(|i| g_trace.result.power(c, i))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InternalInvariantBroken("g-orbit of c too short".into()))?;
    Ok(Some(Sides {
        poset: g_trace.result.poset.clone(),
        f_b,
        g_c: g_trace.result.map.clone(),
        a_f,
        b_f,
        c,
        n,
        a_g,
        b_g,
        m,
        c_chain,
        f_trace,
        g_trace,
    }))
}

fn label_points(poset: &mut Poset, meta: &WitnessMeta) {
    for (e, l) in [(meta.a_f, "a_f"), (meta.b_f, "b_f"), (meta.c, "c"), (meta.a_g, "a_g"), (meta.b_g, "b_g")] {
        poset.set_label(e, l);
    }
    for (i, &ci) in meta.c_chain.iter().enumerate().take(meta.m).skip(1) {
        poset.set_label(ci, format!("c{i}"));
    }
    for (i, &di) in meta.d.iter().enumerate() {
        poset.set_label(di, format!("d{i}"));
    }
    if let Some(w) = meta.w {
        poset.set_label(w, "w");
    }
}

fn meta_of(s: &Sides) -> WitnessMeta {
    WitnessMeta {
        a_f: s.a_f,
        b_f: s.b_f,
        c: s.c,
        n: s.n,
        a_g: s.a_g,
        b_g: s.b_g,
        m: s.m,
        c_chain: s.c_chain.clone(),
        d: vec![],
        e: None,
        source: None,
        w: None,
    }
}

/// Builds the literal `A₀` over `atilde` together with its named points.
pub fn build_a0(atilde: &PaPair, bounds: Lemma1Bounds) -> Result<(PaPair, WitnessMeta)> {
    build_a0_traced(atilde, bounds).map(|(p, m, _, _)| (p, m))
}

/// [`build_a0`], also returning the two free-interval traces (`f`-side, `g`-side).
pub fn build_a0_traced(
    atilde: &PaPair,
    bounds: Lemma1Bounds,
) -> Result<(PaPair, WitnessMeta, Lemma1Trace, Lemma1Trace)> {
    let sides = build_sides(atilde, bounds, 0)?
        .ok_or_else(|| Error::InternalInvariantBroken("no admissible image for c".into()))?;
    let mut meta = meta_of(&sides);
    let mut poset = sides.poset;

    // d_i above c_i with c_i's relations to everything else
    for &ci in &meta.c_chain {
        let di = poset.fresh_id();
        poset = poset.copy_point_above(ci, di)?;
        meta.d.push(di);
    }
    let d = &meta.d;
    let mut f0 = sides.f_b;
    internal(f0.insert(meta.a_f, meta.c), "f0")?;
    internal(f0.insert(meta.c, d[0]), "f0")?;
    let mut g0 = sides.g_c;
    for w in d.windows(2) {
        internal(g0.insert(w[0], w[1]), "g0")?;
    }
    label_points(&mut poset, &meta);

    let a0 = PaPair { poset, f: f0, g: g0 };
    internal(check_partial_iso(&a0.poset, &a0.f), "f0 is not a partial automorphism")?;
    internal(check_partial_iso(&a0.poset, &a0.g), "g0 is not a partial automorphism")?;
    check_a0(atilde, &a0, &meta)?;
    Ok((a0, meta, sides.f_trace, sides.g_trace))
}

/// Relations the construction guarantees for `A₀`.
fn check_a0(atilde: &PaPair, a0: &PaPair, meta: &WitnessMeta) -> Result<()> {
    let p = &a0.poset;
    let fail = |what: &str| Err(Error::InternalInvariantBroken(what.to_string()));
    if !is_pa_extension(atilde, a0) {
        return fail("A0 does not extend the input");
    }
    if !p.lt(meta.b_f, Z) {
        return fail("b_f < z fails");
    }
    for k in 0..=meta.n {
        match power(a0, Generator::F, X, k) {
            Some(o) if p.lt(o, Z) => {}
            _ => return fail("f^k(x) < z fails"),
        }
    }
    if power(a0, Generator::F, X, meta.n) != Some(meta.a_f) {
        return fail("f^n(x) = a_f fails");
    }
    if !(p.lt(meta.a_f, meta.c) && p.lt(meta.c, meta.b_f)) {
        return fail("a_f < c < b_f fails");
    }
    if power(a0, Generator::G, meta.c, meta.m) != Some(meta.a_g) || !p.lt(meta.a_g, meta.b_g) {
        return fail("g^m(c) = a_g < b_g fails");
    }
    for (&ci, &di) in meta.c_chain.iter().zip(&meta.d) {
        if !p.lt(ci, di) {
            return fail("c_i < d_i fails");
        }
        let rest: BTreeSet<Elem> = p.elements().iter().copied().filter(|&e| e != ci && e != di).collect();
        if qf_type(ci, &rest, p)? != qf_type(di, &rest, p)? {
            return fail("d_i does not copy c_i");
        }
    }
    if let Some(w) = meta.w {
        if !(p.lt(meta.a_g, w) && p.lt(w, meta.b_g)) {
            return fail("a_g < w < b_g fails");
        }
    }
    Ok(())
}

/// Literal `A₁`: same carrier, `g` extended by `(g^m(c), d_m)`.
///
/// `d_m` is already `g₀(d_{m-1})` and `m ≥ 1`, so this always fails with
/// [`Error::InternalInvariantBroken`].
pub fn build_a1(a0: &PaPair, meta: &WitnessMeta) -> Result<PaPair> {
    let dm = *meta.d.last().ok_or_else(|| Error::PreconditionViolation("meta has no d points".into()))?;
    let mut a1 = a0.clone();
    if let Some(prev) = a1.g.preimage(dm) {
        return Err(Error::InternalInvariantBroken(format!(
            "g1 is not injective: d_m = {dm} is already g0({prev})"
        )));
    }
    internal(a1.g.insert(meta.a_g, dm), "g1")?;
    internal(a1.validate(), "A1 invalid")?;
    Ok(a1)
}

/// Literal `A₂`: a fresh `e` with `g^m(c) < e < d_m`, and `g` routed through it.
/// Fails for the same reason as [`build_a1`].
pub fn build_a2(a0: &PaPair, meta: &WitnessMeta) -> Result<(PaPair, Elem)> {
    let dm = *meta.d.last().ok_or_else(|| Error::PreconditionViolation("meta has no d points".into()))?;
    let e = a0.poset.fresh_id();
    let mut poset = a0.poset.with_point(e, &[meta.a_g].into(), &[dm].into())?;
    poset.set_label(e, "e");
    let mut g = a0.g.clone();
    internal(g.insert(meta.a_g, e), "g2")?;
    if let Some(prev) = g.preimage(dm) {
        return Err(Error::InternalInvariantBroken(format!(
            "g2 is not injective: d_m = {dm} is already g0({prev})"
        )));
    }
    internal(g.insert(e, dm), "g2")?;
    let a2 = PaPair { poset, f: a0.f.clone(), g };
    internal(a2.validate(), "A2 invalid")?;
    Ok((a2, e))
}

/// How many admissible types for `g(c)` the repaired construction tries.
pub const MAX_IMAGE_CHOICES: usize = 64;

/// Repaired `A₀`: `f₀ = f_B ∪ {(a_f, c)}`, `g₀ = g_C`, plus a fresh `w` with
/// `f(c_i) = w` and `a_g < w < b_g` for the largest admissible `i ≥ 1`.
pub fn build_repaired_a0(atilde: &PaPair, bounds: Lemma1Bounds) -> Result<(PaPair, WitnessMeta)> {
    for choice in 0..MAX_IMAGE_CHOICES {
        let Some(sides) = build_sides(atilde, bounds, choice)? else { break };
        let mut f0 = sides.f_b.clone();
        internal(f0.insert(sides.a_f, sides.c), "f0")?;
        let on_c = PartialAutomorphism { poset: sides.poset.clone(), map: f0.clone() };
        let p = &sides.poset;
        let ia = p.index_of(sides.a_g).expect("a_g");
        let ib = p.index_of(sides.b_g).expect("b_g");
        for i in (1..=sides.m).rev() {
            let src = sides.c_chain[i];
            if f0.in_domain(src) {
                continue;
            }
            let mut cons = image_constraints(&on_c, tip_state(p, src));
            cons.must_below |= p.down_mask(ia) | crate::poset::bit(ia);
            cons.must_above |= p.up_mask(ib) | crate::poset::bit(ib);
            let Some(ty) = first_type(p, &cons) else { continue };
            let w = p.fresh_id();
            let mut poset = p.with_point_masks(w, ty.below, ty.above)?;
            let mut f = f0.clone();
            internal(f.insert(src, w), "f0")?;
            let mut meta = meta_of(&sides);
            meta.source = Some(i);
            meta.w = Some(w);
            label_points(&mut poset, &meta);
            let a0 = PaPair { poset, f, g: sides.g_c.clone() };
            internal(a0.validate(), "repaired A0 invalid")?;
            check_a0(atilde, &a0, &meta)?;
            return Ok((a0, meta));
        }
    }
    Err(Error::BoundExhausted { stage: 0, element: X })
}

/// Repaired `A₁`: `g(a_g) = w`.
pub fn build_repaired_a1(a0: &PaPair, meta: &WitnessMeta) -> Result<PaPair> {
    let w = meta.w.ok_or_else(|| Error::PreconditionViolation("meta has no w".into()))?;
    let mut a1 = a0.clone();
    internal(a1.g.insert(meta.a_g, w), "g1")?;
    internal(a1.validate(), "A1 invalid")?;
    Ok(a1)
}

/// Repaired `A₂`: a fresh `e` with `a_g < e < w` and `g(a_g) = e`.
pub fn build_repaired_a2(a0: &PaPair, meta: &WitnessMeta) -> Result<(PaPair, Elem)> {
    let w = meta.w.ok_or_else(|| Error::PreconditionViolation("meta has no w".into()))?;
    let e = a0.poset.fresh_id();
    let mut poset = a0.poset.with_point(e, &[meta.a_g].into(), &[w].into())?;
    poset.set_label(e, "e");
    let mut g = a0.g.clone();
    internal(g.insert(meta.a_g, e), "g2")?;
    let a2 = PaPair { poset, f: a0.f.clone(), g };
    internal(a2.validate(), "A2 invalid")?;
    Ok((a2, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WordRelation {
    Equal,
    StrictlyLess,
}

/// Two extensions of the base and two words whose values at the image of
/// `start` coincide in the first and are strictly ordered in the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionCertificate {
    pub base: PaPair,
    pub pair1: PaPair,
    pub pair2: PaPair,
    pub embedding1: BTreeMap<Elem, Elem>,
    pub embedding2: BTreeMap<Elem, Elem>,
    pub w1: Word,
    pub w2: Word,
    pub start: Elem,
    pub relation_in_1: WordRelation,
    pub relation_in_2: WordRelation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<WitnessMeta>,
}

impl ObstructionCertificate {
    /// Re-checks every clause from scratch.
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::CertificateInvalid(m));
        for (name, p) in [("base", &self.base), ("pair1", &self.pair1), ("pair2", &self.pair2)] {
            if let Err(e) = p.validate() {
                return bad(format!("{name} is not a pair of partial automorphisms: {e}"));
            }
        }
        if let Err(e) = PaEmbedding::new(&self.base, &self.pair1, self.embedding1.clone()) {
            return bad(format!("embedding1: {e}"));
        }
        if let Err(e) = PaEmbedding::new(&self.base, &self.pair2, self.embedding2.clone()) {
            return bad(format!("embedding2: {e}"));
        }
        if self.relation_in_1 != WordRelation::Equal || self.relation_in_2 != WordRelation::StrictlyLess {
            return bad("relations must be Equal in pair1 and StrictlyLess in pair2".into());
        }
        let (Some(&x1), Some(&x2)) = (self.embedding1.get(&self.start), self.embedding2.get(&self.start))
        else {
            return bad("start is not in the base".into());
        };
        let eval = |p: &PaPair, w: &Word, x: Elem, which: &str| {
            eval_word(p, w, x).ok_or_else(|| Error::CertificateInvalid(format!("{w} undefined in {which}")))
        };
        let (v1, u1) = (eval(&self.pair1, &self.w1, x1, "pair1")?, eval(&self.pair1, &self.w2, x1, "pair1")?);
        let (v2, u2) = (eval(&self.pair2, &self.w1, x2, "pair2")?, eval(&self.pair2, &self.w2, x2, "pair2")?);
        if v1 != u1 {
            return bad(format!("words differ in pair1 ({v1} vs {u1})"));
        }
        if !self.pair2.poset.lt(v2, u2) {
            return bad(format!("{v2} < {u2} fails in pair2"));
        }
        Ok(())
    }
}

/// Literal words: `w1 = G^{m+1} F^{n+1}`, `w2 = G^m F^{n+2}`.
pub fn obstruction_words(n: usize, m: usize) -> (Word, Word) {
    let w1 = vec![(Generator::G, m as u32 + 1), (Generator::F, n as u32 + 1)];
    let mut w2 = vec![(Generator::F, n as u32 + 2)];
    if m > 0 {
        w2.insert(0, (Generator::G, m as u32));
    }
    (Word(w1), Word(w2))
}

/// Repaired words: `w1 = G^{m+1} F^{n+1}`, `w2 = F G^i F^{n+1}` with `i = source`.
pub fn repaired_words(meta: &WitnessMeta) -> Result<(Word, Word)> {
    let i = meta.source.ok_or_else(|| Error::PreconditionViolation("meta has no source".into()))?;
    let w1 = vec![(Generator::G, meta.m as u32 + 1), (Generator::F, meta.n as u32 + 1)];
    let w2 = vec![(Generator::F, 1), (Generator::G, i as u32), (Generator::F, meta.n as u32 + 1)];
    Ok((Word::new(w1)?, Word::new(w2)?))
}

/// Packages and checks a certificate; the base embeds by inclusion.
pub fn make_certificate(
    base: &PaPair,
    a1: &PaPair,
    a2: &PaPair,
    meta: &WitnessMeta,
    words: (Word, Word),
) -> Result<ObstructionCertificate> {
    let incl: BTreeMap<Elem, Elem> = base.poset.elements().iter().map(|&e| (e, e)).collect();
    let cert = ObstructionCertificate {
        base: base.clone(),
        pair1: a1.clone(),
        pair2: a2.clone(),
        embedding1: incl.clone(),
        embedding2: incl,
        w1: words.0,
        w2: words.1,
        start: X,
        relation_in_1: WordRelation::Equal,
        relation_in_2: WordRelation::StrictlyLess,
        meta: Some(meta.clone()),
    };
    cert.check()?;
    Ok(cert)
}

/// Everything the construction produces for one `Ã`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub atilde: PaPair,
    pub a0: PaPair,
    pub a1: PaPair,
    pub a2: PaPair,
    pub meta: WitnessMeta,
    pub certificate: ObstructionCertificate,
}

/// The literal construction end to end. Always ends in an error at `A₁`.
pub fn build_literal_witness(atilde: &PaPair, bounds: Lemma1Bounds) -> Result<Witness> {
    let (a0, mut meta) = build_a0(atilde, bounds)?;
    let a1 = build_a1(&a0, &meta)?;
    let (a2, e) = build_a2(&a0, &meta)?;
    meta.e = Some(e);
    let words = obstruction_words(meta.n, meta.m);
    let certificate = make_certificate(&base_pair(), &a1, &a2, &meta, words)?;
    Ok(Witness { atilde: atilde.clone(), a0, a1, a2, meta, certificate })
}

/// The repaired construction end to end.
pub fn build_witness(atilde: &PaPair, bounds: Lemma1Bounds) -> Result<Witness> {
    let (a0, mut meta) = build_repaired_a0(atilde, bounds)?;
    let a1 = build_repaired_a1(&a0, &meta)?;
    let (a2, e) = build_repaired_a2(&a0, &meta)?;
    meta.e = Some(e);
    let words = repaired_words(&meta)?;
    let certificate = make_certificate(&base_pair(), &a1, &a2, &meta, words)?;
    Ok(Witness { atilde: atilde.clone(), a0, a1, a2, meta, certificate })
}

/// Human-readable account of why the certificate refutes amalgamation.
pub fn proof_sketch(cert: &ObstructionCertificate) -> String {
    let x1 = cert.embedding1[&cert.start];
    let x2 = cert.embedding2[&cert.start];
    let name1 = |e: Option<Elem>| e.map_or("undefined".into(), |e| cert.pair1.poset.name(e));
    let name2 = |e: Option<Elem>| e.map_or("undefined".into(), |e| cert.pair2.poset.name(e));
    let mut s = String::new();
    s.push_str(&format!(
        "Any amalgam of pair1 and pair2 over the base identifies the two copies of {}.\n",
        cert.base.poset.name(cert.start)
    ));
    s.push_str("Embeddings commute with f and g, so the images of every word applied to it are identified too.\n");
    s.push_str(&format!(
        "In pair1: {} -> {}, {} -> {} (equal).\n",
        cert.w1,
        name1(eval_word(&cert.pair1, &cert.w1, x1)),
        cert.w2,
        name1(eval_word(&cert.pair1, &cert.w2, x1)),
    ));
    s.push_str(&format!(
        "In pair2: {} -> {}, {} -> {} (strictly less).\n",
        cert.w1,
        name2(eval_word(&cert.pair2, &cert.w1, x2)),
        cert.w2,
        name2(eval_word(&cert.pair2, &cert.w2, x2)),
    ));
    s.push_str("An amalgam would map two strictly ordered points of pair2 to one point. No amalgam exists.\n");
    s
}
