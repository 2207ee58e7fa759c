//! Partial automorphisms, pairs of them, and embeddings between pairs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::poset::{check_embedding, is_extension, push_forward_map, qf_type, Elem, Poset};

/// Graph of a partial injective map, with its inverse kept alongside.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "Vec<(Elem, Elem)>", into = "Vec<(Elem, Elem)>")]
pub struct PartialMap {
    fwd: BTreeMap<Elem, Elem>,
    inv: BTreeMap<Elem, Elem>,
}

impl PartialMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fails on a repeated first or second coordinate.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Result<Self> {
        let mut m = PartialMap::new();
        for (a, b) in pairs {
            m.insert(a, b)?;
        }
        Ok(m)
    }

    pub fn insert(&mut self, a: Elem, b: Elem) -> Result<()> {
        if self.fwd.get(&a).is_some_and(|&x| x != b) {
            return Err(Error::NotInjective(a));
        }
        if self.inv.get(&b).is_some_and(|&x| x != a) {
            return Err(Error::NotInjective(b));
        }
        self.fwd.insert(a, b);
        self.inv.insert(b, a);
        Ok(())
    }

    pub fn get(&self, a: Elem) -> Option<Elem> {
        self.fwd.get(&a).copied()
    }

    pub fn preimage(&self, b: Elem) -> Option<Elem> {
        self.inv.get(&b).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.fwd.iter().map(|(&a, &b)| (a, b))
    }

    pub fn domain(&self) -> BTreeSet<Elem> {
        self.fwd.keys().copied().collect()
    }

    pub fn range(&self) -> BTreeSet<Elem> {
        self.inv.keys().copied().collect()
    }

    pub fn in_domain(&self, a: Elem) -> bool {
        self.fwd.contains_key(&a)
    }

    pub fn in_range(&self, b: Elem) -> bool {
        self.inv.contains_key(&b)
    }

    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fwd.is_empty()
    }

    pub fn is_subset(&self, other: &PartialMap) -> bool {
        self.pairs().all(|(a, b)| other.get(a) == Some(b))
    }

    pub fn as_map(&self) -> &BTreeMap<Elem, Elem> {
        &self.fwd
    }
}

/// Order-isomorphism check of `map` between its domain and range inside `p`.
pub(crate) fn check_partial_iso(p: &Poset, map: &PartialMap) -> Result<()> {
    for (a, b) in map.pairs() {
        for e in [a, b] {
            if !p.contains(e) {
                return Err(Error::UnknownElement(e));
            }
        }
    }
    for (a, fa) in map.pairs() {
        for (b, fb) in map.pairs() {
            if p.lt(a, b) != p.lt(fa, fb) {
                return Err(Error::OrderViolation(a, b));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "crate::io::PaJson", into = "crate::io::PaJson")]
pub struct PartialAutomorphism {
    pub poset: Poset,
    pub map: PartialMap,
}

impl PartialAutomorphism {
    pub fn apply(&self, a: Elem) -> Option<Elem> {
        self.map.get(a)
    }

    /// `h^k(a)` when every step is defined.
    pub fn power(&self, a: Elem, k: usize) -> Option<Elem> {
        (0..k).try_fold(a, |x, _| self.map.get(x))
    }
}

/// Validates that `map` is a partial automorphism of `p`.
pub fn validate_pa(
    p: &Poset,
    pairs: impl IntoIterator<Item = (Elem, Elem)>,
) -> Result<PartialAutomorphism> {
    let map = PartialMap::from_pairs(pairs)?;
    check_partial_iso(p, &map)?;
    Ok(PartialAutomorphism { poset: p.clone(), map })
}

/// One poset carrying two partial automorphisms `f` and `g`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "crate::io::PaPairJson", into = "crate::io::PaPairJson")]
pub struct PaPair {
    pub poset: Poset,
    pub f: PartialMap,
    pub g: PartialMap,
}

/// Which of the two maps of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Generator {
    F,
    G,
}

impl PaPair {
    pub fn new(
        poset: Poset,
        f: impl IntoIterator<Item = (Elem, Elem)>,
        g: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self> {
        let f = validate_pa(&poset, f)?.map;
        let g = validate_pa(&poset, g)?.map;
        Ok(PaPair { poset, f, g })
    }

    pub fn empty() -> Self {
        PaPair { poset: Poset::empty(), f: PartialMap::new(), g: PartialMap::new() }
    }

    pub fn map(&self, which: Generator) -> &PartialMap {
        match which {
            Generator::F => &self.f,
            Generator::G => &self.g,
        }
    }

    pub fn map_mut(&mut self, which: Generator) -> &mut PartialMap {
        match which {
            Generator::F => &mut self.f,
            Generator::G => &mut self.g,
        }
    }

    pub fn pa_f(&self) -> PartialAutomorphism {
        PartialAutomorphism { poset: self.poset.clone(), map: self.f.clone() }
    }

    pub fn pa_g(&self) -> PartialAutomorphism {
        PartialAutomorphism { poset: self.poset.clone(), map: self.g.clone() }
    }

    pub fn component(&self, which: Generator) -> PartialAutomorphism {
        match which {
            Generator::F => self.pa_f(),
            Generator::G => self.pa_g(),
        }
    }

    /// Re-checks both components.
    pub fn validate(&self) -> Result<()> {
        check_partial_iso(&self.poset, &self.f)?;
        check_partial_iso(&self.poset, &self.g)
    }
}

/// An order embedding between pairs that commutes with `f` and `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaEmbedding {
    pub map: BTreeMap<Elem, Elem>,
    pub commutes_f: bool,
    pub commutes_g: bool,
}

impl PaEmbedding {
    /// Checks `map` and returns it as a pair embedding `src -> dst`.
    pub fn new(src: &PaPair, dst: &PaPair, map: BTreeMap<Elem, Elem>) -> Result<Self> {
        check_embedding(&src.poset, &dst.poset, &map)?;
        for which in [Generator::F, Generator::G] {
            if let Some(a) = first_noncommuting(src.map(which), dst.map(which), &map) {
                return Err(Error::DomainConflict(format!(
                    "embedding does not commute with {which:?} at {a}"
                )));
            }
        }
        Ok(PaEmbedding { map, commutes_f: true, commutes_g: true })
    }

    pub fn inclusion(src: &PaPair, dst: &PaPair) -> Result<Self> {
        Self::new(src, dst, src.poset.elements().iter().map(|&e| (e, e)).collect())
    }

    pub fn identity(p: &PaPair) -> Self {
        PaEmbedding {
            map: p.poset.elements().iter().map(|&e| (e, e)).collect(),
            commutes_f: true,
            commutes_g: true,
        }
    }

    pub fn apply(&self, e: Elem) -> Option<Elem> {
        self.map.get(&e).copied()
    }

    pub fn is_valid(&self, src: &PaPair, dst: &PaPair) -> bool {
        PaEmbedding::new(src, dst, self.map.clone()).is_ok()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PaEmbedding) -> Option<PaEmbedding> {
        let map = self
            .map
            .iter()
            .map(|(&a, &b)| next.apply(b).map(|c| (a, c)))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(PaEmbedding {
            map,
            commutes_f: self.commutes_f && next.commutes_f,
            commutes_g: self.commutes_g && next.commutes_g,
        })
    }
}

fn first_noncommuting(
    src: &PartialMap,
    dst: &PartialMap,
    alpha: &BTreeMap<Elem, Elem>,
) -> Option<Elem> {
    src.pairs()
        .find(|&(a, fa)| {
            let (Some(&ia), Some(&ifa)) = (alpha.get(&a), alpha.get(&fa)) else {
                return true;
            };
            dst.get(ia) != Some(ifa)
        })
        .map(|(a, _)| a)
}

/// True iff inclusion is an embedding of pairs from `small` into `big`.
pub fn is_pa_extension(small: &PaPair, big: &PaPair) -> bool {
    is_extension(&small.poset, &big.poset)
        && small.f.is_subset(&big.f)
        && small.g.is_subset(&big.g)
        && small.validate().is_ok()
        && big.validate().is_ok()
}

/// Adds `(c, d)` to `h` when the pushed-forward type of `c` over `dom(h)`
/// matches the type of `d` over `rng(h)`.
pub fn extend_by_pair(h: &PartialAutomorphism, c: Elem, d: Elem) -> Result<PartialAutomorphism> {
    let p = &h.poset;
    for e in [c, d] {
        if !p.contains(e) {
            return Err(Error::UnknownElement(e));
        }
    }
    if h.map.in_domain(c) {
        return Err(Error::DomainConflict(format!("{c} is already in the domain")));
    }
    if h.map.in_range(d) {
        return Err(Error::DomainConflict(format!("{d} is already in the range")));
    }
    let dom = h.map.domain();
    let rng = h.map.range();
    let pushed = push_forward_map(&qf_type(c, &dom, p)?, h.map.as_map(), p, p)?;
    let target = qf_type(d, &rng, p)?;
    if pushed != target {
        return Err(Error::TypeMismatch { pushed: Box::new(pushed), target: Box::new(target) });
    }
    let mut map = h.map.clone();
    map.insert(c, d)?;
    Ok(PartialAutomorphism { poset: p.clone(), map })
}

/// Forward orbit of `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<Elem>,
    /// Set when the next image would revisit a listed point.
    pub cycle: bool,
}

pub fn orbit(h: &PartialAutomorphism, s: Elem) -> Orbit {
    orbit_of(&h.map, s)
}

pub(crate) fn orbit_of(map: &PartialMap, s: Elem) -> Orbit {
    let mut points = vec![s];
    let mut seen = BTreeSet::from([s]);
    let mut cur = s;
    while let Some(next) = map.get(cur) {
        if !seen.insert(next) {
            return Orbit { points, cycle: true };
        }
        points.push(next);
        cur = next;
    }
    Orbit { points, cycle: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: Elem = 0;
    const Y: Elem = 1;
    const Z: Elem = 2;

    fn chain3() -> Poset {
        Poset::chain(&[X, Y, Z]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let p = chain3();
        assert!(validate_pa(&p, [(X, Y), (Z, Z)]).is_ok());
        assert!(validate_pa(&p, [(X, Z)]).is_ok());
        let two = Poset::chain(&[X, Y]).unwrap();
        assert!(matches!(validate_pa(&two, [(X, Y), (Y, X)]), Err(Error::OrderViolation(..))));
        assert!(matches!(validate_pa(&p, [(X, Y), (Z, Y)]), Err(Error::NotInjective(_))));
        assert!(matches!(validate_pa(&p, [(X, Y), (X, Z)]), Err(Error::NotInjective(_))));
    }

    #[test]
    fn extend_examples() {
        let p = chain3();
        let h = validate_pa(&p, [(X, Y)]).unwrap();
        let ext = extend_by_pair(&h, Y, Z).unwrap();
        assert_eq!(ext.map.pairs().collect::<Vec<_>>(), vec![(X, Y), (Y, Z)]);
        assert!(validate_pa(&p, ext.map.pairs()).is_ok());

        let h = validate_pa(&p, [(X, Y), (Z, Z)]).unwrap();
        assert!(matches!(extend_by_pair(&h, Y, X), Err(Error::TypeMismatch { .. })));
        assert!(validate_pa(&p, [(X, Y), (Z, Z), (Y, X)]).is_err());

        let empty = validate_pa(&p, []).unwrap();
        assert!(extend_by_pair(&empty, Y, Y).is_ok());
        assert!(matches!(extend_by_pair(&h, X, Z), Err(Error::DomainConflict(_))));
    }

    #[test]
    fn orbit_examples() {
        let p = chain3();
        let h = validate_pa(&p, [(X, Y), (Y, Z)]).unwrap();
        assert_eq!(orbit(&h, X), Orbit { points: vec![X, Y, Z], cycle: false });
        let h = validate_pa(&p, [(Z, Z)]).unwrap();
        assert_eq!(orbit(&h, Z), Orbit { points: vec![Z], cycle: true });
        let h = validate_pa(&p, []).unwrap();
        assert_eq!(orbit(&h, X).points, vec![X]);
    }

    #[test]
    fn pa_extension_examples() {
        let base = PaPair::new(chain3(), [(X, Y), (Z, Z)], [(X, Z)]).unwrap();
        assert!(is_pa_extension(&base, &base));

        // enlarge g by one more pair on a fresh point above z
        let bigger = base.poset.with_point(3, &[Z].into(), &BTreeSet::new()).unwrap();
        let g = [(X, Z), (Z, 3)];
        assert!(validate_pa(&bigger, g).is_ok());
        let ext = PaPair::new(bigger, [(X, Y), (Z, Z)], g).unwrap();
        assert!(is_pa_extension(&base, &ext));

        let other = PaPair::new(Poset::antichain(&[X, Y, Z]).unwrap(), [], []).unwrap();
        assert!(!is_pa_extension(&base, &other));
    }

    #[test]
    fn embedding_composition() {
        let base = PaPair::new(chain3(), [(X, Y), (Z, Z)], [(X, Z)]).unwrap();
        let shifted = PaPair::new(
            base.poset.relabel(|e| e + 10).unwrap(),
            [(10, 11), (12, 12)],
            [(10, 12)],
        )
        .unwrap();
        let e1 = PaEmbedding::new(&base, &shifted, [(X, 10), (Y, 11), (Z, 12)].into()).unwrap();
        let e2 = PaEmbedding::new(&shifted, &base, [(10, X), (11, Y), (12, Z)].into()).unwrap();
        let comp = e1.then(&e2).unwrap();
        assert!(comp.is_valid(&base, &base));
        assert_eq!(comp, PaEmbedding::identity(&base));
        // permuted images do not commute
        assert!(PaEmbedding::new(&base, &shifted, [(X, 11), (Y, 10), (Z, 12)].into()).is_err());
    }
}
