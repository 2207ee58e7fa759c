//! Finite strict partial orders, quantifier-free types and push-forwards.
//!
//! Elements are small integer ids. The order is kept transitively closed as a
//! dense bit matrix over element positions (one `u128` row per element), which
//! caps the carrier at [`MAX_CARRIER`] elements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Elem = u32;
pub(crate) type Mask = u128;

/// Largest carrier a [`Poset`] can hold.
pub const MAX_CARRIER: usize = 128;

#[inline]
pub(crate) fn bit(i: usize) -> Mask {
    1u128 << i
}

pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// How two elements compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl Relation {
    pub fn flip(self) -> Self {
        match self {
            Relation::Less => Relation::Greater,
            Relation::Greater => Relation::Less,
            r => r,
        }
    }
}

#[derive(Clone, Default, Serialize, Deserialize)]
#[serde(try_from = "crate::io::PosetJson", into = "crate::io::PosetJson")]
pub struct Poset {
    ids: Vec<Elem>,
    up: Vec<Mask>,
    down: Vec<Mask>,
    labels: BTreeMap<Elem, String>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.ids)
            .field("covers", &self.covers())
            .finish()
    }
}

impl Poset {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a poset from any acyclic generating relation, closing it transitively.
    pub fn new(
        elements: impl IntoIterator<Item = Elem>,
        relation: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self> {
        let mut ids: Vec<Elem> = elements.into_iter().collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0]));
        }
        if ids.len() > MAX_CARRIER {
            return Err(Error::SizeCap { requested: ids.len(), cap: MAX_CARRIER });
        }
        let n = ids.len();
        let mut up = vec![0 as Mask; n];
        for (a, b) in relation {
            let i = ids.binary_search(&a).map_err(|_| Error::UnknownElement(a))?;
            let j = ids.binary_search(&b).map_err(|_| Error::UnknownElement(b))?;
            up[i] |= bit(j);
        }
        close_rows(&mut up);
        if let Some(i) = (0..n).find(|&i| up[i] & bit(i) != 0) {
            return Err(Error::CycleDetected(ids[i]));
        }
        let down = transpose(&up);
        Ok(Poset { ids, up, down, labels: BTreeMap::new() })
    }

    pub fn chain(elements: &[Elem]) -> Result<Self> {
        Self::new(elements.iter().copied(), elements.windows(2).map(|w| (w[0], w[1])))
    }

    pub fn antichain(elements: &[Elem]) -> Result<Self> {
        Self::new(elements.iter().copied(), std::iter::empty())
    }

    pub fn with_labels(mut self, labels: impl IntoIterator<Item = (Elem, String)>) -> Self {
        for (e, l) in labels {
            if self.contains(e) {
                self.labels.insert(e, l);
            }
        }
        self
    }

    pub fn set_label(&mut self, e: Elem, label: impl Into<String>) {
        if self.contains(e) {
            self.labels.insert(e, label.into());
        }
    }

    pub fn label(&self, e: Elem) -> Option<&str> {
        self.labels.get(&e).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<Elem, String> {
        &self.labels
    }

    /// Label if present, otherwise the numeric id.
    pub fn name(&self, e: Elem) -> String {
        self.label(e).map(str::to_owned).unwrap_or_else(|| e.to_string())
    }

    /// Looks up an element by label.
    pub fn by_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().find(|(_, l)| l.as_str() == label).map(|(&e, _)| e)
    }

    pub fn elements(&self) -> &[Elem] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.index_of(e).is_some()
    }

    pub(crate) fn index_of(&self, e: Elem) -> Option<usize> {
        self.ids.binary_search(&e).ok()
    }

    pub(crate) fn id(&self, i: usize) -> Elem {
        self.ids[i]
    }

    pub(crate) fn up_mask(&self, i: usize) -> Mask {
        self.up[i]
    }

    pub(crate) fn down_mask(&self, i: usize) -> Mask {
        self.down[i]
    }


    pub(crate) fn mask_of<'a>(&self, set: impl IntoIterator<Item = &'a Elem>) -> Result<Mask> {
        let mut m = 0;
        for &e in set {
            m |= bit(self.index_of(e).ok_or(Error::UnknownElement(e))?);
        }
        Ok(m)
    }

    pub(crate) fn set_of(&self, m: Mask) -> BTreeSet<Elem> {
        bits(m).map(|i| self.ids[i]).collect()
    }

    /// Strict order test; false when either element is absent.
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.up[i] & bit(j) != 0,
            _ => false,
        }
    }

    pub fn incomparable(&self, a: Elem, b: Elem) -> bool {
        a != b && !self.lt(a, b) && !self.lt(b, a)
    }

    pub fn relation(&self, a: Elem, b: Elem) -> Relation {
        if a == b {
            Relation::Equal
        } else if self.lt(a, b) {
            Relation::Less
        } else if self.lt(b, a) {
            Relation::Greater
        } else {
            Relation::Incomparable
        }
    }

    /// All pairs of the (closed) strict order, sorted.
    pub fn relations(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for (i, &a) in self.ids.iter().enumerate() {
            out.extend(bits(self.up[i]).map(|j| (a, self.ids[j])));
        }
        out
    }

    /// Transitive reduction (Hasse diagram edges).
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for (i, &a) in self.ids.iter().enumerate() {
            let mut covers = self.up[i];
            for j in bits(self.up[i]) {
                covers &= !self.up[j];
            }
            out.extend(bits(covers).map(|j| (a, self.ids[j])));
        }
        out
    }

    pub fn below(&self, e: Elem) -> BTreeSet<Elem> {
        self.index_of(e).map(|i| self.set_of(self.down[i])).unwrap_or_default()
    }

    pub fn above(&self, e: Elem) -> BTreeSet<Elem> {
        self.index_of(e).map(|i| self.set_of(self.up[i])).unwrap_or_default()
    }

    /// Number of elements comparable to `e`.
    pub fn comparability_degree(&self, e: Elem) -> usize {
        self.index_of(e)
            .map(|i| (self.up[i] | self.down[i]).count_ones() as usize)
            .unwrap_or(0)
    }

    /// Next unused id.
    pub fn fresh_id(&self) -> Elem {
        self.ids.last().map_or(0, |&m| m + 1)
    }

    /// The sub-poset induced on `subset`.
    pub fn induced(&self, subset: &BTreeSet<Elem>) -> Result<Poset> {
        let pairs: Vec<_> = self
            .relations()
            .into_iter()
            .filter(|(a, b)| subset.contains(a) && subset.contains(b))
            .collect();
        for &e in subset {
            if !self.contains(e) {
                return Err(Error::UnknownElement(e));
            }
        }
        let mut p = Poset::new(subset.iter().copied(), pairs)?;
        p.labels = self
            .labels
            .iter()
            .filter(|(e, _)| subset.contains(e))
            .map(|(&e, l)| (e, l.clone()))
            .collect();
        Ok(p)
    }

    /// Adds `id` strictly above `below` and strictly below `above`, closing
    /// transitively. Fails unless the result extends `self`.
    pub fn with_point(
        &self,
        id: Elem,
        below: &BTreeSet<Elem>,
        above: &BTreeSet<Elem>,
    ) -> Result<Poset> {
        if self.contains(id) {
            return Err(Error::DuplicateElement(id));
        }
        let dm = self.mask_of(below)?;
        let um = self.mask_of(above)?;
        self.with_point_masks(id, dm, um)
    }

    pub(crate) fn with_point_masks(&self, id: Elem, below: Mask, above: Mask) -> Result<Poset> {
        if self.len() >= MAX_CARRIER {
            return Err(Error::SizeCap { requested: self.len() + 1, cap: MAX_CARRIER });
        }
        // close the requested sets inside self
        let mut d = below;
        for i in bits(below) {
            d |= self.down[i];
        }
        let mut u = above;
        for i in bits(above) {
            u |= self.up[i];
        }
        if d & u != 0 {
            return Err(Error::CycleDetected(id));
        }
        for i in bits(d) {
            if u & !self.up[i] != 0 {
                return Err(Error::PreconditionViolation(format!(
                    "adding {id} would force new relations above {}",
                    self.ids[i]
                )));
            }
        }
        Ok(self.insert_closed(id, d, u))
    }

    /// Inserts an element whose down/up masks are already closed and compatible.
    fn insert_closed(&self, id: Elem, d: Mask, u: Mask) -> Poset {
        let pos = self.ids.partition_point(|&e| e < id);
        let spread = |m: Mask| -> Mask {
            let low = m & (bit(pos) - 1);
            let high = (m >> pos).checked_shl(pos as u32 + 1).unwrap_or(0);
            low | high
        };
        let mut ids = self.ids.clone();
        ids.insert(pos, id);
        let mut up: Vec<Mask> = self.up.iter().map(|&m| spread(m)).collect();
        let mut down: Vec<Mask> = self.down.iter().map(|&m| spread(m)).collect();
        let (sd, su) = (spread(d), spread(u));
        up.insert(pos, su);
        down.insert(pos, sd);
        for j in bits(sd) {
            up[j] |= bit(pos);
        }
        for j in bits(su) {
            down[j] |= bit(pos);
        }
        Poset { ids, up, down, labels: self.labels.clone() }
    }

    /// Adds `id` with `src < id` and the same relations as `src` to every other element.
    pub fn copy_point_above(&self, src: Elem, id: Elem) -> Result<Poset> {
        let i = self.index_of(src).ok_or(Error::UnknownElement(src))?;
        if self.contains(id) {
            return Err(Error::DuplicateElement(id));
        }
        self.with_point_masks(id, self.down[i] | bit(i), self.up[i])
    }

    /// Renames elements through `rename`, which must be injective on the carrier.
    pub fn relabel(&self, rename: impl Fn(Elem) -> Elem) -> Result<Poset> {
        let mut p = Poset::new(
            self.ids.iter().map(|&e| rename(e)),
            self.relations().into_iter().map(|(a, b)| (rename(a), rename(b))),
        )?;
        p.labels = self.labels.iter().map(|(&e, l)| (rename(e), l.clone())).collect();
        Ok(p)
    }
}

fn close_rows(up: &mut [Mask]) {
    let n = up.len();
    for k in 0..n {
        let row_k = up[k];
        for row in up.iter_mut() {
            if *row & bit(k) != 0 {
                *row |= row_k;
            }
        }
    }
}

fn transpose(up: &[Mask]) -> Vec<Mask> {
    let mut down = vec![0; up.len()];
    for (i, &row) in up.iter().enumerate() {
        for j in bits(row) {
            down[j] |= bit(i);
        }
    }
    down
}

/// True iff `small`'s carrier is contained in `big`'s and `big` induces `small`'s order.
pub fn is_extension(small: &Poset, big: &Poset) -> bool {
    small.ids.iter().all(|&a| big.contains(a))
        && small
            .ids
            .iter()
            .all(|&a| small.ids.iter().all(|&b| small.lt(a, b) == big.lt(a, b)))
}

/// An injective map that preserves and reflects the strict order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: Poset,
    target: Poset,
    map: BTreeMap<Elem, Elem>,
}

impl Embedding {
    pub fn new(source: Poset, target: Poset, map: BTreeMap<Elem, Elem>) -> Result<Self> {
        check_embedding(&source, &target, &map)?;
        Ok(Embedding { source, target, map })
    }

    pub fn identity(p: &Poset) -> Self {
        let map = p.elements().iter().map(|&e| (e, e)).collect();
        Embedding { source: p.clone(), target: p.clone(), map }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn map(&self) -> &BTreeMap<Elem, Elem> {
        &self.map
    }

    pub fn apply(&self, e: Elem) -> Option<Elem> {
        self.map.get(&e).copied()
    }

    pub fn inverse(&self) -> Embedding {
        let rng: BTreeSet<Elem> = self.map.values().copied().collect();
        let image = self.target.induced(&rng).expect("image of an embedding");
        Embedding {
            source: image,
            target: self.source.clone(),
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }
}

/// Checks that `map` is total on `source`, injective, and order preserving and reflecting.
pub(crate) fn check_embedding(
    source: &Poset,
    target: &Poset,
    map: &BTreeMap<Elem, Elem>,
) -> Result<()> {
    for &a in source.elements() {
        let fa = *map.get(&a).ok_or(Error::UnknownElement(a))?;
        if !target.contains(fa) {
            return Err(Error::UnknownElement(fa));
        }
    }
    if map.len() != source.len() {
        let extra = map.keys().find(|k| !source.contains(**k)).copied().unwrap_or(0);
        return Err(Error::UnknownElement(extra));
    }
    let mut seen = BTreeSet::new();
    for (&a, &b) in map {
        if !seen.insert(b) {
            return Err(Error::NotInjective(a));
        }
    }
    for (&a, &fa) in map {
        for (&b, &fb) in map {
            if source.lt(a, b) != target.lt(fa, fb) {
                return Err(Error::OrderViolation(a, b));
            }
        }
    }
    Ok(())
}

/// Quantifier-free type of a point over a base set: which base elements lie
/// below it, above it, or coincide with it.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QfType {
    pub base: BTreeSet<Elem>,
    /// `a` with `x > a`.
    pub greater_than: BTreeSet<Elem>,
    /// `a` with `x < a`.
    pub less_than: BTreeSet<Elem>,
    pub equal: Option<Elem>,
}

impl QfType {
    /// Checks the internal consistency conditions against the ambient poset.
    pub fn is_coherent(&self, ambient: &Poset) -> bool {
        let sub = |s: &BTreeSet<Elem>| s.is_subset(&self.base);
        if !sub(&self.greater_than) || !sub(&self.less_than) {
            return false;
        }
        if !self.greater_than.is_disjoint(&self.less_than) {
            return false;
        }
        if let Some(a) = self.equal {
            if !self.base.contains(&a)
                || self.greater_than.contains(&a)
                || self.less_than.contains(&a)
            {
                return false;
            }
            return self
                .base
                .iter()
                .all(|&b| (ambient.lt(b, a) == self.greater_than.contains(&b))
                    && (ambient.lt(a, b) == self.less_than.contains(&b)));
        }
        let down_ok = self.greater_than.iter().all(|&a| {
            self.base.iter().all(|&b| !ambient.lt(b, a) || self.greater_than.contains(&b))
        });
        let up_ok = self.less_than.iter().all(|&a| {
            self.base.iter().all(|&b| !ambient.lt(a, b) || self.less_than.contains(&b))
        });
        down_ok && up_ok
    }
}

/// Type of `c` over `subset` in `p`.
pub fn qf_type(c: Elem, subset: &BTreeSet<Elem>, p: &Poset) -> Result<QfType> {
    if !p.contains(c) {
        return Err(Error::UnknownElement(c));
    }
    let mut t = QfType { base: subset.clone(), ..QfType::default() };
    for &a in subset {
        match p.relation(c, a) {
            Relation::Greater => {
                t.greater_than.insert(a);
            }
            Relation::Less => {
                t.less_than.insert(a);
            }
            Relation::Equal => t.equal = Some(a),
            Relation::Incomparable if !p.contains(a) => return Err(Error::UnknownElement(a)),
            Relation::Incomparable => {}
        }
    }
    Ok(t)
}

/// Push-forward of `p` along an embedding whose source contains the type's base.
pub fn push_forward(p: &QfType, alpha: &Embedding) -> Result<QfType> {
    push_forward_map(p, &alpha.map, &alpha.source, &alpha.target)
}

/// Push-forward along a bare map; checks that it restricts to an isomorphism
/// from `p.base` (ordered by `src`) onto its image (ordered by `dst`).
pub(crate) fn push_forward_map(
    p: &QfType,
    map: &BTreeMap<Elem, Elem>,
    src: &Poset,
    dst: &Poset,
) -> Result<QfType> {
    let img = |a: Elem| {
        map.get(&a)
            .copied()
            .ok_or_else(|| Error::NotIsomorphism(format!("{a} is not in the map's domain")))
    };
    let mut seen = BTreeSet::new();
    for &a in &p.base {
        let fa = img(a)?;
        if !seen.insert(fa) {
            return Err(Error::NotIsomorphism(format!("{a} collides at {fa}")));
        }
        for &b in &p.base {
            if src.lt(a, b) != dst.lt(fa, img(b)?) {
                return Err(Error::NotIsomorphism(format!("order between {a} and {b}")));
            }
        }
    }
    let map_set = |s: &BTreeSet<Elem>| -> Result<BTreeSet<Elem>> { s.iter().map(|&a| img(a)).collect() };
    Ok(QfType {
        base: seen,
        greater_than: map_set(&p.greater_than)?,
        less_than: map_set(&p.less_than)?,
        equal: p.equal.map(img).transpose()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[Elem]) -> BTreeSet<Elem> {
        v.iter().copied().collect()
    }

    #[test]
    fn closure_of_chain() {
        let p = Poset::new([0, 1, 2], [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.relations(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn singleton_and_cycle() {
        assert!(Poset::new([7], []).unwrap().relations().is_empty());
        assert!(matches!(Poset::new([0, 1], [(0, 1), (1, 0)]), Err(Error::CycleDetected(_))));
        assert!(matches!(Poset::new([0], [(0, 3)]), Err(Error::UnknownElement(3))));
        assert!(matches!(Poset::new([0, 0], []), Err(Error::DuplicateElement(0))));
    }

    #[test]
    fn qf_type_examples() {
        let p = Poset::chain(&[0, 1, 2]).unwrap();
        let t = qf_type(1, &set(&[0, 2]), &p).unwrap();
        assert_eq!(t.greater_than, set(&[0]));
        assert_eq!(t.less_than, set(&[2]));
        assert_eq!(t.equal, None);

        let t = qf_type(0, &set(&[0]), &p).unwrap();
        assert_eq!(t.equal, Some(0));
        assert!(t.greater_than.is_empty() && t.less_than.is_empty());
        assert!(t.is_coherent(&p));

        let anti = Poset::antichain(&[0, 1]).unwrap();
        let t = qf_type(0, &set(&[1]), &anti).unwrap();
        assert!(t.greater_than.is_empty() && t.less_than.is_empty() && t.equal.is_none());
        assert!(matches!(qf_type(9, &set(&[]), &anti), Err(Error::UnknownElement(9))));
    }

    #[test]
    fn push_forward_examples() {
        let p = Poset::chain(&[0, 1]).unwrap();
        let single_src = p.induced(&set(&[0])).unwrap();
        let single_dst = p.induced(&set(&[1])).unwrap();
        let alpha = Embedding::new(single_src, single_dst, [(0, 1)].into()).unwrap();

        let ty = QfType { base: set(&[0]), greater_than: set(&[0]), ..Default::default() };
        let q = push_forward(&ty, &alpha).unwrap();
        assert_eq!(q.base, set(&[1]));
        assert_eq!(q.greater_than, set(&[1]));

        let ty = QfType { base: set(&[0]), equal: Some(0), ..Default::default() };
        assert_eq!(push_forward(&ty, &alpha).unwrap().equal, Some(1));
    }

    #[test]
    fn push_forward_rejects_non_isomorphism() {
        let chain = Poset::chain(&[0, 1]).unwrap();
        let anti = Poset::antichain(&[0, 1]).unwrap();
        let ty = qf_type(0, &set(&[0, 1]), &chain).unwrap();
        let map: BTreeMap<Elem, Elem> = [(0, 0), (1, 1)].into();
        assert!(matches!(
            push_forward_map(&ty, &map, &chain, &anti),
            Err(Error::NotIsomorphism(_))
        ));
    }

    #[test]
    fn fact_one_usage_of_push_forward() {
        // chain x<y<z with g = {(x,y)}: qf(y,{x}) pushed by g equals qf(z,{y})
        let p = Poset::chain(&[0, 1, 2]).unwrap();
        let map: BTreeMap<Elem, Elem> = [(0, 1)].into();
        let lhs = push_forward_map(&qf_type(1, &set(&[0]), &p).unwrap(), &map, &p, &p).unwrap();
        assert_eq!(lhs, qf_type(2, &set(&[1]), &p).unwrap());
    }

    #[test]
    fn extension_examples() {
        let two = Poset::chain(&[0, 1]).unwrap();
        let three = Poset::chain(&[0, 1, 2]).unwrap();
        assert!(is_extension(&two, &three));
        assert!(!is_extension(&Poset::antichain(&[0, 1]).unwrap(), &two));
        assert!(is_extension(&Poset::empty(), &three));
    }

    #[test]
    fn point_insertion() {
        let p = Poset::chain(&[0, 2]).unwrap();
        let q = p.with_point(1, &set(&[0]), &set(&[2])).unwrap();
        assert!(q.lt(0, 1) && q.lt(1, 2) && q.lt(0, 2));
        assert!(is_extension(&p, &q));
        // forcing 2 < 0 is refused
        assert!(p.with_point(5, &set(&[2]), &set(&[0])).is_err());
        let anti = Poset::antichain(&[0, 1]).unwrap();
        assert!(anti.with_point(5, &set(&[0]), &set(&[1])).is_err());

        let c = Poset::chain(&[0, 1, 2]).unwrap().copy_point_above(1, 9).unwrap();
        assert!(c.lt(1, 9) && c.lt(0, 9) && c.lt(9, 2));
        assert_eq!(c.elements(), &[0, 1, 2, 9]);
    }
}
