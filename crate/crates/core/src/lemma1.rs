//! Staged construction of a free interval at the end of an increasing orbit.
//!
//! Starting from a partial automorphism `f` with `s < f(s)`, every element of
//! the original carrier is visited in id order. Each visit tries to push the
//! orbit of `s` above that element (case 1), failing that to make a later
//! orbit point incomparable to it (case 2), and otherwise leaves the structure
//! alone (case 3). Afterwards one fresh orbit point `a` is appended and a point
//! `b` is placed directly above `a` with `a`'s relations to everything else.
//! The map is then free in `(a, b)`.
//!
//! Orbit searches only add fresh orbit points. The relation of a new orbit
//! point to a range element `w` is forced by the relation of the previous point
//! to `f⁻¹(w)`; to everything else it is free subject to the order axioms.
//! Hence the reachable configurations are determined by the type of the orbit
//! tip over the current carrier, and a breadth-first search over those types
//! is exhaustive.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partial_auto::{check_partial_iso, orbit_of, PartialAutomorphism};
use crate::point_types::{for_each_type, first_type, PointType, TypeConstraints};
use crate::poset::{bit, Elem, Poset};

/// Relation sought between a fixed element and a later orbit point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Target {
    /// The element lies strictly below the orbit point.
    Above,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub m_max: usize,
    pub new_points_max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitWitness {
    /// Orbit length reached, `f^m(s)` being the witnessing point.
    pub m: usize,
    pub extension: PartialAutomorphism,
    pub new_points: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(OrbitWitness),
    /// Every reachable configuration was examined.
    Refuted,
    /// The bounds cut the search before it was exhaustive.
    BoundReached,
}

/// Orbit of `s`, requiring `s < f(s)` (which makes it strictly increasing).
fn increasing_orbit(h: &PartialAutomorphism, s: Elem) -> Result<Vec<Elem>> {
    let fs = h
        .map
        .get(s)
        .ok_or_else(|| Error::HypothesisViolation(format!("f({s}) is undefined")))?;
    if !h.poset.lt(s, fs) {
        return Err(Error::HypothesisViolation(format!("{s} < f({s}) fails")));
    }
    let o = orbit_of(&h.map, s);
    if o.cycle {
        return Err(Error::InternalInvariantBroken("increasing orbit cycles".into()));
    }
    Ok(o.points)
}

/// Constraints that adding `(src, new)` to `h` places on the new point, given
/// the down-set and up-set of `src` over the current carrier: the new point
/// must relate to each range element `w` as `src` relates to `h⁻¹(w)`.
pub(crate) fn image_constraints(h: &PartialAutomorphism, src: PointType) -> TypeConstraints {
    let p = &h.poset;
    let mut c = TypeConstraints::default();
    for (u, w) in h.map.pairs() {
        let (iu, iw) = (p.index_of(u).unwrap(), p.index_of(w).unwrap());
        if src.below & bit(iu) != 0 {
            c.must_below |= bit(iw);
        } else if src.above & bit(iu) != 0 {
            c.must_above |= bit(iw);
        } else {
            c.forbid_below |= bit(iw);
            c.forbid_above |= bit(iw);
        }
    }
    c
}

/// Constraints on the next orbit point: the image constraints plus staying
/// above the tip (inheriting its down-set, shrinking its up-set).
fn successor_constraints(h: &PartialAutomorphism, tip: PointType) -> TypeConstraints {
    let mut c = image_constraints(h, tip);
    c.must_below |= tip.below;
    c.forbid_above |= !tip.above;
    c
}

pub(crate) fn tip_state(p: &Poset, t: Elem) -> PointType {
    let i = p.index_of(t).unwrap();
    PointType { below: p.down_mask(i) | bit(i), above: p.up_mask(i) }
}

fn hits(target: Target, ty: PointType, ai: usize) -> bool {
    match target {
        Target::Above => ty.below & bit(ai) != 0,
        Target::Incomparable => (ty.below | ty.above) & bit(ai) == 0,
    }
}

/// Looks for an extension by fresh orbit points in which `f^m(s)` stands in
/// the `target` relation to `elem`, for the least `m ≥ n` (`n` being the
/// current orbit length) and, at that `m`, the first witness in type order.
pub fn orbit_relation_search(
    h: &PartialAutomorphism,
    s: Elem,
    elem: Elem,
    target: Target,
    bounds: SearchBounds,
) -> Result<SearchOutcome> {
    let p = &h.poset;
    let ai = p.index_of(elem).ok_or(Error::UnknownElement(elem))?;
    let orbit = increasing_orbit(h, s)?;
    let n = orbit.len() - 1;
    let t = *orbit.last().unwrap();
    let rel_now = match p.relation(elem, t) {
        crate::poset::Relation::Less => Some(Target::Above),
        crate::poset::Relation::Incomparable => Some(Target::Incomparable),
        _ => None,
    };
    if rel_now == Some(target) {
        return Ok(SearchOutcome::Found(OrbitWitness { m: n, extension: h.clone(), new_points: vec![] }));
    }
    let max_steps = bounds.new_points_max.min(bounds.m_max.saturating_sub(n));

    // nodes[0] is the current tip; later nodes are fresh orbit points, deduplicated by type
    let mut nodes: Vec<(PointType, usize)> = vec![(tip_state(p, t), 0)];
    let mut seen: HashSet<PointType> = HashSet::new();
    let mut frontier = vec![0usize];
    for _level in 1..=max_steps {
        let mut next = Vec::new();
        for &node in &frontier {
            let c = successor_constraints(h, nodes[node].0);
            let mut found = None;
            for_each_type(p, &c, |ty| {
                if !seen.insert(ty) {
                    return true;
                }
                nodes.push((ty, node));
                if hits(target, ty, ai) {
                    found = Some(nodes.len() - 1);
                    return false;
                }
                next.push(nodes.len() - 1);
                true
            });
            if let Some(mut k) = found {
                let mut path = Vec::new();
                while k != 0 {
                    path.push(nodes[k].0);
                    k = nodes[k].1;
                }
                path.reverse();
                return materialize(h, t, n, &path).map(SearchOutcome::Found);
            }
        }
        if next.is_empty() {
            return Ok(SearchOutcome::Refuted);
        }
        frontier = next;
    }
    Ok(if frontier.is_empty() { SearchOutcome::Refuted } else { SearchOutcome::BoundReached })
}

/// Appends one fresh orbit point per type in `path`, each above the previous tip.
fn materialize(h: &PartialAutomorphism, t: Elem, n: usize, path: &[PointType]) -> Result<OrbitWitness> {
    let base = &h.poset;
    let mut poset = base.clone();
    let mut map = h.map.clone();
    let mut prev = t;
    let mut new_points = Vec::new();
    for ty in path {
        let id = poset.fresh_id();
        let mut below = base.set_of(ty.below);
        below.extend(new_points.iter().copied());
        below.insert(t);
        poset = poset.with_point(id, &below, &base.set_of(ty.above))?;
        map.insert(prev, id)?;
        new_points.push(id);
        prev = id;
    }
    check_partial_iso(&poset, &map)
        .map_err(|e| Error::InternalInvariantBroken(format!("orbit extension invalid: {e}")))?;
    Ok(OrbitWitness { m: n + path.len(), extension: PartialAutomorphism { poset, map }, new_points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lemma1Bounds {
    /// Extra orbit steps allowed beyond the size of the input carrier.
    pub slack: usize,
}

impl Default for Lemma1Bounds {
    fn default() -> Self {
        Lemma1Bounds { slack: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub element: Elem,
    /// 1, 2 or 3.
    pub case: u8,
    /// Orbit length after the stage.
    pub m: usize,
    pub added: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma1Trace {
    pub s: Elem,
    pub initial_n: usize,
    pub stages: Vec<StageRecord>,
    pub n: usize,
    pub a: Elem,
    pub b: Elem,
    pub result: PartialAutomorphism,
}

impl Lemma1Trace {
    /// `s, f(s), …, f^n(s) = a`.
    pub fn orbit(&self) -> Vec<Elem> {
        (0..=self.n).filter_map(|k| self.result.power(self.s, k)).collect()
    }
}

/// Extends `input` so that the map is free in `(a, b)` with `f^n(s) = a`.
pub fn lemma1_extend(input: &PartialAutomorphism, s: Elem, bounds: Lemma1Bounds) -> Result<Lemma1Trace> {
    if !input.poset.contains(s) {
        return Err(Error::UnknownElement(s));
    }
    let initial = increasing_orbit(input, s)?;
    let initial_n = initial.len() - 1;
    let mut cur = input.clone();
    let mut n = initial_n;
    let mut stages = Vec::new();
    let budget = input.poset.len() + bounds.slack;

    for (stage, &elem) in input.poset.elements().iter().enumerate() {
        let sb = SearchBounds { m_max: n + budget, new_points_max: budget };
        let mut record = StageRecord { element: elem, case: 3, m: n, added: vec![] };
        for (case, target) in [(1u8, Target::Above), (2, Target::Incomparable)] {
            match orbit_relation_search(&cur, s, elem, target, sb)? {
                SearchOutcome::Found(w) => {
                    n = w.m;
                    cur = w.extension;
                    record = StageRecord { element: elem, case, m: n, added: w.new_points };
                    break;
                }
                SearchOutcome::Refuted => {}
                SearchOutcome::BoundReached => {
                    return Err(Error::BoundExhausted { stage: stage + 1, element: elem })
                }
            }
        }
        stages.push(record);
    }

    let t = cur.power(s, n).expect("orbit defined up to n");
    let c = successor_constraints(&cur, tip_state(&cur.poset, t));
    let ty = first_type(&cur.poset, &c)
        .ok_or_else(|| Error::InternalInvariantBroken("no one-point extension of the orbit".into()))?;
    let a = cur.poset.fresh_id();
    let mut poset = cur.poset.with_point_masks(a, ty.below, ty.above)?;
    let mut map = cur.map.clone();
    map.insert(t, a)?;
    let b = poset.fresh_id();
    poset = poset.copy_point_above(a, b)?;
    check_partial_iso(&poset, &map)
        .map_err(|e| Error::InternalInvariantBroken(format!("lemma output invalid: {e}")))?;
    let result = PartialAutomorphism { poset, map };
    let n = n + 1;
    if result.power(s, n) != Some(a) || !result.poset.lt(a, b) {
        return Err(Error::InternalInvariantBroken("f^n(s) = a < b fails".into()));
    }
    Ok(Lemma1Trace { s, initial_n, stages, n, a, b, result })
}
