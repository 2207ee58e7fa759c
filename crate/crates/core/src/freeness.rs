//! Freeness of a partial automorphism in an interval `(a, b)`: any chain
//! inserted strictly between `a` and `b`, in any extension, can be appended
//! to the map starting from `a`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partial_auto::{check_partial_iso, PartialAutomorphism};
use crate::point_types::{for_each_type, TypeConstraints};
use crate::poset::{bit, is_extension, push_forward_map, qf_type, Elem, Poset};

fn chain_pairs(a: Elem, chain: &[Elem]) -> impl Iterator<Item = (Elem, Elem)> + '_ {
    std::iter::once(a).chain(chain.iter().copied()).zip(chain.iter().copied())
}

/// Does `B.map ∪ {(a,c1),(c1,c2),…}` stay a partial automorphism over `C`?
pub fn free_check_instance(
    base: &PartialAutomorphism,
    a: Elem,
    b: Elem,
    ext: &Poset,
    chain: &[Elem],
) -> Result<bool> {
    if !is_extension(&base.poset, ext) {
        return Err(Error::PreconditionViolation("C does not extend B".into()));
    }
    let mut prev = a;
    for &c in chain.iter().chain([&b]) {
        if !ext.lt(prev, c) {
            return Err(Error::PreconditionViolation(format!("{prev} < {c} fails")));
        }
        prev = c;
    }
    Ok(appended_is_valid(base, a, ext, chain))
}

fn appended_is_valid(base: &PartialAutomorphism, a: Elem, ext: &Poset, chain: &[Elem]) -> bool {
    let mut map = base.map.clone();
    for (x, y) in chain_pairs(a, chain) {
        if map.insert(x, y).is_err() {
            return false;
        }
    }
    check_partial_iso(ext, &map).is_ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FreeVerdict {
    Pass { extensions: usize, chains: usize },
    Counterexample { extension: Vec<(Elem, Elem)>, elements: Vec<Elem>, chain: Vec<Elem> },
}

impl FreeVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, FreeVerdict::Pass { .. })
    }
}

/// Exhaustively checks freeness over every extension by at most `k_points`
/// new points (up to isomorphism over `B`) and every chain of at most
/// `l_chain` points inside `(a, b)`.
///
/// New points outside `(a, b)` never occur in a chain and leave the checked
/// map untouched, so only extensions whose new points lie in `(a, b)` are
/// generated.
pub fn free_verify_bounded(
    base: &PartialAutomorphism,
    a: Elem,
    b: Elem,
    k_points: usize,
    l_chain: usize,
) -> Result<FreeVerdict> {
    let p = &base.poset;
    if !p.lt(a, b) {
        return Err(Error::PreconditionViolation(format!("{a} < {b} fails in B")));
    }
    let mut layer = vec![p.clone()];
    let mut seen = BTreeSet::new();
    let (mut n_ext, mut n_chains) = (0, 0);
    for depth in 0..=k_points {
        for ext in &layer {
            n_ext += 1;
            let inside: Vec<Elem> =
                ext.elements().iter().copied().filter(|&c| ext.lt(a, c) && ext.lt(c, b)).collect();
            let mut chain = Vec::new();
            if let Some(bad) = first_bad_chain(base, a, ext, &inside, l_chain, &mut chain, &mut n_chains) {
                return Ok(FreeVerdict::Counterexample {
                    extension: ext.relations(),
                    elements: ext.elements().to_vec(),
                    chain: bad,
                });
            }
        }
        if depth == k_points {
            break;
        }
        let mut next = Vec::new();
        for ext in &layer {
            let (ia, ib) = (ext.index_of(a).unwrap(), ext.index_of(b).unwrap());
            let c = TypeConstraints { must_below: bit(ia), must_above: bit(ib), ..Default::default() };
            let id = ext.fresh_id().max(p.fresh_id());
            let mut found = Vec::new();
            for_each_type(ext, &c, |t| {
                found.push(t);
                true
            });
            for t in found {
                let q = ext.with_point_masks(id, t.below, t.above)?;
                if seen.insert(canonical_key(p, &q)) {
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    Ok(FreeVerdict::Pass { extensions: n_ext, chains: n_chains })
}

fn first_bad_chain(
    base: &PartialAutomorphism,
    a: Elem,
    ext: &Poset,
    inside: &[Elem],
    l_chain: usize,
    chain: &mut Vec<Elem>,
    counter: &mut usize,
) -> Option<Vec<Elem>> {
    if !chain.is_empty() {
        *counter += 1;
        if !appended_is_valid(base, a, ext, chain) {
            return Some(chain.clone());
        }
    }
    if chain.len() == l_chain {
        return None;
    }
    for &c in inside {
        if chain.last().map_or(true, |&last| ext.lt(last, c)) {
            chain.push(c);
            let r = first_bad_chain(base, a, ext, inside, l_chain, chain, counter);
            chain.pop();
            if r.is_some() {
                return r;
            }
        }
    }
    None
}

/// Isomorphism-over-`base` invariant of an extension: the relation matrix
/// with new points permuted to the lexicographically least arrangement.
fn canonical_key(base: &Poset, ext: &Poset) -> Vec<u8> {
    let old: Vec<Elem> = base.elements().to_vec();
    let new: Vec<Elem> = ext.elements().iter().copied().filter(|e| !base.contains(*e)).collect();
    let mut best: Option<Vec<u8>> = None;
    for perm in permutations(new.len()) {
        let order: Vec<Elem> = old.iter().copied().chain(perm.iter().map(|&i| new[i])).collect();
        let key: Vec<u8> = order
            .iter()
            .flat_map(|&x| order.iter().map(move |&y| (x, y)))
            .map(|(x, y)| ext.lt(x, y) as u8)
            .collect();
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap_or_default()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Result of checking both parts of the midpoint claim for one point `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    /// `c` and `a` have the same type over `B \ {a}`.
    pub same_type_as_a: bool,
    /// The type of `c` over `dom(f_B)` pushed by `f_B` is its type over `rng(f_B)`.
    pub push_forward_matches: bool,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        self.same_type_as_a && self.push_forward_matches
    }
}

pub fn claim_check(
    base: &PartialAutomorphism,
    a: Elem,
    b: Elem,
    ext: &Poset,
    c: Elem,
) -> Result<ClaimReport> {
    if !is_extension(&base.poset, ext) {
        return Err(Error::PreconditionViolation("C does not extend B".into()));
    }
    if !ext.contains(c) || !ext.lt(a, c) || !ext.lt(c, b) {
        return Err(Error::PreconditionViolation(format!("{a} < {c} < {b} fails in C")));
    }
    let mut rest: BTreeSet<Elem> = base.poset.elements().iter().copied().collect();
    rest.remove(&a);
    let same_type_as_a = {
        let tc = qf_type(c, &rest, ext)?;
        let ta = qf_type(a, &rest, ext)?;
        tc.greater_than == ta.greater_than && tc.less_than == ta.less_than && tc.equal == ta.equal
    };
    let pushed = push_forward_map(
        &qf_type(c, &base.map.domain(), ext)?,
        base.map.as_map(),
        ext,
        ext,
    )?;
    let push_forward_matches = pushed == qf_type(c, &base.map.range(), ext)?;
    Ok(ClaimReport { same_type_as_a, push_forward_matches })
}
