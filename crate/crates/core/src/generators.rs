//! Finite approximations of the random poset and seeded random extensions
//! used to build test corpora.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::freeness::permutations;
use crate::partial_auto::{extend_by_pair, Generator, PaPair, PartialAutomorphism, PartialMap};
use crate::point_types::{all_types, TypeConstraints};
use crate::poset::{qf_type, Elem, Poset, QfType, MAX_CARRIER};

/// Every poset on `{0, …, n-1}` up to isomorphism.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let mut labelled = vec![Poset::empty()];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &labelled {
            for t in all_types(p, &TypeConstraints::default()) {
                next.push(p.with_point_masks(k as Elem, t.below, t.above).expect("realizable type"));
            }
        }
        labelled = next;
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    labelled
        .into_iter()
        .filter(|p| {
            let key = perms
                .iter()
                .map(|perm| {
                    let mut m: u64 = 0;
                    for i in 0..n {
                        for j in 0..n {
                            if p.lt(perm[i] as Elem, perm[j] as Elem) {
                                m |= 1 << (i * n + j);
                            }
                        }
                    }
                    m
                })
                .min()
                .unwrap_or(0);
            seen.insert(key)
        })
        .collect()
}

/// Every partial automorphism of `p` (exhaustive; meant for small carriers).
pub fn all_partial_automorphisms(p: &Poset) -> Vec<PartialAutomorphism> {
    let elems = p.elements().to_vec();
    let mut out = Vec::new();
    fn rec(
        p: &Poset,
        elems: &[Elem],
        i: usize,
        cur: &mut PartialMap,
        out: &mut Vec<PartialAutomorphism>,
    ) {
        if i == elems.len() {
            out.push(PartialAutomorphism { poset: p.clone(), map: cur.clone() });
            return;
        }
        rec(p, elems, i + 1, cur, out);
        let a = elems[i];
        for &b in elems {
            if cur.in_range(b) {
                continue;
            }
            let ok = cur.pairs().all(|(x, fx)| p.lt(x, a) == p.lt(fx, b) && p.lt(a, x) == p.lt(b, fx));
            if ok {
                let mut next = cur.clone();
                next.insert(a, b).expect("fresh domain and range");
                rec(p, elems, i + 1, &mut next, out);
            }
        }
    }
    rec(p, &elems, 0, &mut PartialMap::new(), &mut out);
    out
}

/// All types over `subset` realized by a new point in some one-point
/// extension of `p` (equality types excluded).
pub fn one_point_types(p: &Poset, subset: &BTreeSet<Elem>) -> Result<Vec<QfType>> {
    let sub = p.induced(subset)?;
    Ok(all_types(&sub, &TypeConstraints::default())
        .into_iter()
        .map(|t| QfType {
            base: subset.clone(),
            greater_than: sub.set_of(t.below),
            less_than: sub.set_of(t.above),
            equal: None,
        })
        .collect())
}

fn subsets_up_to(elems: &[Elem], k: usize) -> Vec<BTreeSet<Elem>> {
    let mut out = vec![BTreeSet::new()];
    for &e in elems {
        let grown: Vec<_> = out
            .iter()
            .filter(|s| s.len() < k)
            .map(|s| {
                let mut s = s.clone();
                s.insert(e);
                s
            })
            .collect();
        out.extend(grown);
    }
    out
}

/// Whether some element of `p` realizes the (non-equality) type `t`.
pub fn is_realized(p: &Poset, t: &QfType) -> bool {
    p.elements().iter().any(|&e| {
        !t.base.contains(&e)
            && qf_type(e, &t.base, p).is_ok_and(|q| q.greater_than == t.greater_than && q.less_than == t.less_than)
    })
}

/// Adds witnesses so that every realizable type over every subset of at most
/// `k` elements of the original `p` is realized.
pub fn saturate(p: &Poset, k: usize) -> Result<Poset> {
    if k == 0 {
        return Err(Error::PreconditionViolation("saturation level must be at least 1".into()));
    }
    let original = p.elements().to_vec();
    let mut out = p.clone();
    for s in subsets_up_to(&original, k.min(original.len())) {
        for t in one_point_types(p, &s)? {
            if is_realized(&out, &t) {
                continue;
            }
            if out.len() >= MAX_CARRIER {
                return Err(Error::SizeCap { requested: out.len() + 1, cap: MAX_CARRIER });
            }
            let d = out.mask_of(&t.greater_than)?;
            let u = out.mask_of(&t.less_than)?;
            let id = out.fresh_id();
            out = out.with_point_masks(id, d, u)?;
        }
    }
    Ok(out)
}

/// Post-check for [`saturate`]: every type over every small subset of `original` is realized in `sat`.
pub fn is_saturated_over(original: &Poset, sat: &Poset, k: usize) -> bool {
    subsets_up_to(original.elements(), k.min(original.len())).iter().all(|s| {
        one_point_types(original, s).is_ok_and(|ts| ts.iter().all(|t| is_realized(sat, t)))
    })
}

/// Seeded random legal moves: add a point with a random realizable type, or
/// add an `f`- or `g`-pair accepted by [`extend_by_pair`].
pub fn random_pa_extension(p: &PaPair, steps: usize, seed: u64) -> PaPair {
    random_pa_extension_capped(p, steps, seed, usize::MAX)
}

/// Like [`random_pa_extension`], never growing the carrier beyond `max_points`.
pub fn random_pa_extension_capped(p: &PaPair, steps: usize, seed: u64, max_points: usize) -> PaPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = p.clone();
    let cap = max_points.min(MAX_CARRIER);
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 => {
                if cur.poset.len() >= cap {
                    continue;
                }
                let types = all_types(&cur.poset, &TypeConstraints::default());
                if let Some(t) = types.choose(&mut rng) {
                    let id = cur.poset.fresh_id();
                    cur.poset = cur.poset.with_point_masks(id, t.below, t.above).expect("realizable");
                }
            }
            k => {
                let which = if k == 1 { Generator::F } else { Generator::G };
                let h = cur.component(which);
                let legal: Vec<(Elem, Elem)> = legal_pairs(&h);
                if let Some(&(c, d)) = legal.choose(&mut rng) {
                    cur.map_mut(which).insert(c, d).expect("legal pair");
                }
            }
        }
    }
    cur
}

/// Every `(c, d)` that [`extend_by_pair`] accepts for `h`.
pub fn legal_pairs(h: &PartialAutomorphism) -> Vec<(Elem, Elem)> {
    let elems = h.poset.elements();
    let mut out = Vec::new();
    for &c in elems.iter().filter(|&&c| !h.map.in_domain(c)) {
        for &d in elems.iter().filter(|&&d| !h.map.in_range(d)) {
            if extend_by_pair(h, c, d).is_ok() {
                out.push((c, d));
            }
        }
    }
    out
}

/// A seeded random pair on at most `max_points` elements.
pub fn random_pa_pair(max_points: usize, seed: u64) -> PaPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_9a17);
    let size = rng.gen_range(0..=max_points);
    let mut poset = Poset::empty();
    for k in 0..size {
        let types = all_types(&poset, &TypeConstraints::default());
        let t = types.choose(&mut rng).copied().expect("the empty type always exists");
        poset = poset.with_point_masks(k as Elem, t.below, t.above).expect("realizable");
    }
    let start = PaPair { poset, f: PartialMap::new(), g: PartialMap::new() };
    random_pa_extension_capped(&start, 2 * size + 2, rng.gen(), size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial_auto::is_pa_extension;
    use crate::witness::base_pair;

    #[test]
    fn poset_counts_up_to_iso() {
        let counts: Vec<usize> = (0..=5).map(|n| all_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn one_point_type_examples() {
        let one = Poset::chain(&[0]).unwrap();
        assert_eq!(one_point_types(&one, &[0].into()).unwrap().len(), 3);
        let two = Poset::chain(&[0, 1]).unwrap();
        assert_eq!(one_point_types(&two, &[0, 1].into()).unwrap().len(), 6);
        assert_eq!(one_point_types(&two, &BTreeSet::new()).unwrap().len(), 1);
    }

    #[test]
    fn saturate_examples() {
        let one = Poset::chain(&[0]).unwrap();
        let s = saturate(&one, 1).unwrap();
        assert!(s.len() >= 4);
        assert!(is_saturated_over(&one, &s, 1));
        let two = Poset::antichain(&[0, 1]).unwrap();
        assert_eq!(saturate(&two, 5).unwrap(), saturate(&two, 2).unwrap());
        assert!(saturate(&two, 0).is_err());
    }

    #[test]
    fn random_extension_contract() {
        let base = base_pair();
        assert_eq!(random_pa_extension(&base, 0, 3), base);
        for seed in 0..20 {
            let out = random_pa_extension(&base, 6, seed);
            assert!(is_pa_extension(&base, &out));
            assert_eq!(out, random_pa_extension(&base, 6, seed));
        }
        let capped = random_pa_extension_capped(&base, 30, 1, 5);
        assert!(capped.poset.len() <= 5);
    }

    #[test]
    fn partial_automorphisms_of_two_chain() {
        // ∅, (0,0), (1,1), (0,1), (1,0), {(0,0),(1,1)}
        let p = Poset::chain(&[0, 1]).unwrap();
        assert_eq!(all_partial_automorphisms(&p).len(), 6);
    }
}
