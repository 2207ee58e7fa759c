//! Backtracking search for order embeddings.

use std::collections::BTreeMap;

use crate::poset::{Elem, Embedding, Poset};

/// All embeddings of `a` into `b`, up to `limit` of them.
///
/// Elements of `a` are placed in order of decreasing comparability degree;
/// a candidate image must agree with every placed element on the relation.
pub fn find_embeddings(a: &Poset, b: &Poset, limit: Option<usize>) -> Vec<Embedding> {
    let mut order: Vec<Elem> = a.elements().to_vec();
    order.sort_by_key(|&e| (std::cmp::Reverse(a.comparability_degree(e)), e));
    let mut out = Vec::new();
    let mut assigned: Vec<(Elem, Elem)> = Vec::with_capacity(order.len());
    let cap = limit.unwrap_or(usize::MAX);
    if cap == 0 || a.len() > b.len() {
        return out;
    }
    search(a, b, &order, &mut assigned, &mut out, cap);
    out
}

fn search(
    a: &Poset,
    b: &Poset,
    order: &[Elem],
    assigned: &mut Vec<(Elem, Elem)>,
    out: &mut Vec<Embedding>,
    cap: usize,
) -> bool {
    let Some(&next) = order.get(assigned.len()) else {
        let map: BTreeMap<Elem, Elem> = assigned.iter().copied().collect();
        out.push(Embedding::new(a.clone(), b.clone(), map).expect("search keeps the invariant"));
        return out.len() < cap;
    };
    let deg = a.comparability_degree(next);
    for &cand in b.elements() {
        if b.comparability_degree(cand) < deg {
            continue;
        }
        let fits = assigned.iter().all(|&(src, img)| {
            img != cand && a.relation(next, src) == b.relation(cand, img)
        });
        if fits {
            assigned.push((next, cand));
            let go_on = search(a, b, order, assigned, out, cap);
            assigned.pop();
            if !go_on {
                return false;
            }
        }
    }
    true
}
