//! Slow reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use poset_wap::generators::{all_partial_automorphisms, all_posets, random_pa_extension_capped};
use poset_wap::{Elem, Generator, PaEmbedding, PaPair, Poset};

/// Brute-force amalgamation: every partial matching of the points outside the
/// images of `A`, every relation in {<, >, ⊥} between unmatched cross pairs,
/// each candidate checked directly without any closure.
pub fn naive_amalgam(a: &PaPair, b: &PaPair, c: &PaPair, eb: &PaEmbedding, ec: &PaEmbedding) -> bool {
    let be = b.poset.elements().to_vec();
    let ce = c.poset.elements().to_vec();
    let nb = be.len();
    let n = nb + ce.len();
    let ib = |e: Elem| be.iter().position(|&x| x == e).unwrap();
    let ic = |e: Elem| nb + ce.iter().position(|&x| x == e).unwrap();
    let mut partner: Vec<Option<usize>> = vec![None; n];
    for &e in a.poset.elements() {
        let (x, y) = (ib(eb.map[&e]), ic(ec.map[&e]));
        partner[x] = Some(y);
        partner[y] = Some(x);
    }
    let new_b: Vec<usize> = (0..nb).filter(|&i| partner[i].is_none()).collect();
    let new_c: Vec<usize> = (nb..n).filter(|&i| partner[i].is_none()).collect();
    let elem = |i: usize| if i < nb { be[i] } else { ce[i - nb] };
    matchings(&new_b, &new_c, 0, &mut partner, &mut |partner| check_all_orders(b, c, nb, &elem, partner))
}

fn matchings(
    bs: &[usize],
    cs: &[usize],
    i: usize,
    partner: &mut Vec<Option<usize>>,
    visit: &mut dyn FnMut(&[Option<usize>]) -> bool,
) -> bool {
    if i == bs.len() {
        return visit(partner);
    }
    if matchings(bs, cs, i + 1, partner, visit) {
        return true;
    }
    for &y in cs {
        if partner[y].is_none() {
            partner[bs[i]] = Some(y);
            partner[y] = Some(bs[i]);
            let hit = matchings(bs, cs, i + 1, partner, visit);
            partner[bs[i]] = None;
            partner[y] = None;
            if hit {
                return true;
            }
        }
    }
    false
}

fn check_all_orders(
    b: &PaPair,
    c: &PaPair,
    nb: usize,
    elem: &dyn Fn(usize) -> Elem,
    partner: &[Option<usize>],
) -> bool {
    let n = partner.len();
    // classes: B indices, then unmatched C indices
    let mut class: Vec<usize> = (0..n).collect();
    let mut k = nb;
    for i in nb..n {
        class[i] = match partner[i] {
            Some(j) => j,
            None => {
                k += 1;
                k - 1
            }
        };
    }
    let side_lt = |i: usize, j: usize| {
        if i < nb {
            b.poset.lt(elem(i), elem(j))
        } else {
            c.poset.lt(elem(i), elem(j))
        }
    };
    let mut rel = vec![vec![false; k]; k];
    for i in 0..n {
        for j in 0..n {
            if (i < nb) == (j < nb) && side_lt(i, j) {
                rel[class[i]][class[j]] = true;
            }
        }
    }
    let mut maps: Vec<BTreeMap<usize, usize>> = Vec::new();
    for which in [Generator::F, Generator::G] {
        let mut m = BTreeMap::new();
        for i in 0..n {
            let img = if i < nb {
                b.map(which).get(elem(i)).map(|y| b.poset.elements().iter().position(|&e| e == y).unwrap())
            } else {
                c.map(which).get(elem(i)).map(|y| nb + c.poset.elements().iter().position(|&e| e == y).unwrap())
            };
            if let Some(j) = img {
                if m.get(&class[i]).is_some_and(|&v| v != class[j]) {
                    return false;
                }
                m.insert(class[i], class[j]);
            }
        }
        let vals: BTreeSet<usize> = m.values().copied().collect();
        if vals.len() != m.len() {
            return false;
        }
        maps.push(m);
    }
    let b_only: Vec<usize> = (0..nb).filter(|&i| partner[i].is_none()).collect();
    let c_only: Vec<usize> = (nb..n).filter(|&i| partner[i].is_none()).map(|i| class[i]).collect();
    let free: Vec<(usize, usize)> = b_only.iter().flat_map(|&x| c_only.iter().map(move |&y| (x, y))).collect();
    let total = 3usize.pow(free.len() as u32);
    (0..total).any(|mut code| {
        let mut r = rel.clone();
        for &(x, y) in &free {
            match code % 3 {
                1 => r[x][y] = true,
                2 => r[y][x] = true,
                _ => {}
            }
            code /= 3;
        }
        let strict = (0..k).all(|i| !r[i][i]);
        let transitive = (0..k).all(|i| (0..k).all(|j| !r[i][j] || (0..k).all(|l| !r[j][l] || r[i][l])));
        let iso = maps.iter().all(|m| m.iter().all(|(&x, &fx)| m.iter().all(|(&y, &fy)| r[x][y] == r[fx][fy])));
        let reflects = (0..n).all(|i| {
            (0..n).all(|j| (i < nb) != (j < nb) || !r[class[i]][class[j]] || side_lt(i, j))
        });
        strict && transitive && iso && reflects
    })
}

/// Renames every element through `rename`.
pub fn rename(p: &PaPair, rename: impl Fn(Elem) -> Elem) -> PaPair {
    poset_wap::amalgam::rename_pair(p, rename).unwrap()
}

/// A small pair on one of the posets of size `size` (up to iso), both maps
/// drawn from its partial automorphisms.
pub fn small_pair(size: usize, pick: u64) -> PaPair {
    let posets = all_posets(size);
    let p = &posets[(pick as usize) % posets.len()];
    let pas = all_partial_automorphisms(p);
    let f = &pas[(pick.wrapping_mul(2654435761) as usize) % pas.len()];
    let g = &pas[(pick.wrapping_mul(40503).wrapping_add(7) as usize) % pas.len()];
    PaPair::new(p.clone(), f.map.pairs(), g.map.pairs()).unwrap()
}

/// `(A, B, C, A→B, A→C)` with `|A| ≤ 4`, `|B|, |C| ≤ |A| + 2`; `C` is renamed
/// so that its embedding is not the identity on ids.
pub fn amalgam_triple(seed: u64) -> (PaPair, PaPair, PaPair, PaEmbedding, PaEmbedding) {
    let size = (seed % 5) as usize;
    let a = small_pair(size, seed / 5);
    let cap = size + 2;
    let b = random_pa_extension_capped(&a, 8, seed.wrapping_mul(31).wrapping_add(1), cap);
    let c0 = random_pa_extension_capped(&a, 8, seed.wrapping_mul(57).wrapping_add(2), cap);
    let c = rename(&c0, |e| 100 - e);
    let eb = PaEmbedding::inclusion(&a, &b).unwrap();
    let ec = PaEmbedding::new(&a, &c, a.poset.elements().iter().map(|&e| (e, 100 - e)).collect()).unwrap();
    (a, b, c, eb, ec)
}

/// Every one-point extension type of `p`, by trying all 3^n relation
/// assignments and keeping those that give a poset extending `p`.
pub fn brute_one_point_types(p: &Poset) -> BTreeSet<(BTreeSet<Elem>, BTreeSet<Elem>)> {
    let elems = p.elements().to_vec();
    let id = p.fresh_id();
    let mut out = BTreeSet::new();
    for mut code in 0..3usize.pow(elems.len() as u32) {
        let (mut below, mut above) = (BTreeSet::new(), BTreeSet::new());
        for &e in &elems {
            match code % 3 {
                1 => {
                    below.insert(e);
                }
                2 => {
                    above.insert(e);
                }
                _ => {}
            }
            code /= 3;
        }
        let mut lt = p.relations();
        lt.extend(below.iter().map(|&e| (e, id)));
        lt.extend(above.iter().map(|&e| (id, e)));
        let Ok(q) = Poset::new(elems.iter().copied().chain([id]), lt) else { continue };
        let closed = q.below(id) == below && q.above(id) == above;
        if closed && poset_wap::is_extension(p, &q) {
            out.insert((below, above));
        }
    }
    out
}
