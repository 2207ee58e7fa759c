//! Joint embedding and amalgamation over a common sub-pair.
//!
//! An amalgam of `B` and `C` over `A` only needs the images of `B` and `C`,
//! so it is described by which points get identified and by the order on the
//! resulting classes. Identifications forced by the two embeddings and by
//! `f`, `g` being injective functions are computed by union-find; the order is
//! then the least relation containing both orders that is transitive and makes
//! `f`, `g` preserve and reflect it. Identifying more points can only enlarge
//! that relation, so the forced configuration succeeds iff any does.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::partial_auto::{Generator, PaEmbedding, PaPair, PartialMap};
use crate::poset::{Elem, Poset, MAX_CARRIER};

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;
pub const MAX_NODES_ENV: &str = "POSET_AMALGAM_MAX_NODES";

/// Budget from [`MAX_NODES_ENV`], falling back to [`DEFAULT_MAX_NODES`].
pub fn max_nodes_from_env() -> u64 {
    std::env::var(MAX_NODES_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_NODES)
}

/// Renames every element of `p` through `rename`, which must be injective.
pub fn rename_pair(p: &PaPair, rename: impl Fn(Elem) -> Elem) -> Result<PaPair> {
    let poset = p.poset.relabel(&rename)?;
    let f = PartialMap::from_pairs(p.f.pairs().map(|(a, b)| (rename(a), rename(b))))?;
    let g = PartialMap::from_pairs(p.g.pairs().map(|(a, b)| (rename(a), rename(b))))?;
    Ok(PaPair { poset, f, g })
}

/// Disjoint union with every point of `p1` below every point of `p2`.
pub fn jep_join(p1: &PaPair, p2: &PaPair) -> Result<(PaPair, PaEmbedding, PaEmbedding)> {
    let total = p1.poset.len() + p2.poset.len();
    if total > MAX_CARRIER {
        return Err(Error::SizeCap { requested: total, cap: MAX_CARRIER });
    }
    let shift = p1.poset.fresh_id();
    let r2 = rename_pair(p2, |e| e + shift)?;
    let mut lt = p1.poset.relations();
    lt.extend(r2.poset.relations());
    for &a in p1.poset.elements() {
        for &b in r2.poset.elements() {
            lt.push((a, b));
        }
    }
    let elements = p1.poset.elements().iter().chain(r2.poset.elements()).copied();
    let labels = p1.poset.labels().iter().chain(r2.poset.labels()).map(|(&e, l)| (e, l.clone()));
    let poset = Poset::new(elements, lt)?.with_labels(labels.collect::<Vec<_>>());
    let joined = PaPair::new(poset, p1.f.pairs().chain(r2.f.pairs()), p1.g.pairs().chain(r2.g.pairs()))?;
    let e1 = PaEmbedding::inclusion(p1, &joined)?;
    let e2 = PaEmbedding::new(p2, &joined, p2.poset.elements().iter().map(|&e| (e, e + shift)).collect())?;
    Ok((joined, e1, e2))
}

/// A pair `D` with embeddings of `B` and `C` agreeing on `A`.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub pair: PaPair,
    pub from_b: PaEmbedding,
    pub from_c: PaEmbedding,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

struct Budget {
    used: u64,
    max: u64,
}

impl Budget {
    fn spend(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.max {
            Err(Error::ResourceLimit { max_nodes: self.max })
        } else {
            Ok(())
        }
    }
}

/// Decides whether `B` and `C` amalgamate over `A`, returning one amalgam if so.
pub fn amalgam_exists(
    a: &PaPair,
    b: &PaPair,
    c: &PaPair,
    emb_b: &PaEmbedding,
    emb_c: &PaEmbedding,
    max_nodes: u64,
) -> Result<Option<Amalgam>> {
    for (emb, dst, name) in [(emb_b, b, "B"), (emb_c, c, "C")] {
        PaEmbedding::new(a, dst, emb.map.clone())
            .map_err(|e| Error::PreconditionViolation(format!("embedding into {name}: {e}")))?;
    }
    let mut budget = Budget { used: 0, max: max_nodes };
    let nb = b.poset.len();
    let n = nb + c.poset.len();
    let ib = |e: Elem| b.poset.index_of(e).expect("element of B");
    let ic = |e: Elem| nb + c.poset.index_of(e).expect("element of C");
    let elem_of = |i: usize| if i < nb { b.poset.id(i) } else { c.poset.id(i - nb) };
    let side_b = |i: usize| i < nb;

    // maps on B ⊔ C as index functions
    let mut fwd: [Vec<Option<usize>>; 2] = [vec![None; n], vec![None; n]];
    let mut inv: [Vec<Option<usize>>; 2] = [vec![None; n], vec![None; n]];
    for (k, which) in [Generator::F, Generator::G].into_iter().enumerate() {
        for (x, y) in b.map(which).pairs() {
            fwd[k][ib(x)] = Some(ib(y));
            inv[k][ib(y)] = Some(ib(x));
        }
        for (x, y) in c.map(which).pairs() {
            fwd[k][ic(x)] = Some(ic(y));
            inv[k][ic(y)] = Some(ic(x));
        }
    }

    let mut uf = UnionFind { parent: (0..n).collect() };
    let mut pending: Vec<(usize, usize)> = a
        .poset
        .elements()
        .iter()
        .map(|&e| (ib(emb_b.map[&e]), ic(emb_c.map[&e])))
        .collect();
    // class members, at most one from each side
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some((x, y)) = pending.pop() {
        budget.spend(1)?;
        let (rx, ry) = (uf.find(x), uf.find(y));
        if rx == ry {
            continue;
        }
        let merged: Vec<usize> = members[rx].iter().chain(&members[ry]).copied().collect();
        if merged.iter().filter(|&&i| side_b(i)).count() > 1 || merged.iter().filter(|&&i| !side_b(i)).count() > 1 {
            return Ok(None);
        }
        uf.union(rx, ry);
        let root = uf.find(rx);
        members[rx].clear();
        members[ry].clear();
        members[root] = merged.clone();
        // functional and injective images on the merged class
        for table in fwd.iter().chain(inv.iter()) {
            let imgs: Vec<usize> = merged.iter().filter_map(|&i| table[i]).collect();
            for w in imgs.windows(2) {
                pending.push((w[0], w[1]));
            }
        }
    }

    // classes, numbered by smallest member
    let mut class_of = vec![0usize; n];
    let mut reps: Vec<usize> = Vec::new();
    let mut root_index: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        let r = uf.find(i);
        let k = *root_index.entry(r).or_insert_with(|| {
            reps.push(i);
            reps.len() - 1
        });
        class_of[i] = k;
    }
    let k = reps.len();
    if k > MAX_CARRIER {
        return Err(Error::SizeCap { requested: k, cap: MAX_CARRIER });
    }

    let mut rel = vec![vec![false; k]; k];
    for (x, y) in b.poset.relations() {
        rel[class_of[ib(x)]][class_of[ib(y)]] = true;
    }
    for (x, y) in c.poset.relations() {
        rel[class_of[ic(x)]][class_of[ic(y)]] = true;
    }
    let mut maps: [Vec<(usize, usize)>; 2] = [Vec::new(), Vec::new()];
    for (t, table) in fwd.iter().enumerate() {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, img) in table.iter().enumerate() {
            if let Some(j) = img {
                m.insert(class_of[i], class_of[*j]);
            }
        }
        maps[t] = m.into_iter().collect();
    }

    loop {
        budget.spend((k * k * k) as u64)?;
        for m in 0..k {
            for i in 0..k {
                if rel[i][m] {
                    for j in 0..k {
                        if rel[m][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut changed = false;
        for pairs in &maps {
            budget.spend((pairs.len() * pairs.len()) as u64)?;
            for &(x, fx) in pairs {
                for &(y, fy) in pairs {
                    if rel[x][y] != rel[fx][fy] {
                        rel[x][y] = true;
                        rel[fx][fy] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    if (0..k).any(|i| rel[i][i]) {
        return Ok(None);
    }
    for (i, j) in (0..n).flat_map(|i| (0..n).map(move |j| (i, j))) {
        if side_b(i) == side_b(j) && i != j && rel[class_of[i]][class_of[j]] {
            let (x, y) = (elem_of(i), elem_of(j));
            let ok = if side_b(i) { b.poset.lt(x, y) } else { c.poset.lt(x, y) };
            if !ok {
                return Ok(None);
            }
        }
    }

    let ids: Vec<Elem> = (0..k as Elem).collect();
    let lt: Vec<(Elem, Elem)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| rel[i][j])
        .map(|(i, j)| (i as Elem, j as Elem))
        .collect();
    let mut poset = Poset::new(ids, lt)?;
    for i in 0..n {
        let label = if side_b(i) { b.poset.label(elem_of(i)) } else { c.poset.label(elem_of(i)) };
        if let Some(l) = label {
            if poset.label(class_of[i] as Elem).is_none() {
                poset.set_label(class_of[i] as Elem, l);
            }
        }
    }
    let to_pairs = |v: &[(usize, usize)]| v.iter().map(|&(x, y)| (x as Elem, y as Elem)).collect::<Vec<_>>();
    let pair = PaPair::new(poset, to_pairs(&maps[0]), to_pairs(&maps[1]))
        .map_err(|e| Error::InternalInvariantBroken(format!("amalgam is not a pair: {e}")))?;
    let from_b = b.poset.elements().iter().map(|&e| (e, class_of[ib(e)] as Elem)).collect();
    let from_c = c.poset.elements().iter().map(|&e| (e, class_of[ic(e)] as Elem)).collect();
    let wrap = |e: Error| Error::InternalInvariantBroken(format!("amalgam embedding: {e}"));
    let am = Amalgam {
        from_b: PaEmbedding::new(b, &pair, from_b).map_err(wrap)?,
        from_c: PaEmbedding::new(c, &pair, from_c).map_err(wrap)?,
        pair,
    };
    verify_amalgam(a, b, c, emb_b, emb_c, &am)?;
    Ok(Some(am))
}

/// Checks both embeddings and that they agree on `A`.
pub fn verify_amalgam(
    a: &PaPair,
    b: &PaPair,
    c: &PaPair,
    emb_b: &PaEmbedding,
    emb_c: &PaEmbedding,
    am: &Amalgam,
) -> Result<()> {
    am.pair.validate()?;
    PaEmbedding::new(b, &am.pair, am.from_b.map.clone())?;
    PaEmbedding::new(c, &am.pair, am.from_c.map.clone())?;
    for &e in a.poset.elements() {
        let via_b = emb_b.apply(e).and_then(|x| am.from_b.apply(x));
        let via_c = emb_c.apply(e).and_then(|x| am.from_c.apply(x));
        if via_b.is_none() || via_b != via_c {
            return Err(Error::CertificateInvalid(format!("square does not commute at {e}")));
        }
    }
    Ok(())
}
