//! Enumeration of the one-point extensions of a poset.
//!
//! A new point is described by its down-set `D` and up-set `U` in the existing
//! poset. The pair is realizable iff `D` is down-closed, `U` is up-closed and
//! every element of `D` lies below every element of `U`.

use crate::poset::{bit, bits, Mask, Poset};

/// Down/up sets of a prospective new point, as position masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct PointType {
    pub below: Mask,
    pub above: Mask,
}

/// Restrictions on the enumerated types.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct TypeConstraints {
    pub must_below: Mask,
    pub must_above: Mask,
    pub forbid_below: Mask,
    pub forbid_above: Mask,
}

#[derive(Clone, Copy)]
struct State {
    d: Mask,
    u: Mask,
    not_d: Mask,
    not_u: Mask,
}

impl State {
    fn ok(&self) -> bool {
        self.d & self.not_d == 0 && self.u & self.not_u == 0
    }

    fn put_below(&mut self, p: &Poset, i: usize) {
        let add = p.down_mask(i) | bit(i);
        for j in bits(add & !self.d) {
            self.not_u |= !p.up_mask(j);
        }
        self.d |= add;
    }

    fn put_above(&mut self, p: &Poset, i: usize) {
        let add = p.up_mask(i) | bit(i);
        for j in bits(add & !self.u) {
            self.not_d |= !p.down_mask(j);
        }
        self.u |= add;
    }

    fn put_incomparable(&mut self, p: &Poset, i: usize) {
        self.not_d |= p.up_mask(i) | bit(i);
        self.not_u |= p.down_mask(i) | bit(i);
    }
}

/// Visits every realizable type satisfying `c`, in a fixed order: elements
/// are decided by position, trying incomparable, then below, then above.
/// The visitor returns `false` to stop early.
pub(crate) fn for_each_type(
    p: &Poset,
    c: &TypeConstraints,
    mut visit: impl FnMut(PointType) -> bool,
) {
    let mut st = State { d: 0, u: 0, not_d: c.forbid_below, not_u: c.forbid_above };
    for i in bits(c.must_below) {
        st.put_below(p, i);
    }
    for i in bits(c.must_above) {
        st.put_above(p, i);
    }
    if !st.ok() {
        return;
    }
    let n = p.len();
    rec(p, n, 0, st, &mut visit);
}

fn rec(p: &Poset, n: usize, i: usize, st: State, visit: &mut impl FnMut(PointType) -> bool) -> bool {
    if i == n {
        return visit(PointType { below: st.d, above: st.u });
    }
    let b = bit(i);
    if st.d & b != 0 || st.u & b != 0 {
        return rec(p, n, i + 1, st, visit);
    }
    let can_inc = true;
    let can_below = st.not_d & b == 0;
    let can_above = st.not_u & b == 0;
    if can_inc {
        let mut s = st;
        s.put_incomparable(p, i);
        if s.ok() && !rec(p, n, i + 1, s, visit) {
            return false;
        }
    }
    if can_below {
        let mut s = st;
        s.put_below(p, i);
        if s.ok() && !rec(p, n, i + 1, s, visit) {
            return false;
        }
    }
    if can_above {
        let mut s = st;
        s.put_above(p, i);
        if s.ok() && !rec(p, n, i + 1, s, visit) {
            return false;
        }
    }
    true
}

pub(crate) fn all_types(p: &Poset, c: &TypeConstraints) -> Vec<PointType> {
    let mut out = Vec::new();
    for_each_type(p, c, |t| {
        out.push(t);
        true
    });
    out
}

pub(crate) fn first_type(p: &Poset, c: &TypeConstraints) -> Option<PointType> {
    let mut out = None;
    for_each_type(p, c, |t| {
        out = Some(t);
        false
    });
    out
}
