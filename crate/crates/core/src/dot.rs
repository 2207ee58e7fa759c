//! Graphviz output. Order edges are the covering pairs, drawn bottom to top;
//! `f` and `g` are overlaid as dashed and dotted arrows.

use std::fmt::Write;

use crate::partial_auto::PaPair;
use crate::poset::{Elem, Poset};

fn node(p: &Poset, e: Elem) -> String {
    format!("  n{e} [label=\"{}\"];\n", p.name(e).replace('"', "\\\""))
}

pub fn poset_dot(p: &Poset, name: &str) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
    for &e in p.elements() {
        out.push_str(&node(p, e));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

pub fn pair_dot(pair: &PaPair, name: &str) -> String {
    let p = &pair.poset;
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
    for &e in p.elements() {
        out.push_str(&node(p, e));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    for (a, b) in pair.f.pairs() {
        let _ = writeln!(out, "  n{a} -> n{b} [style=dashed, color=red, label=\"f\", constraint=false];");
    }
    for (a, b) in pair.g.pairs() {
        let _ = writeln!(out, "  n{a} -> n{b} [style=dotted, color=blue, label=\"g\", constraint=false];");
    }
    out.push_str("}\n");
    out
}
