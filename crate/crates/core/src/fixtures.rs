//! Small reference graphs used throughout the tests and docs.

use crate::admg::{Admg, AdmgBuilder};
use crate::varset::VarSet;

/// `X -> Z -> Y` with `X <-> Y`: the textbook front-door diagram.
pub fn canon() -> Admg {
    Admg::build(&["X", "Z", "Y"], &[("X", "Z"), ("Z", "Y")], &[("X", "Y")]).expect("valid graph")
}

/// Six-node diagram with four front-door sets relative to `(X, Y)`:
/// `{A}`, `{A,B}`, `{A,C}` and `{A,B,C}`.
pub fn intro() -> Admg {
    Admg::build(
        &["X", "A", "B", "C", "D", "Y"],
        &[
            ("X", "A"),
            ("A", "B"),
            ("A", "C"),
            ("A", "D"),
            ("A", "Y"),
            ("C", "Y"),
            ("D", "Y"),
        ],
        &[("X", "Y"), ("X", "D")],
    )
    .expect("valid graph")
}

/// `k` parallel paths `X -> A_i -> B_i -> Y` plus `X <-> Y`.
/// Nodes are declared `X, A1, B1, ..., Ak, Bk, Y`.
pub fn parallel_paths(k: usize) -> Admg {
    let mut b = AdmgBuilder::new();
    b.node("X").expect("fresh");
    for i in 1..=k {
        b.node(&format!("A{i}")).expect("fresh");
        b.node(&format!("B{i}")).expect("fresh");
    }
    b.node("Y").expect("fresh");
    for i in 1..=k {
        b.directed("X", &format!("A{i}")).expect("declared");
        b.directed(&format!("A{i}"), &format!("B{i}"))
            .expect("declared");
        b.directed(&format!("B{i}"), "Y").expect("declared");
    }
    b.bidirected("X", "Y").expect("declared");
    b.build().expect("valid graph")
}

/// Parses a comma-separated list of node names into a set; panics on
/// unknown names. Empty input yields the empty set.
pub fn set(g: &Admg, names: &str) -> VarSet {
    let names: Vec<&str> = names
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    g.var_set(&names).expect("known node names")
}
