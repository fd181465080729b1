//! d-separation, proper causal paths and causal path graphs.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::admg::{Admg, EdgeKind};
use crate::error::SepError;
use crate::varset::{NodeId, VarSet};

/// A walk through a graph: `nodes[i]` and `nodes[i + 1]` are joined by `edges[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeKind>,
}

impl Walk {
    /// Renders the walk with node names, e.g. `B <- A -> Y`.
    pub fn render(&self, g: &Admg) -> String {
        let mut out = String::new();
        for (i, &v) in self.nodes.iter().enumerate() {
            if i > 0 {
                let arrow = match self.edges[i - 1] {
                    EdgeKind::Forward => "->",
                    EdgeKind::Backward => "<-",
                    EdgeKind::Bidirected => "<->",
                };
                let _ = write!(out, " {arrow} ");
            }
            out.push_str(g.name(v));
        }
        out
    }
}

// How a node was entered during the reachability search.
const START: usize = 0;
const TAIL: usize = 1;
const HEAD: usize = 2;

/// Searches for a walk from `a` to `b` that is active given `c`.
///
/// Members of `c` that are not present in `g` are ignored. Runs in
/// O(n + m): each (node, entry mark) state is expanded at most once.
pub fn d_connecting_walk(
    g: &Admg,
    a: &VarSet,
    b: &VarSet,
    c: &VarSet,
) -> Result<Option<Walk>, SepError> {
    let c = c.intersection(g.nodes());
    if !a.is_disjoint(b) || !a.is_disjoint(&c) || !b.is_disjoint(&c) {
        return Err(SepError::OverlappingSets);
    }
    let an_c = g.ancestors(&c);
    let n = g.n();
    // pred[state] = (previous state, edge kind taken), state = node * 3 + mark
    let mut pred: Vec<Option<(usize, EdgeKind)>> = vec![None; n * 3];
    let mut seen = vec![false; n * 3];
    let mut queue = VecDeque::new();
    for s in a.iter().filter(|&s| g.contains(s)) {
        seen[s.index() * 3 + START] = true;
        queue.push_back(s.index() * 3 + START);
    }

    let rebuild = |mut state: usize, pred: &[Option<(usize, EdgeKind)>]| {
        let mut nodes = vec![NodeId::from(state / 3)];
        let mut edges = Vec::new();
        while let Some((prev, kind)) = pred[state] {
            nodes.push(NodeId::from(prev / 3));
            edges.push(kind);
            state = prev;
        }
        nodes.reverse();
        edges.reverse();
        Walk { nodes, edges }
    };

    while let Some(state) = queue.pop_front() {
        let v = NodeId::from(state / 3);
        let mark = state % 3;
        let can_leave = |head_here: bool| -> bool {
            if mark == START {
                true
            } else if mark == HEAD && head_here {
                an_c.contains(v)
            } else {
                !c.contains(v)
            }
        };
        let moves = g
            .children(v)
            .iter()
            .map(|&w| (w, false, HEAD, EdgeKind::Forward))
            .chain(
                g.parents(v)
                    .iter()
                    .map(|&w| (w, true, TAIL, EdgeKind::Backward)),
            )
            .chain(
                g.spouses(v)
                    .iter()
                    .map(|&w| (w, true, HEAD, EdgeKind::Bidirected)),
            );
        for (w, head_here, next_mark, kind) in moves {
            if !can_leave(head_here) {
                continue;
            }
            let next = w.index() * 3 + next_mark;
            if seen[next] {
                continue;
            }
            seen[next] = true;
            pred[next] = Some((state, kind));
            if b.contains(w) {
                return Ok(Some(rebuild(next, &pred)));
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}

/// Whether `c` d-separates `a` from `b` in `g`.
pub fn test_sep(g: &Admg, a: &VarSet, b: &VarSet, c: &VarSet) -> Result<bool, SepError> {
    Ok(d_connecting_walk(g, a, b, c)?.is_none())
}

/// Variables on proper causal paths from `x` to `y`:
/// descendants of `x` after cutting edges into `x` (minus `x`), intersected
/// with ancestors of `y` after cutting edges out of `x`.
pub fn pcp(g: &Admg, x: &VarSet, y: &VarSet) -> VarSet {
    let de = g.remove_incoming(x).descendants(x).difference(x);
    let an = g.remove_outgoing(x).ancestors(y);
    de.intersection(&an)
}

/// Graph over `x ∪ y ∪ pcp(x, y)` whose paths from `x` to `y` are exactly
/// the proper causal paths of `g`.
pub fn causal_path_graph(g: &Admg, x: &VarSet, y: &VarSet) -> Admg {
    let keep = x.union(y).union(&pcp(g, x, y));
    g.induced_subgraph(&keep)
        .remove_incoming(x)
        .remove_outgoing(y)
        .remove_bidirected()
}
