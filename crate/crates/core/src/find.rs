//! Finding a single front-door adjustment set under inclusion/exclusion
//! constraints `I ⊆ Z ⊆ R`, plus a direct checker for the three front-door
//! conditions.

use std::collections::VecDeque;

use crate::admg::{Admg, EdgeKind};
use crate::error::FdError;
use crate::moral::{moralize, MoralGraph};
use crate::separation::{causal_path_graph, d_connecting_walk, test_sep, Walk};
use crate::varset::{NodeId, VarSet};

/// A validated `(G, X, Y, I, R)` problem instance.
#[derive(Debug, Clone)]
pub struct FdQuery<'g> {
    pub graph: &'g Admg,
    pub x: VarSet,
    pub y: VarSet,
    pub include: VarSet,
    pub range: VarSet,
}

impl<'g> FdQuery<'g> {
    /// Checks `X, Y` nonempty and disjoint, `I ⊆ R`, `R ∩ (X ∪ Y) = ∅`, and
    /// that every set lives on observed nodes of `graph`.
    pub fn new(
        graph: &'g Admg,
        x: VarSet,
        y: VarSet,
        include: VarSet,
        range: VarSet,
    ) -> Result<Self, FdError> {
        validate(graph, &x, &y, &include, &range)?;
        Ok(FdQuery {
            graph,
            x,
            y,
            include,
            range,
        })
    }

    /// Query with `I = ∅` and `R` = every observed node outside `X ∪ Y`.
    pub fn unconstrained(graph: &'g Admg, x: VarSet, y: VarSet) -> Result<Self, FdError> {
        let range = graph.observed().difference(&x.union(&y));
        Self::new(graph, x, y, VarSet::new(), range)
    }

    pub fn find(&self) -> Result<Option<VarSet>, FdError> {
        find_fd_set(self.graph, &self.x, &self.y, &self.include, &self.range)
    }
}

fn validate(g: &Admg, x: &VarSet, y: &VarSet, i: &VarSet, r: &VarSet) -> Result<(), FdError> {
    if g.has_latents() {
        return Err(FdError::PreconditionViolated(
            "graph must not contain latent nodes",
        ));
    }
    if x.is_empty() || y.is_empty() {
        return Err(FdError::PreconditionViolated("X and Y must be nonempty"));
    }
    if !x.is_disjoint(y) {
        return Err(FdError::PreconditionViolated("X and Y must be disjoint"));
    }
    if !i.is_subset(r) {
        return Err(FdError::PreconditionViolated("I must be a subset of R"));
    }
    if !r.is_disjoint(&x.union(y)) {
        return Err(FdError::PreconditionViolated("R must not intersect X or Y"));
    }
    let nodes = g.nodes();
    if !x.is_subset(nodes) || !y.is_subset(nodes) || !r.is_subset(nodes) {
        return Err(FdError::PreconditionViolated(
            "sets must contain graph nodes only",
        ));
    }
    Ok(())
}

/// Outcome of checking the three front-door conditions for a fixed `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdReport {
    /// `Z` intercepts every directed path from `X` to `Y`.
    pub cond1: bool,
    /// No open back-door path from `X` to `Z`.
    pub cond2: bool,
    /// `X` blocks every back-door path from `Z` to `Y`.
    pub cond3: bool,
    /// A path violating the first failed condition, if any.
    pub witness: Option<Walk>,
}

impl FdReport {
    pub fn is_valid(&self) -> bool {
        self.cond1 && self.cond2 && self.cond3
    }

    /// 1-based index of the first failed condition.
    pub fn first_failure(&self) -> Option<u8> {
        [self.cond1, self.cond2, self.cond3]
            .iter()
            .position(|ok| !ok)
            .map(|i| i as u8 + 1)
    }
}

/// Directed path from `from` to `to` avoiding `avoid`, by BFS.
fn directed_path(g: &Admg, from: &VarSet, to: &VarSet, avoid: &VarSet) -> Option<Walk> {
    let mut pred: Vec<Option<NodeId>> = vec![None; g.n()];
    let mut seen: VarSet = from.clone();
    let mut queue: VecDeque<NodeId> = from.iter().collect();
    while let Some(v) = queue.pop_front() {
        for &w in g.children(v) {
            if avoid.contains(w) || !seen.insert(w) {
                continue;
            }
            pred[w.index()] = Some(v);
            if to.contains(w) {
                let mut nodes = vec![w];
                let mut cur = w;
                while let Some(p) = pred[cur.index()] {
                    nodes.push(p);
                    cur = p;
                }
                nodes.reverse();
                let edges = vec![EdgeKind::Forward; nodes.len() - 1];
                return Some(Walk { nodes, edges });
            }
            queue.push_back(w);
        }
    }
    None
}

/// Evaluates the three front-door conditions for `Z` relative to `(X, Y)`.
///
/// Condition 1 is decided as separation in the causal path graph, condition
/// 2 per member of `Z` in `G` with edges out of `X` removed, and condition 3
/// as `X` separating `Z` from `Y` in `G` with edges out of `Z` removed.
pub fn check_fd(g: &Admg, x: &VarSet, y: &VarSet, z: &VarSet) -> Result<FdReport, FdError> {
    if !x.is_disjoint(y) || !x.is_disjoint(z) || !y.is_disjoint(z) {
        return Err(crate::error::SepError::OverlappingSets.into());
    }
    let mut witness = None;

    let cpg = causal_path_graph(g, x, y);
    let cond1 = test_sep(&cpg, x, y, z)?;
    if !cond1 {
        witness = directed_path(&cpg, x, y, z);
    }

    let gx = g.remove_outgoing(x);
    let mut cond2 = true;
    for v in z.iter() {
        if let Some(walk) = d_connecting_walk(&gx, x, &VarSet::singleton(v), &VarSet::new())? {
            cond2 = false;
            witness.get_or_insert(walk);
            break;
        }
    }

    let gz = g.remove_outgoing(z);
    let walk3 = d_connecting_walk(&gz, z, y, x)?;
    let cond3 = walk3.is_none();
    if let Some(walk) = walk3 {
        witness.get_or_insert(walk);
    }

    Ok(FdReport {
        cond1,
        cond2,
        cond3,
        witness,
    })
}

/// Members of `r` with no open back-door path from `x`.
///
/// Returns `None` when some member of `i` has such a path.
pub fn get_cand_2nd_fdc(
    g: &Admg,
    x: &VarSet,
    i: &VarSet,
    r: &VarSet,
) -> Result<Option<VarSet>, FdError> {
    if !i.is_subset(r) || !r.is_disjoint(x) {
        return Err(FdError::PreconditionViolated("need I ⊆ R and R ∩ X = ∅"));
    }
    let gx = g.remove_outgoing(x);
    let none = VarSet::new();
    let mut out = r.clone();
    for v in r.iter() {
        if !test_sep(&gx, x, &VarSet::singleton(v), &none)? {
            if i.contains(v) {
                return Ok(None);
            }
            out.remove(v);
        }
    }
    Ok(Some(out))
}

/// Moral graph of `expanded` with edges out of `cut` removed, then `x` deleted.
fn cut_moral_graph(expanded: &Admg, cut: &VarSet, x: &VarSet) -> Result<MoralGraph, FdError> {
    let mut m = moralize(&expanded.remove_outgoing(cut))?;
    m.remove_nodes(x);
    Ok(m)
}

/// Breadth-first search for `Z' ⊆ rp \ t` such that `t ∪ Z'` has every
/// back-door path to `y` blocked by `x`.
///
/// Returns `None` when the search reaches `y`, in which case no superset of
/// `t` inside `rp` satisfies that condition.
pub fn get_dep(
    g: &Admg,
    x: &VarSet,
    y: &VarSet,
    t: &VarSet,
    rp: &VarSet,
) -> Result<Option<VarSet>, FdError> {
    if !t.is_subset(rp) {
        return Err(FdError::PreconditionViolated("T must be a subset of R'"));
    }
    if !x.is_disjoint(y) || !x.is_disjoint(t) || !y.is_disjoint(t) {
        return Err(FdError::PreconditionViolated("X, Y and T must be disjoint"));
    }
    let scope = g.ancestors(&t.union(x).union(y));
    let expanded = g.induced_subgraph(&scope).latent_expand()?;

    let mut m = cut_moral_graph(&expanded, t, x)?;
    let mut z_extra = VarSet::new();
    let mut visited = t.clone();
    let mut queue: VecDeque<NodeId> = t.iter().collect();

    while let Some(u) = queue.pop_front() {
        if y.contains(u) {
            return Ok(None);
        }
        let nr = m
            .observed_neighbors(u)?
            .intersection(rp)
            .difference(&visited);
        if !nr.is_subset(&z_extra) {
            let cut = t.union(&z_extra).union(&nr);
            m = cut_moral_graph(&expanded, &cut, x)?;
        }
        let n_prime = m.observed_neighbors(u)?.difference(&visited);
        let mut next = n_prime;
        next.extend(nr.iter().filter(|&w| g.has_incoming_arrow(w)));
        z_extra.union_with(&nr);
        for w in next.iter() {
            visited.insert(w);
            queue.push_back(w);
        }
    }
    Ok(Some(z_extra))
}

/// Members `v` of `rp` for which some `Z ∋ v` inside `rp` has every
/// back-door path to `y` blocked by `x`.
///
/// Returns `None` when a member of `i` has no such `Z`.
pub fn get_cand_3rd_fdc(
    g: &Admg,
    x: &VarSet,
    y: &VarSet,
    i: &VarSet,
    rp: &VarSet,
) -> Result<Option<VarSet>, FdError> {
    if !i.is_subset(rp) {
        return Err(FdError::PreconditionViolated("I must be a subset of R'"));
    }
    let mut out = rp.clone();
    for v in rp.iter() {
        if get_dep(g, x, y, &VarSet::singleton(v), rp)?.is_none() {
            if i.contains(v) {
                return Ok(None);
            }
            out.remove(v);
        }
    }
    Ok(Some(out))
}

/// Finds a front-door adjustment set `Z` with `I ⊆ Z ⊆ R`, or `None` when
/// no such set exists. The returned set is the largest candidate that
/// survives the second- and third-condition filters.
pub fn find_fd_set(
    g: &Admg,
    x: &VarSet,
    y: &VarSet,
    i: &VarSet,
    r: &VarSet,
) -> Result<Option<VarSet>, FdError> {
    validate(g, x, y, i, r)?;
    let Some(r1) = get_cand_2nd_fdc(g, x, i, r)? else {
        return Ok(None);
    };
    let Some(r2) = get_cand_3rd_fdc(g, x, y, i, &r1)? else {
        return Ok(None);
    };
    let cpg = causal_path_graph(g, x, y);
    if test_sep(&cpg, x, y, &r2)? {
        Ok(Some(r2))
    } else {
        Ok(None)
    }
}
