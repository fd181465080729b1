//! Moral graphs of latent-expanded DAGs.

use std::collections::VecDeque;

use crate::admg::Admg;
use crate::error::GraphError;
use crate::varset::{NodeId, VarSet};

/// Undirected graph produced by [`moralize`].
#[derive(Debug, Clone)]
pub struct MoralGraph {
    adj: Vec<Vec<NodeId>>,
    latent: Vec<bool>,
    nodes: VarSet,
    removed: VarSet,
}

/// Drops edge directions and marries every pair of co-parents.
///
/// The graph must not contain bidirected edges; run
/// [`Admg::latent_expand`] first.
pub fn moralize(g: &Admg) -> Result<MoralGraph, GraphError> {
    if g.bidirected_edges().next().is_some() {
        return Err(GraphError::UnexpandedBidirected);
    }
    let n = g.n();
    let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for c in g.nodes().iter() {
        let parents = g.parents(c);
        for (i, &p) in parents.iter().enumerate() {
            adj[p.index()].push(c);
            adj[c.index()].push(p);
            for &q in &parents[i + 1..] {
                adj[p.index()].push(q);
                adj[q.index()].push(p);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    Ok(MoralGraph {
        adj,
        latent: (0..n).map(|i| g.is_latent(NodeId::from(i))).collect(),
        nodes: g.nodes().clone(),
        removed: VarSet::new(),
    })
}

impl MoralGraph {
    /// Nodes still in the graph.
    pub fn nodes(&self) -> VarSet {
        self.nodes.difference(&self.removed)
    }

    pub fn removed(&self) -> &VarSet {
        &self.removed
    }

    pub fn is_latent(&self, v: NodeId) -> bool {
        self.latent.get(v.index()).copied().unwrap_or(false)
    }

    fn live(&self, v: NodeId) -> bool {
        self.nodes.contains(v) && !self.removed.contains(v)
    }

    /// Adjacent nodes of `v` that have not been removed.
    pub fn adjacent(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj
            .get(v.index())
            .into_iter()
            .flatten()
            .copied()
            .filter(move |&w| self.live(w))
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.live(a) && self.live(b) && self.adj[a.index()].binary_search(&b).is_ok()
    }

    /// Undirected edges as `(small, large)` pairs.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.nodes()
            .iter()
            .flat_map(|a| {
                self.adjacent(a)
                    .filter(move |&b| a < b)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    /// Deletes `set` together with its incident edges.
    pub fn remove_nodes(&mut self, set: &VarSet) {
        self.removed.union_with(&set.intersection(&self.nodes));
    }

    /// All observed nodes reachable from `v` through paths whose
    /// intermediate nodes are latent.
    pub fn observed_neighbors(&self, v: NodeId) -> Result<VarSet, GraphError> {
        if self.removed.contains(v) {
            return Err(GraphError::NodeRemoved(format!("{v}")));
        }
        let mut visited = VarSet::singleton(v);
        let mut found = VarSet::new();
        let mut queue = VecDeque::new();
        for w in self.adjacent(v) {
            visited.insert(w);
            if self.is_latent(w) {
                queue.push_back(w);
            } else {
                found.insert(w);
            }
        }
        while let Some(u) = queue.pop_front() {
            for w in self.adjacent(u) {
                if visited.insert(w) {
                    if self.is_latent(w) {
                        queue.push_back(w);
                    } else {
                        found.insert(w);
                    }
                }
            }
        }
        Ok(found)
    }

    /// Nodes connected to `from` by some path (including `from` itself).
    pub fn component(&self, from: &VarSet) -> VarSet {
        let mut seen: VarSet = from.iter().filter(|&v| self.live(v)).collect();
        let mut stack = seen.to_vec();
        while let Some(v) = stack.pop() {
            for w in self.adjacent(v) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }
}
