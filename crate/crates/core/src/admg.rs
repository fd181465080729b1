//! Acyclic directed mixed graphs: directed edges for direct causation,
//! bidirected edges for latent confounding.
//!
//! Every graph owns a fixed index space. Transforms such as
//! [`Admg::induced_subgraph`] keep the index space and only shrink the set of
//! present nodes, so a [`VarSet`] built against the original graph stays
//! meaningful on every derived graph. [`Admg::latent_expand`] is the one
//! transform that grows the index space, appending latent nodes at the end.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::GraphError;
use crate::varset::{NodeId, VarSet};

/// Kind of an edge end-to-end, used when describing paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// `a -> b`
    Forward,
    /// `a <- b`
    Backward,
    /// `a <-> b`
    Bidirected,
}

#[derive(Debug, Clone)]
pub struct Admg {
    names: Arc<Vec<String>>,
    latent: Arc<Vec<bool>>,
    present: VarSet,
    parents: Vec<Vec<NodeId>>,
    children: Vec<Vec<NodeId>>,
    spouses: Vec<Vec<NodeId>>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Incremental construction of an [`Admg`].
///
/// Nodes are indexed in order of first mention. With implicit declaration
/// enabled, edge endpoints that were never declared are created on the fly.
#[derive(Debug, Default)]
pub struct AdmgBuilder {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    directed: Vec<(NodeId, NodeId)>,
    bidirected: Vec<(NodeId, NodeId)>,
    implicit: bool,
}

impl AdmgBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declare edge endpoints automatically on first use.
    pub fn implicit_nodes(mut self, yes: bool) -> Self {
        self.implicit = yes;
        self
    }

    fn declare(&mut self, name: &str) -> Result<NodeId, GraphError> {
        if !valid_name(name) {
            return Err(GraphError::InvalidName(name.to_string()));
        }
        let id = NodeId::from(self.names.len());
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    /// Declares a node. Declaring the same name twice is an error.
    pub fn node(&mut self, name: &str) -> Result<NodeId, GraphError> {
        if self.index.contains_key(name) {
            return Err(GraphError::DuplicateNode(name.to_string()));
        }
        self.declare(name)
    }

    /// Declares a node unless it already exists.
    pub fn ensure_node(&mut self, name: &str) -> Result<NodeId, GraphError> {
        match self.index.get(name) {
            Some(&id) => Ok(id),
            None => self.declare(name),
        }
    }

    fn endpoint(&mut self, name: &str) -> Result<NodeId, GraphError> {
        match self.index.get(name) {
            Some(&id) => Ok(id),
            None if self.implicit => self.declare(name),
            None if !valid_name(name) => Err(GraphError::InvalidName(name.to_string())),
            None => Err(GraphError::UnknownEndpoint(name.to_string())),
        }
    }

    pub fn directed(&mut self, from: &str, to: &str) -> Result<(), GraphError> {
        let (a, b) = (self.endpoint(from)?, self.endpoint(to)?);
        if a == b {
            return Err(GraphError::SelfLoop(from.to_string()));
        }
        self.directed.push((a, b));
        Ok(())
    }

    pub fn bidirected(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        let (u, v) = (self.endpoint(a)?, self.endpoint(b)?);
        if u == v {
            return Err(GraphError::SelfLoop(a.to_string()));
        }
        self.bidirected.push((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn build(self) -> Result<Admg, GraphError> {
        let n = self.names.len();
        let mut g = Admg::empty(Arc::new(self.names), Arc::new(vec![false; n]));
        for (a, b) in self.directed {
            g.parents[b.index()].push(a);
            g.children[a.index()].push(b);
        }
        for (a, b) in self.bidirected {
            g.spouses[a.index()].push(b);
            g.spouses[b.index()].push(a);
        }
        g.normalize();
        if !g.is_acyclic() {
            return Err(GraphError::CyclicDirectedPart);
        }
        Ok(g)
    }
}

impl Admg {
    fn empty(names: Arc<Vec<String>>, latent: Arc<Vec<bool>>) -> Admg {
        let n = names.len();
        Admg {
            names,
            latent,
            present: VarSet::full(n),
            parents: vec![Vec::new(); n],
            children: vec![Vec::new(); n],
            spouses: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from explicit node names and edge lists. Every edge
    /// endpoint must be declared in `nodes`.
    pub fn build<S: AsRef<str>>(
        nodes: &[S],
        directed: &[(S, S)],
        bidirected: &[(S, S)],
    ) -> Result<Admg, GraphError> {
        let mut b = AdmgBuilder::new();
        for name in nodes {
            b.node(name.as_ref())?;
        }
        for (u, v) in directed {
            b.directed(u.as_ref(), v.as_ref())?;
        }
        for (u, v) in bidirected {
            b.bidirected(u.as_ref(), v.as_ref())?;
        }
        b.build()
    }

    fn normalize(&mut self) {
        for list in self
            .parents
            .iter_mut()
            .chain(self.children.iter_mut())
            .chain(self.spouses.iter_mut())
        {
            list.sort_unstable();
            list.dedup();
        }
    }

    fn is_acyclic(&self) -> bool {
        let mut indeg: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut queue: VecDeque<NodeId> = (0..self.n())
            .map(NodeId::from)
            .filter(|v| indeg[v.index()] == 0)
            .collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &c in &self.children[v.index()] {
                indeg[c.index()] -= 1;
                if indeg[c.index()] == 0 {
                    queue.push_back(c);
                }
            }
        }
        seen == self.n()
    }

    /// Size of the index space (including nodes removed by transforms).
    pub fn n(&self) -> usize {
        self.names.len()
    }

    /// Present nodes.
    pub fn nodes(&self) -> &VarSet {
        &self.present
    }

    pub fn node_count(&self) -> usize {
        self.present.len()
    }

    /// Present nodes that are not latent.
    pub fn observed(&self) -> VarSet {
        self.present
            .iter()
            .filter(|v| !self.latent[v.index()])
            .collect()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.present.contains(v)
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.index()]
    }

    pub fn id(&self, name: &str) -> Option<NodeId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(NodeId::from)
            .filter(|&v| self.present.contains(v))
    }

    pub fn is_latent(&self, v: NodeId) -> bool {
        self.latent[v.index()]
    }

    pub fn has_latents(&self) -> bool {
        self.present.iter().any(|v| self.latent[v.index()])
    }

    pub fn parents(&self, v: NodeId) -> &[NodeId] {
        &self.parents[v.index()]
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v.index()]
    }

    pub fn spouses(&self, v: NodeId) -> &[NodeId] {
        &self.spouses[v.index()]
    }

    /// Whether some edge has an arrowhead at `v` (a parent or a bidirected edge).
    pub fn has_incoming_arrow(&self, v: NodeId) -> bool {
        !self.parents[v.index()].is_empty() || !self.spouses[v.index()].is_empty()
    }

    pub fn directed_edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.present
            .iter()
            .flat_map(move |a| self.children[a.index()].iter().map(move |&b| (a, b)))
    }

    /// Bidirected edges, each reported once with the smaller index first.
    pub fn bidirected_edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.present.iter().flat_map(move |a| {
            self.spouses[a.index()]
                .iter()
                .filter(move |&&b| a < b)
                .map(move |&b| (a, b))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.directed_edges().count() + self.bidirected_edges().count()
    }

    /// Resolves a list of names to a set, failing on the first unknown name.
    pub fn var_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VarSet, GraphError> {
        names
            .iter()
            .map(|s| {
                self.id(s.as_ref())
                    .ok_or_else(|| GraphError::UnknownNode(s.as_ref().to_string()))
            })
            .collect()
    }

    /// Member names in ascending index order.
    pub fn names_of(&self, set: &VarSet) -> Vec<&str> {
        set.iter().map(|v| self.name(v)).collect()
    }

    fn closure<'a>(&'a self, seed: &VarSet, step: impl Fn(NodeId) -> &'a [NodeId]) -> VarSet {
        let mut out = seed.intersection(&self.present);
        let mut stack: Vec<NodeId> = out.to_vec();
        while let Some(v) = stack.pop() {
            for &w in step(v) {
                if out.insert(w) {
                    stack.push(w);
                }
            }
        }
        out
    }

    /// Ancestors of `set`, including `set` itself. Bidirected edges are not followed.
    pub fn ancestors(&self, set: &VarSet) -> VarSet {
        self.closure(set, |v| &self.parents[v.index()])
    }

    /// Descendants of `set`, including `set` itself.
    pub fn descendants(&self, set: &VarSet) -> VarSet {
        self.closure(set, |v| &self.children[v.index()])
    }

    pub fn parents_of(&self, set: &VarSet) -> VarSet {
        set.iter()
            .filter(|&v| self.contains(v))
            .flat_map(|v| self.parents[v.index()].iter().copied())
            .collect()
    }

    pub fn children_of(&self, set: &VarSet) -> VarSet {
        set.iter()
            .filter(|&v| self.contains(v))
            .flat_map(|v| self.children[v.index()].iter().copied())
            .collect()
    }

    /// Rebuilds the graph keeping only the directed edges `a -> b` and
    /// bidirected edges `{a, b}` accepted by the filters.
    fn filter_edges(
        &self,
        keep_directed: impl Fn(NodeId, NodeId) -> bool,
        keep_bidirected: impl Fn(NodeId, NodeId) -> bool,
    ) -> Admg {
        let mut g = Admg::empty(self.names.clone(), self.latent.clone());
        g.present = self.present.clone();
        for v in self.present.iter() {
            let i = v.index();
            g.parents[i] = self.parents[i]
                .iter()
                .copied()
                .filter(|&p| keep_directed(p, v))
                .collect();
            g.children[i] = self.children[i]
                .iter()
                .copied()
                .filter(|&c| keep_directed(v, c))
                .collect();
            g.spouses[i] = self.spouses[i]
                .iter()
                .copied()
                .filter(|&s| keep_bidirected(v, s))
                .collect();
        }
        g
    }

    /// Removes every edge with an arrowhead at a member of `set`: directed
    /// edges into it and all incident bidirected edges.
    pub fn remove_incoming(&self, set: &VarSet) -> Admg {
        self.filter_edges(
            |_, b| !set.contains(b),
            |a, b| !set.contains(a) && !set.contains(b),
        )
    }

    /// Removes directed edges leaving a member of `set`. Bidirected edges stay.
    pub fn remove_outgoing(&self, set: &VarSet) -> Admg {
        self.filter_edges(|a, _| !set.contains(a), |_, _| true)
    }

    pub fn remove_bidirected(&self) -> Admg {
        self.filter_edges(|_, _| true, |_, _| false)
    }

    /// Restricts the graph to `set` and the edges between its members.
    pub fn induced_subgraph(&self, set: &VarSet) -> Admg {
        let keep = set.intersection(&self.present);
        let mut g = self.filter_edges(
            |a, b| keep.contains(a) && keep.contains(b),
            |a, b| keep.contains(a) && keep.contains(b),
        );
        for v in self.present.difference(&keep).iter() {
            let i = v.index();
            g.parents[i].clear();
            g.children[i].clear();
            g.spouses[i].clear();
        }
        g.present = keep;
        g
    }

    /// Replaces each bidirected edge `A <-> B` by a fresh latent node `L`
    /// with edges `L -> A` and `L -> B`. Latent nodes are appended after the
    /// existing index space, in the order the edges are listed.
    pub fn latent_expand(&self) -> Result<Admg, GraphError> {
        if self.has_latents() {
            return Err(GraphError::AlreadyExpanded);
        }
        let pairs: Vec<(NodeId, NodeId)> = self.bidirected_edges().collect();
        let mut g = self.remove_bidirected();
        for (a, b) in pairs {
            let base = format!("L_{}{}", self.name(a), self.name(b));
            let mut name = base.clone();
            while g.names.contains(&name) {
                name.push('_');
            }
            let l = NodeId::from(g.names.len());
            Arc::make_mut(&mut g.names).push(name);
            Arc::make_mut(&mut g.latent).push(true);
            g.present.insert(l);
            g.parents.push(Vec::new());
            g.children.push(vec![a, b]);
            g.spouses.push(Vec::new());
            g.parents[a.index()].push(l);
            g.parents[b.index()].push(l);
        }
        g.normalize();
        Ok(g)
    }
}
