//! Enumeration of every front-door adjustment set in `[I, R]` with
//! polynomial delay.
//!
//! The search walks a binary tree whose nodes are ranges `[I', R']`. Each
//! visited node is pruned unless [`find_fd_set`] reports a solution inside
//! it; otherwise it splits on the lowest-index `v ∈ R' \ I'` into
//! `[I' ∪ {v}, R']` (explored first) and `[I', R' \ {v}]`. Leaves with
//! `I' = R'` are emitted. Sibling ranges are disjoint, so no set is
//! produced twice.

use crate::admg::Admg;
use crate::error::FdError;
use crate::find::{find_fd_set, FdQuery};
use crate::varset::VarSet;

/// Lazy stream of front-door sets. Built by [`list_fd_sets`].
#[derive(Debug, Clone)]
pub struct FdSetLister<'g> {
    graph: &'g Admg,
    x: VarSet,
    y: VarSet,
    stack: Vec<(VarSet, VarSet)>,
    find_calls: u64,
    emitted: u64,
    limit: Option<u64>,
}

/// Starts enumerating all sets `Z` with `I ⊆ Z ⊆ R` satisfying the
/// front-door criterion relative to `(X, Y)`.
pub fn list_fd_sets<'g>(
    g: &'g Admg,
    x: &VarSet,
    y: &VarSet,
    i: &VarSet,
    r: &VarSet,
) -> Result<FdSetLister<'g>, FdError> {
    let q = FdQuery::new(g, x.clone(), y.clone(), i.clone(), r.clone())?;
    Ok(FdSetLister::from_query(q))
}

impl<'g> FdSetLister<'g> {
    pub fn from_query(q: FdQuery<'g>) -> Self {
        FdSetLister {
            graph: q.graph,
            x: q.x,
            y: q.y,
            stack: vec![(q.include, q.range)],
            find_calls: 0,
            emitted: 0,
            limit: None,
        }
    }

    /// Stop after `n` emissions; `0` means unlimited.
    pub fn limit(mut self, n: u64) -> Self {
        self.limit = (n > 0).then_some(n);
        self
    }

    /// Number of `find_fd_set` calls made so far.
    pub fn find_calls(&self) -> u64 {
        self.find_calls
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// Pending search-tree nodes.
    pub fn frontier(&self) -> &[(VarSet, VarSet)] {
        &self.stack
    }
}

impl Iterator for FdSetLister<'_> {
    type Item = VarSet;

    fn next(&mut self) -> Option<VarSet> {
        if self.limit.is_some_and(|l| self.emitted >= l) {
            return None;
        }
        while let Some((inc, range)) = self.stack.pop() {
            self.find_calls += 1;
            // Every pushed range keeps I' ⊆ R' ⊆ R, so the query stays valid.
            let found = find_fd_set(self.graph, &self.x, &self.y, &inc, &range)
                .expect("sub-range of a validated query");
            if found.is_none() {
                continue;
            }
            let Some(v) = range.difference(&inc).first() else {
                self.emitted += 1;
                return Some(inc);
            };
            self.stack.push((inc.clone(), range.without(v)));
            self.stack.push((inc.with(v), range));
        }
        None
    }
}
