//! Brute-force reference implementations for certifying the fast
//! algorithms on small graphs, and seeded random graph generators.
//!
//! Everything here enumerates paths or subsets explicitly and is
//! exponential in the graph size.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::admg::{Admg, AdmgBuilder};
use crate::error::OracleError;
use crate::varset::{NodeId, VarSet};

/// Largest graph (present nodes) accepted by the path-enumerating oracles.
pub const MAX_ORACLE_NODES: usize = 14;
/// Largest number of free variables `|R \ I|` accepted by [`enumerate_all_oracle`].
pub const MAX_FREE_VARIABLES: usize = 20;

fn check_size(g: &Admg) -> Result<(), OracleError> {
    let n = g.node_count();
    if n > MAX_ORACLE_NODES {
        return Err(OracleError::GraphTooLarge(n, MAX_ORACLE_NODES));
    }
    Ok(())
}

/// One step of a path: the neighbor reached and whether the edge has an
/// arrowhead at the node we leave from and at the node we arrive at.
#[derive(Clone, Copy)]
struct Step {
    to: NodeId,
    head_at_from: bool,
    head_at_to: bool,
}

fn steps(g: &Admg, v: NodeId) -> Vec<Step> {
    let mut out = Vec::new();
    for &w in g.children(v) {
        out.push(Step {
            to: w,
            head_at_from: false,
            head_at_to: true,
        });
    }
    for &w in g.parents(v) {
        out.push(Step {
            to: w,
            head_at_from: true,
            head_at_to: false,
        });
    }
    for &w in g.spouses(v) {
        out.push(Step {
            to: w,
            head_at_from: true,
            head_at_to: true,
        });
    }
    out
}

fn descendants_of(g: &Admg, v: NodeId, out: &mut Vec<bool>) {
    if out[v.index()] {
        return;
    }
    out[v.index()] = true;
    for &c in g.children(v) {
        descendants_of(g, c, out);
    }
}

/// Path state during enumeration: the nodes visited so far and, for the
/// last node, whether the edge we arrived by has an arrowhead there.
struct PathSearch<'a> {
    g: &'a Admg,
    b: &'a VarSet,
    c: &'a VarSet,
    // for every node, does it or one of its descendants lie in `c`
    opens_collider: Vec<bool>,
    on_path: Vec<bool>,
}

impl PathSearch<'_> {
    /// Whether an unblocked path continues from `v` to some node of `b`.
    /// `head_in` tells whether the path entered `v` with an arrowhead
    /// (`None` at the start node).
    fn open_path_from(&mut self, v: NodeId, head_in: Option<bool>) -> bool {
        for step in steps(self.g, v) {
            if self.on_path[step.to.index()] {
                continue;
            }
            if let Some(head_in) = head_in {
                let collider = head_in && step.head_at_from;
                let blocked = if collider {
                    !self.opens_collider[v.index()]
                } else {
                    self.c.contains(v)
                };
                if blocked {
                    continue;
                }
            }
            if self.b.contains(step.to) {
                return true;
            }
            self.on_path[step.to.index()] = true;
            let found = self.open_path_from(step.to, Some(step.head_at_to));
            self.on_path[step.to.index()] = false;
            if found {
                return true;
            }
        }
        false
    }
}

/// d-separation by enumerating every simple path between `a` and `b` and
/// applying the two blocking rules: a collider blocks unless it or one of
/// its descendants is in `c`; a non-collider blocks when it is in `c`.
pub fn d_sep_oracle(g: &Admg, a: &VarSet, b: &VarSet, c: &VarSet) -> Result<bool, OracleError> {
    check_size(g)?;
    let n = g.n();
    let mut opens_collider = vec![false; n];
    for v in g.nodes().iter() {
        let mut de = vec![false; n];
        descendants_of(g, v, &mut de);
        opens_collider[v.index()] = c.iter().any(|w| de[w.index()]);
    }
    let mut search = PathSearch {
        g,
        b,
        c,
        opens_collider,
        on_path: vec![false; n],
    };
    for s in a.iter().filter(|&s| g.contains(s)) {
        if b.contains(s) {
            return Ok(false);
        }
        search.on_path[s.index()] = true;
        let open = search.open_path_from(s, None);
        search.on_path[s.index()] = false;
        if open {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every directed path from `x` to `y` passes through `z`, by
/// enumerating the paths.
pub fn intercepts_all_directed_paths(
    g: &Admg,
    x: &VarSet,
    y: &VarSet,
    z: &VarSet,
) -> Result<bool, OracleError> {
    check_size(g)?;
    // true if some directed path from v reaches y without touching z
    fn escapes(g: &Admg, v: NodeId, y: &VarSet, z: &VarSet) -> bool {
        g.children(v).iter().any(|&w| {
            if z.contains(w) {
                false
            } else {
                y.contains(w) || escapes(g, w, y, z)
            }
        })
    }
    Ok(!x.iter().any(|s| escapes(g, s, y, z)))
}

/// The front-door criterion evaluated straight from its definition.
pub fn fd_oracle(g: &Admg, x: &VarSet, y: &VarSet, z: &VarSet) -> Result<bool, OracleError> {
    if !intercepts_all_directed_paths(g, x, y, z)? {
        return Ok(false);
    }
    if !z.is_empty() && !d_sep_oracle(&g.remove_outgoing(x), x, z, &VarSet::new())? {
        return Ok(false);
    }
    if !z.is_empty() && !d_sep_oracle(&g.remove_outgoing(z), z, y, x)? {
        return Ok(false);
    }
    Ok(true)
}

/// Every `Z` with `I ⊆ Z ⊆ R` passing [`fd_oracle`], sorted lexicographically.
pub fn enumerate_all_oracle(
    g: &Admg,
    x: &VarSet,
    y: &VarSet,
    i: &VarSet,
    r: &VarSet,
) -> Result<Vec<VarSet>, OracleError> {
    if !i.is_subset(r) {
        return Ok(Vec::new());
    }
    let free = r.difference(i).to_vec();
    if free.len() > MAX_FREE_VARIABLES {
        return Err(OracleError::RangeTooLarge(free.len(), MAX_FREE_VARIABLES));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << free.len()) {
        let mut z = i.clone();
        z.extend(
            free.iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v),
        );
        if fd_oracle(g, x, y, &z)? {
            out.push(z);
        }
    }
    out.sort();
    Ok(out)
}

/// All subsets of `set`, in no particular order.
pub fn subsets(set: &VarSet) -> Vec<VarSet> {
    let members = set.to_vec();
    (0u64..(1 << members.len()))
        .map(|mask| {
            members
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Random ADMG over nodes `V0..V{n-1}`: a random topological order, each
/// forward pair joined with probability `density`, plus up to
/// `max_bidirected` distinct bidirected edges (capped by the number of
/// node pairs).
pub fn random_admg<R: Rng>(rng: &mut R, n: usize, density: f64, max_bidirected: usize) -> Admg {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let name = |i: usize| format!("V{i}");
    let mut b = AdmgBuilder::new();
    for i in 0..n {
        b.node(&name(i)).expect("fresh name");
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                b.directed(&name(order[i]), &name(order[j]))
                    .expect("declared");
            }
        }
    }
    if n >= 2 {
        let count = rng.random_range(0..=max_bidirected.min(n * (n - 1) / 2));
        let mut pairs = Vec::new();
        while pairs.len() < count {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            let p = (u.min(v), u.max(v));
            if u != v && !pairs.contains(&p) {
                pairs.push(p);
            }
        }
        for (u, v) in pairs {
            b.bidirected(&name(u), &name(v)).expect("declared");
        }
    }
    b.build().expect("forward edges only")
}

/// Sparse random ADMG with `n` nodes, about `directed` directed edges and
/// `bidirected` bidirected edges. Node `V{i}` only has parents with smaller
/// index, so `V0` is a source and later nodes tend to have many ancestors.
pub fn sparse_random_admg<R: Rng>(
    rng: &mut R,
    n: usize,
    directed: usize,
    bidirected: usize,
) -> Admg {
    let name = |i: usize| format!("V{i}");
    let mut b = AdmgBuilder::new();
    for i in 0..n {
        b.node(&name(i)).expect("fresh name");
    }
    if n < 2 {
        return b.build().expect("no edges");
    }
    for _ in 0..directed {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            b.directed(&name(u.min(v)), &name(u.max(v)))
                .expect("declared");
        }
    }
    for _ in 0..bidirected {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            b.bidirected(&name(u), &name(v)).expect("declared");
        }
    }
    b.build().expect("edges follow index order")
}

/// The seeded corpus of small random ADMGs: `count` graphs with 3 to 6
/// nodes, edge density alternating between 0.2 and 0.4, and at most two
/// bidirected edges.
pub fn small_corpus(seed: u64, count: usize) -> Vec<Admg> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.random_range(3..=6);
            let density = if k % 2 == 0 { 0.2 } else { 0.4 };
            random_admg(&mut rng, n, density, 2)
        })
        .collect()
}
