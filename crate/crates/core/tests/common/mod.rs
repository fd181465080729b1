//! Corpus-wide comparisons against the brute-force oracle, shared by the
//! integration tests and the acceptance runner.

#![allow(dead_code)]

use frontdoor::find::{get_cand_2nd_fdc, get_cand_3rd_fdc};
use frontdoor::oracle::{
    d_sep_oracle, enumerate_all_oracle, fd_oracle, intercepts_all_directed_paths, small_corpus,
    subsets,
};
use frontdoor::{
    causal_path_graph, check_fd, find_fd_set, list_fd_sets, test_sep, Admg, NodeId, VarSet,
};
use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5EED_F00D;
pub const CORPUS_SIZE: usize = 200;

pub fn corpus() -> Vec<Admg> {
    small_corpus(CORPUS_SEED, CORPUS_SIZE)
}

/// Running count of comparisons and disagreements.
#[derive(Debug, Default)]
pub struct Tally {
    pub checked: u64,
    pub mismatches: u64,
    pub first: Option<String>,
}

impl Tally {
    pub fn record(&mut self, agree: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !agree {
            self.mismatches += 1;
            if self.first.is_none() {
                self.first = Some(detail());
            }
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.mismatches += other.mismatches;
        if self.first.is_none() {
            self.first = other.first;
        }
    }

    pub fn ok(&self) -> bool {
        self.checked > 0 && self.mismatches == 0
    }

    pub fn summary(&self) -> String {
        match &self.first {
            None => format!("{} checks, 0 mismatches", self.checked),
            Some(d) => format!(
                "{} checks, {} mismatches (first: {d})",
                self.checked, self.mismatches
            ),
        }
    }
}

pub fn describe(g: &Admg) -> String {
    frontdoor::render_graph(g).replace('\n', "; ")
}

pub fn names(g: &Admg, s: &VarSet) -> String {
    format!("{{{}}}", g.names_of(s).join(","))
}

/// Ordered pairs of distinct nodes.
pub fn pairs(g: &Admg) -> Vec<(NodeId, NodeId)> {
    let nodes = g.nodes().to_vec();
    let mut out = Vec::new();
    for &x in &nodes {
        for &y in &nodes {
            if x != y {
                out.push((x, y));
            }
        }
    }
    out
}

/// Every assignment of nodes to A, B, C or none with A and B nonempty.
pub fn disjoint_triples(g: &Admg) -> Vec<(VarSet, VarSet, VarSet)> {
    let nodes = g.nodes().to_vec();
    let total = 4usize.pow(nodes.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let (mut a, mut b, mut c) = (VarSet::new(), VarSet::new(), VarSet::new());
        let mut k = code;
        for &v in &nodes {
            match k % 4 {
                1 => a.insert(v),
                2 => b.insert(v),
                3 => c.insert(v),
                _ => false,
            };
            k /= 4;
        }
        if !a.is_empty() && !b.is_empty() {
            out.push((a, b, c));
        }
    }
    out
}

/// Random `(I, R)` with `I ⊆ R ⊆ V \ {x, y}`.
pub fn random_range<R: Rng>(rng: &mut R, g: &Admg, x: NodeId, y: NodeId) -> (VarSet, VarSet) {
    let free = g.nodes().without(x).without(y);
    let r: VarSet = free.iter().filter(|_| rng.random_bool(0.7)).collect();
    let i: VarSet = r.iter().filter(|_| rng.random_bool(0.25)).collect();
    (i, r)
}

pub fn sep_equivalence(g: &Admg) -> Tally {
    let mut t = Tally::default();
    for (a, b, c) in disjoint_triples(g) {
        let fast = test_sep(g, &a, &b, &c).unwrap();
        let slow = d_sep_oracle(g, &a, &b, &c).unwrap();
        t.record(fast == slow, || {
            format!(
                "{} | {} ⟂ {} given {}: fast {fast}, oracle {slow}",
                describe(g),
                names(g, &a),
                names(g, &b),
                names(g, &c)
            )
        });
    }
    t
}

pub fn check_equivalence(g: &Admg) -> Tally {
    let mut t = Tally::default();
    for (x, y) in pairs(g) {
        let (xs, ys) = (VarSet::singleton(x), VarSet::singleton(y));
        for z in subsets(&g.nodes().difference(&xs.union(&ys))) {
            let fast = check_fd(g, &xs, &ys, &z).unwrap().is_valid();
            let slow = fd_oracle(g, &xs, &ys, &z).unwrap();
            t.record(fast == slow, || {
                format!(
                    "{} | x={} y={} z={}: check {fast}, oracle {slow}",
                    describe(g),
                    g.name(x),
                    g.name(y),
                    names(g, &z)
                )
            });
        }
    }
    t
}

/// Compares listing and finding with the oracle family, for the full range
/// and for `extra` random `(I, R)` per pair. Returns (list, find) tallies.
pub fn family_equivalence(g: &Admg, rng: &mut ChaCha8Rng, extra: usize) -> (Tally, Tally) {
    let (mut lt, mut ft) = (Tally::default(), Tally::default());
    for (x, y) in pairs(g) {
        let (xs, ys) = (VarSet::singleton(x), VarSet::singleton(y));
        let mut ranges = vec![(VarSet::new(), g.nodes().difference(&xs.union(&ys)))];
        ranges.extend((0..extra).map(|_| random_range(rng, g, x, y)));
        for (i, r) in ranges {
            let family = enumerate_all_oracle(g, &xs, &ys, &i, &r).unwrap();
            let mut listed: Vec<VarSet> = list_fd_sets(g, &xs, &ys, &i, &r).unwrap().collect();
            listed.sort();
            let ctx = || {
                format!(
                    "{} | x={} y={} I={} R={}",
                    describe(g),
                    g.name(x),
                    g.name(y),
                    names(g, &i),
                    names(g, &r)
                )
            };
            lt.record(listed == family, || {
                format!(
                    "{}: listed {} sets, oracle {}",
                    ctx(),
                    listed.len(),
                    family.len()
                )
            });
            let found = find_fd_set(g, &xs, &ys, &i, &r).unwrap();
            let agree = match &found {
                None => family.is_empty(),
                Some(z) => family.contains(z),
            };
            ft.record(agree, || {
                format!(
                    "{}: found {:?}, oracle family size {}",
                    ctx(),
                    found.map(|z| names(g, &z)),
                    family.len()
                )
            });
        }
    }
    (lt, ft)
}

/// Every subset of the second-condition candidates passes condition 2, and
/// every subset of the range passing condition 2 lies inside the candidates.
pub fn second_condition_filter_law(g: &Admg, rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    for (x, y) in pairs(g) {
        let xs = VarSet::singleton(x);
        let (i, r) = random_range(rng, g, x, y);
        let gx = g.remove_outgoing(&xs);
        let passes =
            |z: &VarSet| z.is_empty() || d_sep_oracle(&gx, &xs, z, &VarSet::new()).unwrap();
        let cand = get_cand_2nd_fdc(g, &xs, &i, &r).unwrap();
        let passing: Vec<VarSet> = subsets(&r)
            .into_iter()
            .filter(|z| i.is_subset(z) && passes(z))
            .collect();
        let ctx = || {
            format!(
                "{} | x={} I={} R={}",
                describe(g),
                g.name(x),
                names(g, &i),
                names(g, &r)
            )
        };
        match cand {
            None => t.record(passing.is_empty(), || {
                format!("{}: NONE but a passing set exists", ctx())
            }),
            Some(c) => {
                t.record(subsets(&c).iter().all(passes), || {
                    format!("{}: a subset of {} fails", ctx(), names(g, &c))
                });
                t.record(passing.iter().all(|z| z.is_subset(&c)), || {
                    format!("{}: passing set outside {}", ctx(), names(g, &c))
                });
            }
        }
    }
    t
}

/// The third-condition candidates, taken together, satisfy condition 3.
pub fn third_condition_filter_law(g: &Admg, rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    for (x, y) in pairs(g) {
        let (xs, ys) = (VarSet::singleton(x), VarSet::singleton(y));
        let (i, r) = random_range(rng, g, x, y);
        let Some(r1) = get_cand_2nd_fdc(g, &xs, &i, &r).unwrap() else {
            continue;
        };
        let Some(r2) = get_cand_3rd_fdc(g, &xs, &ys, &i, &r1).unwrap() else {
            continue;
        };
        if r2.is_empty() {
            continue;
        }
        let ok = test_sep(&g.remove_outgoing(&r2), &r2, &ys, &xs).unwrap();
        let oracle = d_sep_oracle(&g.remove_outgoing(&r2), &r2, &ys, &xs).unwrap();
        t.record(ok && oracle, || {
            format!(
                "{} | x={} y={} candidates={}: condition 3 fails",
                describe(g),
                g.name(x),
                g.name(y),
                names(g, &r2)
            )
        });
    }
    t
}

/// `Z` intercepts every directed path from `X` to `Y` iff it separates them
/// in the causal path graph.
pub fn causal_path_separator_law(g: &Admg) -> Tally {
    let mut t = Tally::default();
    for (x, y) in pairs(g) {
        let (xs, ys) = (VarSet::singleton(x), VarSet::singleton(y));
        let cpg = causal_path_graph(g, &xs, &ys);
        for z in subsets(&g.nodes().difference(&xs.union(&ys))) {
            let paths = intercepts_all_directed_paths(g, &xs, &ys, &z).unwrap();
            let sep = test_sep(&cpg, &xs, &ys, &z.intersection(cpg.nodes())).unwrap();
            t.record(paths == sep, || {
                format!(
                    "{} | x={} y={} z={}: paths {paths}, separator {sep}",
                    describe(g),
                    g.name(x),
                    g.name(y),
                    names(g, &z)
                )
            });
        }
    }
    t
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ stream)
}

/// A node chosen uniformly from `set`.
pub fn pick<R: Rng>(rng: &mut R, set: &VarSet) -> Option<NodeId> {
    set.iter().choose(rng)
}
