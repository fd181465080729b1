use frontdoor::oracle::{d_sep_oracle, random_admg, subsets};
use frontdoor::{
    causal_path_graph, check_fd, find_fd_set, list_fd_sets, moralize, test_sep, Admg, VarSet,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph(seed: u64, n: usize) -> (Admg, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = rng.random_range(0.15..0.5);
    let g = random_admg(&mut rng, n, density, 3);
    (g, rng)
}

/// Random disjoint (A, B, C) over the nodes, with A and B nonempty when
/// the graph has at least two nodes.
fn triple(rng: &mut ChaCha8Rng, g: &Admg) -> (VarSet, VarSet, VarSet) {
    let (mut a, mut b, mut c) = (VarSet::new(), VarSet::new(), VarSet::new());
    let nodes = g.nodes().to_vec();
    for &v in &nodes {
        match rng.random_range(0..4) {
            0 => a.insert(v),
            1 => b.insert(v),
            2 => c.insert(v),
            _ => false,
        };
    }
    if a.is_empty() {
        let v = nodes[0];
        b.remove(v);
        c.remove(v);
        a.insert(v);
    }
    if b.is_empty() {
        let v = *nodes.last().unwrap();
        a.remove(v);
        c.remove(v);
        b.insert(v);
    }
    (a, b, c)
}

/// Random singleton X, Y and a range `I ⊆ R` outside them.
fn query(rng: &mut ChaCha8Rng, g: &Admg) -> (VarSet, VarSet, VarSet, VarSet) {
    let nodes = g.nodes().to_vec();
    let x = nodes[rng.random_range(0..nodes.len())];
    let mut y = x;
    while y == x {
        y = nodes[rng.random_range(0..nodes.len())];
    }
    let r: VarSet = g
        .nodes()
        .without(x)
        .without(y)
        .iter()
        .filter(|_| rng.random_bool(0.75))
        .collect();
    let i: VarSet = r.iter().filter(|_| rng.random_bool(0.2)).collect();
    (VarSet::singleton(x), VarSet::singleton(y), i, r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closures_are_monotone_and_idempotent(seed in any::<u64>(), n in 1usize..9) {
        let (g, mut rng) = graph(seed, n);
        let s: VarSet = g.nodes().iter().filter(|_| rng.random_bool(0.3)).collect();
        let t = s.union(&g.nodes().iter().filter(|_| rng.random_bool(0.3)).collect());
        prop_assert!(g.ancestors(&s).is_subset(&g.ancestors(&t)));
        prop_assert!(g.descendants(&s).is_subset(&g.descendants(&t)));
        prop_assert_eq!(g.ancestors(&g.ancestors(&s)), g.ancestors(&s));
        prop_assert_eq!(g.descendants(&g.descendants(&s)), g.descendants(&s));
    }

    #[test]
    fn edge_removal_is_idempotent(seed in any::<u64>(), n in 1usize..9) {
        let (g, mut rng) = graph(seed, n);
        let s: VarSet = g.nodes().iter().filter(|_| rng.random_bool(0.4)).collect();
        let once = g.remove_incoming(&s);
        let twice = once.remove_incoming(&s);
        prop_assert_eq!(frontdoor::render_graph(&once), frontdoor::render_graph(&twice));
        let once = g.remove_outgoing(&s);
        let twice = once.remove_outgoing(&s);
        prop_assert_eq!(frontdoor::render_graph(&once), frontdoor::render_graph(&twice));
    }

    #[test]
    fn separation_is_symmetric(seed in any::<u64>(), n in 2usize..9) {
        let (g, mut rng) = graph(seed, n);
        let (a, b, c) = triple(&mut rng, &g);
        prop_assert_eq!(test_sep(&g, &a, &b, &c).unwrap(), test_sep(&g, &b, &a, &c).unwrap());
    }

    #[test]
    fn latent_expansion_preserves_separation(seed in any::<u64>(), n in 2usize..8) {
        let (g, mut rng) = graph(seed, n);
        let (a, b, c) = triple(&mut rng, &g);
        let expanded = g.latent_expand().unwrap();
        prop_assert_eq!(expanded.node_count(), g.node_count() + g.bidirected_edges().count());
        let before = test_sep(&g, &a, &b, &c).unwrap();
        prop_assert_eq!(before, test_sep(&expanded, &a, &b, &c).unwrap());
        prop_assert_eq!(before, d_sep_oracle(&expanded, &a, &b, &c).unwrap());
    }

    #[test]
    fn moral_graph_cut_matches_separation(seed in any::<u64>(), n in 2usize..8) {
        let (g, mut rng) = graph(seed, n);
        let (t, y, x) = triple(&mut rng, &g);
        let scope = g.ancestors(&t.union(&y).union(&x));
        let mut m = moralize(&g.induced_subgraph(&scope).latent_expand().unwrap()).unwrap();
        m.remove_nodes(&x);
        let cut = m.component(&t).is_disjoint(&y);
        prop_assert_eq!(cut, test_sep(&g, &t, &y, &x).unwrap());
    }

    #[test]
    fn causal_path_graph_shape(seed in any::<u64>(), n in 2usize..9) {
        let (g, mut rng) = graph(seed, n);
        let (x, y, _, _) = query(&mut rng, &g);
        let cpg = causal_path_graph(&g, &x, &y);
        prop_assert_eq!(cpg.bidirected_edges().count(), 0);
        for v in x.iter() {
            prop_assert!(cpg.parents(v).is_empty());
        }
        for v in y.iter() {
            prop_assert!(cpg.children(v).is_empty());
        }
        let reach = cpg.descendants(&x).intersection(&cpg.ancestors(&y));
        for v in cpg.nodes().difference(&x.union(&y)).iter() {
            prop_assert!(reach.contains(v));
        }
    }

    #[test]
    fn found_sets_are_valid(seed in any::<u64>(), n in 2usize..10) {
        let (g, mut rng) = graph(seed, n);
        let (x, y, i, r) = query(&mut rng, &g);
        if let Some(z) = find_fd_set(&g, &x, &y, &i, &r).unwrap() {
            prop_assert!(i.is_subset(&z) && z.is_subset(&r));
            let report = check_fd(&g, &x, &y, &z).unwrap();
            prop_assert!(report.is_valid(), "{:?}", report);
        }
    }

    #[test]
    fn shrinking_the_range_never_creates_a_solution(seed in any::<u64>(), n in 2usize..9) {
        let (g, mut rng) = graph(seed, n);
        let (x, y, i, r) = query(&mut rng, &g);
        if find_fd_set(&g, &x, &y, &i, &r).unwrap().is_none() {
            for smaller in subsets(&r.difference(&i)) {
                let r2 = smaller.union(&i);
                prop_assert!(find_fd_set(&g, &x, &y, &i, &r2).unwrap().is_none());
            }
        }
    }

    #[test]
    fn listing_is_distinct_valid_and_prefix_stable(seed in any::<u64>(), n in 2usize..9, cut in 0u64..6) {
        let (g, mut rng) = graph(seed, n);
        let (x, y, i, r) = query(&mut rng, &g);
        let full: Vec<VarSet> = list_fd_sets(&g, &x, &y, &i, &r).unwrap().collect();
        let mut sorted = full.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), full.len());
        for z in &full {
            prop_assert!(check_fd(&g, &x, &y, z).unwrap().is_valid());
            prop_assert!(i.is_subset(z) && z.is_subset(&r));
        }
        prop_assert_eq!(find_fd_set(&g, &x, &y, &i, &r).unwrap().is_none(), full.is_empty());
        let head: Vec<VarSet> = list_fd_sets(&g, &x, &y, &i, &r).unwrap().take(cut as usize).collect();
        prop_assert_eq!(&head[..], &full[..head.len()]);
        let limited: Vec<VarSet> = list_fd_sets(&g, &x, &y, &i, &r).unwrap().limit(cut).collect();
        let expect = if cut == 0 { full.len() } else { full.len().min(cut as usize) };
        prop_assert_eq!(&limited[..], &full[..expect]);
    }
}
