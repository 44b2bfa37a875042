#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdom_core::bfs::all_pairs;
use rdom_core::generate::{generate, Instance, Kind};
use rdom_core::{Graph, LayeringPartition, RootedTree, TreeDecomposition};

/// Mixed Gnp and sparse graphs with `n` cycling through `1..=max_n`.
pub fn graph_cases(count: usize, max_n: usize, seed: u64) -> Vec<Instance> {
    (0..count)
        .map(|i| {
            let n = 1 + i % max_n;
            let s = seed + i as u64;
            let kind = match i % 3 {
                0 => {
                    let room = n * (n - 1) / 2 - (n - 1);
                    Kind::Sparse {
                        n,
                        m: n - 1 + (i / 3) % (room + 1),
                    }
                }
                1 => Kind::Gnp { n, p: 0.25 },
                _ => Kind::Gnp { n, p: 0.45 },
            };
            generate(&kind, 0..=3, s).expect("generator parameters are valid")
        })
        .collect()
}

/// Interval, spider and tree instances with decompositions, at most
/// `max_n` vertices and at least two.
pub fn td_cases(count: usize, max_n: usize, seed: u64, with_trees: bool) -> Vec<Instance> {
    let kinds = if with_trees { 3 } else { 2 };
    (0..count)
        .map(|i| {
            let s = seed + i as u64;
            let kind = match i % kinds {
                0 => Kind::Interval { n: 2 + (i / kinds) % (max_n - 1) },
                1 => {
                    let legs = 1 + (i / kinds) % 4;
                    let len = 1 + (i / (4 * kinds)) % 3;
                    let len = len.min((max_n - 1) / legs).max(1);
                    Kind::Spider { legs, len }
                }
                _ => Kind::Tree { n: 2 + (i / kinds) % (max_n - 1) },
            };
            generate(&kind, 0..=3, s).expect("generator parameters are valid")
        })
        .collect()
}

/// Random recursive tree on `k` nodes with radii in `0..=3`.
pub fn random_tree(k: usize, seed: u64) -> (RootedTree, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parent = (0..k).map(|v| (v > 0).then(|| rng.gen_range(0..v))).collect();
    let radii = (0..k).map(|_| rng.gen_range(0..=3)).collect();
    (RootedTree::from_parents(parent).unwrap(), radii)
}

/// Δ straight from the definition.
pub fn delta_by_definition(lp: &LayeringPartition, d: &[Vec<usize>]) -> usize {
    lp.clusters()
        .iter()
        .flat_map(|c| c.iter().flat_map(move |&u| c.iter().map(move |&v| d[u][v])))
        .max()
        .unwrap_or(0)
}

pub fn dist_to_set(d: &[Vec<usize>], v: usize, set: &[usize]) -> usize {
    set.iter().map(|&u| d[v][u]).min().unwrap_or(usize::MAX)
}

/// First vertex `v` with `d(v, set) > r(v) + slack`.
pub fn uncovered(d: &[Vec<usize>], radii: &[usize], set: &[usize], slack: usize) -> Option<usize> {
    (0..radii.len()).find(|&v| dist_to_set(d, v, set) > radii[v] + slack)
}

pub fn ecc(d: &[Vec<usize>], set: &[usize]) -> usize {
    (0..d.len()).map(|v| dist_to_set(d, v, set)).max().unwrap()
}

/// Whether every node `x` has a node of `nodes` within `radii[x]`.
pub fn tree_covers(t: &RootedTree, radii: &[usize], nodes: &[usize]) -> bool {
    let dist = t.distances_to_set(nodes);
    (0..t.len()).all(|x| dist[x] <= radii[x])
}

/// Whether every vertex `v` has a bag of `bags` within `radii[v]`.
pub fn td_covers(g: &Graph, td: &TreeDecomposition, radii: &[usize], bags: &[usize]) -> bool {
    let d = all_pairs(g);
    (0..g.n()).all(|v| bags.iter().any(|&b| td.bag(b).iter().any(|&u| d[v][u] <= radii[v])))
}
