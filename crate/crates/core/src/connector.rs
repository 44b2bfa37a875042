//! Connected vertex sets hitting every cluster of a cluster subtree.
//!
//! Leaf-to-ancestor shortest paths are laid down first, one per leaf, so that
//! each cluster of the subtree meets exactly one path in exactly one vertex.
//! The paths are then joined Kruskal-style along the cheapest edges between
//! their BFS regions.

use crate::bfs::bfs_labeled;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layering::LayeringPartition;
use crate::sort::counting_sort;
use crate::tree::Subtree;
use crate::union_find::UnionFind;

/// Vertex-disjoint paths, each running from a leaf cluster of the subtree up
/// to its highest ancestor not yet hit by an earlier path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSystem {
    paths: Vec<Vec<usize>>,
    start: Vec<usize>,
    end: Vec<usize>,
}

impl PathSystem {
    /// Vertex sequences, each starting in its leaf cluster.
    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Cluster the `i`-th path starts in.
    pub fn start_cluster(&self, i: usize) -> usize {
        self.start[i]
    }

    /// Cluster the `i`-th path ends in.
    pub fn end_cluster(&self, i: usize) -> usize {
        self.end[i]
    }

    /// Checks that every cluster of `t` meets exactly one path in exactly one
    /// vertex and that no path leaves `t`.
    pub fn verify(&self, lp: &LayeringPartition, t: &Subtree) -> Result<()> {
        let mut hits = vec![0usize; lp.n_clusters()];
        let mut owner = vec![usize::MAX; lp.n_clusters()];
        for (i, path) in self.paths.iter().enumerate() {
            for &v in path {
                let c = lp.cluster_of(v);
                if !t.contains(c) {
                    return Err(Error::Invariant(format!(
                        "path {} leaves the subtree at vertex {}",
                        i + 1,
                        v + 1
                    )));
                }
                if owner[c] != usize::MAX && owner[c] != i {
                    return Err(Error::Invariant(format!(
                        "cluster {} is hit by paths {} and {}",
                        c + 1,
                        owner[c] + 1,
                        i + 1
                    )));
                }
                owner[c] = i;
                hits[c] += 1;
            }
        }
        for &c in t.nodes() {
            if hits[c] != 1 {
                return Err(Error::Invariant(format!(
                    "cluster {} is hit by {} path vertices",
                    c + 1,
                    hits[c]
                )));
            }
        }
        Ok(())
    }
}

/// Output of [`connect_cluster_tree`].
#[derive(Debug, Clone)]
pub struct Connection {
    /// The connected set, ascending.
    pub set: Vec<usize>,
    pub paths: PathSystem,
    /// `d(u) + d(v)` of every edge that joined two regions, in join order.
    pub join_keys: Vec<usize>,
}

fn check_subtree(lp: &LayeringPartition, t: &Subtree) -> Result<()> {
    // re-validating against the cluster tree also rejects foreign subtrees
    let again = Subtree::new(lp.tree(), t.nodes().to_vec())?;
    if again.root() != t.root() {
        return Err(Error::InvalidSubtree("subtree root does not match the cluster tree".into()));
    }
    Ok(())
}

/// Lays down the leaf paths. Leaves other than the subtree root are handled
/// in ascending cluster id, each path starting at the smallest vertex of its
/// leaf and following BFS parents. A single-cluster subtree yields one
/// one-vertex path.
pub fn build_leaf_paths(g: &Graph, lp: &LayeringPartition, t: &Subtree) -> Result<PathSystem> {
    if g.n() != lp.n_vertices() {
        return Err(Error::InvalidParameter("layering partition belongs to another graph".into()));
    }
    check_subtree(lp, t)?;
    let tree = lp.tree();
    if t.len() == 1 {
        let c = t.root();
        return Ok(PathSystem {
            paths: vec![vec![lp.cluster(c)[0]]],
            start: vec![c],
            end: vec![c],
        });
    }
    let mut inside = vec![false; lp.n_clusters()];
    for &c in t.nodes() {
        inside[c] = true;
    }
    let mut flagged = vec![false; lp.n_clusters()];
    let mut system = PathSystem {
        paths: Vec::new(),
        start: Vec::new(),
        end: Vec::new(),
    };
    for &leaf in t.leaves().iter().filter(|&&c| c != t.root()) {
        let mut top = leaf;
        while let Some(p) = tree.parent(top) {
            if inside[p] && !flagged[p] {
                top = p;
            } else {
                break;
            }
        }
        let mut v = lp.cluster(leaf)[0];
        let mut path = vec![v];
        flagged[leaf] = true;
        while lp.cluster_of(v) != top {
            v = lp.bfs_parent(v).expect("non-root cluster has a parent");
            flagged[lp.cluster_of(v)] = true;
            path.push(v);
        }
        system.paths.push(path);
        system.start.push(leaf);
        system.end.push(top);
    }
    Ok(system)
}

/// Builds a connected vertex set meeting every cluster of `t`.
pub fn connect_cluster_tree(g: &Graph, lp: &LayeringPartition, t: &Subtree) -> Result<Connection> {
    let paths = build_leaf_paths(g, lp, t)?;
    let n = g.n();
    let mut in_set = vec![false; n];
    let mut seeds = Vec::new();
    for (i, path) in paths.paths().iter().enumerate() {
        for &v in path {
            in_set[v] = true;
            seeds.push((v, i));
        }
    }
    let mut join_keys = Vec::new();
    if paths.len() > 1 {
        let regions = bfs_labeled(g, &seeds, None)?;
        let label = |v: usize| regions.source(v).expect("graph is connected");
        let d = |v: usize| regions.dist(v).expect("graph is connected");
        let candidates: Vec<((usize, usize), usize)> = g
            .edges()
            .filter(|&(u, v)| label(u) != label(v))
            .map(|(u, v)| ((u, v), d(u) + d(v)))
            .collect();
        let order = counting_sort(&candidates, 2 * (n - 1))?;
        let mut uf = UnionFind::new(paths.len());
        for (u, v) in order {
            if uf.components() == 1 {
                break;
            }
            if !uf.union(label(u), label(v))? {
                continue;
            }
            join_keys.push(d(u) + d(v));
            for end in [u, v] {
                let mut x = end;
                while !in_set[x] {
                    in_set[x] = true;
                    x = regions.parent(x).expect("unflagged vertex is not a seed");
                }
            }
        }
    }
    let set: Vec<usize> = (0..n).filter(|&v| in_set[v]).collect();
    Ok(Connection {
        set,
        paths,
        join_keys,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layering::cluster_diameter;
    use crate::tree::tree_min_covering_subtree;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn single_cluster_seeds_one_vertex() {
        let g = cycle(6);
        let lp = LayeringPartition::build(&g, 0).unwrap();
        let t = Subtree::new(lp.tree(), vec![2]).unwrap();
        let c = connect_cluster_tree(&g, &lp, &t).unwrap();
        assert_eq!(c.set, vec![2]);
        assert_eq!(c.paths.paths(), &[vec![2]]);
    }

    #[test]
    fn cycle_two_clusters() {
        let g = cycle(6);
        let lp = LayeringPartition::build(&g, 0).unwrap();
        let t = Subtree::new(lp.tree(), vec![1, 2]).unwrap();
        let ps = build_leaf_paths(&g, &lp, &t).unwrap();
        assert_eq!(ps.paths(), &[vec![2, 1]]);
        assert_eq!((ps.start_cluster(0), ps.end_cluster(0)), (2, 1));
        ps.verify(&lp, &t).unwrap();
    }

    #[test]
    fn cycle_whole_tree() {
        let g = cycle(6);
        let lp = LayeringPartition::build(&g, 0).unwrap();
        let t = Subtree::new(lp.tree(), vec![0, 1, 2, 3]).unwrap();
        let c = connect_cluster_tree(&g, &lp, &t).unwrap();
        assert_eq!(c.paths.paths(), &[vec![3, 2, 1, 0]]);
        assert_eq!(c.set, vec![0, 1, 2, 3]);
        assert!(c.join_keys.is_empty());
    }

    #[test]
    fn joins_two_branches() {
        // spider with two arms 0-1-2 and 0-3-4
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 3), (3, 4)]).unwrap();
        let lp = LayeringPartition::build(&g, 0).unwrap();
        assert_eq!(lp.clusters(), &[vec![0], vec![1], vec![3], vec![2], vec![4]]);
        let t = Subtree::new(lp.tree(), vec![0, 1, 2]).unwrap();
        let c = connect_cluster_tree(&g, &lp, &t).unwrap();
        assert_eq!(c.paths.paths(), &[vec![1, 0], vec![3]]);
        assert_eq!(c.set, vec![0, 1, 3]);
        assert_eq!(c.join_keys, vec![0]);
    }

    #[test]
    fn rejects_foreign_subtree() {
        let g = cycle(6);
        let lp = LayeringPartition::build(&g, 0).unwrap();
        let other = crate::tree::RootedTree::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)], 0).unwrap();
        let t = Subtree::new(&other, vec![4, 5]).unwrap();
        assert!(connect_cluster_tree(&g, &lp, &t).is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let parents = prop::collection::vec(any::<prop::sample::Index>(), n - 1);
            let extra = prop::collection::vec((0..n, 0..n), 0..2 * n);
            (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
                let mut set = std::collections::BTreeSet::new();
                for (i, p) in parents.iter().enumerate() {
                    set.insert((p.index(i + 1), i + 1));
                }
                for (a, b) in extra {
                    if a != b {
                        set.insert((a.min(b), a.max(b)));
                    }
                }
                Graph::from_edges(n, &set.into_iter().collect::<Vec<_>>()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn postconditions_on_pipeline_subtrees(
            g in arb_graph(24),
            radii in prop::collection::vec(0usize..4, 24),
            shift in 0usize..4,
        ) {
            let lp = LayeringPartition::build(&g, 0).unwrap();
            let delta = cluster_diameter(&g, &lp);
            let r: Vec<usize> = lp.cluster_radii(&radii[..g.n()]).iter().map(|x| x + shift).collect();
            let t = tree_min_covering_subtree(lp.tree(), &r);
            let c = connect_cluster_tree(&g, &lp, &t).unwrap();
            c.paths.verify(&lp, &t).unwrap();
            prop_assert!(g.is_connected_subset(&c.set));
            for &cl in t.nodes() {
                prop_assert!(lp.cluster(cl).iter().any(|v| c.set.binary_search(v).is_ok()));
            }
            prop_assert!(c.set.len() <= t.len() + delta * t.leaf_count());
            prop_assert!(c.join_keys.iter().all(|&k| k <= delta));
        }
    }
}
