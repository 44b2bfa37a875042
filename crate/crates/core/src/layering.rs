//! Layering partitions: BFS layers from a start vertex, split into clusters of
//! vertices that are connected through their own layer or deeper ones.
//!
//! Clusters form a tree rooted at `{s}`. Cluster ids are ordered by
//! `(layer, smallest member)`, so the root is cluster 0 and a child always has
//! a larger id than its parent.

use crate::bfs::bfs;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::RootedTree;
use crate::union_find::UnionFind;

#[derive(Debug, Clone)]
pub struct LayeringPartition {
    source: usize,
    layer: Vec<usize>,
    bfs_parent: Vec<Option<usize>>,
    cluster_of: Vec<usize>,
    clusters: Vec<Vec<usize>>,
    cluster_layer: Vec<usize>,
    tree: RootedTree,
}

impl LayeringPartition {
    /// Builds the layering partition of `g` from start vertex `s`.
    pub fn build(g: &Graph, s: usize) -> Result<Self> {
        let n = g.n();
        if s >= n {
            return Err(Error::VertexOutOfRange { v: s + 1, n });
        }
        let map = bfs(g, &[s], None)?;
        let layer: Vec<usize> = (0..n).map(|v| map.dist(v).expect("graph is connected")).collect();
        let bfs_parent: Vec<Option<usize>> = (0..n).map(|v| map.parent(v)).collect();
        let depth = map.max_dist();

        let mut layers: Vec<Vec<usize>> = vec![Vec::new(); depth + 1];
        for v in 0..n {
            layers[layer[v]].push(v);
        }

        // Deepest layer first: after merging layer i into the components of
        // G[L_{>i}], two vertices of L_i share a set iff they share a cluster.
        let mut uf = UnionFind::new(n);
        let mut rep = vec![0usize; n];
        for i in (0..=depth).rev() {
            for &v in &layers[i] {
                for &w in g.neighbors(v) {
                    if layer[w] >= i {
                        uf.union(v, w)?;
                    }
                }
            }
            for &v in &layers[i] {
                rep[v] = uf.find(v)?;
            }
        }

        let mut cluster_of = vec![usize::MAX; n];
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        let mut cluster_layer = Vec::new();
        // (layer stamp, cluster id) per UF representative
        let mut slot: Vec<(usize, usize)> = vec![(usize::MAX, 0); n];
        for (i, members) in layers.iter().enumerate() {
            for &v in members {
                let r = rep[v];
                if slot[r].0 != i {
                    slot[r] = (i, clusters.len());
                    clusters.push(Vec::new());
                    cluster_layer.push(i);
                }
                let c = slot[r].1;
                cluster_of[v] = c;
                clusters[c].push(v);
            }
        }

        let parent: Vec<Option<usize>> = clusters
            .iter()
            .map(|members| bfs_parent[members[0]].map(|p| cluster_of[p]))
            .collect();
        let tree = RootedTree::from_parents(parent)?;

        Ok(Self {
            source: s,
            layer,
            bfs_parent,
            cluster_of,
            clusters,
            cluster_layer,
            tree,
        })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn n_vertices(&self) -> usize {
        self.layer.len()
    }

    pub fn n_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn layer(&self, v: usize) -> usize {
        self.layer[v]
    }

    pub fn bfs_parent(&self, v: usize) -> Option<usize> {
        self.bfs_parent[v]
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    /// Members of cluster `c`, ascending.
    pub fn cluster(&self, c: usize) -> &[usize] {
        &self.clusters[c]
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn cluster_layer(&self, c: usize) -> usize {
        self.cluster_layer[c]
    }

    /// The cluster tree, rooted at the cluster of the start vertex.
    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    /// Distance in the cluster tree between the clusters of `u` and `v`.
    pub fn tree_distance(&self, u: usize, v: usize) -> usize {
        self.tree.distance(self.cluster_of[u], self.cluster_of[v])
    }

    /// `r(C) = min over v in C of r(v)`.
    pub fn cluster_radii(&self, radii: &[usize]) -> Vec<usize> {
        self.clusters
            .iter()
            .map(|members| members.iter().map(|&v| radii[v]).min().unwrap())
            .collect()
    }

    /// Text dump with 1-based ids: `C <id> <layer> <v...>` per cluster, then
    /// `T <parent> <child>` per tree edge.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (c, members) in self.clusters.iter().enumerate() {
            out.push_str(&format!("C {} {}", c + 1, self.cluster_layer[c]));
            for &v in members {
                out.push_str(&format!(" {}", v + 1));
            }
            out.push('\n');
        }
        for (p, c) in self.tree.edges() {
            out.push_str(&format!("T {} {}\n", p + 1, c + 1));
        }
        out
    }
}

/// Reusable BFS scratch that resets only the vertices it touched.
struct ScratchBfs {
    dist: Vec<usize>,
    touched: Vec<usize>,
    queue: std::collections::VecDeque<usize>,
}

impl ScratchBfs {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![usize::MAX; n],
            touched: Vec::new(),
            queue: Default::default(),
        }
    }

    /// Largest distance from `x` to a vertex flagged in `target`, stopping as
    /// soon as all `count` targets are reached.
    fn eccentricity_within(&mut self, g: &Graph, x: usize, target: &[bool], count: usize) -> usize {
        for &v in &self.touched {
            self.dist[v] = usize::MAX;
        }
        self.touched.clear();
        self.queue.clear();
        self.dist[x] = 0;
        self.touched.push(x);
        self.queue.push_back(x);
        let mut remaining = count - 1;
        let mut ecc = 0;
        while let Some(u) = self.queue.pop_front() {
            if remaining == 0 {
                break;
            }
            for &w in g.neighbors(u) {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[u] + 1;
                    self.touched.push(w);
                    self.queue.push_back(w);
                    if target[w] {
                        remaining -= 1;
                        ecc = self.dist[w];
                    }
                }
            }
        }
        ecc
    }
}

/// Δ: the largest graph distance between two vertices of a common cluster.
/// One truncated BFS per vertex of every non-singleton cluster.
pub fn cluster_diameter(g: &Graph, lp: &LayeringPartition) -> usize {
    let mut scratch = ScratchBfs::new(g.n());
    let mut member = vec![false; g.n()];
    let mut best = 0;
    for c in lp.clusters().iter().filter(|c| c.len() > 1) {
        for &v in c {
            member[v] = true;
        }
        for &x in c {
            best = best.max(scratch.eccentricity_within(g, x, &member, c.len()));
        }
        for &v in c {
            member[v] = false;
        }
    }
    best
}

/// Upper bound on Δ: twice the largest distance from each cluster's smallest
/// member to the rest of its cluster. One truncated BFS per cluster.
pub fn cluster_diameter_upper(g: &Graph, lp: &LayeringPartition) -> usize {
    let mut scratch = ScratchBfs::new(g.n());
    let mut member = vec![false; g.n()];
    let mut best = 0;
    for c in lp.clusters().iter().filter(|c| c.len() > 1) {
        for &v in c {
            member[v] = true;
        }
        best = best.max(2 * scratch.eccentricity_within(g, c[0], &member, c.len()));
        for &v in c {
            member[v] = false;
        }
    }
    best
}
