//! Rooted node trees and exact algorithms on them: minimum r-dominating set,
//! minimum r-dominating (covering) subtree, p-center and connected p-center.
//!
//! Radii are per node and distances are hop counts in the tree. Nodes are
//! `0..len`; all ties are broken towards the smallest node id.

use crate::error::{Error, Result};
use std::collections::VecDeque;

const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    order: Vec<usize>,
}

impl RootedTree {
    /// Builds a tree from a parent array with exactly one `None` entry.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidParameter("tree has no nodes".into()));
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidParameter(format!(
                "tree must have exactly one root, found {}",
                roots.len()
            )));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Error::IdOutOfRange { id: p, len: n });
                }
                children[p].push(v);
            }
        }
        let tree = Self::assemble(roots[0], parent, children);
        if tree.order.len() != n {
            return Err(Error::InvalidParameter("parent array contains a cycle".into()));
        }
        Ok(tree)
    }

    /// Builds a tree on `n` nodes from undirected edges, rooted at `root`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], root: usize) -> Result<Self> {
        if n == 0 || root >= n {
            return Err(Error::IdOutOfRange { id: root, len: n });
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidParameter(format!(
                "a tree on {n} nodes needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::IdOutOfRange { id: u.max(v), len: n });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let parent = orient(&adj, root);
        if parent.iter().enumerate().any(|(v, p)| v != root && p.is_none()) {
            return Err(Error::InvalidParameter("edges do not form a tree".into()));
        }
        Self::from_parents(parent)
    }

    fn assemble(root: usize, parent: Vec<Option<usize>>, mut children: Vec<Vec<usize>>) -> Self {
        let n = parent.len();
        for c in &mut children {
            c.sort_unstable();
        }
        let mut depth = vec![0; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        let mut seen = vec![false; n];
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &c in &children[v] {
                if !seen[c] {
                    seen[c] = true;
                    depth[c] = depth[v] + 1;
                    queue.push_back(c);
                }
            }
        }
        Self {
            root,
            parent,
            children,
            depth,
            order,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Nodes in BFS order from the root, children ascending.
    pub fn bfs_order(&self) -> &[usize] {
        &self.order
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent[v].into_iter().chain(self.children[v].iter().copied())
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter_map(|v| self.parent[v].map(|p| (p, v)))
            .collect()
    }

    /// The same tree rooted at `root`.
    pub fn rerooted(&self, root: usize) -> Self {
        let adj: Vec<Vec<usize>> = (0..self.len()).map(|v| self.neighbors(v).collect()).collect();
        let parent = orient(&adj, root);
        let mut children = vec![Vec::new(); self.len()];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        Self::assemble(root, parent, children)
    }

    pub fn distance(&self, mut u: usize, mut v: usize) -> usize {
        let mut d = 0;
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].unwrap();
            d += 1;
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].unwrap();
            d += 1;
        }
        while u != v {
            u = self.parent[u].unwrap();
            v = self.parent[v].unwrap();
            d += 2;
        }
        d
    }

    /// Hop distance from every node to the nearest node of `set`.
    pub fn distances_to_set(&self, set: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        let mut queue = VecDeque::new();
        for &s in set {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest distance between two nodes.
    pub fn diameter(&self) -> usize {
        let d0 = self.distances_to_set(&[self.root]);
        let far = (0..self.len()).max_by_key(|&v| (d0[v], std::cmp::Reverse(v))).unwrap();
        *self.distances_to_set(&[far]).iter().max().unwrap()
    }

    /// The subtree induced by the connected node set `nodes`, as a tree of its
    /// own rooted at the node closest to this tree's root. Returns the tree and
    /// the map from new ids (ascending order of the old ids) to old ids.
    pub fn induced(&self, nodes: &Subtree) -> (RootedTree, Vec<usize>) {
        let map: Vec<usize> = nodes.nodes().to_vec();
        let index = |old: usize| map.binary_search(&old).ok();
        let parent: Vec<Option<usize>> = map
            .iter()
            .map(|&old| self.parent[old].and_then(index))
            .collect();
        let tree = Self::from_parents(parent).expect("subtree is connected");
        (tree, map)
    }
}

/// Parent pointers of the tree given by `adj` when rooted at `root`.
fn orient(adj: &[Vec<usize>], root: usize) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                stack.push(w);
            }
        }
    }
    parent
}

/// A connected set of nodes of a host [`RootedTree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    nodes: Vec<usize>,
    root: usize,
    leaves: Vec<usize>,
}

impl Subtree {
    /// Validates that `nodes` is non-empty and connected in `host`.
    pub fn new(host: &RootedTree, mut nodes: Vec<usize>) -> Result<Self> {
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.is_empty() {
            return Err(Error::InvalidSubtree("empty node set".into()));
        }
        if let Some(&bad) = nodes.iter().find(|&&v| v >= host.len()) {
            return Err(Error::IdOutOfRange {
                id: bad,
                len: host.len(),
            });
        }
        let contains = |v: usize| nodes.binary_search(&v).is_ok();
        let tops: Vec<usize> = nodes
            .iter()
            .copied()
            .filter(|&v| host.parent(v).is_none_or(|p| !contains(p)))
            .collect();
        if tops.len() != 1 {
            return Err(Error::InvalidSubtree(format!(
                "node set splits into {} components",
                tops.len()
            )));
        }
        let leaves = if nodes.len() == 1 {
            Vec::new()
        } else {
            nodes
                .iter()
                .copied()
                .filter(|&v| host.neighbors(v).filter(|&w| contains(w)).count() == 1)
                .collect()
        };
        Ok(Self {
            root: tops[0],
            nodes,
            leaves,
        })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The node closest to the host root.
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn contains(&self, v: usize) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    /// Degree-one nodes of the induced subtree (the root included when it has
    /// degree one). Empty for a single node.
    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    /// Λ: number of leaves, 0 for a single node.
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }
}

/// For every node `x`, `max_v (d(x, v) - r(v))`. Node `x` alone r-dominates
/// the tree iff its value is `<= 0`.
pub fn domination_excess(t: &RootedTree, radii: &[usize]) -> Vec<i64> {
    let n = t.len();
    let r = |v: usize| radii[v] as i64;
    let mut down = vec![-INF; n];
    for &v in t.bfs_order().iter().rev() {
        let mut best = -r(v);
        for &c in t.children(v) {
            best = best.max(down[c] + 1);
        }
        down[v] = best;
    }
    let mut up = vec![-INF; n];
    for &v in t.bfs_order() {
        // best and second-best child contributions
        let (mut b1, mut b2, mut arg) = (-INF, -INF, usize::MAX);
        for &c in t.children(v) {
            let val = down[c] + 1;
            if val > b1 {
                b2 = b1;
                b1 = val;
                arg = c;
            } else if val > b2 {
                b2 = val;
            }
        }
        let base = up[v].max(-r(v));
        for &c in t.children(v) {
            let sibling = if c == arg { b2 } else { b1 };
            up[c] = base.max(sibling) + 1;
        }
    }
    (0..n).map(|v| down[v].max(up[v])).collect()
}

fn smallest_single_dominator(t: &RootedTree, radii: &[usize]) -> Option<usize> {
    domination_excess(t, radii)
        .iter()
        .position(|&e| e <= 0)
}

/// Minimum-cardinality node set `S` with `d(v, S) <= r(v)` for every node.
///
/// Bottom-up greedy: a node is opened only when the tightest uncovered demand
/// below it can no longer be served from higher up. Returned ascending.
pub fn tree_r_dominating_set(t: &RootedTree, radii: &[usize]) -> Vec<usize> {
    let n = t.len();
    // uncovered: min over uncovered descendants w of r(w) - d(w, v)
    // nearest: distance from v to the closest chosen node below it
    let mut uncovered = vec![INF; n];
    let mut nearest = vec![INF; n];
    let mut chosen = Vec::new();
    for &v in t.bfs_order().iter().rev() {
        let mut unc = radii[v] as i64;
        let mut near = INF;
        for &c in t.children(v) {
            if uncovered[c] < INF {
                unc = unc.min(uncovered[c] - 1);
            }
            if nearest[c] < INF {
                near = near.min(nearest[c] + 1);
            }
        }
        if near <= unc {
            unc = INF;
        } else if unc == 0 || (v == t.root() && unc < INF) {
            chosen.push(v);
            near = 0;
            unc = INF;
        }
        uncovered[v] = unc;
        nearest[v] = near;
    }
    if chosen.len() == 1 {
        if let Some(x) = smallest_single_dominator(t, radii) {
            return vec![x];
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Smallest covering subtree containing `anchor`: each node is pulled towards
/// `anchor` as far as its radius allows, and the result spans those marks.
pub fn covering_subtree_containing(t: &RootedTree, radii: &[usize], anchor: usize) -> Subtree {
    let rooted = t.rerooted(anchor);
    let n = t.len();
    let mut marked = vec![false; n];
    marked[anchor] = true;
    // iterative DFS keeping the current root path
    let mut path: Vec<usize> = Vec::new();
    let mut stack = vec![(anchor, 0usize)];
    while let Some((v, d)) = stack.pop() {
        path.truncate(d);
        path.push(v);
        let target_depth = d.saturating_sub(radii[v]);
        marked[path[target_depth]] = true;
        for &c in rooted.children(v).iter().rev() {
            stack.push((c, d + 1));
        }
    }
    let mut needed = marked;
    for &v in rooted.bfs_order().iter().rev() {
        if needed[v] {
            if let Some(p) = rooted.parent(v) {
                needed[p] = true;
            }
        }
    }
    let nodes: Vec<usize> = (0..n).filter(|&v| needed[v]).collect();
    Subtree::new(t, nodes).expect("spanning subtree is connected")
}

/// Minimum-cardinality connected node set that r-dominates the tree.
///
/// A single dominating node is returned when one exists (smallest id);
/// otherwise the covering subtree grown from the root is recomputed from one
/// of its non-anchor leaves, which is guaranteed to lie in a minimum one.
pub fn tree_min_covering_subtree(t: &RootedTree, radii: &[usize]) -> Subtree {
    if let Some(x) = smallest_single_dominator(t, radii) {
        return Subtree::new(t, vec![x]).expect("single node");
    }
    let first = covering_subtree_containing(t, radii, t.root());
    let leaf = first
        .leaves()
        .iter()
        .copied()
        .find(|&l| l != t.root())
        .expect("subtree with two or more nodes has a non-anchor leaf");
    covering_subtree_containing(t, radii, leaf)
}

/// Optimal p-center of the tree: at most `p` nodes minimising the largest
/// node distance. Returns the centers and their eccentricity.
pub fn tree_p_center(t: &RootedTree, p: usize) -> Result<(Vec<usize>, usize)> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be positive".into()));
    }
    let (mut lo, mut hi) = (0, t.diameter());
    let mut best = tree_r_dominating_set(t, &vec![hi; t.len()]);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let set = tree_r_dominating_set(t, &vec![mid; t.len()]);
        if set.len() <= p {
            hi = mid;
            best = set;
        } else {
            lo = mid + 1;
        }
    }
    let ecc = *t.distances_to_set(&best).iter().max().unwrap();
    Ok((best, ecc))
}

/// Optimal connected p-center: a subtree of at most `p` nodes with minimum
/// eccentricity.
pub fn tree_connected_p_center(t: &RootedTree, p: usize) -> Result<(Subtree, usize)> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be positive".into()));
    }
    let (mut lo, mut hi) = (0, t.diameter());
    let mut best = tree_min_covering_subtree(t, &vec![hi; t.len()]);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let sub = tree_min_covering_subtree(t, &vec![mid; t.len()]);
        if sub.len() <= p {
            hi = mid;
            best = sub;
        } else {
            lo = mid + 1;
        }
    }
    let ecc = *t.distances_to_set(best.nodes()).iter().max().unwrap();
    Ok((best, ecc))
}
