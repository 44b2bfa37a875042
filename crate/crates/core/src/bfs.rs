//! Breadth-first search with parent pointers, source labels and depth limits.
//!
//! Levels are expanded in `(source label, vertex id)` order, so the recorded
//! source of a vertex is the smallest label among its nearest sources and its
//! parent is the smallest-id neighbour one level up carrying that label.

use crate::error::{Error, Result};
use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// Result of a (multi-source) BFS.
#[derive(Debug, Clone)]
pub struct DistanceMap {
    dist: Vec<usize>,
    parent: Vec<usize>,
    source: Vec<usize>,
}

impl DistanceMap {
    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    #[inline]
    pub fn dist(&self, v: usize) -> Option<usize> {
        (self.dist[v] != NONE).then_some(self.dist[v])
    }

    #[inline]
    pub fn parent(&self, v: usize) -> Option<usize> {
        (self.parent[v] != NONE).then_some(self.parent[v])
    }

    /// Label of the originating source. For [`bfs`] this is the source vertex
    /// itself; for [`bfs_labeled`] it is the label attached to the seed.
    #[inline]
    pub fn source(&self, v: usize) -> Option<usize> {
        (self.source[v] != NONE).then_some(self.source[v])
    }

    pub fn is_reached(&self, v: usize) -> bool {
        self.dist[v] != NONE
    }

    /// Vertices from `v` back to its source, following parent pointers.
    /// Empty if `v` was not reached.
    pub fn path_to_source(&self, v: usize) -> Vec<usize> {
        if !self.is_reached(v) {
            return Vec::new();
        }
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        path
    }

    /// Largest finite distance, i.e. the eccentricity of the source set when
    /// every vertex was reached.
    pub fn max_dist(&self) -> usize {
        self.dist.iter().copied().filter(|&d| d != NONE).max().unwrap_or(0)
    }

    pub fn all_reached(&self) -> bool {
        self.dist.iter().all(|&d| d != NONE)
    }
}

/// Multi-source BFS where each source is labelled by its own id.
pub fn bfs(g: &Graph, sources: &[usize], depth_limit: Option<usize>) -> Result<DistanceMap> {
    let seeds: Vec<(usize, usize)> = sources.iter().map(|&s| (s, s)).collect();
    bfs_labeled(g, &seeds, depth_limit)
}

/// Multi-source BFS from `(vertex, label)` seeds. A vertex seeded twice keeps
/// its smallest label.
pub fn bfs_labeled(
    g: &Graph,
    seeds: &[(usize, usize)],
    depth_limit: Option<usize>,
) -> Result<DistanceMap> {
    if seeds.is_empty() {
        return Err(Error::EmptySources);
    }
    let n = g.n();
    let mut dist = vec![NONE; n];
    let mut parent = vec![NONE; n];
    let mut source = vec![NONE; n];
    let mut frontier = Vec::with_capacity(seeds.len());
    for &(v, label) in seeds {
        if v >= n {
            return Err(Error::IdOutOfRange { id: v, len: n });
        }
        if dist[v] == NONE {
            dist[v] = 0;
            frontier.push(v);
            source[v] = label;
        } else {
            source[v] = source[v].min(label);
        }
    }
    frontier.sort_unstable_by_key(|&v| (source[v], v));
    let limit = depth_limit.unwrap_or(usize::MAX);
    let mut depth = 0;
    let mut next = Vec::new();
    while !frontier.is_empty() && depth < limit {
        for &u in &frontier {
            for &w in g.neighbors(u) {
                if dist[w] == NONE {
                    dist[w] = depth + 1;
                    parent[w] = u;
                    source[w] = source[u];
                    next.push(w);
                }
            }
        }
        next.sort_unstable_by_key(|&v| (source[v], v));
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
        depth += 1;
    }
    Ok(DistanceMap {
        dist,
        parent,
        source,
    })
}

/// Hop distances from a single vertex to every vertex.
pub fn distances_from(g: &Graph, v: usize) -> Vec<usize> {
    let mut dist = vec![NONE; g.n()];
    let mut queue = std::collections::VecDeque::new();
    dist[v] = 0;
    queue.push_back(v);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == NONE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Full distance matrix, one BFS per vertex. Quadratic memory: small graphs only.
pub fn all_pairs(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| distances_from(g, v)).collect()
}

/// `max_v d(v, set)`; `None` for an empty set.
pub fn set_eccentricity(g: &Graph, set: &[usize]) -> Option<usize> {
    let map = bfs(g, set, None).ok()?;
    Some(map.max_dist())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn path_from_middle() {
        let map = bfs(&path(5), &[2], None).unwrap();
        let d: Vec<_> = (0..5).map(|v| map.dist(v).unwrap()).collect();
        assert_eq!(d, vec![2, 1, 0, 1, 2]);
    }

    #[test]
    fn cycle_two_sources() {
        // brute force: d(v, {0,3}) on C6
        let g = cycle(6);
        let ap = all_pairs(&g);
        let map = bfs(&g, &[0, 3], None).unwrap();
        for v in 0..6 {
            assert_eq!(map.dist(v).unwrap(), ap[v][0].min(ap[v][3]));
        }
        assert_eq!(
            (0..6).map(|v| map.dist(v).unwrap()).collect::<Vec<_>>(),
            vec![0, 1, 1, 0, 1, 1]
        );
        // v1 and v5 are nearer to 0; v2 and v4 nearer to 3
        assert_eq!(map.source(1), Some(0));
        assert_eq!(map.source(2), Some(3));
    }

    #[test]
    fn depth_cutoff() {
        let map = bfs(&path(5), &[0], Some(1)).unwrap();
        assert!(map.is_reached(0) && map.is_reached(1));
        assert!((2..5).all(|v| !map.is_reached(v)));
        let map = bfs(&path(5), &[0], Some(0)).unwrap();
        assert!(map.is_reached(0) && !map.is_reached(1));
    }

    #[test]
    fn empty_sources() {
        assert_eq!(bfs(&path(3), &[], None).unwrap_err(), Error::EmptySources);
    }

    #[test]
    fn equidistant_sources_pick_smallest_label() {
        // C4 0-1-2-3-0, sources 1 and 3 are both at distance 1 from 0 and 2.
        let g = cycle(4);
        let map = bfs(&g, &[3, 1], None).unwrap();
        assert_eq!(map.source(0), Some(1));
        assert_eq!(map.source(2), Some(1));
        assert_eq!(map.parent(0), Some(1));
        let labeled = bfs_labeled(&g, &[(1, 9), (3, 4)], None).unwrap();
        assert_eq!(labeled.source(0), Some(4));
        assert_eq!(labeled.parent(2), Some(3));
    }

    fn arb_connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (2..=max_n).prop_flat_map(|n| {
            let parents = prop::collection::vec(any::<prop::sample::Index>(), n - 1);
            let extra = prop::collection::vec((0..n, 0..n), 0..2 * n);
            (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
                let mut set = std::collections::BTreeSet::new();
                for (i, p) in parents.iter().enumerate() {
                    let v = i + 1;
                    let u = p.index(v);
                    set.insert((u.min(v), u.max(v)));
                }
                for (a, b) in extra {
                    if a != b {
                        set.insert((a.min(b), a.max(b)));
                    }
                }
                let edges: Vec<_> = set.into_iter().collect();
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn multi_source_is_min_of_single_source(
            g in arb_connected_graph(64),
            picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5),
        ) {
            let sources: Vec<usize> = picks.iter().map(|i| i.index(g.n())).collect();
            let map = bfs(&g, &sources, None).unwrap();
            let singles: Vec<Vec<usize>> = sources.iter().map(|&s| distances_from(&g, s)).collect();
            for v in 0..g.n() {
                let best = singles.iter().map(|d| d[v]).min().unwrap();
                prop_assert_eq!(map.dist(v), Some(best));
                let src = map.source(v).unwrap();
                let nearest_min = sources
                    .iter()
                    .zip(&singles)
                    .filter(|(_, d)| d[v] == best)
                    .map(|(&s, _)| s)
                    .min()
                    .unwrap();
                prop_assert_eq!(src, nearest_min);
                // parent chain reaches a source in exactly dist(v) steps
                let path = map.path_to_source(v);
                prop_assert_eq!(path.len(), best + 1);
                prop_assert_eq!(*path.last().unwrap(), src);
                for w in path.windows(2) {
                    prop_assert!(g.has_edge(w[0], w[1]));
                    prop_assert_eq!(map.dist(w[1]).unwrap() + 1, map.dist(w[0]).unwrap());
                }
            }
        }
    }
}
