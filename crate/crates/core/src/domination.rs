//! Result type shared by all domination solvers, and coverage checks.

use crate::bfs::bfs;
use crate::graph::Graph;

/// A vertex set that `(r + slack)`-dominates the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationResult {
    /// Ascending vertex ids.
    pub set: Vec<usize>,
    /// Certified additive slack φ. `None` when the parameter behind it was
    /// not computed.
    pub slack: Option<usize>,
    /// Whether the set is guaranteed to induce a connected subgraph.
    pub connected: bool,
}

impl DominationResult {
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// `r(v) + φ - d(v, set)` per vertex; all entries are non-negative for a
    /// correct result.
    pub fn margins(&self, g: &Graph, radii: &[usize]) -> Vec<i64> {
        coverage_margins(g, radii, &self.set, self.slack.unwrap_or(0))
    }
}

/// `r(v) + slack - d(v, set)` for every vertex.
pub fn coverage_margins(g: &Graph, radii: &[usize], set: &[usize], slack: usize) -> Vec<i64> {
    let map = bfs(g, set, None).expect("non-empty set");
    (0..g.n())
        .map(|v| (radii[v] + slack) as i64 - map.dist(v).expect("connected") as i64)
        .collect()
}

/// First vertex `v` with `d(v, set) > r(v) + slack`, if any. An empty set
/// fails at vertex 0.
pub fn coverage_witness(g: &Graph, radii: &[usize], set: &[usize], slack: usize) -> Option<usize> {
    if set.is_empty() {
        return Some(0);
    }
    coverage_margins(g, radii, set, slack).iter().position(|&m| m < 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_on_path() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(coverage_witness(&g, &[1; 5], &[1, 3], 0), None);
        assert_eq!(coverage_witness(&g, &[1; 5], &[0], 0), Some(2));
        assert_eq!(coverage_witness(&g, &[1; 5], &[], 9), Some(0));
        let margins = coverage_margins(&g, &[1; 5], &[0], 0);
        assert_eq!(margins, vec![1, 0, -1, -2, -3]);
    }
}
