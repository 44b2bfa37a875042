//! Immutable simple undirected graphs in compressed adjacency form, plus the
//! `.gr` text format.
//!
//! Vertices are `0..n` internally. The `.gr` format is 1-based:
//!
//! ```text
//! c optional comment
//! p <n> <m>
//! <u> <v>        (m edge lines)
//! ```
//!
//! A PACE-style header `p <tag> <n> <m>` is accepted as well.

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// A connected, simple, unweighted, undirected graph.
///
/// Neighbor lists are sorted ascending, so every traversal that scans them
/// visits smaller ids first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph from 0-based edges, rejecting loops, parallel edges,
    /// out-of-range ids and disconnected input.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let graph = Self::from_edges_unchecked_connectivity(n, edges)?;
        if let Some(v) = graph.first_unreachable() {
            return Err(Error::Disconnected { v: v + 1 });
        }
        Ok(graph)
    }

    /// Same as [`Graph::from_edges`] but allows disconnected graphs. Used by
    /// generators that retry until they hit a connected sample.
    pub(crate) fn from_edges_unchecked_connectivity(
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { v: x + 1, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { v: u + 1 });
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            let row = &mut targets[offsets[v]..offsets[v + 1]];
            row.sort_unstable();
            if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (v.min(w[0]), v.max(w[0]));
                return Err(Error::DuplicateEdge { u: a + 1, v: b + 1 });
            }
        }
        Ok(Self { offsets, targets })
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Returns true if the subgraph induced by `set` is connected (the empty
    /// set counts as connected).
    pub fn is_connected_subset(&self, set: &[usize]) -> bool {
        if set.len() <= 1 {
            return true;
        }
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![set[0]];
        seen[set[0]] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        let distinct = inside.iter().filter(|&&b| b).count();
        count == distinct
    }

    fn first_unreachable(&self) -> Option<usize> {
        let mut uf = UnionFind::new(self.n());
        for (u, v) in self.edges() {
            uf.union(u, v).expect("ids in range");
        }
        if uf.components() == 1 {
            return None;
        }
        let root = uf.find(0).expect("in range");
        (1..self.n()).find(|&v| uf.find(v).expect("in range") != root)
    }

    /// Parses the `.gr` format.
    pub fn parse_gr(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let parse_err = |msg: &str| Error::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            let tokens: Vec<&str> = line.split_ascii_whitespace().collect();
            if tokens[0] == "p" {
                if header.is_some() {
                    return Err(parse_err("second header line"));
                }
                let nums = match tokens.len() {
                    3 => &tokens[1..3],
                    4 => &tokens[2..4],
                    _ => return Err(parse_err("expected `p <n> <m>`")),
                };
                let n = parse_num(nums[0], line_no)?;
                let m = parse_num(nums[1], line_no)?;
                header = Some((n, m));
                continue;
            }
            let Some((n, _)) = header else {
                return Err(parse_err("edge line before header"));
            };
            if tokens.len() != 2 {
                return Err(parse_err("expected `<u> <v>`"));
            }
            let u = parse_num(tokens[0], line_no)?;
            let v = parse_num(tokens[1], line_no)?;
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::VertexOutOfRange { v: x, n });
                }
            }
            edges.push((u - 1, v - 1));
        }
        let (n, m) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing `p` header".into(),
        })?;
        let graph = Self::from_edges_unchecked_connectivity(n, &edges)?;
        if edges.len() != m {
            return Err(Error::EdgeCountMismatch {
                declared: m,
                found: edges.len(),
            });
        }
        if let Some(v) = graph.first_unreachable() {
            return Err(Error::Disconnected { v: v + 1 });
        }
        Ok(graph)
    }

    /// Canonical `.gr` text: header plus edges `u < v` in lexicographic order.
    pub fn to_gr(&self) -> String {
        let mut out = format!("p {} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

pub(crate) fn parse_num(token: &str, line: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("`{token}` is not a non-negative integer"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_connected_graph() {
        let g = Graph::parse_gr("p 2 1\n1 2").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn path_graph() {
        let g = Graph::parse_gr("p 5 4\n1 2\n2 3\n3 4\n4 5").unwrap();
        assert_eq!((g.n(), g.m()), (5, 4));
        assert_eq!(g.neighbors(2), &[1, 3]);
    }

    #[test]
    fn duplicate_edge_rejected() {
        let err = Graph::parse_gr("p 4 5\n1 2\n3 4\n2 3\n1 3\n1 3\n").unwrap_err();
        assert_eq!(err, Error::DuplicateEdge { u: 1, v: 3 });
        let err = Graph::parse_gr("p 3 2\n1 2\n2 1\n").unwrap_err();
        assert_eq!(err, Error::DuplicateEdge { u: 1, v: 2 });
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            Graph::parse_gr("p 3 2\n1 1\n2 3").unwrap_err(),
            Error::SelfLoop { v: 1 }
        );
        assert_eq!(
            Graph::parse_gr("p 3 2\n1 4\n2 3").unwrap_err(),
            Error::VertexOutOfRange { v: 4, n: 3 }
        );
        assert_eq!(
            Graph::parse_gr("p 4 2\n1 2\n3 4").unwrap_err(),
            Error::Disconnected { v: 3 }
        );
        assert_eq!(
            Graph::parse_gr("p 3 3\n1 2\n2 3").unwrap_err(),
            Error::EdgeCountMismatch {
                declared: 3,
                found: 2
            }
        );
        assert!(matches!(
            Graph::parse_gr("1 2\np 2 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_gr("p 2 1\n1 x"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(Graph::parse_gr("p 0 0").unwrap_err(), Error::EmptyGraph);
    }

    #[test]
    fn comments_and_pace_header() {
        let g = Graph::parse_gr("c hello\np tw 3 2\n\n1 2\nc mid\n2 3\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(Graph::parse_gr("p 1 0").unwrap().n(), 1);
    }

    #[test]
    fn induced_connectivity() {
        let g = Graph::parse_gr("p 5 4\n1 2\n2 3\n3 4\n4 5").unwrap();
        assert!(g.is_connected_subset(&[1, 2, 3]));
        assert!(!g.is_connected_subset(&[0, 2]));
        assert!(g.is_connected_subset(&[]));
    }
}
