//! Seeded instance generators. The same kind, radius range and seed always
//! give the same instance.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::radius::RadiusFunction;
use crate::td::{compute_centers, TreeDecomposition};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::ops::RangeInclusive;

const GNP_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub enum Kind {
    /// Erdős–Rényi graph, resampled until connected.
    Gnp { n: usize, p: f64 },
    /// Random recursive tree plus uniformly random extra edges up to `m`.
    Sparse { n: usize, m: usize },
    /// Interval graph with a clique-path decomposition.
    Interval { n: usize },
    /// Hub 0 with `legs` paths of `len` vertices, decomposed into edge bags.
    Spider { legs: usize, len: usize },
    /// Random recursive tree, decomposed into edge bags.
    Tree { n: usize },
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    /// Present for every kind except `Gnp` and `Sparse`; carries centers.
    pub td: Option<TreeDecomposition>,
    pub radii: RadiusFunction,
}

pub fn generate(kind: &Kind, radius: RangeInclusive<usize>, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (graph, td) = match *kind {
        Kind::Gnp { n, p } => (gnp(n, p, &mut rng)?, None),
        Kind::Sparse { n, m } => (sparse(n, m, &mut rng)?, None),
        Kind::Interval { n } => {
            let (g, bags, edges) = interval(n, &mut rng)?;
            let td = with_centers(&g, bags, &edges)?;
            (g, Some(td))
        }
        Kind::Spider { legs, len } => {
            let mut parent = vec![None];
            for leg in 0..legs {
                for step in 0..len {
                    parent.push(Some(if step == 0 { 0 } else { 1 + leg * len + step - 1 }));
                }
            }
            let (g, bags, edges) = tree_with_td(&parent)?;
            let td = with_centers(&g, bags, &edges)?;
            (g, Some(td))
        }
        Kind::Tree { n } => {
            if n == 0 {
                return Err(Error::EmptyGraph);
            }
            let parent: Vec<Option<usize>> = (0..n).map(|v| (v > 0).then(|| rng.gen_range(0..v))).collect();
            let (g, bags, edges) = tree_with_td(&parent)?;
            let td = with_centers(&g, bags, &edges)?;
            (g, Some(td))
        }
    };
    let n = graph.n();
    let (lo, hi) = (*radius.start(), *radius.end());
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty radius range {lo}..={hi}")));
    }
    let radii = (0..n).map(|_| rng.gen_range(lo..=hi).min(n)).collect();
    Ok(Instance {
        graph,
        td,
        radii: RadiusFunction::new(radii)?,
    })
}

fn with_centers(g: &Graph, bags: Vec<Vec<usize>>, edges: &[(usize, usize)]) -> Result<TreeDecomposition> {
    let mut td = TreeDecomposition::new(g, bags, edges, None)?;
    let (centers, _) = compute_centers(g, &td);
    td.set_centers(g, centers)?;
    Ok(td)
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    for _ in 0..GNP_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges_unchecked_connectivity(n, &edges)?;
        if g.is_connected_subset(&(0..n).collect::<Vec<_>>()) {
            return Ok(g);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no connected sample with n = {n}, p = {p} in {GNP_ATTEMPTS} attempts"
    )))
}

fn sparse(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let max = n * (n - 1) / 2;
    if m + 1 < n || m > max {
        return Err(Error::InvalidParameter(format!("{m} edges impossible for a connected graph on {n} vertices")));
    }
    let mut set = BTreeSet::new();
    for v in 1..n {
        set.insert((rng.gen_range(0..v), v));
    }
    while set.len() < m {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            set.insert((a.min(b), a.max(b)));
        }
    }
    Graph::from_edges(n, &set.into_iter().collect::<Vec<_>>())
}

type Decomposed = (Graph, Vec<Vec<usize>>, Vec<(usize, usize)>);

/// Vertex `i` (before relabelling) spans `[i, i + k]` with `k` in `1..=3`;
/// one bag per integer point, chained.
fn interval(n: usize, rng: &mut ChaCha8Rng) -> Result<Decomposed> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let end: Vec<usize> = (0..n).map(|i| (i + rng.gen_range(1..=3)).min(n - 1)).collect();
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..=end[i] {
            edges.push((label[i], label[j]));
        }
    }
    let bags: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..=x).filter(|&i| end[i] >= x).map(|i| label[i]).collect())
        .collect();
    let chain: Vec<(usize, usize)> = (1..n).map(|x| (x - 1, x)).collect();
    Ok((Graph::from_edges(n, &edges)?, bags, chain))
}

/// One bag `{parent(v), v}` per non-root vertex. Bags of a vertex's children
/// hang off the bag of the vertex itself; the root's children share the bag
/// of its first child.
fn tree_with_td(parent: &[Option<usize>]) -> Result<Decomposed> {
    let n = parent.len();
    if n == 1 {
        return Ok((Graph::from_edges(1, &[])?, vec![vec![0]], Vec::new()));
    }
    let bag_of = |v: usize| v - 1;
    let mut edges = Vec::new();
    let mut bags = Vec::new();
    let mut tree = Vec::new();
    let mut root_bag = None;
    for v in 1..n {
        let p = parent[v].expect("only vertex 0 is the root");
        edges.push((p, v));
        bags.push(vec![p.min(v), p.max(v)]);
        if p == 0 {
            match root_bag {
                None => root_bag = Some(bag_of(v)),
                Some(b) => tree.push((b, bag_of(v))),
            }
        } else {
            tree.push((bag_of(p), bag_of(v)));
        }
    }
    Ok((Graph::from_edges(n, &edges)?, bags, tree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bytes(inst: &Instance) -> String {
        let n = inst.graph.n();
        format!(
            "{}{}{}",
            inst.graph.to_gr(),
            inst.td.as_ref().map_or(String::new(), |td| td.to_td(n)),
            inst.radii.to_text()
        )
    }

    #[test]
    fn reproducible() {
        for kind in [
            Kind::Gnp { n: 12, p: 0.3 },
            Kind::Sparse { n: 50, m: 120 },
            Kind::Interval { n: 10 },
            Kind::Tree { n: 11 },
        ] {
            let a = generate(&kind, 0..=3, 7).unwrap();
            let b = generate(&kind, 0..=3, 7).unwrap();
            assert_eq!(bytes(&a), bytes(&b));
        }
    }

    #[test]
    fn interval_is_a_clique_path() {
        let inst = generate(&Kind::Interval { n: 10 }, 0..=3, 7).unwrap();
        let td = inst.td.unwrap();
        assert_eq!(td.lambda(), 1);
        assert_eq!(td.rho(), Some(1));
        let reparsed = TreeDecomposition::parse(&inst.graph, &td.to_td(10)).unwrap();
        assert_eq!(reparsed.bags(), td.bags());
    }

    #[test]
    fn spider_shape() {
        let inst = generate(&Kind::Spider { legs: 4, len: 3 }, 0..=0, 1).unwrap();
        assert_eq!(inst.graph.n(), 13);
        assert_eq!(inst.graph.degree(0), 4);
        let td = inst.td.unwrap();
        assert_eq!((td.lambda(), td.rho()), (1, Some(1)));
        assert_eq!(td.bags_of(0).len(), 4);
    }

    #[test]
    fn gnp_connected_and_sparse_sized() {
        let g = generate(&Kind::Gnp { n: 12, p: 0.3 }, 0..=3, 1).unwrap().graph;
        assert!(g.is_connected_subset(&(0..12).collect::<Vec<_>>()));
        let s = generate(&Kind::Sparse { n: 1000, m: 3000 }, 0..=1, 1).unwrap().graph;
        assert_eq!(s.m(), 3000);
    }

    #[test]
    fn impossible_parameters() {
        assert!(generate(&Kind::Gnp { n: 30, p: 0.0 }, 0..=1, 1).is_err());
        assert!(generate(&Kind::Sparse { n: 10, m: 5 }, 0..=1, 1).is_err());
        assert!(generate(&Kind::Tree { n: 5 }, std::ops::RangeInclusive::new(3, 1), 1).is_err());
    }

    #[test]
    fn single_vertex() {
        for kind in [Kind::Interval { n: 1 }, Kind::Tree { n: 1 }, Kind::Spider { legs: 0, len: 0 }] {
            let inst = generate(&kind, 0..=2, 3).unwrap();
            assert_eq!(inst.graph.n(), 1);
            assert_eq!(inst.radii.as_slice(), &[inst.radii.get(0)]);
        }
    }
}
