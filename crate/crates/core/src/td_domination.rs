//! Domination through a tree-decomposition.
//!
//! Demands are graph distances: a bag covers vertex `v` when some member of
//! the bag is within `r(v)` of `v`. A minimum covering subtree of the bag tree
//! drives both solvers. [`rdom_td`] opens bag centers bottom-up and loses at
//! most ρ. [`connected_rdom_td`] covers with slack φ and links separators of
//! path segments and branching bags by shortest paths, losing φ + λ.

use crate::bfs::bfs;
use crate::domination::DominationResult;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::radius::RadiusFunction;
use crate::td::{compute_centers, TreeDecomposition};
use crate::tree::{RootedTree, Subtree};
use std::collections::VecDeque;

/// A covering subtree of the bag tree together with the bookkeeping used by
/// the domination solvers.
#[derive(Debug, Clone)]
pub struct CoveringSubtreeTd {
    /// Bags of the subtree, relative to the decomposition's own tree.
    pub subtree: Subtree,
    /// Bag the subtree was grown from; it is rooted there.
    pub anchor: usize,
    /// β(v): the bag of the subtree closest to the anchor that is within
    /// `r(v)` of `v`.
    pub beta: Vec<usize>,
    /// σ(B): number of vertices `v` with β(v) = B, for every bag.
    pub sigma: Vec<usize>,
}

impl CoveringSubtreeTd {
    pub fn len(&self) -> usize {
        self.subtree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subtree.is_empty()
    }
}

fn check_inputs(g: &Graph, td: &TreeDecomposition, radii: &[usize]) -> Result<()> {
    if radii.len() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "{} radii given for {} vertices",
            radii.len(),
            g.n()
        )));
    }
    if td.bags().iter().flatten().any(|&v| v >= g.n()) {
        return Err(Error::InvalidParameter("decomposition belongs to another graph".into()));
    }
    Ok(())
}

/// BFS scratch reused across many depth-limited searches.
struct Scratch {
    dist: Vec<usize>,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![usize::MAX; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    /// Vertices within `limit` of `s`, in BFS order.
    fn ball(&mut self, g: &Graph, s: usize, limit: usize) -> &[usize] {
        for &v in &self.touched {
            self.dist[v] = usize::MAX;
        }
        self.touched.clear();
        self.queue.clear();
        self.dist[s] = 0;
        self.touched.push(s);
        self.queue.push_back(s);
        while let Some(u) = self.queue.pop_front() {
            if self.dist[u] == limit {
                continue;
            }
            for &w in g.neighbors(u) {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[u] + 1;
                    self.touched.push(w);
                    self.queue.push_back(w);
                }
            }
        }
        &self.touched
    }
}

/// Smallest covering subtree containing bag `anchor`.
///
/// Every vertex `u` is assigned the bag nearest the anchor among the bags
/// within `r(u)` of it; the subtree spans those bags and the anchor.
pub fn covering_subtree_from_bag(
    g: &Graph,
    td: &TreeDecomposition,
    radii: &[usize],
    anchor: usize,
) -> Result<CoveringSubtreeTd> {
    check_inputs(g, td, radii)?;
    if anchor >= td.num_bags() {
        return Err(Error::IdOutOfRange {
            id: anchor,
            len: td.num_bags(),
        });
    }
    let rooted = td.tree().rerooted(anchor);
    let key = |b: usize| (rooted.depth(b), b);
    let home: Vec<usize> = (0..g.n())
        .map(|u| *td.bags_of(u).iter().min_by_key(|&&b| key(b)).expect("vertex is in a bag"))
        .collect();
    let mut scratch = Scratch::new(g.n());
    let mut beta = vec![0; g.n()];
    let mut sigma = vec![0; td.num_bags()];
    let mut needed = vec![false; td.num_bags()];
    needed[anchor] = true;
    for u in 0..g.n() {
        let ball = scratch.ball(g, u, radii[u]);
        let v = *ball
            .iter()
            .min_by_key(|&&v| (key(home[v]), v))
            .expect("ball contains its center");
        beta[u] = home[v];
        sigma[home[v]] += 1;
        needed[home[v]] = true;
    }
    for &b in rooted.bfs_order().iter().rev() {
        if needed[b] {
            if let Some(p) = rooted.parent(b) {
                needed[p] = true;
            }
        }
    }
    let nodes: Vec<usize> = (0..td.num_bags()).filter(|&b| needed[b]).collect();
    Ok(CoveringSubtreeTd {
        subtree: Subtree::new(td.tree(), nodes)?,
        anchor,
        beta,
        sigma,
    })
}

/// Minimum covering subtree: grown from bag 0, then regrown from the
/// smallest-id leaf other than bag 0 when the first result has two or more
/// bags.
pub fn min_covering_subtree_td(g: &Graph, td: &TreeDecomposition, radii: &[usize]) -> Result<CoveringSubtreeTd> {
    let first = covering_subtree_from_bag(g, td, radii, 0)?;
    if first.len() == 1 {
        return Ok(first);
    }
    let leaf = first
        .subtree
        .leaves()
        .iter()
        .copied()
        .find(|&b| b != 0)
        .expect("two or more bags give a non-anchor leaf");
    covering_subtree_from_bag(g, td, radii, leaf)
}

/// `(r + ρ)`-dominating set no larger than a minimum r-dominating set.
/// Requires bag centers.
pub fn rdom_td(g: &Graph, td: &TreeDecomposition, r: &RadiusFunction) -> Result<DominationResult> {
    let centers = td.centers().ok_or(Error::MissingCenters)?;
    let radii = r.as_slice();
    let cover = min_covering_subtree_td(g, td, radii)?;
    let rooted = td.tree().rerooted(cover.anchor);
    let mut sigma = cover.sigma.clone();
    let mut dominated = vec![false; g.n()];
    let mut set = Vec::new();
    for &b in rooted.bfs_order().iter().rev() {
        if !cover.subtree.contains(b) || sigma[b] == 0 {
            continue;
        }
        set.push(centers[b]);
        let reach = bfs(g, td.bag(b), None)?;
        for u in 0..g.n() {
            if !dominated[u] && reach.dist(u).expect("connected") <= radii[u] {
                dominated[u] = true;
                let home = cover.beta[u];
                sigma[home] = sigma[home]
                    .checked_sub(1)
                    .ok_or_else(|| Error::Invariant(format!("counter of bag {} underflows", home + 1)))?;
            }
        }
    }
    if let Some(u) = dominated.iter().position(|&d| !d) {
        return Err(Error::Invariant(format!("vertex {} left undominated", u + 1)));
    }
    set.sort_unstable();
    set.dedup();
    Ok(DominationResult {
        set,
        slack: td.rho(),
        connected: false,
    })
}

/// How branching bags are wired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Through the bag center; slack φ = 3ρ.
    Heart,
    /// Directly to the up-separator vertex; slack φ = 2λ.
    Diamond,
}

/// One maximal chain of degree-two bags and the shortest path across it.
#[derive(Debug, Clone)]
pub struct SegmentInfo {
    /// Bags from top to bottom.
    pub bags: Vec<usize>,
    /// Intersection of the top bag with its parent.
    pub up: Vec<usize>,
    /// Intersection of the bottom bag with its child.
    pub down: Vec<usize>,
    /// Shortest path from the up-separator to the down-separator.
    pub path: Vec<usize>,
    /// Path vertices outside the up-separator.
    pub own: usize,
}

#[derive(Debug, Clone)]
pub struct BranchInfo {
    pub bag: usize,
    /// Length of every connecting path added for this bag; up-separator first.
    pub hops: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct TdConnectedRun {
    pub result: DominationResult,
    pub variant: Variant,
    pub phi: usize,
    /// Breadth of the centers used (HEART only).
    pub rho: Option<usize>,
    pub lambda: usize,
    pub t_phi: CoveringSubtreeTd,
    pub segments: Vec<SegmentInfo>,
    pub branches: Vec<BranchInfo>,
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

/// Shortest path from some vertex of `from` to some vertex of `to`; the
/// smallest-id target at minimum distance wins.
fn shortest_between(g: &Graph, from: &[usize], to: &[usize]) -> Result<Vec<usize>> {
    let map = bfs(g, from, None)?;
    let target = *to
        .iter()
        .min_by_key(|&&t| (map.dist(t).expect("connected"), t))
        .ok_or(Error::EmptySources)?;
    let mut path = map.path_to_source(target);
    path.reverse();
    Ok(path)
}

/// Connected `(r + φ + λ)`-dominating set no larger than a minimum connected
/// r-dominating set. HEART computes centers when the decomposition has none.
pub fn connected_rdom_td(
    g: &Graph,
    td: &TreeDecomposition,
    r: &RadiusFunction,
    variant: Variant,
) -> Result<TdConnectedRun> {
    let lambda = td.lambda();
    let (centers, rho): (Option<Vec<usize>>, Option<usize>) = match variant {
        Variant::Diamond => (None, None),
        Variant::Heart => match (td.centers(), td.rho()) {
            (Some(c), Some(rho)) => (Some(c.to_vec()), Some(rho)),
            _ => {
                let (c, rho) = compute_centers(g, td);
                log::info!("decomposition has no centers; computed breadth {rho}");
                (Some(c), Some(rho))
            }
        },
    };
    let phi = match variant {
        Variant::Heart => 3 * rho.unwrap(),
        Variant::Diamond => 2 * lambda,
    };
    let t_phi = min_covering_subtree_td(g, td, &r.plus(phi))?;
    let mut in_set = vec![false; g.n()];
    let mut segments = Vec::new();
    let mut branches = Vec::new();
    let bags = t_phi.subtree.nodes();

    match bags.len() {
        1 => in_set[td.bag(bags[0])[0]] = true,
        2 => {
            let common = intersect(td.bag(bags[0]), td.bag(bags[1]));
            let v = *common
                .first()
                .ok_or_else(|| Error::Invariant("adjacent bags do not intersect".into()))?;
            in_set[v] = true;
        }
        _ => {
            let (local, map) = td.tree().induced(&t_phi.subtree);
            let root_bag = t_phi.subtree.leaves()[0];
            let root = map.binary_search(&root_bag).expect("leaf is a subtree bag");
            let local: RootedTree = local.rerooted(root);
            let bag = |i: usize| td.bag(map[i]);
            let degree = |i: usize| local.neighbors(i).count();
            // up-separator of every non-root bag
            let mut sep: Vec<Vec<usize>> = vec![Vec::new(); local.len()];
            for i in 0..local.len() {
                if let Some(p) = local.parent(i) {
                    sep[i] = intersect(bag(i), bag(p));
                    if sep[i].is_empty() {
                        return Err(Error::Invariant(format!(
                            "bags {} and {} do not intersect",
                            map[i] + 1,
                            map[p] + 1
                        )));
                    }
                }
            }
            let mut nu: Vec<Option<usize>> = vec![None; local.len()];

            for &top in local.bfs_order() {
                let parent_is_path = local.parent(top).is_some_and(|p| degree(p) == 2);
                if degree(top) != 2 || parent_is_path {
                    continue;
                }
                let mut chain = vec![top];
                let mut bottom = top;
                while degree(local.children(bottom)[0]) == 2 {
                    bottom = local.children(bottom)[0];
                    chain.push(bottom);
                }
                let below = local.children(bottom)[0];
                let from = nu[top].map_or_else(|| sep[top].clone(), |x| vec![x]);
                let to = nu[below].map_or_else(|| sep[below].clone(), |y| vec![y]);
                let path = shortest_between(g, &from, &to)?;
                nu[top].get_or_insert(path[0]);
                nu[below].get_or_insert(*path.last().unwrap());
                for &v in &path {
                    in_set[v] = true;
                }
                let own = path.iter().filter(|v| sep[top].binary_search(v).is_err()).count();
                segments.push(SegmentInfo {
                    bags: chain.iter().map(|&i| map[i]).collect(),
                    up: sep[top].clone(),
                    down: sep[below].clone(),
                    path,
                    own,
                });
            }

            for &b in local.bfs_order() {
                if degree(b) <= 2 {
                    continue;
                }
                let u = *nu[b].get_or_insert(sep[b][0]);
                let v = match variant {
                    Variant::Heart => centers.as_ref().unwrap()[map[b]],
                    Variant::Diamond => u,
                };
                let reach = bfs(g, &[v], None)?;
                let mut hops = Vec::new();
                let mut ends = vec![u];
                for &c in local.children(b) {
                    ends.push(*nu[c].get_or_insert(sep[c][0]));
                }
                for w in ends {
                    let path = reach.path_to_source(w);
                    hops.push(path.len() - 1);
                    for x in path {
                        in_set[x] = true;
                    }
                }
                branches.push(BranchInfo { bag: map[b], hops });
            }
        }
    }

    let set: Vec<usize> = (0..g.n()).filter(|&v| in_set[v]).collect();
    if !g.is_connected_subset(&set) {
        return Err(Error::Invariant("connected set is not connected".into()));
    }
    if let Some(&b) = bags.iter().find(|&&b| !td.bag(b).iter().any(|&v| in_set[v])) {
        return Err(Error::Invariant(format!("bag {} is not hit", b + 1)));
    }
    Ok(TdConnectedRun {
        result: DominationResult {
            set,
            slack: Some(phi + lambda),
            connected: true,
        },
        variant,
        phi,
        rho,
        lambda,
        t_phi,
        segments,
        branches,
    })
}
