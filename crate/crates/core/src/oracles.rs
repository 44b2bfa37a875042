//! Exhaustive exact solvers for small instances.
//!
//! Every problem here is a minimum (connected) hitting set over bitmasks:
//! each demand is the set of elements that would satisfy it. Two independent
//! strategies are provided through [`Method`] so the oracles can check each
//! other.

use crate::bfs::all_pairs;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::td::TreeDecomposition;
use crate::tree::{RootedTree, Subtree};
use crate::union_find::UnionFind;
use std::time::{Duration, Instant};

/// Limits on the exhaustive solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest graph handled by vertex-subset enumeration.
    pub max_vertices: usize,
    /// Largest tree or decomposition handled by subtree enumeration.
    pub max_nodes: usize,
    pub time_cap: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_vertices: 13,
            max_nodes: 12,
            time_cap: None,
        }
    }
}

/// How the exhaustive search is organised.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Method {
    /// Subsets by increasing size, lexicographic within a size; connectivity
    /// checked with Union-Find. Returns the lexicographically first optimum.
    #[default]
    Enumerate,
    /// Branch and bound: branching on the first unhit demand, or growing
    /// connected sets when connectivity is required.
    Search,
}

const MAX_BITS: usize = 64;

fn check_size(size: usize, budget: usize) -> Result<()> {
    let limit = budget.min(MAX_BITS);
    if size > limit {
        return Err(Error::OverBudget { size, budget: limit });
    }
    Ok(())
}

struct Clock {
    start: Instant,
    cap: Option<Duration>,
    ticks: u32,
}

impl Clock {
    fn new(cap: Option<Duration>) -> Self {
        Self {
            start: Instant::now(),
            cap,
            ticks: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(1024) {
            if let Some(cap) = self.cap {
                if self.start.elapsed() > cap {
                    return Err(Error::TimeCap { millis: cap.as_millis() });
                }
            }
        }
        Ok(())
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..MAX_BITS).filter(move |&i| mask >> i & 1 == 1)
}

/// Elements `0..k` with adjacency masks and one mask per demand.
struct Hitting {
    adj: Vec<u64>,
    demands: Vec<u64>,
}

impl Hitting {
    fn k(&self) -> usize {
        self.adj.len()
    }

    fn hits_all(&self, set: u64) -> bool {
        self.demands.iter().all(|&d| d & set != 0)
    }

    fn connected(&self, set: u64) -> bool {
        let members: Vec<usize> = bits(set).collect();
        if members.len() <= 1 {
            return true;
        }
        let mut uf = UnionFind::new(self.k());
        for &u in &members {
            for w in bits(self.adj[u] & set) {
                uf.union(u, w).expect("ids in range");
            }
        }
        let root = uf.find(members[0]).expect("in range");
        members.iter().all(|&u| uf.find(u).expect("in range") == root)
    }

    /// Smallest feasible set over subsets of size `1..=max_size`.
    fn enumerate(
        &self,
        max_size: usize,
        connected: bool,
        clock: &mut Clock,
        mut accept: impl FnMut(u64) -> bool,
    ) -> Result<Option<u64>> {
        let k = self.k();
        for size in 1..=max_size.min(k) {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                clock.tick()?;
                let set = idx.iter().fold(0u64, |m, &i| m | 1 << i);
                if (!connected || self.connected(set)) && accept(set) {
                    return Ok(Some(set));
                }
                // next combination in lexicographic order
                let Some(pos) = (0..size).rev().find(|&i| idx[i] < k - size + i) else {
                    break;
                };
                idx[pos] += 1;
                for j in pos + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        Ok(None)
    }

    /// Minimum hitting set by branching over the hitters of the first unhit
    /// demand.
    fn branch(&self, clock: &mut Clock) -> Result<Option<u64>> {
        fn go(h: &Hitting, set: u64, size: usize, best: &mut Option<(usize, u64)>, clock: &mut Clock) -> Result<()> {
            clock.tick()?;
            let Some(&d) = h.demands.iter().find(|&&d| d & set == 0) else {
                if best.is_none_or(|(b, _)| size < b) {
                    *best = Some((size, set));
                }
                return Ok(());
            };
            if best.is_some_and(|(b, _)| size + 1 >= b) {
                return Ok(());
            }
            for v in bits(d) {
                go(h, set | 1 << v, size + 1, best, clock)?;
            }
            Ok(())
        }
        let mut best = None;
        go(self, 0, 0, &mut best, clock)?;
        Ok(best.map(|(_, s)| s))
    }

    /// Smallest connected set satisfying `accept`, by growing every
    /// connected set from its smallest element; each set is visited once.
    fn grow(&self, max_size: usize, clock: &mut Clock, accept: impl Fn(u64) -> bool) -> Result<Option<u64>> {
        struct Ctx<'a, F> {
            h: &'a Hitting,
            accept: F,
            best: Option<(usize, u64)>,
            max_size: usize,
        }
        fn extend<F: Fn(u64) -> bool>(
            ctx: &mut Ctx<'_, F>,
            start: usize,
            set: u64,
            size: usize,
            mut ext: u64,
            clock: &mut Clock,
        ) -> Result<()> {
            clock.tick()?;
            if (ctx.accept)(set) {
                if ctx.best.is_none_or(|(b, _)| size < b) {
                    ctx.best = Some((size, set));
                }
                return Ok(());
            }
            let limit = ctx.best.map_or(ctx.max_size, |(b, _)| b - 1);
            if size >= limit {
                return Ok(());
            }
            let closed = bits(set).fold(set, |m, u| m | ctx.h.adj[u]);
            let above = !((1u64 << start) | ((1u64 << start) - 1));
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                let fresh = ctx.h.adj[w] & !closed & above;
                extend(ctx, start, set | 1 << w, size + 1, ext | fresh, clock)?;
            }
            Ok(())
        }
        let mut ctx = Ctx {
            h: self,
            accept,
            best: None,
            max_size,
        };
        for v in 0..self.k() {
            let above = !((1u64 << v) | ((1u64 << v) - 1));
            extend(&mut ctx, v, 1 << v, 1, self.adj[v] & above, clock)?;
        }
        Ok(ctx.best.map(|(_, s)| s))
    }

    fn minimum(&self, connected: bool, method: Method, clock: &mut Clock) -> Result<u64> {
        let found = match (method, connected) {
            (Method::Enumerate, _) => self.enumerate(self.k(), connected, clock, |s| self.hits_all(s))?,
            (Method::Search, false) => self.branch(clock)?,
            (Method::Search, true) => self.grow(self.k(), clock, |s| self.hits_all(s))?,
        };
        found.ok_or_else(|| Error::Invariant("no feasible set exists".into()))
    }
}

fn graph_adjacency(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn tree_adjacency(t: &RootedTree) -> Vec<u64> {
    (0..t.len()).map(|v| t.neighbors(v).fold(0u64, |m, w| m | 1 << w)).collect()
}

fn check_radii(g: &Graph, radii: &[usize]) -> Result<()> {
    if radii.len() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "{} radii given for {} vertices",
            radii.len(),
            g.n()
        )));
    }
    Ok(())
}

/// Minimum (connected) r-dominating set, ascending.
pub fn exact_rdom(
    g: &Graph,
    radii: &[usize],
    connected: bool,
    method: Method,
    budget: &OracleBudget,
) -> Result<Vec<usize>> {
    check_size(g.n(), budget.max_vertices)?;
    check_radii(g, radii)?;
    let d = all_pairs(g);
    let h = Hitting {
        adj: graph_adjacency(g),
        demands: (0..g.n())
            .map(|u| (0..g.n()).filter(|&v| d[u][v] <= radii[u]).fold(0u64, |m, v| m | 1 << v))
            .collect(),
    };
    let set = h.minimum(connected, method, &mut Clock::new(budget.time_cap))?;
    Ok(bits(set).collect())
}

/// Optimal (connected) p-center and its eccentricity.
///
/// [`Method::Enumerate`] scans all sets of at most `p` vertices;
/// [`Method::Search`] finds the smallest radius whose minimum dominating set
/// fits in `p`.
pub fn exact_pcenter(
    g: &Graph,
    p: usize,
    connected: bool,
    method: Method,
    budget: &OracleBudget,
) -> Result<(Vec<usize>, usize)> {
    check_size(g.n(), budget.max_vertices)?;
    if p == 0 || p > g.n() {
        return Err(Error::InvalidParameter(format!("p must lie in 1..={}, got {p}", g.n())));
    }
    let d = all_pairs(g);
    let ecc = |set: u64| (0..g.n()).map(|u| bits(set).map(|v| d[u][v]).min().unwrap()).max().unwrap();
    let mut clock = Clock::new(budget.time_cap);
    match method {
        Method::Enumerate => {
            let h = Hitting {
                adj: graph_adjacency(g),
                demands: Vec::new(),
            };
            let mut best: Option<(usize, usize, u64)> = None;
            h.enumerate(p, connected, &mut clock, |set| {
                let key = (ecc(set), set.count_ones() as usize);
                if best.is_none_or(|(e, s, _)| key < (e, s)) {
                    best = Some((key.0, key.1, set));
                }
                false
            })?;
            let (e, _, set) = best.expect("single vertices are candidates");
            Ok((bits(set).collect(), e))
        }
        Method::Search => {
            for radius in 0..g.n() {
                let r = vec![radius; g.n()];
                let set = exact_rdom(g, &r, connected, Method::Search, budget)?;
                if set.len() <= p {
                    let mask = set.iter().fold(0u64, |m, &v| m | 1 << v);
                    return Ok((set, ecc(mask)));
                }
            }
            Err(Error::Invariant("radius search did not terminate".into()))
        }
    }
}

fn tree_demands(t: &RootedTree, radii: &[usize]) -> Vec<u64> {
    (0..t.len())
        .map(|x| {
            let dist = t.distances_to_set(&[x]);
            (0..t.len()).filter(|&y| dist[y] <= radii[x]).fold(0u64, |m, y| m | 1 << y)
        })
        .collect()
}

fn min_subtree(host: &RootedTree, h: Hitting, method: Method, budget: &OracleBudget) -> Result<Subtree> {
    let mut clock = Clock::new(budget.time_cap);
    let set = match method {
        Method::Enumerate => h.enumerate(h.k(), true, &mut clock, |s| h.hits_all(s))?,
        Method::Search => h.grow(h.k(), &mut clock, |s| h.hits_all(s))?,
    }
    .ok_or_else(|| Error::Invariant("no covering subtree exists".into()))?;
    Subtree::new(host, bits(set).collect())
}

/// Minimum subtree of `t` reaching every node `x` within `radii[x]`.
pub fn exact_min_covering_subtree(
    t: &RootedTree,
    radii: &[usize],
    method: Method,
    budget: &OracleBudget,
) -> Result<Subtree> {
    check_size(t.len(), budget.max_nodes)?;
    if radii.len() != t.len() {
        return Err(Error::InvalidParameter("one radius per node required".into()));
    }
    let h = Hitting {
        adj: tree_adjacency(t),
        demands: tree_demands(t, radii),
    };
    min_subtree(t, h, method, budget)
}

/// Minimum subtree of the bag tree such that every vertex `v` has a bag of
/// the subtree within graph distance `radii[v]`.
pub fn exact_min_covering_subtree_td(
    g: &Graph,
    td: &TreeDecomposition,
    radii: &[usize],
    method: Method,
    budget: &OracleBudget,
) -> Result<Subtree> {
    check_size(td.num_bags(), budget.max_nodes)?;
    check_radii(g, radii)?;
    let d = all_pairs(g);
    let demands = (0..g.n())
        .map(|v| {
            (0..td.num_bags())
                .filter(|&b| td.bag(b).iter().any(|&u| d[v][u] <= radii[v]))
                .fold(0u64, |m, b| m | 1 << b)
        })
        .collect();
    let h = Hitting {
        adj: tree_adjacency(td.tree()),
        demands,
    };
    min_subtree(td.tree(), h, method, budget)
}
