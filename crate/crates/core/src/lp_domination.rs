//! Domination through the layering partition.
//!
//! [`rdom_lp`] solves r-domination exactly on the cluster tree and lifts one
//! vertex per chosen cluster; the result is no larger than an optimal
//! r-dominating set and loses at most Δ in coverage.
//!
//! [`connected_rdom_lp`] covers the cluster tree with a subtree `T_δ` for
//! radii `r + δ`, connects its clusters in the graph, and searches δ from the
//! low end until the connected set is no larger than `T_r`. The output loses
//! at most 2Δ in coverage and is no larger than an optimal connected
//! r-dominating set.

use crate::connector::{connect_cluster_tree, Connection};
use crate::domination::DominationResult;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layering::{cluster_diameter, cluster_diameter_upper, LayeringPartition};
use crate::radius::RadiusFunction;
use crate::tree::{tree_min_covering_subtree, tree_r_dominating_set, Subtree};

/// How the cluster diameter Δ is obtained.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum DeltaMode {
    /// One BFS per clustered vertex.
    #[default]
    Exact,
    /// Twice one eccentricity per cluster; an upper bound on Δ.
    Upper,
    /// Not computed. Results carry no slack certificate.
    Skip,
}

impl DeltaMode {
    pub fn compute(self, g: &Graph, lp: &LayeringPartition) -> Option<usize> {
        match self {
            DeltaMode::Exact => Some(cluster_diameter(g, lp)),
            DeltaMode::Upper => Some(cluster_diameter_upper(g, lp)),
            DeltaMode::Skip => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LpOptions {
    /// Start vertex of the layering.
    pub start: usize,
    pub delta: DeltaMode,
}

fn check_radii(g: &Graph, r: &RadiusFunction) -> Result<()> {
    if r.len() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "{} radii given for {} vertices",
            r.len(),
            g.n()
        )));
    }
    Ok(())
}

/// Smallest vertex of each cluster, ascending.
fn representatives(lp: &LayeringPartition, clusters: &[usize]) -> Vec<usize> {
    let mut set: Vec<usize> = clusters.iter().map(|&c| lp.cluster(c)[0]).collect();
    set.sort_unstable();
    set
}

/// `(r + Δ)`-dominating set no larger than a minimum r-dominating set.
pub fn rdom_lp(g: &Graph, r: &RadiusFunction, opts: &LpOptions) -> Result<DominationResult> {
    check_radii(g, r)?;
    let lp = LayeringPartition::build(g, opts.start)?;
    let cluster_r = lp.cluster_radii(r.as_slice());
    let chosen = tree_r_dominating_set(lp.tree(), &cluster_r);
    Ok(DominationResult {
        set: representatives(&lp, &chosen),
        slack: opts.delta.compute(g, &lp),
        connected: false,
    })
}

/// One evaluation of the search predicate at a given δ.
#[derive(Debug, Clone)]
pub struct Probe {
    pub delta: usize,
    pub t_delta: Subtree,
    pub connection: Connection,
    pub accepted: bool,
}

/// State shared by all probes of one connected search.
#[derive(Debug, Clone)]
pub struct ConnectedLpSearch<'g> {
    g: &'g Graph,
    lp: LayeringPartition,
    cluster_r: Vec<usize>,
    t_r: Subtree,
}

impl<'g> ConnectedLpSearch<'g> {
    pub fn new(g: &'g Graph, r: &RadiusFunction, start: usize) -> Result<Self> {
        check_radii(g, r)?;
        let lp = LayeringPartition::build(g, start)?;
        let cluster_r = lp.cluster_radii(r.as_slice());
        let t_r = tree_min_covering_subtree(lp.tree(), &cluster_r);
        Ok(Self {
            g,
            lp,
            cluster_r,
            t_r,
        })
    }

    pub fn layering(&self) -> &LayeringPartition {
        &self.lp
    }

    /// Minimum covering subtree of the cluster tree for the cluster radii.
    pub fn t_r(&self) -> &Subtree {
        &self.t_r
    }

    /// Builds `T_δ` and its connected set and decides acceptance
    /// (`|S_δ| <= |T_r|`).
    pub fn probe(&self, delta: usize) -> Result<Probe> {
        let shifted: Vec<usize> = self.cluster_r.iter().map(|&x| x + delta).collect();
        let t_delta = tree_min_covering_subtree(self.lp.tree(), &shifted);
        if t_delta.len() + delta * t_delta.leaf_count() > self.t_r.len() {
            return Err(Error::Invariant(format!(
                "covering subtree for slack {delta} has {} clusters and {} leaves, T_r has {}",
                t_delta.len(),
                t_delta.leaf_count(),
                self.t_r.len()
            )));
        }
        let connection = connect_cluster_tree(self.g, &self.lp, &t_delta)?;
        let accepted = connection.set.len() <= self.t_r.len();
        Ok(Probe {
            delta,
            t_delta,
            connection,
            accepted,
        })
    }

    /// Doubles δ from 0 until a probe is accepted, then bisects between the
    /// last rejected and first accepted value. Returns the accepted probe
    /// with the smallest δ seen and the full probe history.
    pub fn run(&self) -> Result<(Probe, Vec<Probe>)> {
        one_sided_search(self.g.n(), |d| self.probe(d), |p| p.accepted)
    }
}

/// One-sided binary search over `0..=cap`. Probes 0, 1, 2, 4, ... until one
/// is accepted, then bisects the bracket. Acceptance need not be monotone;
/// the accepted probe at the smallest position seen is returned together
/// with every probe in evaluation order.
pub(crate) fn one_sided_search<T: Clone>(
    cap: usize,
    mut probe: impl FnMut(usize) -> Result<T>,
    accepted: impl Fn(&T) -> bool,
) -> Result<(T, Vec<T>)> {
    let mut history = Vec::new();
    let first = probe(0)?;
    history.push(first.clone());
    if accepted(&first) {
        return Ok((first, history));
    }
    if cap == 0 {
        return Err(Error::Invariant("the only probe was rejected".into()));
    }
    let mut lo = 0;
    let mut next = 1;
    let (mut best, mut hi) = loop {
        let p = probe(next)?;
        history.push(p.clone());
        if accepted(&p) {
            break (p, next);
        }
        if next >= cap {
            return Err(Error::Invariant(format!("no probe up to {cap} was accepted")));
        }
        lo = next;
        next = (2 * next).min(cap);
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let p = probe(mid)?;
        history.push(p.clone());
        if accepted(&p) {
            hi = mid;
            best = p;
        } else {
            lo = mid;
        }
    }
    Ok((best, history))
}

/// Full report of a connected layering-partition run.
#[derive(Debug, Clone)]
pub struct ConnectedLpRun {
    pub result: DominationResult,
    /// Number of clusters in `T_r`.
    pub t_r_size: usize,
    /// Δ as computed by the requested mode.
    pub delta: Option<usize>,
    /// δ of the returned set.
    pub delta_final: usize,
    pub probes: Vec<Probe>,
}

impl ConnectedLpRun {
    pub fn iterations(&self) -> usize {
        self.probes.len()
    }
}

/// Connected `(r + 2Δ)`-dominating set no larger than a minimum connected
/// r-dominating set.
pub fn connected_rdom_lp(g: &Graph, r: &RadiusFunction, opts: &LpOptions) -> Result<ConnectedLpRun> {
    let search = ConnectedLpSearch::new(g, r, opts.start)?;
    let (best, probes) = search.run()?;
    let delta = opts.delta.compute(g, search.layering());
    if let Some(d) = delta {
        for p in &probes {
            let lambda = p.t_delta.leaf_count();
            let size = p.connection.set.len();
            if size > p.t_delta.len() + d * lambda {
                return Err(Error::Invariant(format!(
                    "connected set of size {size} exceeds |T| + Δ·Λ = {} + {d}·{lambda}",
                    p.t_delta.len()
                )));
            }
            if lambda > 0 && size > p.t_delta.len() + d * (lambda - 1) {
                log::info!(
                    "slack {}: |S| = {size} exceeds |T| + Δ·(Λ-1) = {} + {d}·{}",
                    p.delta,
                    p.t_delta.len(),
                    lambda - 1
                );
            }
        }
    }
    log::debug!(
        "connected search: |T_r| = {}, final slack {}, {} probes",
        search.t_r().len(),
        best.delta,
        probes.len()
    );
    Ok(ConnectedLpRun {
        result: DominationResult {
            set: best.connection.set.clone(),
            slack: delta.map(|d| 2 * d),
            connected: true,
        },
        t_r_size: search.t_r().len(),
        delta,
        delta_final: best.delta,
        probes,
    })
}
