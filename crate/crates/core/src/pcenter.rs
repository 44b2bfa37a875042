//! p-Center through domination.
//!
//! [`pcenter_via_rdom`] turns any `(r + φ)`-domination solver into a p-center
//! solver with the same additive loss by searching over uniform radii.
//! [`pcenter_lp`] and [`connected_pcenter_lp`] work on the cluster tree
//! directly.

use crate::bfs::set_eccentricity;
use crate::connector::{connect_cluster_tree, Connection};
use crate::domination::DominationResult;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layering::LayeringPartition;
use crate::lp_domination::{one_sided_search, LpOptions};
use crate::radius::RadiusFunction;
use crate::td::TreeDecomposition;
use crate::td_domination::{connected_rdom_td, rdom_td, Variant};
use crate::tree::{tree_connected_p_center, tree_min_covering_subtree, tree_p_center, Subtree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PCenterResult {
    /// Ascending vertex ids, at most `p` of them.
    pub centers: Vec<usize>,
    /// `max_v d(v, centers)`.
    pub ecc: usize,
    /// Certified additive loss against the optimal eccentricity.
    pub slack: Option<usize>,
    pub connected: bool,
}

fn check_p(g: &Graph, p: usize) -> Result<()> {
    if p == 0 || p > g.n() {
        return Err(Error::InvalidParameter(format!("p must lie in 1..={}, got {p}", g.n())));
    }
    Ok(())
}

fn finish(g: &Graph, centers: Vec<usize>, slack: Option<usize>, connected: bool) -> PCenterResult {
    let ecc = set_eccentricity(g, &centers).expect("non-empty center set");
    PCenterResult {
        centers,
        ecc,
        slack,
        connected,
    }
}

/// One solver call of the radius search.
#[derive(Debug, Clone)]
pub struct RadiusProbe {
    pub radius: usize,
    pub size: usize,
}

/// Result of [`pcenter_via_rdom`] with its search trace.
#[derive(Debug, Clone)]
pub struct RadiusSearch {
    pub result: PCenterResult,
    /// Uniform radius whose solution was returned.
    pub radius: usize,
    pub probes: Vec<RadiusProbe>,
}

/// Binary search over uniform radii `i ∈ [0, n]`, keeping the feasible
/// (`|D_i| <= p`) solution with the smallest probed `i`.
pub fn pcenter_via_rdom(
    g: &Graph,
    p: usize,
    mut solver: impl FnMut(&RadiusFunction) -> Result<DominationResult>,
) -> Result<RadiusSearch> {
    check_p(g, p)?;
    let n = g.n();
    let mut probes = Vec::new();
    let mut run = |i: usize| -> Result<DominationResult> {
        let d = solver(&RadiusFunction::uniform(n, i))?;
        probes.push(RadiusProbe { radius: i, size: d.len() });
        Ok(d)
    };
    let top = run(n)?;
    if top.len() > p {
        return Err(Error::Invariant(format!(
            "solver returned {} vertices for radius {n}",
            top.len()
        )));
    }
    let (mut best, mut best_i) = (top, n);
    let (mut lo, mut hi) = (0, n);
    // invariant: hi is feasible; every i < lo probed infeasible
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let d = run(mid)?;
        if d.len() <= p {
            hi = mid;
            best = d;
            best_i = mid;
        } else {
            lo = mid + 1;
        }
    }
    let result = finish(g, best.set, best.slack, best.connected);
    Ok(RadiusSearch {
        result,
        radius: best_i,
        probes,
    })
}

/// `+Δ` p-center: an optimal p-center of the cluster tree, one smallest
/// vertex per chosen cluster.
pub fn pcenter_lp(g: &Graph, p: usize, opts: &LpOptions) -> Result<PCenterResult> {
    check_p(g, p)?;
    let lp = LayeringPartition::build(g, opts.start)?;
    let (chosen, _) = tree_p_center(lp.tree(), p)?;
    let mut centers: Vec<usize> = chosen.iter().map(|&c| lp.cluster(c)[0]).collect();
    centers.sort_unstable();
    Ok(finish(g, centers, opts.delta.compute(g, &lp), false))
}

/// One δ probe of the connected p-center search.
#[derive(Debug, Clone)]
pub struct PCenterProbe {
    pub delta: usize,
    pub t_delta: Subtree,
    pub connection: Connection,
    pub accepted: bool,
}

#[derive(Debug, Clone)]
pub struct ConnectedPCenterRun {
    pub result: PCenterResult,
    /// Optimal connected p-center of the cluster tree.
    pub t_p: Subtree,
    pub delta: Option<usize>,
    pub delta_final: usize,
    pub probes: Vec<PCenterProbe>,
}

/// `+2Δ` connected p-center. Covers the optimal connected p-center `T_p` of
/// the cluster tree by a minimum subtree reaching all of `T_p` within δ,
/// connects it in the graph and accepts when at most `p` vertices are used.
pub fn connected_pcenter_lp(g: &Graph, p: usize, opts: &LpOptions) -> Result<ConnectedPCenterRun> {
    check_p(g, p)?;
    let lp = LayeringPartition::build(g, opts.start)?;
    let (t_p, _) = tree_connected_p_center(lp.tree(), p)?;
    let (local, map) = lp.tree().induced(&t_p);
    let probe = |delta: usize| -> Result<PCenterProbe> {
        let sub = tree_min_covering_subtree(&local, &vec![delta; local.len()]);
        let nodes = sub.nodes().iter().map(|&i| map[i]).collect();
        let t_delta = Subtree::new(lp.tree(), nodes)?;
        let connection = connect_cluster_tree(g, &lp, &t_delta)?;
        let accepted = connection.set.len() <= p;
        Ok(PCenterProbe {
            delta,
            t_delta,
            connection,
            accepted,
        })
    };
    let (best, probes) = one_sided_search(local.len(), probe, |pr| pr.accepted)?;
    let delta = opts.delta.compute(g, &lp);
    Ok(ConnectedPCenterRun {
        result: finish(g, best.connection.set.clone(), delta.map(|d| 2 * d), true),
        t_p,
        delta,
        delta_final: best.delta,
        probes,
    })
}

/// p-center through a tree-decomposition: slack ρ, or φ + λ when connected.
/// The unconnected solver needs bag centers; HEART computes them if absent.
pub fn pcenter_td(
    g: &Graph,
    td: &TreeDecomposition,
    p: usize,
    connected: bool,
    variant: Variant,
) -> Result<RadiusSearch> {
    if connected {
        pcenter_via_rdom(g, p, |r| connected_rdom_td(g, td, r, variant).map(|run| run.result))
    } else {
        if td.centers().is_none() {
            return Err(Error::MissingCenters);
        }
        pcenter_via_rdom(g, p, |r| rdom_td(g, td, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp_domination::{connected_rdom_lp, rdom_lp};

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn via_rdom_on_path() {
        let g = path(5);
        let opts = LpOptions::default();
        let one = pcenter_via_rdom(&g, 1, |r| rdom_lp(&g, r, &opts)).unwrap();
        assert_eq!(one.result.ecc, 2);
        assert_eq!(one.radius, 2);
        let two = pcenter_via_rdom(&g, 2, |r| rdom_lp(&g, r, &opts)).unwrap();
        assert!(two.result.ecc <= 1);
        let all = pcenter_via_rdom(&g, 5, |r| rdom_lp(&g, r, &opts)).unwrap();
        assert_eq!(all.result.ecc, 0);
    }

    #[test]
    fn via_rdom_returns_probed_feasible_radius() {
        let g = cycle(9);
        let opts = LpOptions::default();
        for p in 1..=9 {
            let s = pcenter_via_rdom(&g, p, |r| connected_rdom_lp(&g, r, &opts).map(|x| x.result)).unwrap();
            assert!(s.result.centers.len() <= p);
            assert!(s.probes.iter().any(|pr| pr.radius == s.radius && pr.size <= p));
            assert!(s.probes.iter().all(|pr| pr.radius >= s.radius || pr.size > p));
        }
    }

    #[test]
    fn lp_on_cycle() {
        let g = cycle(6);
        let res = pcenter_lp(&g, 1, &LpOptions::default()).unwrap();
        assert_eq!(res.centers, vec![1]);
        assert_eq!(res.ecc, 3);
        assert_eq!(res.slack, Some(2));
    }

    #[test]
    fn lp_on_path() {
        let g = path(5);
        let res = pcenter_lp(&g, 2, &LpOptions::default()).unwrap();
        assert_eq!(res.ecc, 1);
        assert_eq!(pcenter_lp(&g, 5, &LpOptions::default()).unwrap().ecc, 0);
        assert!(pcenter_lp(&g, 0, &LpOptions::default()).is_err());
        assert!(pcenter_lp(&g, 6, &LpOptions::default()).is_err());
    }

    #[test]
    fn connected_lp_examples() {
        let g = cycle(6);
        let run = connected_pcenter_lp(&g, 2, &LpOptions::default()).unwrap();
        assert!(run.result.centers.len() <= 2);
        assert!(g.is_connected_subset(&run.result.centers));
        assert!(run.result.ecc <= 2 + 4);
        let g = path(5);
        let run = connected_pcenter_lp(&g, 3, &LpOptions::default()).unwrap();
        assert_eq!(run.result.ecc, 1);
        assert_eq!(run.result.centers, vec![1, 2, 3]);
        let run = connected_pcenter_lp(&g, 5, &LpOptions::default()).unwrap();
        assert_eq!(run.result.ecc, 0);
    }

    #[test]
    fn td_on_p3() {
        let g = path(3);
        let td = TreeDecomposition::new(&g, vec![vec![0, 1], vec![1, 2]], &[(0, 1)], Some(vec![0, 1])).unwrap();
        // radius 1 is covered by bag 0 alone, whose center is the end vertex
        let s = pcenter_td(&g, &td, 1, false, Variant::Heart).unwrap();
        assert_eq!(s.radius, 1);
        assert_eq!(s.result.centers, vec![0]);
        assert_eq!(s.result.ecc, 2);
        assert!(s.result.ecc <= 1 + s.result.slack.unwrap());
        let bare = TreeDecomposition::new(&g, vec![vec![0, 1], vec![1, 2]], &[(0, 1)], None).unwrap();
        assert_eq!(pcenter_td(&g, &bare, 1, false, Variant::Heart).unwrap_err(), Error::MissingCenters);
        let s = pcenter_td(&g, &bare, 1, true, Variant::Diamond).unwrap();
        assert!(s.result.connected);
        assert!(s.result.ecc <= 1 + 3);
    }
}
