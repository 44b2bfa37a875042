//! Tree-decompositions: validation, normalisation to a minimal decomposition,
//! bag centers, breadth ρ and length λ, and the `.td` text format.
//!
//! ```text
//! c optional comment
//! s td <num_bags> <max_bag_size> <n>
//! b <bag> <v1> ... <vk>        (one line per bag)
//! <i> <j>                      (one line per bag-tree edge)
//! x c <bag> <vertex>           (optional, one per bag)
//! ```
//!
//! Bags and vertices are 1-based in the file.

use crate::error::{Error, Result};
use crate::graph::{parse_num, Graph};
use crate::tree::RootedTree;
use std::collections::{BTreeSet, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    tree: RootedTree,
    bags_of: Vec<Vec<usize>>,
    centers: Option<Vec<usize>>,
    rho: Option<usize>,
    lambda: usize,
}

fn decomposition(msg: String) -> Error {
    Error::Decomposition(msg)
}

impl TreeDecomposition {
    /// Validates bags (0-based vertex ids) and bag-tree edges against `g`,
    /// contracts every bag contained in a neighbouring bag, and computes λ and,
    /// when centers are given, ρ. `centers[i]` belongs to bag `i`.
    pub fn new(
        g: &Graph,
        bags: Vec<Vec<usize>>,
        edges: &[(usize, usize)],
        centers: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = g.n();
        let k = bags.len();
        if k == 0 {
            return Err(decomposition("no bags".into()));
        }
        let mut bags: Vec<Vec<usize>> = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        for b in &bags {
            if let Some(&v) = b.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { v: v + 1, n });
            }
        }
        if let Some(c) = &centers {
            if c.len() != k {
                return Err(decomposition(format!("{} centers for {k} bags", c.len())));
            }
            if let Some(&v) = c.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { v: v + 1, n });
            }
        }
        let tree = RootedTree::from_edges(k, edges, 0)
            .map_err(|e| decomposition(format!("bag edges do not form a tree: {e}")))?;
        check_properties(g, &bags, &tree)?;

        // contract bags contained in a neighbour until none is left
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut alive = vec![true; k];
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..k {
                if !alive[a] {
                    continue;
                }
                let target = adj[a].iter().copied().find(|&b| is_subset(&bags[a], &bags[b]));
                if let Some(b) = target {
                    let others: Vec<usize> = adj[a].iter().copied().filter(|&x| x != b).collect();
                    for x in others {
                        adj[x].remove(&a);
                        adj[x].insert(b);
                        adj[b].insert(x);
                    }
                    adj[b].remove(&a);
                    adj[a].clear();
                    alive[a] = false;
                    bags[a].clear();
                    changed = true;
                }
            }
        }
        let new_id: Vec<Option<usize>> = {
            let mut next = 0;
            alive
                .iter()
                .map(|&keep| {
                    keep.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let mut kept_bags = Vec::new();
        let mut kept_centers = Vec::new();
        let mut kept_edges = Vec::new();
        for a in 0..k {
            let Some(na) = new_id[a] else { continue };
            kept_bags.push(std::mem::take(&mut bags[a]));
            if let Some(c) = &centers {
                kept_centers.push(c[a]);
            }
            for &b in &adj[a] {
                let nb = new_id[b].expect("neighbours of live bags are live");
                if na < nb {
                    kept_edges.push((na, nb));
                }
            }
        }
        if kept_bags.len() < k {
            log::debug!("normalisation contracted {} bags", k - kept_bags.len());
        }
        let tree = RootedTree::from_edges(kept_bags.len(), &kept_edges, 0)?;
        check_properties(g, &kept_bags, &tree)?;
        let mut td = Self {
            bags_of: bags_of(n, &kept_bags),
            bags: kept_bags,
            tree,
            centers: None,
            rho: None,
            lambda: 0,
        };
        td.lambda = td.compute_lambda(g);
        if centers.is_some() {
            td.set_centers(g, kept_centers)?;
        }
        Ok(td)
    }

    pub fn num_bags(&self) -> usize {
        self.bags.len()
    }

    /// Vertices of bag `b`, ascending.
    pub fn bag(&self, b: usize) -> &[usize] {
        &self.bags[b]
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    /// Bag tree rooted at bag 0.
    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    /// Bags containing `v`, ascending.
    pub fn bags_of(&self, v: usize) -> &[usize] {
        &self.bags_of[v]
    }

    /// M: total size of all bags.
    pub fn total_size(&self) -> usize {
        self.bags.iter().map(Vec::len).sum()
    }

    pub fn centers(&self) -> Option<&[usize]> {
        self.centers.as_deref()
    }

    /// Breadth with respect to the stored centers.
    pub fn rho(&self) -> Option<usize> {
        self.rho
    }

    /// Length: the largest distance between two vertices of a common bag.
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Installs centers and recomputes ρ as `max_B max_{u in B} d(c(B), u)`.
    pub fn set_centers(&mut self, g: &Graph, centers: Vec<usize>) -> Result<()> {
        if centers.len() != self.bags.len() {
            return Err(decomposition(format!(
                "{} centers for {} bags",
                centers.len(),
                self.bags.len()
            )));
        }
        let mut rho = 0;
        for (b, &c) in centers.iter().enumerate() {
            if c >= g.n() {
                return Err(Error::VertexOutOfRange { v: c + 1, n: g.n() });
            }
            let d = crate::bfs::distances_from(g, c);
            rho = rho.max(self.bags[b].iter().map(|&u| d[u]).max().unwrap_or(0));
        }
        self.centers = Some(centers);
        self.rho = Some(rho);
        Ok(())
    }

    fn compute_lambda(&self, g: &Graph) -> usize {
        let mut best = 0;
        let mut dist = vec![usize::MAX; g.n()];
        let mut queue = VecDeque::new();
        for u in 0..g.n() {
            bfs_into(g, u, &mut dist, &mut queue);
            for &b in &self.bags_of[u] {
                for &w in &self.bags[b] {
                    best = best.max(dist[w]);
                }
            }
        }
        best
    }

    /// Parses and validates a `.td` file against `g`.
    pub fn parse(g: &Graph, text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
        let mut edges = Vec::new();
        let mut centers: Vec<Option<usize>> = Vec::new();
        let mut any_center = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_ascii_whitespace().collect();
            let parse_err = |msg: &str| Error::Parse {
                line: line_no,
                msg: msg.into(),
            };
            match tokens[0] {
                "c" => continue,
                "s" => {
                    if tokens.len() != 5 || tokens[1] != "td" {
                        return Err(parse_err("expected `s td <bags> <max_bag_size> <n>`"));
                    }
                    if header.is_some() {
                        return Err(parse_err("second header"));
                    }
                    let k = parse_num(tokens[2], line_no)?;
                    let width = parse_num(tokens[3], line_no)?;
                    let n = parse_num(tokens[4], line_no)?;
                    if n != g.n() {
                        return Err(decomposition(format!("file is for {n} vertices, graph has {}", g.n())));
                    }
                    bags = vec![None; k];
                    centers = vec![None; k];
                    header = Some((k, width, n));
                }
                _ if header.is_none() => return Err(parse_err("line before `s td` header")),
                "b" => {
                    let (k, width, n) = header.unwrap();
                    if tokens.len() < 2 {
                        return Err(parse_err("expected `b <bag> <vertices...>`"));
                    }
                    let id = parse_num(tokens[1], line_no)?;
                    if id == 0 || id > k {
                        return Err(parse_err(&format!("bag id {id} out of range 1..={k}")));
                    }
                    let mut members = Vec::with_capacity(tokens.len() - 2);
                    for t in &tokens[2..] {
                        let v = parse_num(t, line_no)?;
                        if v == 0 || v > n {
                            return Err(Error::VertexOutOfRange { v, n });
                        }
                        members.push(v - 1);
                    }
                    if members.len() > width {
                        return Err(parse_err(&format!("bag {id} has more than {width} vertices")));
                    }
                    if bags[id - 1].replace(members).is_some() {
                        return Err(parse_err(&format!("bag {id} given twice")));
                    }
                }
                "x" => {
                    let (k, _, n) = header.unwrap();
                    if tokens.len() != 4 || tokens[1] != "c" {
                        return Err(parse_err("expected `x c <bag> <vertex>`"));
                    }
                    let id = parse_num(tokens[2], line_no)?;
                    let v = parse_num(tokens[3], line_no)?;
                    if id == 0 || id > k {
                        return Err(parse_err(&format!("bag id {id} out of range 1..={k}")));
                    }
                    if v == 0 || v > n {
                        return Err(Error::VertexOutOfRange { v, n });
                    }
                    if centers[id - 1].replace(v - 1).is_some() {
                        return Err(parse_err(&format!("center of bag {id} given twice")));
                    }
                    any_center = true;
                }
                _ => {
                    let (k, _, _) = header.unwrap();
                    if tokens.len() != 2 {
                        return Err(parse_err("expected `<bag> <bag>` edge line"));
                    }
                    let a = parse_num(tokens[0], line_no)?;
                    let b = parse_num(tokens[1], line_no)?;
                    if a == 0 || a > k || b == 0 || b > k {
                        return Err(parse_err("bag id out of range"));
                    }
                    edges.push((a - 1, b - 1));
                }
            }
        }
        if header.is_none() {
            return Err(Error::Parse {
                line: 0,
                msg: "missing `s td` header".into(),
            });
        }
        let bags = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| decomposition(format!("bag {} is not listed", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let centers = if any_center {
            Some(
                centers
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| c.ok_or_else(|| decomposition(format!("bag {} has no center", i + 1))))
                    .collect::<Result<Vec<_>>>()?,
            )
        } else {
            None
        };
        Self::new(g, bags, &edges, centers)
    }

    /// Emits the `.td` format; [`TreeDecomposition::parse`] reads it back
    /// unchanged.
    pub fn to_td(&self, n: usize) -> String {
        let width = self.bags.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = format!("s td {} {} {}\n", self.bags.len(), width, n);
        for (i, b) in self.bags.iter().enumerate() {
            out.push_str(&format!("b {}", i + 1));
            for &v in b {
                out.push_str(&format!(" {}", v + 1));
            }
            out.push('\n');
        }
        let mut edges = self.tree.edges();
        edges.sort_unstable_by_key(|&(p, c)| (p.min(c), p.max(c)));
        for (p, c) in edges {
            out.push_str(&format!("{} {}\n", p.min(c) + 1, p.max(c) + 1));
        }
        if let Some(centers) = &self.centers {
            for (i, &c) in centers.iter().enumerate() {
                out.push_str(&format!("x c {} {}\n", i + 1, c + 1));
            }
        }
        out
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

fn bags_of(n: usize, bags: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    for (i, b) in bags.iter().enumerate() {
        for &v in b {
            out[v].push(i);
        }
    }
    out
}

/// Vertex coverage, edge coverage and connectivity of every vertex's bags.
fn check_properties(g: &Graph, bags: &[Vec<usize>], tree: &RootedTree) -> Result<()> {
    let n = g.n();
    let of = bags_of(n, bags);
    if let Some(v) = (0..n).find(|&v| of[v].is_empty()) {
        return Err(decomposition(format!("vertex {} is in no bag", v + 1)));
    }
    for (u, v) in g.edges() {
        let (a, b) = (&of[u], &of[v]);
        let (mut i, mut j) = (0, 0);
        let mut shared = false;
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    shared = true;
                    break;
                }
            }
        }
        if !shared {
            return Err(decomposition(format!("edge {} {} is in no bag", u + 1, v + 1)));
        }
    }
    let mut mark = vec![usize::MAX; bags.len()];
    for v in 0..n {
        for &b in &of[v] {
            mark[b] = v;
        }
        let tops = of[v]
            .iter()
            .filter(|&&b| tree.parent(b).is_none_or(|p| mark[p] != v))
            .count();
        if tops != 1 {
            return Err(decomposition(format!(
                "bags containing vertex {} split into {tops} subtrees",
                v + 1
            )));
        }
    }
    Ok(())
}

fn bfs_into(g: &Graph, s: usize, dist: &mut [usize], queue: &mut VecDeque<usize>) {
    dist.fill(usize::MAX);
    dist[s] = 0;
    queue.clear();
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

/// For each bag, the vertex minimising the largest distance to the bag
/// (smallest id on ties), and the resulting breadth.
pub fn compute_centers(g: &Graph, td: &TreeDecomposition) -> (Vec<usize>, usize) {
    let k = td.num_bags();
    let mut best = vec![(usize::MAX, usize::MAX); k];
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for x in 0..g.n() {
        bfs_into(g, x, &mut dist, &mut queue);
        for (b, bag) in td.bags().iter().enumerate() {
            let ecc = bag.iter().map(|&u| dist[u]).max().unwrap_or(0);
            if ecc < best[b].0 {
                best[b] = (ecc, x);
            }
        }
    }
    let rho = best.iter().map(|&(e, _)| e).max().unwrap_or(0);
    (best.into_iter().map(|(_, x)| x).collect(), rho)
}
