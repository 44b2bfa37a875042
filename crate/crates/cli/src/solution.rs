//! Solution files.
//!
//! ```text
//! s algo <id>
//! s size <k>
//! s slack <φ>          (omitted when no certificate was computed)
//! v <vertex>           (k lines, 1-based)
//! e ecc <value>        (p-center solutions only)
//! s checksum <hex>     (first 16 hex digits of SHA-256 over the canonical .gr)
//! ```

use rdom_core::Graph;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub algo: String,
    pub size: usize,
    pub slack: Option<usize>,
    /// 1-based, ascending.
    pub vertices: Vec<usize>,
    pub ecc: Option<usize>,
    pub checksum: Option<String>,
}

impl Solution {
    /// Builds a solution from 0-based vertex ids.
    pub fn new(algo: &str, g: &Graph, set: &[usize], slack: Option<usize>, ecc: Option<usize>) -> Self {
        Self {
            algo: algo.to_string(),
            size: set.len(),
            slack,
            vertices: set.iter().map(|v| v + 1).collect(),
            ecc,
            checksum: Some(checksum(g)),
        }
    }

    /// 0-based vertex ids.
    pub fn set(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v - 1).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("s algo {}\ns size {}\n", self.algo, self.size);
        if let Some(s) = self.slack {
            out += &format!("s slack {s}\n");
        }
        for v in &self.vertices {
            out += &format!("v {v}\n");
        }
        if let Some(e) = self.ecc {
            out += &format!("e ecc {e}\n");
        }
        if let Some(c) = &self.checksum {
            out += &format!("s checksum {c}\n");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut sol = Solution {
            algo: String::new(),
            size: 0,
            slack: None,
            vertices: Vec::new(),
            ecc: None,
            checksum: None,
        };
        let mut size = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: &str| format!("solution line {}: {msg}", idx + 1);
            let num = |tok: &str| tok.parse::<usize>().map_err(|_| err(&format!("`{tok}` is not a number")));
            let tokens: Vec<&str> = line.split_ascii_whitespace().collect();
            match tokens.as_slice() {
                [] | ["c", ..] => {}
                ["s", "algo", id] => sol.algo = id.to_string(),
                ["s", "size", k] => size = Some(num(k)?),
                ["s", "slack", x] => sol.slack = Some(num(x)?),
                ["s", "checksum", h] => sol.checksum = Some(h.to_string()),
                ["v", x] => {
                    let v = num(x)?;
                    if v == 0 {
                        return Err(err("vertex ids are 1-based"));
                    }
                    sol.vertices.push(v);
                }
                ["e", "ecc", x] => sol.ecc = Some(num(x)?),
                _ => return Err(err(&format!("unrecognised line `{line}`"))),
            }
        }
        let size = size.ok_or("solution has no `s size` line")?;
        if size != sol.vertices.len() {
            return Err(format!("size {size} declared but {} vertices listed", sol.vertices.len()));
        }
        sol.size = size;
        Ok(sol)
    }
}

/// First 16 hex digits of SHA-256 over the canonical `.gr` text.
pub fn checksum(g: &Graph) -> String {
    let digest = Sha256::digest(g.to_gr().as_bytes());
    hex::encode(digest)[..16].to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        for (slack, ecc) in [(Some(2), None), (None, Some(1)), (Some(0), Some(0))] {
            let sol = Solution::new("rdom-lp", &g, &[0, 2], slack, ecc);
            assert_eq!(Solution::parse(&sol.to_text()).unwrap(), sol);
        }
    }

    #[test]
    fn rejects_size_mismatch() {
        assert!(Solution::parse("s size 2\nv 1\n").is_err());
        assert!(Solution::parse("v 1\n").is_err());
        assert!(Solution::parse("s size 1\nv 0\n").is_err());
        assert!(Solution::parse("s size 1\nv 1\nq\n").is_err());
    }

    #[test]
    fn checksum_ignores_edge_order() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(checksum(&a), checksum(&b));
        assert_eq!(checksum(&a).len(), 16);
    }
}
