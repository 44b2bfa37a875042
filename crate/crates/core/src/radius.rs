//! Per-vertex demand radii and the radii file format (`r <vertex> <value>`,
//! 1-based vertices, `c` comment lines).

use crate::error::{Error, Result};
use crate::graph::parse_num;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusFunction {
    radii: Vec<usize>,
}

impl RadiusFunction {
    /// Validates one radius per vertex, each in `0..=n`.
    pub fn new(radii: Vec<usize>) -> Result<Self> {
        let n = radii.len();
        if let Some((v, &radius)) = radii.iter().enumerate().find(|(_, &r)| r > n) {
            return Err(Error::RadiusOutOfRange { v: v + 1, radius, n });
        }
        Ok(Self { radii })
    }

    /// The same radius for all `n` vertices; `radius` is clamped to `n`.
    pub fn uniform(n: usize, radius: usize) -> Self {
        Self {
            radii: vec![radius.min(n); n],
        }
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn get(&self, v: usize) -> usize {
        self.radii[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.radii
    }

    /// Radii shifted by a constant; the result may exceed `n` and is therefore
    /// a plain vector.
    pub fn plus(&self, shift: usize) -> Vec<usize> {
        self.radii.iter().map(|r| r + shift).collect()
    }

    /// Parses a radii file for a graph on `n` vertices. Vertices without a
    /// line take `default`; without a default every vertex must be listed.
    pub fn parse(text: &str, n: usize, default: Option<usize>) -> Result<Self> {
        let mut radii: Vec<Option<usize>> = vec![None; n];
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let tokens: Vec<&str> = line.split_ascii_whitespace().collect();
            if tokens.len() != 3 || tokens[0] != "r" {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "expected `r <vertex> <value>`".into(),
                });
            }
            let v = parse_num(tokens[1], line_no)?;
            let value = parse_num(tokens[2], line_no)?;
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if radii[v - 1].replace(value).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("radius of vertex {v} given twice"),
                });
            }
        }
        let radii = radii
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.or(default).ok_or(Error::MissingRadius { v: v + 1 }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(radii)
    }

    pub fn to_text(&self) -> String {
        self.radii
            .iter()
            .enumerate()
            .map(|(v, r)| format!("r {} {}\n", v + 1, r))
            .collect()
    }
}
