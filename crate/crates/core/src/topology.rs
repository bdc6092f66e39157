//! Dipole graphs: nodes carry an external field, edges carry a coupling.
//!
//! Topologies can be built in code or read from a small line-oriented text
//! format:
//!
//! ```text
//! # three dipoles on a path
//! n 3
//! h 0.5            # uniform field on every node
//! h 1 0.75         # per-node override
//! edge 0 1 1.0
//! edge 1 2 1.0
//! ```
//!
//! `n` must come before any `h` or `edge` line. Nodes without an `h` line
//! get a zero field.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Undirected edge `i < j` with coupling strength `coupling`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub coupling: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    n: usize,
    edges: Vec<Edge>,
    field: Vec<f64>,
    // adjacency list mirrored from `edges`
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl Topology {
    /// Builds a topology, normalising each edge to `i < j`.
    ///
    /// Rejects an empty graph, self-loops, out-of-range nodes, repeated
    /// unordered pairs and non-finite values.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>, field: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTopology("a topology needs at least one dipole".into()));
        }
        if field.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: field.len(),
            });
        }
        if let Some(h) = field.iter().find(|h| !h.is_finite()) {
            return Err(Error::InvalidTopology(format!("non-finite field {h}")));
        }

        let mut neighbors = vec![Vec::new(); n];
        let mut normalized = Vec::new();
        for (a, b, coupling) in edges {
            for node in [a, b] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if a == b {
                return Err(Error::InvalidTopology(format!("self-loop on node {a}")));
            }
            if !coupling.is_finite() {
                return Err(Error::InvalidTopology(format!(
                    "non-finite coupling on edge ({a}, {b})"
                )));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if neighbors[i].iter().any(|&(k, _)| k == j) {
                return Err(Error::InvalidTopology(format!("duplicate edge ({i}, {j})")));
            }
            neighbors[i].push((j, coupling));
            neighbors[j].push((i, coupling));
            normalized.push(Edge { i, j, coupling });
        }

        Ok(Self {
            n,
            edges: normalized,
            field,
            neighbors,
        })
    }

    /// Topology with the same field `h` on every node.
    pub fn with_uniform_field(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>, h: f64) -> Result<Self> {
        Self::new(n, edges, vec![h; n])
    }

    pub fn single(h: f64) -> Self {
        Self::with_uniform_field(1, [], h).expect("valid single dipole")
    }

    pub fn uncoupled3(h: f64) -> Self {
        Self::with_uniform_field(3, [], h).expect("valid uncoupled triple")
    }

    pub fn triangle(h: f64, s: f64) -> Self {
        Self::with_uniform_field(3, [(0, 1, s), (1, 2, s), (0, 2, s)], h).expect("valid triangle")
    }

    /// Path 0 - 1 - 2; node 1 is the middle dipole.
    pub fn linear3(h: f64, s: f64) -> Self {
        Self::with_uniform_field(3, [(0, 1, s), (1, 2, s)], h).expect("valid linear chain")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn fields(&self) -> &[f64] {
        &self.field
    }

    pub fn field(&self, i: usize) -> f64 {
        self.field[i]
    }

    /// `(neighbor, coupling)` pairs of node `i`.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.neighbors[i]
    }

    /// The common field value when every node carries the same field.
    pub fn uniform_field(&self) -> Option<f64> {
        let h = self.field[0];
        self.field.iter().all(|&x| x == h).then_some(h)
    }

    /// Multiplies every field by `field_scale` and every coupling by `coupling_scale`.
    pub fn scaled(&self, field_scale: f64, coupling_scale: f64) -> Result<Self> {
        Self::new(
            self.n,
            self.edges.iter().map(|e| (e.i, e.j, e.coupling * coupling_scale)),
            self.field.iter().map(|h| h * field_scale).collect(),
        )
    }

    /// Same graph and couplings with every field replaced by `h`.
    pub fn replace_field(&self, h: f64) -> Result<Self> {
        Self::new(
            self.n,
            self.edges.iter().map(|e| (e.i, e.j, e.coupling)),
            vec![h; self.n],
        )
    }

    /// `H_i + sum_j s_ij * A_j` over a raw spin slice; caller guarantees lengths.
    #[inline]
    pub(crate) fn local_field_raw(&self, spins: &[i8], i: usize) -> f64 {
        self.neighbors[i]
            .iter()
            .fold(self.field[i], |acc, &(j, s)| acc + s * f64::from(spins[j]))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        text.parse()
    }

    /// Renders the topology in the text format accepted by [`FromStr`].
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        match self.uniform_field() {
            Some(h) => writeln!(out, "h {h}").unwrap(),
            None => {
                for (i, h) in self.field.iter().enumerate() {
                    writeln!(out, "h {i} {h}").unwrap();
                }
            }
        }
        for e in &self.edges {
            writeln!(out, "edge {} {} {}", e.i, e.j, e.coupling).unwrap();
        }
        out
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut field: Vec<f64> = Vec::new();
        let mut edges: Vec<(usize, usize, f64, usize)> = Vec::new();
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: line_no,
                text: raw.trim().to_string(),
                message,
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let args = &tokens[1..];

            match tokens[0] {
                "n" => {
                    if n.is_some() {
                        return Err(err("`n` given twice".into()));
                    }
                    let [v] = args else {
                        return Err(err("expected `n <int>`".into()));
                    };
                    let v: usize = v.parse().map_err(|_| err(format!("bad dipole count `{v}`")))?;
                    if v == 0 {
                        return Err(err("dipole count must be positive".into()));
                    }
                    n = Some(v);
                    field = vec![0.0; v];
                }
                "h" => {
                    let Some(n) = n else {
                        return Err(err("`n` must come before `h`".into()));
                    };
                    match args {
                        [h] => {
                            let h = parse_float(h).map_err(err)?;
                            field.iter_mut().for_each(|x| *x = h);
                        }
                        [node, h] => {
                            let node: usize = node.parse().map_err(|_| err(format!("bad node index `{node}`")))?;
                            if node >= n {
                                return Err(err(format!("node {node} out of range (n = {n})")));
                            }
                            field[node] = parse_float(h).map_err(err)?;
                        }
                        _ => return Err(err("expected `h <float>` or `h <node> <float>`".into())),
                    }
                }
                "edge" => {
                    if n.is_none() {
                        return Err(err("`n` must come before `edge`".into()));
                    }
                    let [i, j, s] = args else {
                        return Err(err("expected `edge <i> <j> <coupling>`".into()));
                    };
                    let i: usize = i.parse().map_err(|_| err(format!("bad node index `{i}`")))?;
                    let j: usize = j.parse().map_err(|_| err(format!("bad node index `{j}`")))?;
                    let s = parse_float(s).map_err(err)?;
                    edges.push((i, j, s, line_no));
                }
                key => return Err(err(format!("unknown key `{key}`"))),
            }
        }

        let Some(n) = n else {
            return Err(Error::Parse {
                line: last_line.max(1),
                text: String::new(),
                message: "missing `n <int>` line".into(),
            });
        };

        // Re-validate edge by edge so errors point at the offending line.
        let mut accepted = Vec::with_capacity(edges.len());
        for (i, j, s, line_no) in edges {
            accepted.push((i, j, s));
            if let Err(e) = Topology::new(n, accepted.iter().copied(), field.clone()) {
                let text = text.lines().nth(line_no - 1).unwrap_or("").trim().to_string();
                return Err(Error::Parse {
                    line: line_no,
                    text,
                    message: e.to_string(),
                });
            }
        }
        Topology::new(n, accepted, field)
    }
}

fn parse_float(token: &str) -> std::result::Result<f64, String> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("bad number `{token}`")),
    }
}
