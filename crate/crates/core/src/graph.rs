//! Edge-weighted simple graphs and their edge ideals.
//!
//! Vertices are 0-based internally; every JSON and display surface is 1-based.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Cycle,
    Path,
    General,
}

impl std::str::FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(Shape::Cycle),
            "path" => Ok(Shape::Path),
            "general" => Ok(Shape::General),
            other => Err(Error::Parse(format!("unknown shape {other:?}"))),
        }
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Shape::Cycle => "cycle",
            Shape::Path => "path",
            Shape::General => "general",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: u32,
}

impl Edge {
    pub fn is_trivial(&self) -> bool {
        self.weight == 1
    }

    fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    shape: Shape,
}

impl WeightedGraph {
    /// General simple graph on `n` vertices.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        Self::with_shape(n, edges, Shape::General)
    }

    fn with_shape(n: usize, edges: Vec<Edge>, shape: Shape) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &edges {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::InvalidVertex(x + 1));
                }
            }
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", e.u + 1)));
            }
            if e.weight == 0 {
                return Err(Error::InvalidGraph("edge weights must be positive".into()));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {}-{}",
                    e.u + 1,
                    e.v + 1
                )));
            }
        }
        Ok(Self { n, edges, shape })
    }

    /// `C^n` with edges `e_i = x_i x_{i+1}` (indices mod n) of weight `weights[i]`.
    pub fn cycle(weights: &[u32]) -> Result<Self> {
        let n = weights.len();
        if n < 3 {
            return Err(Error::InvalidGraph(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| Edge {
                u: i,
                v: (i + 1) % n,
                weight: w,
            })
            .collect();
        Self::with_shape(n, edges, Shape::Cycle)
    }

    /// `P^n` on `weights.len() + 1` vertices with edges `e_i = x_i x_{i+1}`.
    pub fn path(weights: &[u32]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidGraph(
                "a path needs at least 2 vertices".into(),
            ));
        }
        let edges = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| Edge {
                u: i,
                v: i + 1,
                weight: w,
            })
            .collect();
        Self::with_shape(weights.len() + 1, edges, Shape::Path)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Edge weights in edge order.
    pub fn weights(&self) -> Vec<u32> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.iter().all(Edge::is_trivial)
    }

    pub fn max_weight(&self) -> u32 {
        self.edges.iter().map(|e| e.weight).max().unwrap_or(0)
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u32> {
        self.edges
            .iter()
            .find(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
            .map(|e| e.weight)
    }

    fn edge_monomial(&self, e: &Edge) -> Monomial {
        let mut exps = vec![0; self.n];
        exps[e.u] = e.weight;
        exps[e.v] = e.weight;
        Monomial::new(exps)
    }

    /// `I(G_w) = ((x_u x_v)^{w(uv)} : uv in E)`.
    pub fn edge_ideal(&self) -> Result<MonomialIdeal> {
        if self.edges.is_empty() {
            return Err(Error::Edgeless);
        }
        let gens = self.edges.iter().map(|e| self.edge_monomial(e)).collect();
        MonomialIdeal::minimalize(self.n, gens)
    }

    /// Induced subgraph on `vertices` (0-based), relabelled in the given order.
    /// Returns the subgraph and the original index of each new vertex.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(WeightedGraph, Vec<usize>)> {
        let mut pos = vec![usize::MAX; self.n];
        for (k, &x) in vertices.iter().enumerate() {
            if x >= self.n {
                return Err(Error::InvalidVertex(x + 1));
            }
            if pos[x] != usize::MAX {
                return Err(Error::InvalidGraph(format!(
                    "vertex {} listed twice",
                    x + 1
                )));
            }
            pos[x] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| pos[e.u] != usize::MAX && pos[e.v] != usize::MAX)
            .map(|e| Edge {
                u: pos[e.u],
                v: pos[e.v],
                weight: e.weight,
            })
            .collect();
        Ok((
            WeightedGraph {
                n: vertices.len(),
                edges,
                shape: Shape::General,
            },
            vertices.to_vec(),
        ))
    }

    /// Edge ideal of the induced subgraph on `vertices`, kept in the ambient ring.
    pub fn induced_edge_ideal(&self, vertices: &[usize]) -> Result<MonomialIdeal> {
        let (sub, labels) = self.induced_subgraph(vertices)?;
        sub.edge_ideal()?.embed(self.n, &labels)
    }

    /// Graph with vertex `x` (0-based) deleted, as an ideal in the ambient ring.
    pub fn deletion_edge_ideal(&self, x: usize) -> Result<MonomialIdeal> {
        let rest: Vec<usize> = (0..self.n).filter(|&v| v != x).collect();
        self.induced_edge_ideal(&rest)
    }

    fn edges_within(&self, set: &[usize]) -> Vec<Edge> {
        self.edges
            .iter()
            .filter(|e| set.contains(&e.u) && set.contains(&e.v))
            .copied()
            .collect()
    }

    /// Integral closure decided from forbidden induced subgraphs: a non-trivial
    /// graph fails iff it contains, as an induced subgraph, a 2-edge path with
    /// both weights at least 2, two disjoint edges of weight at least 2, or a
    /// triangle with all weights at least 2. Trivial graphs are closed.
    pub fn is_integrally_closed_combinatorial(&self) -> bool {
        self.forbidden_subgraph().is_none()
    }

    /// First forbidden induced subgraph found, as a sorted vertex list (0-based).
    pub fn forbidden_subgraph(&self) -> Option<Vec<usize>> {
        if self.is_trivial() {
            return None;
        }
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let set = [a, b, c];
                    let inside = self.edges_within(&set);
                    let heavy = inside.iter().all(|e| !e.is_trivial());
                    if heavy && (inside.len() == 2 || inside.len() == 3) {
                        return Some(set.to_vec());
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let set = [a, b, c, d];
                        let inside = self.edges_within(&set);
                        if inside.len() == 2 && inside.iter().all(|e| !e.is_trivial()) {
                            let (e, f) = (inside[0], inside[1]);
                            if !e.touches(f.u) && !e.touches(f.v) {
                                return Some(set.to_vec());
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Integral closure decided from the Newton polyhedron of the edge ideal.
    pub fn is_integrally_closed_algebraic(&self) -> Result<bool> {
        self.edge_ideal()?.is_integrally_closed()
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            shape: self.shape,
            n: Some(self.n),
            edges: Some(
                self.edges
                    .iter()
                    .map(|e| [e.u + 1, e.v + 1, e.weight as usize])
                    .collect(),
            ),
            weights: None,
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        if let Some(w) = &json.weights {
            if json.edges.is_some() {
                return Err(Error::Parse(
                    "give either \"weights\" or \"edges\", not both".into(),
                ));
            }
            let g = match json.shape {
                Shape::Cycle => Self::cycle(w)?,
                Shape::Path => Self::path(w)?,
                Shape::General => {
                    return Err(Error::Parse(
                        "\"weights\" shorthand needs shape cycle or path".into(),
                    ))
                }
            };
            if let Some(n) = json.n {
                if n != g.n {
                    return Err(Error::Parse(format!(
                        "n = {n} does not match {} weights",
                        w.len()
                    )));
                }
            }
            return Ok(g);
        }
        let n = json.n.ok_or_else(|| Error::Parse("missing \"n\"".into()))?;
        let raw = json
            .edges
            .as_ref()
            .ok_or_else(|| Error::Parse("missing \"edges\" or \"weights\"".into()))?;
        let mut edges = Vec::with_capacity(raw.len());
        for &[u, v, w] in raw {
            if u == 0 || v == 0 {
                return Err(Error::InvalidVertex(0));
            }
            let weight =
                u32::try_from(w).map_err(|_| Error::Parse(format!("weight {w} too large")))?;
            edges.push(Edge {
                u: u - 1,
                v: v - 1,
                weight,
            });
        }
        let g = Self::with_shape(n, edges, json.shape)?;
        g.check_shape()?;
        Ok(g)
    }

    fn check_shape(&self) -> Result<()> {
        let expected: Box<dyn Fn(usize) -> (usize, usize)> = match self.shape {
            Shape::General => return Ok(()),
            Shape::Cycle => Box::new(|i| (i, (i + 1) % self.n)),
            Shape::Path => Box::new(|i| (i, i + 1)),
        };
        let count = if self.shape == Shape::Cycle {
            self.n
        } else {
            self.n.saturating_sub(1)
        };
        let ok = (self.shape != Shape::Cycle || self.n >= 3)
            && self.edges.len() == count
            && self.edges.iter().enumerate().all(|(i, e)| {
                let (a, b) = expected(i);
                (e.u == a && e.v == b) || (e.u == b && e.v == a)
            });
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGraph(format!(
                "edges do not form the standard {} on {} vertices",
                self.shape, self.n
            )))
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}

/// `{"shape": "cycle"|"path"|"general", "n": .., "edges": [[u, v, w], ..]}` with
/// 1-based vertices, or the shorthand `{"shape": "cycle", "weights": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub shape: Shape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
}

/// Lexicographically smallest rotation/reflection of a cycle's weight vector.
pub fn canonical_cycle_weights(weights: &[u32]) -> Vec<u32> {
    let n = weights.len();
    let mut best = weights.to_vec();
    let reversed: Vec<u32> = weights.iter().rev().copied().collect();
    for base in [weights.to_vec(), reversed] {
        for r in 0..n {
            let cand: Vec<u32> = (0..n).map(|i| base[(i + r) % n]).collect();
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

/// Smaller of a path's weight vector and its reversal.
pub fn canonical_path_weights(weights: &[u32]) -> Vec<u32> {
    let reversed: Vec<u32> = weights.iter().rev().copied().collect();
    weights.to_vec().min(reversed)
}
