//! Dense weighted undirected graphs and vertex pairs.
//!
//! Vertices are numbered from 0. A pair with weight exactly 0 is a non-edge;
//! unweighted graphs carry weight 1 on every edge.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    weights: Vec<f64>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            weights: vec![0.0; n * n],
        }
    }

    /// Unweighted graph from an edge list. Rejects loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v, 1.0)?;
        }
        Ok(g)
    }

    /// Builds a graph from a row-major `n*n` weight matrix, checking symmetry,
    /// a zero diagonal and nonnegative finite weights.
    pub fn from_weights(n: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != n * n {
            return Err(Error::Parameter(format!(
                "weight matrix has {} entries, expected {}",
                weights.len(),
                n * n
            )));
        }
        for i in 0..n {
            if weights[i * n + i] != 0.0 {
                return Err(Error::Parameter(format!("self-loop at vertex {i}")));
            }
            for j in 0..n {
                let w = weights[i * n + j];
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::Parameter(format!(
                        "weight ({i},{j}) = {w} is invalid"
                    )));
                }
                if w != weights[j * n + i] {
                    return Err(Error::Parameter(format!(
                        "weights ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(Graph { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, x: usize, y: usize) -> f64 {
        self.weights[x * self.n + y]
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Inserts a new edge. Fails if the pair already carries weight.
    pub fn add_edge(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Parameter(format!("self-loop at vertex {u}")));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::Parameter(format!(
                "edge weight {w} must be positive"
            )));
        }
        if self.weight(u, v) != 0.0 {
            return Err(Error::Parameter(format!("duplicate edge {{{u},{v}}}")));
        }
        self.set_weight(u, v, w);
        Ok(())
    }

    /// Overwrites the weight of a pair; 0 removes the edge.
    pub fn set_weight(&mut self, u: usize, v: usize, w: f64) {
        debug_assert!(u != v && w >= 0.0);
        let n = self.n;
        self.weights[u * n + v] = w;
        self.weights[v * n + u] = w;
    }

    /// Copy of the graph with `pair` given weight `w`.
    pub fn with_weight(&self, pair: VertexPair, w: f64) -> Graph {
        let mut g = self.clone();
        g.set_weight(pair.x, pair.y, w);
        g
    }

    pub fn degrees(&self) -> Vec<f64> {
        self.weights
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|row| row.iter().sum())
            .collect()
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.weights[x * self.n..(x + 1) * self.n];
        row.iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(j, _)| j)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    /// All positive-weight pairs, lexicographic.
    pub fn edges(&self) -> Vec<VertexPair> {
        self.all_pairs()
            .into_iter()
            .filter(|p| p.kind == PairKind::Edge)
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Every unordered pair `x < y`, lexicographic, tagged edge or non-edge.
    pub fn all_pairs(&self) -> Vec<VertexPair> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for x in 0..self.n {
            for y in x + 1..self.n {
                let kind = if self.weight(x, y) > 0.0 {
                    PairKind::Edge
                } else {
                    PairKind::NonEdge
                };
                out.push(VertexPair { x, y, kind });
            }
        }
        out
    }

    /// Looks up a pair and tags it with its kind in this graph.
    pub fn pair(&self, a: usize, b: usize) -> Result<VertexPair> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::Parameter(format!(
                "pair {{{a},{b}}} repeats a vertex"
            )));
        }
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        let kind = if self.weight(x, y) > 0.0 {
            PairKind::Edge
        } else {
            PairKind::NonEdge
        };
        Ok(VertexPair { x, y, kind })
    }

    /// True when every edge has weight exactly 1.
    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 0.0 || w == 1.0)
    }

    /// Two-colouring of a connected graph, `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Pairs with identical punctured neighbourhoods, `N(x)\{y} = N(y)\{x}`.
    /// Adjacency is read from positive weights.
    pub fn find_twins(&self) -> Vec<Twins> {
        let n = self.n;
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                let same = (0..n)
                    .filter(|&z| z != x && z != y)
                    .all(|z| (self.weight(x, z) > 0.0) == (self.weight(y, z) > 0.0));
                if !same {
                    continue;
                }
                let adjacent = self.weight(x, y) > 0.0;
                let degree = self.neighbors(x).count();
                out.push(Twins {
                    pair: VertexPair {
                        x,
                        y,
                        kind: if adjacent {
                            PairKind::Edge
                        } else {
                            PairKind::NonEdge
                        },
                    },
                    kind: if adjacent {
                        TwinKind::Connected
                    } else {
                        TwinKind::Isolated
                    },
                    degree,
                });
            }
        }
        out
    }

    /// Bit `i` is set when the `i`-th lexicographic pair is an edge.
    /// Only meaningful for unweighted graphs with at most 11 vertices.
    pub fn to_mask(&self) -> u64 {
        self.all_pairs()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.kind == PairKind::Edge)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    pub fn from_mask(n: usize, mask: u64) -> Graph {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for x in 0..n {
            for y in x + 1..n {
                if mask >> bit & 1 == 1 {
                    g.set_weight(x, y, 1.0);
                }
                bit += 1;
            }
        }
        g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairKind {
    Edge,
    NonEdge,
}

/// Unordered vertex pair stored with `x < y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexPair {
    pub x: usize,
    pub y: usize,
    pub kind: PairKind,
}

impl VertexPair {
    pub fn is_edge(&self) -> bool {
        self.kind == PairKind::Edge
    }

    pub fn key(&self) -> (usize, usize) {
        (self.x, self.y)
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.x, self.y)
    }
}

impl PartialOrd for VertexPair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexPair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwinKind {
    Connected,
    Isolated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twins {
    pub pair: VertexPair,
    pub kind: TwinKind,
    /// Shared neighbour count.
    pub degree: usize,
}

/// A collection of pairs that are perturbed together, each with a
/// multiplier on the perturbation parameter (1 unless weighted).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EdgeSet {
    entries: Vec<(VertexPair, f64)>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(pair: VertexPair) -> Self {
        EdgeSet {
            entries: vec![(pair, 1.0)],
        }
    }

    /// Every edge of `g` with unit multiplier.
    pub fn all_edges(g: &Graph) -> Self {
        EdgeSet {
            entries: g.edges().into_iter().map(|p| (p, 1.0)).collect(),
        }
    }

    pub fn push(&mut self, pair: VertexPair, multiplier: f64) -> Result<()> {
        if self.entries.iter().any(|(p, _)| p.key() == pair.key()) {
            return Err(Error::Parameter(format!("pair {pair} appears twice")));
        }
        if !multiplier.is_finite() {
            return Err(Error::Parameter(format!(
                "multiplier {multiplier} for {pair} is not finite"
            )));
        }
        self.entries.push((pair, multiplier));
        Ok(())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = VertexPair>) -> Result<Self> {
        let mut set = EdgeSet::new();
        for p in pairs {
            set.push(p, 1.0)?;
        }
        Ok(set)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(VertexPair, f64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
