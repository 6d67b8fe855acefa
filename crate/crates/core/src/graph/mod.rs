//! Simple undirected graphs on dense vertex ids `0..n`, the named families the
//! rest of the crate works with, and the handful of metrics everything else
//! depends on (distances, diameter, spanning trees, long simple paths).

mod family;
mod io;
mod long_path;
mod tree;

pub use family::{generate, FamilySpec, GNP_DEFAULT_RETRIES};
pub use io::{parse_graph, read_graph, write_graph, GraphFormatError};
pub use long_path::{is_simple_path, long_path};
pub use tree::{spanning_tree, spanning_tree_from, Tree};

use std::collections::VecDeque;
use thiserror::Error;

/// A vertex id. Vertices of a graph with `n` vertices are `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(Vertex, Vertex),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(Vertex, Vertex),
    #[error("graph has no vertices")]
    Empty,
    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),
    #[error("G(n, p) stayed disconnected after {0} attempts")]
    RetriesExhausted(usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error(transparent)]
    Format(#[from] GraphFormatError),
}

/// Immutable simple undirected graph.
///
/// Edges are stored normalised as `(u, v)` with `u < v` and sorted
/// lexicographically; adjacency lists are sorted ascending. A dense adjacency
/// bit matrix backs [`Graph::has_edge`].
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    words: usize,
    matrix: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates (in either
    /// orientation) and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let words = n.div_ceil(64);
        let mut matrix = vec![0u64; n * words];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u, v));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if matrix[a * words + b / 64] >> (b % 64) & 1 == 1 {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            matrix[a * words + b / 64] |= 1 << (b % 64);
            matrix[b * words + a / 64] |= 1 << (a % 64);
            list.push((a, b));
        }
        list.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &list {
            adj[a].push(b);
            adj[b].push(a);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
            words,
            matrix,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Neighbourhood of `v` as a bit row of `words()` 64-bit words.
    pub(crate) fn adjacency_row(&self, v: Vertex) -> &[u64] {
        &self.matrix[v * self.words..(v + 1) * self.words]
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    /// The complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.n, edges).expect("complement of a simple graph is simple")
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || distances(self, 0).iter().all(Option::is_some)
    }

    /// Connected components, each sorted ascending, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_avoiding(&vec![false; self.n])
    }

    /// Components of the subgraph induced on vertices with `removed[v] == false`.
    pub(crate) fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<Vertex>> {
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Errors with a pair of mutually unreachable vertices if disconnected.
    pub fn require_connected(&self) -> Result<(), GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        let dist = distances(self, 0);
        match dist.iter().position(Option::is_none) {
            Some(v) => Err(GraphError::Disconnected(0, v)),
            None => Ok(()),
        }
    }
}

/// Breadth-first distances from `source`; `None` marks unreachable vertices.
pub fn distances(g: &Graph, source: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Largest distance between two vertices.
pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::Empty);
    }
    let mut best = 0;
    for s in 0..g.n() {
        for (v, d) in distances(g, s).into_iter().enumerate() {
            match d {
                Some(d) => best = best.max(d),
                None => return Err(GraphError::Disconnected(s, v)),
            }
        }
    }
    Ok(best)
}
