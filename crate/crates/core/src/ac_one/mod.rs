//! Graphs with acquaintance time one: witness partitions, necessary-condition
//! audits, and the deterministic and randomized approximation algorithms.

mod bipartite;
mod deterministic;
mod randomized;

pub use bipartite::{meet_all_matching, transfer_matching};
pub use deterministic::{deterministic_strategy, MAX_C};
pub use randomized::{default_round_cap, random_matching, randomized_strategy, RandomizedRun, MAX_RESTARTS};

use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{verify_acquaintance, Matching, Strategy};
use crate::graph::{Graph, GraphError, Vertex};

/// Reason a graph cannot have acquaintance time one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A necessary condition checked by [`structure_audit`] fails.
    Audit { failed: Vec<String> },
    /// No matching of size `|W| - 1` between `W` and the high-degree set.
    Transfer { needed: usize, found: usize },
    /// No single round lets the agent on `vertex` meet everyone.
    MeetAll { vertex: Vertex },
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certificate::Audit { failed } => write!(f, "audit failed: {}", failed.join(", ")),
            Certificate::Transfer { needed, found } => {
                write!(f, "transfer matching has {found} edges, needs {needed}")
            }
            Certificate::MeetAll { vertex } => write!(f, "no one-round meet-all matching at vertex {vertex}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AcOneError {
    /// The graph certainly has acquaintance time at least two.
    #[error("acquaintance time is at least 2 ({0})")]
    AtLeastTwo(Certificate),
    #[error("not a partition of the vertex set: {0}")]
    NotAPartition(String),
    #[error("c must be in 1..={max}, got {c}")]
    BadC { c: usize, max: usize },
    #[error("randomized search gave up after {restarts} restarts")]
    RestartsExhausted { restarts: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Pairs `(a_i, b_i)` and the rest `C` of a candidate one-round witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcOnePartition {
    pub pairs: Vec<(Vertex, Vertex)>,
    pub rest: Vec<Vertex>,
}

impl AcOnePartition {
    pub fn new(pairs: Vec<(Vertex, Vertex)>, rest: Vec<Vertex>) -> Self {
        AcOnePartition { pairs, rest }
    }

    /// The pair matching `{(a_i, b_i)}`.
    pub fn matching(&self) -> Matching {
        Matching::new(self.pairs.iter().copied())
    }

    fn check_partition(&self, n: usize) -> Result<(), AcOneError> {
        let mut seen = vec![false; n];
        let all = self
            .pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(self.rest.iter().copied());
        for v in all {
            if v >= n {
                return Err(AcOneError::NotAPartition(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(AcOneError::NotAPartition(format!("vertex {v} appears twice")));
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(AcOneError::NotAPartition(format!("vertex {v} missing")));
        }
        Ok(())
    }
}

/// First of the five witness conditions that fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "item", rename_all = "snake_case")]
pub enum PartitionViolation {
    /// `(a_i, b_i)` is not an edge.
    PairNotAdjacent { i: usize },
    /// Neither `(a_i, b_j)` nor `(a_j, b_i)` is an edge.
    CrossPair { i: usize, j: usize },
    /// Neither `(a_i, a_j)` nor `(b_i, b_j)` is an edge.
    SameSide { i: usize, j: usize },
    /// Two vertices of `C` are not adjacent.
    RestNotClique { c: Vertex, d: Vertex },
    /// `c` is adjacent to neither `a_i` nor `b_i`.
    RestMissesPair { c: Vertex, i: usize },
}

impl PartitionViolation {
    /// Condition number, 1 to 5.
    pub fn item(&self) -> usize {
        match self {
            PartitionViolation::PairNotAdjacent { .. } => 1,
            PartitionViolation::CrossPair { .. } => 2,
            PartitionViolation::SameSide { .. } => 3,
            PartitionViolation::RestNotClique { .. } => 4,
            PartitionViolation::RestMissesPair { .. } => 5,
        }
    }
}

/// Checks the five conditions; `Ok(None)` means the pair matching is a
/// one-round strategy (this is re-checked by simulation).
pub fn verify_partition(g: &Graph, p: &AcOnePartition) -> Result<Option<PartitionViolation>, AcOneError> {
    p.check_partition(g.n())?;
    let violation = first_violation(g, p);
    if violation.is_none() {
        let one = Strategy::new(g.n(), vec![p.matching()]);
        let ok = verify_acquaintance(g, &one).map(|v| v.ok).unwrap_or(false);
        assert!(
            ok,
            "a partition meeting all five conditions must give a one-round strategy"
        );
    }
    Ok(violation)
}

fn first_violation(g: &Graph, p: &AcOnePartition) -> Option<PartitionViolation> {
    let e = |u, v| g.has_edge(u, v);
    for (i, &(a, b)) in p.pairs.iter().enumerate() {
        if !e(a, b) {
            return Some(PartitionViolation::PairNotAdjacent { i });
        }
    }
    for (i, &(ai, bi)) in p.pairs.iter().enumerate() {
        for (j, &(aj, bj)) in p.pairs.iter().enumerate().skip(i + 1) {
            if !e(ai, bj) && !e(aj, bi) {
                return Some(PartitionViolation::CrossPair { i, j });
            }
        }
    }
    for (i, &(ai, bi)) in p.pairs.iter().enumerate() {
        for (j, &(aj, bj)) in p.pairs.iter().enumerate().skip(i + 1) {
            if !e(ai, aj) && !e(bi, bj) {
                return Some(PartitionViolation::SameSide { i, j });
            }
        }
    }
    for (x, &c) in p.rest.iter().enumerate() {
        for &d in &p.rest[x + 1..] {
            if !e(c, d) {
                return Some(PartitionViolation::RestNotClique { c, d });
            }
        }
    }
    for &c in &p.rest {
        for (i, &(a, b)) in p.pairs.iter().enumerate() {
            if !e(c, a) && !e(c, b) {
                return Some(PartitionViolation::RestMissesPair { c, i });
            }
        }
    }
    None
}

/// Vertices with `deg(v) >= n/2`.
pub fn high_degree_set(g: &Graph) -> Vec<Vertex> {
    (0..g.n()).filter(|&v| 2 * g.degree(v) >= g.n()).collect()
}

/// Necessary conditions for acquaintance time one. Any failed graph-level
/// check certifies that at least two rounds are needed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureAudit {
    pub n: usize,
    pub edges: usize,
    /// `4|E| >= n^2 - 1`.
    pub edge_count_ok: bool,
    pub high_degree_count: usize,
    /// At least `floor(n/2)` vertices of degree `>= n/2`.
    pub high_degree_ok: bool,
    pub max_matching: usize,
    /// A matching with `floor(n/2)` edges exists.
    pub perfect_matching_ok: bool,
    /// For high-degree `u, v`: `|N(u) ∩ N(v)| >= 0.1n` or at least `0.01n^2`
    /// ordered edges run from `N(u)` to `N(v)`.
    pub neighbourhood_ok: bool,
    pub neighbourhood_violation: Option<(Vertex, Vertex)>,
    /// Partition checks, present when a partition was supplied.
    pub partition: Option<PartitionAudit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionAudit {
    pub violation: Option<PartitionViolation>,
    /// `deg(a_i) + deg(b_i) >= n` for every pair.
    pub degree_sum_ok: bool,
    /// `deg(c) >= k + |C| - 1` for every `c` in `C`.
    pub rest_degree_ok: bool,
}

impl StructureAudit {
    /// True when every graph-level check holds.
    pub fn passed(&self) -> bool {
        self.edge_count_ok && self.high_degree_ok && self.perfect_matching_ok && self.neighbourhood_ok
    }

    pub fn failed_checks(&self) -> Vec<String> {
        let checks = [
            (self.edge_count_ok, "edge_count"),
            (self.high_degree_ok, "high_degree"),
            (self.perfect_matching_ok, "perfect_matching"),
            (self.neighbourhood_ok, "neighbourhood"),
        ];
        checks
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, name)| name.to_string())
            .collect()
    }

    /// Certificate of acquaintance time at least two, if any check failed.
    pub fn certificate(&self) -> Option<Certificate> {
        (!self.passed()).then(|| Certificate::Audit {
            failed: self.failed_checks(),
        })
    }
}

/// Runs every check; a supplied partition is also tested.
pub fn structure_audit(g: &Graph, p: Option<&AcOnePartition>) -> Result<StructureAudit, AcOneError> {
    let n = g.n();
    let high = high_degree_set(g);
    let max_matching = maximum_matching_size(g);
    let neighbourhood_violation = neighbourhood_violation(g, &high);
    let partition = match p {
        None => None,
        Some(p) => {
            p.check_partition(n)?;
            let k = p.pairs.len();
            Some(PartitionAudit {
                violation: first_violation(g, p),
                degree_sum_ok: p.pairs.iter().all(|&(a, b)| g.degree(a) + g.degree(b) >= n),
                rest_degree_ok: p.rest.iter().all(|&c| g.degree(c) + 1 >= k + p.rest.len()),
            })
        }
    };
    Ok(StructureAudit {
        n,
        edges: g.m(),
        edge_count_ok: 4 * g.m() + 1 >= n * n,
        high_degree_count: high.len(),
        high_degree_ok: high.len() >= n / 2,
        max_matching,
        perfect_matching_ok: max_matching >= n / 2,
        neighbourhood_ok: neighbourhood_violation.is_none(),
        neighbourhood_violation,
        partition,
    })
}

fn maximum_matching_size(g: &Graph) -> usize {
    let mut pg = UnGraph::<(), ()>::with_capacity(g.n(), g.m());
    for _ in 0..g.n() {
        pg.add_node(());
    }
    pg.extend_with_edges(g.edges().iter().map(|&(u, v)| (u as u32, v as u32)));
    petgraph::algo::maximum_matching(&pg).len()
}

fn common(g: &Graph, u: Vertex, v: Vertex) -> usize {
    g.adjacency_row(u)
        .iter()
        .zip(g.adjacency_row(v))
        .map(|(a, b)| (a & b).count_ones() as usize)
        .sum()
}

fn neighbourhood_violation(g: &Graph, high: &[Vertex]) -> Option<(Vertex, Vertex)> {
    let n = g.n();
    for (x, &u) in high.iter().enumerate() {
        for &v in &high[x + 1..] {
            // |N(u) ∩ N(v)| >= 0.1 n
            if 10 * common(g, u, v) >= n {
                continue;
            }
            let between: usize = g.neighbors(u).iter().map(|&a| common(g, a, v)).sum();
            if 100 * between < n * n {
                return Some((u, v));
            }
        }
    }
    None
}
