//! Witness-carrying instance generators: the equitable-coloring reduction
//! and the doubling construction for graphs of acquaintance time one.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dynamics::{Matching, Strategy};
use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HardnessError {
    #[error("{k} colours do not divide {n} vertices")]
    NotDivisible { n: usize, k: usize },
    #[error("edge ({0}, {1}) joins two vertices of the same colour")]
    Improper(Vertex, Vertex),
    #[error("colour {color} has {size} vertices, expected {expected}")]
    Inequitable { color: usize, size: usize, expected: usize },
    #[error("coloring covers {got} vertices, graph has {n}")]
    Length { got: usize, n: usize },
    #[error("colour {0} out of range")]
    ColorOutOfRange(usize),
    #[error("need at least one colour and t >= 1")]
    Zero,
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("coloring file: {0}")]
    Format(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph with a proper coloring whose `k` classes all have `n / k` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    graph: Graph,
    k: usize,
    coloring: Vec<usize>,
}

impl ColoredGraph {
    pub fn new(graph: Graph, k: usize, coloring: Vec<usize>) -> Result<Self, HardnessError> {
        let n = graph.n();
        if k == 0 {
            return Err(HardnessError::Zero);
        }
        if !n.is_multiple_of(k) {
            return Err(HardnessError::NotDivisible { n, k });
        }
        if coloring.len() != n {
            return Err(HardnessError::Length { got: coloring.len(), n });
        }
        let mut sizes = vec![0usize; k];
        for &c in &coloring {
            *sizes.get_mut(c).ok_or(HardnessError::ColorOutOfRange(c))? += 1;
        }
        if let Some((color, &size)) = sizes.iter().enumerate().find(|(_, &s)| s != n / k) {
            return Err(HardnessError::Inequitable {
                color,
                size,
                expected: n / k,
            });
        }
        if let Some(&(u, v)) = graph.edges().iter().find(|&&(u, v)| coloring[u] == coloring[v]) {
            return Err(HardnessError::Improper(u, v));
        }
        Ok(ColoredGraph { graph, k, coloring })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coloring(&self) -> &[usize] {
        &self.coloring
    }

    /// Vertices of colour `j`, ascending.
    pub fn class(&self, j: usize) -> Vec<Vertex> {
        (0..self.graph.n()).filter(|&v| self.coloring[v] == j).collect()
    }
}

/// Parses a coloring file: a header line `n K`, then one colour per line.
/// Blank lines and `#` comments are ignored.
pub fn parse_coloring(text: &str) -> Result<(usize, Vec<usize>), HardnessError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| HardnessError::Format("missing header".into()))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|e| HardnessError::Format(format!("header: {e}")))?;
    let [n, k] = nums[..] else {
        return Err(HardnessError::Format("header must be `n K`".into()));
    };
    let colors: Vec<usize> = lines
        .map(|l| {
            l.parse()
                .map_err(|e| HardnessError::Format(format!("colour `{l}`: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if colors.len() != n {
        return Err(HardnessError::Length { got: colors.len(), n });
    }
    Ok((k, colors))
}

pub fn read_coloring(path: &Path) -> Result<(usize, Vec<usize>), HardnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HardnessError::Format(format!("{}: {e}", path.display())))?;
    parse_coloring(&text)
}

pub fn format_coloring(cg: &ColoredGraph) -> String {
    let mut out = format!("{} {}\n", cg.graph.n(), cg.k);
    for c in &cg.coloring {
        out.push_str(&format!("{c}\n"));
    }
    out
}

/// The reduction graph `H` on `(t + 1) n` vertices and its `t`-round witness.
///
/// Vertices `0..n` carry the complement of `G`. Block `U_{i,j}` (round `i`,
/// colour `j`) holds `n + (i K + j)(n/K) + 0 .. n/K`; blocks are independent
/// sets joined completely to each other and to the first part. Round `i` swaps
/// the `m`-th vertex of `U_{i,j}` with the `m`-th smallest vertex of colour `j`.
pub fn reduce(cg: &ColoredGraph, t: usize) -> Result<(Graph, Strategy), HardnessError> {
    if t == 0 {
        return Err(HardnessError::Zero);
    }
    let g = &cg.graph;
    let (n, k) = (g.n(), cg.k);
    let size = n / k;
    let total = (t + 1) * n;
    let block = |i: usize, j: usize| n + (i * k + j) * size;
    let mut edges: Vec<(Vertex, Vertex)> = g.complement().edges().to_vec();
    for u in n..total {
        edges.extend((0..n).map(|v| (v, u)));
        let own = (u - n) / size;
        for w in u + 1..total {
            if (w - n) / size != own {
                edges.push((u, w));
            }
        }
    }
    let h = Graph::new(total, edges)?;
    let classes: Vec<Vec<Vertex>> = (0..k).map(|j| cg.class(j)).collect();
    let rounds = (0..t)
        .map(|i| {
            Matching::new((0..k).flat_map(|j| {
                let start = block(i, j);
                classes[j].iter().enumerate().map(move |(m, &v)| (v, start + m))
            }))
        })
        .collect();
    Ok((h, Strategy::new(total, rounds)))
}

/// How the cross edges of [`ramsey_double`] are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoubleRule {
    /// `(u_i, u'_j)` for every `i < j`.
    Deterministic,
    /// A fair coin per pair, from this seed.
    Seeded(u64),
}

/// Two copies of `h` (`u_i = i`, `u'_i = m + i`): `h` on the first, its
/// complement on the second, rungs `(u_i, u'_i)`, and for every `i < j`
/// exactly one of `(u_i, u'_j)`, `(u_j, u'_i)`. The rungs are a one-round
/// strategy.
pub fn ramsey_double(h: &Graph, rule: DoubleRule) -> (Graph, Matching) {
    let m = h.n();
    let mut edges: Vec<(Vertex, Vertex)> = h.edges().to_vec();
    edges.extend(h.complement().edges().iter().map(|&(a, b)| (m + a, m + b)));
    edges.extend((0..m).map(|i| (i, m + i)));
    let mut rng = match rule {
        DoubleRule::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        DoubleRule::Deterministic => None,
    };
    for i in 0..m {
        for j in i + 1..m {
            let first = rng.as_mut().is_none_or(|r| r.gen_bool(0.5));
            edges.push(if first { (i, m + j) } else { (j, m + i) });
        }
    }
    let g = Graph::new(2 * m, edges).expect("doubling produces a simple graph");
    (g, Matching::new((0..m).map(|i| (i, m + i))))
}

/// Random graph with a planted equitable `k`-coloring: vertices are dealt
/// into classes by a random permutation, and each pair in different classes
/// becomes an edge with probability `p`.
pub fn plant_equicolorable(n: usize, k: usize, p: f64, seed: u64) -> Result<ColoredGraph, HardnessError> {
    if k == 0 {
        return Err(HardnessError::Zero);
    }
    if !n.is_multiple_of(k) {
        return Err(HardnessError::NotDivisible { n, k });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(HardnessError::Probability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut coloring = vec![0; n];
    for (pos, &v) in perm.iter().enumerate() {
        coloring[v] = pos / (n / k);
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if coloring[u] != coloring[v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    ColoredGraph::new(Graph::new(n, edges)?, k, coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::verify_acquaintance;
    use crate::graph::{generate, FamilySpec};

    #[test]
    fn reduce_k2() {
        let g = generate(&FamilySpec::Complete(2)).unwrap();
        let cg = ColoredGraph::new(g, 2, vec![0, 1]).unwrap();
        let (h, w) = reduce(&cg, 1).unwrap();
        assert_eq!((h.n(), h.m()), (4, 5));
        assert_eq!(w.rounds()[0].pairs(), &[(0, 2), (1, 3)]);
        assert!(verify_acquaintance(&h, &w).unwrap().ok);
    }

    #[test]
    fn reduce_cycles() {
        let c4 = generate(&FamilySpec::Cycle(4)).unwrap();
        let cg = ColoredGraph::new(c4, 2, vec![0, 1, 0, 1]).unwrap();
        let (h, w) = reduce(&cg, 1).unwrap();
        assert_eq!(h.n(), 8);
        assert!(verify_acquaintance(&h, &w).unwrap().ok);

        let c6 = generate(&FamilySpec::Cycle(6)).unwrap();
        let cg = ColoredGraph::new(c6, 2, vec![0, 1, 0, 1, 0, 1]).unwrap();
        let (h, w) = reduce(&cg, 2).unwrap();
        assert_eq!((h.n(), w.len()), (18, 2));
        assert!(verify_acquaintance(&h, &w).unwrap().ok);
    }

    #[test]
    fn invalid_colorings() {
        let p3 = generate(&FamilySpec::Path(3)).unwrap();
        assert_eq!(
            ColoredGraph::new(p3.clone(), 2, vec![0, 1, 0]),
            Err(HardnessError::NotDivisible { n: 3, k: 2 })
        );
        let p4 = generate(&FamilySpec::Path(4)).unwrap();
        assert_eq!(
            ColoredGraph::new(p4.clone(), 2, vec![0, 0, 1, 1]),
            Err(HardnessError::Improper(0, 1))
        );
        assert!(matches!(
            ColoredGraph::new(p4.clone(), 2, vec![0, 1, 0, 0]),
            Err(HardnessError::Inequitable { .. })
        ));
        assert!(ColoredGraph::new(p4, 2, vec![0, 1, 0, 5]).is_err());
    }

    #[test]
    fn doubling() {
        let (g, m) = ramsey_double(&Graph::new(1, []).unwrap(), DoubleRule::Deterministic);
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(m.pairs(), &[(0, 1)]);
        let k2 = generate(&FamilySpec::Complete(2)).unwrap();
        let (g, m) = ramsey_double(&k2, DoubleRule::Deterministic);
        assert_eq!(g.n(), 4);
        assert!(verify_acquaintance(&g, &Strategy::new(4, vec![m])).unwrap().ok);
        let h = generate(&FamilySpec::Gnp(50, 0.5, 3)).unwrap();
        for rule in [DoubleRule::Deterministic, DoubleRule::Seeded(9)] {
            let (g, m) = ramsey_double(&h, rule);
            assert_eq!(g.n(), 100);
            assert!(verify_acquaintance(&g, &Strategy::new(100, vec![m])).unwrap().ok);
        }
    }

    #[test]
    fn planting() {
        let cg = plant_equicolorable(4, 2, 1.0, 0).unwrap();
        assert_eq!(cg.graph().m(), 4);
        let cg = plant_equicolorable(12, 3, 0.5, 4).unwrap();
        assert!(ColoredGraph::new(cg.graph().clone(), 3, cg.coloring().to_vec()).is_ok());
        assert_eq!(
            plant_equicolorable(6, 4, 0.5, 0),
            Err(HardnessError::NotDivisible { n: 6, k: 4 })
        );
    }

    #[test]
    fn coloring_file_round_trip() {
        let cg = plant_equicolorable(6, 3, 0.7, 1).unwrap();
        let text = format_coloring(&cg);
        let (k, colors) = parse_coloring(&text).unwrap();
        assert_eq!((k, colors.as_slice()), (3, cg.coloring()));
        assert!(parse_coloring("3 1\n0\n0\n").is_err());
        assert!(parse_coloring("x").is_err());
    }
}
