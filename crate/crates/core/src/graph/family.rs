use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{read_graph, Graph, GraphError, Vertex};

/// Number of seeds tried by [`generate`] before giving up on a connected
/// `G(n, p)` sample.
pub const GNP_DEFAULT_RETRIES: usize = 100;

/// Named graph families with fixed vertex numbering.
///
/// * `Path(n)`: `i` joined to `i + 1`.
/// * `Cycle(n)`: the path plus `(0, n - 1)`; needs `n >= 3`.
/// * `CompleteBipartite(a, b)`: side A is `0..a`, side B is `a..a + b`.
/// * `Hypercube(d)`: vertices are `d`-bit labels, joined when they differ in one bit.
/// * `BinaryTree(depth)`: heap order, children of `i` are `2i + 1` and `2i + 2`.
/// * `Barbell(k)`: cliques on `0..k` and `k..2k`, bridge `(k - 1, k)`.
/// * `CliqueRing(r, l)`: vertex `(i, j)` is `i * l + j`; `(i, j)` is joined to
///   `(i + 1 mod r, j)`. With `r = 2` the two cliques share one perfect matching.
/// * `Octopus(r, l)`: clique `i` is `i * l..(i + 1) * l` with connector `i * l`;
///   the center is the last vertex `r * l`.
/// * `Gnp(n, p, seed)`: seeded Erdős–Rényi sample, resampled with `seed + 1`,
///   `seed + 2`, ... until connected.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Hypercube(usize),
    BinaryTree(usize),
    Barbell(usize),
    CliqueRing(usize, usize),
    Octopus(usize, usize),
    Gnp(usize, f64, u64),
    FromFile(PathBuf),
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters(msg.into())
}

fn positive(name: &str, v: usize) -> Result<(), GraphError> {
    if v == 0 {
        Err(invalid(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn clique_edges(vs: impl Iterator<Item = Vertex> + Clone, out: &mut Vec<(Vertex, Vertex)>) {
    let all: Vec<Vertex> = vs.collect();
    for (i, &u) in all.iter().enumerate() {
        for &v in &all[i + 1..] {
            out.push((u, v));
        }
    }
}

/// Builds the graph described by `spec`. Deterministic for a fixed spec.
pub fn generate(spec: &FamilySpec) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let n = match *spec {
        FamilySpec::Path(n) => {
            positive("n", n)?;
            edges.extend((1..n).map(|i| (i - 1, i)));
            n
        }
        FamilySpec::Cycle(n) => {
            if n < 3 {
                return Err(invalid("cycle needs at least 3 vertices"));
            }
            edges.extend((1..n).map(|i| (i - 1, i)));
            edges.push((0, n - 1));
            n
        }
        FamilySpec::Complete(n) => {
            positive("n", n)?;
            clique_edges(0..n, &mut edges);
            n
        }
        FamilySpec::CompleteBipartite(a, b) => {
            positive("a", a)?;
            positive("b", b)?;
            for u in 0..a {
                edges.extend((a..a + b).map(|v| (u, v)));
            }
            a + b
        }
        FamilySpec::Hypercube(d) => {
            positive("d", d)?;
            if d > 24 {
                return Err(invalid("hypercube dimension above 24"));
            }
            let n = 1usize << d;
            for u in 0..n {
                for bit in 0..d {
                    let v = u ^ (1 << bit);
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
            n
        }
        FamilySpec::BinaryTree(depth) => {
            positive("depth", depth)?;
            if depth > 24 {
                return Err(invalid("binary tree depth above 24"));
            }
            let n = (1usize << (depth + 1)) - 1;
            edges.extend((1..n).map(|v| ((v - 1) / 2, v)));
            n
        }
        FamilySpec::Barbell(k) => {
            positive("clique size", k)?;
            clique_edges(0..k, &mut edges);
            clique_edges(k..2 * k, &mut edges);
            edges.push((k - 1, k));
            2 * k
        }
        FamilySpec::CliqueRing(r, l) => {
            if r < 2 {
                return Err(invalid("clique ring needs r >= 2"));
            }
            positive("l", l)?;
            for i in 0..r {
                clique_edges(i * l..(i + 1) * l, &mut edges);
            }
            let links = if r == 2 { 1 } else { r };
            for i in 0..links {
                let next = (i + 1) % r;
                edges.extend((0..l).map(|j| (i * l + j, next * l + j)));
            }
            r * l
        }
        FamilySpec::Octopus(r, l) => {
            positive("r", r)?;
            positive("l", l)?;
            let z = r * l;
            for i in 0..r {
                clique_edges(i * l..(i + 1) * l, &mut edges);
                edges.push((i * l, z));
            }
            z + 1
        }
        FamilySpec::Gnp(n, p, seed) => return gnp(n, p, seed, GNP_DEFAULT_RETRIES),
        FamilySpec::FromFile(ref path) => return read_graph(path),
    };
    Graph::new(n, edges)
}

/// Seeded `G(n, p)` conditioned on connectivity by resampling.
pub(crate) fn gnp(n: usize, p: f64, seed: u64, retries: usize) -> Result<Graph, GraphError> {
    positive("n", n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("p = {p} is not a probability")));
    }
    for attempt in 0..retries {
        let g = gnp_sample(n, p, seed.wrapping_add(attempt as u64));
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GraphError::RetriesExhausted(retries))
}

/// One `G(n, p)` draw, connected or not.
pub(crate) fn gnp_sample(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("sampled pairs are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::diameter;

    #[test]
    fn sizes_of_named_families() {
        let p4 = generate(&FamilySpec::Path(4)).unwrap();
        assert_eq!((p4.n(), p4.m(), diameter(&p4).unwrap()), (4, 3, 3));

        let oct = generate(&FamilySpec::Octopus(2, 3)).unwrap();
        assert_eq!(oct.n(), 7);

        let ring = generate(&FamilySpec::CliqueRing(3, 4)).unwrap();
        // 3 cliques of 6 edges plus 3 matchings of 4 edges
        assert_eq!((ring.n(), ring.m()), (12, 30));

        let k44 = generate(&FamilySpec::CompleteBipartite(4, 4)).unwrap();
        assert_eq!((k44.n(), k44.m()), (8, 16));
    }

    #[test]
    fn numbering_conventions() {
        let oct = generate(&FamilySpec::Octopus(3, 2)).unwrap();
        assert_eq!(oct.neighbors(6), &[0, 2, 4]);

        let ring = generate(&FamilySpec::CliqueRing(2, 3)).unwrap();
        assert_eq!(ring.m(), 3 + 3 + 3);
        assert!(ring.has_edge(1, 4));

        let t = generate(&FamilySpec::BinaryTree(2)).unwrap();
        assert_eq!(t.neighbors(1), &[0, 3, 4]);

        let bar = generate(&FamilySpec::Barbell(3)).unwrap();
        assert!(bar.has_edge(2, 3));
        assert_eq!(bar.m(), 7);

        let q3 = generate(&FamilySpec::Hypercube(3)).unwrap();
        assert_eq!(q3.m(), 12);
        assert!(q3.has_edge(0b101, 0b111));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(generate(&FamilySpec::Cycle(2)).is_err());
        assert!(generate(&FamilySpec::Path(0)).is_err());
        assert!(generate(&FamilySpec::CliqueRing(1, 4)).is_err());
        assert!(generate(&FamilySpec::Gnp(5, 1.5, 0)).is_err());
    }

    #[test]
    fn gnp_is_deterministic_and_connected() {
        let a = generate(&FamilySpec::Gnp(30, 0.2, 7)).unwrap();
        let b = generate(&FamilySpec::Gnp(30, 0.2, 7)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_connected());
        assert_eq!(
            generate(&FamilySpec::Gnp(30, 0.0, 1)),
            Err(GraphError::RetriesExhausted(GNP_DEFAULT_RETRIES))
        );
    }
}
