use crate::dynamics::Strategy;
use crate::graph::{is_simple_path, spanning_tree, Graph, Vertex};

use super::routing::{route_on_tree, RoutingTask};
use super::StrategyError;

/// Strategy for the path `0 - 1 - ... - (n - 1)`.
///
/// The left `floor(n/2)` agents are routed onto the right half, which makes
/// every left agent pass every right agent; then both halves recurse in
/// parallel.
pub fn path_strategy(n: usize) -> Strategy {
    let mut memo = std::collections::HashMap::new();
    build(n, &mut memo)
}

fn build(n: usize, memo: &mut std::collections::HashMap<usize, Strategy>) -> Strategy {
    if n <= 2 {
        return Strategy::empty(n);
    }
    if let Some(s) = memo.get(&n) {
        return s.clone();
    }
    let h = n.div_ceil(2);
    let path = crate::graph::generate(&crate::graph::FamilySpec::Path(n)).expect("n >= 1");
    let tree = spanning_tree(&path).expect("paths are connected");
    let cross = route_on_tree(&RoutingTask {
        tree,
        sources: (0..n / 2).collect(),
        targets: (h..n).collect(),
    })
    .expect("equal-size disjoint sets");

    let left = build(h, memo);
    let right = build(n - h, memo);
    let shift: Vec<Vertex> = (h..n).collect();
    let halves = left
        .relabel(&(0..h).collect::<Vec<_>>(), n)
        .parallel_compose(&right.relabel(&shift, n))
        .expect("halves are disjoint");
    let out = cross.concat(&halves);
    memo.insert(n, out.clone());
    out
}

/// [`path_strategy`] laid along a Hamiltonian path of `g`.
pub fn hamiltonian_strategy(g: &Graph, ham_path: &[Vertex]) -> Result<Strategy, StrategyError> {
    if ham_path.len() != g.n() || !is_simple_path(g, ham_path) {
        return Err(StrategyError::InvalidPath("not a Hamiltonian path of the graph".into()));
    }
    Ok(path_strategy(g.n()).relabel(ham_path, g.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::verify_acquaintance;
    use crate::graph::{generate, FamilySpec};

    #[test]
    fn small_paths() {
        assert_eq!(path_strategy(1).len(), 0);
        assert_eq!(path_strategy(2).len(), 0);
        for n in 3..=40 {
            let g = generate(&FamilySpec::Path(n)).unwrap();
            let s = path_strategy(n);
            assert!(verify_acquaintance(&g, &s).unwrap().ok, "n={n}");
        }
        // exact value for P_4 is 2
        assert!(path_strategy(4).len() >= 2);
    }

    #[test]
    fn hamiltonian_relabelling() {
        let c8 = generate(&FamilySpec::Cycle(8)).unwrap();
        let s = hamiltonian_strategy(&c8, &(0..8).collect::<Vec<_>>()).unwrap();
        assert_eq!(s.len(), path_strategy(8).len());
        assert!(verify_acquaintance(&c8, &s).unwrap().ok);

        let q3 = generate(&FamilySpec::Hypercube(3)).unwrap();
        let gray: Vec<Vertex> = (0..8usize).map(|i| i ^ (i >> 1)).collect();
        let s = hamiltonian_strategy(&q3, &gray).unwrap();
        assert!(verify_acquaintance(&q3, &s).unwrap().ok);

        let k6 = generate(&FamilySpec::Complete(6)).unwrap();
        assert!(
            verify_acquaintance(&k6, &hamiltonian_strategy(&k6, &[0, 1, 2, 3, 4, 5]).unwrap())
                .unwrap()
                .ok
        );
    }

    #[test]
    fn rejects_non_hamiltonian_paths() {
        let c8 = generate(&FamilySpec::Cycle(8)).unwrap();
        assert!(hamiltonian_strategy(&c8, &[0, 1, 2]).is_err());
        assert!(hamiltonian_strategy(&c8, &[0, 2, 1, 3, 4, 5, 6, 7]).is_err());
    }
}
