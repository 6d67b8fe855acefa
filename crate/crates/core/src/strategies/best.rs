use serde::Serialize;

use crate::dynamics::{verify_acquaintance, Strategy};
use crate::graph::{generate, long_path, FamilySpec, Graph};

use super::baseline::dfs_baseline;
use super::families::{
    binary_tree_strategy, clique_ring_strategy, complete_bipartite_strategy, octopus_strategy, OctopusMode,
};
use super::general::{ac_upper_general, LONG_PATH_EFFORT};
use super::path::{hamiltonian_strategy, path_strategy};
use super::StrategyError;

/// A family recognised with its exact generator numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectedFamily {
    Complete(usize),
    Path(usize),
    Cycle(usize),
    /// `K_{2^r, 2^r}`.
    CompleteBipartite(usize),
    BinaryTree(usize),
    CliqueRing(usize, usize),
    Octopus(usize, usize),
}

fn same(g: &Graph, spec: FamilySpec) -> bool {
    generate(&spec).is_ok_and(|h| h.n() == g.n() && h.edges() == g.edges())
}

/// Recognises a graph that is literally one of the generated families.
pub fn detect_family(g: &Graph) -> Option<DetectedFamily> {
    let (n, m) = (g.n(), g.m());
    if n == 0 {
        return None;
    }
    if m == n * (n - 1) / 2 {
        return Some(DetectedFamily::Complete(n));
    }
    if m + 1 == n && same(g, FamilySpec::Path(n)) {
        return Some(DetectedFamily::Path(n));
    }
    if m == n && same(g, FamilySpec::Cycle(n)) {
        return Some(DetectedFamily::Cycle(n));
    }
    if n % 2 == 0 && (n / 2).is_power_of_two() && n >= 4 && m == n * n / 4 {
        let half = n / 2;
        if same(g, FamilySpec::CompleteBipartite(half, half)) {
            return Some(DetectedFamily::CompleteBipartite(half.trailing_zeros() as usize));
        }
    }
    if (n + 1).is_power_of_two() && n >= 3 && m + 1 == n {
        let depth = (n + 1).trailing_zeros() as usize - 1;
        if same(g, FamilySpec::BinaryTree(depth)) {
            return Some(DetectedFamily::BinaryTree(depth));
        }
    }
    for l in 2..=n / 2 {
        if n % l == 0 && same(g, FamilySpec::CliqueRing(n / l, l)) {
            return Some(DetectedFamily::CliqueRing(n / l, l));
        }
    }
    for l in 1..n {
        if (n - 1) % l == 0 && (n - 1) / l >= 2 && same(g, FamilySpec::Octopus((n - 1) / l, l)) {
            return Some(DetectedFamily::Octopus((n - 1) / l, l));
        }
    }
    None
}

/// Shortest verified strategy over all applicable generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestStrategy {
    pub strategy: Strategy,
    /// Name of the generator that produced it.
    pub generator: String,
}

/// Runs every applicable generator and keeps the shortest one that verifies.
pub fn best_strategy(g: &Graph) -> Result<BestStrategy, StrategyError> {
    g.require_connected()?;
    let n = g.n();
    let mut candidates: Vec<(String, Result<Strategy, StrategyError>)> = Vec::new();
    match detect_family(g) {
        Some(DetectedFamily::Complete(_)) => candidates.push(("complete".into(), Ok(Strategy::empty(n)))),
        Some(DetectedFamily::Path(n)) => candidates.push(("path".into(), Ok(path_strategy(n)))),
        Some(DetectedFamily::CompleteBipartite(r)) => {
            candidates.push(("complete_bipartite".into(), complete_bipartite_strategy(r)))
        }
        Some(DetectedFamily::BinaryTree(d)) => candidates.push(("binary_tree".into(), binary_tree_strategy(d))),
        Some(DetectedFamily::CliqueRing(r, l)) => candidates.push(("clique_ring".into(), clique_ring_strategy(r, l))),
        Some(DetectedFamily::Octopus(r, l)) => {
            candidates.push(("octopus_pairs".into(), octopus_strategy(r, l, OctopusMode::Pairs)));
            candidates.push(("octopus_center".into(), octopus_strategy(r, l, OctopusMode::Center)));
        }
        Some(DetectedFamily::Cycle(_)) | None => {}
    }
    let path = long_path(g, LONG_PATH_EFFORT, 0);
    if path.len() == n {
        candidates.push(("hamiltonian".into(), hamiltonian_strategy(g, &path)));
    }
    candidates.push(("ac_upper_general".into(), ac_upper_general(g).map(|out| out.strategy)));
    candidates.push(("dfs_baseline".into(), dfs_baseline(g)));

    let mut best: Option<BestStrategy> = None;
    for (generator, result) in candidates {
        let Ok(strategy) = result else { continue };
        if best.as_ref().is_some_and(|b| b.strategy.len() <= strategy.len()) {
            continue;
        }
        if verify_acquaintance(g, &strategy).is_ok_and(|v| v.ok) {
            best = Some(BestStrategy { strategy, generator });
        }
    }
    best.ok_or_else(|| StrategyError::NotAWitness("no generator produced a valid strategy".into()))
}
