//! Exact acquaintance time of small graphs by iterative deepening over
//! matching sequences.

use std::collections::HashMap;

use thiserror::Error;

use crate::dynamics::{Matching, Strategy};
use crate::graph::{distances, Graph, GraphError};

/// Default refusal threshold on the vertex count.
pub const DEFAULT_VERTEX_CAP: usize = 10;
/// Largest vertex count the packed search state can represent.
pub const HARD_VERTEX_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    /// Minimum number of rounds and the lexicographically first witness of
    /// that length.
    Solved { value: usize, witness: Strategy },
    /// No witness with at most `max_rounds` rounds.
    Exceeded { max_rounds: usize },
}

impl ExactOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            ExactOutcome::Solved { value, .. } => Some(*value),
            ExactOutcome::Exceeded { .. } => None,
        }
    }
}

/// Every nonempty matching of `g`, each once.
///
/// Backtracking over the sorted edge list: a matching is emitted as soon as
/// its last edge is chosen, so `{01}` precedes `{01, 23}` precedes `{12}`.
pub fn enumerate_matchings(g: &Graph) -> Vec<Matching> {
    fn rec(g: &Graph, start: usize, used: &mut [bool], current: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        for (i, &(u, v)) in g.edges().iter().enumerate().skip(start) {
            if used[u] || used[v] {
                continue;
            }
            used[u] = true;
            used[v] = true;
            current.push((u, v));
            out.push(Matching::new(current.iter().copied()));
            rec(g, i + 1, used, current, out);
            current.pop();
            used[u] = false;
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    rec(g, 0, &mut vec![false; g.n()], &mut Vec::new(), &mut out);
    out
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    full: u128,
    pair_bit: Vec<Vec<u128>>,
    pair_ends: Vec<(usize, usize)>,
    agent_mask: Vec<u128>,
    dist: Vec<Vec<usize>>,
    max_deg: usize,
    moves: Vec<Vec<(usize, usize)>>,
    table: HashMap<(u64, u128), u8>,
    path: Vec<usize>,
}

fn pack(agents: &[u8]) -> u64 {
    agents.iter().rev().fold(0u64, |acc, &a| acc << 4 | a as u64)
}

impl Search<'_> {
    fn step(&self, agents: &mut [u8], mut met: u128, moves: &[(usize, usize)]) -> u128 {
        for &(u, v) in moves {
            agents.swap(u, v);
        }
        for &(u, v) in moves {
            for x in [u, v] {
                let a = agents[x] as usize;
                for &w in self.g.neighbors(x) {
                    met |= self.pair_bit[a][agents[w] as usize];
                }
            }
        }
        met
    }

    fn dfs(&mut self, agents: &mut [u8; HARD_VERTEX_CAP], met: u128, remaining: usize) -> bool {
        if met == self.full {
            return true;
        }
        if remaining == 0 {
            return false;
        }
        let unmet = (self.full & !met).count_ones() as usize;
        if unmet > self.g.m() * remaining {
            return false;
        }
        // an agent meets at most max_deg new agents per round
        for &mask in &self.agent_mask[..self.n] {
            if ((mask & !met).count_ones() as usize) > self.max_deg * remaining {
                return false;
            }
        }
        // two agents close in by at most 2 per round
        let mut pos = [0usize; HARD_VERTEX_CAP];
        for (v, &a) in agents[..self.n].iter().enumerate() {
            pos[a as usize] = v;
        }
        let mut rest = self.full & !met;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (a, b) = self.pair_ends[k];
            if self.dist[pos[a]][pos[b]] > 2 * remaining + 1 {
                return false;
            }
        }
        let key = (pack(&agents[..self.n]), met);
        if let Some(&failed) = self.table.get(&key) {
            if failed as usize >= remaining {
                return false;
            }
        }
        for i in 0..self.moves.len() {
            let mut next = *agents;
            let moves = std::mem::take(&mut self.moves[i]);
            let next_met = self.step(&mut next, met, &moves);
            self.moves[i] = moves;
            self.path.push(i);
            if self.dfs(&mut next, next_met, remaining - 1) {
                return true;
            }
            self.path.pop();
        }
        let entry = self.table.entry(key).or_insert(0);
        *entry = (*entry).max(remaining as u8);
        false
    }
}

/// Exact acquaintance time with the default vertex cap.
pub fn exact_ac(g: &Graph, max_rounds: usize) -> Result<ExactOutcome, ExactError> {
    exact_ac_with_cap(g, max_rounds, DEFAULT_VERTEX_CAP)
}

/// Exact acquaintance time; refuses graphs with more than `cap` vertices
/// (`cap` is itself limited to 16).
pub fn exact_ac_with_cap(g: &Graph, max_rounds: usize, cap: usize) -> Result<ExactOutcome, ExactError> {
    let cap = cap.min(HARD_VERTEX_CAP);
    let n = g.n();
    if n > cap {
        return Err(ExactError::TooLarge { n, cap });
    }
    g.require_connected()?;
    let mut pair_bit = vec![vec![0u128; n]; n];
    let mut full = 0u128;
    let mut pair_ends = Vec::new();
    let mut agent_mask = vec![0u128; n];
    for a in 0..n {
        for b in a + 1..n {
            let bit = 1u128 << pair_ends.len();
            pair_bit[a][b] = bit;
            pair_bit[b][a] = bit;
            agent_mask[a] |= bit;
            agent_mask[b] |= bit;
            full |= bit;
            pair_ends.push((a, b));
        }
    }
    let dist: Vec<Vec<usize>> = (0..n)
        .map(|v| distances(g, v).into_iter().map(|d| d.unwrap()).collect())
        .collect();
    let mut met = 0u128;
    for &(u, v) in g.edges() {
        met |= pair_bit[u][v];
    }
    let matchings = enumerate_matchings(g);
    let mut search = Search {
        g,
        n,
        full,
        pair_bit,
        pair_ends,
        agent_mask,
        dist,
        max_deg: g.max_degree(),
        moves: matchings.iter().map(|m| m.pairs().to_vec()).collect(),
        table: HashMap::new(),
        path: Vec::new(),
    };
    let mut start = [0u8; HARD_VERTEX_CAP];
    for (v, slot) in start.iter_mut().enumerate().take(n) {
        *slot = v as u8;
    }
    for depth in 0..=max_rounds.min(u8::MAX as usize) {
        let mut agents = start;
        if search.dfs(&mut agents, met, depth) {
            let rounds = search.path.iter().map(|&i| matchings[i].clone()).collect();
            return Ok(ExactOutcome::Solved {
                value: depth,
                witness: Strategy::new(n, rounds),
            });
        }
    }
    Ok(ExactOutcome::Exceeded { max_rounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::verify_acquaintance;
    use crate::graph::{generate, FamilySpec};

    fn fam(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn matchings_of_small_graphs() {
        let p4 = fam(FamilySpec::Path(4));
        let ms: Vec<Vec<(usize, usize)>> = enumerate_matchings(&p4).iter().map(|m| m.pairs().to_vec()).collect();
        assert_eq!(ms, vec![vec![(0, 1)], vec![(0, 1), (2, 3)], vec![(1, 2)], vec![(2, 3)]]);
        assert_eq!(
            enumerate_matchings(&fam(FamilySpec::CompleteBipartite(4, 4))).len(),
            208
        );
        assert_eq!(enumerate_matchings(&fam(FamilySpec::Path(2))).len(), 1);
    }

    #[test]
    fn small_values() {
        let cases = [
            (FamilySpec::Complete(4), 0),
            (FamilySpec::Path(3), 1),
            (FamilySpec::Path(4), 2),
            (FamilySpec::Cycle(4), 1),
            (FamilySpec::CompleteBipartite(2, 2), 1),
        ];
        for (spec, want) in cases {
            let g = fam(spec.clone());
            match exact_ac(&g, 6).unwrap() {
                ExactOutcome::Solved { value, witness } => {
                    assert_eq!(value, want, "{spec:?}");
                    assert_eq!(witness.len(), value);
                    assert!(verify_acquaintance(&g, &witness).unwrap().ok);
                    assert!(verify_acquaintance(&g, &witness.reverse()).unwrap().ok);
                }
                other => panic!("{spec:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn p4_witness_is_lexicographically_first() {
        let g = fam(FamilySpec::Path(4));
        let ExactOutcome::Solved { witness, .. } = exact_ac(&g, 3).unwrap() else {
            panic!()
        };
        // {01} alone cannot start a 2-round witness; {01, 23} then {12} can
        assert_eq!(witness.rounds()[0].pairs(), &[(0, 1), (2, 3)]);
        assert_eq!(witness.rounds()[1].pairs(), &[(1, 2)]);
    }

    #[test]
    fn exceeded_and_refusals() {
        let g = fam(FamilySpec::Path(6));
        assert_eq!(exact_ac(&g, 1).unwrap(), ExactOutcome::Exceeded { max_rounds: 1 });
        assert_eq!(
            exact_ac(&fam(FamilySpec::Path(11)), 3),
            Err(ExactError::TooLarge { n: 11, cap: 10 })
        );
        let split = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(exact_ac(&split, 3), Err(ExactError::Graph(_))));
    }
}
