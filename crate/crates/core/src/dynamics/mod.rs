//! Matching-swap dynamics: rounds, strategies and acquaintance tracking.
//!
//! Agent `i` starts on vertex `i`. Agents on adjacent vertices are acquainted
//! before the first round and after every round.

mod format;

pub use format::{
    parse_strategy, read_strategy, write_strategy, StrategyFile, StrategyFormatError, StrategyMeta,
    STRATEGY_FORMAT_VERSION,
};

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Agent ids coincide with start vertices.
pub type Agent = usize;

/// One round: vertex-disjoint edges, stored as sorted `(min, max)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Matching {
    pairs: Vec<(Vertex, Vertex)>,
}

impl Matching {
    pub fn new<I: IntoIterator<Item = (Vertex, Vertex)>>(pairs: I) -> Self {
        let mut pairs: Vec<_> = pairs
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Matched vertices, in pair order.
    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.pairs.iter().flat_map(|&(u, v)| [u, v])
    }

    pub fn relabel(&self, map: &[Vertex]) -> Matching {
        Matching::new(self.pairs.iter().map(|&(u, v)| (map[u], map[v])))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingViolation {
    #[error("vertex {0} is out of range")]
    OutOfRange(Vertex),
    #[error("({0}, {1}) is not an edge")]
    NonEdge(Vertex, Vertex),
    #[error("vertex {0} is matched twice")]
    SharedVertex(Vertex),
}

/// Checks that every pair is an edge and no vertex is used twice; reports the
/// first problem in pair order.
pub fn validate_matching(g: &Graph, m: &Matching) -> Result<(), MatchingViolation> {
    let mut used = vec![false; g.n()];
    for &(u, v) in m.pairs() {
        for x in [u, v] {
            if x >= g.n() {
                return Err(MatchingViolation::OutOfRange(x));
            }
        }
        if !g.has_edge(u, v) {
            return Err(MatchingViolation::NonEdge(u, v));
        }
        for x in [u, v] {
            if used[x] {
                return Err(MatchingViolation::SharedVertex(x));
            }
            used[x] = true;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("round {round}: {violation}")]
    InvalidMatching { round: usize, violation: MatchingViolation },
    #[error("strategy is for {strategy} vertices but the graph has {graph}")]
    SizeMismatch { strategy: usize, graph: usize },
    #[error("round {round}: vertex {vertex} is used by both strategies")]
    Overlap { round: usize, vertex: Vertex },
}

/// An ordered sequence of matchings on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Strategy {
    n: usize,
    rounds: Vec<Matching>,
}

impl Strategy {
    pub fn new(n: usize, rounds: Vec<Matching>) -> Self {
        Strategy { n, rounds }
    }

    pub fn empty(n: usize) -> Self {
        Strategy { n, rounds: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn rounds(&self) -> &[Matching] {
        &self.rounds
    }

    pub fn push(&mut self, m: Matching) {
        self.rounds.push(m);
    }

    pub fn extend(&mut self, other: &Strategy) {
        self.rounds.extend(other.rounds.iter().cloned());
    }

    /// Same matchings in reverse order.
    pub fn reverse(&self) -> Strategy {
        Strategy {
            n: self.n,
            rounds: self.rounds.iter().rev().cloned().collect(),
        }
    }

    pub fn concat(&self, other: &Strategy) -> Strategy {
        let mut out = self.clone();
        out.n = out.n.max(other.n);
        out.extend(other);
        out
    }

    /// Round-wise union after padding the shorter strategy with empty rounds.
    pub fn parallel_compose(&self, other: &Strategy) -> Result<Strategy, DynamicsError> {
        let n = self.n.max(other.n);
        let len = self.len().max(other.len());
        let mut used = vec![usize::MAX; n];
        let mut rounds = Vec::with_capacity(len);
        for r in 0..len {
            let a = self.rounds.get(r).map(Matching::pairs).unwrap_or(&[]);
            let b = other.rounds.get(r).map(Matching::pairs).unwrap_or(&[]);
            for &(u, v) in a.iter().chain(b) {
                for x in [u, v] {
                    if used[x] == r {
                        return Err(DynamicsError::Overlap { round: r, vertex: x });
                    }
                    used[x] = r;
                }
            }
            rounds.push(Matching::new(a.iter().chain(b).copied()));
        }
        Ok(Strategy { n, rounds })
    }

    /// Maps vertex `v` to `map[v]` in every round, on an ambient graph of `n`
    /// vertices.
    pub fn relabel(&self, map: &[Vertex], n: usize) -> Strategy {
        Strategy {
            n,
            rounds: self.rounds.iter().map(|m| m.relabel(map)).collect(),
        }
    }

    /// Removes empty rounds.
    pub fn compact(&self) -> Strategy {
        Strategy {
            n: self.n,
            rounds: self.rounds.iter().filter(|m| !m.is_empty()).cloned().collect(),
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), DynamicsError> {
        if self.n != g.n() {
            return Err(DynamicsError::SizeMismatch {
                strategy: self.n,
                graph: g.n(),
            });
        }
        for (round, m) in self.rounds.iter().enumerate() {
            validate_matching(g, m).map_err(|violation| DynamicsError::InvalidMatching { round, violation })?;
        }
        Ok(())
    }
}

/// Symmetric irreflexive relation on `0..n`, stored as a triangular bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSet {
    n: usize,
    bits: Vec<u64>,
    count: usize,
}

impl PairSet {
    pub fn new(n: usize) -> Self {
        let total = n * n.saturating_sub(1) / 2;
        PairSet {
            n,
            bits: vec![0; total.div_ceil(64)],
            count: 0,
        }
    }

    #[inline]
    fn index(a: usize, b: usize) -> usize {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        j * (j - 1) / 2 + i
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let k = Self::index(a, b);
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    /// Inserts the pair; returns true if it was new.
    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let k = Self::index(a, b);
        let word = &mut self.bits[k / 64];
        let mask = 1u64 << (k % 64);
        if *word & mask != 0 {
            return false;
        }
        *word |= mask;
        self.count += 1;
        true
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_full(&self) -> bool {
        self.count == self.n * self.n.saturating_sub(1) / 2
    }

    /// Pairs `(a, b)` with `a < b` not in the set, in lexicographic order.
    pub fn missing(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.contains(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Bijection between agents and vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    agent_at: Vec<Agent>,
    vertex_of: Vec<Vertex>,
}

impl Placement {
    pub fn identity(n: usize) -> Self {
        Placement {
            agent_at: (0..n).collect(),
            vertex_of: (0..n).collect(),
        }
    }

    #[inline]
    pub fn agent_at(&self, v: Vertex) -> Agent {
        self.agent_at[v]
    }

    #[inline]
    pub fn vertex_of(&self, a: Agent) -> Vertex {
        self.vertex_of[a]
    }

    /// Agent on each vertex, indexed by vertex.
    pub fn agents(&self) -> &[Agent] {
        &self.agent_at
    }

    pub fn is_identity(&self) -> bool {
        self.agent_at.iter().enumerate().all(|(v, &a)| v == a)
    }

    pub fn swap(&mut self, u: Vertex, v: Vertex) {
        self.agent_at.swap(u, v);
        self.vertex_of[self.agent_at[u]] = u;
        self.vertex_of[self.agent_at[v]] = v;
    }

    pub fn apply(&mut self, m: &Matching) {
        for &(u, v) in m.pairs() {
            self.swap(u, v);
        }
    }
}

/// Placement plus who has met whom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcquaintanceState {
    placement: Placement,
    met: PairSet,
    met_by: Vec<usize>,
    round: usize,
}

impl AcquaintanceState {
    /// Round-0 state: agents at their start vertices, neighbours acquainted.
    pub fn new(g: &Graph) -> Self {
        let mut met = PairSet::new(g.n());
        let mut met_by = vec![0; g.n()];
        for &(u, v) in g.edges() {
            met.insert(u, v);
            met_by[u] += 1;
            met_by[v] += 1;
        }
        AcquaintanceState {
            placement: Placement::identity(g.n()),
            met,
            met_by,
            round: 0,
        }
    }

    pub fn placement(&self) -> &Placement {
        &self.placement
    }

    pub fn met(&self) -> &PairSet {
        &self.met
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn has_met(&self, a: Agent, b: Agent) -> bool {
        self.met.contains(a, b)
    }

    /// Number of other agents `a` has met.
    pub fn met_count(&self, a: Agent) -> usize {
        self.met_by[a]
    }

    /// True once `a` has met every other agent.
    pub fn is_complete(&self, a: Agent) -> bool {
        self.met_by[a] + 1 >= self.met_by.len()
    }

    pub fn all_met(&self) -> bool {
        self.met.is_full()
    }

    /// Applies one round, validating it first.
    pub fn apply_round(&mut self, g: &Graph, m: &Matching) -> Result<(), MatchingViolation> {
        validate_matching(g, m)?;
        self.apply_unchecked(g, m);
        Ok(())
    }

    /// Applies a round known to be valid. Only edges touching a moved vertex
    /// can bring new agents together.
    pub(crate) fn apply_unchecked(&mut self, g: &Graph, m: &Matching) {
        self.placement.apply(m);
        for v in m.support() {
            let a = self.placement.agent_at(v);
            for &w in g.neighbors(v) {
                let b = self.placement.agent_at(w);
                if self.met.insert(a, b) {
                    self.met_by[a] += 1;
                    self.met_by[b] += 1;
                }
            }
        }
        self.round += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationReport {
    pub rounds: usize,
    pub initial_met: usize,
    /// Acquainted pairs after each round.
    pub met_after: Vec<usize>,
    pub never_met: Vec<(Agent, Agent)>,
    /// Agent on each vertex at the end.
    pub final_placement: Vec<Agent>,
}

/// Runs `s` on `g` from the identity placement.
pub fn simulate(g: &Graph, s: &Strategy) -> Result<SimulationReport, DynamicsError> {
    if s.n() != g.n() {
        return Err(DynamicsError::SizeMismatch {
            strategy: s.n(),
            graph: g.n(),
        });
    }
    let mut state = AcquaintanceState::new(g);
    let initial_met = state.met().len();
    let mut met_after = Vec::with_capacity(s.len());
    for (round, m) in s.rounds().iter().enumerate() {
        state
            .apply_round(g, m)
            .map_err(|violation| DynamicsError::InvalidMatching { round, violation })?;
        met_after.push(state.met().len());
    }
    Ok(SimulationReport {
        rounds: s.len(),
        initial_met,
        met_after,
        never_met: state.met().missing(),
        final_placement: state.placement().agents().to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub missing: Vec<(Agent, Agent)>,
}

/// Whether `s` makes every pair of agents meet on `g`.
pub fn verify_acquaintance(g: &Graph, s: &Strategy) -> Result<Verification, DynamicsError> {
    let report = simulate(g, s)?;
    Ok(Verification {
        ok: report.never_met.is_empty(),
        missing: report.never_met,
    })
}

/// Convenience: true iff `s` is valid on `g` and a witness.
pub fn is_witness(g: &Graph, s: &Strategy) -> bool {
    verify_acquaintance(g, s).map(|v| v.ok).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    fn strat(n: usize, rounds: &[&[(usize, usize)]]) -> Strategy {
        Strategy::new(n, rounds.iter().map(|r| Matching::new(r.iter().copied())).collect())
    }

    #[test]
    fn matching_violations() {
        let p4 = generate(&FamilySpec::Path(4)).unwrap();
        assert_eq!(validate_matching(&p4, &Matching::new([(0, 1), (2, 3)])), Ok(()));
        assert_eq!(
            validate_matching(&p4, &Matching::new([(0, 2)])),
            Err(MatchingViolation::NonEdge(0, 2))
        );
        assert_eq!(
            validate_matching(&p4, &Matching::new([(0, 1), (1, 2)])),
            Err(MatchingViolation::SharedVertex(1))
        );
        assert_eq!(
            validate_matching(&p4, &Matching::new([(3, 9)])),
            Err(MatchingViolation::OutOfRange(9))
        );
    }

    #[test]
    fn single_round_examples() {
        let p3 = generate(&FamilySpec::Path(3)).unwrap();
        let mut st = AcquaintanceState::new(&p3);
        st.apply_round(&p3, &Matching::new([(0, 1)])).unwrap();
        assert!(st.all_met());

        let c4 = generate(&FamilySpec::Cycle(4)).unwrap();
        let mut st = AcquaintanceState::new(&c4);
        st.apply_round(&c4, &Matching::new([(0, 1)])).unwrap();
        assert!(st.has_met(0, 2) && st.has_met(1, 3));
        assert!(st.all_met());
    }

    #[test]
    fn empty_round_changes_nothing() {
        let g = generate(&FamilySpec::Cycle(5)).unwrap();
        let mut st = AcquaintanceState::new(&g);
        let before = st.clone();
        st.apply_round(&g, &Matching::empty()).unwrap();
        assert_eq!(st.placement(), before.placement());
        assert_eq!(st.met(), before.met());
        assert_eq!(st.round(), 1);
    }

    #[test]
    fn p4_order_matters() {
        let p4 = generate(&FamilySpec::Path(4)).unwrap();
        let good = strat(4, &[&[(0, 1)], &[(2, 3)], &[(0, 1)]]);
        let bad = strat(4, &[&[(0, 1)], &[(0, 1)], &[(2, 3)]]);
        assert!(verify_acquaintance(&p4, &good).unwrap().ok);
        assert!(verify_acquaintance(&p4, &good.reverse()).unwrap().ok);
        let v = verify_acquaintance(&p4, &bad).unwrap();
        assert!(!v.ok);
        assert!(!v.missing.is_empty());
    }

    #[test]
    fn complete_graph_needs_no_rounds() {
        let k = generate(&FamilySpec::Complete(5)).unwrap();
        assert!(verify_acquaintance(&k, &Strategy::empty(5)).unwrap().ok);
    }

    #[test]
    fn simulate_reports_round_of_invalid_matching() {
        let p4 = generate(&FamilySpec::Path(4)).unwrap();
        let s = strat(4, &[&[(0, 1)], &[(1, 3)]]);
        assert_eq!(
            simulate(&p4, &s),
            Err(DynamicsError::InvalidMatching {
                round: 1,
                violation: MatchingViolation::NonEdge(1, 3)
            })
        );
    }

    #[test]
    fn concat_with_reverse_restores_placement() {
        let g = generate(&FamilySpec::Cycle(6)).unwrap();
        let s = strat(6, &[&[(0, 1), (2, 3)], &[(1, 2), (3, 4)], &[(5, 0)]]);
        let report = simulate(&g, &s.concat(&s.reverse())).unwrap();
        assert_eq!(report.final_placement, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn parallel_compose_pads_and_detects_overlap() {
        let a = strat(8, &[&[(0, 1)], &[(1, 2)], &[(2, 3)]]);
        let b = strat(8, &[&[(4, 5)]]);
        let c = a.parallel_compose(&b).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.rounds()[0].pairs(), &[(0, 1), (4, 5)]);
        let clash = strat(8, &[&[(1, 4)]]);
        assert_eq!(
            a.parallel_compose(&clash),
            Err(DynamicsError::Overlap { round: 0, vertex: 1 })
        );
    }

    #[test]
    fn met_counts_are_monotone_and_bounded_by_edges() {
        let g = generate(&FamilySpec::Path(6)).unwrap();
        let s = strat(
            6,
            &[&[(0, 1), (2, 3), (4, 5)], &[(1, 2), (3, 4)], &[(0, 1), (2, 3), (4, 5)]],
        );
        let r = simulate(&g, &s).unwrap();
        let mut prev = r.initial_met;
        for &m in &r.met_after {
            assert!(m >= prev && m - prev <= g.m());
            prev = m;
        }
    }

    #[test]
    fn pairset_basics() {
        let mut p = PairSet::new(4);
        assert!(p.insert(3, 1));
        assert!(!p.insert(1, 3));
        assert!(!p.insert(2, 2));
        assert!(p.contains(1, 3));
        assert_eq!(p.len(), 1);
        assert_eq!(p.missing().len(), 5);
    }
}
