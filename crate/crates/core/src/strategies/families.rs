use std::collections::HashSet;

use crate::dynamics::{AcquaintanceState, Agent, Matching, Placement, Strategy};
use crate::graph::{generate, FamilySpec, Graph, Vertex};

use super::path::path_strategy;
use super::routing::route_in_region;
use super::StrategyError;

fn invalid(msg: impl Into<String>) -> StrategyError {
    StrategyError::InvalidParameters(msg.into())
}

/// Exactly `r` rounds on `K_{2^r, 2^r}` (side A `0..m`, side B `m..2m`).
///
/// The agent starting at index `j` of a side gets the bit string whose first
/// bit names the side and whose remaining `r` bits spell `j`, most significant
/// first. Round `i` puts the agents with bit `i` equal to 0 on side A, so any
/// two agents with different strings end up on opposite sides at some point.
pub fn complete_bipartite_strategy(r: usize) -> Result<Strategy, StrategyError> {
    if r == 0 || r > 20 {
        return Err(invalid("r must be in 1..=20"));
    }
    let m = 1usize << r;
    // agent a (a < m on side A, else side B at index a - m) has bits of a % m
    let bit = |agent: Agent, i: usize| (agent % m) >> (r - i) & 1;
    let mut placement = Placement::identity(2 * m);
    let mut out = Strategy::empty(2 * m);
    for i in 1..=r {
        let wrong_a: Vec<Vertex> = (0..m).filter(|&v| bit(placement.agent_at(v), i) == 1).collect();
        let wrong_b: Vec<Vertex> = (m..2 * m).filter(|&v| bit(placement.agent_at(v), i) == 0).collect();
        debug_assert_eq!(wrong_a.len(), wrong_b.len());
        let round = Matching::new(wrong_a.into_iter().zip(wrong_b));
        placement.apply(&round);
        out.push(round);
    }
    Ok(out)
}

/// Strategy for the complete binary tree of the given depth (heap numbering).
///
/// The root agent tours the tree, the two halves are crossed so every agent
/// on the left meets every agent on the right, the halves are restored and
/// both recurse in parallel. Crossing two sibling subtrees walks both
/// children around the opposite subtree, then exchanges grandchild subtrees
/// twice, crossing the children recursively after each exchange.
pub fn binary_tree_strategy(depth: usize) -> Result<Strategy, StrategyError> {
    if depth == 0 || depth > 20 {
        return Err(invalid("depth must be in 1..=20"));
    }
    let g = generate(&FamilySpec::BinaryTree(depth))?;
    let mut b = TreeBuilder {
        n: g.n(),
        g: &g,
        placement: Placement::identity(g.n()),
    };
    b.acquaint(0)
}

struct TreeBuilder<'a> {
    n: usize,
    g: &'a Graph,
    placement: Placement,
}

impl TreeBuilder<'_> {
    fn children(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        let a = 2 * v + 1;
        (a + 1 < self.n).then_some((a, a + 1))
    }

    fn subtree(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            if let Some((a, b)) = self.children(out[i]) {
                out.push(a);
                out.push(b);
            }
            i += 1;
        }
        out
    }

    fn tour_steps(&self, v: Vertex, steps: &mut Vec<(Vertex, Vertex)>) {
        if let Some((a, b)) = self.children(v) {
            for c in [a, b] {
                steps.push((v, c));
                self.tour_steps(c, steps);
                steps.push((c, v));
            }
        }
    }

    fn walk(&mut self, steps: &[(Vertex, Vertex)]) -> Strategy {
        let mut out = Strategy::empty(self.n);
        for &(u, v) in steps {
            let m = Matching::new([(u, v)]);
            self.placement.apply(&m);
            out.push(m);
        }
        out
    }

    fn agents_on(&self, vertices: &[Vertex]) -> Vec<Agent> {
        vertices.iter().map(|&v| self.placement.agent_at(v)).collect()
    }

    fn route(&mut self, region: &[Vertex], agents: &[Agent], targets: &[Vertex]) -> Result<Strategy, StrategyError> {
        let sources: Vec<Vertex> = agents.iter().map(|&a| self.placement.vertex_of(a)).collect();
        let s = route_in_region(self.g, region, &sources, targets)?;
        for m in s.rounds() {
            self.placement.apply(m);
        }
        Ok(s)
    }

    fn acquaint(&mut self, s: Vertex) -> Result<Strategy, StrategyError> {
        let mut steps = Vec::new();
        self.tour_steps(s, &mut steps);
        let mut out = self.walk(&steps);
        let Some((a, b)) = self.children(s) else {
            return Ok(out);
        };
        let (ta, tb) = (self.subtree(a), self.subtree(b));
        let (pa, pb) = (self.agents_on(&ta), self.agents_on(&tb));
        out.extend(&self.cross(s)?);
        let all = self.subtree(s);
        out.extend(&self.route(&all, &pa, &ta)?);
        let mut right_region = tb.clone();
        right_region.push(s);
        out.extend(&self.route(&right_region, &pb, &tb)?);
        let left = self.acquaint(a)?;
        let right = self.acquaint(b)?;
        out.extend(&left.parallel_compose(&right)?);
        Ok(out)
    }

    /// Every agent in one child subtree of `p` meets every agent in the other.
    fn cross(&mut self, p: Vertex) -> Result<Strategy, StrategyError> {
        let (a, b) = self.children(p).expect("cross needs children");
        let mut out = Strategy::empty(self.n);
        for (x, y) in [(a, b), (b, a)] {
            let mut steps = vec![(x, p), (p, y)];
            self.tour_steps(y, &mut steps);
            steps.extend([(y, p), (p, x)]);
            out.extend(&self.walk(&steps));
        }
        let (Some((a0, a1)), Some((b0, b1))) = (self.children(a), self.children(b)) else {
            return Ok(out);
        };
        let (ta0, ta1, tb0, tb1) = (self.subtree(a0), self.subtree(a1), self.subtree(b0), self.subtree(b1));
        let x0 = self.agents_on(&ta0);
        let x1 = self.agents_on(&ta1);
        let y0 = self.agents_on(&tb0);
        let y1 = self.agents_on(&tb1);

        // swap the contents of the two left grandchild subtrees
        let mut region: Vec<Vertex> = vec![p, a, b];
        region.extend(&ta0);
        region.extend(&tb0);
        out.extend(&self.route(&region, &x0, &tb0)?);
        region.retain(|v| !tb0.contains(v));
        out.extend(&self.route(&region, &y0, &ta0)?);
        out.extend(&self.cross_both(a, b)?);

        // regroup: x0 beside y0 under a, x1 beside y1 under b
        let mut region = self.subtree(p);
        for (class, target) in [(&x0, &ta0), (&y0, &ta1), (&x1, &tb0), (&y1, &tb1)] {
            out.extend(&self.route(&region, class, target)?);
            region.retain(|v| !target.contains(v));
        }
        out.extend(&self.cross_both(a, b)?);
        Ok(out)
    }

    fn cross_both(&mut self, a: Vertex, b: Vertex) -> Result<Strategy, StrategyError> {
        let left = self.cross(a)?;
        let right = self.cross(b)?;
        Ok(left.parallel_compose(&right)?)
    }
}

/// Strategy for the clique ring `G_{r,l}` in `O(r)` rounds.
///
/// Cliques are treated as blocks that swap wholesale along the ring matching,
/// following the path strategy on `r` blocks. Whenever two groups of agents
/// first sit in neighbouring blocks they are mixed by a fixed schedule of at
/// most six rounds that restores which block each group occupies.
pub fn clique_ring_strategy(r: usize, l: usize) -> Result<Strategy, StrategyError> {
    if r < 2 || l < 2 {
        return Err(invalid("clique ring strategy needs r >= 2 and l >= 2"));
    }
    let n = r * l;
    let mut unit_at: Vec<usize> = (0..r).collect();
    let mut mixed: HashSet<(usize, usize)> = HashSet::new();
    let mut out = Strategy::empty(n);
    mix_neighbours(r, l, &unit_at, &mut mixed, &mut out)?;
    for block_round in path_strategy(r).rounds() {
        let mut pairs = Vec::new();
        for &(i, j) in block_round.pairs() {
            pairs.extend((0..l).map(|c| (i * l + c, j * l + c)));
            unit_at.swap(i, j);
        }
        out.push(Matching::new(pairs));
        mix_neighbours(r, l, &unit_at, &mut mixed, &mut out)?;
    }
    Ok(out)
}

fn mix_neighbours(
    r: usize,
    l: usize,
    unit_at: &[usize],
    mixed: &mut HashSet<(usize, usize)>,
    out: &mut Strategy,
) -> Result<(), StrategyError> {
    for parity in [0, 1] {
        let mut batch = Strategy::empty(r * l);
        for i in (parity..r - 1).step_by(2) {
            let key = (unit_at[i].min(unit_at[i + 1]), unit_at[i].max(unit_at[i + 1]));
            if mixed.insert(key) {
                batch = batch.parallel_compose(&mixer(r * l, l, i * l, (i + 1) * l))?;
            }
        }
        out.extend(&batch);
    }
    Ok(())
}

/// Every agent of block `x` meets every agent of block `y`; each block keeps
/// its set of agents. Columns `j < h` cross, the upper half of `y` is rotated
/// under them, and they cross again; an odd last column visits once at the end.
fn mixer(n: usize, l: usize, x: Vertex, y: Vertex) -> Strategy {
    let h = l / 2;
    let cross: Vec<(Vertex, Vertex)> = (0..h).map(|j| (x + j, y + j)).collect();
    let rotate: Vec<(Vertex, Vertex)> = (0..h).map(|j| (y + j, y + j + h)).collect();
    let mut rounds = vec![cross.clone(), rotate.clone(), cross.clone(), rotate, cross];
    if l % 2 == 1 {
        let last = (x + 2 * h, y + 2 * h);
        rounds[4].push(last);
        rounds.push(vec![last]);
    }
    Strategy::new(n, rounds.into_iter().map(Matching::new).collect()).compact()
}

/// Which of the two octopus constructions to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OctopusMode {
    /// One Hamiltonian phase per pair of cliques, through the center.
    Pairs,
    /// Each agent in turn visits the center while every clique cycles its
    /// members past the connector.
    Center,
}

/// Strategy for the octopus `O_{r,l}` (clique `i` on `i*l..(i+1)*l` with
/// connector `i*l`, center `r*l`). Each phase is undone by its reverse.
pub fn octopus_strategy(r: usize, l: usize, mode: OctopusMode) -> Result<Strategy, StrategyError> {
    if r < 2 || l < 1 {
        return Err(invalid("octopus strategy needs r >= 2 and l >= 1"));
    }
    let g = generate(&FamilySpec::Octopus(r, l))?;
    let n = g.n();
    let z = r * l;
    let mut out = Strategy::empty(n);
    match mode {
        OctopusMode::Pairs => {
            let x = path_strategy(2 * l + 1);
            for i in 0..r {
                for j in i + 1..r {
                    let mut path: Vec<Vertex> = (i * l + 1..(i + 1) * l).collect();
                    path.extend([i * l, z, j * l]);
                    path.extend(j * l + 1..(j + 1) * l);
                    let phase = x.relabel(&path, n);
                    out.extend(&phase);
                    out.extend(&phase.reverse());
                }
            }
        }
        OctopusMode::Center => {
            let mut state = AcquaintanceState::new(&g);
            for agent in 0..n {
                if state.all_met() {
                    break;
                }
                if state.is_complete(agent) {
                    continue;
                }
                let v = state.placement().vertex_of(agent);
                let mut phase = Strategy::empty(n);
                if v != z {
                    let c = v - v % l;
                    if v != c {
                        phase.push(Matching::new([(v, c)]));
                    }
                    phase.push(Matching::new([(c, z)]));
                }
                for t in 1..l {
                    phase.push(Matching::new((0..r).map(|i| (i * l, i * l + t))));
                }
                let phase = phase.concat(&phase.reverse());
                for m in phase.rounds() {
                    state.apply_unchecked(&g, m);
                }
                out.extend(&phase);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::verify_acquaintance;

    fn verifies(spec: FamilySpec, s: &Strategy) -> bool {
        verify_acquaintance(&generate(&spec).unwrap(), s).unwrap().ok
    }

    #[test]
    fn bipartite_rounds_equal_r() {
        for r in 1..=5 {
            let s = complete_bipartite_strategy(r).unwrap();
            assert_eq!(s.len(), r);
            assert!(verifies(FamilySpec::CompleteBipartite(1 << r, 1 << r), &s), "r={r}");
        }
        assert!(complete_bipartite_strategy(0).is_err());
    }

    #[test]
    fn binary_trees_verify() {
        for depth in 1..=6 {
            let s = binary_tree_strategy(depth).unwrap();
            assert!(verifies(FamilySpec::BinaryTree(depth), &s), "depth={depth}");
        }
    }

    #[test]
    fn clique_rings_verify() {
        for (r, l) in [(2, 2), (2, 4), (2, 5), (3, 3), (4, 4), (5, 2), (6, 7), (8, 4)] {
            let s = clique_ring_strategy(r, l).unwrap();
            assert!(verifies(FamilySpec::CliqueRing(r, l), &s), "r={r} l={l}");
        }
        assert!(clique_ring_strategy(1, 4).is_err());
    }

    #[test]
    fn mixer_meets_and_restores_blocks() {
        for l in 2..=9 {
            let g = generate(&FamilySpec::CliqueRing(2, l)).unwrap();
            let s = mixer(2 * l, l, 0, l);
            assert!(s.len() <= 8);
            assert!(verify_acquaintance(&g, &s).unwrap().ok, "l={l}");
            let mut p = Placement::identity(2 * l);
            for m in s.rounds() {
                p.apply(m);
            }
            assert!((0..l).all(|v| p.agent_at(v) < l), "l={l}");
        }
    }

    #[test]
    fn octopus_modes_verify() {
        for (r, l) in [(2, 1), (2, 3), (3, 2), (4, 4), (2, 8), (8, 2)] {
            for mode in [OctopusMode::Pairs, OctopusMode::Center] {
                let s = octopus_strategy(r, l, mode).unwrap();
                assert!(verifies(FamilySpec::Octopus(r, l), &s), "{r} {l} {mode:?}");
            }
        }
    }
}
