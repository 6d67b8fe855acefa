use crate::dynamics::{AcquaintanceState, Matching, Strategy};
use crate::graph::{spanning_tree, Graph, Vertex};

use super::StrategyError;

/// Each agent in turn walks a closed tour of a spanning tree, stopping as
/// soon as it has met everyone. At most `2(n - 1)` rounds per agent.
pub fn dfs_baseline(g: &Graph) -> Result<Strategy, StrategyError> {
    let mut state = AcquaintanceState::new(g);
    let mut out = Strategy::empty(g.n());
    finish_with_tours(g, &mut state, &mut out)?;
    Ok(out)
}

/// Appends tours for every agent that has not yet met everyone, continuing
/// from `state`.
pub(crate) fn finish_with_tours(
    g: &Graph,
    state: &mut AcquaintanceState,
    out: &mut Strategy,
) -> Result<(), StrategyError> {
    let tree = spanning_tree(g)?;
    let t = tree.graph();
    for agent in 0..g.n() {
        if state.all_met() {
            break;
        }
        if state.is_complete(agent) {
            continue;
        }
        let start = state.placement().vertex_of(agent);
        for (u, v) in tour(t, start) {
            if state.is_complete(agent) {
                break;
            }
            let m = Matching::new([(u, v)]);
            state.apply_unchecked(g, &m);
            out.push(m);
        }
    }
    Ok(())
}

/// Directed edges of a depth-first closed walk around a tree from `start`.
pub(crate) fn tour(tree: &Graph, start: Vertex) -> Vec<(Vertex, Vertex)> {
    let mut steps = Vec::with_capacity(2 * tree.n());
    let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(start, usize::MAX, 0)];
    while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
        let nbrs = tree.neighbors(v);
        while *next < nbrs.len() && nbrs[*next] == parent {
            *next += 1;
        }
        if *next < nbrs.len() {
            let w = nbrs[*next];
            *next += 1;
            steps.push((v, w));
            stack.push((w, v, 0));
        } else {
            stack.pop();
            if parent != usize::MAX {
                steps.push((v, parent));
            }
        }
    }
    steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::verify_acquaintance;
    use crate::graph::{generate, FamilySpec};

    #[test]
    fn baseline_verifies_within_quadratic_budget() {
        for spec in [
            FamilySpec::Complete(3),
            FamilySpec::Path(5),
            FamilySpec::Gnp(12, 0.3, 4),
            FamilySpec::BinaryTree(3),
        ] {
            let g = generate(&spec).unwrap();
            let s = dfs_baseline(&g).unwrap();
            let n = g.n();
            assert!(s.len() <= 2 * n * n, "{spec:?}");
            assert!(verify_acquaintance(&g, &s).unwrap().ok, "{spec:?}");
        }
    }

    #[test]
    fn tour_covers_tree_twice() {
        let g = generate(&FamilySpec::BinaryTree(2)).unwrap();
        let steps = tour(&g, 3);
        assert_eq!(steps.len(), 12);
        assert_eq!(steps.first(), Some(&(3, 1)));
        assert_eq!(steps.last(), Some(&(1, 3)));
    }

    #[test]
    fn disconnected_input() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(dfs_baseline(&g).is_err());
    }
}
