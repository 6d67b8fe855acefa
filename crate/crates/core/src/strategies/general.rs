use std::collections::VecDeque;

use serde::Serialize;

use crate::dynamics::{AcquaintanceState, Matching, Strategy};
use crate::graph::{is_simple_path, long_path, spanning_tree_from, Graph, Tree, Vertex};

use super::baseline::finish_with_tours;
use super::path::path_strategy;
use super::routing::{route_in_region, route_on_tree, RoutingTask};
use super::StrategyError;

/// Search effort handed to [`long_path`] by [`ac_upper_general`].
pub const LONG_PATH_EFFORT: usize = 20_000;

/// Strategy in `O(n^2 / l)` rounds given a simple path of `l` vertices.
///
/// Agents are split by id into classes of at most `floor(l/2)`. For every pair
/// of classes that still has unacquainted members, both classes are routed
/// onto the front of the path over a spanning tree containing it, the path
/// strategy runs there, and the whole phase is reversed.
pub fn long_path_strategy(g: &Graph, path: &[Vertex]) -> Result<Strategy, StrategyError> {
    g.require_connected()?;
    if path.len() < 2 || !is_simple_path(g, path) {
        return Err(StrategyError::InvalidPath(
            "need a simple path with at least two vertices".into(),
        ));
    }
    let n = g.n();
    let half = path.len() / 2;
    let classes: Vec<Vec<usize>> = (0..n).collect::<Vec<_>>().chunks(half).map(<[usize]>::to_vec).collect();
    let tree = tree_through_path(g, path)?;
    let mut state = AcquaintanceState::new(g);
    let mut out = Strategy::empty(n);
    let pairs: Vec<(usize, usize)> = if classes.len() == 1 {
        vec![(0, 0)]
    } else {
        (0..classes.len())
            .flat_map(|i| (i + 1..classes.len()).map(move |j| (i, j)))
            .collect()
    };
    for (i, j) in pairs {
        let mut members = classes[i].clone();
        if j != i {
            members.extend(&classes[j]);
        }
        let done = members
            .iter()
            .all(|&a| members.iter().all(|&b| a == b || state.has_met(a, b)));
        if done {
            continue;
        }
        let m = members.len();
        let sources: Vec<Vertex> = members.iter().map(|&a| state.placement().vertex_of(a)).collect();
        let mut phase = route_on_tree(&RoutingTask {
            tree: tree.clone(),
            sources,
            targets: path[..m].to_vec(),
        })?;
        phase.extend(&path_strategy(m).relabel(&path[..m], n));
        let phase = phase.concat(&phase.reverse());
        for r in phase.rounds() {
            state.apply_unchecked(g, r);
        }
        out.extend(&phase);
    }
    if !state.all_met() {
        return Err(StrategyError::NotAWitness("long path phases left pairs unmet".into()));
    }
    Ok(out)
}

/// Spanning tree of `g` containing every edge of `path`: path edges plus BFS
/// parent edges grown from all path vertices at once.
fn tree_through_path(g: &Graph, path: &[Vertex]) -> Result<Tree, StrategyError> {
    let mut seen = vec![false; g.n()];
    let mut edges: Vec<(Vertex, Vertex)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    let mut queue: VecDeque<Vertex> = path.iter().copied().collect();
    for &v in path {
        seen[v] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                edges.push((u, w));
                queue.push_back(w);
            }
        }
    }
    Ok(Tree::new(Graph::new(g.n(), edges)?, path[0])?)
}

/// Strategy in `O(n^2 / D)` rounds, `D` the maximum degree.
///
/// Works on a BFS tree rooted at a vertex `r` of maximum degree. The agents on
/// the children of `r` form a batch: each first tours its own subtree, then
/// every agent of each subtree is made to pass through `r`, where it sees the
/// whole batch. The batch is then parked on the deepest active vertices,
/// which are retired, and the loop repeats on what is left.
pub fn max_degree_strategy(g: &Graph) -> Result<Strategy, StrategyError> {
    g.require_connected()?;
    let n = g.n();
    let mut out = Strategy::empty(n);
    if n <= 1 {
        return Ok(out);
    }
    let root = (0..n).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
    let tree = spanning_tree_from(g, root)?;
    let mut active = vec![true; n];
    let mut active_count = n;
    let mut state = AcquaintanceState::new(g);
    let push = |s: &Strategy, state: &mut AcquaintanceState, out: &mut Strategy| {
        for m in s.rounds() {
            state.apply_unchecked(g, m);
        }
        out.extend(s);
    };
    while !state.all_met() {
        let kids: Vec<Vertex> = tree.children(root).iter().copied().filter(|&c| active[c]).collect();
        if kids.is_empty() {
            break;
        }
        let subtrees: Vec<Vec<Vertex>> = kids.iter().map(|&c| active_subtree(&tree, &active, c)).collect();

        let mut tours = Strategy::empty(n);
        for &c in &kids {
            let steps = subtree_tour(&tree, &active, c);
            let walk = Strategy::new(n, steps.into_iter().map(|e| Matching::new([e])).collect());
            tours = tours.parallel_compose(&walk)?;
        }
        push(&tours, &mut state, &mut out);

        for sub in &subtrees {
            let x = visit_root(&tree, root, sub)?;
            push(&x.concat(&x.reverse()), &mut state, &mut out);
        }

        if active_count == kids.len() + 1 {
            break;
        }
        let batch: Vec<Vertex> = kids.clone();
        let targets: Vec<Vertex> = tree
            .bfs_order()
            .iter()
            .rev()
            .copied()
            .filter(|&v| active[v] && v != root)
            .take(batch.len())
            .collect();
        let region: Vec<Vertex> = (0..n).filter(|&v| active[v]).collect();
        let park = route_in_region(g, &region, &batch, &targets)?;
        push(&park, &mut state, &mut out);
        for &v in &targets {
            active[v] = false;
        }
        active_count -= targets.len();
    }
    finish_with_tours(g, &mut state, &mut out)?;
    Ok(out)
}

fn active_subtree(tree: &Tree, active: &[bool], v: Vertex) -> Vec<Vertex> {
    let mut out = vec![v];
    let mut i = 0;
    while i < out.len() {
        let u = out[i];
        out.extend(tree.children(u).iter().copied().filter(|&w| active[w]));
        i += 1;
    }
    out
}

fn subtree_tour(tree: &Tree, active: &[bool], v: Vertex) -> Vec<(Vertex, Vertex)> {
    let mut steps = Vec::new();
    let mut stack: Vec<(Vertex, usize)> = vec![(v, 0)];
    while let Some(&mut (u, ref mut next)) = stack.last_mut() {
        let kids = tree.children(u);
        while *next < kids.len() && !active[kids[*next]] {
            *next += 1;
        }
        if *next < kids.len() {
            let w = kids[*next];
            *next += 1;
            steps.push((u, w));
            stack.push((w, 0));
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                steps.push((u, p));
            }
        }
    }
    steps
}

/// Rounds inside `sub ∪ {root}` after which every agent that started in
/// `sub` has stood on `root`.
///
/// Hangs `|sub|` extra leaves on the root, routes the subtree onto them and
/// drops every swap that touches an extra leaf. Each extra leaf is entered
/// exactly once, by an agent standing on the root, so with those swaps
/// removed that agent is on the root at that moment; the other swaps act the
/// same with or without the leaves.
fn visit_root(tree: &Tree, root: Vertex, sub: &[Vertex]) -> Result<Strategy, StrategyError> {
    let k = sub.len();
    let n = tree.n();
    // local ids: 0 = root, 1..=k subtree, k+1..=2k extra leaves
    let mut local = vec![usize::MAX; n];
    local[root] = 0;
    for (i, &v) in sub.iter().enumerate() {
        local[v] = i + 1;
    }
    let mut edges = Vec::with_capacity(2 * k);
    for &v in sub {
        let p = tree.parent(v).expect("subtree vertices lie below the root");
        edges.push((local[p], local[v]));
    }
    edges.extend((k + 1..=2 * k).map(|leaf| (0, leaf)));
    let virtual_tree = Tree::new(Graph::new(2 * k + 1, edges)?, 0)?;
    let routed = route_on_tree(&RoutingTask {
        tree: virtual_tree,
        sources: (1..=k).collect(),
        targets: (k + 1..=2 * k).collect(),
    })?;
    let mut global = vec![root];
    global.extend(sub);
    let rounds = routed
        .rounds()
        .iter()
        .map(|m| {
            Matching::new(
                m.pairs()
                    .iter()
                    .filter(|&&(u, v)| u <= k && v <= k)
                    .map(|&(u, v)| (global[u], global[v])),
            )
        })
        .filter(|m| !m.is_empty())
        .collect();
    Ok(Strategy::new(n, rounds))
}

/// Which construction [`ac_upper_general`] used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneralBranch {
    LongPath,
    MaxDegree,
}

/// Output of [`ac_upper_general`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralStrategy {
    pub strategy: Strategy,
    pub branch: GeneralBranch,
    /// Largest `k` with `k^k <= n`.
    pub k: usize,
}

/// Largest `k` with `k^k <= n` (1 for `n <= 3`).
pub fn self_power_root(n: usize) -> usize {
    let mut k: usize = 1;
    while (k + 1).checked_pow(k as u32 + 1).is_some_and(|p| p <= n) {
        k += 1;
    }
    k
}

/// `O(n^2 / k)` strategy for any connected graph.
///
/// Either a path with at least `k` edges or a vertex of degree at least `k`
/// exists; the branch with the larger of the two parameters is used, the path
/// on ties.
pub fn ac_upper_general(g: &Graph) -> Result<GeneralStrategy, StrategyError> {
    g.require_connected()?;
    let n = g.n();
    let k = self_power_root(n);
    let path = long_path(g, LONG_PATH_EFFORT, 0);
    let path_edges = path.len().saturating_sub(1);
    let (strategy, branch) = if n <= 1 {
        (Strategy::empty(n), GeneralBranch::LongPath)
    } else if path_edges >= g.max_degree() {
        (long_path_strategy(g, &path)?, GeneralBranch::LongPath)
    } else {
        (max_degree_strategy(g)?, GeneralBranch::MaxDegree)
    };
    Ok(GeneralStrategy { strategy, branch, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::verify_acquaintance;
    use crate::graph::{generate, FamilySpec};

    fn fam(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    fn ok(g: &Graph, s: &Strategy) -> bool {
        verify_acquaintance(g, s).unwrap().ok
    }

    #[test]
    fn self_power_roots() {
        let got: Vec<usize> = [1, 3, 4, 26, 27, 255, 256, 3125]
            .iter()
            .map(|&n| self_power_root(n))
            .collect();
        assert_eq!(got, vec![1, 1, 2, 2, 3, 3, 4, 5]);
    }

    #[test]
    fn long_path_on_whole_path() {
        let g = fam(FamilySpec::Path(12));
        let path: Vec<Vertex> = (0..12).collect();
        assert!(ok(&g, &long_path_strategy(&g, &path).unwrap()));
        let short: Vec<Vertex> = (3..6).collect();
        assert!(ok(&g, &long_path_strategy(&g, &short).unwrap()));
        assert!(long_path_strategy(&g, &[0, 2]).is_err());
    }

    #[test]
    fn long_path_on_clique_ring_and_random() {
        let g = fam(FamilySpec::CliqueRing(4, 4));
        let path = long_path(&g, 5000, 1);
        assert!(ok(&g, &long_path_strategy(&g, &path).unwrap()));
        let g = fam(FamilySpec::Gnp(40, 0.2, 3));
        let path = long_path(&g, 5000, 1);
        assert!(ok(&g, &long_path_strategy(&g, &path).unwrap()));
    }

    #[test]
    fn max_degree_cases() {
        for spec in [
            FamilySpec::CompleteBipartite(1, 15),
            FamilySpec::Path(8),
            FamilySpec::Octopus(3, 3),
            FamilySpec::BinaryTree(4),
            FamilySpec::Gnp(30, 0.15, 9),
            FamilySpec::Complete(1),
            FamilySpec::Complete(2),
        ] {
            let g = fam(spec.clone());
            let s = max_degree_strategy(&g).unwrap();
            assert!(ok(&g, &s), "{spec:?}");
        }
    }

    #[test]
    fn star_needs_linear_rounds() {
        let g = fam(FamilySpec::CompleteBipartite(1, 40));
        let s = max_degree_strategy(&g).unwrap();
        assert!(s.len() <= 6 * 41, "{}", s.len());
    }

    #[test]
    fn branch_choice() {
        let star = fam(FamilySpec::CompleteBipartite(1, 20));
        let out = ac_upper_general(&star).unwrap();
        assert_eq!((out.branch, out.k), (GeneralBranch::MaxDegree, 2));
        assert!(ok(&star, &out.strategy));
        let p = fam(FamilySpec::Path(30));
        let out = ac_upper_general(&p).unwrap();
        assert_eq!(out.branch, GeneralBranch::LongPath);
        assert!(ok(&p, &out.strategy));
        assert!(ac_upper_general(&Graph::new(3, [(0, 1)]).unwrap()).is_err());
    }
}
