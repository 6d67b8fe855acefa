//! Moving a set of agents onto a set of target vertices of a tree.

use std::collections::VecDeque;

use thiserror::Error;

use crate::dynamics::{Matching, Strategy};
use crate::graph::{spanning_tree, Graph, Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoutingError {
    #[error("{sources} sources but {targets} targets")]
    SizeMismatch { sources: usize, targets: usize },
    #[error("vertex {0} is not in the tree")]
    OutOfRange(Vertex),
    #[error("vertex {0} is listed twice")]
    Duplicate(Vertex),
    #[error("routing region is not connected")]
    RegionDisconnected,
}

/// Route the agents on `sources` so that afterwards they occupy `targets`.
#[derive(Debug, Clone)]
pub struct RoutingTask {
    pub tree: Tree,
    pub sources: Vec<Vertex>,
    pub targets: Vec<Vertex>,
}

impl RoutingTask {
    pub fn k(&self) -> usize {
        self.sources.len()
    }

    /// Largest source-target distance.
    pub fn ell(&self) -> usize {
        let mut best = 0;
        for &s in &self.sources {
            for &t in &self.targets {
                best = best.max(self.tree.distance(s, t));
            }
        }
        best
    }
}

fn normalise(tree: &Tree, set: &[Vertex]) -> Result<Vec<Vertex>, RoutingError> {
    let mut out = set.to_vec();
    out.sort_unstable();
    for w in out.windows(2) {
        if w[0] == w[1] {
            return Err(RoutingError::Duplicate(w[0]));
        }
    }
    if let Some(&v) = out.iter().find(|&&v| v >= tree.n()) {
        return Err(RoutingError::OutOfRange(v));
    }
    Ok(out)
}

/// Strategy of at most `ell + 2(k - 1)` rounds after which the agents that
/// started on the sources sit on the targets, in some order. Every swap moves
/// at least one of those agents, and all swaps stay inside the smallest
/// subtree spanning sources and targets.
pub fn route_on_tree(task: &RoutingTask) -> Result<Strategy, RoutingError> {
    if task.sources.len() != task.targets.len() {
        return Err(RoutingError::SizeMismatch {
            sources: task.sources.len(),
            targets: task.targets.len(),
        });
    }
    let s = normalise(&task.tree, &task.sources)?;
    let t = normalise(&task.tree, &task.targets)?;
    let rounds = Router { tree: &task.tree }.route(&s, &t);
    Ok(Strategy::new(
        task.tree.n(),
        rounds.into_iter().map(Matching::new).collect(),
    ))
}

/// Routes inside the subgraph of `g` induced by `region`, using its BFS
/// spanning tree. Returns rounds on the vertex ids of `g`.
pub fn route_in_region(
    g: &Graph,
    region: &[Vertex],
    sources: &[Vertex],
    targets: &[Vertex],
) -> Result<Strategy, RoutingError> {
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in region.iter().enumerate() {
        local[v] = i;
    }
    let to_local = |set: &[Vertex]| -> Result<Vec<Vertex>, RoutingError> {
        set.iter()
            .map(|&v| match local.get(v) {
                Some(&l) if l != usize::MAX => Ok(l),
                _ => Err(RoutingError::OutOfRange(v)),
            })
            .collect()
    };
    let sources = to_local(sources)?;
    let targets = to_local(targets)?;
    let sub = g.induced(region);
    let tree = spanning_tree(&sub).map_err(|_| RoutingError::RegionDisconnected)?;
    let s = route_on_tree(&RoutingTask { tree, sources, targets })?;
    Ok(s.relabel(region, g.n()))
}

struct Router<'a> {
    tree: &'a Tree,
}

type Rounds = VecDeque<Vec<(Vertex, Vertex)>>;

impl Router<'_> {
    /// Vertices of the smallest subtree containing `set`: ancestors of a
    /// member that lie below the deepest common ancestor of all members.
    fn span(&self, set: &[Vertex]) -> Vec<bool> {
        let n = self.tree.n();
        let mut count = vec![0usize; n];
        for &x in set {
            count[x] += 1;
        }
        for &v in self.tree.bfs_order().iter().rev() {
            if let Some(p) = self.tree.parent(v) {
                count[p] += count[v];
            }
        }
        let top = self
            .tree
            .bfs_order()
            .iter()
            .rev()
            .find(|&&v| count[v] == set.len())
            .copied();
        let mut mark = vec![false; n];
        if let Some(top) = top {
            let d = self.tree.depth(top);
            for v in 0..n {
                mark[v] = count[v] > 0 && self.tree.depth(v) >= d;
            }
        }
        mark
    }

    /// Distance from every vertex to the nearest member of `set`.
    fn dist_to_set(&self, set: &[Vertex]) -> Vec<usize> {
        let g = self.tree.graph();
        let mut dist = vec![usize::MAX; g.n()];
        let mut queue: VecDeque<Vertex> = set.iter().copied().collect();
        for &x in set {
            dist[x] = 0;
        }
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn route(&self, s: &[Vertex], t: &[Vertex]) -> Rounds {
        if s == t {
            return Rounds::new();
        }
        let span_t = self.span(t);
        let outside: Vec<Vertex> = s.iter().copied().filter(|&v| !span_t[v]).collect();
        if !outside.is_empty() {
            // farthest source from T; it is a leaf of span(S ∪ T), so the
            // remaining routing never touches it
            let dist = self.dist_to_set(t);
            let (_, s_star) = outside.iter().map(|&v| (std::cmp::Reverse(dist[v]), v)).min().unwrap();
            let from_star = self.dist_to_set(&[s_star]);
            let t_star = *t.iter().min_by_key(|&&v| (from_star[v], v)).unwrap();
            let path = self.tree.path(s_star, t_star);
            let r = path.len() - 2;
            let rest_s: Vec<Vertex> = s.iter().copied().filter(|&v| v != s_star).collect();
            let rest_t: Vec<Vertex> = t.iter().copied().filter(|&v| v != t_star).collect();
            let mut rounds = self.route(&rest_s, &rest_t);
            let target_len = rounds.len().max(r.saturating_sub(1));
            while rounds.len() < target_len {
                rounds.push_front(Vec::new());
            }
            rounds.push_back(Vec::new());
            rounds.push_back(Vec::new());
            // the walker leaves s* once the vertices ahead of it are clear
            let base = target_len + 1 - r;
            for i in 0..=r {
                rounds[base + i].push((path[i], path[i + 1]));
            }
            rounds.retain(|m| !m.is_empty());
            return rounds;
        }
        let span_s = self.span(s);
        if t.iter().any(|&v| !span_s[v]) {
            let mut rounds = self.route(t, s);
            rounds.make_contiguous().reverse();
            return rounds;
        }
        // equal spans: a leaf of the span is both a source and a target
        let x = (0..self.tree.n())
            .find(|&v| span_s[v] && self.tree.graph().neighbors(v).iter().filter(|&&w| span_s[w]).count() <= 1)
            .unwrap();
        debug_assert!(s.contains(&x) && t.contains(&x));
        let rest_s: Vec<Vertex> = s.iter().copied().filter(|&v| v != x).collect();
        let rest_t: Vec<Vertex> = t.iter().copied().filter(|&v| v != x).collect();
        self.route(&rest_s, &rest_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{validate_matching, Placement};
    use crate::graph::{generate, FamilySpec};

    fn run(tree: &Tree, s: &[Vertex], t: &[Vertex]) -> Strategy {
        let task = RoutingTask {
            tree: tree.clone(),
            sources: s.to_vec(),
            targets: t.to_vec(),
        };
        let out = route_on_tree(&task).unwrap();
        let bound = task.ell() + 2 * (task.k().max(1) - 1);
        assert!(out.len() <= bound, "{} > {bound}", out.len());
        let mut p = Placement::identity(tree.n());
        for m in out.rounds() {
            validate_matching(tree.graph(), m).unwrap();
            p.apply(m);
        }
        let mut ends: Vec<Vertex> = s.iter().map(|&a| p.vertex_of(a)).collect();
        ends.sort_unstable();
        let mut want = t.to_vec();
        want.sort_unstable();
        assert_eq!(ends, want);
        out
    }

    fn tree_of(spec: FamilySpec) -> Tree {
        spanning_tree(&generate(&spec).unwrap()).unwrap()
    }

    #[test]
    fn single_walk_on_a_path() {
        let t = tree_of(FamilySpec::Path(4));
        assert_eq!(run(&t, &[0], &[3]).len(), 3);
    }

    #[test]
    fn identical_sets_need_nothing() {
        let t = tree_of(FamilySpec::BinaryTree(3));
        assert_eq!(run(&t, &[1, 4, 9], &[9, 1, 4]).len(), 0);
    }

    #[test]
    fn crossing_a_binary_tree() {
        let t = tree_of(FamilySpec::BinaryTree(3));
        let left: Vec<Vertex> = t.subtree(1);
        let right: Vec<Vertex> = t.subtree(2);
        run(&t, &left, &right);
        run(&t, &[3, 4, 5], &[0, 1, 2]);
        run(&t, &[0, 1, 2], &[7, 8, 14]);
    }

    #[test]
    fn overlapping_sets_on_a_path() {
        let t = tree_of(FamilySpec::Path(10));
        run(&t, &[0, 1, 2, 3, 4], &[3, 4, 5, 6, 7]);
        run(&t, &[2, 9], &[0, 5]);
    }

    #[test]
    fn bad_tasks() {
        let t = tree_of(FamilySpec::Path(4));
        let task = |s: Vec<Vertex>, d: Vec<Vertex>| RoutingTask {
            tree: t.clone(),
            sources: s,
            targets: d,
        };
        assert_eq!(
            route_on_tree(&task(vec![0], vec![1, 2])),
            Err(RoutingError::SizeMismatch { sources: 1, targets: 2 })
        );
        assert_eq!(
            route_on_tree(&task(vec![0, 0], vec![1, 2])),
            Err(RoutingError::Duplicate(0))
        );
        assert_eq!(route_on_tree(&task(vec![7], vec![1])), Err(RoutingError::OutOfRange(7)));
    }

    #[test]
    fn region_routing_uses_global_ids() {
        let g = generate(&FamilySpec::Cycle(8)).unwrap();
        let s = route_in_region(&g, &[2, 3, 4, 5], &[2], &[5]).unwrap();
        assert_eq!(s.n(), 8);
        assert_eq!(s.len(), 3);
        for m in s.rounds() {
            validate_matching(&g, m).unwrap();
        }
    }
}
