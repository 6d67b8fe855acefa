use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{distances, Graph, Vertex};

/// True iff `path` is nonempty, repeats no vertex, and every consecutive pair
/// is an edge of `g`.
pub fn is_simple_path(g: &Graph, path: &[Vertex]) -> bool {
    if path.is_empty() {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in path {
        if v >= g.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// Vertex list of the longest shortest-path found by a double BFS sweep.
fn sweep_path(g: &Graph) -> Vec<Vertex> {
    let far = |src: Vertex| {
        let d = distances(g, src);
        let (v, _) = d
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|d| (v, d)))
            .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
            .unwrap();
        (v, d)
    };
    let (a, _) = far(0);
    let (b, da) = far(a);
    // walk back from b to a along decreasing distance
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        let dc = da[cur].unwrap();
        cur = *g.neighbors(cur).iter().find(|&&w| da[w] == Some(dc - 1)).unwrap();
        path.push(cur);
    }
    path
}

/// Longest root-to-leaf path of the BFS tree from vertex 0.
fn bfs_tree_path(g: &Graph) -> Vec<Vertex> {
    let d = distances(g, 0);
    let mut cur = (0..g.n()).filter(|&v| d[v].is_some()).max_by_key(|&v| d[v]).unwrap();
    let mut path = vec![cur];
    while cur != 0 {
        let dc = d[cur].unwrap();
        cur = *g.neighbors(cur).iter().find(|&&w| d[w] == Some(dc - 1)).unwrap();
        path.push(cur);
    }
    path.reverse();
    path
}

/// Best-effort long simple path.
///
/// Starts from the BFS-tree baseline and spends up to `effort` elementary
/// steps on randomised greedy extension with Pósa rotations. Deterministic for
/// a given seed.
pub fn long_path(g: &Graph, effort: usize, seed: u64) -> Vec<Vertex> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut best = bfs_tree_path(g);
    let sweep = sweep_path(g);
    if sweep.len() > best.len() {
        best = sweep;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut budget = effort;
    while budget > 0 && best.len() < n {
        let start = rng.gen_range(0..n);
        let path = grow(g, start, &mut budget, &mut rng);
        if path.len() > best.len() {
            best = path;
        }
    }
    debug_assert!(is_simple_path(g, &best));
    best
}

fn grow(g: &Graph, start: Vertex, budget: &mut usize, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
    let n = g.n();
    let mut on = vec![false; n];
    let mut path = vec![start];
    on[start] = true;
    let mut flipped = false;
    let mut stalls = 0;
    while *budget > 0 && path.len() < n {
        *budget -= 1;
        let end = *path.last().unwrap();
        // Warnsdorff: prefer the free neighbour with the fewest free neighbours
        let mut options: Vec<Vertex> = g.neighbors(end).iter().copied().filter(|&w| !on[w]).collect();
        if !options.is_empty() {
            options.shuffle(rng);
            let next = *options
                .iter()
                .min_by_key(|&&w| g.neighbors(w).iter().filter(|&&x| !on[x]).count())
                .unwrap();
            on[next] = true;
            path.push(next);
            stalls = 0;
            continue;
        }
        if !flipped {
            path.reverse();
            flipped = true;
            continue;
        }
        stalls += 1;
        if stalls > 2 * n {
            break;
        }
        let pivots: Vec<usize> = g
            .neighbors(end)
            .iter()
            .filter(|&&w| on[w])
            .map(|&w| path.iter().position(|&x| x == w).unwrap())
            .filter(|&i| i + 2 < path.len())
            .collect();
        if pivots.is_empty() {
            break;
        }
        let i = pivots[rng.gen_range(0..pivots.len())];
        path[i + 1..].reverse();
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    #[test]
    fn finds_hamiltonian_paths_on_easy_graphs() {
        let p = generate(&FamilySpec::Path(10)).unwrap();
        let path = long_path(&p, 1000, 0);
        assert_eq!(path.len(), 10);
        assert!(is_simple_path(&p, &path));

        let k = generate(&FamilySpec::Complete(6)).unwrap();
        assert_eq!(long_path(&k, 1000, 3).len(), 6);
    }

    #[test]
    fn gnp_path_is_valid_and_reproducible() {
        let g = generate(&FamilySpec::Gnp(50, 0.3, 1)).unwrap();
        let a = long_path(&g, 5000, 9);
        assert!(is_simple_path(&g, &a));
        assert_eq!(a, long_path(&g, 5000, 9));
    }

    #[test]
    fn zero_effort_keeps_baseline() {
        let g = generate(&FamilySpec::BinaryTree(3)).unwrap();
        let path = long_path(&g, 0, 0);
        assert!(is_simple_path(&g, &path));
        // leaf to leaf through the root
        assert_eq!(path.len(), 7);
        assert_eq!(long_path(&generate(&FamilySpec::Path(1)).unwrap(), 10, 0), vec![0]);
    }

    #[test]
    fn predicate_rejects_bad_paths() {
        let g = generate(&FamilySpec::Path(4)).unwrap();
        assert!(!is_simple_path(&g, &[]));
        assert!(!is_simple_path(&g, &[0, 2]));
        assert!(!is_simple_path(&g, &[0, 1, 0]));
        assert!(is_simple_path(&g, &[2, 1, 0]));
    }
}
