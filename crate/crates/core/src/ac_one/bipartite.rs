use crate::dynamics::Matching;
use crate::graph::{Graph, Vertex};

use super::{AcOneError, Certificate};

/// Maximum matching between `left` and the vertices flagged in `right`, by
/// augmenting paths. Left vertices are tried in the given order and their
/// neighbours in ascending order. Returns `(left, right)` pairs.
pub(crate) fn max_bipartite(g: &Graph, left: &[Vertex], right: &[bool]) -> Vec<(Vertex, Vertex)> {
    let n = g.n();
    let mut owner: Vec<Option<Vertex>> = vec![None; n];
    let mut stamp = vec![usize::MAX; n];
    for (round, &l) in left.iter().enumerate() {
        augment(g, l, right, &mut owner, &mut stamp, round);
    }
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n).filter_map(|r| owner[r].map(|l| (l, r))).collect();
    pairs.sort_unstable();
    pairs
}

fn augment(
    g: &Graph,
    start: Vertex,
    right: &[bool],
    owner: &mut [Option<Vertex>],
    stamp: &mut [usize],
    round: usize,
) -> bool {
    // iterative DFS over alternating paths; frames are (left vertex, next neighbour index)
    let mut stack: Vec<(Vertex, usize)> = vec![(start, 0)];
    let mut via: Vec<Vertex> = Vec::new();
    while let Some(&mut (l, ref mut next)) = stack.last_mut() {
        let nbrs = g.neighbors(l);
        let mut advanced = false;
        while *next < nbrs.len() {
            let r = nbrs[*next];
            *next += 1;
            if !right[r] || stamp[r] == round {
                continue;
            }
            stamp[r] = round;
            match owner[r] {
                None => {
                    // flip the path
                    owner[r] = Some(l);
                    for (depth, &rv) in via.iter().enumerate().rev() {
                        owner[rv] = Some(stack[depth].0);
                    }
                    return true;
                }
                Some(other) => {
                    via.push(r);
                    stack.push((other, 0));
                    advanced = true;
                    break;
                }
            }
        }
        if !advanced {
            stack.pop();
            via.pop();
        }
    }
    false
}

/// Maximum matching between `w` and `u`; fails with a certificate when it has
/// fewer than `|W| - 1` edges. Pairs are `(w, u)` edges of `g`.
pub fn transfer_matching(g: &Graph, u: &[Vertex], w: &[Vertex]) -> Result<Matching, AcOneError> {
    let mut in_u = vec![false; g.n()];
    for &x in u {
        in_u[x] = true;
    }
    if let Some(&x) = w.iter().find(|&&x| in_u[x]) {
        return Err(AcOneError::NotAPartition(format!("vertex {x} is in both U and W")));
    }
    let mut left = w.to_vec();
    left.sort_unstable();
    let pairs = max_bipartite(g, &left, &in_u);
    let needed = w.len().saturating_sub(1);
    if pairs.len() < needed {
        return Err(AcOneError::AtLeastTwo(Certificate::Transfer {
            needed,
            found: pairs.len(),
        }));
    }
    Ok(Matching::new(pairs))
}

/// One round after which the agent now on `v` has met every other agent,
/// or `None` if no such round exists (so the acquaintance time is at least 2).
///
/// Either the agent stays and every non-neighbour of `v` is pulled into
/// `N(v)`, or it steps to a neighbour `u` (ascending) and every vertex outside
/// `N(v) ∪ N(u)` is pulled into `N(v) ∩ N(u)`.
pub fn meet_all_matching(g: &Graph, v: Vertex) -> Option<Matching> {
    let n = g.n();
    let mut in_nv = vec![false; n];
    for &x in g.neighbors(v) {
        in_nv[x] = true;
    }
    let far: Vec<Vertex> = (0..n).filter(|&x| x != v && !in_nv[x]).collect();
    let pairs = max_bipartite(g, &far, &in_nv);
    if pairs.len() == far.len() {
        return Some(Matching::new(pairs));
    }
    for &u in g.neighbors(v) {
        let mut both = vec![false; n];
        let mut in_nu = vec![false; n];
        for &x in g.neighbors(u) {
            in_nu[x] = true;
            both[x] = in_nv[x];
        }
        let far: Vec<Vertex> = (0..n).filter(|&x| !in_nv[x] && !in_nu[x]).collect();
        let pairs = max_bipartite(g, &far, &both);
        if pairs.len() == far.len() {
            let mut all = pairs;
            all.push((v, u));
            return Some(Matching::new(all));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{AcquaintanceState, Placement};
    use crate::graph::{generate, FamilySpec};

    fn fam(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    fn meets_all(g: &Graph, v: Vertex, m: &Matching) -> bool {
        let mut s = AcquaintanceState::new(g);
        let agent = Placement::identity(g.n()).agent_at(v);
        s.apply_round(g, m).unwrap();
        s.is_complete(agent)
    }

    #[test]
    fn augmenting_paths_find_maximum() {
        // path 0-1-2-3: left {0, 2}, right {1, 3}; greedy 2->1 would block 0
        let g = fam(FamilySpec::Path(4));
        let right = [false, true, false, true];
        let pairs = max_bipartite(&g, &[2, 0], &right);
        assert_eq!(pairs.len(), 2);
        let g = fam(FamilySpec::CompleteBipartite(5, 5));
        let mut right = vec![false; 10];
        right[5..].fill(true);
        assert_eq!(max_bipartite(&g, &[0, 1, 2, 3, 4], &right).len(), 5);
    }

    #[test]
    fn transfer_sizes() {
        let g = fam(FamilySpec::Complete(6));
        assert!(transfer_matching(&g, &[0, 1, 2], &[]).unwrap().is_empty());
        assert_eq!(transfer_matching(&g, &[0, 1, 2], &[3, 4, 5]).unwrap().len(), 3);
        let star = fam(FamilySpec::CompleteBipartite(1, 5));
        assert!(transfer_matching(&star, &[0], &[1]).is_ok());
        assert!(matches!(
            transfer_matching(&star, &[0], &[1, 2, 3]),
            Err(AcOneError::AtLeastTwo(Certificate::Transfer { needed: 2, found: 1 }))
        ));
        assert!(transfer_matching(&star, &[0], &[0]).is_err());
    }

    #[test]
    fn meet_all_cases() {
        let k4 = fam(FamilySpec::Complete(4));
        assert!(meet_all_matching(&k4, 2).unwrap().is_empty());

        let c4 = fam(FamilySpec::Cycle(4));
        let m = meet_all_matching(&c4, 0).unwrap();
        // staying put works: 2 is pulled into N(0)
        assert_eq!(m.pairs(), &[(1, 2)]);
        assert!(meets_all(&c4, 0, &m));
        // a leaf of a star has to step onto the center
        let star = fam(FamilySpec::CompleteBipartite(1, 3));
        let m = meet_all_matching(&star, 1).unwrap();
        assert_eq!(m.pairs(), &[(0, 1)]);
        assert!(meets_all(&star, 1, &m));

        let p4 = fam(FamilySpec::Path(4));
        assert_eq!(meet_all_matching(&p4, 0), None);

        let g = fam(FamilySpec::Gnp(14, 0.7, 5));
        for v in 0..14 {
            if let Some(m) = meet_all_matching(&g, v) {
                assert!(meets_all(&g, v, &m), "v={v}");
            }
        }
    }
}
