use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{AcquaintanceState, Agent, Matching, Strategy};
use crate::graph::{Graph, Vertex};

use super::bipartite::{max_bipartite, meet_all_matching};
use super::{high_degree_set, structure_audit, AcOneError, Certificate};

/// Restarts (with seeds `seed + 1, seed + 2, ...`) before giving up.
pub const MAX_RESTARTS: usize = 8;

/// Default cap on double rounds per group pair: `200 * ceil(log2 n)`.
pub fn default_round_cap(n: usize) -> usize {
    200 * (n.max(2).next_power_of_two().trailing_zeros() as usize)
}

/// One random matching incident to `u`.
///
/// Every `x` in `u` (ascending) proposes itself with probability 1/2 and
/// otherwise a uniform neighbour. Proposals are then scanned in a uniformly
/// random order and accepted when both endpoints are still unused; accepted
/// proposals mark both endpoints used, and only proposals to a neighbour
/// become pairs.
pub fn random_matching(g: &Graph, u: &[Vertex], seed: u64) -> Matching {
    random_matching_with(g, u, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub(crate) fn random_matching_with(g: &Graph, u: &[Vertex], rng: &mut ChaCha8Rng) -> Matching {
    let mut order: Vec<Vertex> = u.to_vec();
    order.sort_unstable();
    let proposals: Vec<(Vertex, Vertex)> = order
        .iter()
        .map(|&x| {
            let nbrs = g.neighbors(x);
            if nbrs.is_empty() || rng.gen_bool(0.5) {
                (x, x)
            } else {
                (x, nbrs[rng.gen_range(0..nbrs.len())])
            }
        })
        .collect();
    let mut sigma: Vec<usize> = (0..proposals.len()).collect();
    sigma.shuffle(rng);
    let mut used = vec![false; g.n()];
    let mut pairs = Vec::new();
    for i in sigma {
        let (x, y) = proposals[i];
        if used[x] || used[y] {
            continue;
        }
        used[x] = true;
        used[y] = true;
        if x != y {
            pairs.push((x, y));
        }
    }
    Matching::new(pairs)
}

/// Result of [`randomized_strategy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomizedRun {
    pub strategy: Strategy,
    /// Seed of the attempt that succeeded.
    pub seed: u64,
    pub restarts: usize,
}

/// `O(log n)` rounds with high probability on a graph of acquaintance time one.
///
/// Agents are split by id into groups of `floor(|U|/2)`, `U` the high-degree
/// set. For every pair of groups, their agents outside `U` are moved into `U`
/// by one transfer round; an agent left behind gets a meet-all round applied
/// twice. Random matchings on `U`, each applied twice, are then repeated until
/// every two agents of the pair have met, and the transfer round is undone.
/// An attempt that hits `round_cap` double rounds on some pair is restarted
/// with the next seed.
pub fn randomized_strategy(g: &Graph, seed: u64, round_cap: Option<usize>) -> Result<RandomizedRun, AcOneError> {
    g.require_connected()?;
    let audit = structure_audit(g, None)?;
    if let Some(cert) = audit.certificate() {
        return Err(AcOneError::AtLeastTwo(cert));
    }
    let n = g.n();
    let u = high_degree_set(g);
    if n > 1 && u.len() < n / 2 {
        return Err(AcOneError::AtLeastTwo(Certificate::Audit {
            failed: vec!["high_degree".into()],
        }));
    }
    let cap = round_cap.unwrap_or_else(|| default_round_cap(n));
    for restart in 0..=MAX_RESTARTS {
        let s = seed.wrapping_add(restart as u64);
        if let Some(strategy) = attempt(g, &u, s, cap)? {
            return Ok(RandomizedRun {
                strategy,
                seed: s,
                restarts: restart,
            });
        }
    }
    Err(AcOneError::RestartsExhausted { restarts: MAX_RESTARTS })
}

fn attempt(g: &Graph, u: &[Vertex], seed: u64, cap: usize) -> Result<Option<Strategy>, AcOneError> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = AcquaintanceState::new(g);
    let mut out = Strategy::empty(n);
    if state.all_met() {
        return Ok(Some(out));
    }
    let size = (u.len() / 2).max(1);
    let agents: Vec<Agent> = (0..n).collect();
    let groups: Vec<&[Agent]> = agents.chunks(size).collect();
    let pairs: Vec<(usize, usize)> = if groups.len() == 1 {
        vec![(0, 0)]
    } else {
        (0..groups.len())
            .flat_map(|i| (i + 1..groups.len()).map(move |j| (i, j)))
            .collect()
    };
    let mut in_u = vec![false; n];
    for &x in u {
        in_u[x] = true;
    }
    let push = |m: Matching, state: &mut AcquaintanceState, out: &mut Strategy| {
        if !m.is_empty() {
            state.apply_unchecked(g, &m);
            out.push(m);
        }
    };
    for (i, j) in pairs {
        let mut members: Vec<Agent> = groups[i].to_vec();
        if j != i {
            members.extend(groups[j]);
        }
        if all_met(&state, &members) {
            continue;
        }
        let p = state.placement();
        let outside: Vec<Vertex> = members.iter().map(|&a| p.vertex_of(a)).filter(|&v| !in_u[v]).collect();
        let mut free = in_u.clone();
        for &a in &members {
            free[p.vertex_of(a)] = false;
        }
        let transfer = Matching::new(max_bipartite(g, &outside, &free));
        if transfer.len() + 1 < outside.len() {
            return Err(AcOneError::AtLeastTwo(Certificate::Transfer {
                needed: outside.len() - 1,
                found: transfer.len(),
            }));
        }
        push(transfer.clone(), &mut state, &mut out);

        for &a in &members {
            let v = state.placement().vertex_of(a);
            if in_u[v] || state.is_complete(a) {
                continue;
            }
            let m = meet_all_matching(g, v).ok_or(AcOneError::AtLeastTwo(Certificate::MeetAll { vertex: v }))?;
            push(m.clone(), &mut state, &mut out);
            push(m, &mut state, &mut out);
        }

        let mut doubles = 0;
        while !all_met(&state, &members) {
            if doubles == cap {
                return Ok(None);
            }
            let m = random_matching_with(g, u, &mut rng);
            push(m.clone(), &mut state, &mut out);
            push(m, &mut state, &mut out);
            doubles += 1;
        }
        push(transfer, &mut state, &mut out);
    }
    Ok(state.all_met().then_some(out))
}

fn all_met(state: &AcquaintanceState, members: &[Agent]) -> bool {
    members
        .iter()
        .enumerate()
        .all(|(x, &a)| members[x + 1..].iter().all(|&b| state.has_met(a, b)))
}
