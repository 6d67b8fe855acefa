use crate::dynamics::{AcquaintanceState, Agent, Matching, Strategy};
use crate::graph::{Graph, Vertex};

use super::bipartite::meet_all_matching;
use super::{structure_audit, AcOneError, Certificate};

/// Largest accepted `c`; the final search is `O(n^(c+1))`.
pub const MAX_C: usize = 3;

/// At most `n - c` rounds on a graph of acquaintance time one.
///
/// While more than `c + 1` agents are incomplete, the smallest incomplete
/// agent gets a meet-all round at its current vertex. The last `c + 1` are
/// finished by one matching found by exhaustive search; if none exists the
/// per-agent loop simply continues. Any missing meet-all round certifies that
/// the acquaintance time is at least two.
pub fn deterministic_strategy(g: &Graph, c: usize) -> Result<Strategy, AcOneError> {
    if c == 0 || c > MAX_C {
        return Err(AcOneError::BadC { c, max: MAX_C });
    }
    g.require_connected()?;
    let audit = structure_audit(g, None)?;
    if let Some(cert) = audit.certificate() {
        return Err(AcOneError::AtLeastTwo(cert));
    }
    let mut state = AcquaintanceState::new(g);
    let mut out = Strategy::empty(g.n());
    let mut tried_final = false;
    loop {
        let incomplete: Vec<Agent> = (0..g.n()).filter(|&a| !state.is_complete(a)).collect();
        if incomplete.is_empty() {
            break;
        }
        if incomplete.len() <= c + 1 && !tried_final {
            tried_final = true;
            if let Some(m) = finishing_matching(g, &state, &incomplete) {
                state.apply_unchecked(g, &m);
                out.push(m);
                continue;
            }
        }
        let v = state.placement().vertex_of(incomplete[0]);
        let m = meet_all_matching(g, v).ok_or(AcOneError::AtLeastTwo(Certificate::MeetAll { vertex: v }))?;
        state.apply_unchecked(g, &m);
        out.push(m);
    }
    Ok(out)
}

/// A matching that moves only the vertices holding `agents` (each stays or
/// swaps with a neighbour) and leaves every pair among them acquainted.
fn finishing_matching(g: &Graph, state: &AcquaintanceState, agents: &[Agent]) -> Option<Matching> {
    let p = state.placement();
    let spots: Vec<Vertex> = agents.iter().map(|&a| p.vertex_of(a)).collect();
    let mut dest = vec![usize::MAX; agents.len()];
    let mut used = vec![false; g.n()];
    search(g, state, agents, &spots, 0, &mut dest, &mut used)
}

fn search(
    g: &Graph,
    state: &AcquaintanceState,
    agents: &[Agent],
    spots: &[Vertex],
    i: usize,
    dest: &mut Vec<Vertex>,
    used: &mut Vec<bool>,
) -> Option<Matching> {
    if i == agents.len() {
        let ok = (0..agents.len()).all(|x| {
            (x + 1..agents.len()).all(|y| state.has_met(agents[x], agents[y]) || g.has_edge(dest[x], dest[y]))
        });
        return ok.then(|| {
            Matching::new(
                spots
                    .iter()
                    .zip(dest.iter())
                    .filter(|(s, d)| s < d)
                    .map(|(&s, &d)| (s, d)),
            )
        });
    }
    let s = spots[i];
    if dest[i] != usize::MAX {
        // already fixed by a swap with an earlier agent
        return search(g, state, agents, spots, i + 1, dest, used);
    }
    let options = std::iter::once(s).chain(g.neighbors(s).iter().copied());
    for t in options {
        if used[t] || (t != s && used[s]) {
            continue;
        }
        // a swap partner that holds another listed agent moves to s
        let partner = spots.iter().position(|&x| x == t).filter(|&j| j != i);
        if let Some(j) = partner {
            if j < i || dest[j] != usize::MAX {
                continue;
            }
            dest[j] = s;
        }
        dest[i] = t;
        used[s] = true;
        used[t] = true;
        if let Some(m) = search(g, state, agents, spots, i + 1, dest, used) {
            return Some(m);
        }
        used[s] = false;
        used[t] = false;
        dest[i] = usize::MAX;
        if let Some(j) = partner {
            dest[j] = usize::MAX;
        }
    }
    None
}
