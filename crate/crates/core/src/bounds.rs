//! Certified lower bounds on the acquaintance time.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{diameter, Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("separator must be nonempty")]
    EmptySeparator,
    #[error("separator must leave at least one vertex")]
    SeparatorIsEverything,
    #[error("separator vertex {0} out of range")]
    OutOfRange(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bottleneck {
    pub bound: usize,
    pub separator: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub diameter_bound: usize,
    pub edge_bound: usize,
    pub bottleneck: Option<Bottleneck>,
    pub best_lower: usize,
}

/// `floor(diam / 2)` and `ceil(C(n, 2) / |E|) - 1`.
pub fn lower_bounds(g: &Graph) -> Result<BoundsReport, BoundsError> {
    let diam = diameter(g)?;
    let n = g.n();
    let pairs = n * n.saturating_sub(1) / 2;
    let edge_bound = if g.m() == 0 { 0 } else { pairs.div_ceil(g.m()) - 1 };
    let diameter_bound = diam / 2;
    Ok(BoundsReport {
        diameter_bound,
        edge_bound,
        bottleneck: None,
        best_lower: diameter_bound.max(edge_bound),
    })
}

/// Potential-counting bound from a separator `S`.
///
/// Let `l` be the largest component of `G - S`. Count, over ordered agent
/// pairs, those acquainted initially or sharing a component of `G - S`; all
/// `n(n-1)` must eventually be counted. In one round an agent that leaves `S`
/// joins at most `l - 1` others, and an agent arriving on `s` meets at most
/// `deg(s)` neighbours; each new unordered pair adds two ordered pairs, so the
/// count grows by at most `2(|S|(l-1) + sum deg(s))` per round.
pub fn bottleneck_bound(g: &Graph, separator: &[Vertex]) -> Result<usize, BoundsError> {
    let n = g.n();
    if separator.is_empty() {
        return Err(BoundsError::EmptySeparator);
    }
    let mut removed = vec![false; n];
    for &s in separator {
        if s >= n {
            return Err(BoundsError::OutOfRange(s));
        }
        removed[s] = true;
    }
    let size = removed.iter().filter(|&&r| r).count();
    if size == n {
        return Err(BoundsError::SeparatorIsEverything);
    }
    g.require_connected()?;
    let comps = g.components_avoiding(&removed);
    let l = comps.iter().map(Vec::len).max().unwrap();
    let co_component: usize = comps.iter().map(|c| c.len() * (c.len() - 1)).sum();
    let touching = g.edges().iter().filter(|&&(u, v)| removed[u] || removed[v]).count();
    let initial = co_component + 2 * touching;
    let deg_sum: usize = (0..n).filter(|&v| removed[v]).map(|v| g.degree(v)).sum();
    let per_round = 2 * (size * (l - 1) + deg_sum);
    let deficit = n * (n - 1) - initial;
    Ok(if deficit == 0 { 0 } else { deficit.div_ceil(per_round) })
}

/// Tries every single vertex and the `j` highest-degree vertices for
/// `j = 1..=max_top`; returns the best separator found.
pub fn best_bottleneck(g: &Graph, max_top: usize) -> Result<Option<Bottleneck>, BoundsError> {
    let n = g.n();
    if n < 2 {
        return Ok(None);
    }
    let mut candidates: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
    let mut by_degree: Vec<Vertex> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for j in 2..=max_top.min(n - 1) {
        let mut sep = by_degree[..j].to_vec();
        sep.sort_unstable();
        candidates.push(sep);
    }
    let mut best: Option<Bottleneck> = None;
    for sep in candidates {
        let bound = bottleneck_bound(g, &sep)?;
        if best.as_ref().is_none_or(|b| bound > b.bound) {
            best = Some(Bottleneck { bound, separator: sep });
        }
    }
    Ok(best)
}

/// Diameter, edge and heuristic bottleneck bounds together.
pub fn full_report(g: &Graph) -> Result<BoundsReport, BoundsError> {
    let mut report = lower_bounds(g)?;
    report.bottleneck = best_bottleneck(g, 8)?;
    if let Some(b) = &report.bottleneck {
        report.best_lower = report.best_lower.max(b.bound);
    }
    Ok(report)
}

/// Report using a caller-chosen separator.
pub fn report_with_separator(g: &Graph, separator: &[Vertex]) -> Result<BoundsReport, BoundsError> {
    let mut report = lower_bounds(g)?;
    let bound = bottleneck_bound(g, separator)?;
    let mut sep = separator.to_vec();
    sep.sort_unstable();
    sep.dedup();
    report.best_lower = report.best_lower.max(bound);
    report.bottleneck = Some(Bottleneck { bound, separator: sep });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    fn fam(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn trivial_bounds() {
        let r = lower_bounds(&fam(FamilySpec::Path(9))).unwrap();
        assert_eq!(r.diameter_bound, 4);
        let r = lower_bounds(&fam(FamilySpec::Complete(5))).unwrap();
        assert_eq!((r.diameter_bound, r.edge_bound), (0, 0));
        let r = lower_bounds(&fam(FamilySpec::Cycle(4))).unwrap();
        assert_eq!(r.edge_bound, 1);
        let r = lower_bounds(&fam(FamilySpec::Path(1))).unwrap();
        assert_eq!(r.best_lower, 0);
    }

    #[test]
    fn octopus_center_separator() {
        // components {0,1,2} and {3,4,5}; 6 + 6 co-component ordered pairs,
        // plus both directions of the two center edges
        let g = fam(FamilySpec::Octopus(2, 3));
        let initial = 12 + 4;
        let per_round = 2 * (2 + 2);
        assert_eq!(
            bottleneck_bound(&g, &[6]).unwrap(),
            (42 - initial as usize).div_ceil(per_round)
        );
        assert!(bottleneck_bound(&g, &[6]).unwrap() >= 1);
    }

    #[test]
    fn separator_edge_cases() {
        let k5 = fam(FamilySpec::Complete(5));
        assert_eq!(bottleneck_bound(&k5, &[0]), Ok(0));
        assert_eq!(bottleneck_bound(&k5, &[]), Err(BoundsError::EmptySeparator));
        assert_eq!(
            bottleneck_bound(&k5, &[0, 1, 2, 3, 4]),
            Err(BoundsError::SeparatorIsEverything)
        );
        let p5 = fam(FamilySpec::Path(5));
        assert!(bottleneck_bound(&p5, &[0, 1, 2, 3]).is_ok());
    }

    #[test]
    fn barbell_bound_grows() {
        let mut prev = 0;
        for k in [4, 8, 16, 32] {
            let g = fam(FamilySpec::Barbell(k));
            let b = bottleneck_bound(&g, &[k - 1, k]).unwrap();
            assert!(b > prev, "k={k}: {b} <= {prev}");
            prev = b;
        }
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(lower_bounds(&g).is_err());
        assert!(bottleneck_bound(&g, &[0]).is_err());
    }
}
