//! Minimum T-joins in unweighted plane graphs.
//!
//! A minimum T-join is a minimum-weight perfect matching of T under the
//! shortest-path metric, realised as the symmetric difference of one shortest
//! path per matched pair. With at most 16 terminals every perfect matching is
//! enumerated, which is exact and needs no blossom machinery.

use thiserror::Error;

use crate::exec::Execution;
use crate::graph::{bfs_distances, EmbeddedGraph, UNREACHED};

/// Largest terminal set `min_tjoin` accepts.
pub const MAX_TERMINALS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TJoinError {
    #[error("terminal set has odd size {0}")]
    OddTerminals(usize),
    #[error("{0} terminals exceed the enumeration limit of {MAX_TERMINALS}")]
    TooManyTerminals(usize),
    #[error("terminal {0} is out of range or repeated")]
    BadTerminal(usize),
    #[error("terminals {0} and {1} are not connected")]
    Unreachable(usize, usize),
    #[error("edge id {0} does not exist")]
    UnknownEdge(usize),
    #[error("no T-join with at most {0} edges")]
    CapExceeded(usize),
    #[error("brute force search supports at most 128 vertices, got {0}")]
    TooLarge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TJoin {
    /// Sorted edge ids.
    pub edges: Vec<usize>,
    /// Sorted terminal set.
    pub terminals: Vec<usize>,
    /// The matched terminal pairs whose shortest paths make up the join.
    /// Empty for joins found by exhaustive search.
    pub pairs: Vec<(usize, usize)>,
}

impl TJoin {
    pub fn value(&self) -> usize {
        self.edges.len()
    }
}

/// BFS distances between terminals, with one BFS tree per terminal kept for
/// path realisation.
#[derive(Clone, Debug)]
pub struct TerminalMetric {
    terminals: Vec<usize>,
    dist: Vec<Vec<usize>>,
    trees: Vec<Vec<usize>>,
}

impl TerminalMetric {
    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    /// Distance between the `i`-th and `j`-th terminal.
    pub fn dist(&self, i: usize, j: usize) -> usize {
        self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<usize>] {
        &self.dist
    }

    /// Shortest path from terminal `i` to vertex `v`, as a vertex sequence
    /// starting at `v`. Each step goes to the lowest-id neighbour one closer
    /// to the terminal.
    pub fn path_to(&self, g: &EmbeddedGraph, i: usize, v: usize) -> Vec<usize> {
        let d = &self.trees[i];
        let mut path = vec![v];
        let mut cur = v;
        while d[cur] > 0 {
            cur = *g
                .rotation(cur)
                .iter()
                .filter(|&&w| d[w] + 1 == d[cur])
                .min()
                .expect("BFS layer has a predecessor");
            path.push(cur);
        }
        path
    }
}

fn check_terminals(g: &EmbeddedGraph, terminals: &[usize]) -> Result<Vec<usize>, TJoinError> {
    let mut ts = terminals.to_vec();
    ts.sort_unstable();
    for w in ts.windows(2) {
        if w[0] == w[1] {
            return Err(TJoinError::BadTerminal(w[0]));
        }
    }
    if let Some(&t) = ts.iter().find(|&&t| t >= g.n()) {
        return Err(TJoinError::BadTerminal(t));
    }
    if ts.len() % 2 == 1 {
        return Err(TJoinError::OddTerminals(ts.len()));
    }
    Ok(ts)
}

pub fn terminal_metric(g: &EmbeddedGraph, terminals: &[usize]) -> Result<TerminalMetric, TJoinError> {
    terminal_metric_with(g, terminals, Execution::default())
}

pub fn terminal_metric_with(
    g: &EmbeddedGraph,
    terminals: &[usize],
    exec: Execution,
) -> Result<TerminalMetric, TJoinError> {
    let terminals = check_terminals(g, terminals)?;
    let trees = exec.map_slice(&terminals, |&t| bfs_distances(g, t));
    let dist: Vec<Vec<usize>> =
        trees.iter().map(|d| terminals.iter().map(|&t| d[t]).collect()).collect();
    for (i, row) in dist.iter().enumerate() {
        if let Some(j) = row.iter().position(|&x| x == UNREACHED) {
            return Err(TJoinError::Unreachable(terminals[i], terminals[j]));
        }
    }
    Ok(TerminalMetric { terminals, dist, trees })
}

/// Best perfect matching on the unmatched terminals in `free`, enumerating in
/// lexicographic order and keeping the first minimum.
fn best_matching(
    d: &[Vec<usize>],
    free: &mut Vec<usize>,
    acc: usize,
    current: &mut Vec<(usize, usize)>,
    best: &mut Option<(usize, Vec<(usize, usize)>)>,
) {
    if best.as_ref().is_some_and(|(b, _)| acc >= *b) && !free.is_empty() {
        return;
    }
    if free.is_empty() {
        if best.as_ref().is_none_or(|(b, _)| acc < *b) {
            *best = Some((acc, current.clone()));
        }
        return;
    }
    let a = free.remove(0);
    for idx in 0..free.len() {
        let b = free.remove(idx);
        current.push((a, b));
        best_matching(d, free, acc + d[a][b], current, best);
        current.pop();
        free.insert(idx, b);
    }
    free.insert(0, a);
}

/// Minimum-weight perfect matching of the metric's terminals, as index pairs
/// into `metric.terminals()`, together with its weight.
pub fn min_matching(metric: &TerminalMetric, exec: Execution) -> (usize, Vec<(usize, usize)>) {
    let k = metric.terminals.len();
    if k == 0 {
        return (0, Vec::new());
    }
    let d = &metric.dist;
    let branches = exec.map_range(k - 1, |j| {
        let b = j + 1;
        let mut free: Vec<usize> = (1..k).filter(|&x| x != b).collect();
        let mut current = vec![(0, b)];
        let mut best = None;
        best_matching(d, &mut free, d[0][b], &mut current, &mut best);
        best.expect("even terminal count has a perfect matching")
    });
    branches
        .into_iter()
        .reduce(|x, y| if y.0 < x.0 { y } else { x })
        .expect("at least one branch")
}

pub fn min_tjoin(g: &EmbeddedGraph, terminals: &[usize]) -> Result<TJoin, TJoinError> {
    min_tjoin_with(g, terminals, Execution::default())
}

pub fn min_tjoin_with(
    g: &EmbeddedGraph,
    terminals: &[usize],
    exec: Execution,
) -> Result<TJoin, TJoinError> {
    if terminals.len() > MAX_TERMINALS {
        return Err(TJoinError::TooManyTerminals(terminals.len()));
    }
    let metric = terminal_metric_with(g, terminals, exec)?;
    let (value, matching) = min_matching(&metric, exec);
    let mut parity = vec![false; g.m()];
    let mut pairs = Vec::with_capacity(matching.len());
    for &(i, j) in &matching {
        let path = metric.path_to(g, i, metric.terminals[j]);
        for w in path.windows(2) {
            let e = g.edge_id(w[0], w[1]).expect("path follows edges");
            parity[e] = !parity[e];
        }
        pairs.push((metric.terminals[i], metric.terminals[j]));
    }
    let edges: Vec<usize> = (0..g.m()).filter(|&e| parity[e]).collect();
    debug_assert_eq!(edges.len(), value, "optimal shortest paths never overlap");
    Ok(TJoin { edges, terminals: metric.terminals, pairs })
}

/// True iff the odd-degree vertices of the edge multiset `edges` are exactly
/// `terminals`.
pub fn is_tjoin(g: &EmbeddedGraph, edges: &[usize], terminals: &[usize]) -> Result<bool, TJoinError> {
    let mut odd = vec![false; g.n()];
    for &e in edges {
        if e >= g.m() {
            return Err(TJoinError::UnknownEdge(e));
        }
        let (u, v) = g.edge(e);
        odd[u] = !odd[u];
        odd[v] = !odd[v];
    }
    let mut want = vec![false; g.n()];
    for &t in terminals {
        if t >= g.n() {
            return Err(TJoinError::BadTerminal(t));
        }
        want[t] = !want[t];
    }
    Ok(odd == want)
}

/// Exhaustive search over edge subsets by increasing size, up to `cap` edges.
/// Independent of the matching route; meant as a test oracle on small graphs.
pub fn brute_force_tjoin(g: &EmbeddedGraph, terminals: &[usize], cap: usize) -> Result<TJoin, TJoinError> {
    let ts = check_terminals(g, terminals)?;
    if g.n() > 128 {
        return Err(TJoinError::TooLarge(g.n()));
    }
    let masks: Vec<u128> = g.edges().iter().map(|&(u, v)| (1u128 << u) | (1u128 << v)).collect();
    let target = ts.iter().fold(0u128, |acc, &t| acc | (1u128 << t));

    fn search(masks: &[u128], start: usize, left: usize, cur: u128, chosen: &mut Vec<usize>) -> bool {
        if left == 0 {
            return cur == 0;
        }
        // Every edge fixes at most two wrong parities.
        if cur.count_ones() as usize > 2 * left {
            return false;
        }
        for e in start..masks.len() {
            if masks.len() - e < left {
                break;
            }
            chosen.push(e);
            if search(masks, e + 1, left - 1, cur ^ masks[e], chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    for size in 0..=cap.min(g.m()) {
        let mut chosen = Vec::with_capacity(size);
        if search(&masks, 0, size, target, &mut chosen) {
            return Ok(TJoin { edges: chosen, terminals: ts, pairs: Vec::new() });
        }
    }
    Err(TJoinError::CapExceeded(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goldberg::{icosahedral_dual, icosahedron, GeodesicSpec};
    use crate::graph::samples::{cycle, k4};
    use proptest::prelude::*;

    fn all(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn icosahedron_all_terminals() {
        let g = icosahedron();
        let j = min_tjoin(&g, &all(12)).unwrap();
        assert_eq!(j.value(), 6);
        assert!(is_tjoin(&g, &j.edges, &all(12)).unwrap());
        assert_eq!(brute_force_tjoin(&g, &all(12), 6).unwrap().value(), 6);
        let m = terminal_metric(&g, &all(12)).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                let d = m.dist(i, j);
                assert!(if i == j { d == 0 } else { (1..=3).contains(&d) });
            }
        }
    }

    #[test]
    fn icosahedron_matching_count_oracle() {
        // Independent enumeration without pruning: count matchings and take
        // the minimum weight.
        fn all_matchings(d: &[Vec<usize>], free: Vec<usize>) -> Vec<usize> {
            if free.is_empty() {
                return vec![0];
            }
            let a = free[0];
            let mut out = Vec::new();
            for i in 1..free.len() {
                let b = free[i];
                let rest: Vec<usize> = free.iter().copied().filter(|&x| x != a && x != b).collect();
                out.extend(all_matchings(d, rest).into_iter().map(|w| w + d[a][b]));
            }
            out
        }
        let g = icosahedron();
        let m = terminal_metric(&g, &all(12)).unwrap();
        let weights = all_matchings(m.matrix(), all(12));
        assert_eq!(weights.len(), 10395);
        assert_eq!(*weights.iter().min().unwrap(), min_matching(&m, Execution::Sequential).0);
    }

    #[test]
    fn buckyball_dual_needs_twelve() {
        let t = icosahedral_dual(GeodesicSpec::new(1).unwrap());
        let j = min_tjoin(t.graph(), t.terminals()).unwrap();
        assert_eq!(j.value(), 12);
        assert_eq!(j.pairs.len(), 6);
    }

    #[test]
    fn trivial_cases() {
        let g = k4();
        assert_eq!(min_tjoin(&g, &[]).unwrap().value(), 0);
        let e = g.edge_id(0, 1).unwrap();
        assert!(is_tjoin(&g, &[e], &[0, 1]).unwrap());
        assert!(!is_tjoin(&g, &[e], &[]).unwrap());
        assert!(is_tjoin(&g, &[e, e], &[]).unwrap());
        assert_eq!(is_tjoin(&g, &[99], &[]), Err(TJoinError::UnknownEdge(99)));
        let m = terminal_metric(&g, &[0, 1]).unwrap();
        assert_eq!(m.dist(0, 1), 1);
        let tri = EmbeddedGraph::from_rotation(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(brute_force_tjoin(&tri, &[0, 2], 3).unwrap().value(), 1);
    }

    #[test]
    fn guards_are_hard_errors() {
        let g = cycle(40);
        assert_eq!(min_tjoin(&g, &[0, 1, 2]).unwrap_err(), TJoinError::OddTerminals(3));
        assert_eq!(min_tjoin(&g, &all(18)).unwrap_err(), TJoinError::TooManyTerminals(18));
        assert_eq!(min_tjoin(&g, &[1, 1]).unwrap_err(), TJoinError::BadTerminal(1));
        assert_eq!(brute_force_tjoin(&g, &[0, 20], 3).unwrap_err(), TJoinError::CapExceeded(3));
        assert_eq!(min_tjoin(&g, &all(16)).unwrap().value(), 8);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let t = icosahedral_dual(GeodesicSpec::new(2).unwrap());
        let a = min_tjoin_with(t.graph(), t.terminals(), Execution::Sequential).unwrap();
        let b = min_tjoin_with(t.graph(), t.terminals(), Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.value(), 24);
    }

    proptest! {
        #[test]
        fn oracle_agrees_on_icosahedron_subsets(mask in 0u32..(1 << 12)) {
            let g = icosahedron();
            let mut ts: Vec<usize> = (0..12).filter(|&v| mask >> v & 1 == 1).collect();
            if ts.len() % 2 == 1 {
                ts.pop();
            }
            let fast = min_tjoin(&g, &ts).unwrap();
            let slow = brute_force_tjoin(&g, &ts, 8).unwrap();
            prop_assert_eq!(fast.value(), slow.value());
            prop_assert!(fast.value() >= ts.len() / 2);
            prop_assert!(is_tjoin(&g, &fast.edges, &ts).unwrap());
            // Two T-joins differ by an even subgraph.
            let mut both = fast.edges.clone();
            both.extend(&slow.edges);
            prop_assert!(is_tjoin(&g, &both, &[]).unwrap());
        }
    }
}
