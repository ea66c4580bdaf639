//! Odd cycle transversals of fullerenes and the independent sets they yield.
//!
//! In the dual triangulation the odd vertices are exactly the pentagons, and
//! a set of dual edges whose removal makes every dual degree even is a T-join.
//! Removing the corresponding primal edges leaves a graph whose dual is
//! Eulerian, hence a bipartite primal.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Execution;
use crate::graph::{self, diameter_with, two_coloring, EmbeddedGraph, FullereneError, FullereneGraph};
use crate::tjoin::{min_tjoin_with, TJoin, TJoinError};

/// Largest graph `exact_mis` accepts.
pub const EXACT_MIS_CAP: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransversalError {
    #[error(transparent)]
    Fullerene(#[from] FullereneError),
    #[error(transparent)]
    TJoin(#[from] TJoinError),
    #[error("removing the transversal leaves an odd cycle")]
    NotBipartite,
    #[error("exact independence number is limited to {EXACT_MIS_CAP} vertices, got {0}")]
    TooLarge(usize),
    #[error("vertices {0} and {1} of the set are adjacent")]
    NotIndependent(usize, usize),
}

#[derive(Clone, Debug)]
pub struct Transversal {
    /// Sorted primal edge ids.
    pub edges: Vec<usize>,
    pub dual_join: TJoin,
    pub is_matching: bool,
    /// 2-colouring of `G - J`.
    pub coloring: Vec<u8>,
}

impl Transversal {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub fn odd_cycle_transversal(f: &FullereneGraph) -> Result<Transversal, TransversalError> {
    odd_cycle_transversal_with(f, Execution::default())
}

pub fn odd_cycle_transversal_with(
    f: &FullereneGraph,
    exec: Execution,
) -> Result<Transversal, TransversalError> {
    let (tri, d) = graph::dual(f)?;
    let join = min_tjoin_with(tri.graph(), tri.terminals(), exec)?;
    let mut edges: Vec<usize> = join.edges.iter().map(|&e| d.dual_to_primal[e]).collect();
    edges.sort_unstable();
    let g = f.graph();
    let mut removed = vec![false; g.m()];
    for &e in &edges {
        removed[e] = true;
    }
    let coloring = two_coloring(g, &removed, None).ok_or(TransversalError::NotBipartite)?;
    let is_matching = check_matching(g, &edges);
    Ok(Transversal { edges, dual_join: join, is_matching, coloring })
}

/// True iff no two of the edges share an endpoint.
pub fn check_matching(g: &EmbeddedGraph, edges: &[usize]) -> bool {
    let mut used = vec![false; g.n()];
    for &e in edges {
        let (u, v) = g.edge(e);
        if used[u] || used[v] {
            return false;
        }
        used[u] = true;
        used[v] = true;
    }
    true
}

pub fn is_independent(g: &EmbeddedGraph, set: &[usize]) -> Result<(), TransversalError> {
    let mut member = vec![false; g.n()];
    for &v in set {
        member[v] = true;
    }
    for &(u, v) in g.edges() {
        if member[u] && member[v] {
            return Err(TransversalError::NotIndependent(u, v));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSetResult {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    /// The vertex transversal `U` removed before colouring.
    pub removed: Vec<usize>,
    /// Size of the colour classes taken before augmentation.
    pub side_size: usize,
    /// Vertices added greedily afterwards.
    pub augmented: usize,
    /// Improving steps made by the local search that follows.
    pub swaps: usize,
}

impl IndependentSetResult {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Smallest vertex cover of the edge set `edges`, by branching on an
/// uncovered edge. Only used when a transversal is not a matching.
fn min_vertex_cover(g: &EmbeddedGraph, edges: &[usize]) -> Vec<usize> {
    fn go(g: &EmbeddedGraph, edges: &[usize], chosen: &mut Vec<usize>, best: &mut Option<Vec<usize>>) {
        if best.as_ref().is_some_and(|b| chosen.len() >= b.len()) {
            return;
        }
        let open = edges.iter().map(|&e| g.edge(e)).find(|&(u, v)| !chosen.contains(&u) && !chosen.contains(&v));
        match open {
            None => *best = Some(chosen.clone()),
            Some((u, v)) => {
                for w in [u.min(v), u.max(v)] {
                    chosen.push(w);
                    go(g, edges, chosen, best);
                    chosen.pop();
                }
            }
        }
    }
    let mut best = None;
    go(g, edges, &mut Vec::new(), &mut best);
    let mut cover = best.unwrap_or_default();
    cover.sort_unstable();
    cover
}

/// Independent set of size at least `n/2 - |J|/2` from a transversal `J`.
///
/// One endpoint per edge of `J` is deleted (the one of smaller current
/// degree, ties to the lower id), the larger colour class of every component
/// of what remains is kept, and vertices with no neighbour in the set are
/// then added in increasing order. A short exchange-based local search
/// finishes; every step keeps the set independent and never shrinks it.
pub fn independent_set(f: &FullereneGraph, tr: &Transversal) -> Result<IndependentSetResult, TransversalError> {
    let g = f.graph();
    let n = g.n();
    let mut deleted = vec![false; n];
    let removed = if tr.is_matching {
        let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let mut removed = Vec::with_capacity(tr.len());
        for &e in &tr.edges {
            let (a, b) = g.edge(e);
            let (lo, hi) = (a.min(b), a.max(b));
            let v = if degree[hi] < degree[lo] { hi } else { lo };
            deleted[v] = true;
            for &w in g.rotation(v) {
                degree[w] -= 1;
            }
            removed.push(v);
        }
        removed
    } else {
        let cover = min_vertex_cover(g, &tr.edges);
        for &v in &cover {
            deleted[v] = true;
        }
        cover
    };

    let no_edges = vec![false; g.m()];
    let color = two_coloring(g, &no_edges, Some(&deleted)).ok_or(TransversalError::NotBipartite)?;

    // Components of G - U, each with its colour-class sizes.
    let mut comp = vec![usize::MAX; n];
    let mut counts: Vec<[usize; 2]> = Vec::new();
    for s in 0..n {
        if deleted[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = counts.len();
        counts.push([0, 0]);
        comp[s] = id;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            counts[id][color[u] as usize] += 1;
            for &w in g.rotation(u) {
                if !deleted[w] && comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
    }
    let mut member = vec![false; n];
    for v in 0..n {
        if !deleted[v] {
            let [c0, c1] = counts[comp[v]];
            let side = if c1 >= c0 { 1 } else { 0 };
            member[v] = color[v] == side;
        }
    }
    let side_size = member.iter().filter(|&&b| b).count();
    let augmented = add_free_vertices(g, &mut member);
    let swaps = local_search(g, &mut member);
    let vertices: Vec<usize> = (0..n).filter(|&v| member[v]).collect();
    is_independent(g, &vertices)?;
    Ok(IndependentSetResult { vertices, removed, side_size, augmented, swaps })
}

/// Adds, in increasing order, every vertex with no neighbour in the set.
fn add_free_vertices(g: &EmbeddedGraph, member: &mut [bool]) -> usize {
    let mut added = 0;
    for v in 0..g.n() {
        if !member[v] && g.rotation(v).iter().all(|&w| !member[w]) {
            member[v] = true;
            added += 1;
        }
    }
    added
}

fn set_neighbours(g: &EmbeddedGraph, member: &[bool], v: usize) -> usize {
    g.rotation(v).iter().filter(|&&w| member[w]).count()
}

/// Replaces one set vertex `x` by two non-adjacent neighbours of `x` whose
/// only neighbour in the set is `x`. Returns whether a swap happened.
fn one_two_swap(g: &EmbeddedGraph, member: &mut [bool]) -> bool {
    for x in 0..g.n() {
        if !member[x] {
            continue;
        }
        let loose: Vec<usize> =
            g.rotation(x).iter().copied().filter(|&y| set_neighbours(g, member, y) == 1).collect();
        for (i, &y) in loose.iter().enumerate() {
            if let Some(&z) = loose[i + 1..].iter().find(|&&z| !g.is_adjacent(y, z)) {
                member[x] = false;
                member[y] = true;
                member[z] = true;
                return true;
            }
        }
    }
    false
}

/// Local search: one-for-two exchanges, with one-for-one exchanges to
/// unvisited sets of equal size when stuck (at most `4n` of those in
/// total). Returns the number of exchanges that grew the set.
fn local_search(g: &EmbeddedGraph, member: &mut [bool]) -> usize {
    let mut grown = 0;
    let mut plateau_budget = 4 * g.n();
    let mut visited: HashSet<Vec<bool>> = HashSet::new();
    loop {
        if add_free_vertices(g, member) > 0 || one_two_swap(g, member) {
            grown += 1;
            visited.clear();
            continue;
        }
        if plateau_budget == 0 {
            return grown;
        }
        visited.insert(member.to_vec());
        let step = (0..g.n()).filter(|&x| member[x]).find_map(|x| {
            g.rotation(x).iter().copied().find(|&y| {
                if member[y] || set_neighbours(g, member, y) != 1 {
                    return false;
                }
                let mut next = member.to_vec();
                next[x] = false;
                next[y] = true;
                !visited.contains(&next)
            })
            .map(|y| (x, y))
        });
        match step {
            Some((x, y)) => {
                member[x] = false;
                member[y] = true;
                plateau_budget -= 1;
            }
            None => return grown,
        }
    }
}

/// Exact independence number by branch and bound, for at most
/// [`EXACT_MIS_CAP`] vertices.
pub fn exact_mis(g: &EmbeddedGraph) -> Result<usize, TransversalError> {
    let n = g.n();
    if n > EXACT_MIS_CAP {
        return Err(TransversalError::TooLarge(n));
    }
    let adj: Vec<u64> = (0..n).map(|v| g.rotation(v).iter().fold(0u64, |m, &w| m | (1 << w))).collect();

    fn go(adj: &[u64], p: u64, size: usize, best: &mut usize) {
        if p == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + p.count_ones() as usize <= *best {
            return;
        }
        // A vertex of degree at most one in P is always safe to take.
        let mut bits = p;
        let mut pivot = (0, 0u32);
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let deg = (adj[v] & p).count_ones();
            if deg <= 1 {
                go(adj, p & !(adj[v] | 1 << v), size + 1, best);
                return;
            }
            if deg > pivot.1 {
                pivot = (v, deg);
            }
        }
        let v = pivot.0;
        go(adj, p & !(adj[v] | 1 << v), size + 1, best);
        go(adj, p & !(1 << v), size, best);
    }

    let mut best = 0;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    go(&adj, all, 0, &mut best);
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Equality,
    Violated,
}

impl Verdict {
    /// Verdict for `lhs ≤ rhs`.
    pub fn at_most<T: Ord>(lhs: T, rhs: T) -> Verdict {
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => Verdict::Holds,
            std::cmp::Ordering::Equal => Verdict::Equality,
            std::cmp::Ordering::Greater => Verdict::Violated,
        }
    }
}

/// Smallest integer `c` with `c ≥ n/2 - sqrt(3n/5)`.
pub fn independence_lower_bound(n: usize) -> usize {
    // c works iff n - 2c ≤ 0 or 5(n - 2c)² ≤ 12n.
    (0..=n)
        .find(|&c| {
            let y = n as i64 - 2 * c as i64;
            y <= 0 || 5 * y * y <= 12 * n as i64
        })
        .unwrap_or(n)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub tau_odd: usize,
    /// `sqrt(12n/5)` as a float; the verdict compares `5τ²` with `12n`.
    pub tau_bound: f64,
    pub tau_verdict: Verdict,
    /// `9n/32 + 9/16`.
    pub cui_wang_bound: f64,
    pub cui_wang_verdict: Verdict,
    /// `3n/10`.
    pub hopkins_staton_bound: f64,
    pub hopkins_staton_verdict: Verdict,
    pub independent_set_size: usize,
    /// Exact independence number when it was computed.
    pub exact_alpha: Option<usize>,
    pub independence_bound: usize,
    pub independence_verdict: Verdict,
    /// `⌈3n/8⌉`, compared with the best independent set known.
    pub three_eighths_bound: usize,
    pub three_eighths_verdict: Verdict,
    pub diameter: usize,
    /// `n/5 + 1`.
    pub diameter_bound: f64,
    pub diameter_verdict: Verdict,
    /// `2(diam - 1)`, compared with the best independent set known.
    pub graffiti_lhs: usize,
    pub graffiti_verdict: Verdict,
}

impl BoundsReport {
    pub fn verdicts(&self) -> [Verdict; 7] {
        [
            self.tau_verdict,
            self.cui_wang_verdict,
            self.hopkins_staton_verdict,
            self.independence_verdict,
            self.three_eighths_verdict,
            self.diameter_verdict,
            self.graffiti_verdict,
        ]
    }

    pub fn any_violated(&self) -> bool {
        self.verdicts().contains(&Verdict::Violated)
    }
}

/// Evaluates every bound on a fullerene. The exact independence number is
/// computed when `n ≤ EXACT_MIS_CAP`.
pub fn bounds_report(
    f: &FullereneGraph,
    tr: &Transversal,
    isr: &IndependentSetResult,
    exec: Execution,
) -> BoundsReport {
    let g = f.graph();
    let n = g.n();
    let tau = tr.len();
    let exact_alpha = (n <= EXACT_MIS_CAP).then(|| exact_mis(g).expect("within cap"));
    let best = exact_alpha.unwrap_or(0).max(isr.size());
    let diameter = diameter_with(g, exec);
    let independence_bound = independence_lower_bound(n);
    let three_eighths_bound = (3 * n).div_ceil(8);
    let graffiti_lhs = 2 * diameter.saturating_sub(1);
    BoundsReport {
        n,
        tau_odd: tau,
        tau_bound: (12.0 * n as f64 / 5.0).sqrt(),
        tau_verdict: Verdict::at_most(5 * tau * tau, 12 * n),
        cui_wang_bound: 9.0 * n as f64 / 32.0 + 9.0 / 16.0,
        cui_wang_verdict: Verdict::at_most(32 * tau, 9 * n + 18),
        hopkins_staton_bound: 3.0 * n as f64 / 10.0,
        hopkins_staton_verdict: Verdict::at_most(10 * tau, 3 * n),
        independent_set_size: isr.size(),
        exact_alpha,
        independence_bound,
        independence_verdict: Verdict::at_most(independence_bound, isr.size()),
        three_eighths_bound,
        three_eighths_verdict: Verdict::at_most(three_eighths_bound, best),
        diameter,
        diameter_bound: n as f64 / 5.0 + 1.0,
        diameter_verdict: Verdict::at_most(5 * diameter, n + 5),
        graffiti_lhs,
        graffiti_verdict: Verdict::at_most(graffiti_lhs, best),
    }
}
