//! Moats, patches and their counting formulas.
//!
//! For a vertex set `X`, `N^i[X]` is the set of vertices within distance `i`
//! and the width-`k` moat `δ^k(X)` is the union of the cuts `δ(N^i[X])` for
//! `i < k`. These cuts are pairwise disjoint: an edge lies in `δ(N^i[X])`
//! exactly when its endpoints sit at distances `i` and `i + 1` from `X`.

mod certificate;
mod packing;

pub use certificate::{graph_sha256, Certificate, CertificateError, CertificateMoat};
pub use packing::{
    greedy_packing, greedy_packing_with, verify_packing, verify_unrefined, Moat, MoatPacking,
    PackingError, PackingStats,
};

use thiserror::Error;

use crate::graph::{multi_source_bfs, EmbeddedGraph, Triangulation, UNREACHED};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoatError {
    #[error("moat core is empty")]
    EmptyCore,
    #[error("vertex {0} is out of range")]
    BadVertex(usize),
    #[error("moat width must be at least 1")]
    ZeroWidth,
    #[error("moat of width {width} escapes the graph")]
    Escapes { width: usize },
    #[error("vertex set is not a patch: {0}")]
    NotAPatch(String),
    #[error("patch has {0} interior terminals, expected 1 to 5")]
    TerminalsOutOfRange(usize),
    #[error("terminal {terminal} lies on the patch boundary or within distance {width}")]
    TerminalInAnnulus { terminal: usize, width: usize },
    #[error("ring {k} has {got} vertices, formula gives {expected}")]
    RingGrowthMismatch { k: usize, got: usize, expected: usize },
    #[error("moat has {got} edges, below the perimeter bound {bound}")]
    BelowPerimeterBound { got: usize, bound: u64 },
}

/// Distance from `x` to every vertex, after checking `x` is a nonempty
/// in-range set.
pub fn layers(g: &EmbeddedGraph, x: &[usize]) -> Result<Vec<usize>, MoatError> {
    if x.is_empty() {
        return Err(MoatError::EmptyCore);
    }
    if let Some(&v) = x.iter().find(|&&v| v >= g.n()) {
        return Err(MoatError::BadVertex(v));
    }
    Ok(multi_source_bfs(g, x))
}

/// Edges of `δ^k(X)`, sorted.
pub fn moat_edges(g: &EmbeddedGraph, x: &[usize], k: usize) -> Result<Vec<usize>, MoatError> {
    let d = layers(g, x)?;
    moat_edges_from_layers(g, &d, k)
}

pub(crate) fn moat_edges_from_layers(
    g: &EmbeddedGraph,
    d: &[usize],
    k: usize,
) -> Result<Vec<usize>, MoatError> {
    if k == 0 {
        return Err(MoatError::ZeroWidth);
    }
    if d.iter().all(|&x| x != UNREACHED && x < k) {
        return Err(MoatError::Escapes { width: k });
    }
    Ok(g.edges()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| d[a] != d[b] && d[a].min(d[b]) < k)
        .map(|(e, _)| e)
        .collect())
}

/// Size of the single cut `δ(N^i[X])` for each `i < k`.
pub fn layer_cut_sizes(g: &EmbeddedGraph, d: &[usize], k: usize) -> Vec<usize> {
    let mut sizes = vec![0; k];
    for &(a, b) in g.edges() {
        let lo = d[a].min(d[b]);
        if d[a] != d[b] && lo < k {
            sizes[lo] += 1;
        }
    }
    sizes
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskCheck {
    /// No terminal other than the centre lies within distance `k`.
    pub precondition: bool,
    /// A moat edge touching another terminal, when the precondition fails.
    pub counterexample: Option<usize>,
    pub size: usize,
    pub expected: usize,
}

impl DiskCheck {
    pub fn holds(&self) -> bool {
        self.precondition && self.size == self.expected
    }
}

/// Checks `|δ^k(u)| = 5k²` for a terminal `u` whose width-`k` disk contains
/// no other terminal.
pub fn disk_size_check(t: &Triangulation, u: usize, k: usize) -> Result<DiskCheck, MoatError> {
    let g = t.graph();
    let edges = moat_edges(g, &[u], k)?;
    let counterexample = edges.iter().copied().find(|&e| {
        let (a, b) = g.edge(e);
        (a != u && t.is_terminal(a)) || (b != u && t.is_terminal(b))
    });
    Ok(DiskCheck {
        precondition: counterexample.is_none(),
        counterexample,
        size: edges.len(),
        expected: 5 * k * k,
    })
}

/// A triangulated disk inside a triangulation: the faces of `G[X]` other
/// than the outer one are faces of `G`, and the outer face is bounded by a
/// simple cycle. A single vertex is accepted as a degenerate patch with an
/// empty boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    vertices: Vec<usize>,
    boundary: Vec<usize>,
    interior_terminals: Vec<usize>,
    area: usize,
}

impl Patch {
    pub fn from_vertices(t: &Triangulation, x: &[usize]) -> Result<Patch, MoatError> {
        let g = t.graph();
        let mut vertices = x.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(MoatError::EmptyCore);
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
            return Err(MoatError::BadVertex(v));
        }
        if vertices.len() == 1 {
            let u = vertices[0];
            let interior_terminals = if t.is_terminal(u) { vec![u] } else { vec![] };
            return Ok(Patch { vertices, boundary: vec![], interior_terminals, area: 0 });
        }
        if vertices.len() == g.n() {
            return Err(MoatError::NotAPatch("the whole sphere has no outer face".into()));
        }
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let rotation = vertices
            .iter()
            .map(|&v| {
                g.rotation(v).iter().filter(|&&w| local[w] != usize::MAX).map(|&w| local[w]).collect()
            })
            .collect();
        let h = EmbeddedGraph::from_rotation(rotation)
            .map_err(|e| MoatError::NotAPatch(e.to_string()))?;
        let mut outer = None;
        for cyc in h.faces() {
            let is_face_of_g = cyc.len() == 3 && {
                let (a, b, c) = (vertices[cyc[0]], vertices[cyc[1]], vertices[cyc[2]]);
                let f = g.face_of_dart(a, b).expect("induced edge");
                g.faces()[f].contains(&c)
            };
            if !is_face_of_g {
                if outer.is_some() {
                    return Err(MoatError::NotAPatch("more than one non-triangular face".into()));
                }
                outer = Some(cyc);
            }
        }
        let outer = outer.ok_or_else(|| MoatError::NotAPatch("no outer face".into()))?;
        let mut seen = vec![false; vertices.len()];
        for &v in outer {
            if std::mem::replace(&mut seen[v], true) {
                return Err(MoatError::NotAPatch(format!(
                    "outer boundary revisits vertex {}",
                    vertices[v]
                )));
            }
        }
        if outer.len() < 3 {
            return Err(MoatError::NotAPatch("outer boundary is not a cycle".into()));
        }
        let boundary: Vec<usize> = outer.iter().map(|&v| vertices[v]).collect();
        let interior_terminals =
            vertices.iter().copied().filter(|&v| t.is_terminal(v) && !boundary.contains(&v)).collect();
        Ok(Patch { vertices, boundary, interior_terminals, area: h.face_count() - 1 })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Outer cycle `C`; empty for a single-vertex patch.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// Terminals strictly inside the patch.
    pub fn interior_terminals(&self) -> &[usize] {
        &self.interior_terminals
    }

    pub fn p(&self) -> usize {
        self.interior_terminals.len()
    }

    /// Number of triangles.
    pub fn area(&self) -> usize {
        self.area
    }
}

/// Adds to `x` every vertex that `x` separates from the largest component of
/// its complement.
pub fn fill_holes(g: &EmbeddedGraph, x: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.n()];
    for &v in x {
        inside[v] = true;
    }
    let mut comp = vec![usize::MAX; g.n()];
    let mut sizes = Vec::new();
    for s in 0..g.n() {
        if inside[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut stack = vec![s];
        comp[s] = id;
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in g.rotation(u) {
                if !inside[w] && comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    let outside = (0..sizes.len()).max_by_key(|&i| (sizes[i], std::cmp::Reverse(i)));
    (0..g.n()).filter(|&v| inside[v] || Some(comp[v]) != outside).collect()
}

fn check_annulus(t: &Triangulation, patch: &Patch, k: usize) -> Result<Vec<usize>, MoatError> {
    let p = patch.p();
    if p == 0 || p >= 6 {
        return Err(MoatError::TerminalsOutOfRange(p));
    }
    let d = layers(t.graph(), patch.vertices())?;
    if let Some(&u) = patch.boundary().iter().find(|&&u| t.is_terminal(u)) {
        return Err(MoatError::TerminalInAnnulus { terminal: u, width: k });
    }
    if let Some(u) = (0..d.len()).find(|&u| d[u] >= 1 && d[u] <= k && t.is_terminal(u)) {
        return Err(MoatError::TerminalInAnnulus { terminal: u, width: k });
    }
    Ok(d)
}

/// `|N^k(X)|`, checked against `|V(C)| + (6 - p)k`.
pub fn ring_growth(t: &Triangulation, patch: &Patch, k: usize) -> Result<usize, MoatError> {
    let d = check_annulus(t, patch, k)?;
    let got = d.iter().filter(|&&x| x == k).count();
    let expected = patch.boundary().len() + (6 - patch.p()) * k;
    if got != expected {
        return Err(MoatError::RingGrowthMismatch { k, got, expected });
    }
    Ok(got)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerimeterBound {
    /// `(6 - p)k² + 2k·sqrt((6 - p)·A)`.
    pub bound: f64,
    /// Smallest integer not below `bound`, computed exactly.
    pub ceiling: u64,
    /// `|δ^k(X)|` on the given graph.
    pub moat_size: usize,
}

fn ceil_sqrt(x: u64) -> u64 {
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// Lower bound on the width-`k` moat around a patch, checked on the graph.
pub fn patch_perimeter_bound(t: &Triangulation, patch: &Patch, k: usize) -> Result<PerimeterBound, MoatError> {
    if k == 0 {
        return Ok(PerimeterBound { bound: 0.0, ceiling: 0, moat_size: 0 });
    }
    let d = check_annulus(t, patch, k)?;
    let q = ((6 - patch.p()) * patch.area()) as u64;
    let k64 = k as u64;
    let base = (6 - patch.p() as u64) * k64 * k64;
    let bound = base as f64 + 2.0 * k as f64 * (q as f64).sqrt();
    let ceiling = base + ceil_sqrt(4 * k64 * k64 * q);
    let moat_size = moat_edges_from_layers(t.graph(), &d, k)?.len();
    // moat_size is an integer, so comparing with the exact ceiling is exact.
    if (moat_size as u64) < ceiling {
        return Err(MoatError::BelowPerimeterBound { got: moat_size, bound: ceiling });
    }
    Ok(PerimeterBound { bound, ceiling, moat_size })
}

#[derive(Clone, Debug, PartialEq)]
pub struct JustusVerdict {
    pub holds: bool,
    pub equality: bool,
    /// `|V(C)| - sqrt((6 - p)·A)`.
    pub slack: f64,
}

/// `|V(C)| ≥ sqrt((6 - p)·A)` for a patch with 1 to 5 interior terminals.
pub fn justus_check(patch: &Patch) -> Result<JustusVerdict, MoatError> {
    let p = patch.p();
    if p == 0 || p >= 6 {
        return Err(MoatError::TerminalsOutOfRange(p));
    }
    let c = patch.boundary().len() as u64;
    let q = ((6 - p) * patch.area()) as u64;
    Ok(JustusVerdict {
        holds: c * c >= q,
        equality: c * c == q,
        slack: c as f64 - (q as f64).sqrt(),
    })
}
