use thiserror::Error;

use super::{EmbeddedGraph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FullereneError {
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {edge} ({u}, {v}) is a bridge")]
    Bridge { edge: usize, u: usize, v: usize },
    #[error("face {face} has size {size}, expected 5 or 6")]
    BadFaceSize { face: usize, size: usize },
    #[error("dual is not simple: {0}")]
    NonSimpleDual(String),
    #[error("dual is not a valid plane graph: {0}")]
    Dual(#[from] GraphError),
}

/// A validated fullerene: cubic, bridgeless, all faces pentagons or hexagons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullereneGraph {
    graph: EmbeddedGraph,
    pentagons: Vec<usize>,
}

impl FullereneGraph {
    /// Checks the fullerene clauses in order (cubic, connected, bridgeless,
    /// face sizes) and reports the first violation.
    pub fn validate(graph: EmbeddedGraph) -> Result<Self, FullereneError> {
        if let Some(v) = (0..graph.n()).find(|&v| graph.degree(v) != 3) {
            return Err(FullereneError::NotCubic { vertex: v, degree: graph.degree(v) });
        }
        if super::multi_source_bfs(&graph, &[0]).contains(&super::UNREACHED) {
            return Err(FullereneError::Disconnected);
        }
        if let Some(edge) = first_bridge(&graph) {
            let (u, v) = graph.edge(edge);
            return Err(FullereneError::Bridge { edge, u, v });
        }
        if let Some((face, cyc)) =
            graph.faces().iter().enumerate().find(|(_, f)| f.len() != 5 && f.len() != 6)
        {
            return Err(FullereneError::BadFaceSize { face, size: cyc.len() });
        }
        let pentagons = (0..graph.face_count()).filter(|&f| graph.faces()[f].len() == 5).collect();
        Ok(FullereneGraph { graph, pentagons })
    }

    pub fn graph(&self) -> &EmbeddedGraph {
        &self.graph
    }

    pub fn into_graph(self) -> EmbeddedGraph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn pentagons(&self) -> &[usize] {
        &self.pentagons
    }

    pub fn hexagon_count(&self) -> usize {
        self.graph.face_count() - self.pentagons.len()
    }
}

/// Linear-time bridge search (lowlink over an iterative DFS).
fn first_bridge(g: &EmbeddedGraph) -> Option<usize> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut bridges = Vec::new();
    // (vertex, edge used to enter it, next rotation index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (u, parent_edge, ref mut next)) = stack.last_mut() {
            if *next < g.degree(u) {
                let i = *next;
                *next += 1;
                let v = g.rotation(u)[i];
                let e = g.dart_edge(u, i);
                if e == parent_edge {
                    continue;
                }
                if disc[v] == usize::MAX {
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    stack.push((v, e, 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        bridges.push(parent_edge);
                    }
                }
            }
        }
    }
    bridges.into_iter().min()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("face {face} has size {size}, expected 3")]
    NotTriangular { face: usize, size: usize },
    #[error("vertex {vertex} has degree {degree}, expected 5 or 6")]
    BadDegree { vertex: usize, degree: usize },
    #[error("found {count} degree-5 vertices, expected 12")]
    TerminalCount { count: usize },
    #[error("terminal {vertex} is out of range or repeated")]
    BadTerminal { vertex: usize },
}

/// A plane triangulation with a distinguished terminal set.
///
/// [`Triangulation::new`] enforces the fullerene-dual shape (degrees 5 and 6,
/// terminals = the twelve 5-vertices); [`Triangulation::with_terminals`] only
/// requires triangular faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    graph: EmbeddedGraph,
    terminals: Vec<usize>,
    is_terminal: Vec<bool>,
}

impl Triangulation {
    pub fn new(graph: EmbeddedGraph) -> Result<Self, TriangulationError> {
        check_triangular(&graph)?;
        if let Some(v) = (0..graph.n()).find(|&v| !matches!(graph.degree(v), 5 | 6)) {
            return Err(TriangulationError::BadDegree { vertex: v, degree: graph.degree(v) });
        }
        let terminals: Vec<usize> = (0..graph.n()).filter(|&v| graph.degree(v) == 5).collect();
        if terminals.len() != 12 {
            return Err(TriangulationError::TerminalCount { count: terminals.len() });
        }
        Self::with_terminals(graph, terminals)
    }

    pub fn with_terminals(
        graph: EmbeddedGraph,
        mut terminals: Vec<usize>,
    ) -> Result<Self, TriangulationError> {
        check_triangular(&graph)?;
        terminals.sort_unstable();
        let mut is_terminal = vec![false; graph.n()];
        for &t in &terminals {
            if t >= graph.n() || is_terminal[t] {
                return Err(TriangulationError::BadTerminal { vertex: t });
            }
            is_terminal[t] = true;
        }
        Ok(Triangulation { graph, terminals, is_terminal })
    }

    pub fn graph(&self) -> &EmbeddedGraph {
        &self.graph
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.is_terminal[v]
    }

    pub fn terminal_mask(&self) -> &[bool] {
        &self.is_terminal
    }
}

fn check_triangular(g: &EmbeddedGraph) -> Result<(), TriangulationError> {
    match g.faces().iter().enumerate().find(|(_, f)| f.len() != 3) {
        Some((face, f)) => Err(TriangulationError::NotTriangular { face, size: f.len() }),
        None => Ok(()),
    }
}

/// The dual of a plane graph with the bijection between primal and dual edges.
///
/// Dual vertex `f` is primal face `f`; its rotation follows the face boundary,
/// so the dual is again counterclockwise.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub graph: EmbeddedGraph,
    pub primal_to_dual: Vec<usize>,
    pub dual_to_primal: Vec<usize>,
}

/// Dual of an arbitrary plane graph. Fails when the dual would have a loop
/// (a bridge in the primal) or parallel edges (two faces sharing more than
/// one edge).
pub fn dual_of(g: &EmbeddedGraph) -> Result<DualGraph, FullereneError> {
    let mut rotation = Vec::with_capacity(g.face_count());
    for (f, cyc) in g.faces().iter().enumerate() {
        let mut list = Vec::with_capacity(cyc.len());
        for i in 0..cyc.len() {
            let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            let across = g.face_of_dart(b, a).expect("dart exists");
            if across == f {
                return Err(FullereneError::NonSimpleDual(format!("face {f} meets itself")));
            }
            if list.contains(&across) {
                return Err(FullereneError::NonSimpleDual(format!(
                    "faces {f} and {across} share more than one edge"
                )));
            }
            list.push(across);
        }
        rotation.push(list);
    }
    let graph = EmbeddedGraph::from_rotation(rotation)?;
    let mut primal_to_dual = vec![0; g.m()];
    let mut dual_to_primal = vec![0; g.m()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let f1 = g.face_of_dart(u, v).expect("dart exists");
        let f2 = g.face_of_dart(v, u).expect("dart exists");
        let d = graph.edge_id(f1, f2).expect("dual edge exists");
        primal_to_dual[e] = d;
        dual_to_primal[d] = e;
    }
    Ok(DualGraph { graph, primal_to_dual, dual_to_primal })
}

/// The dual triangulation of a fullerene, terminals = the pentagonal faces.
pub fn dual(f: &FullereneGraph) -> Result<(Triangulation, DualGraph), FullereneError> {
    let d = dual_of(f.graph())?;
    let tri = Triangulation::new(d.graph.clone())
        .map_err(|e| FullereneError::NonSimpleDual(e.to_string()))?;
    debug_assert_eq!(tri.terminals(), f.pentagons());
    Ok((tri, d))
}
