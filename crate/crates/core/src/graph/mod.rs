//! Plane graphs stored as rotation systems.
//!
//! A rotation system lists, for every vertex, its neighbours in
//! counterclockwise order around the vertex. Faces, duals and every other
//! derived structure in this crate are computed from it.

mod codec;
mod fullerene;
mod metrics;

pub use codec::{
    parse_adjlist, parse_planar_code, write_adjlist, write_planar_code, CodecError,
    PLANAR_CODE_HEADER,
};
pub use fullerene::{
    dual, dual_of, DualGraph, FullereneError, FullereneGraph, Triangulation, TriangulationError,
};
pub use metrics::{bfs_distances, diameter, diameter_with, multi_source_bfs, two_coloring, UNREACHED};

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} lists neighbour {neighbor}, which is out of range")]
    NeighborOutOfRange { vertex: usize, neighbor: usize },
    #[error("vertex {vertex} has a loop")]
    Loop { vertex: usize },
    #[error("vertex {vertex} lists neighbour {neighbor} more than once")]
    RepeatedNeighbor { vertex: usize, neighbor: usize },
    #[error("{u} lists {v} as a neighbour but not vice versa")]
    Asymmetric { u: usize, v: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation system is not planar: n - m + f = {euler}")]
    NotPlanar { euler: i64 },
    #[error("triangle list is not consistently oriented at vertex {vertex}")]
    BadOrientation { vertex: usize },
}

/// A simple connected plane graph given by its rotation system.
///
/// Immutable after construction. Edge ids are assigned by scanning vertices in
/// increasing order and, for each vertex `u`, its rotation in order, taking
/// every neighbour `v > u`.
#[derive(Clone, Debug)]
pub struct EmbeddedGraph {
    rotation: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    dart_offset: Vec<usize>,
    dart_edge: Vec<usize>,
    faces: Vec<Vec<usize>>,
    dart_face: Vec<usize>,
}

impl PartialEq for EmbeddedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rotation == other.rotation
    }
}

impl Eq for EmbeddedGraph {}

impl EmbeddedGraph {
    /// Validates a rotation system and builds the graph.
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let n = rotation.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for (u, list) in rotation.iter().enumerate() {
            let mut seen = std::collections::HashSet::with_capacity(list.len());
            for &v in list {
                if v >= n {
                    return Err(GraphError::NeighborOutOfRange { vertex: u, neighbor: v });
                }
                if v == u {
                    return Err(GraphError::Loop { vertex: u });
                }
                if !seen.insert(v) {
                    return Err(GraphError::RepeatedNeighbor { vertex: u, neighbor: v });
                }
            }
        }
        for (u, list) in rotation.iter().enumerate() {
            for &v in list {
                if !rotation[v].contains(&u) {
                    return Err(GraphError::Asymmetric { u, v });
                }
            }
        }

        let mut dart_offset = Vec::with_capacity(n + 1);
        let mut total = 0;
        for list in &rotation {
            dart_offset.push(total);
            total += list.len();
        }
        dart_offset.push(total);

        let mut edges = Vec::with_capacity(total / 2);
        let mut dart_edge = vec![usize::MAX; total];
        let mut index: HashMap<(usize, usize), usize> = HashMap::with_capacity(total / 2);
        for (u, list) in rotation.iter().enumerate() {
            for (i, &v) in list.iter().enumerate() {
                if u < v {
                    index.insert((u, v), edges.len());
                    dart_edge[dart_offset[u] + i] = edges.len();
                    edges.push((u, v));
                }
            }
        }
        for (u, list) in rotation.iter().enumerate() {
            for (i, &v) in list.iter().enumerate() {
                if u > v {
                    dart_edge[dart_offset[u] + i] = index[&(v, u)];
                }
            }
        }

        let mut graph = EmbeddedGraph {
            rotation,
            edges,
            dart_offset,
            dart_edge,
            faces: Vec::new(),
            dart_face: Vec::new(),
        };

        if metrics::multi_source_bfs(&graph, &[0]).contains(&UNREACHED) {
            return Err(GraphError::Disconnected);
        }

        graph.trace_faces();
        let euler = n as i64 - graph.m() as i64 + graph.faces.len() as i64;
        if euler != 2 {
            return Err(GraphError::NotPlanar { euler });
        }
        Ok(graph)
    }

    /// Builds a triangulated sphere from triangles listed with a common
    /// orientation. Each triangle `(a, b, c)` makes `c` follow `b` in the
    /// counterclockwise rotation at `a`.
    pub fn from_oriented_triangles(n: usize, triangles: &[[usize; 3]]) -> Result<Self, GraphError> {
        let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
        for t in triangles {
            for i in 0..3 {
                let (a, b, c) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
                if a >= n || b >= n || c >= n {
                    return Err(GraphError::NeighborOutOfRange { vertex: a, neighbor: b.max(c) });
                }
                if succ[a].insert(b, c).is_some() {
                    return Err(GraphError::BadOrientation { vertex: a });
                }
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, map) in succ.iter().enumerate() {
            let Some(&start) = map.keys().min() else {
                return Err(GraphError::Disconnected);
            };
            let mut list = vec![start];
            let mut cur = start;
            loop {
                let next = *map.get(&cur).ok_or(GraphError::BadOrientation { vertex: v })?;
                if next == start {
                    break;
                }
                if list.len() > map.len() {
                    return Err(GraphError::BadOrientation { vertex: v });
                }
                list.push(next);
                cur = next;
            }
            if list.len() != map.len() {
                return Err(GraphError::BadOrientation { vertex: v });
            }
            rotation.push(list);
        }
        Self::from_rotation(rotation)
    }

    fn trace_faces(&mut self) {
        let total = self.dart_offset[self.n()];
        self.dart_face = vec![usize::MAX; total];
        self.faces.clear();
        if total == 0 {
            self.faces.push(vec![0]);
            return;
        }
        for u in 0..self.n() {
            for i in 0..self.rotation[u].len() {
                let start = self.dart_offset[u] + i;
                if self.dart_face[start] != usize::MAX {
                    continue;
                }
                let face_id = self.faces.len();
                let mut cycle = Vec::new();
                let (mut a, mut ai) = (u, i);
                loop {
                    let dart = self.dart_offset[a] + ai;
                    if self.dart_face[dart] != usize::MAX {
                        break;
                    }
                    self.dart_face[dart] = face_id;
                    cycle.push(a);
                    let (b, bi) = self.next_in_face(a, ai);
                    a = b;
                    ai = bi;
                }
                self.faces.push(cycle);
            }
        }
    }

    /// Successor of dart `a -> rotation[a][ai]` along its face: the edge
    /// immediately clockwise from the reverse dart.
    fn next_in_face(&self, a: usize, ai: usize) -> (usize, usize) {
        let b = self.rotation[a][ai];
        let back = self.position(b, a).expect("symmetric rotation");
        let deg = self.rotation[b].len();
        (b, (back + deg - 1) % deg)
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Index of `v` in the rotation of `u`.
    pub fn position(&self, u: usize, v: usize) -> Option<usize> {
        self.rotation[u].iter().position(|&w| w == v)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.position(u, v).map(|i| self.dart_edge[self.dart_offset[u] + i])
    }

    /// Edge id of the `i`-th dart leaving `u`.
    pub fn dart_edge(&self, u: usize, i: usize) -> usize {
        self.dart_edge[self.dart_offset[u] + i]
    }

    /// Face cycles as vertex sequences; consecutive entries (cyclically) are
    /// the darts of the face.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Face containing the dart `u -> v`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<usize> {
        self.position(u, v).map(|i| self.dart_face[self.dart_offset[u] + i])
    }

    /// Face on the left of dart `rotation[u][i]`.
    pub fn face_of_dart_index(&self, u: usize, i: usize) -> usize {
        self.dart_face[self.dart_offset[u] + i]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.rotation[u].contains(&v)
    }

    pub fn degree_sum(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum()
    }
}

/// Edges of `g` with exactly one endpoint in the vertex set `inside`.
pub fn cut_edges(g: &EmbeddedGraph, inside: &[bool]) -> Vec<usize> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| inside[u] != inside[v])
        .map(|(e, _)| e)
        .collect()
}
