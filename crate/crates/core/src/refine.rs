//! Edge subdivision and the refinement of a triangulation.
//!
//! Both constructions number the new vertex on edge `e` as `n + e`. The
//! refinement adds, inside every face, the triangle on its three subdivision
//! vertices, so each face becomes four.

use crate::graph::{EmbeddedGraph, Triangulation};

/// Where a vertex of a refined triangulation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Original(usize),
    Subdivision { edge: usize },
}

#[derive(Clone, Debug)]
pub struct RefinedTriangulation {
    tri: Triangulation,
    base_n: usize,
    base_faces: usize,
    base_edges: Vec<(usize, usize)>,
}

impl RefinedTriangulation {
    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn graph(&self) -> &EmbeddedGraph {
        self.tri.graph()
    }

    pub fn terminals(&self) -> &[usize] {
        self.tri.terminals()
    }

    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn base_face_count(&self) -> usize {
        self.base_faces
    }

    pub fn origin(&self, v: usize) -> Origin {
        if v < self.base_n {
            Origin::Original(v)
        } else {
            Origin::Subdivision { edge: v - self.base_n }
        }
    }

    pub fn is_subdivision(&self, v: usize) -> bool {
        v >= self.base_n
    }

    /// The subdivision vertex sitting on base edge `e`.
    pub fn subdivision_vertex(&self, e: usize) -> usize {
        self.base_n + e
    }

    /// Endpoints (in the base graph) of the edge a subdivision vertex lies on.
    pub fn base_edge(&self, e: usize) -> (usize, usize) {
        self.base_edges[e]
    }
}

/// Replaces every edge by a path of length two. The result is bipartite
/// with the original vertices on one side.
pub fn subdivide(g: &EmbeddedGraph) -> EmbeddedGraph {
    let n = g.n();
    let mut rotation: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..g.degree(v)).map(|i| n + g.dart_edge(v, i)).collect())
        .collect();
    for &(u, v) in g.edges() {
        rotation.push(vec![u, v]);
    }
    EmbeddedGraph::from_rotation(rotation).expect("subdivision of a plane graph is plane")
}

/// The refinement of an arbitrary plane triangulation, as a bare graph.
pub fn refine_graph(g: &EmbeddedGraph) -> EmbeddedGraph {
    let n = g.n();
    let s = |a: usize, b: usize| n + g.edge_id(a, b).expect("face edge");
    let mut tris = Vec::with_capacity(4 * g.face_count());
    for cyc in g.faces() {
        assert_eq!(cyc.len(), 3, "refinement needs a triangulation");
        let (a, b, c) = (cyc[0], cyc[1], cyc[2]);
        let (ab, bc, ca) = (s(a, b), s(b, c), s(c, a));
        tris.push([a, ab, ca]);
        tris.push([ab, b, bc]);
        tris.push([ca, bc, c]);
        tris.push([ab, bc, ca]);
    }
    EmbeddedGraph::from_oriented_triangles(n + g.m(), &tris)
        .expect("refinement of a triangulation is a triangulation")
}

/// Refines `t`, keeping its terminal set (original ids are unchanged).
pub fn refine(t: &Triangulation) -> RefinedTriangulation {
    let g = t.graph();
    let refined = refine_graph(g);
    let tri = Triangulation::with_terminals(refined, t.terminals().to_vec())
        .expect("refinement keeps faces triangular");
    RefinedTriangulation {
        tri,
        base_n: g.n(),
        base_faces: g.face_count(),
        base_edges: g.edges().to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goldberg::{icosahedral_dual, icosahedron, GeodesicSpec};
    use crate::graph::{bfs_distances, samples::k4, two_coloring};
    use proptest::prelude::*;

    fn ico() -> Triangulation {
        Triangulation::with_terminals(icosahedron(), (0..12).collect()).unwrap()
    }

    #[test]
    fn subdivision_counts() {
        let s = subdivide(&icosahedron());
        assert_eq!((s.n(), s.m()), (42, 60));
        let s = subdivide(&k4());
        assert_eq!((s.n(), s.m()), (10, 12));
        assert!(two_coloring(&s, &vec![false; s.m()], None).is_some());
        let c60 = icosahedral_dual(GeodesicSpec::new(1).unwrap());
        assert_eq!(subdivide(c60.graph()).n(), 122);
    }

    #[test]
    fn refined_icosahedron() {
        let r = refine(&ico());
        let g = r.graph();
        assert_eq!((g.n(), g.face_count()), (42, 80));
        assert_eq!((0..42).filter(|&v| g.degree(v) == 5).count(), 12);
        assert!((12..42).all(|v| g.degree(v) == 6 && r.is_subdivision(v)));
        assert_eq!(r.origin(3), Origin::Original(3));
        assert_eq!(r.origin(12), Origin::Subdivision { edge: 0 });
        let strict = Triangulation::new(g.clone()).unwrap();
        assert_eq!(strict.terminals(), r.terminals());
    }

    #[test]
    fn each_face_gets_an_inner_triangle() {
        let base = ico();
        let r = refine(&base);
        for cyc in base.graph().faces() {
            let s: Vec<usize> = (0..3)
                .map(|i| r.subdivision_vertex(base.graph().edge_id(cyc[i], cyc[(i + 1) % 3]).unwrap()))
                .collect();
            // The inner triangle is a face of the refinement, same orientation.
            let f = r.graph().face_of_dart(s[0], s[1]).unwrap();
            let mut face = r.graph().faces()[f].clone();
            face.sort_unstable();
            let mut want = s.clone();
            want.sort_unstable();
            assert_eq!(face, want);
        }
    }

    #[test]
    fn k4_refines_like_any_triangulation() {
        let t = Triangulation::with_terminals(k4(), vec![0, 1]).unwrap();
        let r = refine(&t);
        assert_eq!((r.graph().n(), r.graph().face_count()), (10, 16));
        assert_eq!(r.base_edge(0), k4().edge(0));
    }

    proptest! {
        #[test]
        fn terminal_distances_double(k in 1usize..=2, i in 0usize..12, j in 0usize..12) {
            let t = icosahedral_dual(GeodesicSpec::new(k).unwrap());
            let r = refine(&t);
            let (u, v) = (t.terminals()[i], t.terminals()[j]);
            prop_assert_eq!(bfs_distances(r.graph(), u)[v], 2 * bfs_distances(t.graph(), u)[v]);
        }
    }
}
