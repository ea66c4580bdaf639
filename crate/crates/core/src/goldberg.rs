//! Icosahedral fullerenes on 60k² vertices and their geodesic duals, plus the
//! bundled fixture graphs.
//!
//! The dual of the (k,k) Goldberg fullerene is obtained from the pentakis
//! dodecahedron (the (1,1) geodesic sphere) by splitting every triangle into
//! k² lattice triangles. Goldberg–Coxeter operations compose by multiplying
//! their Eisenstein parameters, and (1+ω)·k = k + kω, so this yields the
//! (k,k) geodesic triangulation with 60k² faces.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{self, EmbeddedGraph, FullereneGraph, Triangulation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GoldbergError {
    #[error("geodesic parameter k must be at least 1")]
    ZeroK,
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture {name} is corrupt: {message}")]
    CorruptFixture { name: String, message: String },
}

/// Goldberg class (k,k).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeodesicSpec {
    k: usize,
}

impl GeodesicSpec {
    pub fn new(k: usize) -> Result<Self, GoldbergError> {
        if k == 0 {
            return Err(GoldbergError::ZeroK);
        }
        Ok(GeodesicSpec { k })
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn vertex_count(self) -> usize {
        60 * self.k * self.k
    }
}

/// The regular icosahedron: top 0, upper ring 1..=5, lower ring 6..=10,
/// bottom 11.
pub fn icosahedron() -> EmbeddedGraph {
    let up = |i: usize| 1 + i % 5;
    let low = |i: usize| 6 + i % 5;
    let mut tris = Vec::with_capacity(20);
    for i in 0..5 {
        tris.push([0, up(i), up(i + 1)]);
        tris.push([up(i), low(i), up(i + 1)]);
        tris.push([up(i + 1), low(i), low(i + 1)]);
        tris.push([11, low(i + 1), low(i)]);
    }
    EmbeddedGraph::from_oriented_triangles(12, &tris).expect("icosahedron is a valid sphere")
}

pub fn dodecahedron() -> FullereneGraph {
    let d = graph::dual_of(&icosahedron()).expect("icosahedron dual is simple");
    FullereneGraph::validate(d.graph).expect("dodecahedron is a fullerene")
}

/// Cones every face of a plane graph: one new vertex per face, adjacent to
/// the face's boundary. New vertex `n + f` sits in face `f`.
pub fn kis(g: &EmbeddedGraph) -> EmbeddedGraph {
    let n = g.n();
    let mut tris = Vec::with_capacity(2 * g.m());
    for (f, cyc) in g.faces().iter().enumerate() {
        for i in 0..cyc.len() {
            tris.push([cyc[i], cyc[(i + 1) % cyc.len()], n + f]);
        }
    }
    EmbeddedGraph::from_oriented_triangles(n + g.face_count(), &tris)
        .expect("coning the faces of a plane graph keeps it spherical")
}

/// Splits every triangle of a triangulation into `k²` lattice triangles.
///
/// Vertex ids: originals first, then the `k - 1` interior points of each edge
/// in edge-id order (from the lower endpoint), then face-interior points face
/// by face.
pub fn lattice_subdivide(g: &EmbeddedGraph, k: usize) -> EmbeddedGraph {
    assert!(k >= 1);
    if k == 1 {
        return g.clone();
    }
    let n = g.n();
    let edge_base = n;
    let mut next = n + g.m() * (k - 1);
    let mut tris = Vec::with_capacity(g.face_count() * k * k);
    for cyc in g.faces() {
        assert_eq!(cyc.len(), 3, "lattice_subdivide needs a triangulation");
        let (a, b, c) = (cyc[0], cyc[1], cyc[2]);
        let on_edge = |from: usize, to: usize, t: usize| -> usize {
            let e = g.edge_id(from, to).expect("face edge");
            let t = if from < to { t } else { k - t };
            edge_base + e * (k - 1) + (t - 1)
        };
        let mut interior: HashMap<(usize, usize), usize> = HashMap::new();
        for j in 1..k {
            for l in 1..k - j {
                interior.insert((j, l), next);
                next += 1;
            }
        }
        let point = |j: usize, l: usize| -> usize {
            let i = k - j - l;
            match (i, j, l) {
                (_, 0, 0) => a,
                (0, _, 0) => b,
                (0, 0, _) => c,
                (_, _, 0) => on_edge(a, b, j),
                (0, _, _) => on_edge(b, c, l),
                (_, 0, _) => on_edge(c, a, i),
                _ => interior[&(j, l)],
            }
        };
        for j in 0..k {
            for l in 0..k - j {
                tris.push([point(j, l), point(j + 1, l), point(j, l + 1)]);
                if j + l + 2 <= k {
                    tris.push([point(j + 1, l), point(j + 1, l + 1), point(j, l + 1)]);
                }
            }
        }
    }
    EmbeddedGraph::from_oriented_triangles(next, &tris)
        .expect("lattice subdivision of a triangulation is a triangulation")
}

/// The (k,k) geodesic triangulation: 60k² faces, twelve 5-vertices at
/// pairwise distance at least 2k.
pub fn icosahedral_dual(spec: GeodesicSpec) -> Triangulation {
    let pentakis = kis(dodecahedron().graph());
    let g = lattice_subdivide(&pentakis, spec.k());
    Triangulation::new(g).expect("geodesic sphere has degrees 5 and 6")
}

/// The icosahedral fullerene on 60k² vertices (k = 1: buckminsterfullerene).
pub fn icosahedral_fullerene(spec: GeodesicSpec) -> FullereneGraph {
    let tri = icosahedral_dual(spec);
    let d = graph::dual_of(tri.graph()).expect("geodesic sphere has a simple dual");
    FullereneGraph::validate(d.graph).expect("dual of a 5/6 triangulation is a fullerene")
}

const NAMED_FIXTURES: &[u8] = include_bytes!("../fixtures/named.pc");
const ISOMER_FIXTURES: &[u8] = include_bytes!("../fixtures/isomers.pc");

/// Names of the bundled fixtures, in file order: the three closed-shell
/// graphs `20:1`, `40:40`, `60:1812` followed by the small isomer set.
pub const FIXTURE_NAMES: &[&str] = &[
    "20:1", "40:40", "60:1812", "24:1", "c30-d5h", "c36-d6h", "c40-d5d", "c48-d6d", "c50-d5h",
];

/// Raw planar_code files shipped with the crate.
pub fn bundled_files() -> [(&'static str, &'static [u8]); 2] {
    [("named.pc", NAMED_FIXTURES), ("isomers.pc", ISOMER_FIXTURES)]
}

pub fn named_fixture(name: &str) -> Result<FullereneGraph, GoldbergError> {
    let idx = FIXTURE_NAMES
        .iter()
        .position(|&n| n == name)
        .ok_or_else(|| GoldbergError::UnknownFixture(name.to_string()))?;
    let (bytes, within) = if idx < 3 { (NAMED_FIXTURES, idx) } else { (ISOMER_FIXTURES, idx - 3) };
    let corrupt = |message: String| GoldbergError::CorruptFixture { name: name.to_string(), message };
    let mut graphs = graph::parse_planar_code(bytes).map_err(|e| corrupt(e.to_string()))?;
    if within >= graphs.len() {
        return Err(corrupt("missing from bundle".into()));
    }
    FullereneGraph::validate(graphs.swap_remove(within)).map_err(|e| corrupt(e.to_string()))
}

pub fn all_fixtures() -> Vec<(&'static str, FullereneGraph)> {
    FIXTURE_NAMES
        .iter()
        .map(|&name| (name, named_fixture(name).expect("bundled fixtures are valid")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bfs_distances, diameter};

    #[test]
    fn icosahedron_shape() {
        let g = icosahedron();
        assert_eq!((g.n(), g.m(), g.face_count()), (12, 30, 20));
        assert!((0..12).all(|v| g.degree(v) == 5));
    }

    #[test]
    fn dodecahedron_shape() {
        let d = dodecahedron();
        assert_eq!((d.n(), d.graph().m(), d.graph().face_count()), (20, 30, 12));
        assert_eq!(d.pentagons().len(), 12);
        assert_eq!(d.hexagon_count(), 0);
    }

    #[test]
    fn zero_k_is_rejected() {
        assert_eq!(GeodesicSpec::new(0), Err(GoldbergError::ZeroK));
    }

    #[test]
    fn geodesic_face_counts() {
        for k in 1..=4 {
            let tri = icosahedral_dual(GeodesicSpec::new(k).unwrap());
            assert_eq!(tri.graph().face_count(), 60 * k * k);
            assert_eq!(tri.graph().n(), 30 * k * k + 2);
            assert_eq!(tri.terminals().len(), 12);
        }
    }

    #[test]
    fn terminals_are_2k_apart() {
        for k in 1..=3 {
            let tri = icosahedral_dual(GeodesicSpec::new(k).unwrap());
            let mut min = usize::MAX;
            for &u in tri.terminals() {
                let d = bfs_distances(tri.graph(), u);
                for &v in tri.terminals() {
                    if v != u {
                        min = min.min(d[v]);
                    }
                }
            }
            assert_eq!(min, 2 * k);
        }
    }

    #[test]
    fn buckminsterfullerene() {
        let c60 = icosahedral_fullerene(GeodesicSpec::new(1).unwrap());
        assert_eq!(c60.n(), 60);
        assert_eq!(c60.pentagons().len(), 12);
        assert_eq!(c60.hexagon_count(), 20);
        assert_eq!(diameter(c60.graph()), 9);
        // No two pentagons share an edge.
        let g = c60.graph();
        for &p in c60.pentagons() {
            let cyc = &g.faces()[p];
            for i in 0..5 {
                let across = g.face_of_dart(cyc[(i + 1) % 5], cyc[i]).unwrap();
                assert_eq!(g.faces()[across].len(), 6);
            }
        }
    }

    #[test]
    fn larger_members() {
        for k in 2..=3 {
            let f = icosahedral_fullerene(GeodesicSpec::new(k).unwrap());
            assert_eq!(f.n(), 60 * k * k);
        }
    }

    #[test]
    fn unknown_fixture() {
        assert_eq!(
            named_fixture("70:1").unwrap_err(),
            GoldbergError::UnknownFixture("70:1".into())
        );
    }
}
