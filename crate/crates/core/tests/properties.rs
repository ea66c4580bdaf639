use proptest::prelude::*;

use fulleroct::goldberg::{icosahedral_dual, GeodesicSpec};
use fulleroct::graph::{bfs_distances, parse_planar_code, write_planar_code};
use fulleroct::moats::{greedy_packing, verify_packing};
use fulleroct::refine::refine;
use fulleroct::tjoin::{is_tjoin, min_tjoin_with, terminal_metric};
use fulleroct::Execution;

fn subset(all: &[usize], mask: u16) -> Vec<usize> {
    all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tjoins_agree_across_modes(k in 1usize..=2, mask in 0u16..(1 << 12)) {
        let t = icosahedral_dual(GeodesicSpec::new(k).unwrap());
        let mut ts = subset(t.terminals(), mask);
        if ts.len() % 2 == 1 {
            ts.pop();
        }
        let a = min_tjoin_with(t.graph(), &ts, Execution::Sequential).unwrap();
        let b = min_tjoin_with(t.graph(), &ts, Execution::Parallel).unwrap();
        prop_assert_eq!(&a.edges, &b.edges);
        prop_assert!(is_tjoin(t.graph(), &a.edges, &ts).unwrap());
        // a join never beats half the sum of nearest-terminal distances
        let metric = terminal_metric(t.graph(), &ts).unwrap();
        let nearest: usize = (0..ts.len())
            .map(|i| (0..ts.len()).filter(|&j| j != i).map(|j| metric.dist(i, j)).min().unwrap_or(0))
            .sum();
        prop_assert!(2 * a.value() >= nearest);
    }

    #[test]
    fn refinement_doubles_distances(k in 1usize..=2, a in 0usize..12, b in 0usize..12) {
        let t = icosahedral_dual(GeodesicSpec::new(k).unwrap());
        let rt = refine(&t);
        let (u, v) = (t.terminals()[a], t.terminals()[b]);
        prop_assert_eq!(2 * bfs_distances(t.graph(), u)[v], bfs_distances(rt.graph(), u)[v]);
    }

    #[test]
    fn greedy_packings_verify(k in 1usize..=2, mask in 1u16..(1 << 12)) {
        let t = icosahedral_dual(GeodesicSpec::new(k).unwrap());
        let mut ts = subset(t.terminals(), mask);
        if ts.len() % 2 == 1 {
            ts.pop();
        }
        prop_assume!(!ts.is_empty());
        let t = fulleroct::graph::Triangulation::with_terminals(t.graph().clone(), ts.clone()).unwrap();
        let rt = refine(&t);
        let stats = verify_packing(&rt, &greedy_packing(&rt)).unwrap();
        let tau = min_tjoin_with(t.graph(), &ts, Execution::Sequential).unwrap().value();
        prop_assert!(stats.value <= num_rational::Ratio::from_integer(tau as i64));
    }

    #[test]
    fn planar_code_roundtrip(k in 1usize..=3) {
        let g = icosahedral_dual(GeodesicSpec::new(k).unwrap()).graph().clone();
        let bytes = write_planar_code([&g]).unwrap();
        let back = parse_planar_code(&bytes).unwrap();
        prop_assert_eq!(write_planar_code(&back).unwrap(), bytes);
        prop_assert_eq!(&back[0], &g);
    }
}
