//! Sequential against parallel execution for the hot loops.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fulleroct::goldberg::{all_fixtures, icosahedral_dual, icosahedral_fullerene, GeodesicSpec};
use fulleroct::graph::diameter_with;
use fulleroct::moats::greedy_packing_with;
use fulleroct::refine::refine;
use fulleroct::report::{analyze_batch, AnalysisOptions};
use fulleroct::tjoin::min_tjoin_with;
use fulleroct::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn spec(k: usize) -> GeodesicSpec {
    GeodesicSpec::new(k).unwrap()
}

fn tjoin(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_tjoin");
    for k in [2, 4] {
        let t = icosahedral_dual(spec(k));
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("GP({k},{k})")), &t, |b, t| {
                b.iter(|| min_tjoin_with(t.graph(), t.terminals(), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn diameters(c: &mut Criterion) {
    let mut group = c.benchmark_group("diameter");
    group.sample_size(20);
    for k in [2, 4] {
        let f = icosahedral_fullerene(spec(k));
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, f.n()), &f, |b, f| {
                b.iter(|| diameter_with(f.graph(), exec))
            });
        }
    }
    group.finish();
}

fn packing(c: &mut Criterion) {
    let mut group = c.benchmark_group("greedy_packing");
    group.sample_size(20);
    let rt = refine(&icosahedral_dual(spec(3)));
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| greedy_packing_with(&rt, exec)));
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze_batch");
    group.sample_size(10);
    let graphs: Vec<_> = all_fixtures().into_iter().map(|(_, f)| f.into_graph()).collect();
    for (name, exec) in MODES {
        let opts = AnalysisOptions { spectra: true, exec, ..Default::default() };
        group.bench_function(name, |b| b.iter(|| analyze_batch(&graphs, &opts)));
    }
    group.finish();
}

criterion_group!(benches, tjoin, diameters, packing, batch);
criterion_main!(benches);
