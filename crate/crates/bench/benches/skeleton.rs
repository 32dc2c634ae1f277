use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sspkit::families::{build_bell_graph, build_noncrossing_graph};
use sspkit::geometry::{build_skeleton_oracle, enumerate_facets, FacetCaps};
use sspkit::skeleton::build_skeleton_e;
use sspkit::ZeroOnePolytope;

fn skeletons(c: &mut Criterion) {
    let mut group = c.benchmark_group("skeleton");
    group.sample_size(10);
    for n in [3, 4] {
        let p = ZeroOnePolytope::stable_set(&build_bell_graph(n).unwrap());
        group.bench_with_input(BenchmarkId::new("criterion/bell", n), &p, |b, p| b.iter(|| build_skeleton_e(p)));
        group.bench_with_input(BenchmarkId::new("oracle/bell", n), &p, |b, p| b.iter(|| build_skeleton_oracle(p)));
    }
    let nc5 = ZeroOnePolytope::stable_set(&build_noncrossing_graph(5).unwrap());
    group.bench_function("criterion/nc5", |b| b.iter(|| build_skeleton_e(&nc5)));
    group.finish();
}

fn facets(c: &mut Criterion) {
    let mut group = c.benchmark_group("facets");
    group.sample_size(10);
    let bell4 = ZeroOnePolytope::stable_set(&build_bell_graph(4).unwrap());
    group.bench_function("bell4", |b| b.iter(|| enumerate_facets(&bell4, FacetCaps::default()).unwrap()));
    group.finish();
}

criterion_group!(benches, skeletons, facets);
criterion_main!(benches);
