//! Sequential vs. rayon-parallel comparison for the two data-parallel paths:
//! the all-sources odd-girth scan and sweep execution.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ogc_core::sweep::{run_duel, run_sweep_sequential, DuelConfig, SweepSpec};
use ogc_core::{replay_verify, AlgorithmKind, ColoredGraph, PresenterKind, VerifyDepth};

fn game_graph(c: u32) -> ColoredGraph {
    let config = DuelConfig::new(PresenterKind::OddGirthSeven, AlgorithmKind::FirstFit, c);
    let result = run_duel(&config).expect("duel completes");
    let (_, graph) = replay_verify(&result.transcript).expect("transcript replays");
    graph
}

fn bench_odd_girth(criterion: &mut Criterion) {
    let mut group = criterion.benchmark_group("odd_girth");
    group.sample_size(10);
    for c in [3u32, 4] {
        let graph = game_graph(c);
        let label = format!("c{}_n{}", c, graph.vertex_count());
        group.bench_with_input(BenchmarkId::new("sequential", &label), &graph, |b, g| {
            b.iter(|| g.odd_girth_sequential())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", &label), &graph, |b, g| {
            b.iter(|| g.odd_girth_parallel())
        });
    }
    group.finish();
}

fn bench_sweep(criterion: &mut Criterion) {
    let spec = SweepSpec {
        presenter: PresenterKind::Bipartite,
        algorithms: vec![AlgorithmKind::FirstFit, AlgorithmKind::FreshColor],
        colors: (2, 10),
        seeds: vec![0],
        round_cap: None,
        depth: VerifyDepth::Auto,
    };
    let mut group = criterion.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| run_sweep_sequential(&spec)));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| ogc_core::sweep::run_sweep_parallel(&spec))
    });
    group.finish();
}

criterion_group!(benches, bench_odd_girth, bench_sweep);
criterion_main!(benches);
