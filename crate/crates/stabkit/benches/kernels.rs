//! Benchmarks of the enumeration kernels. Built with the default
//! `parallel` feature each group compares the rayon path against the same
//! computation pinned to a single worker thread; built with
//! `--no-default-features` the same benchmark IDs measure the sequential
//! fallback code path, so criterion's saved baselines line up across the
//! two builds.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use stabkit::corpus::run_invariant_suites;
use stabkit::graph::{triangle_hendecagon_graph, triangle_polygon_graph, Graph};
use stabkit::ideal::MonomialIdeal;
use stabkit::matching::gallai_edmonds;
use stabkit::replication::make_factor_critical;
use stabkit::stab::analyze;
use stabkit::Limits;

fn k6() -> Graph {
    let mut g = Graph::new();
    for u in 1..=6 {
        for v in (u + 1)..=6 {
            g.add_edge(&format!("v{u}"), &format!("v{v}")).unwrap();
        }
    }
    g
}

/// Run `f` on the configured execution path. With the parallel feature the
/// `sequential` variant executes inside a single-threaded rayon pool; in a
/// `--no-default-features` build both names use the plain sequential code.
fn on_path<R: Send>(sequential: bool, f: impl Fn() -> R + Sync + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if sequential {
            rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .unwrap()
                .install(f)
        } else {
            f()
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = sequential;
        f()
    }
}

fn variants() -> Vec<(&'static str, bool)> {
    if cfg!(feature = "parallel") {
        vec![("parallel", false), ("sequential", true)]
    } else {
        vec![("sequential", true)]
    }
}

fn bench_analyze(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("analyze_hendecagon13");
    let g = triangle_hendecagon_graph();
    for (name, seq) in variants() {
        group.bench_function(name, |b| {
            b.iter(|| on_path(seq, || black_box(analyze(&g, &limits).unwrap().astab)))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("analyze_polygon11");
    let g = triangle_polygon_graph(4);
    for (name, seq) in variants() {
        group.bench_function(name, |b| {
            b.iter(|| on_path(seq, || black_box(analyze(&g, &limits).unwrap().astab)))
        });
    }
    group.finish();
}

fn bench_gallai_edmonds(c: &mut Criterion) {
    let limits = Limits::default();
    let g = triangle_hendecagon_graph();
    let fc = make_factor_critical(&g, &limits).unwrap();
    let replicated = fc.replicated.graph;
    let mut group = c.benchmark_group("gallai_edmonds_replicated");
    for (name, seq) in variants() {
        group.bench_function(name, |b| {
            b.iter(|| on_path(seq, || black_box(gallai_edmonds(&replicated).d)))
        });
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let limits = Limits::default();
    // One heavy decomposition (sequential inside by design)...
    let ideal = MonomialIdeal::edge_ideal(&k6()).power(2).unwrap();
    c.bench_function("oracle_k6_squared", |b| {
        b.iter(|| black_box(ideal.irreducible_decomposition(&limits).unwrap().len()))
    });
    // ...and a batch across a corpus, which is where the workers fan out.
    let ideals: Vec<MonomialIdeal> = stabkit::corpus::connected_non_bipartite_up_to_iso(5)
        .iter()
        .map(|g| MonomialIdeal::edge_ideal(g).power(3).unwrap())
        .collect();
    let decompose_all = |ideals: &[MonomialIdeal]| -> usize {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            ideals
                .par_iter()
                .map(|i| i.irreducible_decomposition(&limits).unwrap().len())
                .sum()
        }
        #[cfg(not(feature = "parallel"))]
        {
            ideals
                .iter()
                .map(|i| i.irreducible_decomposition(&limits).unwrap().len())
                .sum()
        }
    };
    let mut group = c.benchmark_group("oracle_batch_n5_cubed");
    for (name, seq) in variants() {
        group.bench_function(name, |b| {
            b.iter(|| on_path(seq, || black_box(decompose_all(&ideals))))
        });
    }
    group.finish();
}

fn bench_corpus(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("corpus_suite5");
    group.sample_size(10);
    for (name, seq) in variants() {
        group.bench_function(name, |b| {
            b.iter(|| {
                on_path(seq, || {
                    let results = run_invariant_suites(5, true, 0, 1, &limits);
                    black_box(results.iter().all(|r| r.passed()))
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_analyze, bench_gallai_edmonds, bench_oracle, bench_corpus);
criterion_main!(benches);
