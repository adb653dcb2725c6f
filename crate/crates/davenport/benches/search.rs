//! Compares the sequential and work-stealing search drivers on groups small
//! enough to finish a full exhaustion inside a benchmark iteration.
//!
//! With the `parallel` feature disabled both configurations run the
//! sequential driver, so the two series coincide; the bench then documents
//! that the fallback costs nothing extra.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use davenport::group::AbelianGroup;
use davenport::search::{max_dissociated, SearchConfig, SearchResult};
use davenport::weights::{WeightSet, WeightSpec};

fn run(moduli: &[u64], threads: Option<usize>, reduction: bool) -> SearchResult {
    let g = AbelianGroup::new(moduli).unwrap();
    let p = g.as_product().unwrap();
    let w = WeightSet::from_spec(&WeightSpec::Pm, p.exponent()).unwrap();
    let config = SearchConfig {
        threads,
        symmetric_reduction: reduction,
        ..SearchConfig::default()
    };
    max_dissociated(&p, &w, &config).unwrap()
}

fn bench_drivers(c: &mut Criterion) {
    let cases: [&[u64]; 3] = [&[3, 3, 3], &[2, 2, 2, 2, 2], &[3, 3, 3, 3]];
    let mut group = c.benchmark_group("exhaustive-search");
    group.sample_size(10);
    for moduli in cases {
        let label = moduli
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join("x");
        group.bench_with_input(
            BenchmarkId::new("sequential", &label),
            &moduli,
            |b, moduli| b.iter(|| run(moduli, Some(1), true)),
        );
        group.bench_with_input(
            BenchmarkId::new("parallel", &label),
            &moduli,
            |b, moduli| b.iter(|| run(moduli, None, true)),
        );
    }
    group.finish();
}

fn bench_reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit-reduction");
    group.sample_size(10);
    for (label, reduction) in [("on", true), ("off", false)] {
        group.bench_with_input(
            BenchmarkId::new("3x3x3", label),
            &reduction,
            |b, &reduction| b.iter(|| run(&[3, 3, 3], Some(1), reduction)),
        );
        group.bench_with_input(
            BenchmarkId::new("2x2x2x2x2", label),
            &reduction,
            |b, &reduction| b.iter(|| run(&[2, 2, 2, 2, 2], Some(1), reduction)),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_drivers, bench_reduction);
criterion_main!(benches);
