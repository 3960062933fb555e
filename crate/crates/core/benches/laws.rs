use std::hint::black_box;
use std::sync::Arc;

use cornet::cornet::laws::check_cornet_laws;
use cornet::cornet::{Exec, SuiteConfig};
use cornet::fuzzy::FuzzyCornet;
use cornet::geometry::rat;
use cornet::sample::SamplerConfig;
use cornet::sets::{Carrier, Repr, SetCornet};
use cornet::wedge::{ElemCornet, Wedge};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn cfg(exec: Exec) -> SuiteConfig {
    SuiteConfig {
        seed: 0,
        cases: 64,
        n_max: 6,
        exec,
    }
}

fn execs() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn laws(c: &mut Criterion) {
    let mut g = c.benchmark_group("cornet_laws");
    g.sample_size(10);
    let elem = ElemCornet::new(Arc::new(Wedge::orthant(3)), SamplerConfig::default());
    let sets = SetCornet::new(Arc::new(Wedge::orthant(2)), Carrier::Rational, Repr::Discrete, SamplerConfig::default());
    let poly = SetCornet::new(Arc::new(Wedge::orthant(2)), Carrier::Rational, Repr::Polytopic, SamplerConfig::default());
    let fuzzy = FuzzyCornet::new(Arc::new(Wedge::orthant(1)), rat(1), Repr::Discrete, SamplerConfig::default()).unwrap();
    for (label, exec) in execs() {
        g.bench_with_input(BenchmarkId::new("elemQ_d3", label), &exec, |b, &e| {
            b.iter(|| black_box(check_cornet_laws(&elem, &cfg(e))))
        });
        g.bench_with_input(BenchmarkId::new("setQ_discrete_d2", label), &exec, |b, &e| {
            b.iter(|| black_box(check_cornet_laws(&sets, &cfg(e))))
        });
        g.bench_with_input(BenchmarkId::new("setQ_polytopic_d2", label), &exec, |b, &e| {
            b.iter(|| black_box(check_cornet_laws(&poly, &cfg(e))))
        });
        g.bench_with_input(BenchmarkId::new("fuzzyQ_d1", label), &exec, |b, &e| {
            b.iter(|| black_box(check_cornet_laws(&fuzzy, &cfg(e))))
        });
    }
    g.finish();
}

criterion_group!(benches, laws);
criterion_main!(benches);
