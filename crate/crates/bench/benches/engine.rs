use criterion::{criterion_group, criterion_main, Criterion};
use wusq_core::basis::GradedRing;
use wusq_core::corpus::builtin;
use wusq_core::steenrod::{composition_count, sq_class};
use wusq_core::{Analysis, AnalysisOptions, ClassPoly, ParamPoly};

fn evi_ring(c: &mut Criterion) {
    let p = builtin("EVI").unwrap().presentation;
    c.bench_function("evi_ring_build", |b| {
        b.iter(|| GradedRing::new(&p).unwrap())
    });
}

fn evi_analysis(c: &mut Criterion) {
    let p = builtin("EVI").unwrap().presentation;
    let mut g = c.benchmark_group("evi_analysis");
    g.sample_size(10);
    g.bench_function("constrained_table", |b| {
        b.iter(|| Analysis::new(&p, &AnalysisOptions::default()).unwrap())
    });
    g.finish();
}

fn evi_sq8(c: &mut Criterion) {
    let p = builtin("EVI").unwrap().presentation;
    let a = Analysis::new(&p, &AnalysisOptions::default()).unwrap();
    let x: ClassPoly<ParamPoly> = a.presentation().parse("y2^12*y12*y20").unwrap();
    c.bench_function("evi_sq8_degree56", |b| {
        b.iter(|| sq_class(a.ring(), a.table(), &x, 8).unwrap())
    });
    c.bench_function("evi_verdict_k4", |b| b.iter(|| a.verdict(4).unwrap()));
}

fn combinatorics(c: &mut Criterion) {
    c.bench_function("composition_count_8_12", |b| {
        b.iter(|| composition_count(8, 12))
    });
}

criterion_group!(benches, evi_ring, evi_analysis, evi_sq8, combinatorics);
criterion_main!(benches);
