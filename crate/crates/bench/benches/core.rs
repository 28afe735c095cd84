use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use darboux_bench::{companion, dense, rank_one};
use darboux_core::{
    bareiss_det, cofactor_det, dodgson_det, m_det, wronskian_det, DerivationSpec, DetMethod,
    FieldConfig, MonomialBasis,
};

fn determinants(c: &mut Criterion) {
    let mut g = c.benchmark_group("det");
    for n in [3, 5, 6] {
        let m = dense(n);
        g.bench_with_input(BenchmarkId::new("cofactor", n), &m, |b, m| {
            b.iter(|| cofactor_det(m).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("bareiss", n), &m, |b, m| {
            b.iter(|| bareiss_det(m).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("dodgson", n), &m, |b, m| {
            b.iter(|| dodgson_det(m).unwrap())
        });
    }
    g.finish();
}

fn wronskians(c: &mut Criterion) {
    let cfg = FieldConfig::with_unit_derivatives(1);
    let spec = DerivationSpec::specialized(companion()).unwrap();
    let mut g = c.benchmark_group("wronskian");
    g.sample_size(10);
    for k in [1, 2] {
        let basis = MonomialBasis::new(k, 2, &cfg).unwrap();
        g.bench_with_input(BenchmarkId::new("bareiss", k), &basis, |b, basis| {
            b.iter(|| wronskian_det(basis, &spec, &cfg, DetMethod::Bareiss).unwrap())
        });
    }
    let basis = MonomialBasis::new(1, 2, &cfg).unwrap();
    g.bench_function("cofactor/1", |b| {
        b.iter(|| wronskian_det(&basis, &spec, &cfg, DetMethod::Cofactor).unwrap())
    });
    g.finish();
}

fn gl2(c: &mut Criterion) {
    let cfg = FieldConfig::with_unit_derivatives(1);
    let f = rank_one();
    c.bench_function("m_det/rank_one", |b| b.iter(|| m_det(&f, &cfg).unwrap()));
}

criterion_group!(benches, determinants, wronskians, gl2);
criterion_main!(benches);
