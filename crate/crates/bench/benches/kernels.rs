use criterion::{criterion_group, criterion_main, Criterion};
use morita_bench::{matrix_pair, set_pair};
use morita_core::catalog::functor_by_name;
use morita_core::{build_matrix_example, cocontinuity_verdict, verify_certificate, Base, ProbeFamily};

fn limits(c: &mut Criterion) {
    let (f, g) = matrix_pair(2, 64, 9).unwrap();
    let v = Base::finvec(2).unwrap();
    c.bench_function("equalizer F2 64", |b| b.iter(|| v.equalizer(&f, &g).unwrap()));
    c.bench_function("coequalizer F2 64", |b| b.iter(|| v.coequalizer(&f, &g).unwrap()));
    let (f, g) = set_pair(4096, 9).unwrap();
    c.bench_function("coequalizer set 4096", |b| b.iter(|| Base::FinSet.coequalizer(&f, &g).unwrap()));
}

fn certificates(c: &mut Criterion) {
    let mut group = c.benchmark_group("matrix certificate");
    group.sample_size(10);
    for (p, n) in [(2u32, 2usize), (3, 2), (2, 3)] {
        group.bench_function(format!("build ({p},{n})"), |b| b.iter(|| build_matrix_example(p, n).unwrap()));
        let cert = build_matrix_example(p, n).unwrap();
        let pb = ProbeFamily::shallow("b", cert.x.monoid(), &[]).unwrap();
        let pd = ProbeFamily::shallow("b'", cert.y.monoid(), &[cert.x.object().clone()]).unwrap();
        group.bench_function(format!("verify ({p},{n})"), |b| b.iter(|| verify_certificate(&cert, &pb, &pd).unwrap()));
    }
    group.finish();
}

fn verdicts(c: &mut Criterion) {
    let mut group = c.benchmark_group("cocontinuity verdict");
    group.sample_size(10);
    for name in ["z2/fix", "m2f2/hom-row"] {
        let f = functor_by_name(name).unwrap();
        group.bench_function(name, |b| b.iter(|| cocontinuity_verdict(&f.functor, &f.probes).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, limits, certificates, verdicts);
criterion_main!(benches);
