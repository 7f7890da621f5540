use criterion::{criterion_group, criterion_main, Criterion};
use endv_bench::prepared;
use endv_core::coend::compute_endv;
use endv_core::fincat::{validate_category, validate_u};
use endv_core::vncore::{build_core, check_fusion_equation, check_vn_axiom, complete_with_unit};

fn coend(c: &mut Criterion) {
    let mut g = c.benchmark_group("coend");
    g.sample_size(10);
    for name in ["z2", "s3", "promonoidal-toy"] {
        let (inst, _, _) = prepared(name);
        g.bench_function(format!("compute_endv/{name}"), |b| {
            b.iter(|| compute_endv(&inst).unwrap())
        });
    }
    let (inst, e, _) = prepared("s3");
    g.bench_function("build_core/s3", |b| {
        b.iter(|| build_core(&inst, &e).unwrap())
    });
    g.finish();
}

fn checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("checks");
    g.sample_size(10);
    let (inst, _, core) = prepared("s3");
    g.bench_function("fusion_equation/s3", |b| {
        b.iter(|| check_fusion_equation(&core))
    });
    g.bench_function("vn_axiom/s3", |b| b.iter(|| check_vn_axiom(&core)));
    g.bench_function("complete_with_unit/s3", |b| {
        b.iter(|| complete_with_unit(&core).unwrap())
    });
    g.bench_function("validate_category/s3", |b| {
        b.iter(|| validate_category(&inst.presentation))
    });
    g.bench_function("validate_u/s3", |b| {
        b.iter(|| validate_u(&inst.presentation, &inst.functor))
    });
    g.finish();
}

criterion_group!(benches, coend, checks);
criterion_main!(benches);
