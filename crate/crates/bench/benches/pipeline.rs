use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use salemkit::builtins::{e8_components, named_selector, phi14};
use salemkit::certroots::isolate_algebraic;
use salemkit::factor::{factor_mod2, factor_z, salem_classify};
use salemkit::fixpoint::solve_unknown_point;
use salemkit::interval::Precision;
use salemkit::k3::k3_verify;
use salemkit::numfield::NumberField;
use salemkit_bench::{salem_polynomials, salem_product};

fn classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("salem_classify");
    for (name, p) in salem_polynomials() {
        g.bench_function(name, |b| b.iter(|| salem_classify(black_box(&p))));
    }
    g.finish();
}

fn factoring(c: &mut Criterion) {
    let p = salem_product();
    c.bench_function("factor_z/product_of_five", |b| b.iter(|| factor_z(black_box(&p))));
    c.bench_function("factor_mod2/product_of_five", |b| b.iter(|| factor_mod2(black_box(&p))));
}

fn roots(c: &mut Criterion) {
    let p = phi14();
    c.bench_function("isolate_algebraic/phi14", |b| {
        b.iter(|| isolate_algebraic(black_box(&p), &Precision::default()).unwrap())
    });
}

fn lefschetz(c: &mut Criterion) {
    let field = NumberField::new(phi14()).unwrap();
    let comps = e8_components();
    c.bench_function("solve_unknown_point/e8", |b| {
        b.iter(|| solve_unknown_point(black_box(&comps), &field, 1).unwrap())
    });
}

fn k3(c: &mut Criterion) {
    let p = phi14();
    let sel = named_selector("delta").unwrap();
    let mut g = c.benchmark_group("k3_verify");
    g.sample_size(10);
    g.bench_function("phi14/delta", |b| {
        b.iter(|| k3_verify(black_box(&p), &sel, None, &Precision::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, classify, factoring, roots, lefschetz, k3);
criterion_main!(benches);
