use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use greymark::{
    assess, check_equivalence, evaluate, mean_gn, scores_to_distribution, GradeScale, Whitening,
};
use greymark_bench::{long_expression, synthetic_sheet, table1};

fn bench_mean(c: &mut Criterion) {
    let scale = GradeScale::default_scale();
    let groups = table1();
    c.bench_function("mean_gn/table1", |b| {
        b.iter(|| {
            for (_, d) in &groups {
                black_box(mean_gn(black_box(d), &scale).unwrap());
            }
        })
    });
    c.bench_function("assess/table1", |b| {
        b.iter(|| {
            for (g, d) in &groups {
                black_box(assess(g, d, &scale, Whitening::default()).unwrap());
            }
        })
    });
    c.bench_function("tfn_equivalence/table1", |b| {
        b.iter(|| {
            for (_, d) in &groups {
                black_box(check_equivalence(d, &scale).unwrap());
            }
        })
    });
}

fn bench_classify(c: &mut Criterion) {
    let scale = GradeScale::default_scale();
    let mut group = c.benchmark_group("scores_to_distribution");
    for subjects in [5, 50, 500] {
        let sheet = synthetic_sheet(subjects, 6);
        group.bench_with_input(BenchmarkId::from_parameter(subjects), &sheet, |b, sheet| {
            b.iter(|| black_box(scores_to_distribution(sheet, &scale).unwrap()))
        });
    }
    group.finish();
}

fn bench_calc(c: &mut Criterion) {
    let mut group = c.benchmark_group("calc");
    for terms in [4, 32, 128] {
        let text = long_expression(terms);
        group.bench_with_input(BenchmarkId::from_parameter(terms), &text, |b, text| {
            b.iter(|| black_box(evaluate(text).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_mean, bench_classify, bench_calc);
criterion_main!(benches);
