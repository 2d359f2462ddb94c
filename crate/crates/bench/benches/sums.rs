use std::hint::black_box;

use cotsum::reciprocity::{cot_pair_sum, dedekind_sum, CotKernel};
use cotsum::rootsums::{pole_sum_bruteforce, pole_sum_closed, PoleSpec};
use cotsum::trigsums::{trig_sum_check, TrigFamily, TrigFamilyId};
use cotsum::twoperiod::{two_period_bruteforce, TwoPeriodKernel, TwoPeriodSpec};
use cotsum::PrecisionContext;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn ctx() -> PrecisionContext {
    PrecisionContext::new(256).unwrap()
}

fn pole_sums(c: &mut Criterion) {
    let ctx = ctx();
    let mut g = c.benchmark_group("pole_sum");
    for k in [11i64, 41, 101] {
        let spec = PoleSpec::tabulated(k).pop().unwrap();
        g.bench_with_input(BenchmarkId::new("bruteforce", k), &spec, |b, s| {
            b.iter(|| pole_sum_bruteforce(&ctx, black_box(s)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("closed", k), &spec, |b, s| {
            b.iter(|| pole_sum_closed(black_box(s)).unwrap())
        });
    }
    g.finish();
}

fn trig_checks(c: &mut Criterion) {
    let ctx = ctx();
    let mut g = c.benchmark_group("trig_check");
    for k in [11i64, 51, 101] {
        let fam = TrigFamily::stated(TrigFamilyId::ALL[0], k).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(k), &fam, |b, f| {
            b.iter(|| trig_sum_check(&ctx, black_box(f)).unwrap())
        });
    }
    g.finish();
}

fn reciprocity(c: &mut Criterion) {
    let ctx = ctx();
    c.bench_function("dedekind_sum/(13,31)", |b| {
        b.iter(|| dedekind_sum(black_box(13), black_box(31)).unwrap())
    });
    c.bench_function("cot_pair_sum/csc6/(13,31)", |b| {
        b.iter(|| cot_pair_sum(&ctx, black_box(13), black_box(31), CotKernel::Csc6).unwrap())
    });
}

fn two_period(c: &mut Criterion) {
    let ctx = ctx();
    let spec = TwoPeriodSpec::new(7, 11, TwoPeriodKernel::Csc2).unwrap();
    c.bench_function("two_period/csc2/(7,11)", |b| {
        b.iter(|| two_period_bruteforce(&ctx, black_box(&spec)).unwrap())
    });
}

criterion_group!(benches, pole_sums, trig_checks, reciprocity, two_period);
criterion_main!(benches);
