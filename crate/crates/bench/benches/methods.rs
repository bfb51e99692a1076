//! Compares the independent evaluation strategies against each other and
//! sizes the congruence-counting and partial-sum pipelines.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use orbicyclic::asymptotics::{euler_constant, exact_partial_sum};
use orbicyclic::congruence::{
    count_bruteforce, count_formula, CongruenceInstance, DivisorSet,
};
use orbicyclic::orbicyclic::{e_convolution, e_definition, e_divisor, e_multiplicative};
use orbicyclic::ramanujan::{c_divisor, c_exponential, c_prime_power_method};
use orbicyclic::ArgTuple;

fn ramanujan(c: &mut Criterion) {
    let mut group = c.benchmark_group("ramanujan");
    let (n, k) = (75_600, 1_234);
    group.bench_function("prime_power", |b| {
        b.iter(|| c_prime_power_method(black_box(n), black_box(k)).unwrap())
    });
    group.bench_function("divisor", |b| {
        b.iter(|| c_divisor(black_box(n), black_box(k)).unwrap())
    });
    group.bench_function("exponential", |b| {
        b.iter(|| c_exponential(black_box(n), black_box(k)).unwrap())
    });
    group.finish();
}

fn orbicyclic_methods(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbicyclic");
    let t = ArgTuple::new(vec![360, 840, 600]).unwrap();
    group.bench_function("multiplicative", |b| {
        b.iter(|| e_multiplicative(black_box(&t)).unwrap())
    });
    group.bench_function("convolution", |b| {
        b.iter(|| e_convolution(black_box(&t)).unwrap())
    });
    group.bench_function("divisor", |b| {
        b.iter(|| e_divisor(black_box(&t)).unwrap())
    });
    let small = ArgTuple::new(vec![36, 84, 60]).unwrap();
    group.bench_function("definition_small", |b| {
        b.iter(|| e_definition(black_box(&small), small.lcm()).unwrap())
    });
    group.finish();
}

fn congruence(c: &mut Criterion) {
    let mut group = c.benchmark_group("congruence");
    let sets = vec![
        DivisorSet::new([1u64, 2, 4]).unwrap(),
        DivisorSet::new([1u64, 3]).unwrap(),
        DivisorSet::new([2u64, 6]).unwrap(),
    ];
    let inst = CongruenceInstance::new(60, 7, sets).unwrap();
    group.bench_function("formula", |b| {
        b.iter(|| count_formula(black_box(&inst)).unwrap())
    });
    group.bench_function("bruteforce", |b| {
        b.iter(|| count_bruteforce(black_box(&inst)).unwrap())
    });
    group.finish();
}

fn asymptotics(c: &mut Criterion) {
    let mut group = c.benchmark_group("asymptotics");
    group.sample_size(10);
    group.bench_function("partial_sum_r3_x5000", |b| {
        b.iter(|| exact_partial_sum(3, black_box(5000)).unwrap())
    });
    group.bench_function("euler_constant_r2_1e4", |b| {
        b.iter(|| euler_constant(2, black_box(10_000)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, ramanujan, orbicyclic_methods, congruence, asymptotics);
criterion_main!(benches);
