use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use dlcurve::curve::{CountMethod, CurveModel};
use dlcurve::field::Field;
use dlcurve::function_field::orders::OrderLab;
use dlcurve::ovoid::{generate_ovoid, secant_check, secant_check_by_projection};
use dlcurve::par::Execution;
use dlcurve::params::SuzukiParams;

const BACKENDS: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn suzuki(s: u32) -> CurveModel {
    CurveModel::suzuki(SuzukiParams::new(s).unwrap()).unwrap()
}

fn counting(c: &mut Criterion) {
    let mut g = c.benchmark_group("count");
    g.sample_size(10);
    let c1 = suzuki(1);
    let c2 = suzuki(2);
    for (name, exec) in BACKENDS {
        g.bench_with_input(BenchmarkId::new("exhaustive s=1 n=3", name), &exec, |b, &e| {
            b.iter(|| c1.count_points_with(black_box(3), CountMethod::Exhaustive, e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("fibered s=2 n=3", name), &exec, |b, &e| {
            b.iter(|| c2.count_points_with(black_box(3), CountMethod::Fibered, e).unwrap())
        });
    }
    g.finish();
}

fn secants(c: &mut Criterion) {
    let mut g = c.benchmark_group("secant");
    g.sample_size(10);
    let f1 = Field::get(2, 3).unwrap();
    let o1 = generate_ovoid(&SuzukiParams::new(1).unwrap()).unwrap();
    let f2 = Field::get(2, 5).unwrap();
    let o2 = generate_ovoid(&SuzukiParams::new(2).unwrap()).unwrap();
    for (name, exec) in BACKENDS {
        g.bench_with_input(BenchmarkId::new("pencil s=1", name), &exec, |b, &e| {
            b.iter(|| assert!(secant_check(&f1, &o1, e)))
        });
        g.bench_with_input(BenchmarkId::new("projection s=2", name), &exec, |b, &e| {
            b.iter(|| assert!(secant_check_by_projection(&f2, &o2, e)))
        });
    }
    g.finish();
}

fn orders(c: &mut Criterion) {
    let mut g = c.benchmark_group("orders");
    g.sample_size(10);
    let lab = OrderLab::new(&suzuki(1)).unwrap();
    let pts: Vec<_> = lab.split.non_rational.iter().take(64).copied().collect();
    for (name, exec) in BACKENDS {
        g.bench_with_input(BenchmarkId::new("64 points s=1", name), &exec, |b, &e| {
            b.iter(|| lab.at_all(black_box(&pts), None, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, counting, secants, orders);
criterion_main!(benches);
