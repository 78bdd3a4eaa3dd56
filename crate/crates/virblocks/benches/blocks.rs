use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use virblocks::assoc::{assoc_check_arith, Arith};
use virblocks::par::{set_mode, Mode};
use virblocks::series::{compose_blocks, compose_blocks_f64};

const MODES: [(Mode, &str); 2] = [(Mode::Sequential, "sequential"), (Mode::Parallel, "parallel")];

fn symbolic_blocks(c: &mut Criterion) {
    let mut g = c.benchmark_group("compose_blocks_symbolic");
    g.sample_size(10);
    for (mode, name) in MODES {
        g.bench_function(BenchmarkId::new(name, "N=3 K=8"), |b| {
            set_mode(mode);
            b.iter(|| compose_blocks(&[1, 2, 1, 2, 2], &[1, 1, 2, 2], 8).unwrap())
        });
    }
    g.finish();
}

fn float_blocks(c: &mut Criterion) {
    let mut g = c.benchmark_group("compose_blocks_f64");
    g.sample_size(10);
    for (mode, name) in MODES {
        g.bench_function(BenchmarkId::new(name, "N=2 K=160"), |b| {
            set_mode(mode);
            b.iter(|| compose_blocks_f64(&[2, 2, 2, 2], &[2, 2, 2], 160, 7f64.sqrt()).unwrap())
        });
    }
    g.finish();
}

fn assoc(c: &mut Criterion) {
    let mut g = c.benchmark_group("assoc_check");
    g.sample_size(10);
    for (mode, name) in MODES {
        g.bench_function(BenchmarkId::new(name, "(2,2,2,2) exact K=24"), |b| {
            set_mode(mode);
            b.iter(|| assoc_check_arith([2, 2, 2, 2], 2, [0.8, 1.0], 7f64.sqrt(), 24, 1e-8, Arith::Exact).unwrap())
        });
    }
    g.finish();
    set_mode(Mode::Parallel);
}

criterion_group!(benches, symbolic_blocks, float_blocks, assoc);
criterion_main!(benches);
