//! Sequential against rayon-parallel execution for the main sweeps.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use cubic_mds::lfunc::{characters_mod24, SquarefreeTable};
use cubic_mds::mds::{odd_squarefree_up_to, z_coeff, z_n_oracle_batch, z_star_all, TruncationSpec};
use cubic_mds::numeric::real;
use cubic_mds::par::Execution;
use cubic_mds::verify;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn inner_series(c: &mut Criterion) {
    let ns = odd_squarefree_up_to(60);
    let mut g = c.benchmark_group("z_n_oracle_batch");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 20_000), &exec, |b, &exec| {
            b.iter(|| z_n_oracle_batch(black_box(&ns), real(2.5), 20_000, exec).unwrap())
        });
    }
    g.finish();
}

fn coefficient_regrouping(c: &mut Criterion) {
    let spec = TruncationSpec::new(300, 300, 1, 1e-13).unwrap();
    let mut g = c.benchmark_group("z_coeff");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "300x300"), &exec, |b, &exec| {
            b.iter(|| z_coeff(real(2.0), real(2.0), black_box(&spec), exec).unwrap())
        });
    }
    g.finish();
}

fn character_sums(c: &mut Criterion) {
    let spec = TruncationSpec::new(1, 200, 1, 1e-8).unwrap();
    let chars = characters_mod24();
    let mut g = c.benchmark_group("z_star_all");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 200), &exec, |b, &exec| {
            b.iter(|| z_star_all(&chars, real(2.5), real(2.0), black_box(&spec), exec).unwrap())
        });
    }
    g.finish();
}

fn root_count_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_roots");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| verify::root_counts(exec)));
    }
    g.finish();
}

fn squarefree_table(c: &mut Criterion) {
    c.bench_function("squarefree_table_1e4", |b| {
        b.iter(|| SquarefreeTable::new(real(2.5), black_box(10_000)).unwrap())
    });
}

criterion_group!(benches, inner_series, coefficient_regrouping, character_sums, root_count_sweep, squarefree_table);
criterion_main!(benches);
