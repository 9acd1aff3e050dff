use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use grovlab_core::conjlab::{family_state, scan_family, FamilyKind, FamilySpec, ScanOptions};
use grovlab_core::groverian::{pmax_alternating, SolverOptions};
use grovlab_core::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn multistart(c: &mut Criterion) {
    let state = family_state(&FamilySpec::Gw { a: 0.8, b: 0.48, c: 0.36 }).unwrap();
    let mut group = c.benchmark_group("pmax_multistart");
    for (name, exec) in MODES {
        let opts = SolverOptions { restarts: 64, exec, ..SolverOptions::with_seed(1) };
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| pmax_alternating(&state, o).unwrap())
        });
    }
    group.finish();
}

fn scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_four_term_9x9");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = ScanOptions { exec, ..ScanOptions::default() };
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| scan_family(FamilyKind::FourTerm, 9, o).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, multistart, scan);
criterion_main!(benches);
