//! Sequential against parallel execution on the data-parallel kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use linsofic_core::almosthom::{FiniteGroup, LengthMode};
use linsofic_core::amplify::tensor_square_iterate;
use linsofic_core::exactfield::Field;
use linsofic_core::jordanlen::iota_report;
use linsofic_core::matspace::Matrix;
use linsofic_core::par::{self, Exec};
use linsofic_core::verify::gen::{conjugate_random, regular_rep};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn length_reports(c: &mut Criterion) {
    let mut group = c.benchmark_group("length_reports");
    for field in [Field::prime(5).unwrap(), Field::rationals()] {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let batch: Vec<Matrix> = (0..64).map(|_| Matrix::random_invertible(&field, 6, &mut rng)).collect();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, field.name()), &batch, |b, batch| {
                b.iter(|| par::map(exec, batch, |a| iota_report(a, &[]).unwrap()))
            });
        }
    }
    group.finish();
}

fn hom_defect(c: &mut Criterion) {
    let mut group = c.benchmark_group("defect");
    group.sample_size(20);
    let field = Field::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let hom = regular_rep(&FiniteGroup::symmetric(4), &field, 2, LengthMode::Jordan).unwrap();
    let hom = conjugate_random(&hom, &mut rng).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "S4 dim 26"), |b| b.iter(|| hom.defect_with(exec).unwrap()));
    }
    group.finish();
}

fn tensor_square(c: &mut Criterion) {
    let mut group = c.benchmark_group("tensor_square");
    group.sample_size(10);
    let field = Field::prime(3).unwrap();
    let hom = regular_rep(&FiniteGroup::cyclic(4), &field, 0, LengthMode::Jordan).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "C4 to dim 256"), |b| {
            b.iter(|| tensor_square_iterate(&hom, 2, 4096, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, length_reports, hom_defect, tensor_square);
criterion_main!(benches);
