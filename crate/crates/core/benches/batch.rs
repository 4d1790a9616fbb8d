use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use engelkit::batch::{map_with, Execution};
use engelkit::constructions::{cartan_prolongation, lorentzian_tube};
use engelkit::sampling::Sampler;

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ]
}

fn prolongation_batch(c: &mut Criterion) {
    let inputs: Vec<_> = (0..16)
        .map(|seed| Sampler::new(seed).contact_frame(2))
        .collect();
    let mut group = c.benchmark_group("prolongation");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| {
                map_with(exec, black_box(&inputs), |contact| {
                    cartan_prolongation(contact).map(|(_, r)| r.holds_generically)
                })
            })
        });
    }
    group.finish();
}

fn tube_batch(c: &mut Criterion) {
    let frames: Vec<_> = (0..8)
        .map(|seed| Sampler::new(seed).tube_frame(2))
        .collect();
    let mut group = c.benchmark_group("tube");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| {
                map_with(exec, black_box(&frames), |[v1, v2, v3]| {
                    lorentzian_tube(v1, v2, v3).map(|(_, r)| r.holds_generically)
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, prolongation_batch, tube_batch);
criterion_main!(benches);
