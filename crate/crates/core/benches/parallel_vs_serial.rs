//! Compares the library's batch entry points (data-parallel under the
//! default `parallel` feature) against hand-written sequential baselines
//! doing the same work. Building with `--no-default-features` makes both
//! arms sequential, which measures the dispatch overhead alone. On a
//! single-core machine the batched arm only pays rayon overhead; the
//! comparison is informative on multicore hardware.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use margulis::affine::FlowState;
use margulis::schottky::{probe_batch, recurrence_probe, ProbeParams};
use margulis::sections::{spectrum, spectrum_row};
use margulis::{AffinePoint, GroupPresentation, LorentzVector};

fn bench_spectrum(c: &mut Criterion) {
    let group = GroupPresentation::reference();
    let mut g = c.benchmark_group("spectrum");
    for max_len in [5usize, 7] {
        // Both arms enumerate classes, compute one row per class, and sort;
        // only the per-class map differs.
        g.bench_with_input(BenchmarkId::new("batched", max_len), &max_len, |b, &n| {
            b.iter(|| spectrum(&group, n).unwrap())
        });
        g.bench_with_input(
            BenchmarkId::new("serial_baseline", max_len),
            &max_len,
            |b, &n| {
                b.iter(|| {
                    let classes = group.conjugacy_classes(n);
                    let mut rows: Vec<_> = classes
                        .iter()
                        .map(|w| spectrum_row(&group, w).unwrap())
                        .collect();
                    rows.sort_by(|a, b| a.ell.total_cmp(&b.ell));
                    rows
                })
            },
        );
    }
    g.finish();
}

fn bench_limit_set(c: &mut Criterion) {
    let group = GroupPresentation::reference();
    let mut g = c.benchmark_group("limit_set");
    for max_len in [6usize, 8] {
        g.bench_with_input(BenchmarkId::new("batched", max_len), &max_len, |b, &n| {
            b.iter(|| group.limit_set(n))
        });
        g.bench_with_input(
            BenchmarkId::new("serial_baseline", max_len),
            &max_len,
            |b, &n| {
                b.iter(|| {
                    group
                        .conjugacy_classes(n)
                        .iter()
                        .map(|w| {
                            let f = group.word_linear(w).eigen_frame().unwrap();
                            (f.x_plus, f.x_minus)
                        })
                        .collect::<Vec<_>>()
                })
            },
        );
    }
    g.finish();
}

fn bench_probes(c: &mut Criterion) {
    let group = GroupPresentation::reference();
    let params = ProbeParams {
        t_max: 10.0,
        ..ProbeParams::default()
    };
    let starts: Vec<FlowState> = (0..8)
        .map(|i| {
            let angle = 0.3 + 0.11 * i as f64;
            FlowState::new(
                AffinePoint::new(0.1 * i as f64, -0.05 * i as f64, 0.0),
                LorentzVector::new(0.3 * angle.cos(), 0.3 * angle.sin(), 1.05),
            )
        })
        .collect();
    let mut g = c.benchmark_group("recurrence_probes");
    g.sample_size(10);
    g.bench_function("batched", |b| {
        b.iter(|| probe_batch(&group, &starts, &params))
    });
    g.bench_function("serial_baseline", |b| {
        b.iter(|| {
            starts
                .iter()
                .map(|s| recurrence_probe(&group, *s, &params))
                .collect::<Vec<_>>()
        })
    });
    g.finish();
}

criterion_group!(benches, bench_spectrum, bench_limit_set, bench_probes);
criterion_main!(benches);
