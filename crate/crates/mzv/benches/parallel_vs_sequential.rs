//! Compares the data-parallel evaluation paths against a sequential
//! baseline. With the `parallel` feature enabled (the default), the
//! "sequential" variants run the same code inside a one-thread rayon pool,
//! so the two series isolate the scheduling benefit on real workloads.
//! Without the feature both variants fall back to plain iteration.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mzv::exact::{bits_for_digits, rat};
use mzv::numeric::{Evaluator, PrecisionPolicy};
use mzv::words::rho;
use mzv::{LinComb, ZetaIndex};

#[cfg(feature = "parallel")]
fn run_single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("single-thread pool");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn run_single_threaded<T>(f: impl FnOnce() -> T) -> T {
    f()
}

fn holder_words() -> Vec<(String, Vec<u8>)> {
    [
        ("w8", vec![2u32, 3, 3]),
        ("w12", vec![2, 2, 3, 2, 3]),
        ("w16", vec![2, 2, 2, 3, 3, 2, 2]),
    ]
    .into_iter()
    .map(|(label, parts)| (label.to_string(), rho(&parts)))
    .collect()
}

fn bench_holder(c: &mut Criterion) {
    let mut group = c.benchmark_group("holder_word");
    let bits = bits_for_digits(192);
    for (label, word) in holder_words() {
        group.bench_with_input(BenchmarkId::new("parallel", &label), &word, |b, w| {
            b.iter(|| mzv::numeric::eval_word_holder(w, bits))
        });
        group.bench_with_input(BenchmarkId::new("sequential", &label), &word, |b, w| {
            b.iter(|| run_single_threaded(|| mzv::numeric::eval_word_holder(w, bits)))
        });
    }
    group.finish();
}

fn sample_lincomb() -> LinComb<ZetaIndex> {
    let mut lc = LinComb::zero();
    let indices: [&[u32]; 8] = [
        &[2, 3, 3],
        &[3, 5],
        &[2, 2, 4],
        &[3, 2, 3],
        &[8],
        &[2, 6],
        &[4, 4],
        &[5, 3],
    ];
    for (i, parts) in indices.iter().enumerate() {
        lc.add_term(
            ZetaIndex::new(parts.to_vec()).unwrap(),
            rat(2 * i as i64 + 1, i as i64 + 2),
        );
    }
    lc
}

fn bench_lincomb(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval_lincomb");
    let lc = sample_lincomb();
    let policy = PrecisionPolicy::new(96, 10, 512).unwrap();
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let ev = Evaluator::new();
            ev.eval_lincomb(&lc, &policy).unwrap()
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            run_single_threaded(|| {
                let ev = Evaluator::new();
                ev.eval_lincomb(&lc, &policy).unwrap()
            })
        })
    });
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_holder, bench_lincomb
}
criterion_main!(benches);
