use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ordcalc::abelian::{decide_abelian, ExponentVector};
use ordcalc::crosscheck::{self, CrosscheckConfig};
use ordcalc::par::{self, Execution};
use ordcalc::rightorder::TruncatedRightOrder;
use ordcalc::sampling;
use ordcalc::{decide_lg_cs, Execution as Exec, ReducedWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Exec); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn corpus(c: &mut Criterion) {
    let mut g = c.benchmark_group("crosscheck");
    g.sample_size(10);
    for size in [2, 3] {
        let config = CrosscheckConfig { arity: 2, max_len: 2, max_size: size };
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, size), &config, |b, cfg| {
                b.iter(|| black_box(crosscheck::run(cfg, exec)))
            });
        }
    }
    g.finish();
}

fn abelian_batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let batch: Vec<Vec<ExponentVector>> = (0..2000)
        .map(|_| {
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(1..=4);
            (0..n).map(|_| ExponentVector((0..k).map(|_| rng.gen_range(-5..=5)).collect())).collect()
        })
        .collect();
    let mut g = c.benchmark_group("abelian-batch");
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| black_box(par::map(&batch, exec, |v| decide_abelian(v)))));
    }
    g.finish();
}

fn sampling_probe(c: &mut Criterion) {
    let words: Vec<ReducedWord> = ["xx", "yy", "x'y'"].iter().map(|s| s.parse().unwrap()).collect();
    let mut g = c.benchmark_group("z-sampling");
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| black_box(sampling::violations(|a| sampling::join_value(&words, a), 2, 100_000, 1, exec)))
        });
    }
    g.finish();
}

fn order_verification(c: &mut Criterion) {
    let words: Vec<ReducedWord> = ["xyx'y'"].iter().map(|s| s.parse().unwrap()).collect();
    let ordcalc::Verdict::Invalid(ordcalc::Witness::TruncatedOrder(t)) = decide_lg_cs(&words, 2) else {
        panic!("the commutator extends to a right order")
    };
    let t: TruncatedRightOrder = t;
    c.bench_function("truncated-order-verify", |b| b.iter(|| black_box(t.verify())));
}

criterion_group!(benches, corpus, abelian_batch, sampling_probe, order_verification);
criterion_main!(benches);
