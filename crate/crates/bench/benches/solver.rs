use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use dfsopt_core::binprog::{solve, BinaryProgram, LinearConstraint, Sense};
use dfsopt_core::{generate_portfolio, optimize_lineup, synth, Exposure, PortfolioConfig, RosterRules};

/// Knapsack with a cardinality row and a few cover rows, fixed per seed.
fn program(seed: u64, n: usize) -> BinaryProgram {
    let mut x = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut next = move |m: i64| {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        (x % m as u64) as i64
    };
    let mut p = BinaryProgram::new((0..n).map(|_| 10 + next(90)).collect());
    let weights = (0..n).map(|j| (j, 5 + next(40))).collect();
    p.add_constraint(LinearConstraint::new(weights, Sense::Le, 12 * n as i64).unwrap()).unwrap();
    p.add_constraint(LinearConstraint::new((0..n).map(|j| (j, 1)).collect(), Sense::Le, n as i64 / 3).unwrap())
        .unwrap();
    for r in 0..4 {
        let cover = (r..n).step_by(4).map(|j| (j, 1)).collect();
        p.add_constraint(LinearConstraint::new(cover, Sense::Ge, 1).unwrap()).unwrap();
    }
    p
}

fn binprog(c: &mut Criterion) {
    let programs: Vec<_> = (0..8).map(|s| program(s, 40)).collect();
    c.bench_function("binprog/8 programs x 40 vars", |b| {
        b.iter(|| {
            for p in &programs {
                black_box(solve(p).unwrap());
            }
        })
    });
}

fn lineup(c: &mut Criterion) {
    let rules = RosterRules::default();
    let cfg = PortfolioConfig::default();
    let slate = synth::slate(1, 408);
    c.bench_function("optimize/408 players", |b| b.iter(|| optimize_lineup(black_box(&slate), &rules, &cfg).unwrap()));

    let slate = synth::slate(2, 120);
    let cfg = PortfolioConfig::default()
        .with_lineups(20)
        .with_max_overlap(6)
        .with_max_exposure(Exposure::Count(10));
    let mut group = c.benchmark_group("portfolio");
    group.sample_size(10);
    group.bench_function("120 players x 20 lineups", |b| {
        b.iter_batched(|| slate.clone(), |s| generate_portfolio(&s, &rules, &cfg).unwrap(), BatchSize::LargeInput)
    });
    group.finish();
}

criterion_group!(benches, binprog, lineup);
criterion_main!(benches);
