use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use facecover::analysis::sample_phi;
use facecover::{complete_function, enumerate_prime_implicants, minimal_dnf, Objective};

fn primes(c: &mut Criterion) {
    let mut g = c.benchmark_group("prime_implicants");
    for k in [4, 5] {
        let f = complete_function(k).unwrap();
        g.bench_with_input(BenchmarkId::new("complete", k), &f, |b, f| {
            b.iter(|| enumerate_prime_implicants(f).unwrap())
        });
    }
    g.finish();
}

fn minimize(c: &mut Criterion) {
    let mut g = c.benchmark_group("minimal_dnf");
    g.sample_size(10);
    for (n, k, m) in [(6, 5, 2), (8, 5, 2), (7, 6, 3)] {
        let f = sample_phi(n, k, m, 1).unwrap();
        for objective in [Objective::Rank, Objective::Length] {
            let id = BenchmarkId::new(
                format!("{objective:?}").to_lowercase(),
                format!("n{n}_k{k}_m{m}"),
            );
            g.bench_with_input(id, &f, |b, f| b.iter(|| minimal_dnf(f, objective).unwrap()));
        }
    }
    g.finish();
}

criterion_group!(benches, primes, minimize);
criterion_main!(benches);
