use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rosepen::fiedler::{pencil_algorithm1, pencil_direct};
use rosepen::polymat::smith_form;
use rosepen::{solve_gep, Backend, Bijection};
use rosepen_bench::system;

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("construction");
    for m in [3, 5, 8] {
        let sys = system(3, 3, m);
        let sigma = Bijection::first_companion(m);
        g.bench_with_input(BenchmarkId::new("direct", m), &m, |b, _| b.iter(|| pencil_direct(&sys, &sigma).unwrap()));
        g.bench_with_input(BenchmarkId::new("splicing", m), &m, |b, _| b.iter(|| pencil_algorithm1(&sys, &sigma).unwrap()));
    }
    g.finish();
}

fn smith(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith");
    g.sample_size(10);
    for (n, m) in [(1, 3), (2, 2), (2, 3)] {
        let sys = system(n, 2, m);
        let pencil = pencil_direct(&sys, &Bijection::first_companion(m)).unwrap().to_poly_matrix();
        g.bench_function(format!("pencil n={n} m={m}"), |b| b.iter(|| smith_form(&pencil)));
    }
    g.finish();
}

fn eigenvalues(c: &mut Criterion) {
    let mut g = c.benchmark_group("gep");
    for (n, m) in [(2, 3), (4, 4), (8, 4)] {
        let sys = system(n, 4, m).to_f64();
        let pencil = pencil_direct(&sys, &Bijection::first_companion(m)).unwrap();
        g.bench_function(format!("qz n={n} m={m}"), |b| b.iter(|| solve_gep(&pencil, Backend::Numeric).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, construction, smith, eigenvalues);
criterion_main!(benches);
