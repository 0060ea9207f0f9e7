use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use eigentree::associahedron::embed_config;
use eigentree::moduli::enumerate_complex;
use eigentree::periods::{cell_volume, zeta2_period};
use eigentree::spectra::{eigenvalues, gap_vector, resolve_tree, SymmetricMatrix};
use eigentree::trees::parse_newick;
use eigentree::CoverSpec;

fn hilbert(n: usize) -> SymmetricMatrix {
    let e = (0..n * n).map(|k| 1.0 / ((k / n + k % n + 1) as f64)).collect();
    SymmetricMatrix::new(n, e).unwrap()
}

fn spectra(c: &mut Criterion) {
    let mut g = c.benchmark_group("jacobi");
    for n in [4, 8, 16, 32] {
        let q = hilbert(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &q, |b, q| {
            b.iter(|| eigenvalues(black_box(q), 1e-14).unwrap())
        });
    }
    g.finish();
    let s = eigenvalues(&hilbert(16), 1e-14).unwrap();
    c.bench_function("gap_vector_and_dendrogram_16", |b| {
        b.iter(|| (gap_vector(black_box(&s)).unwrap(), resolve_tree(black_box(&s)).unwrap()))
    });
}

fn trees(c: &mut Criterion) {
    let t = parse_newick("(((1,2):0.3,3):1.1,((4,5):0.7,(6,7):2.5):0.2);").unwrap();
    c.bench_function("embed_config_7", |b| b.iter(|| embed_config(black_box(&t)).unwrap()));
}

fn complexes(c: &mut Criterion) {
    let mut g = c.benchmark_group("orientation_complex");
    g.sample_size(10);
    for n in [4, 5] {
        g.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| enumerate_complex(black_box(n), CoverSpec::Orientation).unwrap())
        });
    }
    g.finish();
}

fn periods(c: &mut Criterion) {
    c.bench_function("zeta2_period_256", |b| b.iter(|| zeta2_period(black_box(256)).unwrap()));
    let mut g = c.benchmark_group("cell_volume");
    g.sample_size(10);
    g.bench_function("n4_1e6", |b| b.iter(|| cell_volume(4, black_box(1_000_000), 0).unwrap()));
    g.finish();
}

criterion_group!(benches, spectra, trees, complexes, periods);
criterion_main!(benches);
