//! Acceptance criteria 1 to 11, one pass/fail line each.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eigentree::associahedron::{catalan, embed_config, folding_degree};
use eigentree::moduli::{
    cube_count, enumerate_complex, euler_characteristic, fiber_count, fiber_counts, orientability, tile_count,
    vertex_figure,
};
use eigentree::periods::{cell_volume, zeta2_period};
use eigentree::spectra::{
    affine_on_e, eigen, eigenvalues, elem_symmetric, gap_vector, resolve_tree, stratum, Spectrum, SymmetricMatrix,
};
use eigentree::trees::{parse_newick, write_newick, ExtWeight, PlanarMetricTree};
use eigentree::treespace::{
    count_binary_topologies, dh_matching_of, dh_topology, double_factorial, enumerate_binary_topologies,
    perfect_matchings, suspension, tn_skeleton, Graph,
};
use eigentree::CoverSpec;

const PI2_6: f64 = 1.6449340668482264;

fn timed(limit: Duration, f: impl FnOnce()) {
    let start = Instant::now();
    f();
    let took = start.elapsed();
    assert!(took <= limit, "took {took:?}, limit {limit:?}");
}

fn criterion_1() {
    timed(Duration::from_secs(1), || {
        let expected = [(3, 2, 3), (4, 5, 15), (5, 14, 105), (6, 42, 945)];
        for (n, c, t) in expected {
            assert_eq!(catalan(n).unwrap(), c);
            assert_eq!(count_binary_topologies(n).unwrap(), t);
            let fact: u128 = (1..=n as u128).product();
            let lhs = catalan(n).unwrap() * fact;
            let rhs = (1u128 << (n - 1)) * double_factorial(2 * n as u128 - 3);
            assert_eq!(lhs, rhs, "n={n}");
        }
    });
}

fn criterion_2() {
    timed(Duration::from_secs(1), || {
        let g = tn_skeleton(4).unwrap().one_skeleton();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(g.girth(), Some(5));
        assert!(g.isomorphism_to(&Graph::petersen()).is_some());
    });
}

fn criterion_3() {
    timed(Duration::from_secs(10), || {
        let full3 = enumerate_complex(3, CoverSpec::Full).unwrap();
        assert_eq!(full3.counts(), vec![3, 3]);
        let or3 = enumerate_complex(3, CoverSpec::Orientation).unwrap();
        assert_eq!(or3.counts(), vec![6, 6]);
        for c in [&full3, &or3] {
            // a circle: every vertex meets exactly two intervals
            let mut degree = vec![0; c.cells[0].len()];
            for b in &c.boundary[1] {
                for &v in b {
                    degree[v] += 1;
                }
            }
            assert!(degree.iter().all(|&d| d == 2));
            assert_eq!(euler_characteristic(c), 0);
        }

        let full4 = enumerate_complex(4, CoverSpec::Full).unwrap();
        assert_eq!(tile_count(&full4), 12);
        assert_eq!(euler_characteristic(&full4), -3);
        assert!(!orientability(&full4).unwrap());

        let or4 = enumerate_complex(4, CoverSpec::Orientation).unwrap();
        assert_eq!(tile_count(&or4), 24);
        assert_eq!(cube_count(&or4).unwrap(), 120);
        let chi = euler_characteristic(&or4);
        assert_eq!(chi, -6);
        assert!(orientability(&or4).unwrap());
        assert_eq!((2 - chi) / 2, 4, "genus");
        for v in 0..or4.cells[0].len() {
            assert_eq!(vertex_figure(&or4, v).unwrap(), 4);
        }
    });
    timed(Duration::from_secs(600), || {
        let or5 = enumerate_complex(5, CoverSpec::Orientation).unwrap();
        assert_eq!(tile_count(&or5), 120);
        assert_eq!(cube_count(&or5).unwrap(), 1680);
    });
}

fn criterion_4() {
    for n in [3, 4] {
        let c = enumerate_complex(n, CoverSpec::Orientation).unwrap();
        let counts = fiber_counts(&c).unwrap();
        assert_eq!(counts.len(), suspension(n).unwrap().top_cells().len());
        assert!(counts.iter().all(|&(_, k)| k == 1 << (n - 2)), "n={n}");
    }
    let c = enumerate_complex(5, CoverSpec::Orientation).unwrap();
    let tops = suspension(5).unwrap().top_cells().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let t = tops[rng.random_range(0..tops.len())];
        assert_eq!(fiber_count(&c, &t).unwrap(), 8);
    }
}

fn criterion_5() {
    for n in 3..=5 {
        assert_eq!(folding_degree(n, 100, 5).unwrap(), 1 << (n - 2), "n={n}");
    }
}

fn criterion_6() {
    for n in 3..=8 {
        let c = embed_config(&PlanarMetricTree::corolla(n)).unwrap();
        let expected: Vec<f64> = (0..n).map(|k| k as f64).collect();
        assert_eq!(c.points(), expected.as_slice());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let d: Vec<f64> = (0..5).map(|_| rng.random_range(0.0..4.0)).collect();
        let w = |x: f64| ExtWeight::new(x).unwrap();
        let t = parse_newick(&format!(
            "(((1,2):{},3):{},((4,5):{},(6,7):{}):{});",
            w(d[0]),
            w(d[1]),
            w(d[3]),
            w(d[4]),
            w(d[2])
        ))
        .unwrap();
        let exponents = [d[0] + d[1], d[1], 0.0, d[2] + d[3], d[2], d[2] + d[4]];
        let gaps = embed_config(&t).unwrap().gaps();
        for (g, e) in gaps.iter().zip(exponents) {
            let want = (-e).exp();
            assert!((g - want).abs() <= 1e-12 * want, "{g} vs {want}");
        }
    }
}

fn criterion_7() {
    timed(Duration::from_secs(5), || {
        let q = zeta2_period(256).unwrap();
        assert!((q.value - PI2_6).abs() <= 1e-8);
        let mc = cell_volume(4, 10_000_000, 2024).unwrap();
        let se = mc.std_error.unwrap();
        assert!((mc.value - q.value).abs() <= 3.0 * se, "{} +- {se}", mc.value);
    });
}

fn random_symmetric(n: usize, rng: &mut ChaCha8Rng) -> SymmetricMatrix {
    let mut e = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let x = rng.random_range(-1.0..1.0);
            e[i * n + j] = x;
            e[j * n + i] = x;
        }
    }
    SymmetricMatrix::new(n, e).unwrap()
}

/// Coefficients of `det(tI - Q)`, constant term first, by Faddeev-LeVerrier.
fn char_poly(q: &SymmetricMatrix) -> Vec<f64> {
    let n = q.n();
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let mut m = vec![0.0; n * n];
    for k in 1..=n {
        // M_k = Q M_{k-1} + c_{n-k+1} I
        let mut next = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                next[i * n + j] = (0..n).map(|l| q.get(i, l) * m[l * n + j]).sum::<f64>();
            }
            next[i * n + i] += c[n - k + 1];
        }
        m = next;
        let trace: f64 = (0..n).map(|i| (0..n).map(|l| q.get(i, l) * m[l * n + i]).sum::<f64>()).sum();
        c[n - k] = -trace / k as f64;
    }
    c
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &x| acc * t + x)
}

/// Real roots of a polynomial with only real roots: the critical points split
/// the line into monotone pieces, each bisected on its sign change.
fn real_roots(c: &[f64]) -> Vec<f64> {
    let deg = c.len() - 1;
    if deg == 1 {
        return vec![-c[0] / c[1]];
    }
    let derivative: Vec<f64> = (1..=deg).map(|k| k as f64 * c[k]).collect();
    let bound = 1.0 + c[..deg].iter().fold(0.0f64, |m, x| m.max((x / c[deg]).abs()));
    let mut cuts = vec![-bound];
    cuts.extend(real_roots(&derivative));
    cuts.push(bound);
    let mut roots = Vec::new();
    for w in cuts.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (horner(c, lo), horner(c, hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if horner(c, mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots
}

fn criterion_8() {
    timed(Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let tol = 1e-14;
        for trial in 0..1000 {
            let n = rng.random_range(2..=8);
            let q = random_symmetric(n, &mut rng);
            let s = eigenvalues(&q, tol).unwrap();
            let scale = s.values().iter().fold(0.0f64, |m, x| m.max(x.abs()));

            let d = gap_vector(&s).unwrap();
            assert_eq!(d.deltas().iter().sum::<f64>(), 1.0, "trial {trial}");

            let a = rng.random_range(0.1..10.0);
            let b = rng.random_range(-10.0..10.0);
            let shifted = gap_vector(&eigenvalues(&q.affine(a, b), tol).unwrap()).unwrap();
            for (x, y) in d.deltas().iter().zip(shifted.deltas()) {
                assert!((x - y).abs() <= 1e-12, "trial {trial}: {x} vs {y}");
            }

            let frame = eigen(&random_symmetric(n, &mut rng), tol).unwrap();
            let conj = eigenvalues(&q.conjugate(&frame.transpose_rows()).unwrap(), tol).unwrap();
            for (x, y) in s.values().iter().zip(conj.values()) {
                assert!((x - y).abs() <= 1e-9 * scale, "trial {trial}");
            }

            if n <= 4 {
                let oracle = real_roots(&char_poly(&q));
                assert_eq!(oracle.len(), n, "trial {trial}: oracle found {oracle:?}");
                for (x, y) in s.values().iter().zip(&oracle) {
                    assert!((x - y).abs() <= 1e-10 * scale, "trial {trial}: {x} vs {y}");
                }
            }

            let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let moved: Vec<f64> = v.iter().map(|x| a * x + b).collect();
            let lhs = affine_on_e(&elem_symmetric(&v), a, b).unwrap();
            let rhs = elem_symmetric(&moved);
            // relative to the same sums taken over absolute values
            let size = elem_symmetric(&moved.iter().map(|x| x.abs()).collect::<Vec<_>>());
            for k in 0..n {
                assert!((lhs.0[k] - rhs.0[k]).abs() <= 1e-9 * size.0[k], "trial {trial} e_{}", k + 1);
            }
        }
    });
}

fn criterion_9() {
    for n in [4, 5] {
        let tops = enumerate_binary_topologies(n).unwrap();
        assert_eq!(tops.len() as u128, double_factorial(2 * n as u128 - 3));
        let mut images = BTreeSet::new();
        for t in &tops {
            let m = dh_matching_of(t);
            assert_eq!(&dh_topology(&m, n).unwrap(), t);
            images.insert(m);
        }
        let all: BTreeSet<_> = perfect_matchings(n - 1).into_iter().collect();
        assert_eq!(images, all, "n={n}");
    }
}

fn criterion_10() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let n = rng.random_range(2..=9);
        // coarse values so that ties and clusters are common
        let v: Vec<f64> = (0..n).map(|_| f64::from(rng.random_range(0..12u8)) * 0.25).collect();
        let s = Spectrum::new(v).unwrap();
        if !(s.spread() > 0.0) {
            continue;
        }
        let d = resolve_tree(&s).unwrap();
        for i in 0..100 {
            let h = f64::from(i) / 100.0;
            assert_eq!(d.cut(h).blocks, stratum(&s, h).unwrap().blocks, "{:?} at {h}", s.values());
        }
    }
}

fn dir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn criterion_11() {
    for text in ["((1,2):0.5,(3,4):inf)0;", "(((1,2):0.25,3):1.5,4,5);", "(1,2,3)0;", "((3,1):2,(4,(2,5):0.125):inf);"] {
        let t = parse_newick(text).unwrap();
        assert_eq!(write_newick(&t), text);
        assert_eq!(write_newick(&parse_newick(&write_newick(&t)).unwrap()), text);
    }
    let cases: [(&str, &[&str]); 4] = [
        ("counts4.csv", &["counts", "--n", "4"]),
        ("eigen_swap.json", &["eigen", "--matrix", "swap.csv", "--tol", "1e-6"]),
        ("period256.json", &["period", "--nodes", "256"]),
        ("volume4.json", &["volume", "--n", "4", "--samples", "20000", "--seed", "7"]),
    ];
    for (golden, args) in cases {
        let run = || {
            let o = Command::new(env!("CARGO_BIN_EXE_eigentree"))
                .args(args)
                .current_dir(dir("fixtures"))
                .output()
                .unwrap();
            assert!(o.status.success());
            o.stdout
        };
        let (a, b) = (run(), run());
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a, std::fs::read(dir("golden").join(golden)).unwrap(), "{golden}");
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn()); 11] = [
        ("exact counts n = 3..6", criterion_1),
        ("T_4 is the Petersen graph", criterion_2),
        ("quotient complexes", criterion_3),
        ("fibers of the fold", criterion_4),
        ("folding degree", criterion_5),
        ("configurations of trees", criterion_6),
        ("zeta(2) period and cell volume", criterion_7),
        ("spectra property suite", criterion_8),
        ("DH bijection", criterion_9),
        ("dendrogram cuts match strata", criterion_10),
        ("Newick round trip and stable CLI output", criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        // straight to stdout so the lines survive test output capture
        let line = format!("criterion {:>2} {}: {name} ({:.2?})\n", i + 1, if ok { "PASS" } else { "FAIL" }, start.elapsed());
        std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
