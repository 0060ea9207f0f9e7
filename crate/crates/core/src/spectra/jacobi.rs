use super::{SpectraError, Spectrum, SymmetricMatrix};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues with an orthonormal frame: column `k` of `vectors` belongs to
/// `spectrum.values()[k]`. Column signs are arbitrary.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub spectrum: Spectrum,
    /// Row-major `n x n`.
    pub vectors: Vec<f64>,
    pub sweeps: usize,
}

impl Eigen {
    pub fn n(&self) -> usize {
        self.spectrum.len()
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        let n = self.n();
        (0..n).map(|i| self.vectors[i * n + k]).collect()
    }

    /// The frame as rows of `V^T`, ready for [`SymmetricMatrix::conjugate`].
    pub fn transpose_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n()).map(|k| self.vector(k)).collect()
    }

    /// `V diag(lambda) V^T`.
    pub fn reconstruct(&self) -> Vec<f64> {
        let n = self.n();
        let l = self.spectrum.values();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..n).map(|k| self.vectors[i * n + k] * l[k] * self.vectors[j * n + k]).sum();
            }
        }
        out
    }
}

fn off_diagonal(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi diagonalisation, row by row, until the off-diagonal mass is
/// below `tol * |Q|_F`.
pub fn eigen(q: &SymmetricMatrix, tol: f64) -> Result<Eigen, SpectraError> {
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(SpectraError::Domain(format!("tolerance {tol}")));
    }
    let n = q.n();
    let mut a = q.entries().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm = q.frobenius();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal(&a, n);
        if off == 0.0 || off < tol * norm {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(SpectraError::Numeric(format!(
                "off-diagonal mass {off:e} after {MAX_SWEEPS} sweeps"
            )));
        }
        // early sweeps skip small pivots; later ones flush negligible ones
        let threshold = if sweeps < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };
        for p in 0..n {
            for r in p + 1..n {
                let apr = a[p * n + r];
                let (app, arr) = (a[p * n + p], a[r * n + r]);
                let g = 100.0 * apr.abs();
                if sweeps > 3 && app.abs() + g == app.abs() && arr.abs() + g == arr.abs() {
                    a[p * n + r] = 0.0;
                    a[r * n + p] = 0.0;
                    continue;
                }
                if apr.abs() <= threshold || apr == 0.0 {
                    continue;
                }
                let theta = (arr - app) / (2.0 * apr);
                let t = if theta.is_infinite() {
                    0.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akr) = (a[k * n + p], a[k * n + r]);
                    a[k * n + p] = c * akp - s * akr;
                    a[k * n + r] = s * akp + c * akr;
                }
                for k in 0..n {
                    let (apk, ark) = (a[p * n + k], a[r * n + k]);
                    a[p * n + k] = c * apk - s * ark;
                    a[r * n + k] = s * apk + c * ark;
                }
                a[p * n + p] = app - t * apr;
                a[r * n + r] = arr + t * apr;
                a[p * n + r] = 0.0;
                a[r * n + p] = 0.0;
                for k in 0..n {
                    let (vkp, vkr) = (v[k * n + p], v[k * n + r]);
                    v[k * n + p] = c * vkp - s * vkr;
                    v[k * n + r] = s * vkp + c * vkr;
                }
            }
        }
        sweeps += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (k, &i) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + k] = v[row * n + i];
        }
    }
    log::debug!("jacobi n={n} converged in {sweeps} sweeps");
    Ok(Eigen { spectrum: Spectrum::from_sorted(values)?, vectors, sweeps })
}

pub fn eigenvalues(q: &SymmetricMatrix, tol: f64) -> Result<Spectrum, SpectraError> {
    Ok(eigen(q, tol)?.spectrum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, rng: &mut ChaCha8Rng) -> SymmetricMatrix {
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

    #[test]
    fn small_cases() {
        let d = SymmetricMatrix::diagonal(&[3.0, 1.0, 2.0]).unwrap();
        assert_eq!(eigenvalues(&d, 1e-12).unwrap().values(), &[1.0, 2.0, 3.0]);
        let swap = SymmetricMatrix::parse("0 1\n1 0").unwrap();
        let l = eigenvalues(&swap, 1e-14).unwrap();
        assert!((l.values()[0] + 1.0).abs() < 1e-15 && (l.values()[1] - 1.0).abs() < 1e-15);
        let m = SymmetricMatrix::parse("2 1\n1 2").unwrap();
        let l = eigenvalues(&m, 1e-14).unwrap();
        assert!((l.values()[0] - 1.0).abs() < 1e-14 && (l.values()[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn frame_is_orthonormal_and_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tol = 1e-12;
        for n in 2..=10 {
            for _ in 0..20 {
                let q = random(n, &mut rng);
                let e = eigen(&q, tol).unwrap();
                let r = e.reconstruct();
                let err: f64 = r.iter().zip(q.entries()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                assert!(err <= 10.0 * tol * q.frobenius(), "n={n} err={err:e}");
                let mut ortho = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        let d: f64 = (0..n).map(|k| e.vectors[k * n + i] * e.vectors[k * n + j]).sum();
                        let x = d - if i == j { 1.0 } else { 0.0 };
                        ortho += x * x;
                    }
                }
                assert!(ortho.sqrt() <= 1e-12 * n as f64, "n={n}");
            }
        }
    }

    #[test]
    fn zero_matrix_and_bad_tolerance() {
        let z = SymmetricMatrix::diagonal(&[0.0, 0.0]).unwrap();
        assert_eq!(eigenvalues(&z, 1e-12).unwrap().values(), &[0.0, 0.0]);
        assert!(eigen(&z, f64::NAN).is_err());
    }
}
