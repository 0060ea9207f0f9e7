use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Method, PeriodError, PeriodEstimate};

const SHARD: u64 = 1 << 16;

/// Density on the unit cube of dimension `k = v.len()` whose integral is the
/// cell volume.
///
/// On the ordered simplex `1 > t_1 > ... > t_k > 0` the cell carries
/// `dt_1/t_1 ... dt_{k-1}/t_{k-1} dt_k/(1 - t_k)`. Writing
/// `t_i = u_1 ... u_i` cancels every `1/t_i` against the Jacobian and leaves
/// `1 / (1 - u_1 ... u_k)` on the cube; then `u_i = 1 - (1 - v_i)^2` tames the
/// corner at `u = 1`, so the density is bounded.
pub fn volume_density(v: &[f64]) -> f64 {
    let k = v.len();
    let mut log_prod = 0.0;
    let mut jac = 1.0;
    for &vi in v {
        let b = 1.0 - vi;
        log_prod += (-b * b).ln_1p();
        jac *= 2.0 * b;
    }
    let denom = -log_prod.exp_m1();
    if denom == 0.0 {
        // only at the corner itself, a null set
        return 2f64.powi(k as i32 - 1);
    }
    jac / denom
}

/// Monte Carlo volume of the cell of `K_n` with `samples` points, split into
/// shards of 65536 with one ChaCha8 stream per shard, summed in shard order.
pub fn cell_volume(n: usize, samples: u64, seed: u64) -> Result<PeriodEstimate, PeriodError> {
    if !(4..=64).contains(&n) {
        return Err(PeriodError::Domain(format!("n = {n}, need 4 <= n <= 64")));
    }
    if samples < 10_000 {
        return Err(PeriodError::Domain(format!("{samples} samples, need at least 10^4")));
    }
    if samples > 1 << 40 {
        return Err(PeriodError::Resource(format!("{samples} samples")));
    }
    let k = n - 2;
    let shards = samples.div_ceil(SHARD);
    let partial: Vec<(f64, f64)> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let count = SHARD.min(samples - s * SHARD);
            let mut v = vec![0.0; k];
            let (mut sum, mut sq) = (0.0, 0.0);
            for _ in 0..count {
                for x in v.iter_mut() {
                    *x = rng.random::<f64>();
                }
                let f = volume_density(&v);
                sum += f;
                sq += f * f;
            }
            (sum, sq)
        })
        .collect();
    let (sum, sq) = partial.iter().fold((0.0, 0.0), |(a, b), &(s, q)| (a + s, b + q));
    let m = samples as f64;
    let mean = sum / m;
    let var = ((sq / m - mean * mean) * m / (m - 1.0)).max(0.0);
    let se = (var / m).sqrt();
    Ok(PeriodEstimate {
        value: mean,
        error_bound: 3.0 * se,
        std_error: Some(se),
        method: Method::MonteCarlo,
        samples_or_nodes: samples,
        seed: Some(seed),
    })
}

#[cfg(test)]
mod tests {
    use super::super::ZETA2;
    use super::*;

    fn zeta(s: i32) -> f64 {
        let terms = 200_000u64;
        let tail = (terms as f64).powi(1 - s) / (s - 1) as f64;
        (1..terms).rev().map(|j| (j as f64).powi(-s)).sum::<f64>() + tail
    }

    #[test]
    fn density_is_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 2..6 {
            for _ in 0..10_000 {
                let v: Vec<f64> = (0..k).map(|_| 1.0 - rng.random::<f64>().powi(6)).collect();
                let f = volume_density(&v);
                assert!(f.is_finite() && f >= 0.0 && f <= 2f64.powi(k), "{v:?} {f}");
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = cell_volume(4, 200_000, 9).unwrap();
        let b = cell_volume(4, 200_000, 9).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_ne!(a.value, cell_volume(4, 200_000, 10).unwrap().value);
    }

    #[test]
    fn volumes_are_zeta_values() {
        let e = cell_volume(4, 2_000_000, 3).unwrap();
        assert!((e.value - ZETA2).abs() <= e.error_bound, "{e:?}");
        for (n, s) in [(5, 3), (6, 4)] {
            let e = cell_volume(n, 1_000_000, 4).unwrap();
            assert!((e.value - zeta(s)).abs() <= e.error_bound, "n={n} {e:?}");
        }
    }

    #[test]
    fn unbiased_across_seeds() {
        let est: Vec<PeriodEstimate> = (0..30).map(|seed| cell_volume(4, 200_000, seed).unwrap()).collect();
        let mean = est.iter().map(|e| e.value).sum::<f64>() / 30.0;
        let sigma = est.iter().map(|e| e.std_error.unwrap()).sum::<f64>() / 30.0;
        let quad = crate::periods::zeta2_period(256).unwrap().value;
        assert!((mean - quad).abs() <= 3.0 * sigma / 30f64.sqrt(), "{mean} {sigma}");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(cell_volume(3, 100_000, 0).is_err());
        assert!(cell_volume(4, 100, 0).is_err());
    }
}
