use serde::{Deserialize, Serialize};

use super::SpectraError;

/// Elementary symmetric values `e_1, ..., e_n`; `e_0 = 1` is implicit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymCoeffs(pub Vec<f64>);

impl SymCoeffs {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `e_k`, with `e_0 = 1`.
    pub fn e(&self, k: usize) -> f64 {
        if k == 0 {
            1.0
        } else {
            self.0[k - 1]
        }
    }
}

/// `prod (t - v_k) = sum (-1)^k e_k t^(n-k)`, expanded one factor at a time.
pub fn elem_symmetric(v: &[f64]) -> SymCoeffs {
    let mut e = vec![0.0; v.len() + 1];
    e[0] = 1.0;
    for (m, &x) in v.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            e[k] += x * e[k - 1];
        }
    }
    SymCoeffs(e[1..].to_vec())
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The action of `v -> a v + b` on elementary symmetric values:
/// `e_k -> sum_{l <= k} C(n-l, n-k) a^l b^(k-l) e_l`.
pub fn affine_on_e(e: &SymCoeffs, a: f64, b: f64) -> Result<SymCoeffs, SpectraError> {
    if !(a > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(SpectraError::Domain(format!("affine map with a = {a}, b = {b}")));
    }
    let n = e.n();
    let out = (1..=n)
        .map(|k| (0..=k).map(|l| binomial(n - l, n - k) * a.powi(l as i32) * b.powi((k - l) as i32) * e.e(l)).sum())
        .collect();
    Ok(SymCoeffs(out))
}

/// `prod_{i<k} (v_i - v_k)^2`, or with `ordered_pairs` the product over all
/// `i != k`, which is its square.
pub fn discriminant(v: &[f64], ordered_pairs: bool) -> f64 {
    let mut d = 1.0;
    for i in 0..v.len() {
        for k in i + 1..v.len() {
            let g = v[i] - v[k];
            d *= g * g;
        }
    }
    if ordered_pairs {
        d * d
    } else {
        d
    }
}
