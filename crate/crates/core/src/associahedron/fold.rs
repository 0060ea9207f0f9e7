use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::embed::gap_exponents;
use super::{AssocError, Bracket, Bracketing, CubeChart};
use crate::trees::ExtWeight;

// Points within this distance of the ends of [0, 1] are the base point of I/∂I.
const SNAP: f64 = 1e-12;

/// Stick-breaking coordinates of the normalised gap vector: `y_i` is the share
/// of gap `i` among gaps `i..n-1`. A point of the open simplex has all `y_i`
/// in `(0, 1)`.
fn stick_breaking(gaps: &[f64]) -> Vec<f64> {
    let m = gaps.len();
    let mut suffix = vec![0.0; m + 1];
    for i in (0..m).rev() {
        suffix[i] = suffix[i + 1] + gaps[i];
    }
    (0..m - 1)
        .map(|i| if suffix[i] > 0.0 { gaps[i] / suffix[i] } else { 1.0 })
        .collect()
}

/// Exponent sending `1/pieces` (the even split) to `1/2`.
fn reshape_exponent(pieces: usize) -> f64 {
    std::f64::consts::LN_2 / (pieces as f64).ln()
}

fn double_mod_one(h: f64) -> f64 {
    let t = 2.0 * h;
    let x = t - t.floor();
    if !(SNAP..=1.0 - SNAP).contains(&x) {
        0.0
    } else {
        x
    }
}

/// Folds `K_n` onto the cube `[0, 1]^{n-2}`.
///
/// The point goes through its configuration gaps, normalised to the simplex
/// and flattened to the open cube by stick-breaking; each coordinate is then
/// reshaped so the corolla lands on the centre and doubled mod 1. The
/// boundary of `K_n` lands on the boundary of the cube, and every generic
/// point of the cube has `2^{n-2}` preimages.
pub fn collapse_fold(chart: &CubeChart) -> Result<Vec<f64>, AssocError> {
    let n = chart.n();
    if n == 2 {
        return Ok(Vec::new());
    }
    let gaps: Vec<f64> = gap_exponents(&chart.tree()).into_iter().map(|w| (-w).exp()).collect();
    if gaps.iter().all(|&g| g == 0.0) {
        return Err(AssocError::Inconsistent("all gaps vanish".into()));
    }
    Ok(stick_breaking(&gaps)
        .into_iter()
        .enumerate()
        .map(|(i, y)| double_mod_one(y.powf(reshape_exponent(n - 1 - i))))
        .collect())
}

/// The binary tree whose neighbouring-leaf exponents are `w` (distinct
/// minima in every interval), as its bracketing and the weights in bracket order.
pub(crate) fn tree_from_exponents(w: &[f64]) -> (Bracketing, Vec<f64>) {
    let n = w.len() + 1;
    let mut out: Vec<(Bracket, f64)> = Vec::with_capacity(n - 2);
    // (first leaf, last leaf, depth of the parent node)
    let mut stack = vec![(1usize, n, f64::NAN)];
    while let Some((lo, hi, above)) = stack.pop() {
        if lo == hi {
            continue;
        }
        let split = (lo..hi)
            .min_by(|&a, &b| w[a - 1].total_cmp(&w[b - 1]).then(a.cmp(&b)))
            .expect("nonempty");
        let depth = w[split - 1];
        if !above.is_nan() {
            out.push(((lo as u8, hi as u8), depth - above));
        }
        stack.push((lo, split, depth));
        stack.push((split + 1, hi, depth));
    }
    out.sort_by_key(|p| p.0);
    let b = Bracketing::from_sorted_unchecked(n, out.iter().map(|p| p.0).collect());
    (b, out.into_iter().map(|p| p.1).collect())
}

fn chart_from_gaps(n: usize, delta: &[f64]) -> Result<CubeChart, AssocError> {
    let top = delta.iter().copied().fold(0.0, f64::max);
    let w: Vec<f64> = delta.iter().map(|d| -(d / top).ln()).collect();
    let (b, ws) = tree_from_exponents(&w);
    debug_assert_eq!(b.n(), n);
    let coords = ws.into_iter().map(|x| ExtWeight::new(x.max(0.0))).collect::<Result<_, _>>()?;
    CubeChart::new(b, coords)
}

/// Fold coordinates together with the simplex coordinates `delta_1..delta_{n-2}`,
/// which orient `K_n`.
fn fold_and_simplex(chart: &CubeChart) -> Result<(Vec<f64>, Vec<f64>), AssocError> {
    let gaps: Vec<f64> = gap_exponents(&chart.tree()).into_iter().map(|w| (-w).exp()).collect();
    let total: f64 = gaps.iter().sum();
    let delta = gaps[..gaps.len() - 1].iter().map(|g| g / total).collect();
    Ok((collapse_fold(chart)?, delta))
}

fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let k = m.len();
    let mut det = 1.0;
    for c in 0..k {
        let p = (c..k).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).expect("nonempty");
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..k {
            let f = m[r][c] / m[c][c];
            for j in c..k {
                m[r][j] -= f * m[c][j];
            }
        }
    }
    det
}

/// Local degree of the fold at an interior chart point: the sign of its
/// Jacobian measured against the simplex orientation of `K_n`, both by
/// central differences in the chart coordinates.
fn local_sign(chart: &CubeChart) -> Result<i32, AssocError> {
    let k = chart.coords.len();
    let mut jx = vec![vec![0.0; k]; k];
    let mut jd = vec![vec![0.0; k]; k];
    for j in 0..k {
        let w = chart.coords[j].value();
        let h = 1e-6 * (1.0 + w);
        let (lo, hi) = if w > h { (w - h, w + h) } else { (w, w + h) };
        let at = |v: f64| -> Result<(Vec<f64>, Vec<f64>), AssocError> {
            let mut c = chart.clone();
            c.coords[j] = ExtWeight::new(v)?;
            fold_and_simplex(&c)
        };
        let (x0, d0) = at(lo)?;
        let (x1, d1) = at(hi)?;
        for i in 0..k {
            jx[i][j] = (x1[i] - x0[i]) / (hi - lo);
            jd[i][j] = (d1[i] - d0[i]) / (hi - lo);
        }
    }
    let (a, b) = (determinant(jx), determinant(jd));
    if a.abs() < 1e-12 || b.abs() < 1e-12 {
        return Err(AssocError::Inconsistent("fold Jacobian is degenerate at a generic point".into()));
    }
    Ok(if (a > 0.0) == (b > 0.0) { 1 } else { -1 })
}

/// All preimages of an interior target point, each with its local degree.
/// Every preimage is checked by running the fold forward.
pub fn fold_preimages(n: usize, target: &[f64]) -> Result<Vec<(CubeChart, i32)>, AssocError> {
    if n < 3 || target.len() != n - 2 {
        return Err(AssocError::Domain(format!("a target for n = {n} has {} coordinates", n.saturating_sub(2))));
    }
    if target.iter().any(|&x| !(x > SNAP && x < 1.0 - SNAP)) {
        return Err(AssocError::Domain("target must lie in the open cube".into()));
    }
    let k = n - 2;
    let mut out = Vec::with_capacity(1 << k);
    for branch in 0u32..1 << k {
        let mut delta = Vec::with_capacity(n - 1);
        let mut rest = 1.0;
        for (i, &x) in target.iter().enumerate() {
            let h = (x + f64::from((branch >> i) & 1)) / 2.0;
            let y = h.powf(1.0 / reshape_exponent(n - 1 - i));
            delta.push(y * rest);
            rest *= 1.0 - y;
        }
        delta.push(rest);
        let chart = chart_from_gaps(n, &delta)?;
        let image = collapse_fold(&chart)?;
        let err = image.iter().zip(target).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if err > 1e-9 {
            return Err(AssocError::Inconsistent(format!("preimage misses the target by {err:e}")));
        }
        let sign = local_sign(&chart)?;
        out.push((chart, sign));
    }
    Ok(out)
}

/// Absolute degree of `K_n / ∂K_n -> I^{n-2} / ∂I^{n-2}`, from signed preimage
/// counts of `samples` seeded random targets, which must all agree.
pub fn folding_degree(n: usize, samples: usize, seed: u64) -> Result<u64, AssocError> {
    if !(3..=5).contains(&n) {
        return Err(AssocError::Range(format!("folding_degree needs 3 <= n <= 5, got {n}")));
    }
    if samples == 0 {
        return Err(AssocError::Domain("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree: Option<i64> = None;
    for _ in 0..samples {
        let target: Vec<f64> = (0..n - 2).map(|_| rng.random_range(0.02..0.98)).collect();
        let d: i64 = fold_preimages(n, &target)?.iter().map(|p| i64::from(p.1)).sum();
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => {
                return Err(AssocError::Inconsistent(format!("signed degree {prev} and {d} at different targets")));
            }
            Some(_) => {}
        }
    }
    Ok(degree.expect("samples > 0").unsigned_abs())
}
