use serde::{Deserialize, Serialize};

use super::SpectraError;

/// Eigenvalues in nondecreasing order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts the values.
    pub fn new(mut values: Vec<f64>) -> Result<Self, SpectraError> {
        if values.iter().any(|x| !x.is_finite()) {
            return Err(SpectraError::Validation("non-finite eigenvalue".into()));
        }
        values.sort_by(f64::total_cmp);
        Ok(Spectrum(values))
    }

    pub fn from_sorted(values: Vec<f64>) -> Result<Self, SpectraError> {
        if values.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(SpectraError::Validation("eigenvalues out of order".into()));
        }
        Ok(Spectrum(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `lambda_n - lambda_1`.
    pub fn spread(&self) -> f64 {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }
}

impl TryFrom<Vec<f64>> for Spectrum {
    type Error = SpectraError;

    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        Spectrum::from_sorted(v)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.0
    }
}

/// Normalised gaps `delta_k = (lambda_{k+1} - lambda_k) / (lambda_n - lambda_1)`,
/// a point of the simplex of dimension `n - 2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GapVector(Vec<f64>);

impl GapVector {
    pub fn deltas(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_interior(&self) -> bool {
        self.0.iter().all(|&d| d > 0.0)
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// The last entry is `1 - (sum of the others)`, so the entries add up to
/// exactly one in floating point.
pub fn gap_vector(s: &Spectrum) -> Result<GapVector, SpectraError> {
    gaps_of_sorted(s.values())
}

fn gaps_of_sorted(l: &[f64]) -> Result<GapVector, SpectraError> {
    let n = l.len();
    if n < 2 || !(l[n - 1] - l[0] > 0.0) {
        return Err(SpectraError::Degenerate);
    }
    let spread = l[n - 1] - l[0];
    let mut d: Vec<f64> = l.windows(2).map(|w| (w[1] - w[0]) / spread).collect();
    loop {
        let partial: f64 = d[..n - 2].iter().sum();
        let last = 1.0 - partial;
        if last >= 0.0 {
            d[n - 2] = last;
            break;
        }
        // rounding pushed the others past one: take the excess off the largest
        let big = (0..n - 2).max_by(|&i, &j| d[i].total_cmp(&d[j])).expect("n > 2 when partial > 1");
        d[big] = (d[big] + last).max(0.0);
    }
    Ok(GapVector(d))
}

/// A spectrum as offset, scale and gap vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub offset: f64,
    pub scale: f64,
    pub delta: GapVector,
}

impl NormalForm {
    pub fn reconstruct(&self) -> Spectrum {
        let mut values = vec![self.offset];
        let mut acc = 0.0;
        for &d in self.delta.deltas() {
            acc += d;
            values.push(self.offset + self.scale * acc.min(1.0));
        }
        Spectrum(values)
    }
}

pub fn normal_form(s: &Spectrum) -> Result<NormalForm, SpectraError> {
    let delta = gap_vector(s)?;
    Ok(NormalForm { offset: s.values()[0], scale: s.spread(), delta })
}

/// A configuration of distinct reals split into its normal form and the
/// order of its entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigSplit {
    pub offset: f64,
    pub scale: f64,
    pub delta: GapVector,
    /// 1-based: the `k`-th smallest entry sits at index `sigma[k]`.
    pub sigma: Vec<usize>,
}

pub fn config_split(v: &[f64]) -> Result<ConfigSplit, SpectraError> {
    if v.len() < 2 {
        return Err(SpectraError::NotConfiguration("fewer than two points".into()));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(SpectraError::NotConfiguration("non-finite point".into()));
    }
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
    let sorted: Vec<f64> = order.iter().map(|&i| v[i]).collect();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(SpectraError::NotConfiguration(format!("{} appears twice", w[0])));
    }
    let nf = normal_form(&Spectrum(sorted))?;
    Ok(ConfigSplit { offset: nf.offset, scale: nf.scale, delta: nf.delta, sigma: order.iter().map(|i| i + 1).collect() })
}

pub fn config_join(split: &ConfigSplit) -> Result<Vec<f64>, SpectraError> {
    let n = split.sigma.len();
    if split.delta.len() + 1 != n {
        return Err(SpectraError::Domain(format!("{} gaps for {n} points", split.delta.len())));
    }
    if !(split.scale > 0.0) || !split.delta.is_interior() {
        return Err(SpectraError::NotConfiguration("points would coincide".into()));
    }
    let mut seen = vec![false; n];
    for &s in &split.sigma {
        if s == 0 || s > n || std::mem::replace(&mut seen[s - 1], true) {
            return Err(SpectraError::Domain(format!("{:?} is not a permutation of 1..={n}", split.sigma)));
        }
    }
    let sorted = NormalForm { offset: split.offset, scale: split.scale, delta: split.delta.clone() }.reconstruct();
    let mut out = vec![0.0; n];
    for (k, &s) in split.sigma.iter().enumerate() {
        out[s - 1] = sorted.values()[k];
    }
    Ok(out)
}

/// Eigenvalue clusters: consecutive blocks of 1-based indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumPartition {
    pub blocks: Vec<Vec<usize>>,
    pub tol: f64,
}

impl StratumPartition {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }
}

/// Neighbouring eigenvalues share a block when their normalised gap is at
/// most `rel_tol`. A scalar spectrum is a single block.
pub fn stratum(s: &Spectrum, rel_tol: f64) -> Result<StratumPartition, SpectraError> {
    if !(0.0..1.0).contains(&rel_tol) {
        return Err(SpectraError::Domain(format!("relative tolerance {rel_tol} outside [0, 1)")));
    }
    let n = s.len();
    let joined: Vec<bool> = match gap_vector(s) {
        Ok(d) => d.deltas().iter().map(|&x| x <= rel_tol).collect(),
        Err(SpectraError::Degenerate) => vec![true; n.saturating_sub(1)],
        Err(e) => return Err(e),
    };
    Ok(StratumPartition { blocks: blocks_from_joins(&joined), tol: rel_tol })
}

pub(crate) fn blocks_from_joins(joined: &[bool]) -> Vec<Vec<usize>> {
    let mut blocks = vec![vec![1]];
    for (k, &j) in joined.iter().enumerate() {
        if !j {
            blocks.push(Vec::new());
        }
        blocks.last_mut().expect("nonempty").push(k + 2);
    }
    blocks
}
