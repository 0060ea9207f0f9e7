use serde::{Deserialize, Serialize};

use super::SpectraError;

/// A real symmetric matrix, stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct SymmetricMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    /// Accepts entries that are symmetric up to `1e-12 * max|Q_ij|` and
    /// averages the two halves.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self, SpectraError> {
        if n < 2 {
            return Err(SpectraError::Validation(format!("size {n}, need at least 2")));
        }
        if entries.len() != n * n {
            return Err(SpectraError::Validation(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        if let Some(x) = entries.iter().find(|x| !x.is_finite()) {
            return Err(SpectraError::Validation(format!("non-finite entry {x}")));
        }
        let max = entries.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut entries = entries;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (entries[i * n + j], entries[j * n + i]);
                if (a - b).abs() > 1e-12 * max {
                    return Err(SpectraError::Validation(format!("entries ({i},{j}) and ({j},{i}) differ: {a} vs {b}")));
                }
                let m = 0.5 * (a + b);
                entries[i * n + j] = m;
                entries[j * n + i] = m;
            }
        }
        Ok(SymmetricMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, SpectraError> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(SpectraError::Validation(format!("row of length {} in a matrix with {n} rows", r.len())));
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn diagonal(values: &[f64]) -> Result<Self, SpectraError> {
        let n = values.len();
        let mut entries = vec![0.0; n * n];
        for (i, &v) in values.iter().enumerate() {
            entries[i * n + i] = v;
        }
        Self::new(n, entries)
    }

    /// Reads a JSON array of rows, or a grid of numbers separated by commas,
    /// semicolons or whitespace, one row per line. Lines starting with `#` are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self, SpectraError> {
        let t = text.trim();
        if t.starts_with('[') {
            let rows: Vec<Vec<f64>> =
                serde_json::from_str(t).map_err(|e| SpectraError::Validation(format!("bad JSON matrix: {e}")))?;
            return Self::from_rows(rows);
        }
        let mut rows = Vec::new();
        for (k, line) in t.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| SpectraError::Validation(format!("line {}: cannot read {s:?}", k + 1)))
                })
                .collect::<Result<Vec<f64>, _>>()?;
            rows.push(row);
        }
        Self::from_rows(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `a Q + b I`.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        let n = self.n;
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(k, &x)| a * x + if k / n == k % n { b } else { 0.0 })
            .collect();
        SymmetricMatrix { n, entries }
    }

    /// `V Q V^T` for a square `v` given by rows, symmetrised.
    pub fn conjugate(&self, v: &[Vec<f64>]) -> Result<Self, SpectraError> {
        let n = self.n;
        if v.len() != n || v.iter().any(|r| r.len() != n) {
            return Err(SpectraError::Validation("conjugating matrix has the wrong size".into()));
        }
        let mut vq = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                vq[i * n + j] = (0..n).map(|k| v[i][k] * self.get(k, j)).sum();
            }
        }
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let x: f64 = (0..n).map(|k| vq[i * n + k] * v[j][k]).sum();
                out[i * n + j] = x;
                out[j * n + i] = x;
            }
        }
        Ok(SymmetricMatrix { n, entries: out })
    }
}

impl TryFrom<Vec<Vec<f64>>> for SymmetricMatrix {
    type Error = SpectraError;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self, Self::Error> {
        Self::from_rows(rows)
    }
}

impl From<SymmetricMatrix> for Vec<Vec<f64>> {
    fn from(m: SymmetricMatrix) -> Self {
        m.rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grids_and_json() {
        let a = SymmetricMatrix::parse("0, 1\n1, 0\n").unwrap();
        let b = SymmetricMatrix::parse("# swap\n0 1\n\n1 0").unwrap();
        let c = SymmetricMatrix::parse("[[0,1],[1,0]]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[[0.0,1.0],[1.0,0.0]]");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SymmetricMatrix::parse("1 2\n3 4").is_err());
        assert!(SymmetricMatrix::parse("1 2 3\n2 1 0").is_err());
        assert!(SymmetricMatrix::parse("1 x\nx 1").is_err());
        assert!(SymmetricMatrix::parse("[[1]]").is_err());
        assert!(SymmetricMatrix::new(2, vec![1.0, f64::NAN, f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn tolerates_rounding_asymmetry() {
        let m = SymmetricMatrix::new(2, vec![1.0, 0.3, 0.3 + 1e-17, 1.0]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
    }
}
