use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TreeError;

/// A nonnegative edge weight that may also be infinite.
///
/// Terminal edges of a tree and degenerate (broken) internal edges carry
/// [`ExtWeight::INFINITY`]. `NaN` and negative values are unrepresentable, so
/// the type has a total order.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExtWeight(f64);

impl ExtWeight {
    pub const ZERO: ExtWeight = ExtWeight(0.0);
    pub const INFINITY: ExtWeight = ExtWeight(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self, TreeError> {
        if value.is_nan() || value < 0.0 {
            return Err(TreeError::InvalidWeight(value));
        }
        // normalise -0.0 so that equal weights print identically
        Ok(ExtWeight(if value == 0.0 { 0.0 } else { value }))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    /// `exp(-w)`, with `exp(-inf) = 0` exactly.
    pub fn exp_neg(self) -> f64 {
        if self.is_infinite() {
            0.0
        } else {
            (-self.0).exp()
        }
    }
}

impl PartialEq for ExtWeight {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for ExtWeight {}

impl PartialOrd for ExtWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).expect("ExtWeight is never NaN")
    }
}

impl Add for ExtWeight {
    type Output = ExtWeight;

    fn add(self, rhs: ExtWeight) -> ExtWeight {
        ExtWeight(self.0 + rhs.0)
    }
}

impl fmt::Display for ExtWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            // shortest representation that round-trips
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for ExtWeight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtWeight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        let value = match Raw::deserialize(deserializer)? {
            Raw::Num(v) => v,
            Raw::Str(s) if s == "inf" => f64::INFINITY,
            Raw::Str(s) => return Err(serde::de::Error::custom(format!("bad weight {s:?}"))),
        };
        ExtWeight::new(value).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_dominates() {
        let w = ExtWeight::new(1e300).unwrap();
        assert!(ExtWeight::INFINITY > w);
        assert_eq!(ExtWeight::INFINITY.exp_neg(), 0.0);
        assert_eq!((w + ExtWeight::INFINITY), ExtWeight::INFINITY);
    }

    #[test]
    fn rejects_negative_and_nan() {
        assert!(ExtWeight::new(-0.5).is_err());
        assert!(ExtWeight::new(f64::NAN).is_err());
        assert_eq!(ExtWeight::new(-0.0).unwrap().to_string(), "0");
    }

    #[test]
    fn json_uses_inf_token() {
        let s = serde_json::to_string(&[ExtWeight::INFINITY, ExtWeight::new(0.25).unwrap()]).unwrap();
        assert_eq!(s, r#"["inf",0.25]"#);
        let back: Vec<ExtWeight> = serde_json::from_str(&s).unwrap();
        assert!(back[0].is_infinite());
    }
}
