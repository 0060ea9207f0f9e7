//! The `zeta(2)` period by quadrature, and Monte Carlo volumes of associahedral
//! cells under the pulled-back iterated-integral density.

mod quadrature;
mod volume;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use quadrature::{gauss_legendre, zeta2_period};
pub use volume::{cell_volume, volume_density};

pub const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum PeriodError {
    #[error("{0}")]
    Domain(String),
    #[error("too large: {0}")]
    Resource(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    TensorQuadrature,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodEstimate {
    pub value: f64,
    /// Quadrature: difference from the rule on half as many panels, which
    /// overestimates the error. Monte Carlo: three standard errors.
    pub error_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
    pub method: Method,
    pub samples_or_nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}
