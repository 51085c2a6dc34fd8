//! Analytic error-rate machinery.
//!
//! * [`tas1`]: the union bound on the cluster SER under max-SNR selection,
//!   with every pairwise term averaged in closed form using the
//!   two-exponential Q-function approximation [`chiani_q`].
//! * [`asymptotic`]: high-SNR expansion coefficients of those terms.
//! * [`tas2`]: difference-matrix rank and eigenvalue analysis and the
//!   resulting high-SNR bound for max-min distance selection.

pub mod asymptotic;
pub mod tas1;
pub mod tas2;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use asymptotic::{asymptotic_coeff, asymptotic_coeff_case3};
pub use tas1::{
    case1_term, case2_term, case3_term, expected_upsilon, expected_upsilon_joint, selection_mgf,
    selection_mgf_alternating, tas1_ser_bound, BoundTerms, Tas1Bound,
};
pub use tas2::{
    build_difference_matrix_set, lambda_star, r_min, r_min_analytic, scan, tas2_ser_bound, DifferenceMatrixSet,
    EnumerationMode, MatrixScan, Tas2Bound, EXHAUSTIVE_LIMIT, RANK_TOL,
};

/// Linear `Es/N0`, strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct SnrPoint(f64);

impl SnrPoint {
    pub fn new(rho: f64) -> Result<Self> {
        if rho > 0.0 && rho.is_finite() {
            Ok(Self(rho))
        } else {
            Err(Error::InvalidConfig(format!("Es/N0 must be positive and finite, got {rho}")))
        }
    }

    pub fn from_db(db: f64) -> Self {
        Self(10f64.powf(db / 10.0))
    }

    pub fn rho(self) -> f64 {
        self.0
    }

    pub fn db(self) -> f64 {
        10.0 * self.0.log10()
    }
}

/// One of the two exponentials of the Q-function approximation.
///
/// `Q(x) ~ 1/12 exp(-x^2/2) + 1/4 exp(-2x^2/3)`. With `x^2 = Es d^2 / (2 N0)`
/// the exponents become `Es d^2 / (4 N0)` and `Es d^2 / (3 N0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChianiTerm {
    /// Weight `1/12`, exponent divisor 4.
    Quarter,
    /// Weight `1/4`, exponent divisor 3.
    Third,
}

impl ChianiTerm {
    pub const BOTH: [ChianiTerm; 2] = [ChianiTerm::Quarter, ChianiTerm::Third];

    pub fn weight(self) -> f64 {
        match self {
            ChianiTerm::Quarter => 1.0 / 12.0,
            ChianiTerm::Third => 0.25,
        }
    }

    pub fn divisor(self) -> f64 {
        match self {
            ChianiTerm::Quarter => 4.0,
            ChianiTerm::Third => 3.0,
        }
    }
}

/// Two-exponential approximation of the Gaussian Q-function.
pub fn chiani_q(x: f64) -> Result<f64> {
    if x < 0.0 || x.is_nan() {
        return Err(Error::NegativeArgument(x));
    }
    let x2 = x * x;
    Ok((-x2 / 2.0).exp() / 12.0 + (-2.0 * x2 / 3.0).exp() / 4.0)
}

/// Density of `max_i |h_i|` over `n` i.i.d. unit-power Rayleigh branches:
/// `sum_k C(n,k) (-1)^(k-1) 2k r exp(-k r^2)`.
pub fn order_stat_density(r: f64, n: usize) -> f64 {
    if r < 0.0 {
        return 0.0;
    }
    let r2 = r * r;
    (1..=n)
        .map(|k| {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * binomial(n, k) * 2.0 * k as f64 * r * (-(k as f64) * r2).exp()
        })
        .sum()
}

/// Binomial coefficient as `f64` (exact for the small arguments used here).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}
