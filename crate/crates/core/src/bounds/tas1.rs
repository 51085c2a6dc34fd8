//! Union bound on the MA-phase cluster SER with max-SNR antenna selection.
//!
//! Every error event `(x_A, x_B) -> (x_A', x_B')` between different clusters
//! contributes `E[Q(sqrt(Es/2N0) |h_A dx_A + h_B dx_B|)]`, approximated by
//! `1/12 E[Y1] + 1/4 E[Y2]` with `Yj = exp(-Es/(cj N0) |h_A dx_A + h_B dx_B|^2)`,
//! `c1 = 4`, `c2 = 3`. The selected gains `|h_A|`, `|h_B|` follow the
//! maximum-of-N Rayleigh law and their phase difference is uniform.
//!
//! The pairs split into three cases:
//!
//! * I: only `x_A` differs (decays as `rho^-N_A`),
//! * II: only `x_B` differs (decays as `rho^-N_B`),
//! * III: both differ and the clusters differ (decays as `rho^-1`; absent for
//!   BPSK, where such pairs always share a cluster).

use super::{binomial, ChianiTerm, SnrPoint};
use crate::constellation::{Constellation, PncMap};
use crate::{Complex, Error, Result};

fn alt_sign(k: usize) -> f64 {
    // (-1)^(k-1)
    if k % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// `E[exp(-rho d2 |h|^2 / c)]` for `|h|` the strongest of `n` Rayleigh branches,
/// with `c` the divisor of `term`.
///
/// The alternating sum `sum_k C(n,k)(-1)^(k-1) / (1 + rho d2/(c k))` telescopes
/// to the product `prod_k k / (k + rho d2 / c)`, which is evaluated here
/// because it stays accurate at high SNR where the sum cancels to many digits.
pub fn selection_mgf(rho: SnrPoint, n: usize, d2: f64, term: ChianiTerm) -> f64 {
    let a = rho.rho() * d2 / term.divisor();
    (1..=n).map(|k| k as f64 / (k as f64 + a)).product()
}

/// Literal alternating-sum form of [`selection_mgf`].
pub fn selection_mgf_alternating(rho: SnrPoint, n: usize, d2: f64, term: ChianiTerm) -> f64 {
    let a = rho.rho() * d2 / term.divisor();
    // largest magnitudes first
    let mut terms: Vec<f64> = (1..=n)
        .map(|k| binomial(n, k) * alt_sign(k) / (1.0 + a / k as f64))
        .collect();
    terms.sort_by(|x, y| y.abs().total_cmp(&x.abs()));
    terms.iter().sum()
}

/// Single-user term `zeta1 + zeta2` (case I), i.e.
/// `1/12 E[Y1] + 1/4 E[Y2]` for a difference `dx_a` seen through the best of
/// `n_a` antennas.
pub fn case1_term(rho: SnrPoint, n_a: usize, dx_a: Complex) -> f64 {
    let d2 = dx_a.norm_sqr();
    ChianiTerm::BOTH
        .iter()
        .map(|&t| t.weight() * selection_mgf(rho, n_a, d2, t))
        .sum()
}

/// Case II: identical to [`case1_term`] with user B's antenna count.
pub fn case2_term(rho: SnrPoint, n_b: usize, dx_b: Complex) -> f64 {
    case1_term(rho, n_b, dx_b)
}

/// `E[Y]` for a generic difference `(dx_a, dx_b)` (case I/II when one is zero).
pub fn expected_upsilon(rho: SnrPoint, n_a: usize, n_b: usize, dx_a: Complex, dx_b: Complex, term: ChianiTerm) -> Result<f64> {
    match (dx_a.norm_sqr() > 0.0, dx_b.norm_sqr() > 0.0) {
        (true, true) => expected_upsilon_joint(rho, n_a, n_b, dx_a, dx_b, term),
        (true, false) => Ok(selection_mgf(rho, n_a, dx_a.norm_sqr(), term)),
        (false, true) => Ok(selection_mgf(rho, n_b, dx_b.norm_sqr(), term)),
        (false, false) => Ok(1.0),
    }
}

/// Case III `E[Y]`:
/// `sum_k sum_l C(N_A,k) C(N_B,l) (-1)^(k+l-2) / (Psi_Ak Psi_Bl - Theta/(4kl))`
/// (or the `Xi`/`Phi` analogue for [`ChianiTerm::Third`]).
///
/// The denominator is evaluated in its expanded form
/// `1 + rho|dx_A|^2/(c k) + rho|dx_B|^2/(c l)`, which is exactly equal and free
/// of the cancellation between the two large products.
pub fn expected_upsilon_joint(
    rho: SnrPoint,
    n_a: usize,
    n_b: usize,
    dx_a: Complex,
    dx_b: Complex,
    term: ChianiTerm,
) -> Result<f64> {
    let c = term.divisor();
    let a = rho.rho() * dx_a.norm_sqr() / c;
    let b = rho.rho() * dx_b.norm_sqr() / c;
    let mut terms = Vec::with_capacity(n_a * n_b);
    for k in 1..=n_a {
        for l in 1..=n_b {
            let den = 1.0 + a / k as f64 + b / l as f64;
            if !den.is_finite() || den <= 0.0 {
                return Err(Error::NumericalDegeneracy { value: den, k, l });
            }
            terms.push(binomial(n_a, k) * binomial(n_b, l) * alt_sign(k) * alt_sign(l) / den);
        }
    }
    terms.sort_by(|x, y| y.abs().total_cmp(&x.abs()));
    Ok(terms.iter().sum())
}

/// Case III term `xi1 + xi2 = 1/12 E[Y1] + 1/4 E[Y2]`.
pub fn case3_term(rho: SnrPoint, n_a: usize, n_b: usize, dx_a: Complex, dx_b: Complex) -> Result<f64> {
    let mut acc = 0.0;
    for t in ChianiTerm::BOTH {
        acc += t.weight() * expected_upsilon_joint(rho, n_a, n_b, dx_a, dx_b, t)?;
    }
    Ok(acc)
}

/// The named intermediate quantities of the closed forms for one difference
/// pair at one SNR. Vectors are indexed by `k - 1` (resp. `l - 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundTerms {
    pub n_a: usize,
    pub n_b: usize,
    /// `Psi_{A,k} = 1 + rho |dx_A|^2 / (4k)`.
    pub psi_a: Vec<f64>,
    /// `Xi_{A,k} = 1 + rho |dx_A|^2 / (3k)`.
    pub xi_a: Vec<f64>,
    pub psi_b: Vec<f64>,
    pub xi_b: Vec<f64>,
    /// `Theta_{A,B} = (rho |dx_A dx_B| / 2)^2`.
    pub theta_ab: f64,
    /// `Phi_{A,B} = (2 rho |dx_A dx_B| / 3)^2`.
    pub phi_ab: f64,
    /// Case I components for user A.
    pub zeta1: f64,
    pub zeta2: f64,
    /// Case III components.
    pub xi1: f64,
    pub xi2: f64,
}

impl BoundTerms {
    pub fn new(rho: SnrPoint, n_a: usize, n_b: usize, dx_a: Complex, dx_b: Complex) -> Result<Self> {
        let r = rho.rho();
        let (da, db) = (dx_a.norm_sqr(), dx_b.norm_sqr());
        let side = |n: usize, d2: f64, c: f64| (1..=n).map(|k| 1.0 + r * d2 / (c * k as f64)).collect::<Vec<_>>();
        let prod = (dx_a * dx_b).norm();
        Ok(Self {
            n_a,
            n_b,
            psi_a: side(n_a, da, 4.0),
            xi_a: side(n_a, da, 3.0),
            psi_b: side(n_b, db, 4.0),
            xi_b: side(n_b, db, 3.0),
            theta_ab: (r * prod / 2.0).powi(2),
            phi_ab: (2.0 * r * prod / 3.0).powi(2),
            zeta1: ChianiTerm::Quarter.weight() * selection_mgf(rho, n_a, da, ChianiTerm::Quarter),
            zeta2: ChianiTerm::Third.weight() * selection_mgf(rho, n_a, da, ChianiTerm::Third),
            xi1: ChianiTerm::Quarter.weight() * expected_upsilon_joint(rho, n_a, n_b, dx_a, dx_b, ChianiTerm::Quarter)?,
            xi2: ChianiTerm::Third.weight() * expected_upsilon_joint(rho, n_a, n_b, dx_a, dx_b, ChianiTerm::Third)?,
        })
    }

    /// `Psi_{A,k} Psi_{B,l} - Theta/(4kl)` computed from the stored factors.
    pub fn case3_denominator(&self, k: usize, l: usize, term: ChianiTerm) -> f64 {
        let kl = 4.0 * (k * l) as f64;
        match term {
            ChianiTerm::Quarter => self.psi_a[k - 1] * self.psi_b[l - 1] - self.theta_ab / kl,
            ChianiTerm::Third => self.xi_a[k - 1] * self.xi_b[l - 1] - self.phi_ab / kl,
        }
    }
}

/// The three union-bound contributions, already divided by `M^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tas1Bound {
    pub case1: f64,
    pub case2: f64,
    pub case3: f64,
}

impl Tas1Bound {
    pub fn total(&self) -> f64 {
        self.case1 + self.case2 + self.case3
    }
}

/// Closed-form union bound on the cluster SER with TAS1.
///
/// Sums over all ordered pairs of symbol pairs in different clusters, with
/// uniform prior `1/M^2`.
pub fn tas1_ser_bound(rho: SnrPoint, n_a: usize, n_b: usize, c: &Constellation, m: &PncMap) -> Result<Tas1Bound> {
    if c.order() != m.order() {
        return Err(Error::InvalidConfig("constellation and map orders differ".into()));
    }
    if !m.verify_exclusive_law() {
        return Err(Error::ExclusiveLawViolated(m.order()));
    }
    if n_a == 0 || n_b == 0 {
        return Err(Error::InvalidConfig("antenna counts must be at least 1".into()));
    }
    let order = c.order();
    let mut out = Tas1Bound { case1: 0.0, case2: 0.0, case3: 0.0 };
    for a in 0..order {
        for b in 0..order {
            for ap in 0..order {
                for bp in 0..order {
                    if m.apply(a, b) == m.apply(ap, bp) {
                        continue;
                    }
                    let dx_a = c.point(a) - c.point(ap);
                    let dx_b = c.point(b) - c.point(bp);
                    match (a != ap, b != bp) {
                        (true, false) => out.case1 += case1_term(rho, n_a, dx_a),
                        (false, true) => out.case2 += case2_term(rho, n_b, dx_b),
                        (true, true) => out.case3 += case3_term(rho, n_a, n_b, dx_a, dx_b)?,
                        (false, false) => unreachable!("identical pairs share a cluster"),
                    }
                }
            }
        }
    }
    let norm = (order * order) as f64;
    out.case1 /= norm;
    out.case2 /= norm;
    out.case3 /= norm;
    Ok(out)
}
