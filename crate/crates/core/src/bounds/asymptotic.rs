//! High-SNR expansion coefficients of the TAS1 bound terms.
//!
//! Case I/II terms expand as `sum_{n>=1} C_{-n} rho^-n` with
//! `C_{-n} = w sum_k C(N,k) (|dx|^2/(c k))^-n (-1)^(k+n-2)`; the coefficients
//! vanish for `n < N`, so the leading power is `rho^-N`. Case III terms
//! expand with `B_{-m} = w sum_k sum_l C(N_A,k) C(N_B,l) (-1)^(k+l+m-3) g(k,l)^-m`,
//! `g(k,l) = |dx_A|^2/(c k) + |dx_B|^2/(c l)`, and `B_{-1}` is non-zero.
//! `(w, c)` is `(1/12, 4)` for the quarter variant and `(1/4, 3)` for the
//! third variant.

use super::{binomial, ChianiTerm};
use crate::Complex;

fn sign(e: usize) -> f64 {
    if e.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `C_{-n}` (quarter) or `C'_{-n}` (third) for a single-user difference `dx`
/// seen through the best of `n_ant` antennas.
///
/// Written as `w (-1)^n (c/|dx|^2)^n sum_k C(N,k) (-1)^k k^n`; the inner sum is
/// an integer and is accumulated exactly, so the vanishing coefficients come
/// out as exact zeros.
pub fn asymptotic_coeff(n: usize, n_ant: usize, dx: Complex, term: ChianiTerm) -> f64 {
    assert!(n >= 1, "expansion starts at n = 1");
    let mut exact: i128 = 0;
    for k in 1..=n_ant {
        let v = binomial(n_ant, k) as i128 * (k as i128).pow(n as u32);
        if k % 2 == 0 {
            exact += v;
        } else {
            exact -= v;
        }
    }
    let scale = (term.divisor() / dx.norm_sqr()).powi(n as i32);
    term.weight() * sign(n) * scale * exact as f64
}

/// `B_{-m}` (quarter) or `B'_{-m}` (third) for a case III difference pair.
pub fn asymptotic_coeff_case3(m: usize, n_a: usize, n_b: usize, dx_a: Complex, dx_b: Complex, term: ChianiTerm) -> f64 {
    assert!(m >= 1, "expansion starts at m = 1");
    let c = term.divisor();
    let (da, db) = (dx_a.norm_sqr(), dx_b.norm_sqr());
    let mut acc = 0.0;
    for k in 1..=n_a {
        for l in 1..=n_b {
            let g = da / (c * k as f64) + db / (c * l as f64);
            acc += binomial(n_a, k) * binomial(n_b, l) * sign(k + l + m + 1) * g.powi(-(m as i32));
        }
    }
    term.weight() * acc
}
