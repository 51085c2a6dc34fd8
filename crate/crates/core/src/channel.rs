//! Rayleigh fading, AWGN and the relay's multiple-access received signal.
//!
//! Randomness is always drawn from an explicit generator. Simulation streams
//! come from [`stream_rng`], a counter-based ChaCha construction keyed by the
//! user seed and addressed by `(point, block)`, so any block of any SNR point
//! can be regenerated independently of how work is scheduled.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::{Complex, Error, Result};

/// Channel coefficients of every transmit antenna for one fading frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelRealization {
    pub coeffs_a: Vec<Complex>,
    pub coeffs_b: Vec<Complex>,
}

impl ChannelRealization {
    pub fn new(coeffs_a: Vec<Complex>, coeffs_b: Vec<Complex>) -> Self {
        Self { coeffs_a, coeffs_b }
    }

    pub fn n_a(&self) -> usize {
        self.coeffs_a.len()
    }

    pub fn n_b(&self) -> usize {
        self.coeffs_b.len()
    }
}

/// Circularly-symmetric complex Gaussian sample with the given total variance.
#[inline]
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex {
    let s = (0.5 * variance).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(s * re, s * im)
}

/// Draws `n_a + n_b` i.i.d. CN(0, 1) coefficients, user A first.
pub fn draw_channel<R: Rng + ?Sized>(rng: &mut R, n_a: usize, n_b: usize) -> ChannelRealization {
    let mut out = ChannelRealization {
        coeffs_a: Vec::with_capacity(n_a),
        coeffs_b: Vec::with_capacity(n_b),
    };
    draw_channel_into(rng, &mut out, n_a, n_b);
    out
}

/// Like [`draw_channel`] but reuses the buffers of `out`.
pub fn draw_channel_into<R: Rng + ?Sized>(
    rng: &mut R,
    out: &mut ChannelRealization,
    n_a: usize,
    n_b: usize,
) {
    out.coeffs_a.clear();
    out.coeffs_b.clear();
    out.coeffs_a.extend((0..n_a).map(|_| complex_gaussian(rng, 1.0)));
    out.coeffs_b.extend((0..n_b).map(|_| complex_gaussian(rng, 1.0)));
}

/// Symbol energy and noise density (both linear).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoisePower {
    es: f64,
    n0: f64,
}

impl NoisePower {
    pub fn new(es: f64, n0: f64) -> Result<Self> {
        if !(es > 0.0 && es.is_finite() && n0 > 0.0 && n0.is_finite()) {
            return Err(Error::InvalidConfig(format!("need es > 0 and n0 > 0, got es={es}, n0={n0}")));
        }
        Ok(Self { es, n0 })
    }

    /// Unit symbol energy with `N0 = 10^(-snr_db/10)`.
    pub fn from_snr_db(snr_db: f64) -> Self {
        Self { es: 1.0, n0: 10f64.powf(-snr_db / 10.0) }
    }

    pub fn es(&self) -> f64 {
        self.es
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }

    /// Linear `Es/N0`.
    pub fn rho(&self) -> f64 {
        self.es / self.n0
    }

    pub fn snr_db(&self) -> f64 {
        10.0 * self.rho().log10()
    }
}

/// `y = sqrt(Es) h_A x_A + sqrt(Es) h_B x_B + n`.
#[inline]
pub fn received_signal(
    h_a: Complex,
    h_b: Complex,
    x_a: Complex,
    x_b: Complex,
    noise: Complex,
    np: NoisePower,
) -> Complex {
    np.es.sqrt() * (h_a * x_a + h_b * x_b) + noise
}

/// Bits of the ChaCha stream id reserved for the block counter.
const BLOCK_BITS: u32 = 40;

/// Independent generator for block `block` of SNR point `point`.
///
/// The key is derived from `seed` alone; `(point, block)` selects the ChaCha
/// stream, so streams never overlap and are independent of thread count.
pub fn stream_rng(seed: u64, point: usize, block: u64) -> ChaCha8Rng {
    assert!(block < (1 << BLOCK_BITS), "block index {block} exceeds stream space");
    assert!((point as u64) < (1 << (64 - BLOCK_BITS)), "point index {point} exceeds stream space");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((point as u64) << BLOCK_BITS) | block);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn received_signal_examples() {
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        let np = NoisePower::new(1.0, 1.0).unwrap();
        assert_eq!(received_signal(one, one, one, -one, zero, np), zero);

        let h_a = Complex::new(1.0, 1.0) * FRAC_1_SQRT_2;
        let h_b = Complex::new(1.0, -0.8) * FRAC_1_SQRT_2;
        let x = Complex::new(1.0, 1.0) * FRAC_1_SQRT_2;
        let y = received_signal(h_a, h_b, x, x, zero, np);
        assert!((y - (h_a * x + h_b * x)).norm() < 1e-15);

        let np2 = NoisePower::new(2.0, 1.0).unwrap();
        let y2 = received_signal(h_a, h_b, x, x, zero, np2);
        assert!((y2 - y * 2f64.sqrt()).norm() < 1e-14);
    }

    #[test]
    fn noise_power_validation() {
        assert!(NoisePower::new(0.0, 1.0).is_err());
        assert!(NoisePower::new(1.0, -1.0).is_err());
        let np = NoisePower::from_snr_db(20.0);
        assert!((np.rho() - 100.0).abs() < 1e-9);
        assert!((np.snr_db() - 20.0).abs() < 1e-12);
    }

    #[test]
    fn channel_shape_and_reproducibility() {
        let mut r1 = stream_rng(7, 0, 0);
        let mut r2 = stream_rng(7, 0, 0);
        let a = draw_channel(&mut r1, 3, 2);
        let b = draw_channel(&mut r2, 3, 2);
        assert_eq!(a, b);
        assert_eq!((a.n_a(), a.n_b()), (3, 2));
        let c = draw_channel(&mut stream_rng(7, 0, 1), 3, 2);
        assert_ne!(a, c);
        let d = draw_channel(&mut stream_rng(7, 1, 0), 3, 2);
        assert_ne!(a, d);
    }
}
